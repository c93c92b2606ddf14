#include "levelloop/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levelloop {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

double reduce_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

// K(q) = inverse of the Koebe function k(z) = z/(1+z)^2, in the
// cancellation-free form 2q / ((1-2q) + sqrt(1-4q)). The two preimages
// multiply to 1; normally the one inside the disk is wanted. When q is real
// with q >= 1/4 (points on the boundary arc away from the slit) both
// preimages are unimodular conjugates, so the branch is fixed by continuity:
// stay on the same side of the real axis as the input, passed as im_hint.
complex koebe_inverse(complex q, double im_hint) {
    const complex root = std::sqrt(1.0 - 4.0 * q);
    const complex w = 2.0 * q / ((1.0 - 2.0 * q) + root);
    const complex other = 1.0 / w;
    const double m = std::abs(w);
    if (std::abs(m - 1.0) > 1e-9) return m <= 1.0 ? w : other;
    return (w.imag() >= 0.0) == (im_hint >= 0.0) ? w : other;
}

complex koebe(complex z) {
    const complex onez = 1.0 + z;
    return z / (onez * onez);
}

} // namespace

void loewner_chain::append(double duration, double angle) {
    if (!(duration > 0.0)) throw engine_error("loewner_chain: step duration must be > 0");
    steps_.push_back({duration, reduce_angle(angle)});
    total_capacity_ += duration;
}

complex slit_step_forward(complex z, double duration, double angle) {
    const complex rot = std::polar(1.0, -angle);
    const complex zeta = rot * z;
    if (std::abs(zeta - 1.0) < 1e-8)
        throw swallowed_point("slit_step_forward: point at the slit base");
    if (std::abs(1.0 + zeta) < 1e-14) return z; // antipode of the base is fixed
    const complex q = std::exp(duration) * koebe(zeta);
    const complex w = koebe_inverse(q, zeta.imag());
    // Interior points stay interior unless they sat on the slit itself.
    if (std::abs(zeta) < 1.0 - 1e-9 && std::abs(w) >= 1.0 - 1e-11)
        throw swallowed_point("slit_step_forward: point inside the slit image");
    return std::conj(rot) * w;
}

complex slit_step_inverse(complex w, double duration, double angle) {
    const complex rot = std::polar(1.0, -angle);
    const complex omega = rot * w;
    if (std::abs(1.0 + omega) < 1e-14) return w;
    const complex p = std::exp(-duration) * koebe(omega);
    return std::conj(rot) * koebe_inverse(p, omega.imag());
}

double boundary_angle_forward(double phi_rel, double duration) {
    const double sign = phi_rel < 0.0 ? -1.0 : 1.0;
    const double c = std::exp(-0.5 * duration) * std::cos(0.5 * std::abs(phi_rel));
    return sign * 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
}

complex apply_chain(const loewner_chain& chain, complex point) {
    for (const auto& s : chain.steps()) point = slit_step_forward(point, s.duration, s.angle);
    return point;
}

complex apply_chain_inverse_prefix(const loewner_chain& chain, std::size_t prefix,
                                   complex point) {
    const auto& steps = chain.steps();
    prefix = std::min(prefix, steps.size());
    for (std::size_t i = prefix; i-- > 0;)
        point = slit_step_inverse(point, steps[i].duration, steps[i].angle);
    return point;
}

complex apply_chain_inverse(const loewner_chain& chain, complex point) {
    return apply_chain_inverse_prefix(chain, chain.size(), point);
}

complex chain_tip(const loewner_chain& chain, std::size_t prefix, double partial) {
    const auto& steps = chain.steps();
    if (steps.empty()) throw engine_error("chain_tip: empty chain");
    prefix = std::min(prefix, steps.size());
    complex tip;
    if (partial > 0.0 && prefix < steps.size()) {
        // Tip of a partial slit: real offset x0 = K(e^{-d}/4) along the driver direction.
        const double x0 = std::real(koebe_inverse(complex(std::exp(-partial) / 4.0, 0.0), 0.0));
        tip = std::polar(1.0, steps[prefix].angle) * x0;
    } else if (prefix > 0) {
        --prefix;
        const double x0 =
            std::real(koebe_inverse(complex(std::exp(-steps[prefix].duration) / 4.0, 0.0), 0.0));
        tip = std::polar(1.0, steps[prefix].angle) * x0;
    } else {
        return std::polar(1.0, steps[0].angle);
    }
    return apply_chain_inverse_prefix(chain, prefix, tip);
}

polyline extract_trace(const loewner_chain& chain, std::size_t resolution) {
    if (chain.empty()) throw engine_error("extract_trace: empty chain");
    if (resolution < 2) throw resolution_too_coarse("extract_trace: need >= 2 points");
    const auto& steps = chain.steps();
    const double total = chain.total_capacity();
    polyline out;
    out.reserve(resolution);

    std::size_t idx = 0;
    double consumed = 0.0; // capacity of steps [0, idx)
    for (std::size_t j = 0; j < resolution; ++j) {
        const double t = total * static_cast<double>(j) / static_cast<double>(resolution - 1);
        while (idx < steps.size() && consumed + steps[idx].duration < t) {
            consumed += steps[idx].duration;
            ++idx;
        }
        if (j == 0) {
            out.push_back(std::polar(1.0, steps[0].angle));
            continue;
        }
        const double partial = std::min(t - consumed, idx < steps.size() ? steps[idx].duration : 0.0);
        out.push_back(chain_tip(chain, idx, partial));
    }
    return out;
}

complex frame::eval(complex w) const {
    if (chain) w = apply_chain_inverse(*chain, w);
    if (mobius_a != 0.0) w = (w + mobius_a) / (1.0 + std::conj(mobius_a) * w);
    if (parent) w = parent->eval(w);
    return w;
}

std::shared_ptr<const frame> root_frame(complex target) {
    auto f = std::make_shared<frame>();
    f->mobius_a = target;
    f->log_cr_base = -std::log(1.0 - std::norm(target));
    return f;
}

std::shared_ptr<const frame> child_frame(std::shared_ptr<const frame> parent,
                                         std::shared_ptr<const loewner_chain> chain) {
    auto f = std::make_shared<frame>();
    f->log_cr_base = parent->log_cr_base + (chain ? chain->total_capacity() : 0.0);
    f->parent = std::move(parent);
    f->chain = std::move(chain);
    return f;
}

double conformal_radius(const oriented_loop& loop) { return std::exp(-loop.log_cr); }

double caratheodory_distance(const oriented_loop& a, const oriented_loop& b,
                             viewpoint_t viewpoint) {
    if (!a.map || !b.map)
        throw map_unavailable("caratheodory_distance: loops need conformal map handles");
    if (viewpoint == viewpoint_t::target && std::abs(a.target - b.target) > 1e-9)
        throw viewpoint_outside("caratheodory_distance: loops have different reference points");
    // Under viewpoint_t::infinity the loops are expected in inverted
    // coordinates already, sharing the reference point at the origin.
    double sup = 0.0;
    for (std::size_t j = 0; j < kBoundarySampleCount; ++j) {
        const complex w = std::polar(kBoundarySampleRadius,
                                     kTwoPi * static_cast<double>(j) / kBoundarySampleCount);
        sup = std::max(sup, std::abs(a.map->eval(w) - b.map->eval(w)));
    }
    return std::abs(a.log_cr - b.log_cr) + sup;
}

double winding_number(const polyline& poly, complex about) {
    if (poly.size() < 3) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const complex u = poly[i] - about;
        const complex v = poly[i + 1] - about;
        total += std::arg(v / u);
    }
    // Close the polygon if the caller did not.
    if (std::abs(poly.front() - poly.back()) > 1e-15)
        total += std::arg((poly.front() - about) / (poly.back() - about));
    return total / kTwoPi;
}

double min_distance_to(const polyline& poly, complex point) {
    double d = std::numeric_limits<double>::infinity();
    for (const complex& v : poly) d = std::min(d, std::abs(v - point));
    return d;
}

double max_distance_to(const polyline& poly, complex point) {
    double d = 0.0;
    for (const complex& v : poly) d = std::max(d, std::abs(v - point));
    return d;
}

double min_distance_to_unit_circle(const polyline& poly) {
    double d = std::numeric_limits<double>::infinity();
    for (const complex& v : poly) d = std::min(d, std::abs(1.0 - std::abs(v)));
    return d;
}

bool point_in_polygon(const polyline& poly, complex point) {
    return std::abs(winding_number(poly, point)) > 0.5;
}

namespace {

double one_sided_hausdorff(const polyline& a, const polyline& b) {
    double worst = 0.0;
    for (const complex& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            // Distance from p to segment [b_i, b_{i+1}].
            const complex s = b[i], e = b[i + 1];
            const complex d = e - s;
            const double len2 = std::norm(d);
            double t = len2 > 0.0 ? std::clamp(((p - s) * std::conj(d)).real() / len2, 0.0, 1.0)
                                  : 0.0;
            best = std::min(best, std::abs(p - (s + t * d)));
            if (best == 0.0) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double hausdorff_distance(const polyline& a, const polyline& b) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

double self_crossing_depth(const polyline& poly) {
    // Proper crossing of segments i and j (non-adjacent): depth is the
    // smaller clearance the two segments would have needed to avoid touching.
    double depth = 0.0;
    const std::size_t n = poly.size();
    if (n < 4) return 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 2; j + 1 < n; ++j) {
            if (i == 0 && j + 2 == n) continue; // first and last segments share the closure point
            const complex p = poly[i], r = poly[i + 1] - poly[i];
            const complex q = poly[j], s = poly[j + 1] - poly[j];
            const double rxs = (std::conj(r) * s).imag();
            if (std::abs(rxs) < 1e-18) continue;
            const complex qp = q - p;
            const double t = (std::conj(qp) * s).imag() / rxs;
            const double u = (std::conj(qp) * r).imag() / rxs;
            if (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0) {
                const double pen =
                    std::min({t, 1.0 - t, u, 1.0 - u}) * std::min(std::abs(r), std::abs(s));
                depth = std::max(depth, pen);
            }
        }
    }
    return depth;
}

oriented_loop make_circle_loop(complex target, double radius, orientation_t orient,
                               std::size_t n_vertices) {
    oriented_loop loop;
    loop.target = target;
    loop.orientation = orient;
    loop.log_cr = -std::log(radius);
    const double sign = orient == orientation_t::counterclockwise ? 1.0 : -1.0;
    loop.vertices.reserve(n_vertices + 1);
    for (std::size_t i = 0; i <= n_vertices; ++i) {
        const double th = sign * kTwoPi * static_cast<double>(i) / n_vertices;
        loop.vertices.push_back(target + std::polar(radius, th));
    }
    loop.map = std::make_shared<disk_map>(target, radius);
    finalize_loop_geometry(loop);
    return loop;
}

void finalize_loop_geometry(oriented_loop& loop) {
    if (loop.vertices.empty()) return;
    if (std::abs(loop.vertices.front() - loop.vertices.back()) > 0.0)
        loop.vertices.push_back(loop.vertices.front());
    loop.inradius = min_distance_to(loop.vertices, loop.target);
    loop.outradius = max_distance_to(loop.vertices, loop.target);
}

} // namespace levelloop
