#pragma once

// Radial Loewner machinery in the unit disk, target at the origin.
//
// Conventions:
//  - Capacity time t = -log CR(D_t; 0): the forward map g_t : D_t -> U fixes 0
//    with g_t'(0) = e^t > 0.
//  - A chain is a composition of closed-form radial slit maps, one per step:
//    with k(z) = z/(1+z)^2 (Koebe) and zeta = e^{-i angle} z, the forward step
//    of duration d is w = e^{i angle} * K(e^d * k(zeta)) where K is the
//    inverse of k chosen inside the disk; the inverse step is the same formula
//    with e^{-d}. Both are evaluated in the cancellation-free form
//    K(q) = 2q / ((1-2q) + sqrt(1-4q)).
//  - Loops are stored as closed polylines with orientation, height (in lambda
//    units), -log CR from the target, and inradius/outradius about the target.
//    Monte Carlo bookkeeping runs may leave the polyline empty; geometric
//    invariants apply whenever vertices are present.

#include "levelloop/errors.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace levelloop {

using complex = std::complex<double>;
using polyline = std::vector<complex>;

struct radial_slit_step {
    double duration = 0.0; // capacity increment, > 0
    double angle = 0.0;    // driving angle, reduced mod 2 pi
};

class loewner_chain {
  public:
    void append(double duration, double angle);
    const std::vector<radial_slit_step>& steps() const { return steps_; }
    double total_capacity() const { return total_capacity_; }
    bool empty() const { return steps_.empty(); }
    std::size_t size() const { return steps_.size(); }
    void reserve(std::size_t n) { steps_.reserve(n); }

  private:
    std::vector<radial_slit_step> steps_;
    double total_capacity_ = 0.0;
};

// Single-step maps. Forward throws swallowed_point when the point sits on (or
// within 1e-8 of the base of) the step's slit.
complex slit_step_forward(complex z, double duration, double angle);
complex slit_step_inverse(complex w, double duration, double angle);

// Exact image of a boundary point under one forward step, as the angle
// relative to the driving angle: phi' = sign(phi) * 2 acos(e^{-d/2} cos(phi/2)).
double boundary_angle_forward(double phi_rel, double duration);

// Forward composition of the whole chain (g_t). Fixes the origin; derivative
// there is e^{total_capacity}.
complex apply_chain(const loewner_chain& chain, complex point);

// Inverse composition (g_t^{-1}), optionally of the first `prefix` steps only.
complex apply_chain_inverse(const loewner_chain& chain, complex point);
complex apply_chain_inverse_prefix(const loewner_chain& chain, std::size_t prefix,
                                   complex point);

// Curve tip after the first `prefix` full steps plus `partial` extra capacity
// of the step at index `prefix` (the tip of a slit of duration `partial`).
complex chain_tip(const loewner_chain& chain, std::size_t prefix, double partial);

// `resolution` >= 2 points approximating the tip history on a uniform
// capacity grid. Throws resolution_too_coarse / engine_error on bad input.
polyline extract_trace(const loewner_chain& chain, std::size_t resolution);

enum class orientation_t { clockwise, counterclockwise };
inline orientation_t flip(orientation_t o) {
    return o == orientation_t::clockwise ? orientation_t::counterclockwise
                                         : orientation_t::clockwise;
}

// Conformal map handle f : U -> (interior of a loop), f(0) = reference point.
// Loops built from chains carry one; synthetic loops (circles) carry a closed
// form. Needed by caratheodory_distance.
struct conformal_map {
    virtual ~conformal_map() = default;
    virtual complex eval(complex w) const = 0;
};

struct disk_map final : conformal_map {
    complex center;
    double radius;
    disk_map(complex c, double r) : center(c), radius(r) {}
    complex eval(complex w) const override { return center + radius * w; }
};

// Coordinate frame mapping a simulation disk back to original coordinates:
// w -> parent(mobius(chain^{-1}(w))). The root frame holds the Moebius
// recentering (0 -> mobius_a); child frames hold the closing chain of the
// loop whose interior they uniformize. log_cr_base accumulates
// -log CR(domain; target) of the represented domain.
struct frame final : conformal_map {
    std::shared_ptr<const frame> parent;
    std::shared_ptr<const loewner_chain> chain; // nullable
    complex mobius_a = 0.0;
    double log_cr_base = 0.0;

    complex eval(complex w) const override;
};

std::shared_ptr<const frame> root_frame(complex target);
std::shared_ptr<const frame> child_frame(std::shared_ptr<const frame> parent,
                                         std::shared_ptr<const loewner_chain> chain);

struct oriented_loop {
    polyline vertices; // closed (front == back) when traced; empty in bookkeeping mode
    orientation_t orientation = orientation_t::counterclockwise;
    double height_lambda = 0.0;
    double log_cr = 0.0; // -log CR(inte(loop); target)
    double inradius = 0.0;
    double outradius = 0.0;
    complex target = 0.0;
    std::shared_ptr<const conformal_map> map; // nullable

    bool traced() const { return !vertices.empty(); }
};

// exp(-log_cr); total function on valid loops.
double conformal_radius(const oriented_loop& loop);

enum class viewpoint_t { target, infinity };

// |log CR difference| + sup over boundary samples of the normalized-map
// images. Requires both loops to carry map handles and to share a reference
// point; throws viewpoint_outside / map_unavailable.
double caratheodory_distance(const oriented_loop& a, const oriented_loop& b,
                             viewpoint_t viewpoint);

// Radius of the circle on which the maps are sampled for the distance above.
inline constexpr double kBoundarySampleRadius = 0.999;
inline constexpr std::size_t kBoundarySampleCount = 64;

// Polyline utilities.
double winding_number(const polyline& poly, complex about);
double min_distance_to(const polyline& poly, complex point);
double max_distance_to(const polyline& poly, complex point);
double min_distance_to_unit_circle(const polyline& poly);
bool point_in_polygon(const polyline& poly, complex point);
double hausdorff_distance(const polyline& a, const polyline& b);
// Largest penetration depth of any proper self-crossing between non-adjacent
// segments (0 for a simple curve); "non-self-crossing up to tol" means this
// stays below tol.
double self_crossing_depth(const polyline& poly);

// Circle loop helper (tests, demos): centered at the target.
oriented_loop make_circle_loop(complex target, double radius, orientation_t orient,
                               std::size_t n_vertices = 128);

// Fill inradius/outradius (and closedness) from the vertices.
void finalize_loop_geometry(oriented_loop& loop);

// Engine tolerances; a single instance is threaded through the modules so a
// report can snapshot it.
struct engine_params {
    double step = 1e-4;        // base capacity step of the SDE integrator
    double dt_gap_factor = 0.05;  // c in dt <= c * gap^2
    double gap_floor = 1.5e-3; // adaptive-step floor: dt >= c * gap_floor^2
    double delta_touch = 1e-5; // reflection scale for the force-point gaps
    double delta_merge = 1e-4; // closure threshold on free arc and seal gap
    double trace_tol = 1e-3;   // polyline tolerance in the simulation disk
    double capacity_cap = 50.0; // hard cap on a single loop's capacity
};

} // namespace levelloop
