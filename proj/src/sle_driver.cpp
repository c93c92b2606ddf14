#include "levelloop/sle_driver.hpp"

#include <algorithm>
#include <cmath>

namespace levelloop {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// Safe cot(gap/2). Gaps handled here stay in [delta_touch, 2*pi), so the
// clamp is defensive only.
double half_cot(double gap) {
    const double g = std::clamp(gap, 1e-12, kTwoPi - 1e-12);
    return 1.0 / std::tan(0.5 * g);
}

// The integrator works in martingale coordinates rather than in the raw
// gaps:
//
//   X = -(1+u) * gap_left + (1-u) * gap_right,   s = gap_left + gap_right.
//
// X is driftless (the gap drifts cancel exactly against the weights) with
// noise 4 dW, so it is simulated as an exact random walk that no boundary
// rule ever modifies; by optional stopping the seal-side probability is
// (1+u)/2 up to O(delta_merge) regardless of step size. s carries no noise
// at all: ds = (cot(g_L/2) + cot(g_R/2)) dt > 0, the swallowing clock. A gap
// pushed below delta_touch is restored by advancing s (the singular drift
// that Euler under-resolved near a touch), never by moving X.
struct xs_state {
    double theta;
    double big_x;
    double spread;
    double time;
};

struct gap_pair {
    double left;
    double right;
};

gap_pair gaps_of(const xs_state& st, double u) {
    return {0.5 * ((1.0 - u) * st.spread - st.big_x),
            0.5 * ((1.0 + u) * st.spread + st.big_x)};
}

xs_state to_xs(const radial_driver_state& st, double u) {
    return {st.w, -(1.0 + u) * st.gap_left + (1.0 - u) * st.gap_right,
            st.gap_left + st.gap_right, st.time};
}

radial_driver_state from_xs(const xs_state& st, double u) {
    const gap_pair g = gaps_of(st, u);
    return {st.theta, g.left, g.right, st.time};
}

struct step_trig {
    double cot_left;
    double cot_right;
    double common; // d(spread)/dt, strictly positive below a full turn
};

step_trig make_trig(const gap_pair& g) {
    const double cl = half_cot(g.left);
    const double cr = half_cot(g.right);
    return {cl, cr, cl + cr};
}

double choose_dt(const gap_pair& g, const step_trig& trig, double free,
                 const engine_params& par) {
    const double gap = std::min(g.left, g.right);
    const double scale = std::max(gap, par.gap_floor);
    double dt = std::min(par.step, par.dt_gap_factor * scale * scale);
    // Never let a single step consume more than a quarter of the free arc,
    // so the gap sum cannot overshoot a full turn.
    if (free > 0.0 && trig.common > 0.0) dt = std::min(dt, 0.25 * free / trig.common);
    return dt;
}

// Advance the swallowing clock until both gaps are back at or above the
// touching scale. Advancing s only grows the other gap, so two passes
// settle. X is never altered here.
void settle_touches(xs_state& st, double u, const engine_params& par) {
    for (int pass = 0; pass < 2; ++pass) {
        const gap_pair g = gaps_of(st, u);
        if (g.left < par.delta_touch)
            st.spread = (st.big_x + 2.0 * par.delta_touch) / (1.0 - u);
        else if (g.right < par.delta_touch)
            st.spread = (2.0 * par.delta_touch - st.big_x) / (1.0 + u);
        else
            break;
    }
}

// One explicit Euler step; noise is the Brownian increment over dt. All
// expressions are arranged so the mirror map (u -> -u, noise -> -noise,
// left <-> right) yields bit-identical paths: IEEE addition commutes,
// 1-(-u) evaluates exactly as 1+u, and negation is exact (FMA contraction
// is disabled project-wide to keep the subtraction in drift_theta exact
// under the swap).
void apply_step(xs_state& st, double u, const step_trig& trig, double dt,
                double noise) {
    const double xi = 2.0 * noise;
    const double drift_theta =
        0.5 * (1.0 + u) * trig.cot_left - 0.5 * (1.0 - u) * trig.cot_right;
    st.theta += drift_theta * dt + xi;
    st.big_x += 2.0 * xi;
    st.spread += trig.common * dt;
    st.time += dt;
}

bool xs_threshold(const xs_state& st, double u, const engine_params& par) {
    if (st.time <= 0.0) return false;
    const gap_pair g = gaps_of(st, u);
    return (kTwoPi - st.spread) + std::min(g.left, g.right) < par.delta_merge;
}

closure_result run_impl(const sle_weights& weights, double seed_angle,
                        const noise_source& noise, const engine_params& par,
                        bool record_chain, std::vector<radial_driver_state>* path_out,
                        std::size_t path_stride) {
    const double u = height_from_weights(weights);
    radial_driver_state init;
    init.w = seed_angle;
    init.gap_left = par.delta_touch;
    init.gap_right = par.delta_touch;
    xs_state st = to_xs(init, u);

    closure_result res;
    if (path_stride == 0) path_stride = 1;
    while (!xs_threshold(st, u, par)) {
        if (st.time >= par.capacity_cap)
            throw threshold_not_reached("run_to_threshold: capacity cap " +
                                        std::to_string(par.capacity_cap) +
                                        " exceeded before closure");
        if (!std::isfinite(st.time) || !std::isfinite(st.spread + st.big_x))
            throw engine_error("run_to_threshold: driver state diverged");
        if (path_out && res.steps % path_stride == 0) path_out->push_back(from_xs(st, u));
        const gap_pair g = gaps_of(st, u);
        const step_trig trig = make_trig(g);
        const double dt = choose_dt(g, trig, kTwoPi - st.spread, par);
        const double theta_before = st.theta;
        apply_step(st, u, trig, dt, noise(dt));
        settle_touches(st, u, par);
        if (record_chain) res.chain.append(dt, theta_before);
        ++res.steps;
    }
    if (path_out) path_out->push_back(from_xs(st, u));
    res.threshold_time = st.time;
    res.final_state = from_xs(st, u);
    res.sealed_left = res.final_state.gap_left < res.final_state.gap_right;
    return res;
}

} // namespace

sle_weights weights_from_height(double u) {
    if (!(std::abs(u) < 1.0))
        throw height_out_of_range("weights_from_height: height " + std::to_string(u) +
                                  " outside (-1, 1)");
    return {-u - 1.0, u - 1.0};
}

double height_from_weights(const sle_weights& weights) {
    if (std::abs(weights.rho_left + weights.rho_right + 2.0) > 1e-9)
        throw engine_error("height_from_weights: weights do not sum to -2");
    const double u = 0.5 * (weights.rho_right - weights.rho_left);
    if (!(std::abs(u) < 1.0))
        throw height_out_of_range("height_from_weights: height " + std::to_string(u) +
                                  " outside (-1, 1)");
    return u;
}

double free_arc(const radial_driver_state& state) {
    return kTwoPi - (state.gap_left + state.gap_right);
}

double adaptive_dt(const radial_driver_state& state, const engine_params& params) {
    const gap_pair g = {state.gap_left, state.gap_right};
    return choose_dt(g, make_trig(g), free_arc(state), params);
}

radial_driver_state touch_and_reflect(const radial_driver_state& state,
                                      const sle_weights& weights, double dt,
                                      double noise, const engine_params& params) {
    if (!(dt > 0.0)) throw engine_error("touch_and_reflect: dt must be > 0");
    const double u = height_from_weights(weights);
    xs_state st = to_xs(state, u);
    apply_step(st, u, make_trig(gap_pair{state.gap_left, state.gap_right}), dt, noise);
    settle_touches(st, u, params);
    return from_xs(st, u);
}

bool threshold_reached(const radial_driver_state& state, const engine_params& params) {
    if (state.time <= 0.0) return false;
    const double small_gap = std::min(state.gap_left, state.gap_right);
    return free_arc(state) + small_gap < params.delta_merge;
}

closure_result run_to_threshold(const sle_weights& weights, double seed_angle,
                                random_stream& rng, const engine_params& params,
                                bool record_chain,
                                std::vector<radial_driver_state>* path_out,
                                std::size_t path_stride) {
    return run_impl(
        weights, seed_angle,
        [&rng](double dt) { return std::sqrt(dt) * rng.gaussian(); }, params,
        record_chain, path_out, path_stride);
}

closure_result run_to_threshold_with(const sle_weights& weights, double seed_angle,
                                     const noise_source& noise,
                                     const engine_params& params, bool record_chain,
                                     std::vector<radial_driver_state>* path_out,
                                     std::size_t path_stride) {
    return run_impl(weights, seed_angle, noise, params, record_chain, path_out,
                    path_stride);
}

} // namespace levelloop
