#pragma once

#include "levelloop/errors.hpp"
#include "levelloop/loewner.hpp"
#include "levelloop/rng.hpp"

#include <functional>
#include <vector>

namespace levelloop {

// Force-point weights of the radial SLE_4(rho_left; rho_right) driver. Both
// weights sit in (-2, 0) for admissible heights, so the driver touches each
// force point and reflects instead of absorbing.
struct sle_weights {
    double rho_left = -1.0;
    double rho_right = -1.0;
};

// Height (in lambda units) to weights: (-u-1, u-1). Throws
// height_out_of_range unless u is in the open interval (-1, 1).
sle_weights weights_from_height(double u);

// Inverse of weights_from_height; validates that the pair is admissible.
double height_from_weights(const sle_weights& weights);

// Dimension of the Bessel-type process governing a gap whose force point
// carries weight rho, at kappa = 4: d = 1 + 2(rho+2)/kappa, in (1, 2) for
// rho in (-2, 0).
inline double bessel_dimension(double rho) { return 1.0 + 0.5 * (rho + 2.0); }

// State of the driving diffusion. Angles in radians; the left force point
// sits counterclockwise of the driver (v_left = w + gap_left), the right one
// clockwise (v_right = w - gap_right). Gaps stay nonnegative; their sum
// starts near 0 and grows toward 2*pi as the hull eats the boundary.
struct radial_driver_state {
    double w = 0.0;
    double gap_left = 0.0;
    double gap_right = 0.0;
    double time = 0.0;

    double v_left() const { return w + gap_left; }
    double v_right() const { return w - gap_right; }
};

// Arc of the boundary not yet swallowed: 2*pi - gap_left - gap_right.
double free_arc(const radial_driver_state& state);

// Adaptive capacity increment: min(base step, c * max(min gap, floor)^2),
// additionally capped so a single step consumes at most a quarter of the
// remaining free arc.
double adaptive_dt(const radial_driver_state& state, const engine_params& params);

// One explicit Euler step of the gap/driver system. noise is the Brownian
// increment over dt (variance dt); the driver noise is sqrt(kappa) = 2 times
// it. A gap pushed below delta_touch is mirror-reflected (absolute value,
// then floored at delta_touch), which keeps the Brownian part of the
// reflection exact and the gaps strictly positive.
radial_driver_state touch_and_reflect(const radial_driver_state& state,
                                      const sle_weights& weights, double dt,
                                      double noise, const engine_params& params);

// The continuation threshold: driver and both force points coincide on the
// circle, i.e. the free arc and the smaller gap are jointly below
// delta_merge (the larger gap is then a full turn, which is distance zero
// mod 2*pi).
bool threshold_reached(const radial_driver_state& state, const engine_params& params);

struct closure_result {
    loewner_chain chain;          // empty when record_chain is false
    double threshold_time = 0.0;  // equals chain.total_capacity() when recorded
    bool sealed_left = false;     // left gap closed at the threshold
    radial_driver_state final_state;
    std::size_t steps = 0;
};

// Brownian increment source: given dt, return an N(0, dt) sample.
using noise_source = std::function<double(double)>;

// Run the driver from a collapsed start (both gaps at the touching scale)
// until the continuation threshold. Throws threshold_not_reached if the
// capacity exceeds params.capacity_cap. record_chain = false skips building
// the Loewner chain for bookkeeping-only runs. path_out, when given,
// receives every path_stride-th state (plus the final one) for debugging
// dumps.
closure_result run_to_threshold(const sle_weights& weights, double seed_angle,
                                random_stream& rng,
                                const engine_params& params = {},
                                bool record_chain = true,
                                std::vector<radial_driver_state>* path_out = nullptr,
                                std::size_t path_stride = 16);

// Same, with an injectable noise source (integration tests, replayed paths).
closure_result run_to_threshold_with(const sle_weights& weights, double seed_angle,
                                     const noise_source& noise,
                                     const engine_params& params = {},
                                     bool record_chain = true,
                                     std::vector<radial_driver_state>* path_out = nullptr,
                                     std::size_t path_stride = 16);

} // namespace levelloop
