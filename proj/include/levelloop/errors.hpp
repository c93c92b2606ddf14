#pragma once

#include <stdexcept>
#include <string>

namespace levelloop {

// Every engine failure is a typed exception so callers (and the Monte Carlo
// harness, which records per-replica errors without aborting) can tell them
// apart. All of them derive from engine_error.
struct engine_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct swallowed_point : engine_error {
    using engine_error::engine_error;
};
struct resolution_too_coarse : engine_error {
    using engine_error::engine_error;
};
struct viewpoint_outside : engine_error {
    using engine_error::engine_error;
};
struct height_out_of_range : engine_error {
    using engine_error::engine_error;
};
struct threshold_not_reached : engine_error {
    using engine_error::engine_error;
};
struct ambiguous_winding : engine_error {
    using engine_error::engine_error;
};
struct targets_too_close : engine_error {
    using engine_error::engine_error;
};
struct size_too_large : engine_error {
    using engine_error::engine_error;
};
struct no_loop_found : engine_error {
    using engine_error::engine_error;
};
struct sample_too_small : engine_error {
    using engine_error::engine_error;
};
struct config_error : engine_error {
    using engine_error::engine_error;
};
struct map_unavailable : engine_error {
    using engine_error::engine_error;
};

} // namespace levelloop
