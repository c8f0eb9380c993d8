#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stefan {

enum class SeedPolicy { FixedAcrossIterations, PerIteration };

const char* to_string(SeedPolicy p);
SeedPolicy seed_policy_from_string(const std::string& name);

struct SampleCounts {
    int interior = 2000; // per phase
    int initial = 400;   // per phase
    int boundary = 400;  // per phase
    int interface = 400;
};

/// Block weights lambda of the discrete field loss.
struct Penalties {
    double pde = 1.0;
    double initial = 1.0;
    double boundary = 1.0;
    double interface = 1.0;
};

struct SolverConfig {
    double rho = 0.5;
    double tol = 1e-10;
    int max_iters = 200;
    SampleCounts counts;
    SeedPolicy policy = SeedPolicy::FixedAcrossIterations;
    std::uint64_t seed = 1;

    int field_features = 400;
    double field_scale = 1.0;
    int interface_features = 40;
    /// One half-width per interface basis input (t-only modes take one entry).
    std::vector<double> interface_scales{1.0};

    /// Negative selects the library default 1e-12 * max(m, n).
    double rcond_field = -1.0;
    double rcond_kinematic = -1.0;
    Penalties penalties;
    double anchor_weight = 10.0;
    int anchor_count = 200;
    /// Clamp of the interface into the fixed domain, as fractions of the box
    /// extent along the shape coordinate. Disabled when lo >= hi.
    double clamp_lo = 0.0;
    double clamp_hi = 0.0;

    /// Evaluate errors against the exact solution every iteration.
    bool track_errors = true;
};

} // namespace stefan
