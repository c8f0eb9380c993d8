#include "stefan/config.hpp"

#include "stefan/error.hpp"

namespace stefan {

const char* to_string(SeedPolicy p) {
    return p == SeedPolicy::FixedAcrossIterations ? "fixed" : "per_iteration";
}

SeedPolicy seed_policy_from_string(const std::string& name) {
    if (name == "fixed") return SeedPolicy::FixedAcrossIterations;
    if (name == "per_iteration") return SeedPolicy::PerIteration;
    throw Error(ErrorKind::ConfigError, "unknown sampling policy '" + name + "'");
}

} // namespace stefan
