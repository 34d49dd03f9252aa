#include "qdfs/tolerances.hpp"

#include <cstdlib>

#include "qdfs/errors.hpp"

namespace qdfs {

Tolerances Tolerances::profile(const std::string& name) {
    Tolerances t;
    if (name.empty() || name == "default") return t;
    double f = 0;
    if (name == "strict")
        f = 0.01;
    else if (name == "loose")
        f = 100.0;
    else
        throw InvalidParameter("unknown tolerance profile '" + name +
                               "' (expected default, strict or loose)");
    t.cluster_rel *= f;
    t.rank_rel *= f;
    t.residual_rel *= f;
    t.ld_norm_per_dim *= f;
    return t;
}

Tolerances Tolerances::from_env() {
    const char* v = std::getenv("QDFS_TOL_PROFILE");
    return profile(v ? v : "");
}

Tolerances ToleranceOverrides::apply(Tolerances base) const {
    if (cluster_rel) base.cluster_rel = *cluster_rel;
    if (rank_rel) base.rank_rel = *rank_rel;
    if (rate_rel) base.rate_rel = *rate_rel;
    if (residual_rel) base.residual_rel = *residual_rel;
    if (ld_norm_per_dim) base.ld_norm_per_dim = *ld_norm_per_dim;
    if (herm_rel) base.herm_rel = *herm_rel;
    return base;
}

bool ToleranceOverrides::any() const {
    return cluster_rel || rank_rel || rate_rel || residual_rel || ld_norm_per_dim || herm_rel;
}

} // namespace qdfs
