#pragma once

#include <optional>
#include <string>

namespace qdfs {

// Numerical thresholds used across the analysis. Most are relative and get
// scaled by a problem-size factor at the point of use; the *_for helpers
// spell out the scaling so callers do not have to.
struct Tolerances {
    // Eigenvalue clustering radius, scaled by (1 + ||M||_F) of the matrix
    // whose spectrum is being clustered.
    double cluster_rel = 1e-8;
    // Relative rank cut for nullspace / orthonormalization / invariance.
    double rank_rel = 1e-10;
    // Lindblad rates below rate_rel * trace(A) are dropped when the
    // coefficient matrix A is diagonalized.
    double rate_rel = 1e-12;
    // Eigen-membership residual, scaled by (1 + max_l ||J_l||_F).
    double residual_rel = 1e-8;
    // Dissipator-norm threshold for the instantaneous check and for the
    // Restricted/coherence-generating split, scaled by the space dimension.
    double ld_norm_per_dim = 1e-9;
    // Relative Hermiticity check.
    double herm_rel = 1e-12;

    double cluster_for(double mat_norm) const { return cluster_rel * (1.0 + mat_norm); }
    double residual_for(double max_jump_norm) const { return residual_rel * (1.0 + max_jump_norm); }
    double ld_norm_for(std::size_t dim) const { return ld_norm_per_dim * static_cast<double>(dim); }

    // Profile from the QDFS_TOL_PROFILE environment variable:
    // "default" (or unset), "strict" (x0.01), "loose" (x100).
    static Tolerances from_env();
    static Tolerances profile(const std::string& name);
};

// Optional per-field overrides, e.g. parsed from a model file or CLI flags.
struct ToleranceOverrides {
    std::optional<double> cluster_rel;
    std::optional<double> rank_rel;
    std::optional<double> rate_rel;
    std::optional<double> residual_rel;
    std::optional<double> ld_norm_per_dim;
    std::optional<double> herm_rel;

    Tolerances apply(Tolerances base) const;
    bool any() const;
};

} // namespace qdfs
