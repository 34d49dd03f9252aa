#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qdfs/engine.hpp"
#include "qdfs/model.hpp"
#include "qdfs/rng.hpp"

namespace qdfs {

// Density-matrix trajectory at 64 uniform checkpoints t_k = k T / 64.
// fidelity compares against exp(-i H_ref t) rho0 exp(+i H_ref t), normalized
// by the initial purity so that exact unitary evolution gives 1 even for
// mixed starts.
struct TrajectoryResult {
    std::vector<double> times;
    std::vector<double> purities;
    std::vector<double> fidelities;
    ComplexMatrix final_state;
    std::size_t steps_used = 0; // accepted resolution (full horizon)
    double trace_drift = 0;     // max |tr rho - 1| seen at checkpoints
};

struct PropagateOptions {
    double t_final = 0;              // <= 0 means 10 / max rate
    std::size_t initial_steps = 64;  // rounded up to a multiple of 64
    std::size_t max_steps = 1u << 20;
    // With richardson on, the step count doubles until two successive
    // resolutions agree to 1e-8 in the final state (StepCapExceeded if the
    // cap is hit first). Off = single fixed-resolution run.
    bool richardson = true;
    // Hamiltonian for the unitary reference; defaults to the model's H_eff.
    std::optional<ComplexMatrix> unitary_ref;
};

inline constexpr double richardson_agreement = 1e-8;
inline constexpr std::size_t trajectory_checkpoints = 64;

// Fixed-step classical RK4 on rho' = L[rho], matrix-free (only
// liouvillian_apply; no superoperator is ever materialized). rho0 must be
// Hermitian, PSD and unit-trace within 1e-10.
TrajectoryResult propagate(const MasterEquationModel& m, const ComplexMatrix& rho0,
                           const PropagateOptions& opt);
// Fixed-resolution convenience overload: exactly `steps` steps, no refinement.
TrajectoryResult propagate(const MasterEquationModel& m, const ComplexMatrix& rho0,
                           double t_final, std::size_t steps);

// 10 / max rate; 1.0 for an empty dissipator.
double default_t_final(const MasterEquationModel& m);

// tr(rho^2); real part (the imaginary part of tr of a square of a Hermitian
// matrix is roundoff).
double purity(const ComplexMatrix& rho);

// d/dt tr(rho^2) = 2 tr(rho L[rho]); the Hamiltonian part drops out.
double purity_rate(const MasterEquationModel& m, const ComplexMatrix& rho);

struct TrialResult {
    double purity_drift = 0;  // max_k |purity(t_k) - 1|
    double min_fidelity = 1;  // min_k fidelity to the H_ev reference
    bool pass = false;
};

struct VerifyOutcome {
    bool pass = false;
    double max_purity_drift = 0;
    double min_fidelity = 1;
    std::vector<TrialResult> trials; // indexed by trial, deterministic
    std::string failure; // first violated condition, empty on pass
};

inline constexpr double verify_purity_tol = 1e-7;
inline constexpr double verify_fidelity_tol = 1e-7;

// Independent check of one DFS record: draw `trials` Haar-uniform states in
// the record's span (seeded, bit-reproducible), propagate each, and require
// purity within 1e-7 of 1 and fidelity >= 1 - 1e-7 against the unitary
// generated by the record's evolution Hamiltonian, at every checkpoint.
VerifyOutcome verify_dfs_record(const MasterEquationModel& m, const DfsRecord& rec,
                                std::size_t trials, std::uint64_t seed,
                                double t_final = 0, std::size_t initial_steps = 64);

// Haar-uniform unit vector in the span of s (complex-Gaussian coefficients
// on the basis columns, normalized).
ComplexMatrix sample_state_in(const Subspace& s, Rng& rng);

// No-jump drift psi(t) = exp(-i t (H_eff - i Gamma / 2)) psi0 at `samples`
// uniform times; norms decay monotonically for PSD Gamma.
struct DriftResult {
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
    std::vector<double> norms;
};

DriftResult nonhermitian_drift(const MasterEquationModel& m, const ComplexMatrix& psi0,
                               double t_final, std::size_t samples);

} // namespace qdfs
