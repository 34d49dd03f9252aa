#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdfs/model.hpp"

namespace qdfs {

// Is |psi><psi| a fixed point of the dissipator alone? True iff psi is a
// joint eigenvector of every J_l with Gamma psi = g psi, g = sum rate|c|^2;
// both conditions are checked directly via ||L_D[|psi><psi|]||_F and the
// per-operator residuals.
struct InstantaneousCheck {
    bool is_df = false;
    std::optional<EigTuple> c; // present iff is_df
    std::optional<double> g;   // present iff is_df
    double ld_norm = 0;        // ||L_D[|psi><psi|]||_F
};

InstantaneousCheck instantaneous_df_check(const MasterEquationModel& m,
                                          const ComplexMatrix& psi,
                                          const Tolerances& tol);

// All maximal joint eigenspaces of the jump operators, found by sequential
// refinement: eigenspaces of J_1, each split against J_2 restricted to it,
// and so on. Returns (tuple, subspace) pairs; tuples are pairwise distinct.
std::vector<std::pair<EigTuple, Subspace>>
common_eigenspaces(const std::vector<ComplexMatrix>& jumps, const Tolerances& tol);

// Largest subspace of `start` invariant under h, via the fixed point of
// S <- { v in S : h v in S }. Terminates in at most ambient_dim passes.
struct RefineResult {
    Subspace subspace;
    std::size_t iterations = 0;
    // True when the first pass did not already reach the fixed point; kept
    // as a diagnostic because single-pass invariance is a tempting but
    // insufficient shortcut.
    bool one_pass_insufficient = false;
};

RefineResult maximal_invariant_subspace(const ComplexMatrix& h, const Subspace& start,
                                        double tol_rank);

enum class DfsClass { restricted, igc };

const char* to_string(DfsClass c);

// Witness data for a coherence-generating (IGC) subspace: the basis state
// with the largest dissipator action, plus the residuals of the two
// necessary conditions (psi not an eigenstate of sum_l c_l J_l^dag, in both
// the plain and the rate-weighted reading).
struct IgcWitness {
    std::size_t state_index = 0;
    double ld_norm = 0;
    double max_abs_c = 0;
    double noneigen_residual_plain = 0;
    double noneigen_residual_weighted = 0;
};

struct Classification {
    DfsClass cls = DfsClass::restricted;
    std::optional<double> g; // present iff restricted
    double witness_ld_norm = 0;
    std::optional<IgcWitness> igc;
};

// Split a verified DFS into Restricted (dissipator vanishes on every state)
// vs IGC (unitary evolution with a working dissipator).
Classification classify(const MasterEquationModel& m, const Subspace& s,
                        const EigTuple& c, const Tolerances& tol);

struct DfsRecord {
    EigTuple tuple;
    Subspace basis;
    DfsClass cls = DfsClass::restricted;
    std::optional<double> g;
    double witness_ld_norm = 0;
    std::optional<IgcWitness> igc;
    ComplexMatrix h_ev_restricted; // B^dag H_ev B on the record basis
};

struct TupleDiagnostic {
    EigTuple tuple;
    std::size_t joint_eigenspace_dim = 0;
    std::size_t refine_iterations = 0;
    std::size_t final_dim = 0;
    double max_eigen_residual = 0;
    bool one_pass_insufficient = false;
};

// Written back into the report by the verifier (one entry per checked
// record); analysis leaves the list empty.
struct RecordVerification {
    std::size_t record_index = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double t_final = 0;
    bool passed = false;
    double max_purity_drift = 0;
    double min_fidelity = 1;
    std::string detail; // first failure, empty when passed
};

struct AnalysisReport {
    std::string model_label;
    std::size_t dim = 0;
    Tolerances tolerances;
    std::size_t tuples_examined = 0;
    std::vector<DfsRecord> records;      // sorted by tuple (Re, then Im)
    std::vector<TupleDiagnostic> diagnostics;
    std::vector<RecordVerification> verification;
    std::vector<std::string> notes;
};

// The full enumeration: diagonalize if needed, intersect jump eigenspaces,
// refine each against its evolution Hamiltonian, classify survivors.
// A model with an empty dissipator yields the whole space as one Restricted
// record with an empty tuple.
AnalysisReport find_all_dfs(const MasterEquationModel& m, const Tolerances& tol);

// Sufficient conditions for a Restricted DFS that avoid the refinement
// route: every jump and Gamma map the subspace into itself under commutation
// with H_eff. Used as a cross-check against find_all_dfs.
struct RestrictedConditions {
    bool jumps_commute = false;  // ||[H_eff, J_l] v|| small on the subspace
    bool gamma_commutes = false; // ||[H_eff, Gamma] v|| small on the subspace
    double max_jump_residual = 0;
    double max_gamma_residual = 0;
};

RestrictedConditions restricted_dfs_conditions(const MasterEquationModel& m,
                                               const Subspace& s, const Tolerances& tol);

} // namespace qdfs
