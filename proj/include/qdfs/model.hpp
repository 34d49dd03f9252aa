#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdfs/complex_matrix.hpp"
#include "qdfs/linalg.hpp"
#include "qdfs/tolerances.hpp"

namespace qdfs {

// Dissipator in correlation form: basis operators F_k (k = 1..M, each n x n,
// linearly independent, at most n^2 - 1 of them) and a Hermitian PSD
// coefficient matrix A with L_D[rho] = sum_kl A_kl (F_k rho F_l^dag
// - {F_l^dag F_k, rho} / 2).
struct GksDissipator {
    std::vector<ComplexMatrix> basis;
    ComplexMatrix coeff;
};

struct LindbladTerm {
    double rate = 0;      // lambda_l > 0
    ComplexMatrix jump;   // J_l
};

// Diagonalized dissipator: L_D[rho] = sum_l rate_l (J_l rho J_l^dag
// - {J_l^dag J_l, rho} / 2).
struct DiagonalLindblad {
    std::vector<LindbladTerm> terms;
};

// Eigenvalue tuple (c_1, ..., c_M), one entry per Lindblad term.
using EigTuple = std::vector<Complex>;

struct MasterEquationModel {
    std::string label;
    std::size_t dim = 0;
    ComplexMatrix h_eff;
    std::variant<GksDissipator, DiagonalLindblad> dissipator;
    ToleranceOverrides tol_overrides;
    // Marks finite Fock-cutoff demonstration models: eigenspace-based
    // enumeration on these is exact only for the truncated operators, so
    // reports carry a note and no continuum-limit claims.
    bool truncated_demo = false;

    bool is_diagonal() const { return std::holds_alternative<DiagonalLindblad>(dissipator); }
    const DiagonalLindblad& diagonal() const; // throws WrongForm if GKS
    const GksDissipator& gks() const;         // throws WrongForm if diagonal
    std::size_t term_count() const;
    // Checks dimensions, finiteness, Hermiticity of h_eff and of the GKS
    // coefficient matrix (throws on violation).
    void validate(const Tolerances& tol) const;
};

// Diagonalize the coefficient matrix A = B diag(lambda) B^dag and form
// J_l = sum_k B_kl F_k for every eigenvalue above rate_rel * trace(A).
// Each jump is phase-normalized (largest-magnitude entry made real
// positive) so the output is deterministic. Throws NotPsd if A has an
// eigenvalue below -herm-scaled tolerance.
DiagonalLindblad diagonalize_gks(const GksDissipator& d, const Tolerances& tol);

// Model with the dissipator in diagonal form (no-op when already diagonal).
MasterEquationModel ensure_diagonal(const MasterEquationModel& m, const Tolerances& tol);

// L_D[rho] in whichever representation the model carries.
ComplexMatrix apply_dissipator(const MasterEquationModel& m, const ComplexMatrix& rho);

// -i [H_eff, rho] + L_D[rho]
ComplexMatrix liouvillian_apply(const MasterEquationModel& m, const ComplexMatrix& rho);

// Gamma = sum_l rate_l J_l^dag J_l (diagonal form required).
ComplexMatrix decoherence_operator(const MasterEquationModel& m);

// H_ev = H_eff + (i/2) sum_l rate_l (conj(c_l) J_l - c_l J_l^dag); the
// Hamiltonian that drives the dynamics on a common-eigenspace with tuple c.
// Hermitian by construction (checked).
ComplexMatrix evolution_hamiltonian(const MasterEquationModel& m, const EigTuple& c);

// Gauge transform J_l -> J_l - b_l, H -> H + (i/2) sum_l rate_l
// (conj(b_l) J_l - b_l J_l^dag). Leaves liouvillian_apply invariant.
MasterEquationModel shift_transform(const MasterEquationModel& m, const std::vector<Complex>& b);

// H_eff - i Gamma / 2, the generator of the no-jump (norm-decaying) drift.
ComplexMatrix non_hermitian_hamiltonian(const MasterEquationModel& m);

// Effective tolerances for this model: base (usually Tolerances::from_env())
// with the model's overrides applied.
Tolerances effective_tolerances(const MasterEquationModel& m, const Tolerances& base);

} // namespace qdfs
