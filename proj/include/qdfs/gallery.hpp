#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdfs/engine.hpp"
#include "qdfs/model.hpp"

namespace qdfs {

// Two-level convention used by every gallery model (asserted by the test
// suite via the stationarity checks below):
//   basis order (|0>, |1>), |1> excited,
//   sigma_minus = |0><1|, sigma_plus = |1><0|,
//   sigma_z = |1><1| - |0><0|, sigma_y = i (sigma_minus - sigma_plus).
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_minus();
ComplexMatrix sigma_plus();
std::string convention_note();

// Truncated Fock-space helpers: a|n> = sqrt(n)|n-1> on n = 0..n_max.
ComplexMatrix truncated_annihilation(int n_max);
ComplexMatrix number_operator(int n_max);
// Normalized truncated coherent state.
ComplexMatrix coherent_state(int n_max, Complex alpha);

struct ExpectedDfs {
    std::size_t dim = 0;
    DfsClass cls = DfsClass::restricted;
};

struct GalleryEntry {
    std::string name;
    std::string summary;
    std::map<std::string, double> defaults; // parameter name -> default
    // Expected analysis outcome at the default parameters, when pinned.
    std::optional<std::vector<ExpectedDfs>> expected;
};

const std::vector<GalleryEntry>& gallery_entries();
// Throws InvalidParameter for unknown names or parameters.
MasterEquationModel gallery_build(const std::string& name,
                                  const std::map<std::string, double>& params = {});

// Three-level system with correlated decay |1>,|2> -> |0>; the dark state
// (|1> - |2>)/sqrt(2) spans a decoherence-free direction together with |0>.
MasterEquationModel three_level_counterexample();

// Two jumps on a qubit whose joint eigenvector |0> still satisfies neither
// fixed-point condition: no DFS at all.
MasterEquationModel two_level_nonsemisimple();

// Single jump sigma_plus + sigma_z at rate 2 with H = sigma_y: |1> evolves
// unitarily while the dissipator acts on it (coherence from incoherence).
MasterEquationModel igc_two_level();

// Qubit in squeezed vacuum, r the squeezing parameter: jump
// cosh(r) sigma_minus + sinh(r) sigma_plus at rate gamma0, with the system
// Hamiltonian sign (branch = +1 / -1) picking which jump eigenstate the
// evolution stabilizes.
MasterEquationModel squeezed_vacuum_two_level(double r, double gamma0, int branch);

// N <= 8 qubits with one collective jump sum_n (cosh r sigma-_n +
// sinh r sigma+_n) and the collective Hamiltonian tuned to the n_plus
// excitation sector.
MasterEquationModel dicke_squeezed(int n_atoms, double r, double gamma, int n_plus);

// Damped harmonic oscillator on a Fock cutoff n_max. driven = false: bare
// H = omega0 a^dag a, vacuum is the only DFS. driven = true: resonant drive
// matched to gamma and alpha, written in the rotating frame (omega0 drops
// out of H); coherent |alpha> stays pure to truncation accuracy but is not
// an eigenvector of the truncated a, so it is a propagation demo, not a
// claimed DFS. Requires n_max >= 4 |alpha|^2 + 10.
MasterEquationModel damped_oscillator_truncated(int n_max, double omega0, double gamma,
                                                double alpha, bool driven);

// Two-photon absorber (jump a^2) with the pairing Hamiltonian that holds
// |+alpha>, |-alpha> pure; same truncation caveats as above.
MasterEquationModel two_photon_absorber_truncated(int n_max, double gamma, double alpha);

enum class RandomKind { generic, dephasing, decay, normal };

RandomKind random_kind_from_string(const std::string& s);

// Seeded random model, dim <= 16, n_jumps Lindblad terms:
//   generic:   dense complex-Gaussian jumps,
//   dephasing: diagonal jumps with well-separated entries,
//   decay:     strictly upper-triangular jumps (all eigenvalues 0),
//   normal:    one random unitary conjugating separated diagonals.
// Rates are drawn from [0.5, 2]; H_eff is a random Hermitian matrix.
MasterEquationModel random_model(std::size_t dim, std::size_t n_jumps, RandomKind kind,
                                 std::uint64_t seed);

} // namespace qdfs
