// Acceptance checklist: one self-contained check per shipped claim, one
// PASS/FAIL line each, nonzero exit if anything fails. Run by ctest as the
// "acceptance" test; safe to run standalone from any directory (no fixtures).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qdfs/engine.hpp"
#include "qdfs/gallery.hpp"
#include "qdfs/model.hpp"
#include "qdfs/oracle.hpp"
#include "qdfs/rng.hpp"

using namespace qdfs;

namespace {

const Tolerances tol;

struct Result {
    bool pass = true;
    std::string detail;
};

// First failed requirement wins; details accumulate for the PASS line too.
struct Check {
    Result r;
    std::ostringstream info;

    void require(bool ok, const std::string& what) {
        if (!ok && r.pass) {
            r.pass = false;
            r.detail = what;
        }
    }
    template <typename T> Check& operator<<(const T& v) {
        info << v;
        return *this;
    }
    Result finish() {
        if (r.pass) r.detail = info.str();
        return r;
    }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(3) << std::scientific << v;
    return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexMatrix unit_ket(std::size_t dim, std::size_t i) {
    ComplexMatrix v(dim, 1);
    v(i, 0) = 1.0;
    return v;
}

// ---------------------------------------------------------------------------
// 1. Correlated three-level decay: the dissipator diagonalizes to a single
//    jump (F1 + F2)/sqrt(2) at rate 2, and the analyzer finds the subspace
//    holding the antisymmetric dark state.
Result criterion_1() {
    Check c;
    MasterEquationModel m = three_level_counterexample();
    DiagonalLindblad d = diagonalize_gks(m.gks(), tol);
    c.require(d.terms.size() == 1,
              "expected exactly 1 Lindblad term, got " + std::to_string(d.terms.size()));
    if (d.terms.size() != 1) return c.finish();
    c.require(std::abs(d.terms[0].rate - 2.0) <= 1e-10,
              "rate " + fmt(d.terms[0].rate) + " != 2 within 1e-10");

    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix expect(3, 3);
    expect(0, 1) = s; // (F1 + F2)/sqrt(2) with F1 = |0><1|, F2 = |0><2|
    expect(0, 2) = s;
    const double jdiff = max_abs_diff(d.terms[0].jump, expect);
    c.require(jdiff <= 1e-10, "jump differs from (F1+F2)/sqrt(2) by " + fmt(jdiff));

    AnalysisReport rep = find_all_dfs(m, tol);
    c.require(rep.records.size() == 1,
              "expected 1 DFS record, got " + std::to_string(rep.records.size()));
    if (rep.records.empty()) return c.finish();
    ComplexMatrix dark = ComplexMatrix::ket({0.0, s, -s});
    const double res = rep.records[0].basis.projection_residual(dark);
    c.require(res <= 1e-8, "dark-state projection residual " + fmt(res));
    c << "one term, rate err " << fmt(std::abs(d.terms[0].rate - 2.0)) << ", jump err "
      << fmt(jdiff) << ", dark residual " << fmt(res) << ", record dim "
      << rep.records[0].basis.dim();
    return c.finish();
}

// ---------------------------------------------------------------------------
// 2. Joint-eigenvector counterexample: |0> is an eigenvector of both jumps
//    yet not dissipation-free (||L_D|| = 1/sqrt(2)); no DFS exists at all.
Result criterion_2() {
    Check c;
    MasterEquationModel m = two_level_nonsemisimple();
    ComplexMatrix e0 = unit_ket(2, 0);

    double max_eig_res = 0;
    for (const auto& t : m.diagonal().terms) {
        ComplexMatrix jv = t.jump * e0;
        Complex lam = 0;
        for (std::size_t i = 0; i < 2; ++i) lam += std::conj(e0(i, 0)) * jv(i, 0);
        double res = 0;
        for (std::size_t i = 0; i < 2; ++i) res += std::norm(jv(i, 0) - lam * e0(i, 0));
        max_eig_res = std::max(max_eig_res, std::sqrt(res));
    }
    c.require(max_eig_res <= 1e-12,
              "|0> is not a joint jump eigenvector (residual " + fmt(max_eig_res) + ")");

    InstantaneousCheck chk = instantaneous_df_check(m, e0, tol);
    c.require(!chk.is_df, "instantaneous check wrongly accepts |0>");
    const double want = 1.0 / std::sqrt(2.0);
    c.require(std::abs(chk.ld_norm - want) <= 1e-9,
              "ld_norm " + fmt(chk.ld_norm) + " != 1/sqrt(2) within 1e-9");

    AnalysisReport rep = find_all_dfs(m, tol);
    c.require(rep.records.empty(),
              "expected no DFS, got " + std::to_string(rep.records.size()) + " record(s)");
    c << "eigen residual " << fmt(max_eig_res) << ", ld_norm - 1/sqrt(2) = "
      << fmt(chk.ld_norm - want) << ", records 0";
    return c.finish();
}

// ---------------------------------------------------------------------------
// 3. Coherence-from-incoherence two-level model: span{|1>} is the unique DFS,
//    classified IGC, and rho(t) = |1><1| stays put over t in [0, 10].
Result criterion_3() {
    Check c;
    MasterEquationModel m = igc_two_level();
    AnalysisReport rep = find_all_dfs(m, tol);
    c.require(rep.records.size() == 1,
              "expected 1 DFS record, got " + std::to_string(rep.records.size()));
    if (rep.records.empty()) return c.finish();
    const DfsRecord& rec = rep.records[0];
    c.require(rec.basis.dim() == 1, "record dim " + std::to_string(rec.basis.dim()) + " != 1");
    ComplexMatrix e1 = unit_ket(2, 1);
    const double res = rec.basis.projection_residual(e1);
    c.require(res <= 1e-8, "span{|1>} projection residual " + fmt(res));
    c.require(rec.cls == DfsClass::igc, "record classified restricted, expected IGC");

    // |1><1| is constant under the full master equation: compare against the
    // frozen reference (unitary_ref = 0) at all 64 checkpoints and at t = 10.
    ComplexMatrix rho0 = outer(e1, e1);
    PropagateOptions opt;
    opt.t_final = 10.0;
    opt.unitary_ref = ComplexMatrix(2, 2);
    TrajectoryResult tr = propagate(m, rho0, opt);
    double max_dist = 0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        // ||rho - rho0||_F^2 = tr rho^2 + tr rho0^2 - 2 tr(rho rho0); the
        // fidelity column is tr(rho rho0) because the reference is frozen.
        const double d2 = tr.purities[k] + 1.0 - 2.0 * tr.fidelities[k];
        max_dist = std::max(max_dist, std::sqrt(std::max(0.0, d2)));
    }
    max_dist = std::max(max_dist, (tr.final_state - rho0).frobenius_norm());
    c.require(max_dist <= 1e-7, "||rho(t) - rho(0)||_F reaches " + fmt(max_dist));
    c << "unique IGC record on span{|1>}, witness " << fmt(rec.witness_ld_norm)
      << ", max ||rho(t)-rho(0)||_F " << fmt(max_dist) << " over [0,10]";
    return c.finish();
}

// ---------------------------------------------------------------------------
// 4. Squeezed-vacuum qubit: jump spectrum +-sqrt(sinh r cosh r) and exactly
//    one 1-dim IGC DFS with the Hamiltonian on, none with it off.
Result criterion_4() {
    Check c;
    double worst_eig = 0;
    for (double r : {0.3, 0.5, 1.0}) {
        const double root = std::sqrt(std::sinh(r) * std::cosh(r));
        MasterEquationModel m = squeezed_vacuum_two_level(r, 1.0, +1);
        std::vector<Complex> ev = eigenvalues(m.diagonal().terms[0].jump);
        std::sort(ev.begin(), ev.end(),
                  [](Complex a, Complex b) { return a.real() < b.real(); });
        const double err = std::max(std::abs(ev[0] - Complex(-root, 0)),
                                    std::abs(ev[1] - Complex(root, 0)));
        worst_eig = std::max(worst_eig, err);
        c.require(err <= 1e-10,
                  "r=" + std::to_string(r) + ": jump eigenvalue error " + fmt(err));

        AnalysisReport rep = find_all_dfs(m, tol);
        const bool one_igc = rep.records.size() == 1 && rep.records[0].basis.dim() == 1 &&
                             rep.records[0].cls == DfsClass::igc;
        c.require(one_igc, "r=" + std::to_string(r) +
                               ": expected exactly one 1-dim IGC record, got " +
                               std::to_string(rep.records.size()));

        MasterEquationModel m0 = m;
        m0.h_eff = ComplexMatrix(2, 2);
        AnalysisReport rep0 = find_all_dfs(m0, tol);
        c.require(rep0.records.empty(),
                  "r=" + std::to_string(r) + ": H_S=0 still yields " +
                      std::to_string(rep0.records.size()) + " record(s)");
    }
    c << "r in {0.3, 0.5, 1.0}: eigenvalue err <= " << fmt(worst_eig)
      << ", one 1-dim IGC each, none with H_S = 0";
    return c.finish();
}

// ---------------------------------------------------------------------------
// 5. Collective squeezed decay: tuned sectors carry IGC subspaces of binomial
//    dimension, the balanced (eigenvalue-0) sector is never IGC, and the
//    8-atom case (dim 256) completes within the runtime budget.
Result criterion_5() {
    Check c;
    AnalysisReport rep3 = find_all_dfs(dicke_squeezed(3, 0.5, 1.0, 2), tol);
    const bool n3_ok = rep3.records.size() == 1 && rep3.records[0].basis.dim() == 3 &&
                       rep3.records[0].cls == DfsClass::igc;
    c.require(n3_ok, "N=3, n_plus=2: expected one 3-dim IGC record");

    // N=4: one jump eigenspace per excitation sector, dims 1,4,6,4,1.
    AnalysisReport rep4b = find_all_dfs(dicke_squeezed(4, 0.5, 1.0, 2), tol);
    std::vector<std::size_t> dims;
    for (const auto& dgn : rep4b.diagnostics) dims.push_back(dgn.joint_eigenspace_dim);
    std::sort(dims.begin(), dims.end());
    c.require(dims == std::vector<std::size_t>{1, 1, 4, 4, 6},
              "N=4 sector dimensions are not {1,4,6,4,1}");

    // the eigenvalue-0 sector may only ever survive as Restricted
    AnalysisReport rep4a = find_all_dfs(dicke_squeezed(4, 0.5, 1.0, 1), tol);
    for (const AnalysisReport* rep : {&rep4a, &rep4b})
        for (const auto& rec : rep->records)
            if (std::abs(rec.tuple[0]) < 1e-8)
                c.require(rec.cls == DfsClass::restricted,
                          "an eigenvalue-0 sector record came back IGC");
    const bool balanced_ok = rep4b.records.size() == 1 &&
                             rep4b.records[0].basis.dim() == 6 &&
                             rep4b.records[0].cls == DfsClass::restricted;
    c.require(balanced_ok, "N=4, n_plus=2: expected a single 6-dim Restricted record");

    const auto t0 = std::chrono::steady_clock::now();
    AnalysisReport rep8 = find_all_dfs(dicke_squeezed(8, 0.5, 1.0, 2), tol);
    const double dt = seconds_since(t0);
    c.require(dt < 600.0, "N=8 took " + std::to_string(dt) + " s (budget 600 s)");
    std::vector<std::pair<std::size_t, DfsClass>> got;
    for (const auto& rec : rep8.records) got.emplace_back(rec.basis.dim(), rec.cls);
    std::sort(got.begin(), got.end());
    const std::vector<std::pair<std::size_t, DfsClass>> want{
        {14, DfsClass::restricted}, {28, DfsClass::igc}};
    c.require(got == want, "N=8 record set is not {14 restricted, 28 IGC}");
    c << "N=3: 3-dim IGC; N=4 sectors {1,4,6,4,1}, balanced sector restricted; N=8 (dim 256) "
      << got.size() << " records in " << std::setprecision(1) << std::fixed << dt << " s";
    return c.finish();
}

// ---------------------------------------------------------------------------
// 6. Every DFS record across the gallery survives 20 seeded propagation
//    trials; a deliberately rotated basis is caught.
Result criterion_6() {
    Check c;
    std::size_t records_checked = 0;
    double worst_drift = 0, worst_fid = 1;
    for (const auto& e : gallery_entries()) {
        MasterEquationModel m = gallery_build(e.name);
        AnalysisReport rep = find_all_dfs(m, tol);
        for (const auto& rec : rep.records) {
            VerifyOutcome out = verify_dfs_record(m, rec, 20, 2024 + records_checked);
            ++records_checked;
            worst_drift = std::max(worst_drift, out.max_purity_drift);
            worst_fid = std::min(worst_fid, out.min_fidelity);
            c.require(out.pass, e.name + " record failed verification: " + out.failure);
        }
    }
    c.require(records_checked >= 4, "expected at least 4 gallery records, saw " +
                                        std::to_string(records_checked));

    // negative control: orthonormal but wrong basis must FAIL
    MasterEquationModel m = three_level_counterexample();
    AnalysisReport rep = find_all_dfs(m, tol);
    DfsRecord bad = rep.records[0];
    ComplexMatrix e1 = unit_ket(3, 1);
    for (std::size_t j = 0; j < bad.basis.dim(); ++j)
        if (std::abs(bad.basis.basis(0, j)) < 0.5) bad.basis.basis.set_col(j, e1);
    VerifyOutcome out = verify_dfs_record(m, bad, 20, 99);
    c.require(!out.pass, "rotated-basis negative control passed verification");
    c << records_checked << " records verified (max purity drift " << fmt(worst_drift)
      << ", min fidelity deficit " << fmt(1.0 - worst_fid)
      << "); rotated-basis control rejected";
    return c.finish();
}

// ---------------------------------------------------------------------------
// 7. Dephasing-type and decay-type random models never produce an IGC record.
Result criterion_7() {
    Check c;
    std::size_t igc_count = 0, record_count = 0;
    for (int pass = 0; pass < 2; ++pass) {
        const RandomKind kind = pass == 0 ? RandomKind::dephasing : RandomKind::decay;
        const std::uint64_t base = pass == 0 ? 50000 : 60000;
        for (std::uint64_t i = 0; i < 100; ++i) {
            const std::size_t dim = 2 + i % 5; // 2..6
            const std::size_t jumps = 1 + i % 3;
            MasterEquationModel m = random_model(dim, jumps, kind, base + i);
            AnalysisReport rep = find_all_dfs(m, effective_tolerances(m, tol));
            for (const auto& rec : rep.records) {
                ++record_count;
                if (rec.cls == DfsClass::igc) {
                    ++igc_count;
                    c.require(false, m.label + ": IGC record of dim " +
                                         std::to_string(rec.basis.dim()));
                }
            }
        }
    }
    c << "200 models (100 dephasing + 100 decay, dim 2..6), " << record_count
      << " restricted records, 0 IGC";
    return c.finish();
}

// ---------------------------------------------------------------------------
// 8. Gauge (shift) invariance of the generator on random triples.
Result criterion_8() {
    Check c;
    double worst = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const std::size_t dim = 2 + i % 4; // 2..5
        const RandomKind kind = static_cast<RandomKind>(i % 4);
        MasterEquationModel m = random_model(dim, 1 + i % 3, kind, 70000 + i);

        Rng rng(123, i);
        std::vector<Complex> b;
        for (std::size_t l = 0; l < m.diagonal().terms.size(); ++l)
            b.push_back(rng.complex_gaussian());

        Subspace full = Subspace::full(dim);
        ComplexMatrix p1 = sample_state_in(full, rng);
        ComplexMatrix p2 = sample_state_in(full, rng);
        ComplexMatrix rho = outer(p1, p1) * 0.6 + outer(p2, p2) * 0.4;

        ComplexMatrix lhs = liouvillian_apply(m, rho);
        ComplexMatrix rhs = liouvillian_apply(shift_transform(m, b), rho);
        const double rel =
            (lhs - rhs).frobenius_norm() / std::max(1e-6, lhs.frobenius_norm());
        worst = std::max(worst, rel);
        c.require(rel <= 1e-9,
                  m.label + ": shifted generator differs by relative " + fmt(rel));
    }
    c << "50 (model, b, rho) triples, worst relative difference " << fmt(worst);
    return c.finish();
}

// ---------------------------------------------------------------------------
// 9. Exhaustiveness: scan 10^4 pure states per model (20 models, dim <= 4);
//    any state that keeps its purity must lie inside a reported DFS.
//
//    The scan propagates with the exact exponential of the (dim^2 x dim^2)
//    generator matrix - machine accurate and fast - and is cross-checked
//    against the adaptive RK4 oracle on one state per model.
Result criterion_9() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t states_per_model = 10000;
    std::size_t retained_total = 0, in_record_samples = 0, models_with_records = 0;

    std::vector<MasterEquationModel> models;
    for (std::uint64_t mi = 0; mi < 20; ++mi)
        models.push_back(random_model(2 + mi % 3, 1 + mi % 2,
                                      static_cast<RandomKind>(mi % 4), 90000 + mi));
    // Positive controls: models with known records drive the scan through its
    // retained-state branch, which the random ensemble almost never reaches.
    models.push_back(three_level_counterexample());
    models.push_back(igc_two_level());

    for (std::uint64_t mi = 0; mi < models.size(); ++mi) {
        const MasterEquationModel& m = models[mi];
        const std::size_t dim = m.dim;
        const Tolerances eff = effective_tolerances(m, tol);
        AnalysisReport rep = find_all_dfs(m, eff);
        if (!rep.records.empty()) ++models_with_records;

        // exact chunk propagator: rho(t + T/64) = exp((T/64) L) rho(t),
        // with L built column-by-column from the generator on matrix units
        const double horizon = default_t_final(m);
        const std::size_t d2 = dim * dim;
        ComplexMatrix lmat(d2, d2);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                ComplexMatrix unit(dim, dim);
                unit(i, j) = 1.0;
                ComplexMatrix out = liouvillian_apply(m, unit);
                for (std::size_t k = 0; k < dim; ++k)
                    for (std::size_t l = 0; l < dim; ++l)
                        lmat(k * dim + l, i * dim + j) = out(k, l);
            }
        ComplexMatrix chunk = matrix_exponential(lmat * Complex(horizon / 64.0, 0));

        auto scan_purities = [&](const ComplexMatrix& psi, bool early_exit) {
            ComplexMatrix v(d2, 1);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    v(i * dim + j, 0) = psi(i, 0) * std::conj(psi(j, 0));
            std::vector<double> purities;
            for (int k = 0; k < 64; ++k) {
                v = chunk * v;
                double p = 0;
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < dim; ++j)
                        p += (v(i * dim + j, 0) * v(j * dim + i, 0)).real();
                purities.push_back(p);
                if (early_exit && p < 1.0 - 1e-4) break; // already disqualified
            }
            return purities;
        };

        // cross-check the exponential against the independent RK4 oracle
        Rng probe_rng(555, mi);
        Subspace full = Subspace::full(dim);
        ComplexMatrix probe = sample_state_in(full, probe_rng);
        {
            PropagateOptions opt;
            opt.t_final = horizon;
            // Final-state refinement alone does not bound mid-trajectory error
            // (dissipative flows contract onto the attractor), so force a fine
            // grid to make every checkpoint accurate well below the 1e-6 bar.
            opt.initial_steps = 2048;
            TrajectoryResult tr = propagate(m, outer(probe, probe), opt);
            std::vector<double> sp = scan_purities(probe, false);
            double disc = 0;
            for (std::size_t k = 0; k < 64; ++k)
                disc = std::max(disc, std::abs(sp[k] - tr.purities[k]));
            c.require(disc <= 1e-6, m.label + ": scan and RK4 oracle purities differ by " +
                                        fmt(disc));
        }

        Rng rng(777, mi);
        for (std::size_t s = 0; s < states_per_model; ++s) {
            const bool from_record = !rep.records.empty() && s % 10 == 9;
            ComplexMatrix psi =
                from_record
                    ? sample_state_in(rep.records[s % rep.records.size()].basis, rng)
                    : sample_state_in(full, rng);
            if (from_record) ++in_record_samples;

            std::vector<double> purities = scan_purities(psi, true);
            double min_p = 1.0;
            for (double p : purities) min_p = std::min(min_p, p);
            const bool retained = purities.size() == 64 && min_p >= 1.0 - 1e-6;

            if (from_record)
                c.require(retained, m.label + ": in-record sample lost purity to " +
                                        fmt(1.0 - min_p));
            if (retained) {
                ++retained_total;
                double best = 2.0;
                for (const auto& rec : rep.records)
                    best = std::min(best, rec.basis.projection_residual(psi));
                c.require(best <= 1e-6,
                          m.label + " state " + std::to_string(s) +
                              ": purity retained (drop " + fmt(1.0 - min_p) +
                              ") outside every record (best residual " + fmt(best) + ")");
            }
        }
    }
    const double dt = seconds_since(t0);
    c.require(dt <= 300.0, "scan took " + std::to_string(dt) + " s (budget 300 s)");
    c.require(retained_total > 0 && in_record_samples > 0,
              "positive controls never exercised the retained-state branch");
    c << "20 random + 2 control models x 10^4 states, " << retained_total
      << " purity-retaining states (all inside records; " << in_record_samples
      << " sampled in-record, " << models_with_records << " models with records) in "
      << std::setprecision(1) << std::fixed << dt << " s";
    return c.finish();
}

// ---------------------------------------------------------------------------
// 10. Integrator accuracy: closed-form amplitude decay to 1e-8 and clean
//     fourth-order step convergence.
Result criterion_10() {
    Check c;
    MasterEquationModel m;
    m.label = "decay";
    m.dim = 2;
    m.h_eff = ComplexMatrix(2, 2);
    DiagonalLindblad d;
    d.terms.push_back({1.0, sigma_minus()});
    m.dissipator = std::move(d);
    ComplexMatrix rho0 = outer(unit_ket(2, 1), unit_ket(2, 1));

    const double T = 5.0;
    PropagateOptions opt;
    opt.t_final = T;
    TrajectoryResult tr = propagate(m, rho0, opt);
    const double err = std::abs(tr.final_state(1, 1).real() - std::exp(-T));
    c.require(err <= 1e-8, "population error " + fmt(err) + " exceeds 1e-8");

    auto fixed_err = [&](std::size_t steps) {
        TrajectoryResult t = propagate(m, rho0, T, steps);
        return std::abs(t.final_state(1, 1).real() - std::exp(-T));
    };
    const double e64 = fixed_err(64), e128 = fixed_err(128), e256 = fixed_err(256);
    const double r1 = e64 / e128, r2 = e128 / e256;
    c.require(r1 > 10.0 && r1 < 22.0,
              "step-halving ratio " + fmt(r1) + " not ~16 (64 -> 128 steps)");
    c.require(r2 > 10.0 && r2 < 22.0,
              "step-halving ratio " + fmt(r2) + " not ~16 (128 -> 256 steps)");
    c << "closed-form error " << fmt(err) << " (adaptive, " << tr.steps_used
      << " steps); halving ratios " << std::setprecision(1) << std::fixed << r1 << ", " << r2;
    return c.finish();
}

// ---------------------------------------------------------------------------
// 11. Truncated Fock-space demos: no DFS is claimed (with the caveat recorded
//     in the report) and the coherent-state trajectories hold purity within
//     the thresholds pinned during development (1e-9; measured < 5e-13).
Result criterion_11() {
    Check c;
    struct Demo {
        const char* name;
        int n_max;
        std::size_t initial_steps;
    };
    for (const Demo& demo : {Demo{"damped_oscillator_truncated", 24, 512},
                             Demo{"two_photon_absorber_truncated", 30, 4096}}) {
        MasterEquationModel m = gallery_build(demo.name);
        AnalysisReport rep = find_all_dfs(m, effective_tolerances(m, tol));
        c.require(rep.records.empty(),
                  std::string(demo.name) + ": truncated demo claimed a DFS record");
        bool noted = false;
        for (const auto& n : rep.notes)
            if (n.find("not claimed") != std::string::npos &&
                n.find("truncat") != std::string::npos)
                noted = true;
        c.require(noted, std::string(demo.name) + ": report lacks the truncation caveat");

        ComplexMatrix psi = coherent_state(demo.n_max, Complex(1.0, 0));
        PropagateOptions opt;
        opt.t_final = 10.0;
        opt.initial_steps = demo.initial_steps;
        TrajectoryResult tr = propagate(m, outer(psi, psi), opt);
        double drift = 0;
        for (double p : tr.purities) drift = std::max(drift, std::abs(p - 1.0));
        c.require(drift <= 1e-9, std::string(demo.name) + ": purity drift " + fmt(drift) +
                                     " exceeds the pinned 1e-9");
        c << demo.name << " drift " << fmt(drift) << " (steps " << tr.steps_used << ")  ";
    }
    return c.finish();
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"three-level correlated decay: diagonalization and dark subspace", criterion_1},
        {"joint eigenvector without a DFS is rejected", criterion_2},
        {"IGC two-level record and stationary propagation", criterion_3},
        {"squeezed-vacuum qubit: spectrum and branch behaviour", criterion_4},
        {"collective decay sectors, balanced sector never IGC, dim-256 run", criterion_5},
        {"all gallery records verified; rotated basis rejected", criterion_6},
        {"dephasing/decay random models yield no IGC", criterion_7},
        {"generator invariant under jump shifts", criterion_8},
        {"purity-retaining states are exhausted by the records", criterion_9},
        {"integrator matches closed form at fourth order", criterion_10},
        {"truncated demos: no claims, purity within pinned bounds", criterion_11},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (!r.pass) ++failures;
        std::cout << "criterion " << std::setw(2) << (i + 1) << ": "
                  << (r.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "\n";
        std::cout << "              " << r.detail << "\n";
        std::cout.flush();
    }
    if (failures == 0) {
        std::cout << "acceptance: all " << criteria.size() << " criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " of " << criteria.size()
              << " criteria FAILED\n";
    return 1;
}
