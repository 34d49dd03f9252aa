#include "qdfs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdfs/kernels.hpp"

namespace qdfs {

namespace {

// PSD within tol, decided by attempting a Cholesky factorization of
// rho + tol*I. Deliberately LAPACK-free: this runs inside parallel trial
// loops, and the LAPACK backend is only called from serial context.
bool is_psd_within(const ComplexMatrix& rho, double tol) {
    const std::size_t n = rho.rows();
    ComplexMatrix a = rho.hermitian_part();
    const double shift = tol * std::max(1.0, a.frobenius_norm());
    for (std::size_t i = 0; i < n; ++i) a(i, i) += shift;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(a(j, k));
        if (!(d > 0)) return false;
        const double root = std::sqrt(d);
        a(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
            a(i, j) = s / root;
        }
    }
    return true;
}

void check_density_matrix(const ComplexMatrix& rho, std::size_t dim) {
    if (rho.rows() != dim || rho.cols() != dim)
        throw DimensionMismatch("propagate: state shape mismatch");
    if (!rho.is_finite()) throw NotDensityMatrix("propagate: non-finite entry in rho0");
    ComplexMatrix dev = rho - rho.adjoint();
    if (dev.max_abs() > 1e-10 * std::max(1.0, rho.frobenius_norm()))
        throw NotDensityMatrix("propagate: rho0 is not Hermitian");
    if (std::abs(rho.trace() - Complex(1, 0)) > 1e-10)
        throw NotDensityMatrix("propagate: tr(rho0) != 1");
    if (!is_psd_within(rho, 1e-10))
        throw NotDensityMatrix("propagate: rho0 has a negative eigenvalue");
}

struct CheckpointData {
    std::vector<double> purities;
    std::vector<double> fidelities;
    std::vector<double> traces;
    ComplexMatrix final_state;
};

double purity_of(const ComplexMatrix& rho) {
    // Re tr(rho^2) without forming the product.
    double s = 0;
    const std::size_t n = rho.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s += (rho(i, j) * rho(j, i)).real();
    return s;
}

// One fixed-resolution RK4 run over [0, t_final], recording the 64 uniform
// checkpoints. steps must be a multiple of trajectory_checkpoints.
CheckpointData run_fixed(const MasterEquationModel& m, const ComplexMatrix& rho0,
                         double t_final, std::size_t steps, const ComplexMatrix& u_checkpoint,
                         double fid_scale) {
    const std::size_t per_cp = steps / trajectory_checkpoints;
    const double dt = t_final / static_cast<double>(steps);
    const std::size_t sz = rho0.size();

    CheckpointData out;
    ComplexMatrix rho = rho0;
    ComplexMatrix sigma = rho0; // unitary reference, advanced per checkpoint
    ComplexMatrix stage(rho.rows(), rho.cols());

    for (std::size_t cp = 0; cp < trajectory_checkpoints; ++cp) {
        for (std::size_t s = 0; s < per_cp; ++s) {
            ComplexMatrix k1 = liouvillian_apply(m, rho);
            stage = rho;
            kernels::axpby({0.5 * dt, 0}, k1.data(), {1, 0}, stage.data(), sz);
            ComplexMatrix k2 = liouvillian_apply(m, stage);
            stage = rho;
            kernels::axpby({0.5 * dt, 0}, k2.data(), {1, 0}, stage.data(), sz);
            ComplexMatrix k3 = liouvillian_apply(m, stage);
            stage = rho;
            kernels::axpby({dt, 0}, k3.data(), {1, 0}, stage.data(), sz);
            ComplexMatrix k4 = liouvillian_apply(m, stage);
            kernels::axpby({dt / 6.0, 0}, k1.data(), {1, 0}, rho.data(), sz);
            kernels::axpby({dt / 3.0, 0}, k2.data(), {1, 0}, rho.data(), sz);
            kernels::axpby({dt / 3.0, 0}, k3.data(), {1, 0}, rho.data(), sz);
            kernels::axpby({dt / 6.0, 0}, k4.data(), {1, 0}, rho.data(), sz);
        }
        sigma = u_checkpoint * sigma * u_checkpoint.adjoint();
        out.purities.push_back(purity_of(rho));
        double f = 0;
        for (std::size_t i = 0; i < rho.rows(); ++i)
            for (std::size_t j = 0; j < rho.cols(); ++j)
                f += (rho(i, j) * sigma(j, i)).real();
        out.fidelities.push_back(f / fid_scale);
        out.traces.push_back(std::abs(rho.trace()));
    }
    out.final_state = std::move(rho);
    return out;
}

std::size_t round_steps(std::size_t steps) {
    if (steps < trajectory_checkpoints) return trajectory_checkpoints;
    const std::size_t rem = steps % trajectory_checkpoints;
    return rem == 0 ? steps : steps + (trajectory_checkpoints - rem);
}

} // namespace

double default_t_final(const MasterEquationModel& m) {
    if (!m.is_diagonal()) return 1.0;
    double mx = 0;
    for (const auto& t : m.diagonal().terms) mx = std::max(mx, t.rate);
    return mx > 0 ? 10.0 / mx : 1.0;
}

double purity(const ComplexMatrix& rho) {
    if (rho.rows() != rho.cols()) throw NotSquare("purity: not square");
    return purity_of(rho);
}

double purity_rate(const MasterEquationModel& m, const ComplexMatrix& rho) {
    ComplexMatrix ld = apply_dissipator(m, rho);
    double s = 0;
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t j = 0; j < rho.cols(); ++j)
            s += (rho(i, j) * ld(j, i)).real();
    return 2.0 * s;
}

TrajectoryResult propagate(const MasterEquationModel& m, const ComplexMatrix& rho0,
                           const PropagateOptions& opt) {
    check_density_matrix(rho0, m.dim);
    MasterEquationModel md = ensure_diagonal(m, Tolerances::from_env());
    const double t_final = opt.t_final > 0 ? opt.t_final : default_t_final(md);

    const ComplexMatrix& href = opt.unitary_ref ? *opt.unitary_ref : md.h_eff;
    if (href.rows() != m.dim || href.cols() != m.dim)
        throw DimensionMismatch("propagate: unitary reference shape mismatch");
    ComplexMatrix u_cp = matrix_exponential(
        href * Complex(0, -t_final / static_cast<double>(trajectory_checkpoints)));
    const double fid_scale = purity_of(rho0);

    std::size_t steps = round_steps(opt.initial_steps);
    CheckpointData acc = run_fixed(md, rho0, t_final, steps, u_cp, fid_scale);
    if (opt.richardson) {
        for (;;) {
            if (steps * 2 > opt.max_steps)
                throw StepCapExceeded("propagate: no convergence to " +
                                      std::to_string(richardson_agreement) + " within " +
                                      std::to_string(opt.max_steps) + " steps");
            CheckpointData finer = run_fixed(md, rho0, t_final, steps * 2, u_cp, fid_scale);
            // A blown-up run (coarse steps outside the RK4 stability region)
            // is never agreement, whatever the entrywise differences say.
            const double diff = finer.final_state.is_finite()
                                    ? max_abs_diff(acc.final_state, finer.final_state)
                                    : std::numeric_limits<double>::infinity();
            acc = std::move(finer);
            steps *= 2;
            if (diff <= richardson_agreement) break;
        }
    }

    TrajectoryResult out;
    out.purities = std::move(acc.purities);
    out.fidelities = std::move(acc.fidelities);
    out.final_state = std::move(acc.final_state);
    out.steps_used = steps;
    for (std::size_t k = 1; k <= trajectory_checkpoints; ++k)
        out.times.push_back(t_final * static_cast<double>(k) /
                            static_cast<double>(trajectory_checkpoints));
    for (double tr : acc.traces) out.trace_drift = std::max(out.trace_drift, std::abs(tr - 1.0));
    return out;
}

TrajectoryResult propagate(const MasterEquationModel& m, const ComplexMatrix& rho0,
                           double t_final, std::size_t steps) {
    PropagateOptions opt;
    opt.t_final = t_final;
    opt.initial_steps = steps;
    opt.richardson = false; // caller picked the resolution; honour it
    return propagate(m, rho0, opt);
}

ComplexMatrix sample_state_in(const Subspace& s, Rng& rng) {
    if (s.dim() == 0) throw InvalidSubspace("sample_state_in: empty subspace");
    for (;;) {
        ComplexMatrix psi(s.ambient_dim, 1);
        for (std::size_t j = 0; j < s.dim(); ++j) {
            const Complex a = rng.complex_gaussian();
            for (std::size_t i = 0; i < s.ambient_dim; ++i)
                psi(i, 0) += a * s.basis(i, j);
        }
        const double nrm = vec_norm(psi);
        if (nrm > 1e-8) {
            psi *= Complex(1.0 / nrm, 0);
            return psi;
        }
    }
}

VerifyOutcome verify_dfs_record(const MasterEquationModel& m, const DfsRecord& rec,
                                std::size_t trials, std::uint64_t seed,
                                double t_final, std::size_t initial_steps) {
    const Tolerances tol = Tolerances::from_env();
    MasterEquationModel md = ensure_diagonal(m, tol);
    if (rec.basis.ambient_dim != md.dim)
        throw DimensionMismatch("verify_dfs_record: record dimension mismatch");
    if (rec.basis.dim() == 0) throw InvalidSubspace("verify_dfs_record: empty record basis");
    if (rec.basis.orthonormality_defect() > 1e-8)
        throw InvalidSubspace("verify_dfs_record: record basis not orthonormal");
    if (rec.tuple.size() != md.diagonal().terms.size())
        throw DimensionMismatch("verify_dfs_record: tuple length does not match model");

    const double horizon = t_final > 0 ? t_final : default_t_final(md);
    const ComplexMatrix h_ev = evolution_hamiltonian(md, rec.tuple);

    VerifyOutcome out;
    out.trials.resize(trials);
    std::vector<std::string> errors(trials);

// Trials are independent; results land in per-trial slots so the outcome is
// identical however the loop is scheduled.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < trials; ++t) {
        try {
            Rng rng(seed, t);
            ComplexMatrix psi = sample_state_in(rec.basis, rng);
            PropagateOptions opt;
            opt.t_final = horizon;
            opt.initial_steps = initial_steps;
            opt.unitary_ref = h_ev;
            TrajectoryResult tr = propagate(md, outer(psi, psi), opt);
            TrialResult& r = out.trials[t];
            for (double p : tr.purities)
                r.purity_drift = std::max(r.purity_drift, std::abs(p - 1.0));
            for (double f : tr.fidelities) r.min_fidelity = std::min(r.min_fidelity, f);
            r.pass = r.purity_drift <= verify_purity_tol &&
                     r.min_fidelity >= 1.0 - verify_fidelity_tol;
        } catch (const std::exception& e) {
            errors[t] = e.what();
            out.trials[t].pass = false;
            out.trials[t].min_fidelity = 0;
            out.trials[t].purity_drift = 1;
        }
    }

    out.pass = true;
    for (std::size_t t = 0; t < trials; ++t) {
        const TrialResult& r = out.trials[t];
        out.max_purity_drift = std::max(out.max_purity_drift, r.purity_drift);
        out.min_fidelity = std::min(out.min_fidelity, r.min_fidelity);
        if (!r.pass && out.pass) {
            out.pass = false;
            if (!errors[t].empty())
                out.failure = "trial " + std::to_string(t) + ": " + errors[t];
            else if (r.purity_drift > verify_purity_tol)
                out.failure = "trial " + std::to_string(t) + ": purity drift " +
                              std::to_string(r.purity_drift);
            else
                out.failure = "trial " + std::to_string(t) + ": fidelity " +
                              std::to_string(r.min_fidelity);
        }
    }
    return out;
}

DriftResult nonhermitian_drift(const MasterEquationModel& m, const ComplexMatrix& psi0,
                               double t_final, std::size_t samples) {
    if (psi0.rows() != m.dim || psi0.cols() != 1)
        throw DimensionMismatch("nonhermitian_drift: state shape mismatch");
    if (samples == 0) throw InvalidParameter("nonhermitian_drift: samples must be positive");
    MasterEquationModel md = ensure_diagonal(m, Tolerances::from_env());
    ComplexMatrix h_nh = non_hermitian_hamiltonian(md);
    ComplexMatrix u = matrix_exponential(h_nh * Complex(0, -t_final / static_cast<double>(samples)));

    DriftResult out;
    ComplexMatrix psi = psi0;
    for (std::size_t k = 1; k <= samples; ++k) {
        psi = u * psi;
        out.times.push_back(t_final * static_cast<double>(k) / static_cast<double>(samples));
        out.states.push_back(psi);
        out.norms.push_back(vec_norm(psi));
    }
    return out;
}

} // namespace qdfs
