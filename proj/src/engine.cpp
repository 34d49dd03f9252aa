#include "qdfs/engine.hpp"

#include <algorithm>
#include <cmath>

#include "qdfs/kernels.hpp"

namespace qdfs {

namespace {

bool tuple_less(const EigTuple& a, const EigTuple& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

double max_jump_norm(const DiagonalLindblad& d) {
    double mx = 0;
    for (const auto& t : d.terms) mx = std::max(mx, t.jump.frobenius_norm());
    return mx;
}

// Worst eigen-membership residual ||J_l v - c_l v|| over the basis columns.
double eigen_residual(const DiagonalLindblad& d, const EigTuple& c, const Subspace& s) {
    double worst = 0;
    for (std::size_t l = 0; l < d.terms.size(); ++l) {
        ComplexMatrix jv = d.terms[l].jump * s.basis;
        kernels::axpby(-c[l], s.basis.data(), {1, 0}, jv.data(), jv.size());
        for (std::size_t col = 0; col < s.dim(); ++col)
            worst = std::max(worst, vec_norm(jv.col(col)));
    }
    return worst;
}

} // namespace

const char* to_string(DfsClass c) {
    return c == DfsClass::restricted ? "restricted" : "igc";
}

InstantaneousCheck instantaneous_df_check(const MasterEquationModel& m,
                                          const ComplexMatrix& psi,
                                          const Tolerances& tol) {
    if (psi.rows() != m.dim || psi.cols() != 1)
        throw DimensionMismatch("instantaneous_df_check: state shape mismatch");
    if (std::abs(vec_norm(psi) - 1.0) > 1e-10)
        throw NotNormalized("instantaneous_df_check: state norm " + std::to_string(vec_norm(psi)));

    MasterEquationModel md = ensure_diagonal(m, tol);
    const auto& d = md.diagonal();
    ComplexMatrix rho = outer(psi, psi);
    const double ld_norm = apply_dissipator(md, rho).frobenius_norm();

    // Fixed-point test both ways: the dissipator image directly, and the
    // equivalent eigenvector conditions (joint eigenvector of every jump,
    // and of Gamma with eigenvalue g = sum rate |c|^2). They must agree;
    // is_df takes the conjunction.
    const double res_tol = tol.residual_for(max_jump_norm(d));
    EigTuple c(d.terms.size());
    bool eigen_ok = true;
    double g = 0;
    for (std::size_t l = 0; l < d.terms.size(); ++l) {
        ComplexMatrix jpsi = d.terms[l].jump * psi;
        c[l] = dot(psi, jpsi);
        kernels::axpby(-c[l], psi.data(), {1, 0}, jpsi.data(), jpsi.size());
        if (vec_norm(jpsi) > res_tol) eigen_ok = false;
        g += d.terms[l].rate * std::norm(c[l]);
    }
    if (eigen_ok && !d.terms.empty()) {
        ComplexMatrix gpsi = decoherence_operator(md) * psi;
        kernels::axpby({-g, 0}, psi.data(), {1, 0}, gpsi.data(), gpsi.size());
        if (vec_norm(gpsi) > tol.residual_rel * (1.0 + decoherence_operator(md).frobenius_norm()))
            eigen_ok = false;
    }

    InstantaneousCheck out;
    out.ld_norm = ld_norm;
    out.is_df = eigen_ok && ld_norm <= tol.ld_norm_for(m.dim);
    if (out.is_df) {
        out.c = std::move(c);
        out.g = g;
    }
    return out;
}

std::vector<std::pair<EigTuple, Subspace>>
common_eigenspaces(const std::vector<ComplexMatrix>& jumps, const Tolerances& tol) {
    if (jumps.empty()) throw DimensionMismatch("common_eigenspaces: no jump operators");
    const std::size_t n = jumps.front().rows();
    for (const auto& j : jumps)
        if (j.rows() != n || j.cols() != n)
            throw DimensionMismatch("common_eigenspaces: jump shape mismatch");

    struct Node {
        EigTuple tuple;
        Subspace sub;
    };
    std::vector<Node> frontier{{{}, Subspace::full(n)}};

    // Sequential refinement. At each level the candidates c are the
    // eigenvalues of the compression Q^dag J Q: any v = Q x with J v = c v
    // projects to an eigenvector of the compression, so no candidate is
    // missed. Membership itself is decided on the full-space residual
    // J Q x - c Q x, which also rejects vectors the compression alone would
    // wrongly admit (J leaking out of span Q). Branching at each level is
    // bounded by the current subspace dimension.
    for (const auto& jump : jumps) {
        const double radius = tol.cluster_for(jump.frobenius_norm());
        std::vector<Node> next;
        for (auto& node : frontier) {
            const ComplexMatrix& q = node.sub.basis;
            ComplexMatrix jq = jump * q;
            ComplexMatrix compression = adjoint_times(q, jq);
            std::vector<Complex> cands = cluster_complex(eigenvalues(compression), radius);
            for (Complex c : cands) {
                ComplexMatrix shifted = jq;
                kernels::axpby(-c, q.data(), {1, 0}, shifted.data(), shifted.size());
                const double cutoff =
                    std::max(tol.rank_rel * std::max(1.0, jump.frobenius_norm()), radius);
                Subspace x = nullspace_cutoff(shifted, cutoff);
                if (x.dim() == 0) continue;
                Node child;
                child.tuple = node.tuple;
                child.tuple.push_back(c);
                child.sub = orthonormalize_cols(q * x.basis, tol.rank_rel);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }

    std::vector<std::pair<EigTuple, Subspace>> out;
    out.reserve(frontier.size());
    for (auto& node : frontier)
        out.emplace_back(std::move(node.tuple), std::move(node.sub));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return tuple_less(a.first, b.first); });
    return out;
}

RefineResult maximal_invariant_subspace(const ComplexMatrix& h, const Subspace& start,
                                        double tol_rank) {
    if (h.rows() != h.cols() || h.rows() != start.ambient_dim)
        throw DimensionMismatch("maximal_invariant_subspace: shape mismatch");
    const double cutoff = tol_rank * (1.0 + h.frobenius_norm());

    RefineResult res;
    res.subspace = start;
    std::size_t dim_after_first_pass = start.dim();
    while (res.subspace.dim() > 0) {
        const ComplexMatrix& q = res.subspace.basis;
        ComplexMatrix hq = h * q;
        ComplexMatrix compression = adjoint_times(q, hq);
        // leak = (1 - Q Q^dag) h Q
        ComplexMatrix leak = hq - q * compression;
        Subspace keep = nullspace_cutoff(leak, cutoff);
        ++res.iterations;
        if (res.iterations == 1) dim_after_first_pass = keep.dim();
        if (keep.dim() == res.subspace.dim()) break; // fixed point
        res.subspace = keep.dim() == 0
                           ? Subspace::empty(start.ambient_dim)
                           : orthonormalize_cols(q * keep.basis, tol_rank);
    }
    res.one_pass_insufficient = dim_after_first_pass != res.subspace.dim();
    return res;
}

Classification classify(const MasterEquationModel& m, const Subspace& s,
                        const EigTuple& c, const Tolerances& tol) {
    MasterEquationModel md = ensure_diagonal(m, tol);
    const auto& d = md.diagonal();
    if (s.ambient_dim != m.dim) throw DimensionMismatch("classify: subspace ambient mismatch");
    if (s.dim() == 0) throw InvalidSubspace("classify: empty subspace");
    if (s.orthonormality_defect() > 1e-8)
        throw InvalidSubspace("classify: basis not orthonormal");
    if (eigen_residual(d, c, s) > tol.residual_for(max_jump_norm(d)))
        throw InvalidSubspace("classify: basis violates the jump eigenvector conditions");

    // For states sharing one eigenvalue tuple, the dissipator acts as
    // L_D[|v><v|] = -(w v^dag + v w^dag)/2 with w the component of
    // (sum_l rate_l c_l J_l^dag) v orthogonal to v. It therefore vanishes on
    // every basis state iff it vanishes on the whole span, so checking basis
    // states is exact, not a heuristic.
    Classification out;
    double worst = 0;
    std::size_t worst_idx = 0;
    for (std::size_t col = 0; col < s.dim(); ++col) {
        ComplexMatrix v = s.basis.col(col);
        double nrm = apply_dissipator(md, outer(v, v)).frobenius_norm();
        if (nrm > worst) {
            worst = nrm;
            worst_idx = col;
        }
    }
    out.witness_ld_norm = worst;

    if (worst <= tol.ld_norm_for(m.dim)) {
        out.cls = DfsClass::restricted;
        double g = 0;
        for (std::size_t l = 0; l < d.terms.size(); ++l) g += d.terms[l].rate * std::norm(c[l]);
        out.g = g;
        return out;
    }

    out.cls = DfsClass::igc;
    IgcWitness w;
    w.state_index = worst_idx;
    w.ld_norm = worst;
    for (Complex cl : c) w.max_abs_c = std::max(w.max_abs_c, std::abs(cl));

    ComplexMatrix v = s.basis.col(worst_idx);
    auto noneigen = [&](bool weighted) {
        ComplexMatrix gv(m.dim, 1);
        for (std::size_t l = 0; l < d.terms.size(); ++l) {
            ComplexMatrix jdv = d.terms[l].jump.adjoint() * v;
            Complex f = c[l] * (weighted ? Complex(d.terms[l].rate, 0) : Complex(1, 0));
            kernels::axpby(f, jdv.data(), {1, 0}, gv.data(), gv.size());
        }
        Complex mean = dot(v, gv);
        kernels::axpby(-mean, v.data(), {1, 0}, gv.data(), gv.size());
        return vec_norm(gv);
    };
    w.noneigen_residual_plain = noneigen(false);
    w.noneigen_residual_weighted = noneigen(true);

    // Necessary conditions for a coherence-generating subspace: some
    // c_l != 0, and the witness state is not an eigenstate of the
    // rate-weighted sum above. The weighted residual is tied to the
    // dissipator norm exactly: ||L_D|| = residual / sqrt(2).
    if (w.max_abs_c <= 1e-14)
        throw Error("classify: IGC subspace with all-zero eigenvalue tuple");
    double rate_scale = 0;
    for (const auto& t : d.terms) rate_scale = std::max(rate_scale, t.rate);
    const double slack = 1e-4 * (1.0 + worst) * (1.0 + rate_scale * (1.0 + max_jump_norm(d)));
    if (std::abs(w.noneigen_residual_weighted - std::sqrt(2.0) * worst) > slack)
        throw Error("classify: IGC witness inconsistent with dissipator norm");

    out.igc = w;
    return out;
}

AnalysisReport find_all_dfs(const MasterEquationModel& m, const Tolerances& base_tol) {
    const Tolerances tol = effective_tolerances(m, base_tol);
    m.validate(tol);
    MasterEquationModel md = ensure_diagonal(m, tol);
    const auto& d = md.diagonal();

    AnalysisReport rep;
    rep.model_label = m.label;
    rep.dim = m.dim;
    rep.tolerances = tol;
    if (m.truncated_demo)
        rep.notes.push_back(
            "finite-truncation demo: jump eigenspaces are exact only for the truncated "
            "operators; approximately-pure continuum states are not claimed as DFS records");

    if (d.terms.empty()) {
        // No dissipation: the whole space evolves unitarily under H_eff.
        DfsRecord rec;
        rec.tuple = {};
        rec.basis = Subspace::full(m.dim);
        rec.cls = DfsClass::restricted;
        rec.g = 0.0;
        rec.witness_ld_norm = 0.0;
        rec.h_ev_restricted = md.h_eff;
        rep.records.push_back(std::move(rec));
        rep.tuples_examined = 1;
        rep.diagnostics.push_back({{}, m.dim, 0, m.dim, 0.0, false});
        return rep;
    }

    std::vector<ComplexMatrix> jumps;
    jumps.reserve(d.terms.size());
    for (const auto& t : d.terms) jumps.push_back(t.jump);
    auto spaces = common_eigenspaces(jumps, tol);
    rep.tuples_examined = spaces.size();

    for (auto& [tuple, ej] : spaces) {
        TupleDiagnostic diag;
        diag.tuple = tuple;
        diag.joint_eigenspace_dim = ej.dim();

        ComplexMatrix h_ev = evolution_hamiltonian(md, tuple);
        RefineResult ref = maximal_invariant_subspace(h_ev, ej, tol.rank_rel);
        diag.refine_iterations = ref.iterations;
        diag.final_dim = ref.subspace.dim();
        diag.one_pass_insufficient = ref.one_pass_insufficient;
        if (ref.one_pass_insufficient)
            rep.notes.push_back("invariance refinement needed multiple passes for one tuple "
                                "(single-pass check would have been wrong)");

        if (ref.subspace.dim() > 0) {
            diag.max_eigen_residual = eigen_residual(d, tuple, ref.subspace);
            Classification cls = classify(md, ref.subspace, tuple, tol);
            DfsRecord rec;
            rec.tuple = tuple;
            rec.basis = ref.subspace;
            rec.cls = cls.cls;
            rec.g = cls.g;
            rec.witness_ld_norm = cls.witness_ld_norm;
            rec.igc = cls.igc;
            rec.h_ev_restricted = adjoint_times(rec.basis.basis, h_ev * rec.basis.basis);
            rep.records.push_back(std::move(rec));
        }
        rep.diagnostics.push_back(std::move(diag));
    }

    std::sort(rep.records.begin(), rep.records.end(),
              [](const DfsRecord& a, const DfsRecord& b) { return tuple_less(a.tuple, b.tuple); });
    std::sort(rep.diagnostics.begin(), rep.diagnostics.end(),
              [](const TupleDiagnostic& a, const TupleDiagnostic& b) {
                  return tuple_less(a.tuple, b.tuple);
              });
    return rep;
}

RestrictedConditions restricted_dfs_conditions(const MasterEquationModel& m,
                                               const Subspace& s, const Tolerances& tol) {
    MasterEquationModel md = ensure_diagonal(m, tol);
    const auto& d = md.diagonal();
    RestrictedConditions out;

    ComplexMatrix gamma = decoherence_operator(md);
    ComplexMatrix hg = commutator(md.h_eff, gamma);
    double jn = 0;
    for (const auto& t : d.terms) {
        ComplexMatrix hj = commutator(md.h_eff, t.jump);
        ComplexMatrix on_basis = hj * s.basis;
        for (std::size_t col = 0; col < s.dim(); ++col)
            out.max_jump_residual = std::max(out.max_jump_residual, vec_norm(on_basis.col(col)));
        jn = std::max(jn, hj.frobenius_norm());
    }
    ComplexMatrix hg_on_basis = hg * s.basis;
    for (std::size_t col = 0; col < s.dim(); ++col)
        out.max_gamma_residual = std::max(out.max_gamma_residual, vec_norm(hg_on_basis.col(col)));

    const double scale = (1.0 + md.h_eff.frobenius_norm()) * (1.0 + max_jump_norm(d));
    out.jumps_commute = out.max_jump_residual <= tol.residual_rel * scale;
    out.gamma_commutes = out.max_gamma_residual <= tol.residual_rel * scale * (1.0 + gamma.frobenius_norm());
    return out;
}

} // namespace qdfs
