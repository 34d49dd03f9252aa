#include "qdfs/model.hpp"

#include <algorithm>
#include <cmath>

#include "qdfs/kernels.hpp"

namespace qdfs {

namespace {

// Multiply the jump by a global phase that makes its largest-magnitude entry
// real positive (ties broken by row-major position, with a 1e-6 band so
// roundoff cannot flip the pivot choice). Jumps are only defined up to a
// phase; fixing one makes diagonalize_gks deterministic.
ComplexMatrix phase_normalize(ComplexMatrix j) {
    const double mx = j.max_abs();
    if (mx == 0.0) return j;
    Complex pivot(0, 0);
    for (std::size_t i = 0; i < j.size() && pivot == Complex(0, 0); ++i)
        if (std::abs(j.data()[i]) >= (1.0 - 1e-6) * mx) pivot = j.data()[i];
    const Complex phase = std::conj(pivot) / std::abs(pivot);
    j *= phase;
    return j;
}

void require_square_dim(const ComplexMatrix& m, std::size_t dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(dim) +
                                "x" + std::to_string(dim) + ", got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

} // namespace

const DiagonalLindblad& MasterEquationModel::diagonal() const {
    if (const auto* d = std::get_if<DiagonalLindblad>(&dissipator)) return *d;
    throw WrongForm("model '" + label + "' carries a GKS dissipator; diagonalize it first");
}

const GksDissipator& MasterEquationModel::gks() const {
    if (const auto* g = std::get_if<GksDissipator>(&dissipator)) return *g;
    throw WrongForm("model '" + label + "' carries a diagonal dissipator");
}

std::size_t MasterEquationModel::term_count() const {
    if (is_diagonal()) return diagonal().terms.size();
    return gks().basis.size();
}

void MasterEquationModel::validate(const Tolerances& tol) const {
    if (dim == 0) throw DimensionMismatch("model '" + label + "': dim must be positive");
    require_square_dim(h_eff, dim, "h_eff");
    if (!h_eff.is_finite()) throw Error("h_eff: non-finite entry");
    if (!h_eff.is_hermitian(tol.herm_rel))
        throw NotHermitian("h_eff is not Hermitian");
    if (is_diagonal()) {
        const auto& d = diagonal();
        if (d.terms.size() > dim * dim - 1)
            throw DimensionMismatch("dissipator: more terms than dim^2 - 1");
        for (std::size_t l = 0; l < d.terms.size(); ++l) {
            require_square_dim(d.terms[l].jump, dim, "jump operator");
            if (!d.terms[l].jump.is_finite()) throw Error("jump operator: non-finite entry");
            if (!(d.terms[l].rate > 0) || !std::isfinite(d.terms[l].rate))
                throw InvalidParameter("rate[" + std::to_string(l) + "] must be positive");
        }
    } else {
        const auto& g = gks();
        if (g.basis.empty()) throw DimensionMismatch("dissipator: empty operator basis");
        if (g.basis.size() > dim * dim - 1)
            throw DimensionMismatch("dissipator: basis larger than dim^2 - 1");
        for (const auto& f : g.basis) {
            require_square_dim(f, dim, "basis operator");
            if (!f.is_finite()) throw Error("basis operator: non-finite entry");
        }
        if (g.coeff.rows() != g.basis.size() || g.coeff.cols() != g.basis.size())
            throw DimensionMismatch("coefficient matrix shape does not match basis size");
        if (!g.coeff.is_hermitian(tol.herm_rel))
            throw NotHermitian("coefficient matrix is not Hermitian");
        // Basis operators must be linearly independent (vectorize and check
        // the smallest singular value).
        ComplexMatrix stacked(dim * dim, g.basis.size());
        for (std::size_t k = 0; k < g.basis.size(); ++k)
            for (std::size_t e = 0; e < dim * dim; ++e)
                stacked(e, k) = g.basis[k].data()[e];
        auto sv = singular_values(stacked);
        if (sv.empty() || sv.back() <= 1e-10 * sv.front())
            throw DimensionMismatch("dissipator: basis operators are linearly dependent");
    }
}

Tolerances effective_tolerances(const MasterEquationModel& m, const Tolerances& base) {
    return m.tol_overrides.apply(base);
}

DiagonalLindblad diagonalize_gks(const GksDissipator& d, const Tolerances& tol) {
    const std::size_t nb = d.basis.size();
    if (d.coeff.rows() != nb || d.coeff.cols() != nb)
        throw DimensionMismatch("diagonalize_gks: coefficient matrix shape mismatch");

    auto pairs = hermitian_eigendecompose(d.coeff, tol.herm_rel * 10 + 1e-14);
    const double anorm = d.coeff.frobenius_norm();
    double tr = d.coeff.trace().real();
    if (tr < 0 && tr > -tol.herm_rel * (1 + anorm)) tr = 0;
    const double floor = tol.rate_rel * tr;

    DiagonalLindblad out;
    const std::size_t n = d.basis.empty() ? 0 : d.basis.front().rows();
    for (const auto& p : pairs) {
        const double lambda = p.value.real();
        if (lambda < -tol.herm_rel * std::max(1.0, anorm) * 100)
            throw NotPsd("diagonalize_gks: coefficient matrix has eigenvalue " +
                         std::to_string(lambda));
        if (lambda <= floor || lambda <= 0) continue;
        for (std::size_t col = 0; col < p.multiplicity(); ++col) {
            ComplexMatrix j(n, n);
            for (std::size_t k = 0; k < nb; ++k) {
                const Complex w = p.vectors(k, col);
                if (w == Complex(0, 0)) continue;
                kernels::axpby(w, d.basis[k].data(), {1, 0}, j.data(), j.size());
            }
            out.terms.push_back({lambda, phase_normalize(std::move(j))});
        }
    }
    return out;
}

MasterEquationModel ensure_diagonal(const MasterEquationModel& m, const Tolerances& tol) {
    if (m.is_diagonal()) return m;
    MasterEquationModel out = m;
    out.dissipator = diagonalize_gks(m.gks(), effective_tolerances(m, tol));
    return out;
}

ComplexMatrix apply_dissipator(const MasterEquationModel& m, const ComplexMatrix& rho) {
    require_square_dim(rho, m.dim, "rho");
    ComplexMatrix out(m.dim, m.dim);
    if (m.is_diagonal()) {
        for (const auto& term : m.diagonal().terms) {
            const ComplexMatrix jr = term.jump * rho;
            // rate * (J rho J^dag - {J^dag J, rho} / 2), assembled as
            // J rho J^dag - (J^dag (J rho) + (rho J^dag) J) / 2.
            ComplexMatrix jrjd = times_adjoint(jr, term.jump);
            ComplexMatrix jdjr = adjoint_times(term.jump, jr);
            ComplexMatrix rjdj = times_adjoint(rho, term.jump) * term.jump;
            kernels::axpby({-0.5, 0}, jdjr.data(), {1, 0}, jrjd.data(), jrjd.size());
            kernels::axpby({-0.5, 0}, rjdj.data(), {1, 0}, jrjd.data(), jrjd.size());
            kernels::axpby({term.rate, 0}, jrjd.data(), {1, 0}, out.data(), out.size());
        }
    } else {
        const auto& g = m.gks();
        const std::size_t nb = g.basis.size();
        // Correlation form, taken literally: sum_kl A_kl (F_k rho F_l^dag
        // - {F_l^dag F_k, rho} / 2). Kept as an independent route so the
        // equivalence with the diagonal form is testable.
        std::vector<ComplexMatrix> frho(nb);
        for (std::size_t k = 0; k < nb; ++k) frho[k] = g.basis[k] * rho;
        for (std::size_t k = 0; k < nb; ++k)
            for (std::size_t l = 0; l < nb; ++l) {
                const Complex a = g.coeff(k, l);
                if (a == Complex(0, 0)) continue;
                ComplexMatrix t = times_adjoint(frho[k], g.basis[l]);
                ComplexMatrix fdf = adjoint_times(g.basis[l], frho[k]);
                ComplexMatrix rfdf = times_adjoint(rho, g.basis[l]) * g.basis[k];
                kernels::axpby({-0.5, 0}, fdf.data(), {1, 0}, t.data(), t.size());
                kernels::axpby({-0.5, 0}, rfdf.data(), {1, 0}, t.data(), t.size());
                kernels::axpby(a, t.data(), {1, 0}, out.data(), out.size());
            }
    }
    return out;
}

ComplexMatrix liouvillian_apply(const MasterEquationModel& m, const ComplexMatrix& rho) {
    ComplexMatrix out = apply_dissipator(m, rho);
    ComplexMatrix comm = commutator(m.h_eff, rho);
    kernels::axpby({0, -1}, comm.data(), {1, 0}, out.data(), out.size());
    return out;
}

ComplexMatrix decoherence_operator(const MasterEquationModel& m) {
    const auto& d = m.diagonal();
    ComplexMatrix gamma(m.dim, m.dim);
    for (const auto& term : d.terms) {
        ComplexMatrix jj = adjoint_times(term.jump, term.jump);
        kernels::axpby({term.rate, 0}, jj.data(), {1, 0}, gamma.data(), gamma.size());
    }
    return gamma;
}

ComplexMatrix evolution_hamiltonian(const MasterEquationModel& m, const EigTuple& c) {
    const auto& d = m.diagonal();
    if (c.size() != d.terms.size())
        throw DimensionMismatch("evolution_hamiltonian: tuple length " +
                                std::to_string(c.size()) + " vs " +
                                std::to_string(d.terms.size()) + " terms");
    ComplexMatrix h = m.h_eff;
    for (std::size_t l = 0; l < d.terms.size(); ++l) {
        // + (i/2) rate (conj(c) J - c J^dag)
        const Complex f = Complex(0, 0.5 * d.terms[l].rate);
        kernels::axpby(f * std::conj(c[l]), d.terms[l].jump.data(), {1, 0}, h.data(), h.size());
        ComplexMatrix jd = d.terms[l].jump.adjoint();
        kernels::axpby(-f * c[l], jd.data(), {1, 0}, h.data(), h.size());
    }
    if (!h.is_hermitian(1e-10))
        throw NotHermitian("evolution_hamiltonian: result failed the Hermiticity check");
    return h.hermitian_part();
}

MasterEquationModel shift_transform(const MasterEquationModel& m, const std::vector<Complex>& b) {
    const auto& d = m.diagonal();
    if (b.size() != d.terms.size())
        throw DimensionMismatch("shift_transform: shift vector length mismatch");
    MasterEquationModel out = m;
    DiagonalLindblad nd = d;
    for (std::size_t l = 0; l < nd.terms.size(); ++l) {
        for (std::size_t i = 0; i < m.dim; ++i) nd.terms[l].jump(i, i) -= b[l];
        const Complex f = Complex(0, 0.5 * d.terms[l].rate);
        kernels::axpby(f * std::conj(b[l]), d.terms[l].jump.data(), {1, 0},
                       out.h_eff.data(), out.h_eff.size());
        ComplexMatrix jd = d.terms[l].jump.adjoint();
        kernels::axpby(-f * b[l], jd.data(), {1, 0}, out.h_eff.data(), out.h_eff.size());
    }
    out.h_eff = out.h_eff.hermitian_part();
    out.dissipator = std::move(nd);
    return out;
}

ComplexMatrix non_hermitian_hamiltonian(const MasterEquationModel& m) {
    ComplexMatrix gamma = decoherence_operator(m);
    ComplexMatrix h = m.h_eff;
    kernels::axpby({0, -0.5}, gamma.data(), {1, 0}, h.data(), h.size());
    return h;
}

} // namespace qdfs
