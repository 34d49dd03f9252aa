#include "qdfs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <lapacke.h>

namespace qdfs {

namespace {

lapack_complex_double* lp(Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); }

void check_lapack(int info, const char* routine) {
    if (info != 0)
        throw Error(std::string(routine) + " failed with info=" + std::to_string(info));
}

// Greedy clustering of complex values: walk them in (Re, Im) order and merge
// each into the first existing cluster whose mean is within `radius`.
// Returns cluster index per input position.
std::vector<std::size_t> cluster_values(const std::vector<Complex>& vals, double radius,
                                        std::vector<Complex>& means) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (vals[a].real() != vals[b].real()) return vals[a].real() < vals[b].real();
        return vals[a].imag() < vals[b].imag();
    });
    std::vector<std::size_t> assign(vals.size());
    std::vector<std::vector<std::size_t>> members;
    means.clear();
    for (std::size_t idx : order) {
        bool placed = false;
        for (std::size_t c = 0; c < means.size(); ++c) {
            if (std::abs(vals[idx] - means[c]) <= radius) {
                members[c].push_back(idx);
                Complex sum(0, 0);
                for (std::size_t j : members[c]) sum += vals[j];
                means[c] = sum / static_cast<double>(members[c].size());
                assign[idx] = c;
                placed = true;
                break;
            }
        }
        if (!placed) {
            means.push_back(vals[idx]);
            members.push_back({idx});
            assign[idx] = means.size() - 1;
        }
    }
    return assign;
}

} // namespace

Subspace Subspace::full(std::size_t n) { return {n, ComplexMatrix::identity(n)}; }

Subspace Subspace::empty(std::size_t n) { return {n, ComplexMatrix(n, 0)}; }

double Subspace::orthonormality_defect() const {
    ComplexMatrix g = adjoint_times(basis, basis);
    return max_abs_diff(g, ComplexMatrix::identity(dim()));
}

double Subspace::projection_residual(const ComplexMatrix& v) const {
    if (v.rows() != ambient_dim || v.cols() != 1)
        throw DimensionMismatch("projection_residual: vector shape mismatch");
    if (dim() == 0) return vec_norm(v);
    ComplexMatrix coeffs = adjoint_times(basis, v);
    ComplexMatrix res = v - basis * coeffs;
    return vec_norm(res);
}

bool Subspace::contains(const ComplexMatrix& v, double tol) const {
    return projection_residual(v) <= tol * std::max(1.0, vec_norm(v));
}

std::vector<EigenPair> hermitian_eigendecompose(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols())
        throw NotSquare("hermitian_eigendecompose: matrix is " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()));
    const std::size_t n = m.rows();
    ComplexMatrix dev = m - m.adjoint();
    if (dev.frobenius_norm() > tol * std::max(1.0, m.frobenius_norm()))
        throw NotHermitian("hermitian_eigendecompose: ||m - m^dag|| = " +
                           std::to_string(dev.frobenius_norm()));
    if (n == 0) return {};

    ComplexMatrix a = m.hermitian_part();
    std::vector<double> w(n);
    check_lapack(LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                                lp(a.data()), static_cast<lapack_int>(n), w.data()),
                 "zheevd");

    const double radius = tol * (1.0 + m.frobenius_norm());
    std::vector<EigenPair> out;
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        // Eigenvalues arrive ascending; chain-merge neighbours within radius.
        while (stop < n && w[stop] - w[stop - 1] <= radius) ++stop;
        double mean = 0;
        for (std::size_t i = start; i < stop; ++i) mean += w[i];
        mean /= static_cast<double>(stop - start);
        ComplexMatrix vecs(n, stop - start);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = start; j < stop; ++j)
                vecs(i, j - start) = a(i, j); // eigenvectors are columns of a
        out.push_back({Complex(mean, 0), std::move(vecs)});
        start = stop;
    }
    return out;
}

std::vector<EigenPair> geometric_eigenspaces(const ComplexMatrix& m,
                                             double tol_cluster, double tol_rank) {
    if (m.rows() != m.cols())
        throw NotSquare("geometric_eigenspaces: matrix is " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()));
    const std::size_t n = m.rows();
    if (n == 0) return {};

    ComplexMatrix a = m;
    std::vector<Complex> vals(n);
    check_lapack(LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N', static_cast<lapack_int>(n),
                               lp(a.data()), static_cast<lapack_int>(n), lp(vals.data()),
                               nullptr, static_cast<lapack_int>(n),
                               nullptr, static_cast<lapack_int>(n)),
                 "zgeev");

    const double radius = tol_cluster * (1.0 + m.frobenius_norm());
    std::vector<Complex> means = cluster_complex(vals, radius);

    std::vector<EigenPair> out;
    for (Complex c : means) {
        ComplexMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= c;
        const double cutoff = std::max(tol_rank * shifted.frobenius_norm(), radius);
        Subspace ker = nullspace_cutoff(shifted, cutoff);
        if (ker.dim() > 0) out.push_back({c, ker.basis});
    }
    return out;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("eigenvalues: not square");
    const std::size_t n = m.rows();
    if (n == 0) return {};
    ComplexMatrix a = m;
    std::vector<Complex> vals(n);
    check_lapack(LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N', static_cast<lapack_int>(n),
                               lp(a.data()), static_cast<lapack_int>(n), lp(vals.data()),
                               nullptr, static_cast<lapack_int>(n),
                               nullptr, static_cast<lapack_int>(n)),
                 "zgeev");
    return vals;
}

std::vector<Complex> cluster_complex(const std::vector<Complex>& vals, double radius) {
    std::vector<Complex> means;
    cluster_values(vals, radius, means);
    std::sort(means.begin(), means.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return means;
}

Subspace nullspace_cutoff(const ComplexMatrix& m, double cutoff) {
    const std::size_t r = m.rows(), c = m.cols();
    if (c == 0) return Subspace::empty(0);
    if (r == 0) return Subspace::full(c);

    ComplexMatrix a = m;
    const std::size_t k = std::min(r, c);
    std::vector<double> sv(k);
    ComplexMatrix u(r, r), vt(c, c);
    check_lapack(LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'A', static_cast<lapack_int>(r),
                                static_cast<lapack_int>(c), lp(a.data()),
                                static_cast<lapack_int>(c), sv.data(), lp(u.data()),
                                static_cast<lapack_int>(r), lp(vt.data()),
                                static_cast<lapack_int>(c)),
                 "zgesdd");

    std::size_t rank = 0;
    while (rank < k && sv[rank] > cutoff) ++rank;

    ComplexMatrix basis(c, c - rank);
    for (std::size_t t = rank; t < c; ++t)
        for (std::size_t i = 0; i < c; ++i)
            basis(i, t - rank) = std::conj(vt(t, i)); // rows of V^dag -> columns of V
    return {c, std::move(basis)};
}

Subspace nullspace(const ComplexMatrix& m, double tol_rank) {
    return nullspace_cutoff(m, tol_rank * m.frobenius_norm());
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    const std::size_t k = std::min(r, c);
    if (k == 0) return {};
    ComplexMatrix a = m;
    std::vector<double> sv(k);
    check_lapack(LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'N', static_cast<lapack_int>(r),
                                static_cast<lapack_int>(c), lp(a.data()),
                                static_cast<lapack_int>(c), sv.data(), nullptr,
                                static_cast<lapack_int>(r), nullptr,
                                static_cast<lapack_int>(c)),
                 "zgesdd(N)");
    return sv;
}

Subspace orthonormalize_cols(const ComplexMatrix& cols, double tol_rank) {
    const std::size_t n = cols.rows(), k = cols.cols();
    if (k == 0) return Subspace::empty(n);

    ComplexMatrix a = cols;
    const std::size_t kk = std::min(n, k);
    std::vector<double> sv(kk);
    ComplexMatrix u(n, n), vt(k, k);
    check_lapack(LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'A', static_cast<lapack_int>(n),
                                static_cast<lapack_int>(k), lp(a.data()),
                                static_cast<lapack_int>(k), sv.data(), lp(u.data()),
                                static_cast<lapack_int>(n), lp(vt.data()),
                                static_cast<lapack_int>(k)),
                 "zgesdd");

    const double cutoff = (kk > 0 ? sv[0] : 0.0) * tol_rank;
    std::size_t rank = 0;
    while (rank < kk && sv[rank] > cutoff && sv[rank] > 0.0) ++rank;

    ComplexMatrix basis(n, rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            basis(i, j) = u(i, j);
    return {n, std::move(basis)};
}

Subspace orthonormalize(const std::vector<ComplexMatrix>& vectors, double tol_rank) {
    if (vectors.empty()) return Subspace::empty(0);
    const std::size_t n = vectors.front().rows();
    ComplexMatrix cols(n, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].rows() != n || vectors[j].cols() != 1)
            throw DimensionMismatch("orthonormalize: inputs must be equal-length column vectors");
        cols.set_col(j, vectors[j]);
    }
    return orthonormalize_cols(cols, tol_rank);
}

ComplexMatrix lu_solve(ComplexMatrix a, ComplexMatrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw NotSquare("lu_solve: coefficient matrix not square");
    if (b.rows() != n) throw DimensionMismatch("lu_solve: right-hand side rows mismatch");

    std::vector<std::size_t> piv(n);
    std::iota(piv.begin(), piv.end(), std::size_t{0});
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        double bestmag = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            double mag = std::abs(a(i, col));
            if (mag > bestmag) { best = i; bestmag = mag; }
        }
        if (bestmag == 0.0) throw Error("lu_solve: singular matrix");
        if (best != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(best, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(best, j));
        }
        const Complex pivot = a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const Complex f = a(i, col) / pivot;
            if (f == Complex(0, 0)) continue;
            a(i, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(col, j);
        }
    }
    // Back substitution.
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = b(ii, j);
            for (std::size_t p = ii + 1; p < n; ++p) s -= a(ii, p) * b(p, j);
            b(ii, j) = s / a(ii, ii);
        }
    }
    return b;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("matrix_exponential: not square");
    const std::size_t n = m.rows();
    if (n == 0) return m;

    // 1-norm (max column sum), the quantity the Pade error bound is stated in.
    double norm1 = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(m(i, j));
        norm1 = std::max(norm1, s);
    }

    constexpr double theta13 = 5.371920351148152;
    int squarings = 0;
    ComplexMatrix a = m;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        a *= Complex(std::ldexp(1.0, -squarings), 0);
    }

    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0, 670442572800.0,
        33522128640.0, 1323241920.0, 40840800.0, 960960.0, 16380.0, 182.0, 1.0};

    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a2 * a4;

    ComplexMatrix u_inner = a6 * b[13] + a4 * b[11] + a2 * b[9];
    ComplexMatrix u = a * (a6 * u_inner + a6 * b[7] + a4 * b[5] + a2 * b[3] + eye * b[1]);
    ComplexMatrix v_inner = a6 * b[12] + a4 * b[10] + a2 * b[8];
    ComplexMatrix v = a6 * v_inner + a6 * b[6] + a4 * b[4] + a2 * b[2] + eye * b[0];

    ComplexMatrix r = lu_solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

} // namespace qdfs
