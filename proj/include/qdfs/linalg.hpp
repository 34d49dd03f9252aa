#pragma once

#include <vector>

#include "qdfs/complex_matrix.hpp"

namespace qdfs {

// One (possibly degenerate) eigenvalue with an orthonormal basis of its
// geometric eigenspace. vectors is n x k with the basis as columns.
struct EigenPair {
    Complex value;
    ComplexMatrix vectors;

    std::size_t multiplicity() const { return vectors.cols(); }
};

// Subspace of C^n held as an n x k matrix with orthonormal columns.
struct Subspace {
    std::size_t ambient_dim = 0;
    ComplexMatrix basis; // ambient_dim x dim()

    std::size_t dim() const { return basis.cols(); }
    static Subspace full(std::size_t n);
    static Subspace empty(std::size_t n);
    // max |B^dag B - I|
    double orthonormality_defect() const;
    // ||(1 - P) v|| for unit P the projector onto this subspace.
    double projection_residual(const ComplexMatrix& v) const;
    bool contains(const ComplexMatrix& v, double tol) const;
};

// Eigendecomposition of a Hermitian matrix with eigenvalues within
// tol * (1 + ||m||_F) of each other merged into one EigenPair. Pairs are
// sorted by ascending eigenvalue. Throws NotSquare / NotHermitian (the
// Hermiticity check is ||m - m^dag||_F <= tol * max(1, ||m||_F)).
std::vector<EigenPair> hermitian_eigendecompose(const ComplexMatrix& m, double tol);

// Geometric eigenspaces of an arbitrary square matrix: eigenvalues are
// clustered with radius tol_cluster * (1 + ||m||_F), and each cluster's
// vectors are an orthonormal basis of ker(m - c), computed by SVD with
// relative rank cut tol_rank. Defective eigenvalues therefore yield fewer
// vectors than their algebraic multiplicity. Sorted by (Re c, Im c).
std::vector<EigenPair> geometric_eigenspaces(const ComplexMatrix& m,
                                             double tol_cluster, double tol_rank);

// Orthonormal basis of { v : ||m v|| <= tol_rank * ||m||_F * ||v|| } for a
// rectangular m, via SVD.
Subspace nullspace(const ComplexMatrix& m, double tol_rank);

// Same with an absolute singular-value cutoff. The eigenspace extraction
// uses this with the clustering radius folded in: after replacing a cluster
// of nearby eigenvalues by their mean c, members sit up to the radius away
// from c, so ker(m - c) must be cut at least that loosely.
Subspace nullspace_cutoff(const ComplexMatrix& m, double cutoff);

// Eigenvalues only (no clustering, arbitrary order).
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

// Merge complex values lying within `radius` of a common mean; returns the
// cluster means sorted by (Re, Im).
std::vector<Complex> cluster_complex(const std::vector<Complex>& vals, double radius);

// exp(m) by scaling and squaring with a degree-13 Pade approximant.
// LAPACK-free (uses an internal LU solve), so it is safe to call from
// parallel regions.
ComplexMatrix matrix_exponential(const ComplexMatrix& m);

// Orthonormal basis of the span of the given vectors (each n x 1); linearly
// dependent inputs are dropped at relative tolerance tol_rank.
Subspace orthonormalize(const std::vector<ComplexMatrix>& vectors, double tol_rank);
// Same on the columns of an n x k matrix.
Subspace orthonormalize_cols(const ComplexMatrix& cols, double tol_rank);

// Singular values of m, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

// Solve a x = b by LU with partial pivoting (square a, multiple right-hand
// sides). Used by matrix_exponential; exposed for tests.
ComplexMatrix lu_solve(ComplexMatrix a, ComplexMatrix b);

} // namespace qdfs
