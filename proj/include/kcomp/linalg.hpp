#pragma once

#include <complex>
#include <vector>

#include "kcomp/matrix.hpp"

namespace kcomp {

/// LU factorization with partial pivoting (Doolittle). `lu` stores L below the
/// diagonal (unit diagonal implied) and U on and above it; `perm` is the row
/// permutation, `parity` its sign.
struct LuFactors {
    Matrix lu;
    std::vector<int> perm;
    int parity = 1;
    bool singular = false;

    double determinant() const;
};

LuFactors lu_factor(const Matrix& a);
std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b);

double determinant(const Matrix& a);
/// Inverse via LU; throws std::domain_error on singular input.
Matrix inverse(const Matrix& a);
/// kappa_inf(A) = ‖A‖∞ ‖A⁻¹‖∞; +inf when singular.
double condition_estimate_inf(const Matrix& a);

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotation sweeps.
/// Eigenvalues are returned in descending order; `vectors` holds the matching
/// orthonormal eigenvectors as columns.
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;
};

SymmetricEigen symmetric_eigen(const Matrix& a, double tol = 1e-12);
std::vector<double> symmetric_eigenvalues(const Matrix& a, double tol = 1e-12);

/// Eigenvalues of a general real square matrix: balancing, Householder
/// reduction to Hessenberg form, then Francis double-shift QR. Order is
/// unspecified; complex eigenvalues come in conjugate pairs.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

/// Matrix exponential by scaling-and-squaring with a [6/6] Pade approximant.
Matrix expm(const Matrix& a);

/// Largest singular value via power iteration on AᵀA.
double spectral_norm(const Matrix& a, double tol = 1e-10, int max_iter = 10000);

/// Symmetric positive definite square root via eigendecomposition.
/// Throws std::domain_error if `a` is not symmetric positive definite.
Matrix sqrtm_spd(const Matrix& a);

}  // namespace kcomp
