#include "kcomp/duality.hpp"

#include <cmath>
#include <stdexcept>

#include "kcomp/compounds.hpp"
#include "kcomp/linalg.hpp"
#include "kcomp/lognorms.hpp"

namespace kcomp {

Matrix DualityMatrix::dense() const {
    Matrix u(static_cast<int>(r), static_cast<int>(r));
    for (int j = 0; j < static_cast<int>(r); ++j) u(static_cast<int>(r) - 1 - j, j) = signs[j];
    return u;
}

DualityMatrix build_duality_matrix(int k, int n) {
    if (n < 2 || n > kMaxIndexUniverse || k < 1 || k > n - 1)
        throw std::domain_error("build_duality_matrix: need 1 <= k <= n-1");
    const LexTable& table = lex_table(k, n);
    DualityMatrix u;
    u.k = k;
    u.n = n;
    u.r = table.r;
    u.signs.reserve(static_cast<std::size_t>(table.r));
    for (const IndexSeq& seq : table.seqs) u.signs.push_back(signature(seq));
    return u;
}

Matrix conjugate_by_u(const DualityMatrix& u, const Matrix& b) {
    const int r = static_cast<int>(u.r);
    if (b.rows() != r || b.cols() != r) throw std::domain_error("conjugate_by_u: dimension mismatch");
    Matrix out(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            out(i, j) = u.signs[i] * u.signs[j] * b(r - 1 - i, r - 1 - j);
    return out;
}

Matrix kth_adjugate(const Matrix& a, int k) {
    if (!a.is_square()) throw std::domain_error("kth_adjugate: matrix not square");
    const int n = a.rows();
    const DualityMatrix u = build_duality_matrix(k, n);
    const CompoundMatrix comp = multiplicative_compound(a, n - k);
    return conjugate_by_u(u, comp.mat);
}

double additive_duality_residual(const Matrix& a, int k) {
    if (!a.is_square()) throw std::domain_error("additive_duality_residual: matrix not square");
    const int n = a.rows();
    const DualityMatrix u = build_duality_matrix(k, n);
    const Matrix lhs = additive_compound(a, k).mat.transpose();
    const Matrix rhs = conjugate_by_u(u, additive_compound(a, n - k).mat);
    const double tr = a.trace();
    double residual = 0.0;
    for (int i = 0; i < lhs.rows(); ++i)
        for (int j = 0; j < lhs.cols(); ++j) {
            const double target = i == j ? tr : 0.0;
            residual = std::max(residual, std::abs(lhs(i, j) + rhs(i, j) - target));
        }
    return residual;
}

double commutation_residual(const Matrix& a, int k) {
    if (!a.is_square()) throw std::domain_error("commutation_residual: matrix not square");
    const int n = a.rows();
    const DualityMatrix u = build_duality_matrix(k, n);
    const Matrix x = additive_compound(a, k).mat.transpose();
    const Matrix y = conjugate_by_u(u, additive_compound(a, n - k).mat);
    return max_abs_diff(x * y, y * x);
}

Matrix exp_compound_via_duality(const Matrix& a, int k) {
    if (!a.is_square()) throw std::domain_error("exp_compound_via_duality: matrix not square");
    const int n = a.rows();
    const DualityMatrix u = build_duality_matrix(k, n);
    const Matrix exp_neg = expm(-a);
    const CompoundMatrix comp = multiplicative_compound(exp_neg, n - k);
    Matrix rhs = conjugate_by_u(u, comp.mat);
    rhs *= std::exp(a.trace());
    return rhs;
}

std::pair<double, double> mu_duality_equality(const Matrix& a, int k, LogNormP p) {
    if (!a.is_square()) throw std::domain_error("mu_duality_equality: matrix not square");
    const int n = a.rows();
    const DualityMatrix u = build_duality_matrix(k, n);
    const double lhs = mu(additive_compound(a, k).mat, p);
    // μ_{Uᵀ}(B) = μ(Uᵀ B (Uᵀ)⁻¹) = μ(Uᵀ B U) since U is orthogonal
    const Matrix b = -(additive_compound(a, n - k).mat.transpose());
    const double rhs = a.trace() + mu(conjugate_by_u(u, b), p);
    return {lhs, rhs};
}

}  // namespace kcomp
