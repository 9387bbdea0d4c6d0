#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kcomp/lexidx.hpp"
#include "kcomp/lognorm_types.hpp"
#include "kcomp/matrix.hpp"

namespace kcomp {

/// The signed anti-diagonal orthogonal matrix U(k,n): u_{ij} = s(α^j) when
/// i+j = r+1 and 0 otherwise, where α^1,…,α^r enumerate Q(k,n). Stored as the
/// sign vector only; UᵀU = UUᵀ = I_r.
struct DualityMatrix {
    int k = 0;
    int n = 0;
    std::int64_t r = 0;
    std::vector<int> signs;  // signs[j] = s(α^{j+1}), ±1

    Matrix dense() const;
};

/// Requires 1 ≤ k ≤ n−1 (U pairs the k- and (n−k)-compounds).
DualityMatrix build_duality_matrix(int k, int n);

/// UᵀBU evaluated as an index/sign permutation:
/// (UᵀBU)_{ij} = s(α^i) s(α^j) b_{r+1−i, r+1−j}. Never forms the product.
Matrix conjugate_by_u(const DualityMatrix& u, const Matrix& b);

/// UᵀA^(n−k)U, the adjugate of (A^(k))ᵀ: (A^(k))ᵀ · result = det(A)·I_r.
Matrix kth_adjugate(const Matrix& a, int k);

/// Max-abs residual of (A^[k])ᵀ + UᵀA^[n−k]U − tr(A)·I_r (zero in exact
/// arithmetic).
double additive_duality_residual(const Matrix& a, int k);

/// ‖XY − YX‖ (max-abs) for X = (A^[k])ᵀ, Y = UᵀA^[n−k]U; the two always
/// commute.
double commutation_residual(const Matrix& a, int k);

/// exp(tr A) · Uᵀ(exp(−A))^(n−k)U, which equals ((exp A)^(k))ᵀ.
Matrix exp_compound_via_duality(const Matrix& a, int k);

/// Both sides of μ(A^[k]) = tr(A) + μ_{Uᵀ}(−(A^[n−k])ᵀ) for the given p;
/// returns (lhs, rhs).
std::pair<double, double> mu_duality_equality(const Matrix& a, int k, LogNormP p);

}  // namespace kcomp
