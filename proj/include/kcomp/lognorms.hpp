#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kcomp/lognorm_types.hpp"
#include "kcomp/matrix.hpp"

namespace kcomp {

/// Log norm (matrix measure) μ_p with the usual closed forms:
///   μ₁ = max over columns j of (a_jj + Σ_{i≠j}|a_ij|)
///   μ₂ = largest eigenvalue of (A+Aᵀ)/2
///   μ∞ = max over rows i of (a_ii + Σ_{j≠i}|a_ij|)
double mu(const Matrix& a, LogNormP p);
/// Weighted variant μ_H(A) = μ(H A H⁻¹) when spec.scaling is present.
double mu(const Matrix& a, const LogNormSpec& spec);

/// μ_p(A^[k]) without forming the compound:
///   p=2: sum of the k largest eigenvalues of the symmetric part;
///   p=1/∞: max over α ∈ Q(k,n) of Σ_{i∈α}(a_ii + Σ_{j∉α}|a_ji| or |a_ij|),
/// streaming over Q(k,n).
double mu_compound_direct(const Matrix& a, int k, LogNormP p);

/// τ_{p,k}(A) = tr(A) + (n−k)·μ_{q,T}(−A), q conjugate to p.
double tau(const Matrix& a, const TauSpec& spec);

/// Both sides of μ_{p,T^(k)}(A^[k]) ≤ τ_{p,k}(A): the left evaluated the
/// expensive way (explicit compounds of A and T), the right from tau().
/// Returns (mu_val, tau_val).
std::pair<double, double> tau_upper_bounds_mu(const Matrix& a, const TauSpec& spec);

/// The sequence μ_{p,T^(k)}(A^[k])/k for k = 1..n; non-increasing in k.
std::vector<double> normalized_mu_monotone(const Matrix& a, LogNormP p,
                                           const std::optional<Matrix>& scaling = std::nullopt);

/// Induced matrix norm ‖A‖_p (p ∈ {1,2,∞}; the 2-norm is the largest
/// singular value via power iteration).
double induced_norm(const Matrix& a, LogNormP p);
/// ‖T A T⁻¹‖_p.
double scaled_induced_norm(const Matrix& a, LogNormP p, const std::optional<Matrix>& scaling);

}  // namespace kcomp
