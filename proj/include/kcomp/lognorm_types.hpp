#pragma once

#include <optional>

#include "kcomp/matrix.hpp"

namespace kcomp {

/// The three norms with closed-form log norms.
enum class LogNormP { one, two, inf };

/// Conjugate exponent: 1 ↔ ∞, 2 ↔ 2.
LogNormP dual_exponent(LogNormP p);

const char* to_string(LogNormP p);

/// Choice of p plus an optional invertible scaling H, giving the weighted
/// log norm μ_H(A) = μ(H A H⁻¹).
struct LogNormSpec {
    LogNormP p = LogNormP::two;
    std::optional<Matrix> scaling;
};

/// Parameters of the k-shifted log norm τ_{p,k}(A) = tr(A) + (n−k)·μ_{q,T}(−A)
/// with q conjugate to p. T defaults to identity; it pairs with the T^(k)
/// weight on the compound side of the bound.
struct TauSpec {
    LogNormP p = LogNormP::two;
    int k = 1;
    std::optional<Matrix> scaling;
};

}  // namespace kcomp
