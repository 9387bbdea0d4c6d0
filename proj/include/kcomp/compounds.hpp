#pragma once

#include <vector>

#include "kcomp/lexidx.hpp"
#include "kcomp/matrix.hpp"

namespace kcomp {

/// Minor A(α|β): determinant of the submatrix with rows α and columns β.
/// Closed forms for k ≤ 3, LU with partial pivoting above that.
double minor_det(const Matrix& a, const IndexSeq& row_idx, const IndexSeq& col_idx);

enum class CompoundKind { multiplicative, additive };

struct CompoundMatrix {
    int base_rows = 0;
    int base_cols = 0;
    int k = 0;
    CompoundKind kind = CompoundKind::multiplicative;
    Matrix mat;  // C(base_rows,k) × C(base_cols,k)
};

/// A^(k): all k-minors of A in lexicographic order. A^(1) = A; for square A,
/// A^(n) is the 1×1 matrix [det A].
CompoundMatrix multiplicative_compound(const Matrix& a, int k);

/// A^[k] built from the entrywise formula: entry (α,β) is Σ_{i∈α} a_ii on the
/// diagonal, (−1)^(ℓ+m) a_{i_ℓ j_m} when α and β differ in exactly one index,
/// and 0 otherwise.
CompoundMatrix additive_compound(const Matrix& a, int k);

/// Volume of the parallelotope spanned by the given vectors: the L2 norm of
/// the k-multiplicative compound of the stacked column matrix.
double parallelotope_volume(const std::vector<std::vector<double>>& vectors);

/// (T A T⁻¹)^[k]; requires T invertible with a finite condition estimate.
Matrix apply_similarity_compound(const Matrix& t, const Matrix& a, int k);

}  // namespace kcomp
