#include "kcomp/compounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kcomp/linalg.hpp"

namespace kcomp {

namespace {

void check_compound_size(int n, int m, int k) {
    if (k < 1 || k > std::min(n, m)) throw std::domain_error("compound: k out of range");
    if (n > kMaxIndexUniverse || m > kMaxIndexUniverse)
        throw std::domain_error("compound: dimension exceeds the n <= " + std::to_string(kMaxIndexUniverse) + " cap");
    if (binomial(n, k) > kMaxMaterializedSize || binomial(m, k) > kMaxMaterializedSize)
        throw std::domain_error("compound: C(n,k) exceeds the materialization limit");
}

}  // namespace

double minor_det(const Matrix& a, const IndexSeq& row_idx, const IndexSeq& col_idx) {
    validate(row_idx);
    validate(col_idx);
    if (row_idx.k() != col_idx.k()) throw std::domain_error("minor_det: index length mismatch");
    if (row_idx.n != a.rows() || col_idx.n != a.cols())
        throw std::domain_error("minor_det: index universe does not match matrix shape");
    const int k = row_idx.k();
    const auto& ri = row_idx.entries;
    const auto& ci = col_idx.entries;
    auto e = [&](int i, int j) { return a(ri[i] - 1, ci[j] - 1); };
    switch (k) {
        case 1:
            return e(0, 0);
        case 2:
            return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
        case 3:
            return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
                   e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                   e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        default: {
            Matrix sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = e(i, j);
            return determinant(sub);
        }
    }
}

CompoundMatrix multiplicative_compound(const Matrix& a, int k) {
    check_compound_size(a.rows(), a.cols(), k);
    const LexTable& rows = lex_table(k, a.rows());
    const LexTable& cols = a.cols() == a.rows() ? rows : lex_table(k, a.cols());

    CompoundMatrix out;
    out.base_rows = a.rows();
    out.base_cols = a.cols();
    out.k = k;
    out.kind = CompoundKind::multiplicative;
    out.mat = Matrix(static_cast<int>(rows.r), static_cast<int>(cols.r));
    for (int i = 0; i < static_cast<int>(rows.r); ++i)
        for (int j = 0; j < static_cast<int>(cols.r); ++j)
            out.mat(i, j) = minor_det(a, rows.seqs[i], cols.seqs[j]);
    return out;
}

CompoundMatrix additive_compound(const Matrix& a, int k) {
    if (!a.is_square()) throw std::domain_error("additive_compound: matrix not square");
    const int n = a.rows();
    check_compound_size(n, n, k);
    const LexTable& table = lex_table(k, n);
    const int r = static_cast<int>(table.r);

    CompoundMatrix out;
    out.base_rows = out.base_cols = n;
    out.k = k;
    out.kind = CompoundKind::additive;
    out.mat = Matrix(r, r);

    std::vector<bool> in_alpha(n + 1);
    std::vector<int> beta(k);
    for (int row = 0; row < r; ++row) {
        const auto& alpha = table.seqs[row].entries;
        in_alpha.assign(n + 1, false);
        double diag = 0.0;
        for (int e : alpha) {
            in_alpha[e] = true;
            diag += a(e - 1, e - 1);
        }
        out.mat(row, row) = diag;
        // off-diagonal nonzeros: swap one index i_ℓ ∈ α for j ∉ α
        for (int ell = 0; ell < k; ++ell) {
            const int i_ell = alpha[ell];
            for (int j = 1; j <= n; ++j) {
                if (in_alpha[j]) continue;
                // β = sorted(α with i_ℓ replaced by j); m = position of j in β
                int bpos = 0;
                for (int t = 0; t < k; ++t)
                    if (t != ell) beta[bpos++] = alpha[t];
                int insert_at = 0;
                while (insert_at < k - 1 && beta[insert_at] < j) ++insert_at;
                for (int t = k - 1; t > insert_at; --t) beta[t] = beta[t - 1];
                beta[insert_at] = j;
                const int m = insert_at;
                IndexSeq bseq;
                bseq.n = n;
                bseq.entries.assign(beta.begin(), beta.end());
                const int col = static_cast<int>(rank(bseq)) - 1;
                const double sign = ((ell + m) % 2 == 0) ? 1.0 : -1.0;  // (−1)^(ℓ+m), positions 1-based
                out.mat(row, col) = sign * a(i_ell - 1, j - 1);
            }
        }
    }
    return out;
}

double parallelotope_volume(const std::vector<std::vector<double>>& vectors) {
    if (vectors.empty()) throw std::domain_error("parallelotope_volume: no vectors");
    const int n = static_cast<int>(vectors.front().size());
    const int k = static_cast<int>(vectors.size());
    if (k > n) throw std::domain_error("parallelotope_volume: more vectors than dimensions");
    Matrix stacked(n, k);
    for (int j = 0; j < k; ++j) {
        if (static_cast<int>(vectors[j].size()) != n)
            throw std::domain_error("parallelotope_volume: vector dimension mismatch");
        for (int i = 0; i < n; ++i) stacked(i, j) = vectors[j][i];
    }
    const CompoundMatrix comp = multiplicative_compound(stacked, k);
    double sum = 0.0;
    for (int i = 0; i < comp.mat.rows(); ++i) sum += comp.mat(i, 0) * comp.mat(i, 0);
    return std::sqrt(sum);
}

Matrix apply_similarity_compound(const Matrix& t, const Matrix& a, int k) {
    if (!t.is_square() || !a.is_square() || t.rows() != a.rows())
        throw std::domain_error("apply_similarity_compound: shape mismatch");
    const double cond = condition_estimate_inf(t);
    if (!std::isfinite(cond) || cond > 1e12)
        throw std::domain_error("apply_similarity_compound: scaling matrix is singular or near-singular");
    const Matrix transformed = t * a * inverse(t);
    return additive_compound(transformed, k).mat;
}

}  // namespace kcomp
