#pragma once

#include <cstdint>
#include <vector>

#include "kcomp/matrix.hpp"

namespace kcomp {

/// Indices are capped at n ≤ 30 so every C(n,k) fits comfortably in 64 bits.
inline constexpr int kMaxIndexUniverse = 30;
/// Largest table/compound dimension this library will materialize.
inline constexpr std::int64_t kMaxMaterializedSize = 1'000'000;

std::int64_t binomial(int n, int k);

/// Strictly increasing sequence of k integers from {1,…,n}; an element of
/// Q(k,n). Entries are 1-based, following the usual minor-index convention;
/// conversion to 0-based happens at module boundaries.
struct IndexSeq {
    std::vector<int> entries;
    int n = 0;

    int k() const { return static_cast<int>(entries.size()); }
    bool operator==(const IndexSeq& other) const { return n == other.n && entries == other.entries; }
};

/// Throws std::domain_error unless `seq` is valid (strictly increasing,
/// within {1..n}, 1 ≤ k ≤ n ≤ 30).
void validate(const IndexSeq& seq);

/// All of Q(k,n) in lexicographic order.
struct LexTable {
    int k = 0;
    int n = 0;
    std::int64_t r = 0;  // C(n,k)
    std::vector<IndexSeq> seqs;
};

/// Builds Q(k,n). Refuses C(n,k) > 10⁶ (use for_each_sequence to stream
/// larger index sets instead of materializing them).
LexTable generate_sequences(int k, int n);

/// Memoized shared table for repeat lookups; thread-safe.
const LexTable& lex_table(int k, int n);

/// Calls f(seq) for every element of Q(k,n) in lexicographic order without
/// materializing the table. The IndexSeq reference is reused between calls.
template <typename F>
void for_each_sequence(int k, int n, F&& f) {
    IndexSeq seq;
    seq.n = n;
    seq.entries.resize(k);
    for (int i = 0; i < k; ++i) seq.entries[i] = i + 1;
    validate(seq);
    while (true) {
        f(static_cast<const IndexSeq&>(seq));
        // advance to the lexicographic successor
        int i = k - 1;
        while (i >= 0 && seq.entries[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++seq.entries[i];
        for (int j = i + 1; j < k; ++j) seq.entries[j] = seq.entries[j - 1] + 1;
    }
}

/// 1-based lexicographic rank within Q(k,n); rank(unrank(i,k,n)) = i.
std::int64_t rank(const IndexSeq& seq);
IndexSeq unrank(std::int64_t i, int k, int n);

/// s(α) = (−1)^(α₁+…+α_k).
int signature(const IndexSeq& seq);

/// {1..n}\α in increasing order; requires k < n.
IndexSeq complement(const IndexSeq& seq);

}  // namespace kcomp
