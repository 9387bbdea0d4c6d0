#include "kcomp/lexidx.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace kcomp {

std::int64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

void validate(const IndexSeq& seq) {
    if (seq.n < 1 || seq.n > kMaxIndexUniverse)
        throw std::domain_error("IndexSeq: n must be in 1.." + std::to_string(kMaxIndexUniverse));
    const int k = seq.k();
    if (k < 1 || k > seq.n) throw std::domain_error("IndexSeq: need 1 <= k <= n");
    int prev = 0;
    for (int e : seq.entries) {
        if (e <= prev || e > seq.n)
            throw std::domain_error("IndexSeq: entries must be strictly increasing in 1..n");
        prev = e;
    }
}

LexTable generate_sequences(int k, int n) {
    if (n < 1 || n > kMaxIndexUniverse || k < 1 || k > n)
        throw std::domain_error("generate_sequences: need 1 <= k <= n <= " + std::to_string(kMaxIndexUniverse));
    LexTable table;
    table.k = k;
    table.n = n;
    table.r = binomial(n, k);
    if (table.r > kMaxMaterializedSize)
        throw std::domain_error("generate_sequences: C(n,k) exceeds the materialization limit");
    table.seqs.reserve(static_cast<std::size_t>(table.r));
    for_each_sequence(k, n, [&](const IndexSeq& seq) { table.seqs.push_back(seq); });
    return table;
}

const LexTable& lex_table(int k, int n) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<const LexTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{k, n}];
    if (!slot) slot = std::make_unique<const LexTable>(generate_sequences(k, n));
    return *slot;
}

std::int64_t rank(const IndexSeq& seq) {
    validate(seq);
    const int k = seq.k();
    const int n = seq.n;
    // combinatorial number system: count sequences lexicographically before seq
    std::int64_t before = 0;
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < seq.entries[i]; ++v) before += binomial(n - v, k - 1 - i);
        prev = seq.entries[i];
    }
    return before + 1;
}

IndexSeq unrank(std::int64_t i, int k, int n) {
    if (n < 1 || n > kMaxIndexUniverse || k < 1 || k > n)
        throw std::domain_error("unrank: need 1 <= k <= n <= " + std::to_string(kMaxIndexUniverse));
    if (i < 1 || i > binomial(n, k)) throw std::domain_error("unrank: rank out of range");
    IndexSeq seq;
    seq.n = n;
    seq.entries.resize(k);
    std::int64_t remaining = i - 1;
    int v = 1;
    for (int pos = 0; pos < k; ++pos) {
        while (true) {
            const std::int64_t block = binomial(n - v, k - 1 - pos);
            if (remaining < block) break;
            remaining -= block;
            ++v;
        }
        seq.entries[pos] = v++;
    }
    return seq;
}

int signature(const IndexSeq& seq) {
    validate(seq);
    int sum = 0;
    for (int e : seq.entries) sum += e;
    return (sum % 2 == 0) ? 1 : -1;
}

IndexSeq complement(const IndexSeq& seq) {
    validate(seq);
    if (seq.k() == seq.n) throw std::domain_error("complement: empty complement for k = n");
    IndexSeq out;
    out.n = seq.n;
    out.entries.reserve(seq.n - seq.k());
    std::size_t pos = 0;
    for (int v = 1; v <= seq.n; ++v) {
        if (pos < seq.entries.size() && seq.entries[pos] == v) {
            ++pos;
        } else {
            out.entries.push_back(v);
        }
    }
    return out;
}

}  // namespace kcomp
