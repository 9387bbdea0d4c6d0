#include "kcomp/lognorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcomp/compounds.hpp"
#include "kcomp/lexidx.hpp"
#include "kcomp/linalg.hpp"

namespace kcomp {

LogNormP dual_exponent(LogNormP p) {
    switch (p) {
        case LogNormP::one: return LogNormP::inf;
        case LogNormP::two: return LogNormP::two;
        case LogNormP::inf: return LogNormP::one;
    }
    throw std::domain_error("dual_exponent: invalid p");
}

const char* to_string(LogNormP p) {
    switch (p) {
        case LogNormP::one: return "1";
        case LogNormP::two: return "2";
        case LogNormP::inf: return "inf";
    }
    return "?";
}

namespace {

Matrix scaled_copy(const Matrix& a, const std::optional<Matrix>& scaling) {
    if (!scaling) return a;
    const Matrix& h = *scaling;
    if (!h.is_square() || h.rows() != a.rows())
        throw std::domain_error("scaling matrix: shape mismatch");
    const double cond = condition_estimate_inf(h);
    if (!std::isfinite(cond)) throw std::domain_error("scaling matrix is singular");
    return h * a * inverse(h);
}

}  // namespace

double mu(const Matrix& a, LogNormP p) {
    if (!a.is_square()) throw std::domain_error("mu: matrix not square");
    const int n = a.rows();
    if (n == 0) throw std::domain_error("mu: empty matrix");
    switch (p) {
        case LogNormP::one: {
            double best = -std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                double s = a(j, j);
                for (int i = 0; i < n; ++i)
                    if (i != j) s += std::abs(a(i, j));
                best = std::max(best, s);
            }
            return best;
        }
        case LogNormP::inf: {
            double best = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                double s = a(i, i);
                for (int j = 0; j < n; ++j)
                    if (j != i) s += std::abs(a(i, j));
                best = std::max(best, s);
            }
            return best;
        }
        case LogNormP::two: {
            Matrix sym(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) sym(i, j) = 0.5 * (a(i, j) + a(j, i));
            return symmetric_eigenvalues(sym).front();
        }
    }
    throw std::domain_error("mu: invalid p");
}

double mu(const Matrix& a, const LogNormSpec& spec) { return mu(scaled_copy(a, spec.scaling), spec.p); }

double mu_compound_direct(const Matrix& a, int k, LogNormP p) {
    if (!a.is_square()) throw std::domain_error("mu_compound_direct: matrix not square");
    const int n = a.rows();
    if (k < 1 || k > n) throw std::domain_error("mu_compound_direct: k out of range");

    if (p == LogNormP::two) {
        Matrix sym(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sym(i, j) = 0.5 * (a(i, j) + a(j, i));
        const std::vector<double> eig = symmetric_eigenvalues(sym);  // descending
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += eig[i];
        return s;
    }

    // p ∈ {1,∞}: column sums for μ₁, row sums for μ∞; maximize over α ∈ Q(k,n)
    const bool column_wise = (p == LogNormP::one);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<bool> in_alpha(n + 1);
    for_each_sequence(k, n, [&](const IndexSeq& alpha) {
        in_alpha.assign(n + 1, false);
        for (int e : alpha.entries) in_alpha[e] = true;
        double total = 0.0;
        for (int e : alpha.entries) {
            const int i = e - 1;
            double s = a(i, i);
            for (int j = 0; j < n; ++j) {
                if (in_alpha[j + 1]) continue;
                s += column_wise ? std::abs(a(j, i)) : std::abs(a(i, j));
            }
            total += s;
        }
        best = std::max(best, total);
    });
    return best;
}

double tau(const Matrix& a, const TauSpec& spec) {
    if (!a.is_square()) throw std::domain_error("tau: matrix not square");
    const int n = a.rows();
    if (spec.k < 1 || spec.k > n) throw std::domain_error("tau: k out of range");
    const LogNormSpec dual{dual_exponent(spec.p), spec.scaling};
    return a.trace() + (n - spec.k) * mu(-a, dual);
}

std::pair<double, double> tau_upper_bounds_mu(const Matrix& a, const TauSpec& spec) {
    if (!a.is_square()) throw std::domain_error("tau_upper_bounds_mu: matrix not square");
    const int n = a.rows();
    if (spec.k < 1 || spec.k > n) throw std::domain_error("tau_upper_bounds_mu: k out of range");

    // left side the long way round: μ_{p,T^(k)}(A^[k]) with explicit compounds
    const Matrix compound = additive_compound(a, spec.k).mat;
    double mu_val;
    if (spec.scaling) {
        const Matrix tk = multiplicative_compound(*spec.scaling, spec.k).mat;
        const double cond = condition_estimate_inf(tk);
        if (!std::isfinite(cond)) throw std::domain_error("tau_upper_bounds_mu: T^(k) is singular");
        mu_val = mu(tk * compound * inverse(tk), spec.p);
    } else {
        mu_val = mu(compound, spec.p);
    }
    return {mu_val, tau(a, spec)};
}

std::vector<double> normalized_mu_monotone(const Matrix& a, LogNormP p,
                                           const std::optional<Matrix>& scaling) {
    if (!a.is_square()) throw std::domain_error("normalized_mu_monotone: matrix not square");
    const Matrix transformed = scaled_copy(a, scaling);  // μ_{p,T^(k)}(A^[k]) = μ_p((TAT⁻¹)^[k])
    const int n = a.rows();
    std::vector<double> out;
    out.reserve(n);
    for (int k = 1; k <= n; ++k) out.push_back(mu_compound_direct(transformed, k, p) / k);
    return out;
}

double induced_norm(const Matrix& a, LogNormP p) {
    switch (p) {
        case LogNormP::one: return a.norm_one();
        case LogNormP::inf: return a.norm_inf();
        case LogNormP::two: return spectral_norm(a);
    }
    throw std::domain_error("induced_norm: invalid p");
}

double scaled_induced_norm(const Matrix& a, LogNormP p, const std::optional<Matrix>& scaling) {
    return induced_norm(scaled_copy(a, scaling), p);
}

}  // namespace kcomp
