#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcomp/dynamics.hpp"
#include "kcomp/lognorm_types.hpp"
#include "kcomp/matrix.hpp"

namespace kcomp {

enum class CertifyMethod {
    direct,
    tau,
    trace_dominance,
    ltv_smith,
    hopfield,
    li_wang,
    local_stability,
};

const char* to_string(CertifyMethod m);

struct CertificateWitness {
    std::optional<std::vector<double>> weights;      // diagonal weights d
    std::optional<std::vector<double>> state;        // worst sample state / equilibrium
    std::optional<double> time;                      // worst sample time
    std::optional<int> index;                        // maximizing row/column (1-based)
    std::string note;
};

/// Outcome of a k-contraction test. `bound` is the worst-case value of the
/// tested quantity over the domain, rate_eta = max(0, −bound), and
/// passed ⇔ bound ≤ −η with bound < 0. `sampled` distinguishes grid/sample
/// surrogates for a universal quantifier from state-independent (exact)
/// conditions.
struct Certificate {
    CertifyMethod method = CertifyMethod::direct;
    int k = 0;
    std::optional<LogNormP> p;
    double bound = 0.0;
    double rate_eta = 0.0;
    bool passed = false;
    bool sampled = false;
    CertificateWitness witness;
};

struct JacobianSample {
    double t = 0.0;
    std::vector<double> x;
};

/// Jacobian evaluator over a sampled domain Ω × time grid. The sample list
/// stands in for the universal quantifier; certificates built from it are
/// marked `sampled`.
struct JacobianSampler {
    int n = 0;
    std::function<Matrix(double, const std::vector<double>&)> jacobian;
    std::vector<JacobianSample> samples;

    static JacobianSampler constant(const Matrix& a);
    /// Cartesian grid: `points_per_axis` values per state axis over
    /// [lo,hi]^n crossed with the time grid.
    static JacobianSampler on_grid(int n, std::function<Matrix(double, const std::vector<double>&)> jacobian,
                                   std::pair<double, double> box, int points_per_axis,
                                   const std::vector<double>& time_grid);
};

/// μ_{p,T^(k)}(J^[k]) ≤ −η over all samples (evaluated compound-free via the
/// closed forms on T J T⁻¹).
Certificate certify_direct(const JacobianSampler& sampler, int k, LogNormP p,
                           const std::optional<Matrix>& scaling, double eta);

/// τ_{p,k}(J) ≤ −η over all samples; implies the direct condition.
Certificate certify_tau(const JacobianSampler& sampler, int k, LogNormP p,
                        const std::optional<Matrix>& scaling, double eta);

/// Per-column trace-dominance test: for every i,
/// −(n−k−1)a_ii + Σ_{j≠i}(a_jj + (n−k)(d_j/d_i)|a_ji|) ≤ −η.
/// On pass the LTI ẋ = Ax is k-contractive w.r.t. |·|_{∞,D}, D = diag(d).
Certificate trace_dominance(const Matrix& a, int k, const std::vector<double>& weights, double eta);

/// Multiplicative-weights search (200 iterations over log d) for weights that
/// make trace_dominance pass; nullopt when none found (the condition is only
/// sufficient, so absence is not an error).
std::optional<std::vector<double>> search_diagonal_weights(const Matrix& a, int k);

/// Smith-type LTV condition: Aᵀ(t)Q + QA(t) + 2θ(t)Q ⪰ 0 at every sample,
/// plus tr A(t) + (n−k)θ(t) ≤ −η; verifies μ_{2,P}(−A(t)) ≤ θ(t) with
/// P = Q^{1/2} along the way. On pass, k-contractive w.r.t. |·|_{2,P}.
Certificate ltv_smith_certify(const std::vector<std::pair<double, Matrix>>& a_samples,
                              const Matrix& q, const std::vector<double>& theta, int k, double eta);

/// Compound-free Hopfield condition from the activation derivative bounds:
/// for every i,
/// −(n−k−1)(−1/r_i − m_i|w_ii|) + Σ_{j≠i}(−1/r_j + M_j|w_jj| + (n−k)(d_j/d_i)M_i|w_ji|) ≤ −η.
/// State-independent, hence exact. Requires k ≤ n−1 (k = n reduces to the
/// plain trace test; use trace_dominance).
Certificate hopfield_certify(const HopfieldModel& model, int k, const std::vector<double>& weights,
                             double eta);

/// A is Hurwitz ⇔ A^[2] is Hurwitz and (−1)ⁿ det(A) > 0.
bool hurwitz_via_2compound(const Matrix& a);

/// Sufficient test for local asymptotic stability of an equilibrium:
/// τ_{p,2}(J(e)) < 0 and (−1)ⁿ det(J(e)) > 0. One-sided: false does not
/// imply instability.
bool local_stability_compound_free(const Matrix& jacobian_at_eq, LogNormP p,
                                   const std::optional<Matrix>& scaling);

/// Necessary condition oracle: every sum of k eigenvalues of A has negative
/// real part (enumerated over Q(k,n); n ≤ 8).
bool eigsum_necessary_check(const Matrix& a, int k);

}  // namespace kcomp
