#include "kcomp/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kcomp/compounds.hpp"
#include "kcomp/lexidx.hpp"
#include "kcomp/linalg.hpp"
#include "kcomp/lognorms.hpp"

namespace kcomp {

const char* to_string(CertifyMethod m) {
    switch (m) {
        case CertifyMethod::direct: return "direct";
        case CertifyMethod::tau: return "tau";
        case CertifyMethod::trace_dominance: return "trace_dominance";
        case CertifyMethod::ltv_smith: return "ltv_smith";
        case CertifyMethod::hopfield: return "hopfield";
        case CertifyMethod::li_wang: return "li_wang";
        case CertifyMethod::local_stability: return "local_stability";
    }
    return "?";
}

JacobianSampler JacobianSampler::constant(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("JacobianSampler::constant: matrix not square");
    JacobianSampler s;
    s.n = a.rows();
    s.jacobian = [a](double, const std::vector<double>&) { return a; };
    s.samples = {JacobianSample{0.0, std::vector<double>(a.rows(), 0.0)}};
    return s;
}

JacobianSampler JacobianSampler::on_grid(int n,
                                         std::function<Matrix(double, const std::vector<double>&)> jacobian,
                                         std::pair<double, double> box, int points_per_axis,
                                         const std::vector<double>& time_grid) {
    if (n < 1) throw std::domain_error("JacobianSampler::on_grid: n must be positive");
    if (points_per_axis < 1) throw std::domain_error("JacobianSampler::on_grid: empty grid");
    JacobianSampler s;
    s.n = n;
    s.jacobian = std::move(jacobian);
    std::vector<double> axis(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i)
        axis[i] = points_per_axis == 1
                      ? 0.5 * (box.first + box.second)
                      : box.first + (box.second - box.first) * i / (points_per_axis - 1);
    const std::vector<double> times = time_grid.empty() ? std::vector<double>{0.0} : time_grid;
    std::vector<int> digits(n, 0);
    while (true) {
        std::vector<double> x(n);
        for (int d = 0; d < n; ++d) x[d] = axis[digits[d]];
        for (double t : times) s.samples.push_back({t, x});
        int d = 0;
        while (d < n && ++digits[d] == points_per_axis) digits[d++] = 0;
        if (d == n) break;
    }
    return s;
}

namespace {

Matrix evaluate_sample(const JacobianSampler& sampler, const JacobianSample& sample) {
    Matrix j;
    try {
        j = sampler.jacobian(sample.t, sample.x);
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "jacobian evaluation failed at t=" << sample.t << ", x=(";
        for (std::size_t i = 0; i < sample.x.size(); ++i) os << (i ? "," : "") << sample.x[i];
        os << "): " << e.what();
        throw std::runtime_error(os.str());
    }
    if (j.rows() != sampler.n || j.cols() != sampler.n || !j.all_finite())
        throw std::domain_error("jacobian evaluator returned a malformed matrix");
    return j;
}

Certificate max_over_samples(const JacobianSampler& sampler, int k, LogNormP p,
                             const std::optional<Matrix>& scaling, double eta, CertifyMethod method) {
    if (sampler.samples.empty()) throw std::domain_error("certify: empty sample set");
    std::optional<Matrix> t_inv;
    if (scaling) {
        const double cond = condition_estimate_inf(*scaling);
        if (!std::isfinite(cond)) throw std::domain_error("certify: singular scaling matrix");
        t_inv = inverse(*scaling);
    }

    Certificate cert;
    cert.method = method;
    cert.k = k;
    cert.p = p;
    cert.sampled = sampler.samples.size() > 1;
    cert.bound = -std::numeric_limits<double>::infinity();
    for (const JacobianSample& sample : sampler.samples) {
        Matrix j = evaluate_sample(sampler, sample);
        double value;
        if (method == CertifyMethod::direct) {
            // μ_{p,T^(k)}(J^[k]) = μ_p((TJT⁻¹)^[k]), evaluated compound-free
            const Matrix transformed = scaling ? (*scaling) * j * (*t_inv) : std::move(j);
            value = mu_compound_direct(transformed, k, p);
        } else {
            value = tau(j, TauSpec{p, k, scaling});
        }
        if (value > cert.bound) {
            cert.bound = value;
            cert.witness.state = sample.x;
            cert.witness.time = sample.t;
        }
    }
    cert.rate_eta = std::max(0.0, -cert.bound);
    cert.passed = cert.bound <= -eta && cert.bound < 0.0;
    cert.witness.note = cert.sampled
                            ? "worst case over " + std::to_string(sampler.samples.size()) + " samples"
                            : "constant Jacobian";
    return cert;
}

double trace_dominance_row(const Matrix& a, int k, const std::vector<double>& d, int i) {
    const int n = a.rows();
    double s = -(n - k - 1) * a(i, i);
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        s += a(j, j) + (n - k) * (d[j] / d[i]) * std::abs(a(j, i));
    }
    return s;
}

}  // namespace

Certificate certify_direct(const JacobianSampler& sampler, int k, LogNormP p,
                           const std::optional<Matrix>& scaling, double eta) {
    if (k < 1 || k > sampler.n) throw std::domain_error("certify_direct: k out of range");
    return max_over_samples(sampler, k, p, scaling, eta, CertifyMethod::direct);
}

Certificate certify_tau(const JacobianSampler& sampler, int k, LogNormP p,
                        const std::optional<Matrix>& scaling, double eta) {
    if (k < 1 || k > sampler.n) throw std::domain_error("certify_tau: k out of range");
    return max_over_samples(sampler, k, p, scaling, eta, CertifyMethod::tau);
}

Certificate trace_dominance(const Matrix& a, int k, const std::vector<double>& weights, double eta) {
    if (!a.is_square()) throw std::domain_error("trace_dominance: matrix not square");
    const int n = a.rows();
    if (k < 1 || k > n) throw std::domain_error("trace_dominance: k out of range");
    if (static_cast<int>(weights.size()) != n) throw std::domain_error("trace_dominance: weight size mismatch");
    for (double d : weights)
        if (!(d > 0.0)) throw std::domain_error("trace_dominance: weights must be strictly positive");

    Certificate cert;
    cert.method = CertifyMethod::trace_dominance;
    cert.k = k;
    cert.p = LogNormP::inf;
    cert.sampled = false;
    cert.bound = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double value = trace_dominance_row(a, k, weights, i);
        if (value > cert.bound) {
            cert.bound = value;
            cert.witness.index = i + 1;
        }
    }
    cert.rate_eta = std::max(0.0, -cert.bound);
    cert.passed = cert.bound <= -eta && cert.bound < 0.0;
    cert.witness.weights = weights;
    return cert;
}

std::optional<std::vector<double>> search_diagonal_weights(const Matrix& a, int k) {
    if (!a.is_square()) throw std::domain_error("search_diagonal_weights: matrix not square");
    const int n = a.rows();
    if (k < 1 || k > n) throw std::domain_error("search_diagonal_weights: k out of range");

    std::vector<double> log_d(n, 0.0);
    std::vector<double> d(n, 1.0);
    std::vector<double> best_d = d;
    double best_max = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < 200; ++iter) {
        for (int i = 0; i < n; ++i) d[i] = std::exp(log_d[i]);
        double worst = -std::numeric_limits<double>::infinity();
        int worst_i = 0;
        for (int i = 0; i < n; ++i) {
            const double v = trace_dominance_row(a, k, d, i);
            if (v > worst) {
                worst = v;
                worst_i = i;
            }
        }
        if (worst < best_max) {
            best_max = worst;
            best_d = d;
        }
        // raising d_i shrinks the d_j/d_i terms in the worst row
        log_d[worst_i] += 0.1;
        // keep the weights normalized so they do not drift off to infinity
        const double mean = std::accumulate(log_d.begin(), log_d.end(), 0.0) / n;
        for (double& v : log_d) v -= mean;
    }
    if (best_max < 0.0) return best_d;
    return std::nullopt;
}

Certificate ltv_smith_certify(const std::vector<std::pair<double, Matrix>>& a_samples,
                              const Matrix& q, const std::vector<double>& theta, int k, double eta) {
    if (a_samples.empty()) throw std::domain_error("ltv_smith_certify: no samples");
    if (theta.size() != a_samples.size())
        throw std::domain_error("ltv_smith_certify: theta not aligned with samples");
    const int n = q.rows();
    if (!q.is_square()) throw std::domain_error("ltv_smith_certify: Q not square");
    if (k < 1 || k > n) throw std::domain_error("ltv_smith_certify: k out of range");

    const Matrix p_root = sqrtm_spd(q);  // throws unless Q ≻ 0
    const Matrix p_inv = inverse(p_root);

    Certificate cert;
    cert.method = CertifyMethod::ltv_smith;
    cert.k = k;
    cert.p = LogNormP::two;
    cert.sampled = a_samples.size() > 1;
    cert.bound = -std::numeric_limits<double>::infinity();

    bool all_ok = true;
    for (std::size_t s = 0; s < a_samples.size(); ++s) {
        const double t = a_samples[s].first;
        const Matrix& a = a_samples[s].second;
        if (!a.is_square() || a.rows() != n) throw std::domain_error("ltv_smith_certify: sample shape mismatch");

        // Aᵀ(t)Q + QA(t) + 2θ(t)Q ⪰ 0, up to a small relative slack
        Matrix psd = a.transpose() * q + q * a + (2.0 * theta[s]) * q;
        const double psd_floor = -1e-9 * std::max(1.0, psd.norm_inf());
        const double min_eig = symmetric_eigenvalues(psd).back();
        const bool psd_ok = min_eig >= psd_floor;

        // implied log-norm bound μ_{2,P}(−A(t)) ≤ θ(t)
        const double mu2p = mu(p_root * (-a) * p_inv, LogNormP::two);
        const bool mu_ok = mu2p <= theta[s] + 1e-9 * std::max(1.0, std::abs(theta[s]));

        const double trace_value = a.trace() + (n - k) * theta[s];
        if (trace_value > cert.bound) {
            cert.bound = trace_value;
            cert.witness.time = t;
        }
        if (!psd_ok || !mu_ok) {
            all_ok = false;
            cert.witness.time = t;
            cert.witness.note = psd_ok ? "mu_{2,P}(-A(t)) > theta(t)" : "Q-inequality not PSD at sample";
        }
    }
    cert.rate_eta = std::max(0.0, -cert.bound);
    cert.passed = all_ok && cert.bound <= -eta && cert.bound < 0.0;
    if (cert.witness.note.empty())
        cert.witness.note = "norm |.|_{2,P} with P = Q^{1/2}";
    return cert;
}

Certificate hopfield_certify(const HopfieldModel& model, int k, const std::vector<double>& weights,
                             double eta) {
    model.validate();
    const int n = model.n;
    if (k < 1) throw std::domain_error("hopfield_certify: k out of range");
    if (k > n - 1)
        throw std::domain_error(
            "hopfield_certify: requires k <= n-1 (k = n reduces to the trace test; use trace_dominance)");
    if (static_cast<int>(weights.size()) != n) throw std::domain_error("hopfield_certify: weight size mismatch");
    for (double d : weights)
        if (!(d > 0.0)) throw std::domain_error("hopfield_certify: weights must be strictly positive");

    Certificate cert;
    cert.method = CertifyMethod::hopfield;
    cert.k = k;
    cert.p = LogNormP::inf;
    cert.sampled = false;  // the bound is uniform in x
    cert.bound = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double s = -(n - k - 1) * (-1.0 / model.r[i] - model.deriv_lower[i] * std::abs(model.w(i, i)));
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            s += -1.0 / model.r[j] + model.deriv_upper[j] * std::abs(model.w(j, j)) +
                 (n - k) * (weights[j] / weights[i]) * model.deriv_upper[i] * std::abs(model.w(j, i));
        }
        if (s > cert.bound) {
            cert.bound = s;
            cert.witness.index = i + 1;
        }
    }
    cert.rate_eta = std::max(0.0, -cert.bound);
    cert.passed = cert.bound <= -eta && cert.bound < 0.0;
    cert.witness.weights = weights;
    cert.witness.note = "uniform in x (activation derivative bounds)";
    return cert;
}

bool hurwitz_via_2compound(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("hurwitz_via_2compound: matrix not square");
    if (a.rows() < 2) throw std::domain_error("hurwitz_via_2compound: needs n >= 2");
    const double det_sign = (a.rows() % 2 == 0 ? 1.0 : -1.0) * determinant(a);
    if (!(det_sign > 0.0)) return false;
    const Matrix compound = additive_compound(a, 2).mat;
    for (const auto& lambda : eigenvalues(compound))
        if (lambda.real() >= 0.0) return false;
    return true;
}

bool local_stability_compound_free(const Matrix& jacobian_at_eq, LogNormP p,
                                   const std::optional<Matrix>& scaling) {
    if (!jacobian_at_eq.is_square()) throw std::domain_error("local_stability: matrix not square");
    const int n = jacobian_at_eq.rows();
    if (n < 2) throw std::domain_error("local_stability: needs n >= 2");
    const double tau_val = tau(jacobian_at_eq, TauSpec{p, 2, scaling});
    if (!(tau_val < 0.0)) return false;
    const double det_sign = (n % 2 == 0 ? 1.0 : -1.0) * determinant(jacobian_at_eq);
    return det_sign > 0.0;
}

bool eigsum_necessary_check(const Matrix& a, int k) {
    if (!a.is_square()) throw std::domain_error("eigsum_necessary_check: matrix not square");
    const int n = a.rows();
    if (n > 8) throw std::domain_error("eigsum_necessary_check: enumeration limited to n <= 8");
    if (k < 1 || k > n) throw std::domain_error("eigsum_necessary_check: k out of range");
    const std::vector<std::complex<double>> eig = eigenvalues(a);
    double worst = -std::numeric_limits<double>::infinity();
    for_each_sequence(k, n, [&](const IndexSeq& alpha) {
        double s = 0.0;
        for (int e : alpha.entries) s += eig[e - 1].real();
        worst = std::max(worst, s);
    });
    return worst < 0.0;
}

}  // namespace kcomp
