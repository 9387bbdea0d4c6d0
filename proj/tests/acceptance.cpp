// Acceptance suite: each criterion prints a single PASS/FAIL line; the
// process exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kcomp/certify.hpp"
#include "kcomp/compounds.hpp"
#include "kcomp/duality.hpp"
#include "kcomp/dynamics.hpp"
#include "kcomp/io.hpp"
#include "kcomp/lexidx.hpp"
#include "kcomp/linalg.hpp"
#include "kcomp/lognorms.hpp"
#include "kcomp/rng.hpp"

using kcomp::IndexSeq;
using kcomp::Lcg64;
using kcomp::LogNormP;
using kcomp::Matrix;

namespace {

int checks_run = 0;
int checks_failed = 0;
std::ostringstream detail;

void expect(bool ok, const std::string& what) {
    ++checks_run;
    if (!ok) {
        ++checks_failed;
        if (checks_failed <= 5) detail << "    failed: " << what << '\n';
    }
}

Matrix random_matrix(Lcg64& rng, int rows, int cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

Matrix random_well_conditioned(Lcg64& rng, int n, double max_cond = 50.0) {
    while (true) {
        Matrix m = random_matrix(rng, n, n);
        for (int i = 0; i < n; ++i) m(i, i) += 2.0;
        const double cond = kcomp::condition_estimate_inf(m);
        if (std::isfinite(cond) && cond <= max_cond) return m;
    }
}

const LogNormP kAllP[] = {LogNormP::one, LogNormP::two, LogNormP::inf};

// --- criterion bodies -------------------------------------------------------

bool criterion_duality_identities() {
    const auto start = std::chrono::steady_clock::now();
    Lcg64 rng(101);
    for (int n = 3; n <= 6; ++n) {
        for (int k = 1; k <= n - 1; ++k) {
            for (int trial = 0; trial < 100; ++trial) {
                const Matrix a = random_matrix(rng, n, n);

                // multiplicative duality
                const double det = kcomp::determinant(a);
                const Matrix prod =
                    kcomp::multiplicative_compound(a, k).mat.transpose() * kcomp::kth_adjugate(a, k);
                double residual = 0.0;
                for (int i = 0; i < prod.rows(); ++i)
                    for (int j = 0; j < prod.cols(); ++j)
                        residual = std::max(residual, std::abs(prod(i, j) - (i == j ? det : 0.0)));
                expect(residual < 1e-8, "multiplicative duality residual");

                // additive duality
                expect(kcomp::additive_duality_residual(a, k) < 1e-10 * std::max(1.0, a.norm_inf()),
                       "additive duality residual");

                // exponential duality
                const Matrix lhs = kcomp::multiplicative_compound(kcomp::expm(a), k).mat.transpose();
                const Matrix rhs = kcomp::exp_compound_via_duality(a, k);
                expect(kcomp::max_abs_diff(lhs, rhs) < 1e-7 * std::max(1.0, lhs.max_abs()),
                       "exponential duality residual");

                // log-norm duality equality
                for (const LogNormP p : kAllP) {
                    const auto [mu_lhs, mu_rhs] = kcomp::mu_duality_equality(a, k, p);
                    expect(std::abs(mu_lhs - mu_rhs) <= 1e-9, "log norm duality equality");
                }
            }
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(seconds < 30.0, "criterion 1 runtime under 30 s");
    return checks_failed == 0;
}

bool criterion_compound_algebra() {
    Lcg64 rng(102);

    // Cauchy-Binet on random shapes up to 6
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
        const int m = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
        const int p = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
        const Matrix a = random_matrix(rng, n, m);
        const Matrix b = random_matrix(rng, m, p);
        for (int k = 1; k <= std::min({n, m, p}); ++k) {
            const Matrix lhs = kcomp::multiplicative_compound(a * b, k).mat;
            const Matrix rhs =
                kcomp::multiplicative_compound(a, k).mat * kcomp::multiplicative_compound(b, k).mat;
            expect(kcomp::max_abs_diff(lhs, rhs) <= 1e-9 * std::max(1.0, rhs.max_abs()), "cauchy-binet");
        }
    }

    // Sylvester-Franke
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const Matrix a = random_matrix(rng, n, n);
            const double det = kcomp::determinant(a);
            for (int k = 1; k <= n; ++k) {
                const double lhs = kcomp::determinant(kcomp::multiplicative_compound(a, k).mat);
                const double rhs = std::pow(det, static_cast<double>(kcomp::binomial(n - 1, k - 1)));
                expect(std::abs(lhs - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs)), "sylvester-franke");
            }
        }
    }

    // spectral product/sum identities on symmetric matrices
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            Matrix s(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) s(i, j) = s(j, i) = rng.uniform(-1.0, 1.0);
            const std::vector<double> lambda = kcomp::symmetric_eigenvalues(s);
            for (int k = 1; k <= n; ++k) {
                std::vector<double> products, sums;
                kcomp::for_each_sequence(k, n, [&](const IndexSeq& alpha) {
                    double prod = 1.0, sum = 0.0;
                    for (int e : alpha.entries) {
                        prod *= lambda[e - 1];
                        sum += lambda[e - 1];
                    }
                    products.push_back(prod);
                    sums.push_back(sum);
                });
                std::sort(products.begin(), products.end());
                std::sort(sums.begin(), sums.end());

                auto mult = kcomp::symmetric_eigenvalues(kcomp::multiplicative_compound(s, k).mat);
                auto add = kcomp::symmetric_eigenvalues(kcomp::additive_compound(s, k).mat);
                std::sort(mult.begin(), mult.end());
                std::sort(add.begin(), add.end());
                for (std::size_t i = 0; i < products.size(); ++i) {
                    expect(std::abs(mult[i] - products[i]) <= 1e-8, "spectral product identity");
                    expect(std::abs(add[i] - sums[i]) <= 1e-8, "spectral sum identity");
                }
            }
        }
    }

    // trace identity and coordinate-transform identity
    for (int n = 3; n <= 6; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const Matrix a = random_matrix(rng, n, n);
            for (int k = 1; k <= n; ++k) {
                const double lhs = kcomp::additive_compound(a, k).mat.trace();
                const double rhs = kcomp::binomial(n - 1, k - 1) * a.trace();
                expect(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)), "trace identity");
            }
            const Matrix t = random_well_conditioned(rng, n);
            for (int k = 1; k <= n; ++k) {
                const Matrix lhs = kcomp::apply_similarity_compound(t, a, k);
                const Matrix tk = kcomp::multiplicative_compound(t, k).mat;
                const Matrix rhs = tk * kcomp::additive_compound(a, k).mat * kcomp::inverse(tk);
                expect(kcomp::max_abs_diff(lhs, rhs) <= 1e-8 * std::max(1.0, rhs.max_abs()),
                       "transform identity");
            }
        }
    }
    return checks_failed == 0;
}

bool criterion_tau_bound() {
    Lcg64 rng(103);
    for (int draw = 0; draw < 300; ++draw) {
        const int n = 3 + static_cast<int>(rng.uniform(0.0, 4.0));
        const int k = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(n)));
        const LogNormP p = kAllP[draw % 3];
        const Matrix a = random_matrix(rng, n, n);
        const Matrix t = random_well_conditioned(rng, n);
        const auto [mu_val, tau_val] = kcomp::tau_upper_bounds_mu(a, kcomp::TauSpec{p, k, t});
        expect(mu_val <= tau_val + 1e-9, "tau upper bound");
    }

    // equality at the identity: both sides are exactly k
    for (int n = 3; n <= 6; ++n)
        for (int k = 1; k <= n; ++k)
            for (const LogNormP p : kAllP) {
                const auto [mu_val, tau_val] =
                    kcomp::tau_upper_bounds_mu(Matrix::identity(n), kcomp::TauSpec{p, k, {}});
                expect(mu_val == static_cast<double>(k), "identity equality (mu side)");
                expect(tau_val == static_cast<double>(k), "identity equality (tau side)");
            }
    return checks_failed == 0;
}

bool criterion_monotonicity() {
    Lcg64 rng(104);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + trial % 3;
        const Matrix a = random_matrix(rng, n, n);
        for (const LogNormP p : kAllP) {
            const auto seq = kcomp::normalized_mu_monotone(a, p);
            for (std::size_t i = 1; i < seq.size(); ++i)
                expect(seq[i] - seq[i - 1] <= 1e-10, "normalized compound log norm non-increasing");
        }
    }
    return checks_failed == 0;
}

bool criterion_tau_properties() {
    Lcg64 rng(105);
    const int n = 4;
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = random_matrix(rng, n, n);
        const Matrix b = random_matrix(rng, n, n);
        const int k = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(n)));
        std::optional<Matrix> t;
        if (trial % 2 == 0) t = random_well_conditioned(rng, n);
        for (const LogNormP p : kAllP) {
            const kcomp::TauSpec spec{p, k, t};
            const LogNormP q = kcomp::dual_exponent(p);
            const double ta = kcomp::tau(a, spec);
            const double tb = kcomp::tau(b, spec);

            expect(std::abs(kcomp::tau(Matrix(n, n), spec)) <= 1e-9, "tau(0) = 0");
            expect(std::abs(ta - tb) <=
                       std::abs((a - b).trace()) + (n - k) * kcomp::scaled_induced_norm(a - b, q, t) + 1e-9,
                   "tau lipschitz bound");
            expect(kcomp::tau(a + b, spec) <= ta + tb + 1e-9, "tau subadditive");
            expect(std::abs(kcomp::tau(1.7 * a, spec) - 1.7 * ta) <= 1e-9, "tau positively homogeneous");
            expect(std::abs(kcomp::tau(a + 0.4 * Matrix::identity(n), spec) - (ta + 0.4 * k)) <= 1e-9,
                   "tau shift rule");
            expect(std::abs(kcomp::tau(Matrix::identity(n), spec) - k) <= 1e-9, "tau(I) = k");
            expect(std::abs(kcomp::tau(-1.0 * Matrix::identity(n), spec) + k) <= 1e-9, "tau(-I) = -k");
            const double norm_a = kcomp::scaled_induced_norm(a, q, t);
            const double mu_a = t ? kcomp::mu(a, kcomp::LogNormSpec{q, t}) : kcomp::mu(a, q);
            expect(a.trace() - (n - k) * norm_a <= a.trace() - (n - k) * mu_a + 1e-9, "sandwich lower");
            expect(a.trace() - (n - k) * mu_a <= ta + 1e-9, "sandwich middle");
            expect(ta <= a.trace() + (n - k) * norm_a + 1e-9, "sandwich upper");
            for (const double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const Matrix mix = r * a + (1.0 - r) * b;
                expect(kcomp::tau(mix, spec) <= r * ta + (1.0 - r) * tb + 1e-9, "tau convex");
            }
        }
    }
    return checks_failed == 0;
}

bool criterion_hopfield() {
    const auto start = std::chrono::steady_clock::now();
    const Matrix ones3(3, 3, 1.0);
    const auto model_049 = kcomp::HopfieldModel::tanh_network(3, 0.49, ones3);
    const auto model_051 = kcomp::HopfieldModel::tanh_network(3, 0.51, ones3);
    const std::vector<double> unit{1.0, 1.0, 1.0};

    // (a) certificate threshold at r < 1/2
    expect(kcomp::hopfield_certify(model_049, 2, unit, 0.0).passed, "hopfield certificate r=0.49");
    expect(!kcomp::hopfield_certify(model_051, 2, unit, 0.0).passed, "hopfield certificate r=0.51");

    // (b) Newton locates e2 near 1.2447 (1,1,1)
    const auto field = [&](const std::vector<double>& x) { return kcomp::hopfield_field(model_049, x); };
    const auto jac = [&](const std::vector<double>& x) { return kcomp::hopfield_jacobian(model_049, x); };
    const auto e2 = kcomp::find_equilibrium(field, jac, {1.0, 1.0, 1.0});
    expect(e2.converged, "newton convergence");
    for (const double v : e2.x) expect(std::abs(v - 1.2447) < 1e-3, "e2 value");

    // (c) determinant signs at e1 and e2
    expect(kcomp::determinant(kcomp::hopfield_jacobian(model_049, {0.0, 0.0, 0.0})) > 0.0,
           "det J(e1) > 0");
    expect(kcomp::determinant(kcomp::hopfield_jacobian(model_049, e2.x)) < 0.0, "det J(e2) < 0");

    // (d) 20 seeded trajectories all converge to one of the three equilibria
    const auto equilibria = kcomp::hopfield_equilibria(model_049);
    expect(equilibria.size() == 3, "three equilibria");
    const auto summary = kcomp::convergence_experiment(model_049, 20, {-3.0, 3.0}, 35.0, 1e-3, 7,
                                                       equilibria,
                                                       {{-0.02, -0.02, 0.04}, {1.0, 0.4, 0.5}});
    expect(summary.converged == 20, "all 20 trajectories converged");
    for (const auto& outcome : summary.outcomes) {
        expect(outcome.classification == kcomp::TerminalClass::converged, "trajectory converged");
        expect(outcome.terminal_distance < 1e-4, "terminal residual < 1e-4");
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(seconds < 60.0, "criterion 6 runtime under 60 s");
    return checks_failed == 0;
}

bool criterion_ltv() {
    const auto example = kcomp::ltv_rotation_example();
    Lcg64 rng(107);

    // numeric integration matches the closed form along the trajectory
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<double> x0{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const auto traj = kcomp::integrate(example.field(), x0, 0.0, 10.0, 1e-3, 500);
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto exact = example.transition(traj.times[i], 0.0).apply(x0);
            expect(kcomp::vec_norm_inf(kcomp::vec_sub(traj.states[i], exact)) < 1e-6,
                   "LTV trajectory matches closed form");
        }
    }

    // trace is -3/2 on a 1000-point grid
    for (int i = 0; i < 1000; ++i) {
        const double t = 10.0 * i / 999.0;
        expect(std::abs(example.a(t).trace() + 1.5) <= 1e-12, "tr A(t) = -3/2");
    }

    // the (sin t0, cos t0) direction decays below 1e-6 by t0 + 12
    for (const double t0 : {0.0, 0.7, 1.9, 4.4}) {
        const std::vector<double> x0{std::sin(t0), std::cos(t0)};
        const auto traj = kcomp::integrate(example.field(), x0, t0, t0 + 12.0, 1e-3, 1000);
        expect(kcomp::vec_norm_inf(traj.states.back()) < 1e-6, "stable direction decays");
    }
    return checks_failed == 0;
}

bool criterion_local_stability() {
    Lcg64 rng(108);

    // li-wang test agrees with the direct spectral Hurwitz test
    int disagreements = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + trial % 3;
        Matrix a = random_matrix(rng, n, n);
        if (trial % 2 == 0)
            for (int i = 0; i < n; ++i) a(i, i) -= 1.5;  // mix in Hurwitz-leaning draws
        bool direct = true;
        for (const auto& ev : kcomp::eigenvalues(a))
            if (ev.real() >= 0.0) direct = false;
        if (kcomp::hurwitz_via_2compound(a) != direct) ++disagreements;
    }
    expect(disagreements == 0, "li-wang agreement");

    // soundness of the compound-free local stability test
    int violations = 0, positives = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + trial % 3;
        Matrix a = random_matrix(rng, n, n);
        for (int i = 0; i < n; ++i) a(i, i) -= 2.5;
        const LogNormP p = kAllP[trial % 3];
        if (!kcomp::local_stability_compound_free(a, p, {})) continue;
        ++positives;
        for (const auto& ev : kcomp::eigenvalues(a))
            if (ev.real() >= 0.0) ++violations;
    }
    expect(violations == 0, "local stability soundness");
    expect(positives > 0, "sampling produced positives");
    return checks_failed == 0;
}

bool criterion_additive_oracle() {
    Lcg64 rng(109);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;  // up to 5
        const Matrix a = random_matrix(rng, n, n);
        const int k = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(n)));
        const Matrix entrywise = kcomp::additive_compound(a, k).mat;

        // finite-difference construction from the limit definition
        const double h = 1e-5;
        Matrix plus = Matrix::identity(n), minus = Matrix::identity(n);
        plus += h * a;
        minus -= h * a;
        const Matrix fd = (kcomp::multiplicative_compound(plus, k).mat -
                           kcomp::multiplicative_compound(minus, k).mat) *
                          (0.5 / h);
        expect(kcomp::max_abs_diff(entrywise, fd) < 1e-6, "entry formula vs finite differences");
    }
    return checks_failed == 0;
}

struct Criterion {
    int number;
    std::string name;
    std::function<bool()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "duality identities (multiplicative, additive, exponential, log-norm)",
         criterion_duality_identities},
        {2, "compound algebra (Cauchy-Binet, Sylvester-Franke, spectra, trace, transform)",
         criterion_compound_algebra},
        {3, "tau upper-bounds the compound log norm; equality at the identity", criterion_tau_bound},
        {4, "normalized compound log norms are non-increasing in k", criterion_monotonicity},
        {5, "tau property ledger (seven items)", criterion_tau_properties},
        {6, "Hopfield worked example (certificate, equilibria, convergence)", criterion_hopfield},
        {7, "LTV rotation example (closed form, trace, stable direction)", criterion_ltv},
        {8, "local stability tests (li-wang agreement, soundness)", criterion_local_stability},
        {9, "additive compound entry formula vs finite-difference oracle", criterion_additive_oracle},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        checks_run = 0;
        checks_failed = 0;
        detail.str("");
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = criterion.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %d: %s  (%d checks, %.1fs)\n", ok ? "PASS" : "FAIL",
                    criterion.number, criterion.name.c_str(), checks_run, seconds);
        if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
        if (!ok) {
            std::fputs(detail.str().c_str(), stdout);
            ++failed;
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed;
}
