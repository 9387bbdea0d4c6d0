#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kcomp/certify.hpp"
#include "kcomp/compounds.hpp"
#include "kcomp/dynamics.hpp"
#include "kcomp/linalg.hpp"
#include "kcomp/lognorms.hpp"
#include "kcomp/rng.hpp"
#include "test_support.hpp"

using kcomp::HopfieldModel;
using kcomp::Matrix;

namespace {

HopfieldModel example_network() {
    return HopfieldModel::tanh_network(3, 0.49, Matrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
}

}  // namespace

TEST_CASE("hopfield field and jacobian") {
    const HopfieldModel model = example_network();

    // tanh'(0) = 1: J(0) = -diag(1/r) + W
    const Matrix j0 = kcomp::hopfield_jacobian(model, {0.0, 0.0, 0.0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(j0(i, j) == doctest::Approx((i == j ? -1.0 / 0.49 : 0.0) + 1.0));

    // columns carry 1 - tanh^2(x_j)
    const std::vector<double> x{0.3, -1.1, 0.7};
    const Matrix jx = kcomp::hopfield_jacobian(model, x);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double expected = (i == j ? -1.0 / 0.49 : 0.0) + (1.0 - std::pow(std::tanh(x[j]), 2));
            CHECK(jx(i, j) == doctest::Approx(expected));
        }

    // field value at the diagonal fixed point equation
    const std::vector<double> f = kcomp::hopfield_field(model, x);
    for (int i = 0; i < 3; ++i) {
        const double expected =
            -x[i] / 0.49 + std::tanh(x[0]) + std::tanh(x[1]) + std::tanh(x[2]);
        CHECK(f[i] == doctest::Approx(expected));
    }
}

TEST_CASE("jacobians match finite differences of the field") {
    kcomp::Lcg64 rng(71);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        HopfieldModel model;
        model.n = n;
        model.r.assign(n, 0.0);
        for (double& v : model.r) v = rng.uniform(0.2, 2.0);
        model.w = testsupport::random_matrix(rng, n, n, -1.5, 1.5);
        model.u.assign(n, 0.0);
        for (double& v : model.u) v = rng.uniform(-0.5, 0.5);
        model.activation.gain.assign(n, 0.0);
        model.activation.slope.assign(n, 0.0);
        for (double& v : model.activation.gain) v = rng.uniform(0.5, 1.5);
        for (double& v : model.activation.slope) v = rng.uniform(0.5, 1.5);
        model.deriv_lower.assign(n, 0.0);
        model.deriv_upper.resize(n);
        for (int i = 0; i < n; ++i)
            model.deriv_upper[i] = model.activation.gain[i] * model.activation.slope[i];
        model.validate();

        std::vector<double> x(n);
        for (double& v : x) v = rng.uniform(-2.0, 2.0);
        const Matrix jac = kcomp::hopfield_jacobian(model, x);
        const double h = 1e-6;
        for (int col = 0; col < n; ++col) {
            std::vector<double> xp = x, xm = x;
            xp[col] += h;
            xm[col] -= h;
            const auto fp = kcomp::hopfield_field(model, xp);
            const auto fm = kcomp::hopfield_field(model, xm);
            for (int row = 0; row < n; ++row)
                CHECK(jac(row, col) == doctest::Approx((fp[row] - fm[row]) / (2.0 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("rk4 integrates a scalar linear system") {
    const kcomp::TimeField decay = [](double, const std::vector<double>& x) {
        return std::vector<double>{-x[0]};
    };
    const auto traj = kcomp::integrate(decay, {1.0}, 0.0, 10.0, 1e-3);
    CHECK(traj.states.back()[0] == doctest::Approx(std::exp(-10.0)).epsilon(1e-8));

    // the quiet-tail criterion fires once the state has decayed far enough
    const auto longer = kcomp::integrate(decay, {1.0}, 0.0, 25.0, 1e-3);
    CHECK(longer.classification == kcomp::TerminalClass::converged);

    // halving the step shrinks the terminal error by about 2^4
    const auto coarse = kcomp::integrate(decay, {1.0}, 0.0, 2.0, 0.1);
    const auto fine = kcomp::integrate(decay, {1.0}, 0.0, 2.0, 0.05);
    const double err_coarse = std::abs(coarse.states.back()[0] - std::exp(-2.0));
    const double err_fine = std::abs(fine.states.back()[0] - std::exp(-2.0));
    CHECK(err_coarse / err_fine > 12.0);
    CHECK(err_coarse / err_fine < 20.0);

    CHECK_THROWS_AS(kcomp::integrate(decay, {1.0}, 0.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("rk4 flags finite-time blowup as diverged") {
    const kcomp::TimeField blowup = [](double, const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0]};
    };
    const auto traj = kcomp::integrate(blowup, {3.0}, 0.0, 5.0, 1e-2);
    CHECK(traj.classification == kcomp::TerminalClass::diverged);
}

TEST_CASE("record stride keeps endpoints") {
    const kcomp::TimeField decay = [](double, const std::vector<double>& x) {
        return std::vector<double>{-x[0]};
    };
    const auto traj = kcomp::integrate(decay, {1.0}, 0.0, 1.0, 1e-3, 100);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0));
    CHECK(traj.times.size() < 15);
}

TEST_CASE("ltv rotation example") {
    const auto example = kcomp::ltv_rotation_example();

    for (double t : {0.0, 1.0, 3.141592653589793, 7.3}) {
        CHECK(example.a(t).trace() == doctest::Approx(-1.5).epsilon(1e-15));
        // 1x1 additive 2-compound equals the trace
        CHECK(kcomp::additive_compound(example.a(t), 2).mat(0, 0) == doctest::Approx(-1.5));
    }

    // transition matrix at coincident times is the identity
    CHECK(kcomp::max_abs_diff(example.transition(2.5, 2.5), Matrix::identity(2)) < 1e-15);

    // Liouville: det Phi(t,0) = exp(-3t/2)
    for (double t : {0.5, 1.0, 2.0, 4.0})
        CHECK(kcomp::determinant(example.transition(t, 0.0)) ==
              doctest::Approx(std::exp(-1.5 * t)).epsilon(1e-12));

    // Phi solves the matrix ODE: dPhi/dt = A(t) Phi (central difference check)
    for (double t : {0.3, 1.7, 4.2}) {
        const double h = 1e-6;
        const Matrix dphi = (example.transition(t + h, 0.0) - example.transition(t - h, 0.0)) * (0.5 / h);
        const Matrix expected = example.a(t) * example.transition(t, 0.0);
        CHECK(kcomp::max_abs_diff(dphi, expected) < 1e-8);
    }

    // numeric integration matches the closed form
    kcomp::Lcg64 rng(72);
    for (int trial = 0; trial < 3; ++trial) {
        const std::vector<double> x0{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto traj = kcomp::integrate(example.field(), x0, 0.0, 10.0, 1e-3);
        const auto exact = example.transition(10.0, 0.0).apply(x0);
        CHECK(kcomp::vec_norm_inf(kcomp::vec_sub(traj.states.back(), exact)) < 1e-6);
    }

    // the contracting line: x0 = (sin t0, cos t0) decays
    for (double t0 : {0.0, 0.9, 2.2}) {
        const std::vector<double> x0{std::sin(t0), std::cos(t0)};
        const auto exact = example.transition(t0 + 12.0, t0).apply(x0);
        CHECK(kcomp::vec_norm_inf(exact) < 1e-6);
        const auto traj = kcomp::integrate(example.field(), x0, t0, t0 + 12.0, 1e-3);
        CHECK(kcomp::vec_norm_inf(traj.states.back()) < 1e-6);
    }
}

TEST_CASE("newton finds the example network equilibria") {
    const HopfieldModel model = example_network();
    const auto field = [&model](const std::vector<double>& x) { return kcomp::hopfield_field(model, x); };
    const auto jac = [&model](const std::vector<double>& x) { return kcomp::hopfield_jacobian(model, x); };

    const auto e1 = kcomp::find_equilibrium(field, jac, {0.0, 0.0, 0.0});
    REQUIRE(e1.converged);
    CHECK(kcomp::vec_norm_inf(e1.x) < 1e-10);

    const auto e2 = kcomp::find_equilibrium(field, jac, {1.0, 1.0, 1.0});
    REQUIRE(e2.converged);
    for (double v : e2.x) CHECK(v == doctest::Approx(1.2447).epsilon(1e-4));
    CHECK(kcomp::vec_norm_inf(field(e2.x)) < 1e-10);

    const auto e3 = kcomp::find_equilibrium(field, jac, {-1.0, -1.0, -1.0});
    REQUIRE(e3.converged);
    for (int i = 0; i < 3; ++i) CHECK(e3.x[i] == doctest::Approx(-e2.x[i]).epsilon(1e-10));

    // equilibrium sign tests
    CHECK(kcomp::determinant(kcomp::hopfield_jacobian(model, e1.x)) > 0.0);
    CHECK(kcomp::determinant(kcomp::hopfield_jacobian(model, e2.x)) < 0.0);

    // the deduplicated protocol finds exactly the three of them
    const auto all = kcomp::hopfield_equilibria(model);
    CHECK(all.size() == 3);
}

TEST_CASE("convergence experiment on the example network") {
    const HopfieldModel model = example_network();
    const auto equilibria = kcomp::hopfield_equilibria(model);
    REQUIRE(equilibria.size() == 3);

    const auto summary = kcomp::convergence_experiment(model, 8, {-3.0, 3.0}, 35.0, 1e-3, 7,
                                                       equilibria,
                                                       {{-0.02, -0.02, 0.04}, {1.0, 0.4, 0.5}});
    CHECK(summary.trials == 8);
    CHECK(summary.converged == 8);
    CHECK(summary.diverged == 0);
    CHECK(summary.bounded_nonconverged == 0);
    for (const auto& outcome : summary.outcomes) {
        CHECK(outcome.equilibrium_id >= 0);
        CHECK(outcome.terminal_distance < 1e-4);
    }

    // an initial condition resting exactly on e1 = 0 stays there
    const auto at_origin = kcomp::convergence_experiment(model, 1, {-3.0, 3.0}, 5.0, 1e-3, 1,
                                                         equilibria, {{0.0, 0.0, 0.0}});
    REQUIRE(at_origin.outcomes.size() == 1);
    CHECK(at_origin.outcomes[0].classification == kcomp::TerminalClass::converged);
    CHECK(kcomp::vec_norm_inf(equilibria[at_origin.outcomes[0].equilibrium_id]) < 1e-10);

    // odd symmetry: mirrored initial conditions land on mirrored limits
    const std::vector<double> x0{1.3, -0.4, 0.8};
    std::vector<double> neg_x0(3);
    for (int i = 0; i < 3; ++i) neg_x0[i] = -x0[i];
    const auto pair = kcomp::convergence_experiment(model, 2, {-3.0, 3.0}, 35.0, 1e-3, 2, equilibria,
                                                    {x0, neg_x0});
    REQUIRE(pair.outcomes.size() == 2);
    for (int i = 0; i < 3; ++i)
        CHECK(pair.outcomes[0].terminal_state[i] ==
              doctest::Approx(-pair.outcomes[1].terminal_state[i]).epsilon(1e-9));
}

TEST_CASE("2-compound variational dynamics contract volumes at the certified rate") {
    // integrate (x, y) jointly with ydot = J^[2](x(t)) y; the certificate rate
    // bounds the average slope of log ||y||
    const HopfieldModel model = example_network();
    const auto cert = kcomp::hopfield_certify(model, 2, {1.0, 1.0, 1.0}, 0.0);
    REQUIRE(cert.passed);
    const double eta = cert.rate_eta;

    const kcomp::TimeField augmented = [&model](double, const std::vector<double>& z) {
        const std::vector<double> x(z.begin(), z.begin() + 3);
        const std::vector<double> y(z.begin() + 3, z.end());
        const auto dx = kcomp::hopfield_field(model, x);
        const Matrix j2 = kcomp::additive_compound(kcomp::hopfield_jacobian(model, x), 2).mat;
        const auto dy = j2.apply(y);
        std::vector<double> dz(dx);
        dz.insert(dz.end(), dy.begin(), dy.end());
        return dz;
    };

    kcomp::Lcg64 rng(73);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> z0(6);
        for (int i = 0; i < 3; ++i) z0[i] = rng.uniform(-2.0, 2.0);
        for (int i = 3; i < 6; ++i) z0[i] = rng.uniform(-1.0, 1.0);
        const double horizon = 20.0;
        const auto traj = kcomp::integrate(augmented, z0, 0.0, horizon, 1e-3, 1000);
        const auto y_norm = [](const std::vector<double>& z) {
            return std::max({std::abs(z[3]), std::abs(z[4]), std::abs(z[5])});
        };
        const double slope =
            (std::log(y_norm(traj.states.back())) - std::log(y_norm(traj.states.front()))) / horizon;
        CHECK(slope <= -eta + 0.1);
    }
}

TEST_CASE("trajectory csv export") {
    const kcomp::TimeField decay = [](double, const std::vector<double>& x) {
        return std::vector<double>{-x[0], -2.0 * x[1]};
    };
    const auto traj = kcomp::integrate(decay, {1.0, 2.0}, 0.0, 1.0, 0.25);
    const std::string path =
        (std::filesystem::temp_directory_path() / "kcomp_test_traj.csv").string();
    kcomp::write_trajectory_csv(traj, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first.substr(0, 2) == "0,");
    int lines = 1;
    std::string rest;
    while (std::getline(in, rest)) ++lines;
    CHECK(lines == static_cast<int>(traj.times.size()));
    std::remove(path.c_str());
}
