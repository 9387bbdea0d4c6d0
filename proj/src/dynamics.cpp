#include "kcomp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "kcomp/linalg.hpp"
#include "kcomp/rng.hpp"

namespace kcomp {

double ActivationFamily::value(int i, double z) const { return gain[i] * std::tanh(slope[i] * z); }

double ActivationFamily::derivative(int i, double z) const {
    const double th = std::tanh(slope[i] * z);
    return gain[i] * slope[i] * (1.0 - th * th);
}

HopfieldModel HopfieldModel::tanh_network(int n, double r, const Matrix& w) {
    HopfieldModel model;
    model.n = n;
    model.r.assign(n, r);
    model.w = w;
    model.u.assign(n, 0.0);
    model.activation.gain.assign(n, 1.0);
    model.activation.slope.assign(n, 1.0);
    model.deriv_lower.assign(n, 0.0);
    model.deriv_upper.assign(n, 1.0);
    model.validate();
    return model;
}

void HopfieldModel::validate() const {
    if (n < 1) throw std::domain_error("HopfieldModel: n must be positive");
    if (static_cast<int>(r.size()) != n || static_cast<int>(u.size()) != n)
        throw std::domain_error("HopfieldModel: r/u size mismatch");
    if (w.rows() != n || w.cols() != n) throw std::domain_error("HopfieldModel: W shape mismatch");
    for (double ri : r)
        if (ri <= 0.0) throw std::domain_error("HopfieldModel: time constants must be positive");
    if (static_cast<int>(activation.gain.size()) != n || static_cast<int>(activation.slope.size()) != n)
        throw std::domain_error("HopfieldModel: activation parameter size mismatch");
    if (static_cast<int>(deriv_lower.size()) != n || static_cast<int>(deriv_upper.size()) != n)
        throw std::domain_error("HopfieldModel: derivative bounds missing");
    for (int i = 0; i < n; ++i)
        if (deriv_lower[i] < 0.0 || deriv_lower[i] > deriv_upper[i])
            throw std::domain_error("HopfieldModel: need 0 <= m_i <= M_i");
}

std::vector<double> hopfield_field(const HopfieldModel& model, const std::vector<double>& x) {
    const int n = model.n;
    if (static_cast<int>(x.size()) != n) throw std::domain_error("hopfield_field: state size mismatch");
    std::vector<double> phi(n);
    for (int j = 0; j < n; ++j) phi[j] = model.activation.value(j, x[j]);
    std::vector<double> dx(n);
    for (int i = 0; i < n; ++i) {
        double s = -x[i] / model.r[i] + model.u[i];
        for (int j = 0; j < n; ++j) s += model.w(i, j) * phi[j];
        dx[i] = s;
    }
    return dx;
}

Matrix hopfield_jacobian(const HopfieldModel& model, const std::vector<double>& x) {
    const int n = model.n;
    if (static_cast<int>(x.size()) != n) throw std::domain_error("hopfield_jacobian: state size mismatch");
    Matrix j(n, n);
    for (int col = 0; col < n; ++col) {
        const double d = model.activation.derivative(col, x[col]);
        for (int row = 0; row < n; ++row) j(row, col) = model.w(row, col) * d;
    }
    for (int i = 0; i < n; ++i) j(i, i) -= 1.0 / model.r[i];
    return j;
}

Trajectory integrate(const TimeField& field, std::vector<double> x0, double t0, double t1,
                     double step, int record_stride) {
    if (step <= 0.0) throw std::domain_error("integrate: step must be positive");
    if (!(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1))
        throw std::domain_error("integrate: bad time span");
    if (record_stride < 1) record_stride = 1;

    const int n = static_cast<int>(x0.size());
    const auto steps = static_cast<long long>(std::ceil((t1 - t0) / step - 1e-12));
    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(steps / record_stride) + 2);
    traj.states.reserve(static_cast<std::size_t>(steps / record_stride) + 2);
    traj.times.push_back(t0);
    traj.states.push_back(x0);

    std::vector<double> x = std::move(x0);
    std::vector<double> prev = x, k1, k2, k3, k4, tmp(n);
    double t = t0;
    bool finite = true;
    for (long long i = 0; i < steps; ++i) {
        const double h = std::min(step, t1 - t);
        prev = x;
        k1 = field(t, x);
        for (int d = 0; d < n; ++d) tmp[d] = x[d] + 0.5 * h * k1[d];
        k2 = field(t + 0.5 * h, tmp);
        for (int d = 0; d < n; ++d) tmp[d] = x[d] + 0.5 * h * k2[d];
        k3 = field(t + 0.5 * h, tmp);
        for (int d = 0; d < n; ++d) tmp[d] = x[d] + h * k3[d];
        k4 = field(t + h, tmp);
        for (int d = 0; d < n; ++d) x[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
        t += h;

        finite = std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
        if (!finite) break;
        if ((i + 1) % record_stride == 0 || i + 1 == steps) {
            traj.times.push_back(t);
            traj.states.push_back(x);
        }
    }

    if (!finite) {
        traj.classification = TerminalClass::diverged;
        return traj;
    }
    double tail = 0.0;
    for (int d = 0; d < n; ++d) tail = std::max(tail, std::abs(x[d] - prev[d]));
    traj.classification = tail < 1e-8 ? TerminalClass::converged : TerminalClass::bounded_nonconverged;
    return traj;
}

NewtonResult find_equilibrium(const StateField& field, const StateJacobian& jacobian,
                              std::vector<double> x0) {
    constexpr int kMaxIterations = 100;
    constexpr double kTol = 1e-12;

    NewtonResult result;
    result.x = std::move(x0);
    std::vector<double> f = field(result.x);
    double fnorm = vec_norm_inf(f);
    for (int it = 0; it < kMaxIterations && fnorm >= kTol; ++it) {
        const Matrix j = jacobian(result.x);
        const LuFactors lu = lu_factor(j);
        if (lu.singular) break;
        std::vector<double> rhs(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = -f[i];
        const std::vector<double> delta = lu_solve(lu, rhs);

        // backtracking damping on ‖f‖∞
        double lambda = 1.0;
        bool improved = false;
        for (int half = 0; half < 30; ++half) {
            std::vector<double> candidate(result.x);
            for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] += lambda * delta[i];
            const std::vector<double> fc = field(candidate);
            const double cnorm = vec_norm_inf(fc);
            if (cnorm < fnorm) {
                result.x = std::move(candidate);
                f = fc;
                fnorm = cnorm;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        result.iterations = it + 1;
        if (!improved) break;
    }
    result.residual = fnorm;
    result.converged = fnorm < 1e-10;
    return result;
}

std::vector<std::vector<double>> hopfield_equilibria(const HopfieldModel& model) {
    const StateField field = [&](const std::vector<double>& x) { return hopfield_field(model, x); };
    const StateJacobian jac = [&](const std::vector<double>& x) { return hopfield_jacobian(model, x); };

    std::vector<std::vector<double>> starts;
    starts.emplace_back(model.n, 0.0);
    for (double c : {0.5, 1.5, 3.0}) {
        starts.emplace_back(model.n, c);
        starts.emplace_back(model.n, -c);
    }

    std::vector<std::vector<double>> found;
    for (const auto& x0 : starts) {
        const NewtonResult res = find_equilibrium(field, jac, x0);
        if (!res.converged) continue;
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& e) {
            return vec_norm_inf(vec_sub(e, res.x)) < 1e-6;
        });
        if (!duplicate) found.push_back(res.x);
    }
    return found;
}

void write_trajectory_csv(const Trajectory& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    out.precision(17);
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        out << t.times[i];
        for (double v : t.states[i]) out << ',' << v;
        out << '\n';
    }
}

ConvergenceSummary convergence_experiment(const HopfieldModel& model, int n_trials,
                                          std::pair<double, double> ic_box, double horizon,
                                          double step, std::uint64_t seed,
                                          const std::vector<std::vector<double>>& equilibria,
                                          const std::vector<std::vector<double>>& fixed_initial,
                                          const std::optional<std::string>& csv_dir,
                                          double match_tol) {
    if (n_trials < 0) throw std::domain_error("convergence_experiment: negative trial count");
    ConvergenceSummary summary;
    summary.trials = n_trials;
    summary.equilibria = equilibria;
    summary.counts_per_equilibrium.assign(equilibria.size(), 0);

    if (csv_dir) std::filesystem::create_directories(*csv_dir);

    Lcg64 rng(seed);
    const TimeField field = [&](double, const std::vector<double>& x) { return hopfield_field(model, x); };
    for (int trial = 0; trial < n_trials; ++trial) {
        std::vector<double> x0;
        if (trial < static_cast<int>(fixed_initial.size())) {
            x0 = fixed_initial[trial];
            if (static_cast<int>(x0.size()) != model.n)
                throw std::domain_error("convergence_experiment: fixed initial condition size mismatch");
        } else {
            x0.resize(model.n);
            for (double& v : x0) v = rng.uniform(ic_box.first, ic_box.second);
        }

        Trajectory traj = integrate(field, x0, 0.0, horizon, step);
        TrialOutcome outcome;
        outcome.initial_state = std::move(x0);
        outcome.terminal_state = traj.terminal_state();
        outcome.classification = traj.classification;

        if (traj.classification != TerminalClass::diverged) {
            double best = std::numeric_limits<double>::infinity();
            int best_id = -1;
            for (std::size_t e = 0; e < equilibria.size(); ++e) {
                const double d = vec_norm_inf(vec_sub(outcome.terminal_state, equilibria[e]));
                if (d < best) {
                    best = d;
                    best_id = static_cast<int>(e);
                }
            }
            if (best_id >= 0 && best < match_tol) {
                outcome.classification = TerminalClass::converged;
                outcome.equilibrium_id = best_id;
                outcome.terminal_distance = best;
            } else {
                outcome.classification = TerminalClass::bounded_nonconverged;
                outcome.terminal_distance = best;
            }
        }

        switch (outcome.classification) {
            case TerminalClass::converged:
                ++summary.converged;
                ++summary.counts_per_equilibrium[outcome.equilibrium_id];
                break;
            case TerminalClass::bounded_nonconverged: ++summary.bounded_nonconverged; break;
            case TerminalClass::diverged: ++summary.diverged; break;
        }
        if (csv_dir)
            write_trajectory_csv(traj, *csv_dir + "/trajectory_" + std::to_string(trial) + ".csv");
        summary.outcomes.push_back(std::move(outcome));
    }
    return summary;
}

Matrix LtvRotationExample::a(double t) const {
    const double c = std::cos(t), s = std::sin(t);
    return Matrix{{0.5 * (-3.0 + 3.0 * c * c), 0.5 * (2.0 - 3.0 * c * s)},
                  {0.5 * (-2.0 - 3.0 * c * s), 0.5 * (-3.0 + 3.0 * s * s)}};
}

Matrix LtvRotationExample::transition(double t, double t0) const {
    const double c = std::cos(t), s = std::sin(t);
    const double c0 = std::cos(t0), s0 = std::sin(t0);
    const Matrix left{{c, s}, {-s, c}};
    const Matrix mid = Matrix::diagonal({1.0, std::exp(-1.5 * (t - t0))});
    const Matrix right{{c0, -s0}, {s0, c0}};
    return left * mid * right;
}

TimeField LtvRotationExample::field() const {
    return [example = *this](double t, const std::vector<double>& x) { return example.a(t).apply(x); };
}

LtvRotationExample ltv_rotation_example() { return {}; }

}  // namespace kcomp
