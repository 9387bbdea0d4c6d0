#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kcomp/matrix.hpp"

namespace kcomp {

/// Per-neuron activation a_i·tanh(b_i·z); derivative bounds follow as
/// m_i = 0, M_i = a_i·b_i for a_i, b_i > 0.
struct ActivationFamily {
    std::vector<double> gain;   // a_i
    std::vector<double> slope;  // b_i

    double value(int i, double z) const;
    double derivative(int i, double z) const;
};

/// Hopfield network ẋ_i = −x_i/r_i + Σ_j w_ij φ_j(x_j) + u_i.
struct HopfieldModel {
    int n = 0;
    std::vector<double> r;        // positive time constants
    Matrix w;                     // connection matrix
    std::vector<double> u;        // constant input
    ActivationFamily activation;  // defaults to tanh (a=b=1)
    std::vector<double> deriv_lower;  // m_i
    std::vector<double> deriv_upper;  // M_i

    /// Uniform-r tanh network with given weights and zero input.
    static HopfieldModel tanh_network(int n, double r, const Matrix& w);

    void validate() const;
};

std::vector<double> hopfield_field(const HopfieldModel& model, const std::vector<double>& x);
/// J(x) = −diag(1/r) + W·diag(φ′₁(x₁),…,φ′_n(x_n)).
Matrix hopfield_jacobian(const HopfieldModel& model, const std::vector<double>& x);

enum class TerminalClass { converged, bounded_nonconverged, diverged };

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    TerminalClass classification = TerminalClass::bounded_nonconverged;
    int equilibrium_id = -1;        // set by convergence classification
    double terminal_distance = 0.0;

    const std::vector<double>& terminal_state() const { return states.back(); }
};

using TimeField = std::function<std::vector<double>(double, const std::vector<double>&)>;

/// Classical fixed-step RK4. Every `record_stride`-th point is stored (plus
/// the final one). A non-finite state stops integration with the trajectory
/// classified as diverged; a quiet tail (‖x(T)−x(T−step)‖∞ < 1e−8) marks a
/// convergence candidate.
Trajectory integrate(const TimeField& field, std::vector<double> x0, double t0, double t1,
                     double step, int record_stride = 1);

struct NewtonResult {
    std::vector<double> x;
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
};

using StateField = std::function<std::vector<double>(const std::vector<double>&)>;
using StateJacobian = std::function<Matrix(const std::vector<double>&)>;

/// Damped Newton for f(x*) = 0; tolerance 1e−12 on ‖f‖∞, at most 100
/// iterations; `converged` requires ‖f(x*)‖∞ < 1e−10.
NewtonResult find_equilibrium(const StateField& field, const StateJacobian& jacobian,
                              std::vector<double> x0);

struct TrialOutcome {
    TerminalClass classification = TerminalClass::bounded_nonconverged;
    int equilibrium_id = -1;
    double terminal_distance = 0.0;
    std::vector<double> initial_state;
    std::vector<double> terminal_state;
};

struct ConvergenceSummary {
    int trials = 0;
    int converged = 0;
    int bounded_nonconverged = 0;
    int diverged = 0;
    std::vector<std::vector<double>> equilibria;
    std::vector<int> counts_per_equilibrium;
    std::vector<TrialOutcome> outcomes;
};

/// Integrates `n_trials` trajectories (any fixed initial conditions first,
/// then LCG-seeded uniform draws from `ic_box` = [lo,hi]^n) and classifies
/// each terminal state against `equilibria`: converged when the distance is
/// below `match_tol` (∞-norm). When `csv_dir` is set, each trajectory is
/// written to <csv_dir>/trajectory_<i>.csv with rows "t,x1,…,xn".
ConvergenceSummary convergence_experiment(const HopfieldModel& model, int n_trials,
                                          std::pair<double, double> ic_box, double horizon,
                                          double step, std::uint64_t seed,
                                          const std::vector<std::vector<double>>& equilibria,
                                          const std::vector<std::vector<double>>& fixed_initial = {},
                                          const std::optional<std::string>& csv_dir = std::nullopt,
                                          double match_tol = 1e-4);

/// Deterministic protocol for locating Hopfield equilibria: Newton from 0,
/// +c·(1,…,1) and −c·(1,…,1), c ∈ {0.5, 1.5, 3}, deduplicated.
std::vector<std::vector<double>> hopfield_equilibria(const HopfieldModel& model);

void write_trajectory_csv(const Trajectory& t, const std::string& path);

/// The 2-D uniformly stable rotation LTV with A^[2](t) = tr A(t) = −3/2:
/// A(t) = ½[[−3+3cos²t, 2−3·cos t·sin t], [−2−3·cos t·sin t, −3+3sin²t]],
/// with closed-form transition matrix Φ(t,t0).
struct LtvRotationExample {
    Matrix a(double t) const;
    Matrix transition(double t, double t0) const;
    TimeField field() const;
};

LtvRotationExample ltv_rotation_example();

}  // namespace kcomp
