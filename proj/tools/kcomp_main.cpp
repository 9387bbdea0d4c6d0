// kcomp: compound-matrix calculus, log norms, and k-contraction certificates.
//
// Subcommands: compound, lognorm, tau, certify, duality-check, simulate.
// Reports go to stdout as JSON with sorted keys and 17-significant-digit
// floats so that identical inputs produce byte-identical output; diagnostics
// and timing go to stderr. Exit codes: 0 ok/pass, 1 certificate or identity
// check failed, 2 parse error, 3 domain error, 4 internal error.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcomp/certify.hpp"
#include "kcomp/compounds.hpp"
#include "kcomp/duality.hpp"
#include "kcomp/dynamics.hpp"
#include "kcomp/io.hpp"
#include "kcomp/linalg.hpp"
#include "kcomp/lognorms.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

void dump_json(const json& j, std::ostream& os) {
    switch (j.type()) {
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ',';
                first = false;
                os << json(key).dump() << ':';
                dump_json(value, os);
            }
            os << '}';
            break;
        }
        case json::value_t::array: {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ',';
                dump_json(j[i], os);
            }
            os << ']';
            break;
        }
        case json::value_t::number_float: {
            char buf[40];
            const double v = j.get<double>();
            std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
            os << buf;
            break;
        }
        default:
            os << j.dump();
            break;
    }
}

json matrix_to_json(const kcomp::Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json certificate_to_json(const kcomp::Certificate& c) {
    json j;
    j["method"] = kcomp::to_string(c.method);
    j["k"] = c.k;
    if (c.p) j["p"] = kcomp::to_string(*c.p);
    j["bound"] = c.bound;
    j["rate_eta"] = c.rate_eta;
    j["passed"] = c.passed;
    j["mode"] = c.sampled ? "sampled" : "exact";
    json w = json::object();
    if (c.witness.weights) w["weights"] = *c.witness.weights;
    if (c.witness.state) w["state"] = *c.witness.state;
    if (c.witness.time) w["time"] = *c.witness.time;
    if (c.witness.index) w["index"] = *c.witness.index;
    if (!c.witness.note.empty()) w["note"] = c.witness.note;
    j["witness"] = std::move(w);
    return j;
}

struct ReportBuilder {
    json inputs = json::object();
    json results = json::object();
    std::string command;

    void add_input(const std::string& path) { inputs[path] = kcomp::file_digest(path); }

    void emit() const {
        json report;
        report["command"] = command;
        report["inputs"] = inputs;
        report["results"] = results;
        report["versions"] = json{{"format", 1}, {"kcomp", kVersion}};
        dump_json(report, std::cout);
        std::cout << '\n';
    }
};

kcomp::LogNormP parse_p(const std::string& s) {
    if (s == "1") return kcomp::LogNormP::one;
    if (s == "2") return kcomp::LogNormP::two;
    if (s == "inf") return kcomp::LogNormP::inf;
    throw kcomp::ParseError("invalid p: '" + s + "' (expected 1, 2 or inf)");
}

std::string out_path(const std::string& path) {
    std::filesystem::path target(path);
    const char* dir = std::getenv("KCOMP_OUT_DIR");
    if (dir && *dir && !target.is_absolute()) target = std::filesystem::path(dir) / target;
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    return target.string();
}

// ---------------------------------------------------------------------------

struct CompoundArgs {
    std::string input, kind = "mult", out;
    int k = 1;
};

int run_compound(const CompoundArgs& args, ReportBuilder& report) {
    report.add_input(args.input);
    const kcomp::Matrix a = kcomp::read_matrix_file(args.input);
    kcomp::CompoundMatrix comp;
    if (args.kind == "mult") {
        comp = kcomp::multiplicative_compound(a, args.k);
    } else if (args.kind == "add") {
        comp = kcomp::additive_compound(a, args.k);
    } else {
        throw kcomp::ParseError("invalid --kind: '" + args.kind + "' (expected mult or add)");
    }
    report.results["kind"] = args.kind;
    report.results["k"] = args.k;
    report.results["rows"] = comp.mat.rows();
    report.results["cols"] = comp.mat.cols();
    report.results["compound"] = matrix_to_json(comp.mat);
    if (!args.out.empty()) {
        const std::string path = out_path(args.out);
        kcomp::write_matrix_file(comp.mat, path);
        report.results["written_to"] = path;
    }
    return 0;
}

struct LogNormArgs {
    std::string input, p = "2", scaling;
    int k = 0;  // 0: plain mu(A)
};

int run_lognorm(const LogNormArgs& args, ReportBuilder& report) {
    report.add_input(args.input);
    const kcomp::Matrix a = kcomp::read_matrix_file(args.input);
    const kcomp::LogNormP p = parse_p(args.p);
    std::optional<kcomp::Matrix> scaling;
    if (!args.scaling.empty()) {
        report.add_input(args.scaling);
        scaling = kcomp::read_matrix_file(args.scaling);
    }
    if (args.k < 0) throw kcomp::ParseError("--k must be positive");
    report.results["p"] = args.p;
    if (args.k > 0) {
        // mu_{p,H^(k)}(A^[k]) via the closed forms on H A H^{-1}
        kcomp::Matrix work = a;
        if (scaling) work = (*scaling) * a * kcomp::inverse(*scaling);
        report.results["k"] = args.k;
        report.results["value"] = kcomp::mu_compound_direct(work, args.k, p);
    } else {
        report.results["value"] = kcomp::mu(a, kcomp::LogNormSpec{p, scaling});
    }
    return 0;
}

struct TauArgs {
    std::string input, p = "inf", scaling;
    int k = 1;
};

int run_tau(const TauArgs& args, ReportBuilder& report) {
    report.add_input(args.input);
    const kcomp::Matrix a = kcomp::read_matrix_file(args.input);
    std::optional<kcomp::Matrix> scaling;
    if (!args.scaling.empty()) {
        report.add_input(args.scaling);
        scaling = kcomp::read_matrix_file(args.scaling);
    }
    report.results["k"] = args.k;
    report.results["p"] = args.p;
    report.results["value"] = kcomp::tau(a, kcomp::TauSpec{parse_p(args.p), args.k, scaling});
    return 0;
}

struct CertifyArgs {
    std::string model, method, input, config, weights_file, scaling_file, q_file, p = "inf";
    int k = 2;
    double eta = 0.0;
    double theta = 0.0;
    bool theta_given = false;
    double box_lo = -3.0, box_hi = 3.0;
    int grid_points = 7;
    double t_lo = 0.0, t_hi = 6.283185307179586, t_count = 101;
    std::vector<double> start;
};

int run_certify(const CertifyArgs& args, ReportBuilder& report) {
    std::optional<kcomp::Matrix> scaling;
    if (!args.scaling_file.empty()) {
        report.add_input(args.scaling_file);
        scaling = kcomp::read_matrix_file(args.scaling_file);
    }
    std::optional<std::vector<double>> weights;
    if (!args.weights_file.empty()) {
        report.add_input(args.weights_file);
        weights = kcomp::read_vector_file(args.weights_file);
    }
    const kcomp::LogNormP p = parse_p(args.p);

    kcomp::Certificate cert;
    report.results["model"] = args.model;

    if (args.model == "matrix") {
        if (args.input.empty()) throw kcomp::ParseError("--model matrix requires --input");
        report.add_input(args.input);
        const kcomp::Matrix a = kcomp::read_matrix_file(args.input);
        const int n = a.rows();
        if (args.method == "direct" || args.method == "tau") {
            const auto sampler = kcomp::JacobianSampler::constant(a);
            cert = args.method == "direct"
                       ? kcomp::certify_direct(sampler, args.k, p, scaling, args.eta)
                       : kcomp::certify_tau(sampler, args.k, p, scaling, args.eta);
        } else if (args.method == "trace-dominance") {
            std::vector<double> d;
            if (weights) {
                d = *weights;
            } else if (auto found = kcomp::search_diagonal_weights(a, args.k)) {
                d = *found;
                report.results["weights_found"] = true;
            } else {
                d.assign(n, 1.0);
                report.results["weights_found"] = false;
            }
            cert = kcomp::trace_dominance(a, args.k, d, args.eta);
        } else if (args.method == "smith") {
            kcomp::Matrix q = kcomp::Matrix::identity(n);
            if (!args.q_file.empty()) {
                report.add_input(args.q_file);
                q = kcomp::read_matrix_file(args.q_file);
            }
            if (!args.theta_given) throw kcomp::ParseError("--method smith requires --theta");
            cert = kcomp::ltv_smith_certify({{0.0, a}}, q, {args.theta}, args.k, args.eta);
        } else if (args.method == "li-wang") {
            const bool ok = kcomp::hurwitz_via_2compound(a);
            cert.method = kcomp::CertifyMethod::li_wang;
            cert.k = 2;
            cert.passed = ok;
            double worst = -1e308;
            for (const auto& ev : kcomp::eigenvalues(kcomp::additive_compound(a, 2).mat))
                worst = std::max(worst, ev.real());
            cert.bound = worst;
            cert.rate_eta = std::max(0.0, -worst);
            cert.witness.note = "spectral abscissa of the 2-additive compound; sign test on det";
        } else if (args.method == "local-stability") {
            const bool ok = kcomp::local_stability_compound_free(a, p, scaling);
            cert.method = kcomp::CertifyMethod::local_stability;
            cert.k = 2;
            cert.p = p;
            cert.passed = ok;
            cert.bound = kcomp::tau(a, kcomp::TauSpec{p, 2, scaling});
            cert.rate_eta = std::max(0.0, -cert.bound);
        } else {
            throw kcomp::ParseError("method '" + args.method + "' not available for --model matrix");
        }
    } else if (args.model == "hopfield") {
        if (args.config.empty()) throw kcomp::ParseError("--model hopfield requires --config");
        report.add_input(args.config);
        const kcomp::HopfieldConfig config = kcomp::read_hopfield_config(args.config);
        const kcomp::HopfieldModel& model = config.model;
        if (args.method == "hopfield") {
            const std::vector<double> d = weights ? *weights : std::vector<double>(model.n, 1.0);
            cert = kcomp::hopfield_certify(model, args.k, d, args.eta);
        } else if (args.method == "direct" || args.method == "tau") {
            const auto sampler = kcomp::JacobianSampler::on_grid(
                model.n,
                [&model](double, const std::vector<double>& x) { return kcomp::hopfield_jacobian(model, x); },
                {args.box_lo, args.box_hi}, args.grid_points, {0.0});
            report.results["sampling"] = json{{"box_lo", args.box_lo},
                                              {"box_hi", args.box_hi},
                                              {"points_per_axis", args.grid_points},
                                              {"samples", sampler.samples.size()}};
            cert = args.method == "direct"
                       ? kcomp::certify_direct(sampler, args.k, p, scaling, args.eta)
                       : kcomp::certify_tau(sampler, args.k, p, scaling, args.eta);
        } else if (args.method == "local-stability" || args.method == "li-wang") {
            std::vector<double> x0 = args.start;
            if (x0.empty()) x0.assign(model.n, 1.0);
            if (static_cast<int>(x0.size()) != model.n)
                throw kcomp::ParseError("--start needs n values");
            const auto res = kcomp::find_equilibrium(
                [&model](const std::vector<double>& x) { return kcomp::hopfield_field(model, x); },
                [&model](const std::vector<double>& x) { return kcomp::hopfield_jacobian(model, x); }, x0);
            if (!res.converged) throw std::domain_error("Newton did not locate an equilibrium from --start");
            report.results["equilibrium"] = res.x;
            const kcomp::Matrix j = kcomp::hopfield_jacobian(model, res.x);
            if (args.method == "local-stability") {
                cert.method = kcomp::CertifyMethod::local_stability;
                cert.k = 2;
                cert.p = p;
                cert.passed = kcomp::local_stability_compound_free(j, p, scaling);
                cert.bound = kcomp::tau(j, kcomp::TauSpec{p, 2, scaling});
                cert.rate_eta = std::max(0.0, -cert.bound);
                cert.witness.state = res.x;
            } else {
                cert.method = kcomp::CertifyMethod::li_wang;
                cert.k = 2;
                cert.passed = kcomp::hurwitz_via_2compound(j);
                double worst = -1e308;
                for (const auto& ev : kcomp::eigenvalues(kcomp::additive_compound(j, 2).mat))
                    worst = std::max(worst, ev.real());
                cert.bound = worst;
                cert.rate_eta = std::max(0.0, -worst);
                cert.witness.state = res.x;
            }
        } else {
            throw kcomp::ParseError("method '" + args.method + "' not available for --model hopfield");
        }
    } else if (args.model == "ltv") {
        const kcomp::LtvRotationExample example = kcomp::ltv_rotation_example();
        std::vector<double> times;
        const int count = std::max(2, static_cast<int>(args.t_count));
        for (int i = 0; i < count; ++i)
            times.push_back(args.t_lo + (args.t_hi - args.t_lo) * i / (count - 1));
        report.results["sampling"] =
            json{{"t_lo", args.t_lo}, {"t_hi", args.t_hi}, {"samples", times.size()}};
        if (args.method == "direct" || args.method == "tau") {
            kcomp::JacobianSampler sampler;
            sampler.n = 2;
            sampler.jacobian = [example](double t, const std::vector<double>&) { return example.a(t); };
            for (double t : times) sampler.samples.push_back({t, {0.0, 0.0}});
            cert = args.method == "direct"
                       ? kcomp::certify_direct(sampler, args.k, p, scaling, args.eta)
                       : kcomp::certify_tau(sampler, args.k, p, scaling, args.eta);
        } else if (args.method == "smith") {
            kcomp::Matrix q = kcomp::Matrix::identity(2);
            if (!args.q_file.empty()) {
                report.add_input(args.q_file);
                q = kcomp::read_matrix_file(args.q_file);
            }
            if (!args.theta_given) throw kcomp::ParseError("--method smith requires --theta");
            std::vector<std::pair<double, kcomp::Matrix>> samples;
            for (double t : times) samples.emplace_back(t, example.a(t));
            cert = kcomp::ltv_smith_certify(samples, q, std::vector<double>(times.size(), args.theta),
                                            args.k, args.eta);
        } else {
            throw kcomp::ParseError("method '" + args.method + "' not available for --model ltv");
        }
    } else {
        throw kcomp::ParseError("invalid --model: '" + args.model + "'");
    }

    report.results["certificate"] = certificate_to_json(cert);
    return cert.passed ? 0 : 1;
}

struct DualityArgs {
    std::string input, which = "add";
    int k = 1;
};

int run_duality_check(const DualityArgs& args, ReportBuilder& report) {
    report.add_input(args.input);
    const kcomp::Matrix a = kcomp::read_matrix_file(args.input);
    if (!a.is_square()) throw std::domain_error("duality-check: matrix must be square");
    const int k = args.k;
    report.results["k"] = k;
    report.results["which"] = args.which;
    bool passed = false;

    if (args.which == "mult") {
        const double det = kcomp::determinant(a);
        const kcomp::Matrix lhs = kcomp::multiplicative_compound(a, k).mat.transpose() *
                                  kcomp::kth_adjugate(a, k);
        double residual = 0.0;
        for (int i = 0; i < lhs.rows(); ++i)
            for (int j = 0; j < lhs.cols(); ++j)
                residual = std::max(residual, std::abs(lhs(i, j) - (i == j ? det : 0.0)));
        const double tol = 1e-8 * std::max(1.0, std::abs(det));
        passed = residual < tol;
        report.results["residual"] = residual;
        report.results["tolerance"] = tol;
        report.results["det"] = det;
    } else if (args.which == "add") {
        const double residual = kcomp::additive_duality_residual(a, k);
        const double tol = 1e-10 * std::max(1.0, a.norm_inf());
        passed = residual < tol;
        report.results["residual"] = residual;
        report.results["tolerance"] = tol;
    } else if (args.which == "exp") {
        const kcomp::Matrix lhs = kcomp::multiplicative_compound(kcomp::expm(a), k).mat.transpose();
        const kcomp::Matrix rhs = kcomp::exp_compound_via_duality(a, k);
        const double residual = kcomp::max_abs_diff(lhs, rhs) / std::max(1.0, lhs.max_abs());
        const double tol = 1e-7;
        passed = residual < tol;
        report.results["residual"] = residual;
        report.results["tolerance"] = tol;
    } else if (args.which == "mu") {
        const double tol = 1e-9 * std::max(1.0, a.norm_inf());
        passed = true;
        json values = json::object();
        for (const auto p : {kcomp::LogNormP::one, kcomp::LogNormP::two, kcomp::LogNormP::inf}) {
            const auto [lhs, rhs] = kcomp::mu_duality_equality(a, k, p);
            json entry;
            entry["lhs"] = lhs;
            entry["rhs"] = rhs;
            entry["gap"] = std::abs(lhs - rhs);
            values[kcomp::to_string(p)] = std::move(entry);
            passed = passed && std::abs(lhs - rhs) <= tol;
        }
        report.results["tolerance"] = tol;
        report.results["values"] = std::move(values);
    } else {
        throw kcomp::ParseError("invalid --which: '" + args.which + "' (mult, add, exp or mu)");
    }
    report.results["passed"] = passed;
    return passed ? 0 : 1;
}

struct SimulateArgs {
    std::string config, csv_dir;
    int trials = 0;
    std::uint64_t seed = 0;
    double horizon = 35.0;
    double step = 1e-3;
    double box_lo = -3.0, box_hi = 3.0;
};

int run_simulate(const SimulateArgs& args, ReportBuilder& report) {
    report.add_input(args.config);
    const kcomp::HopfieldConfig config = kcomp::read_hopfield_config(args.config);
    const std::vector<std::vector<double>> equilibria = kcomp::hopfield_equilibria(config.model);

    std::optional<std::string> csv;
    if (!args.csv_dir.empty()) csv = out_path(args.csv_dir);
    const kcomp::ConvergenceSummary summary = kcomp::convergence_experiment(
        config.model, args.trials, {args.box_lo, args.box_hi}, args.horizon, args.step, args.seed,
        equilibria, config.fixed_initial, csv);

    json eq = json::array();
    for (const auto& e : equilibria) eq.push_back(e);
    report.results["equilibria"] = std::move(eq);
    report.results["trials"] = summary.trials;
    report.results["converged"] = summary.converged;
    report.results["bounded_nonconverged"] = summary.bounded_nonconverged;
    report.results["diverged"] = summary.diverged;
    report.results["counts_per_equilibrium"] = summary.counts_per_equilibrium;
    json outcomes = json::array();
    for (const auto& o : summary.outcomes) {
        json entry;
        entry["classification"] = o.classification == kcomp::TerminalClass::converged
                                      ? "converged"
                                      : o.classification == kcomp::TerminalClass::diverged
                                            ? "diverged"
                                            : "bounded_nonconverged";
        entry["equilibrium_id"] = o.equilibrium_id;
        entry["terminal_distance"] = o.terminal_distance;
        entry["initial_state"] = o.initial_state;
        entry["terminal_state"] = o.terminal_state;
        outcomes.push_back(std::move(entry));
    }
    report.results["outcomes"] = std::move(outcomes);
    report.results["seed"] = args.seed;
    report.results["step"] = args.step;
    report.results["horizon"] = args.horizon;
    if (csv) report.results["csv_dir"] = *csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compound matrix calculus and k-contraction certificates"};
    app.require_subcommand(1);

    CompoundArgs compound_args;
    auto* compound = app.add_subcommand("compound", "compute a k-compound of a matrix");
    compound->add_option("--input", compound_args.input, "matrix file (text or JSON)")->required();
    compound->add_option("--k", compound_args.k, "compound order")->required();
    compound->add_option("--kind", compound_args.kind, "mult or add");
    compound->add_option("--out", compound_args.out, "write the compound as a text matrix file");

    LogNormArgs lognorm_args;
    auto* lognorm = app.add_subcommand("lognorm", "log norm of a matrix or of its k-additive compound");
    lognorm->add_option("--input", lognorm_args.input)->required();
    lognorm->add_option("--p", lognorm_args.p, "1, 2 or inf");
    lognorm->add_option("--k", lognorm_args.k, "if given, evaluate mu_p(A^[k]) compound-free");
    lognorm->add_option("--scaling", lognorm_args.scaling, "invertible weight matrix file");

    TauArgs tau_args;
    auto* tau_cmd = app.add_subcommand("tau", "k-shifted log norm tr(A) + (n-k) mu_q(-A)");
    tau_cmd->add_option("--input", tau_args.input)->required();
    tau_cmd->add_option("--k", tau_args.k)->required();
    tau_cmd->add_option("--p", tau_args.p, "1, 2 or inf");
    tau_cmd->add_option("--scaling", tau_args.scaling);

    CertifyArgs certify_args;
    auto* certify = app.add_subcommand("certify", "run a k-contraction certificate");
    certify->add_option("--model", certify_args.model, "matrix, hopfield or ltv")->required();
    certify
        ->add_option("--method", certify_args.method,
                     "direct, tau, trace-dominance, smith, hopfield, local-stability, li-wang")
        ->required();
    certify->add_option("--k", certify_args.k);
    certify->add_option("--p", certify_args.p);
    certify->add_option("--eta", certify_args.eta, "required contraction rate");
    certify->add_option("--input", certify_args.input, "matrix file (model=matrix)");
    certify->add_option("--config", certify_args.config, "model config file (model=hopfield)");
    certify->add_option("--weights", certify_args.weights_file, "diagonal weights file");
    certify->add_option("--scaling", certify_args.scaling_file, "scaling matrix T file");
    certify->add_option("--q-matrix", certify_args.q_file, "Q for the smith method");
    certify->add_option("--theta", certify_args.theta, "theta for the smith method")
        ->each([&certify_args](const std::string&) { certify_args.theta_given = true; });
    certify->add_option("--box-lo", certify_args.box_lo, "state box lower bound (sampled methods)");
    certify->add_option("--box-hi", certify_args.box_hi, "state box upper bound (sampled methods)");
    certify->add_option("--grid-points", certify_args.grid_points, "grid points per state axis");
    certify->add_option("--t-lo", certify_args.t_lo, "time grid start (model=ltv)");
    certify->add_option("--t-hi", certify_args.t_hi, "time grid end (model=ltv)");
    certify->add_option("--t-count", certify_args.t_count, "time grid size (model=ltv)");
    certify->add_option("--start", certify_args.start, "Newton start for equilibrium methods");

    DualityArgs duality_args;
    auto* duality = app.add_subcommand("duality-check", "verify a compound duality identity");
    duality->add_option("--input", duality_args.input)->required();
    duality->add_option("--k", duality_args.k)->required();
    duality->add_option("--which", duality_args.which, "mult, add, exp or mu");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "integrate a Hopfield model and classify limits");
    simulate->add_option("--config", simulate_args.config)->required();
    simulate->add_option("--trials", simulate_args.trials)->required();
    simulate->add_option("--seed", simulate_args.seed);
    simulate->add_option("--T", simulate_args.horizon, "integration horizon");
    simulate->add_option("--step", simulate_args.step, "RK4 step");
    simulate->add_option("--box-lo", simulate_args.box_lo, "random IC box lower bound");
    simulate->add_option("--box-hi", simulate_args.box_hi, "random IC box upper bound");
    simulate->add_option("--csv", simulate_args.csv_dir, "write per-trajectory CSVs to this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    ReportBuilder report;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) report.command += ' ';
        report.command += argv[i];
    }

    const auto started = std::chrono::steady_clock::now();
    int code = 4;
    try {
        if (compound->parsed()) code = run_compound(compound_args, report);
        else if (lognorm->parsed()) code = run_lognorm(lognorm_args, report);
        else if (tau_cmd->parsed()) code = run_tau(tau_args, report);
        else if (certify->parsed()) code = run_certify(certify_args, report);
        else if (duality->parsed()) code = run_duality_check(duality_args, report);
        else if (simulate->parsed()) code = run_simulate(simulate_args, report);
        report.emit();
    } catch (const kcomp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    std::cerr << "elapsed_ms=" << elapsed.count() << '\n';
    return code;
}
