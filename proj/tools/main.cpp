#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "secrecy/metrics.hpp"
#include "secrecy/monte_carlo.hpp"
#include "secrecy/optimizer.hpp"

namespace {

using nlohmann::json;
using namespace secrecy;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Locale-independent number rendering ('.' decimal separator always).
std::string fmt(double v, std::chars_format f, int prec) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, f, prec);
    return std::string(buf, res.ptr);
}
std::string sig9(double v) { return fmt(v, std::chars_format::general, 9); }
std::string sig6(double v) { return fmt(v, std::chars_format::general, 6); }
std::string fixed6(double v) { return fmt(v, std::chars_format::fixed, 6); }
std::string fixed2(double v) { return fmt(v, std::chars_format::fixed, 2); }
std::string sci2(double v) { return fmt(v, std::chars_format::scientific, 2); }

// Output destination: stdout by default, --out FILE otherwise.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::domain_error("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& out() { return *os; }
};

std::string binding_to_string(unsigned binding) {
    std::string s;
    auto append = [&](const char* name) {
        if (!s.empty()) s += ",";
        s += name;
    };
    if (binding & kThroughputBinding) append("throughput_binding");
    if (binding & kInteriorOptimum) append("interior_optimum");
    if (binding & kBoundaryRsMin) append("boundary_rs_min");
    if (binding & kBoundaryRsMax) append("boundary_rs_max");
    return s;
}

Objective parse_objective(const std::string& name) {
    if (name == "outage") return Objective::outage;
    if (name == "equivocation") return Objective::equivocation;
    if (name == "leakage") return Objective::leakage;
    throw std::domain_error("unknown objective: " + name);
}

DesignSolution solve(const DesignProblem& problem) {
    switch (problem.objective) {
        case Objective::outage: return optimize_outage(problem);
        case Objective::equivocation: return optimize_equivocation(problem);
        case Objective::leakage: return optimize_leakage(problem);
    }
    throw std::domain_error("unknown objective");
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOpts {
    double snr_b_db = 0.0, snr_e_db = 0.0;
    double rb = 0.0, rs = 0.0, theta = 1.0;
    std::string format = "text", out_path;
    bool verify = false;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
};

struct McCheck {
    const char* name;
    double closed;
    mc::McEstimate est;
    bool ok;
    double dev;
};

// 4-standard-error acceptance band; a degenerate all-identical sample still
// carries ~1/n estimator uncertainty, so fall back to that width.
double mc_band(const mc::McEstimate& est, double value_scale) {
    if (est.std_error > 0.0) return 4.0 * est.std_error + 1e-12;
    return 16.0 * std::max(1.0, value_scale) / static_cast<double>(est.n);
}

std::vector<McCheck> run_mc_checks(const ChannelStats& stats, const RatePair& rates, double theta,
                                   std::uint64_t seed, std::uint64_t samples) {
    std::vector<McCheck> checks;
    auto add = [&](const char* name, double closed, const mc::McEstimate& est) {
        const double err = std::abs(closed - est.mean);
        const double dev = est.std_error > 0.0
                               ? err / est.std_error
                               : (err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        checks.push_back({name, closed, est, err <= mc_band(est, rates.rate_secret), dev});
    };
    add("p_out", outage_probability(stats, rates, theta),
        mc::estimate_outage(stats, rates, theta, {seed, samples, 0}));
    add("avg_equivocation", avg_equivocation(stats, rates),
        mc::estimate_avg_equivocation(stats, rates, {seed, samples, 1}));
    add("leakage_rate", leakage_rate(stats, rates),
        mc::estimate_leakage_rate(stats, rates, {seed, samples, 2}));
    add("p_tx", transmit_probability(stats, rates),
        mc::estimate_ptx(stats, rates, {seed, samples, 3}));
    return checks;
}

int run_eval(const EvalOpts& o) {
    const ChannelStats stats{db_to_linear(o.snr_b_db), db_to_linear(o.snr_e_db)};
    const RatePair rates{o.rb, o.rs};
    const SecrecyReport report = full_report(stats, rates, o.theta);

    std::vector<McCheck> checks;
    bool ok = true;
    if (o.verify) {
        checks = run_mc_checks(stats, rates, o.theta, o.seed, o.samples);
        for (const auto& c : checks) ok = ok && c.ok;
    }

    Sink sink;
    sink.open(o.out_path);
    if (o.format == "json") {
        json j{{"p_out", report.p_out},
               {"avg_equivocation", report.avg_equivocation},
               {"leakage_rate", report.leakage_rate},
               {"p_tx", report.p_tx},
               {"throughput", report.throughput},
               {"theta", report.theta}};
        if (o.verify) {
            json mcj = json::array();
            for (const auto& c : checks)
                mcj.push_back({{"metric", c.name},
                               {"closed_form", c.closed},
                               {"mc_mean", c.est.mean},
                               {"mc_std_error", c.est.std_error},
                               {"deviation_se", c.dev},
                               {"pass", c.ok}});
            j["monte_carlo"] = mcj;
        }
        sink.out() << j.dump(2) << "\n";
    } else {
        sink.out() << "p_out = " << fixed6(report.p_out) << "\n"
                   << "avg_equivocation = " << fixed6(report.avg_equivocation) << "\n"
                   << "leakage_rate = " << fixed6(report.leakage_rate) << "\n"
                   << "p_tx = " << fixed6(report.p_tx) << "\n"
                   << "throughput = " << fixed6(report.throughput) << "\n"
                   << "theta = " << fixed6(report.theta) << "\n";
        for (const auto& c : checks)
            sink.out() << "mc " << c.name << " = " << fixed6(c.est.mean) << " (se "
                       << sci2(c.est.std_error) << ", dev " << fixed2(c.dev) << " se) "
                       << (c.ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOpts {
    std::string variable;
    double start = 0.0, stop = 0.0;
    int steps = 0;
    double snr_b_db = std::numeric_limits<double>::quiet_NaN();
    double snr_e_db = std::numeric_limits<double>::quiet_NaN();
    double rb = std::numeric_limits<double>::quiet_NaN();
    double rs = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> thetas;
    std::string format = "csv", out_path;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void emit_table(const Table& table, const std::string& format, Sink& sink) {
    if (format == "json") {
        json rows = json::array();
        for (const auto& row : table.rows) {
            json obj;
            for (std::size_t c = 0; c < table.header.size(); ++c) obj[table.header[c]] = row[c];
            rows.push_back(obj);
        }
        sink.out() << rows.dump(2) << "\n";
        return;
    }
    for (std::size_t c = 0; c < table.header.size(); ++c)
        sink.out() << (c ? "," : "") << table.header[c];
    sink.out() << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) sink.out() << (c ? "," : "") << sig9(row[c]);
        sink.out() << "\n";
    }
}

void require_param(bool present, const std::string& what, const std::string& variable) {
    if (!present)
        throw std::domain_error("sweep over " + variable + " requires " + what);
}

Table sweep_metrics(const SweepOpts& o) {
    const bool over_rs = o.variable == "rate_secret";
    require_param(std::isfinite(o.snr_b_db), "--snr-b-db", o.variable);
    require_param(std::isfinite(o.rb), "--rb", o.variable);
    if (over_rs)
        require_param(std::isfinite(o.snr_e_db), "--snr-e-db", o.variable);
    else
        require_param(std::isfinite(o.rs), "--rs", o.variable);

    Table table;
    table.header.push_back(o.variable);
    for (double t : o.thetas) table.header.push_back("p_out_theta_" + sig6(t));
    table.header.insert(table.header.end(),
                        {"avg_equivocation", "leakage_rate", "p_tx", "throughput"});

    for (int i = 0; i < o.steps; ++i) {
        const double x = o.start + (o.stop - o.start) * i / (o.steps - 1);
        const ChannelStats stats{db_to_linear(o.snr_b_db),
                                 over_rs ? db_to_linear(o.snr_e_db) : db_to_linear(x)};
        const RatePair rates{o.rb, over_rs ? x : o.rs};
        std::vector<double> row{x};
        for (double t : o.thetas) row.push_back(outage_probability(stats, rates, t));
        row.push_back(avg_equivocation(stats, rates));
        row.push_back(leakage_rate(stats, rates));
        row.push_back(transmit_probability(stats, rates));
        row.push_back(throughput(stats, rates));
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table sweep_designs(const SweepOpts& o) {
    require_param(std::isfinite(o.snr_b_db), "--snr-b-db", o.variable);
    require_param(std::isfinite(o.snr_e_db), "--snr-e-db", o.variable);
    const ChannelStats stats{db_to_linear(o.snr_b_db), db_to_linear(o.snr_e_db)};
    const double theta_ref = o.thetas.front();

    Table table;
    table.header.push_back("gamma");
    for (double t : o.thetas) {
        table.header.push_back("rs_outage_theta_" + sig6(t));
        table.header.push_back("rb_outage_theta_" + sig6(t));
    }
    table.header.insert(table.header.end(), {"rs_equivocation", "rb_equivocation", "rs_leakage",
                                             "rb_leakage"});
    for (const char* metric : {"p_out", "avg_equivocation", "leakage_rate"})
        for (const char* design : {"outage", "equivocation", "leakage"})
            table.header.push_back(std::string(metric) + "_at_" + design + "_design");

    for (int i = 0; i < o.steps; ++i) {
        const double gamma = o.start + (o.stop - o.start) * i / (o.steps - 1);
        std::vector<double> row{gamma};

        DesignSolution ref_outage{};
        for (std::size_t k = 0; k < o.thetas.size(); ++k) {
            const auto sol =
                optimize_outage({stats, gamma, o.thetas[k], Objective::outage});
            if (k == 0) ref_outage = sol;
            row.push_back(sol.rate_s);
            row.push_back(sol.rate_b);
        }
        const auto sol_eq = optimize_equivocation({stats, gamma, 1.0, Objective::equivocation});
        const auto sol_leak = optimize_leakage({stats, gamma, 1.0, Objective::leakage});
        row.insert(row.end(),
                   {sol_eq.rate_s, sol_eq.rate_b, sol_leak.rate_s, sol_leak.rate_b});

        const DesignSolution designs[3] = {ref_outage, sol_eq, sol_leak};
        for (const auto& d : designs)
            row.push_back(outage_probability(stats, {d.rate_b, d.rate_s}, theta_ref));
        for (const auto& d : designs)
            row.push_back(avg_equivocation(stats, {d.rate_b, d.rate_s}));
        for (const auto& d : designs)
            row.push_back(leakage_rate(stats, {d.rate_b, d.rate_s}));
        table.rows.push_back(std::move(row));
    }
    return table;
}

int run_sweep(SweepOpts o) {
    if (o.thetas.empty()) o.thetas.push_back(1.0);
    if (o.steps < 2) throw std::domain_error("sweep requires --steps >= 2");
    if (!(o.start < o.stop)) throw std::domain_error("sweep requires start < stop");
    for (double t : o.thetas)
        if (!std::isfinite(t) || t <= 0.0 || t > 1.0)
            throw std::domain_error("theta values must lie in (0,1]");

    const Table table = (o.variable == "gamma") ? sweep_designs(o) : sweep_metrics(o);
    Sink sink;
    sink.open(o.out_path);
    emit_table(table, o.format, sink);
    return 0;
}

// ---------------------------------------------------------------------------
// design
// ---------------------------------------------------------------------------

struct DesignOpts {
    std::string objective;
    double gamma = 0.0;
    double snr_b_db = 0.0, snr_e_db = 0.0;
    double theta = 1.0;
    std::string format = "text", out_path;
    bool verify = false;
};

int run_design(const DesignOpts& o) {
    const ChannelStats stats{db_to_linear(o.snr_b_db), db_to_linear(o.snr_e_db)};
    const DesignProblem problem{stats, o.gamma, o.theta, parse_objective(o.objective)};
    const DesignSolution sol = solve(problem);
    const double eta = throughput(stats, {sol.rate_b, sol.rate_s});

    bool ok = true;
    double grid_value = 0.0, gap = 0.0;
    if (o.verify) {
        const auto grid = brute_force_optimize(problem, 4000);
        grid_value = grid.objective_value;
        gap = std::abs(grid.objective_value - sol.objective_value);
        ok = gap <= 1e-4;
    }

    Sink sink;
    sink.open(o.out_path);
    if (o.format == "json") {
        json j{{"objective", o.objective},
               {"rate_b", sol.rate_b},
               {"rate_s", sol.rate_s},
               {"objective_value", sol.objective_value},
               {"throughput", eta},
               {"gamma", o.gamma},
               {"theta", o.theta},
               {"binding", binding_to_string(sol.binding)}};
        if (o.verify) {
            j["grid_objective_value"] = grid_value;
            j["grid_gap"] = gap;
            j["grid_pass"] = ok;
        }
        sink.out() << j.dump(2) << "\n";
    } else {
        sink.out() << "objective = " << o.objective << "\n"
                   << "rate_b = " << sig9(sol.rate_b) << "\n"
                   << "rate_s = " << sig9(sol.rate_s) << "\n"
                   << "objective_value = " << sig9(sol.objective_value) << "\n"
                   << "throughput = " << sig9(eta) << "\n"
                   << "gamma = " << sig9(o.gamma) << "\n"
                   << "theta = " << sig9(o.theta) << "\n"
                   << "binding = " << binding_to_string(sol.binding) << "\n";
        if (o.verify)
            sink.out() << "grid objective_value = " << sig9(grid_value) << " (gap "
                       << sci2(gap) << ") " << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
    std::string out_path;
};

int run_verify(const VerifyOpts& o) {
    constexpr int kTuples = 20;
    constexpr int kInstancesPerObjective = 5;
    constexpr int kGrid = 2000;

    Sink sink;
    sink.open(o.out_path);
    int checks = 0, passed = 0;
    auto line = [&](bool ok, const std::string& text) {
        ++checks;
        if (ok) ++passed;
        sink.out() << text << (ok ? " PASS" : " FAIL") << "\n";
    };

    sink.out() << "verify seed=" << o.seed << " samples=" << o.samples << " tuples=" << kTuples
               << " instances=" << kInstancesPerObjective << " grid=" << kGrid << "\n";

    // Deterministic parameter stream for the random tuples.
    const std::uint64_t base = mc::detail::stream_base(o.seed, 0xFEEDu);
    std::uint64_t k = 0;
    auto u = [&] { return mc::detail::uniform_unit(base, k++); };
    auto two = [](int v) { return (v < 10 ? "0" : "") + std::to_string(v); };

    // Closed forms vs the Monte Carlo oracle.
    for (int t = 0; t < kTuples; ++t) {
        const ChannelStats stats{0.1 + 19.9 * u(), 0.1 + 19.9 * u()};
        const double rb = 0.2 + 3.8 * u();
        const RatePair rates{rb, std::max(1e-9, rb * u())};
        const double theta = u();

        struct Item {
            const char* name;
            double closed;
            mc::McEstimate est;
        };
        const std::uint64_t s0 = 100 + 4 * static_cast<std::uint64_t>(t);
        const Item items[4] = {
            {"p_out  ", outage_probability(stats, rates, theta),
             mc::estimate_outage(stats, rates, theta, {o.seed, o.samples, s0})},
            {"dbar   ", avg_equivocation(stats, rates),
             mc::estimate_avg_equivocation(stats, rates, {o.seed, o.samples, s0 + 1})},
            {"rl     ", leakage_rate(stats, rates),
             mc::estimate_leakage_rate(stats, rates, {o.seed, o.samples, s0 + 2})},
            {"p_tx   ", transmit_probability(stats, rates),
             mc::estimate_ptx(stats, rates, {o.seed, o.samples, s0 + 3})},
        };
        for (const auto& item : items) {
            const double err = std::abs(item.closed - item.est.mean);
            const bool ok = err <= mc_band(item.est, rates.rate_secret);
            const double dev =
                item.est.std_error > 0.0
                    ? err / item.est.std_error
                    : (err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            line(ok, "[mc " + two(t) + " " + item.name + "] closed=" + sig9(item.closed) +
                         " mc=" + sig9(item.est.mean) + " se=" + sci2(item.est.std_error) +
                         " dev=" + fixed2(dev) + "se");
        }
    }

    // Analytic optimizers vs the brute-force grid oracle.
    const struct {
        Objective objective;
        const char* name;
    } objectives[3] = {{Objective::outage, "outage      "},
                       {Objective::equivocation, "equivocation"},
                       {Objective::leakage, "leakage     "}};
    for (const auto& obj : objectives) {
        for (int i = 0; i < kInstancesPerObjective; ++i) {
            const ChannelStats stats{1.0 + 29.0 * u(), 1.0 + 29.0 * u()};
            const double gmax = max_throughput(stats).second;
            const double gamma = std::max(1e-6, gmax * u());
            const double theta = obj.objective == Objective::outage ? std::max(0.01, u()) : 1.0;
            const DesignProblem problem{stats, gamma, theta, obj.objective};
            const DesignSolution sol = solve(problem);
            const auto grid = brute_force_optimize(problem, kGrid);
            const double gap = std::abs(sol.objective_value - grid.objective_value);
            const double eta = throughput(stats, {sol.rate_b, sol.rate_s});
            const bool ok = gap <= 1e-4 && eta >= gamma - 1e-9;
            line(ok, "[opt " + std::string(obj.name) + " " + two(i) +
                         "] analytic=" + sig9(sol.objective_value) +
                         " grid=" + sig9(grid.objective_value) + " gap=" + sci2(gap));
        }
    }

    // Feasibility bound vs an independent scalar scan.
    {
        const ChannelStats stats{10.0, 10.0};
        const double gmax = max_throughput(stats).second;
        double scan = 0.0;
        for (int i = 1; i <= 100000; ++i) {
            const double x = i * 1e-4;
            scan = std::max(scan, std::exp(-(std::exp2(x) - 1.0) / stats.avg_snr_bob) * x);
        }
        const double gap = std::abs(gmax - scan);
        line(gap <= 1e-6 && gmax >= scan - 1e-12,
             "[feasibility] gamma_max=" + sig9(gmax) + " scan=" + sig9(scan) + " gap=" + sci2(gap));
    }

    sink.out() << "verify: " << passed << "/" << checks << " checks passed\n";
    return passed == checks ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physical-layer secrecy metrics and rate design for quasi-static "
                 "Rayleigh wiretap channels"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.set_config("--config", "",
                   "Read options from a config file (keys under a [subcommand] section)");

    EvalOpts eval_opts;
    auto* eval = app.add_subcommand("eval", "Evaluate all metrics for one configuration");
    eval->add_option("--snr-b-db", eval_opts.snr_b_db, "Average SNR at Bob, dB")->required();
    eval->add_option("--snr-e-db", eval_opts.snr_e_db, "Average SNR at Eve, dB")->required();
    eval->add_option("--rb", eval_opts.rb, "Codeword rate R_b, bits/channel use")->required();
    eval->add_option("--rs", eval_opts.rs, "Confidential rate R_s, bits/channel use")->required();
    eval->add_option("--theta", eval_opts.theta, "Equivocation threshold in (0,1]");
    eval->add_option("--format", eval_opts.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    eval->add_option("--out", eval_opts.out_path, "Write output to a file");
    eval->add_flag("--verify", eval_opts.verify, "Run the Monte Carlo oracle alongside");
    eval->add_option("--seed", eval_opts.seed, "Oracle seed (with --verify)");
    eval->add_option("--samples", eval_opts.samples, "Oracle sample count (with --verify)");

    SweepOpts sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Emit a metric or design table over a grid");
    sweep->add_option("--variable", sweep_opts.variable,
                      "Sweep variable: rate_secret, avg_snr_eve_db, or gamma")
        ->required()
        ->check(CLI::IsMember({"rate_secret", "avg_snr_eve_db", "gamma"}));
    sweep->add_option("--start", sweep_opts.start, "First grid value")->required();
    sweep->add_option("--stop", sweep_opts.stop, "Last grid value")->required();
    sweep->add_option("--steps", sweep_opts.steps, "Number of grid points (>= 2)")->required();
    sweep->add_option("--snr-b-db", sweep_opts.snr_b_db, "Average SNR at Bob, dB");
    sweep->add_option("--snr-e-db", sweep_opts.snr_e_db, "Average SNR at Eve, dB");
    sweep->add_option("--rb", sweep_opts.rb, "Fixed codeword rate R_b");
    sweep->add_option("--rs", sweep_opts.rs, "Fixed confidential rate R_s");
    sweep->add_option("--theta", sweep_opts.thetas, "Equivocation threshold(s) in (0,1]");
    sweep->add_option("--format", sweep_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sweep_opts.out_path, "Write the table to a file");

    DesignOpts design_opts;
    auto* design = app.add_subcommand("design", "Solve a throughput-constrained rate design");
    design->add_option("--objective", design_opts.objective,
                       "outage, equivocation, or leakage")
        ->required()
        ->check(CLI::IsMember({"outage", "equivocation", "leakage"}));
    design->add_option("--gamma", design_opts.gamma, "Throughput floor, bits/channel use")
        ->required();
    design->add_option("--snr-b-db", design_opts.snr_b_db, "Average SNR at Bob, dB")->required();
    design->add_option("--snr-e-db", design_opts.snr_e_db, "Average SNR at Eve, dB")->required();
    design->add_option("--theta", design_opts.theta, "Equivocation threshold (outage objective)");
    design->add_option("--format", design_opts.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    design->add_option("--out", design_opts.out_path, "Write output to a file");
    design->add_flag("--verify", design_opts.verify,
                     "Cross-check against the 4000-point grid oracle");

    VerifyOpts verify_opts;
    auto* verify = app.add_subcommand(
        "verify", "Run Monte Carlo and grid oracles against the closed forms and optimizers");
    verify->add_option("--seed", verify_opts.seed, "Seed for tuples and sample streams");
    verify->add_option("--samples", verify_opts.samples, "Monte Carlo samples per estimate");
    verify->add_option("--out", verify_opts.out_path, "Write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(eval)) return run_eval(eval_opts);
        if (app.got_subcommand(sweep)) return run_sweep(sweep_opts);
        if (app.got_subcommand(design)) return run_design(design_opts);
        if (app.got_subcommand(verify)) return run_verify(verify_opts);
    } catch (const infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
