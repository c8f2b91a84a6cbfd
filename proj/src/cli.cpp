#include "sobolev/cli.hpp"

#include "sobolev/benchlab.hpp"
#include "sobolev/expansion.hpp"
#include "sobolev/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sobolev {
namespace {

struct QuadFlags {
    int nodes = QuadratureRule{}.nodes_per_panel;
    int panels = QuadratureRule{}.panels_per_axis;
    double grade = *QuadratureRule{}.grading;

    QuadratureRule rule() const {
        QuadratureRule r;
        r.nodes_per_panel = nodes;
        r.panels_per_axis = panels;
        if (grade > 0.0) r.grading = grade;
        else r.grading.reset();
        r.validate();
        return r;
    }
};

void add_quad_flags(CLI::App* cmd, QuadFlags& q) {
    cmd->add_option("--quad-nodes", q.nodes, "Gauss nodes per panel")->capture_default_str();
    cmd->add_option("--quad-panels", q.panels, "Uniform panels per axis")->capture_default_str();
    cmd->add_option("--quad-grade", q.grade, "Geometric grading ratio toward singular points (0 disables)")
        ->capture_default_str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "' in list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    for (std::size_t j = 1; j < out.size(); ++j)
        if (out[j] <= out[j - 1]) throw std::invalid_argument("list '" + text + "' must be strictly increasing");
    return out;
}

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("bad coordinate '" + tok + "'");
    }
    return out;
}

std::string fmt(const char* format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

void write_sweep_csv(const SweepResult& r, const std::string& dir, std::ostream& out) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / csv_filename(r);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    write_csv(r, f);
    out << "wrote " << path.string() << "\n";
}

void print_sweep(const SweepResult& r, std::ostream& out) {
    out << r.example << " " << to_string(r.method) << " gamma=" << r.gamma.to_string() << "\n";
    out << "  param      l2_error       s_error       w_error\n";
    for (const auto& p : r.points) {
        char line[160];
        if (p.ok())
            std::snprintf(line, sizeof line, "  %5d  %12.5e  %12.5e  %12.5e\n", p.param, p.l2_error, p.s_error, p.w_error);
        else
            std::snprintf(line, sizeof line, "  %5d  failed: %s\n", p.param, p.error.c_str());
        out << line;
    }
}

int cmd_reproduce(const std::string& figure, const QuadFlags& q, const std::string& dir, bool timing,
                  std::ostream& out) {
    SweepOptions opts;
    opts.rule = q.rule();
    opts.record_timing = timing;
    const FigureReport rep = reproduce_figure(figure, opts);
    for (const auto& s : rep.sweeps) {
        print_sweep(s, out);
        write_sweep_csv(s, dir, out);
    }
    for (const auto& c : rep.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << figure << " " << c.name << " value=" << fmt("%.6g", c.value)
            << " target " << c.target << (c.gating ? "" : " (informational)") << "\n";
    }
    out << figure << ": " << (rep.all_pass() ? "all criteria pass" : "criteria FAILED") << " in "
        << fmt("%.1f", rep.runtime_s) << " s\n";
    return rep.all_pass() ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, std::ostream& out) {
    VerifyOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    const auto results = run_verify(suite, opts);
    int failed = 0;
    for (const auto& r : results) {
        out << format_result(r) << "\n";
        if (!r.passed()) ++failed;
    }
    out << "verify " << suite << ": " << results.size() - failed << "/" << results.size() << " properties pass\n";
    return failed == 0 ? 0 : 1;
}

int cmd_expand(const std::string& example, const std::string& delta_text, const std::string& point_text,
               std::uint64_t seed, const QuadFlags& q, std::ostream& out) {
    ExampleOptions eopts;
    eopts.seed = seed;
    const std::vector<double> point = parse_point(point_text);
    eopts.dims = point.size();
    if (!delta_text.empty()) eopts.delta = MultiIndex::parse(delta_text);
    const AnalyticFunction u = make_example(example, eopts);
    const MultiIndex delta = delta_text.empty() ? u.delta() : MultiIndex::parse(delta_text);
    if (point.size() != u.dims()) {
        throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, " + u.name() +
                                    " needs " + std::to_string(u.dims()));
    }
    if (!u.domain().contains(point)) throw std::invalid_argument("point " + point_text + " lies outside the domain");
    if (delta.size() != u.dims() || !leq(delta, u.delta())) {
        throw std::invalid_argument("delta " + delta.to_string() + " must satisfy delta <= " + u.delta().to_string());
    }

    const QuadratureRule rule = rule_for(u, q.rule());
    const TraceBundle traces = extract_traces(u, delta);
    char line[200];
    std::snprintf(line, sizeof line, "%-14s %-14s %22s %22s\n", "alpha", "face", "trace", "summand");
    out << line;
    std::vector<double> summands;
    for (const auto& alpha : multiindex_range(delta)) {
        const TraceFunction& v = traces[alpha];
        const double value = v.eval_full(point);
        const double term = evaluate_summand(v, alpha, delta, point, rule);
        summands.push_back(term);
        std::snprintf(line, sizeof line, "%-14s %-14s %22.15e %22.15e\n", alpha.to_string().c_str(),
                      v.spec().to_string().c_str(), value, term);
        out << line;
    }
    const double sum = pairwise_sum(summands);
    const double direct = u(point);
    const double diff = std::abs(sum - direct);
    const bool ok = diff <= 1e-8 * std::max(1.0, std::abs(direct));
    std::snprintf(line, sizeof line, "sum %.15e  u(point) %.15e  difference %.3e\n", sum, direct, diff);
    out << line << (ok ? "PASS" : "FAIL") << " expansion sums to u(point) within 1e-8\n";
    return ok ? 0 : 1;
}

int cmd_sweep(const std::string& example, const std::string& method_text, const std::string& gamma_text,
              const std::string& degrees, const std::string& cells, std::uint64_t seed, std::size_t dims,
              const std::string& delta_text, const QuadFlags& q, const std::string& dir, bool timing,
              std::ostream& out) {
    const Method method = parse_method(method_text);
    ExampleOptions eopts;
    eopts.seed = seed;
    eopts.dims = dims;
    if (!delta_text.empty()) eopts.delta = MultiIndex::parse(delta_text);
    const AnalyticFunction u = make_example(example, eopts);
    const MultiIndex gamma = gamma_text.empty() ? MultiIndex::zeros(u.dims()) : MultiIndex::parse(gamma_text);
    const std::string& list = method == Method::Legendre ? degrees : cells;
    if (list.empty()) {
        throw std::invalid_argument(std::string("sweep needs ") +
                                    (method == Method::Legendre ? "--degrees" : "--cells"));
    }
    SweepOptions opts;
    opts.rule = q.rule();
    opts.record_timing = timing;
    const SweepResult r = run_sweep(u, method, gamma, parse_int_list(list), opts);
    print_sweep(r, out);
    write_sweep_csv(r, dir, out);
    if (r.points.size() >= 3) {
        for (auto [norm, label] : {std::pair{ErrorNorm::L2, "L2"}, std::pair{ErrorNorm::Sobolev, "S"}}) {
            try {
                out << label << " slope " << fmt("%.4f", fit_slope(r, norm, r.points.front().param,
                                                                   r.points.back().param)) << "\n";
            } catch (const std::exception& e) {
                out << label << " slope unavailable: " << e.what() << "\n";
            }
        }
    }
    for (const auto& p : r.points)
        if (!p.ok()) return 1;
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sobolev trace expansions: reconstruction, projections and convergence experiments",
                 "sobolev_recon"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    std::string out_dir = "results";
    bool timing = false;
    QuadFlags quad;

    std::string figure;
    auto* reproduce = app.add_subcommand("reproduce", "Run the sweeps of one figure and check its criteria");
    reproduce->add_option("figure", figure, "fig1|fig2|fig3|fig4")->required()->check(
        CLI::IsMember(figure_ids()));
    reproduce->add_option("--out", out_dir, "Directory for the CSV files")->capture_default_str();
    reproduce->add_flag("--timing", timing, "Record per-point wall-clock time in the CSV");
    add_quad_flags(reproduce, quad);

    std::string suite = "all";
    int trials = 100;
    auto* verify = app.add_subcommand("verify", "Run seeded property suites");
    verify->add_option("suite", suite, "roundtrip|identities|optimality|all")
        ->check(CLI::IsMember({"roundtrip", "identities", "optimality", "all"}))
        ->capture_default_str();
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
    verify->add_option("--trials", trials, "Trials per property")->check(CLI::PositiveNumber)->capture_default_str();

    std::string example, delta_text, point_text;
    auto* expand = app.add_subcommand("expand", "Print the trace expansion of an example at a point");
    expand->add_option("--example", example, "Example name")->required();
    expand->add_option("--delta", delta_text, "Expansion order, e.g. 2,1 (default: the example's order)");
    expand->add_option("--point", point_text, "Evaluation point, e.g. 0.5 or 1,1")->required();
    expand->add_option("--seed", seed, "Seed for poly-random")->capture_default_str();
    add_quad_flags(expand, quad);

    std::string method = "legendre", gamma_text, degrees, cells;
    std::size_t dims = 2;
    auto* sweep = app.add_subcommand("sweep", "Free-form convergence sweep");
    sweep->add_option("--example", example, "Example name")->required();
    sweep->add_option("--method", method, "legendre|step")->capture_default_str();
    sweep->add_option("--gamma", gamma_text, "Sobolev order, e.g. 1,1 (default: zero)");
    sweep->add_option("--degrees", degrees, "Polynomial degrees, e.g. 2,4,8");
    sweep->add_option("--cells", cells, "Cell counts, e.g. 2,4,8");
    sweep->add_option("--dims", dims, "Dimension for poly-random")->capture_default_str();
    sweep->add_option("--delta", delta_text, "Smoothness order for poly-random, e.g. 2,2");
    sweep->add_option("--seed", seed, "Seed for poly-random")->capture_default_str();
    sweep->add_option("--out", out_dir, "Directory for the CSV file")->capture_default_str();
    sweep->add_flag("--timing", timing, "Record per-point wall-clock time in the CSV");
    add_quad_flags(sweep, quad);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*reproduce) return cmd_reproduce(figure, quad, out_dir, timing, out);
        if (*verify) return cmd_verify(suite, seed, trials, out);
        if (*expand) return cmd_expand(example, delta_text, point_text, seed, quad, out);
        if (*sweep) {
            return cmd_sweep(example, method, gamma_text, degrees, cells, seed, dims, delta_text, quad, out_dir, timing,
                             out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace sobolev
