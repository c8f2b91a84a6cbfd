#include "sobolev/benchlab.hpp"

#include "sobolev/norms.hpp"
#include "sobolev/projection.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace sobolev {

namespace {

constexpr double kMu = 19.0 / 4.0;
constexpr double kC = 512.0 / 65835.0;

double example1_derivative(int k, double s) {
    // polynomial part, coefficients of s^0..s^4
    static const double c[5] = {-413.0 / 1140.0, 29.0 / 90.0, -3.0 / 55.0, 17.0 / 210.0, 1.0 / 36.0};
    double poly = 0.0;
    for (int j = 4; j >= k; --j) {
        double fall = 1.0;
        for (int m = 0; m < k; ++m) fall *= j - m;
        poly = poly * s + c[j] * fall;
    }
    double fall = 1.0;
    for (int m = 0; m < k; ++m) fall *= kMu - m;
    const double a = std::abs(s);
    // d^k/ds^k sign(s)|s|^mu = mu(mu-1)...(mu-k+1) |s|^{mu-k}, times sign(s) when k is even
    double sing = kC * fall * std::pow(a, kMu - k);
    if (k % 2 == 0) sing *= sign0(s);
    return poly + sing;
}

} // namespace

AnalyticFunction example1() {
    std::vector<PointEvaluator> d;
    for (int k = 0; k <= 5; ++k) d.push_back([k](std::span<const double> s) { return example1_derivative(k, s[0]); });
    return AnalyticFunction(HyperRect::cube(1), MultiIndex{5}, std::move(d), {{0.0}}, {{0.0}}, "example1-1d");
}

double example2_factor(int order, double x) {
    // C^2 piecewise cubic; the printed left branch of this example has a sign slip in the x^2 term,
    // corrected here so that v, v', v'' agree at -1/2.
    if (x < -0.5) {
        switch (order) {
        case 0: return x * x * x / 6.0 + x * x / 2.0 + 5.0 * x / 6.0 - 1.0 / 6.0;
        case 1: return x * x / 2.0 + x + 5.0 / 6.0;
        case 2: return x + 1.0;
        case 3: return 1.0;
        }
    } else if (x <= 0.5) {
        switch (order) {
        case 0: return -x * x * x / 6.0 + 7.0 * x / 12.0 - 5.0 / 24.0;
        case 1: return -x * x / 2.0 + 7.0 / 12.0;
        case 2: return -x;
        case 3: return -1.0;
        }
    } else {
        switch (order) {
        case 0: return x * x * x / 6.0 - x * x / 2.0 + 5.0 * x / 6.0 - 1.0 / 4.0;
        case 1: return x * x / 2.0 - x + 5.0 / 6.0;
        case 2: return x - 1.0;
        case 3: return 1.0;
        }
    }
    throw std::invalid_argument("example2_factor: order must be in 0..3");
}

AnalyticFunction example2() {
    MultiIndex delta{3, 3};
    std::vector<PointEvaluator> d;
    for (const auto& a : multiindex_range(delta)) {
        const int a0 = a[0], a1 = a[1];
        d.push_back([a0, a1](std::span<const double> s) { return example2_factor(a0, s[0]) * example2_factor(a1, s[1]); });
    }
    return AnalyticFunction(HyperRect::cube(2), delta, std::move(d), {{-0.5, 0.5}, {-0.5, 0.5}}, {}, "example2-2d");
}

AnalyticFunction example_x2y() {
    MultiIndex delta{2, 1};
    std::vector<PointEvaluator> d;
    for (const auto& a : multiindex_range(delta)) {
        const int a0 = a[0], a1 = a[1];
        d.push_back([a0, a1](std::span<const double> s) {
            const double x = s[0], y = s[1];
            const double fx = a0 == 0 ? x * x : (a0 == 1 ? 2.0 * x : 2.0);
            const double fy = a1 == 0 ? y : 1.0;
            return fx * fy;
        });
    }
    return AnalyticFunction(HyperRect::cube(2, 0.0, 1.0), delta, std::move(d), {}, {}, "x2y-2d");
}

AnalyticFunction from_piecewise(const PiecewisePoly& p, const MultiIndex& delta, std::string name) {
    std::vector<PointEvaluator> d;
    for (const auto& a : multiindex_range(delta)) {
        auto g = std::make_shared<const PiecewisePoly>(p.derivative(a));
        d.push_back([g](std::span<const double> s) {
            std::vector<std::vector<double>> pts(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) pts[i] = {s[i]};
            return g->eval_on_grid(pts)[0];
        });
    }
    return AnalyticFunction(p.domain(), delta, std::move(d), p.all_breaks(), {}, std::move(name));
}

AnalyticFunction random_polynomial_function(std::size_t dims, const MultiIndex& delta, std::uint64_t seed) {
    if (delta.size() != dims) throw std::invalid_argument("random_polynomial_function: delta/dims mismatch");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto cap = delta + MultiIndex::filled(dims, 2);
    PiecewisePoly p(HyperRect::cube(dims), {}, cap);
    std::vector<double> c(p.raw().size());
    for (auto& x : c) x = u(rng);
    return from_piecewise(PiecewisePoly(HyperRect::cube(dims), {}, cap, c), delta, "poly-random");
}

AnalyticFunction make_example(const std::string& name, const ExampleOptions& opts) {
    if (name == "example1-1d" || name == "example1") return example1();
    if (name == "example2-2d" || name == "example2") return example2();
    if (name == "x2y-2d" || name == "x2y") return example_x2y();
    if (name == "poly-random") {
        const auto delta = opts.delta.value_or(MultiIndex::filled(opts.dims, 2));
        return random_polynomial_function(delta.size(), delta, opts.seed);
    }
    std::string known;
    for (const auto& n : example_names()) known += " " + n;
    throw std::invalid_argument("unknown example '" + name + "' (known:" + known + ")");
}

std::vector<std::string> example_names() { return {"example1-1d", "example2-2d", "x2y-2d", "poly-random"}; }

Method parse_method(const std::string& text) {
    if (text == "legendre") return Method::Legendre;
    if (text == "step") return Method::Step;
    throw std::invalid_argument("unknown method '" + text + "' (legendre|step)");
}

const char* to_string(Method m) { return m == Method::Legendre ? "legendre" : "step"; }

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SOBOLEV_RECON_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

SweepResult run_sweep(const AnalyticFunction& u, Method method, const MultiIndex& gamma, const std::vector<int>& params,
                      const SweepOptions& opts) {
    if (!leq(gamma, u.delta())) {
        throw std::invalid_argument("run_sweep: gamma " + gamma.to_string() + " exceeds delta " + u.delta().to_string());
    }
    for (std::size_t j = 1; j < params.size(); ++j) {
        if (params[j] <= params[j - 1]) throw std::invalid_argument("run_sweep: parameters must be strictly increasing");
    }
    const QuadratureRule rule = rule_for(u, opts.rule);
    const int w_order = *std::min_element(u.delta().entries().begin(), u.delta().entries().end());

    SweepResult result{u.name(), method, gamma, std::vector<SweepPoint>(params.size())};
    auto run_point = [&](std::size_t j) {
        SweepPoint& pt = result.points[j];
        pt.param = params[j];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto p = MultiIndex::filled(u.dims(), params[j]);
            ErrorProfile prof;
            if (method == Method::Legendre) prof = derivative_errors(u, sobolev_project_legendre(u, gamma, p, rule), u.delta(), rule);
            else prof = derivative_errors(u, sobolev_project_step(u, gamma, p, rule), u.delta(), rule);
            pt.l2_error = prof.l2();
            pt.s_error = prof.s_norm();
            pt.w_error = prof.w_norm(w_order);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
        if (opts.record_timing) {
            pt.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };

    const unsigned nthreads = std::min<unsigned>(opts.threads ? std::min(opts.threads, worker_count()) : worker_count(),
                                                 static_cast<unsigned>(std::max<std::size_t>(1, params.size())));
    if (nthreads <= 1) {
        for (std::size_t j = 0; j < params.size(); ++j) run_point(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t j = next++; j < params.size(); j = next++) run_point(j);
            });
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need at least two points");
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] > 0.0) || !(y[j] > 0.0)) throw std::domain_error("fit_slope: non-positive value in window");
        lx[j] = std::log(x[j]);
        ly[j] = std::log(y[j]);
        mx += lx[j];
        my += ly[j];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t j = 0; j < lx.size(); ++j) {
        sxy += (lx[j] - mx) * (ly[j] - my);
        sxx += (lx[j] - mx) * (lx[j] - mx);
    }
    return sxy / sxx;
}

double error_of(const SweepPoint& p, ErrorNorm norm) {
    switch (norm) {
    case ErrorNorm::L2: return p.l2_error;
    case ErrorNorm::Sobolev: return p.s_error;
    case ErrorNorm::SobolevW: return p.w_error;
    }
    return p.l2_error;
}

double fit_slope(const SweepResult& r, ErrorNorm norm, int lo, int hi) {
    std::vector<double> x, y;
    for (const auto& p : r.points) {
        if (p.param < lo || p.param > hi) continue;
        if (!p.ok()) throw std::domain_error("fit_slope: sweep point " + std::to_string(p.param) + " failed: " + p.error);
        x.push_back(p.param);
        y.push_back(error_of(p, norm));
    }
    if (x.size() < 3) throw std::domain_error("fit_slope: fewer than three points in the window");
    return fit_slope(x, y);
}

double error_ratio(const SweepResult& r, ErrorNorm norm) {
    if (r.points.size() < 2) throw std::domain_error("error_ratio: need at least two points");
    for (const auto& p : r.points)
        if (!p.ok()) throw std::domain_error("error_ratio: sweep point " + std::to_string(p.param) + " failed: " + p.error);
    return error_of(r.points.back(), norm) / error_of(r.points.front(), norm);
}

void write_csv(const SweepResult& r, std::ostream& os) {
    os << "param,l2_error,s_error,w_error,runtime_s\n";
    char buf[256];
    for (const auto& p : r.points) {
        if (p.ok()) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", p.param, p.l2_error, p.s_error, p.w_error,
                          p.runtime_s);
        } else {
            std::snprintf(buf, sizeof buf, "%d,nan,nan,nan,%.17g\n", p.param, p.runtime_s);
        }
        os << buf;
    }
}

std::string csv_filename(const SweepResult& r) {
    std::string g;
    for (std::size_t i = 0; i < r.gamma.size(); ++i) g += (i ? "-" : "") + std::to_string(r.gamma[i]);
    return r.example + "_" + to_string(r.method) + "_gamma" + g + ".csv";
}

std::vector<std::string> figure_ids() { return {"fig1", "fig2", "fig3", "fig4"}; }

FigureSpec figure_spec(const std::string& id) {
    auto powers = [](int lo, int hi) {
        std::vector<int> v;
        for (int p = lo; p <= hi; p *= 2) v.push_back(p);
        return v;
    };
    if (id == "fig1") return {id, "example1-1d", Method::Legendre, {{0}, {1}, {3}, {5}}, powers(2, 256)};
    if (id == "fig2") return {id, "example1-1d", Method::Step, {{0}, {1}, {3}, {5}}, powers(2, 256)};
    if (id == "fig3") return {id, "example2-2d", Method::Legendre, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}, powers(2, 32)};
    if (id == "fig4") return {id, "example2-2d", Method::Step, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}, powers(2, 64)};
    throw std::invalid_argument("unknown figure '" + id + "' (fig1|fig2|fig3|fig4)");
}

bool FigureReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CriterionCheck& c) { return c.pass || !c.gating; });
}

namespace {

const SweepResult& sweep_for(const FigureReport& rep, const MultiIndex& gamma) {
    for (const auto& s : rep.sweeps)
        if (s.gamma == gamma) return s;
    throw std::logic_error("no sweep for gamma " + gamma.to_string());
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

template <class Fn>
void add_check(FigureReport& rep, std::string name, std::string target, bool gating, Fn&& measure,
               double lo, double hi) {
    CriterionCheck c{std::move(name), 0.0, std::move(target), false, gating};
    try {
        c.value = measure();
        c.pass = c.value >= lo && c.value <= hi;
    } catch (const std::exception& e) {
        c.value = std::nan("");
        c.target += std::string(" [") + e.what() + "]";
    }
    rep.checks.push_back(std::move(c));
}

void slope_check(FigureReport& rep, const MultiIndex& g, ErrorNorm norm, int lo, int hi, double want, double tol,
                 bool gating) {
    const char* nn = norm == ErrorNorm::L2 ? "L2" : "S";
    add_check(rep, std::string(nn) + " slope gamma=" + g.to_string() + " over [" + std::to_string(lo) + "," + std::to_string(hi) + "]",
              fmt(want) + " +- " + fmt(tol), gating, [&] { return fit_slope(sweep_for(rep, g), norm, lo, hi); },
              want - tol, want + tol);
}

void ratio_check(FigureReport& rep, const MultiIndex& g, bool decreasing, bool gating) {
    const double inf = std::numeric_limits<double>::infinity();
    add_check(rep, "S ratio last/first gamma=" + g.to_string(), decreasing ? "< 1" : ">= 0.5", gating,
              [&] { return error_ratio(sweep_for(rep, g), ErrorNorm::Sobolev); }, decreasing ? -inf : 0.5,
              decreasing ? std::nextafter(1.0, 0.0) : inf);
}

void point_check(FigureReport& rep, const MultiIndex& g, int param, ErrorNorm norm, double limit) {
    const char* nn = norm == ErrorNorm::L2 ? "L2" : "S";
    add_check(rep, std::string(nn) + " error gamma=" + g.to_string() + " at " + std::to_string(param),
              "<= " + fmt(limit), true,
              [&] {
                  for (const auto& p : sweep_for(rep, g).points) {
                      if (p.param != param) continue;
                      if (!p.ok()) throw std::domain_error(p.error);
                      return error_of(p, norm);
                  }
                  throw std::domain_error("parameter not in sweep");
              },
              0.0, limit);
}

} // namespace

FigureReport reproduce_figure(const std::string& id, const SweepOptions& opts, const std::optional<std::vector<int>>& params) {
    FigureReport rep;
    rep.spec = figure_spec(id);
    if (params) rep.spec.params = *params;
    const auto t0 = std::chrono::steady_clock::now();
    const auto u = make_example(rep.spec.example);
    for (const auto& g : rep.spec.gammas) rep.sweeps.push_back(run_sweep(u, rep.spec.method, g, rep.spec.params, opts));
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (id == "fig1") {
        slope_check(rep, {0}, ErrorNorm::L2, 16, 256, -5.0, 0.5, true);
        slope_check(rep, {1}, ErrorNorm::L2, 16, 256, -5.0, 0.5, false);
        slope_check(rep, {3}, ErrorNorm::L2, 16, 256, -5.0, 0.5, false);
        slope_check(rep, {5}, ErrorNorm::L2, 16, 256, -5.0, 0.5, true);
        slope_check(rep, {5}, ErrorNorm::Sobolev, 16, 256, -0.25, 0.15, true);
        ratio_check(rep, {0}, false, true);
    } else if (id == "fig2") {
        slope_check(rep, {0}, ErrorNorm::L2, 16, 256, -1.0, 0.3, true);
        for (int g : {1, 3, 5}) slope_check(rep, {g}, ErrorNorm::L2, 16, 256, -2.0, 0.4, true);
        for (int g : {0, 1, 3}) ratio_check(rep, {g}, false, true);
        ratio_check(rep, {5}, true, true);
    } else if (id == "fig3") {
        for (const auto& g : rep.spec.gammas) slope_check(rep, g, ErrorNorm::L2, 2, 32, -3.0, 0.6, true);
        ratio_check(rep, {0, 0}, false, true);
        ratio_check(rep, {1, 1}, false, true);
        ratio_check(rep, {2, 2}, true, true);
        ratio_check(rep, {3, 3}, true, true);
    } else if (id == "fig4") {
        point_check(rep, {3, 3}, 4, ErrorNorm::L2, 1e-12);
        point_check(rep, {3, 3}, 4, ErrorNorm::Sobolev, 1e-12);
        slope_check(rep, {0, 0}, ErrorNorm::L2, 4, 64, -1.0, 0.3, false);
        slope_check(rep, {1, 1}, ErrorNorm::L2, 4, 64, -2.0, 0.4, false);
        slope_check(rep, {2, 2}, ErrorNorm::L2, 4, 64, -2.0, 0.4, false);
        for (const auto& g : {MultiIndex{0, 0}, MultiIndex{1, 1}, MultiIndex{2, 2}}) ratio_check(rep, g, false, false);
    }
    return rep;
}

} // namespace sobolev
