#pragma once

// Example targets, convergence sweeps, slope fitting and the figure definitions.

#include "sobolev/core.hpp"
#include "sobolev/funcmodel.hpp"
#include "sobolev/polyrep.hpp"
#include "sobolev/quadrature.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sobolev {

/// s^4/36 + 17 s^3/210 - 3 s^2/55 + 29 s/90 - 413/1140 + 512 sign(s)|s|^{19/4}/65835 on [-1,1], delta = 5.
AnalyticFunction example1();
/// w(s1,s2) = v(s1) v(s2) on [-1,1]^2 with a C^2 piecewise cubic v whose third derivative is +-1, delta = (3,3).
AnalyticFunction example2();
/// The cubic factor of example2 and its derivatives up to order 3.
double example2_factor(int order, double x);
/// x^2 y on [0,1]^2, delta = (2,1).
AnalyticFunction example_x2y();
/// Random single-cell tensor polynomial of degree delta + 2 on [-1,1]^N.
AnalyticFunction random_polynomial_function(std::size_t dims, const MultiIndex& delta, std::uint64_t seed);
/// Wraps a piecewise polynomial; its cellwise derivatives serve as the evaluators.
AnalyticFunction from_piecewise(const PiecewisePoly& p, const MultiIndex& delta, std::string name);

struct ExampleOptions {
    std::uint64_t seed = 42;
    std::size_t dims = 2;
    std::optional<MultiIndex> delta;
};

/// "example1-1d", "example2-2d", "x2y-2d", "poly-random".
AnalyticFunction make_example(const std::string& name, const ExampleOptions& opts = {});
std::vector<std::string> example_names();

enum class Method { Legendre, Step };
Method parse_method(const std::string& text);
const char* to_string(Method m);

struct SweepPoint {
    int param = 0;
    double l2_error = 0.0;
    double s_error = 0.0;
    double w_error = 0.0;
    double runtime_s = 0.0;
    std::string error;

    bool ok() const { return error.empty(); }
};

struct SweepResult {
    std::string example;
    Method method = Method::Legendre;
    MultiIndex gamma;
    std::vector<SweepPoint> points;
};

struct SweepOptions {
    QuadratureRule rule;
    /// 0 = use worker_count().
    unsigned threads = 0;
    /// Record wall-clock time per point; off keeps CSV output byte-identical between runs.
    bool record_timing = false;
};

/// min(hardware threads, SOBOLEV_RECON_THREADS if set).
unsigned worker_count();

/// For each parameter p builds P_{p 1}^gamma u or Q_{p 1}^gamma u and records its L2, S and W errors.
/// S is the box norm over u.delta, W the simplex norm of order min(u.delta).
SweepResult run_sweep(const AnalyticFunction& u, Method method, const MultiIndex& gamma, const std::vector<int>& params,
                      const SweepOptions& opts = {});

enum class ErrorNorm { L2, Sobolev, SobolevW };

/// Least-squares slope of log(y) against log(x).
double fit_slope(std::span<const double> x, std::span<const double> y);
/// Slope over the points with lo <= param <= hi; needs >= 3 points with positive errors.
double fit_slope(const SweepResult& r, ErrorNorm norm, int lo, int hi);
double error_of(const SweepPoint& p, ErrorNorm norm);
/// last / first error over the whole sweep.
double error_ratio(const SweepResult& r, ErrorNorm norm);

void write_csv(const SweepResult& r, std::ostream& os);
std::string csv_filename(const SweepResult& r);

struct FigureSpec {
    std::string id;
    std::string example;
    Method method;
    std::vector<MultiIndex> gammas;
    std::vector<int> params;
};

FigureSpec figure_spec(const std::string& id);
std::vector<std::string> figure_ids();

struct CriterionCheck {
    std::string name;
    double value = 0.0;
    std::string target;
    bool pass = false;
    /// Informational rows are printed but do not affect the exit status.
    bool gating = true;
};

struct FigureReport {
    FigureSpec spec;
    std::vector<SweepResult> sweeps;
    std::vector<CriterionCheck> checks;
    double runtime_s = 0.0;

    bool all_pass() const;
};

FigureReport reproduce_figure(const std::string& id, const SweepOptions& opts = {},
                              const std::optional<std::vector<int>>& params = std::nullopt);

} // namespace sobolev
