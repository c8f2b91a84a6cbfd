#include "sobolev/quadrature.hpp"

#include "sobolev/detail/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sobolev {

namespace {

GaussRule compute_gauss(int n) {
    GaussRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (k - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int m = 1; m < n; ++m) {
                double p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-17) break;
        }
        // derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int m = 1; m < n; ++m) {
            double p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(k - 1), hi = static_cast<std::size_t>(n - k);
        r.nodes[lo] = -x;
        r.nodes[hi] = x;
        r.weights[lo] = w;
        r.weights[hi] = w;
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(compute_gauss(n));
    return *slot;
}

void QuadratureRule::validate() const {
    if (panels_per_axis < 1) throw std::invalid_argument("QuadratureRule: panels_per_axis must be >= 1");
    if (nodes_per_panel < 2) throw std::invalid_argument("QuadratureRule: nodes_per_panel must be >= 2");
    if (grading && !(*grading > 0.0 && *grading < 1.0)) {
        throw std::invalid_argument("QuadratureRule: grading factor must lie in (0, 1)");
    }
    if (graded_panels < 1) throw std::invalid_argument("QuadratureRule: graded_panels must be >= 1");
}

QuadratureRule rule_for(const AnalyticFunction& u, QuadratureRule base) {
    base.mandatory_splits = u.breakpoints();
    base.singular_points = u.singular_points();
    return base;
}

AxisGrid axis_grid(double lo, double hi, const QuadratureRule& rule, std::size_t axis,
                   std::span<const double> extra_edges, int min_nodes) {
    rule.validate();
    const double width = hi - lo;
    const double tol = 1e-12 * width;

    std::vector<double> hard{lo, hi};
    auto add_inside = [&](const std::vector<std::vector<double>>& per_axis) {
        if (axis >= per_axis.size()) return;
        for (double x : per_axis[axis])
            if (x > lo && x < hi) hard.push_back(x);
    };
    add_inside(rule.mandatory_splits);
    add_inside(rule.singular_points);
    for (double x : extra_edges)
        if (x > lo && x < hi) hard.push_back(x);
    std::sort(hard.begin(), hard.end());

    std::vector<double> singular;
    if (rule.grading && axis < rule.singular_points.size()) {
        for (double x : rule.singular_points[axis])
            if (x >= lo - tol && x <= hi + tol) singular.push_back(x);
    }

    std::vector<double> edges;
    for (double x : hard) {
        if (edges.empty() || x - edges.back() > tol) edges.push_back(x);
    }
    edges.back() = hi;
    std::vector<double> all = edges;
    for (int j = 1; j < rule.panels_per_axis; ++j) {
        double x = lo + width * j / rule.panels_per_axis;
        auto it = std::lower_bound(edges.begin(), edges.end(), x);
        bool clash = (it != edges.end() && *it - x <= tol) || (it != edges.begin() && x - *(it - 1) <= tol);
        if (!clash) all.push_back(x);
    }
    std::sort(all.begin(), all.end());

    auto is_singular = [&](double x) {
        return std::any_of(singular.begin(), singular.end(), [&](double s) { return std::abs(s - x) <= tol; });
    };

    std::vector<std::pair<double, double>> panels;
    auto graded = [&](double toward, double away) {
        // panels shrinking geometrically toward `toward`
        const double r = *rule.grading;
        const double len = away - toward;
        double outer = away;
        for (int j = 1; j <= rule.graded_panels; ++j) {
            double inner = toward + len * std::pow(r, j);
            panels.emplace_back(std::min(inner, outer), std::max(inner, outer));
            outer = inner;
        }
        panels.emplace_back(std::min(toward, outer), std::max(toward, outer));
    };
    for (std::size_t j = 0; j + 1 < all.size(); ++j) {
        const double a = all[j], b = all[j + 1];
        const bool sa = is_singular(a), sb = is_singular(b);
        if (sa && sb) {
            const double m = 0.5 * (a + b);
            graded(a, m);
            graded(b, m);
        } else if (sa) {
            graded(a, b);
        } else if (sb) {
            graded(b, a);
        } else {
            panels.emplace_back(a, b);
        }
    }
    std::sort(panels.begin(), panels.end());

    const GaussRule& g = gauss_legendre(std::max(rule.nodes_per_panel, min_nodes));
    AxisGrid out;
    out.nodes.reserve(panels.size() * g.nodes.size());
    out.weights.reserve(panels.size() * g.nodes.size());
    for (const auto& [a, b] : panels) {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            out.nodes.push_back(mid + half * g.nodes[k]);
            out.weights.push_back(half * g.weights[k]);
        }
    }
    return out;
}

std::size_t TensorGrid::size() const {
    std::size_t n = 1;
    for (const auto& g : grids) n *= g.nodes.size();
    return n;
}

std::vector<std::vector<double>> TensorGrid::node_lists() const {
    std::vector<std::vector<double>> out;
    for (const auto& g : grids) out.push_back(g.nodes);
    return out;
}

std::vector<double> TensorGrid::weights() const {
    std::vector<double> w{1.0};
    for (const auto& g : grids) {
        std::vector<double> next;
        next.reserve(w.size() * g.weights.size());
        for (double wj : g.weights)
            for (double wi : w) next.push_back(wi * wj);
        w = std::move(next);
    }
    return w;
}

TensorGrid tensor_grid(const HyperRect& box, std::vector<std::size_t> axes, const QuadratureRule& rule,
                       const std::vector<std::vector<double>>& extra_edges, const std::vector<int>& min_nodes) {
    TensorGrid t;
    t.axes = std::move(axes);
    for (std::size_t a : t.axes) {
        std::span<const double> extra;
        if (a < extra_edges.size()) extra = extra_edges[a];
        const int mn = a < min_nodes.size() ? min_nodes[a] : 0;
        t.grids.push_back(axis_grid(box.lo(a), box.hi(a), rule, a, extra, mn));
    }
    return t;
}

TensorGrid tensor_grid(const HyperRect& box, const QuadratureRule& rule,
                       const std::vector<std::vector<double>>& extra_edges, const std::vector<int>& min_nodes) {
    std::vector<std::size_t> axes(box.dims());
    for (std::size_t i = 0; i < axes.size(); ++i) axes[i] = i;
    return tensor_grid(box, std::move(axes), rule, extra_edges, min_nodes);
}

std::vector<double> sample(const PointEvaluator& f, const TensorGrid& grid) {
    std::vector<std::size_t> dims;
    for (const auto& g : grid.grids) dims.push_back(g.nodes.size());
    std::vector<double> out;
    out.reserve(grid.size());
    std::vector<double> p(dims.size());
    for (detail::Odometer it(dims); !it.done(); it.next()) {
        for (std::size_t j = 0; j < dims.size(); ++j) p[j] = grid.grids[j].nodes[it.index()[j]];
        const double v = f(p);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "quadrature: non-finite integrand value at node (";
            for (std::size_t j = 0; j < p.size(); ++j) os << (j ? "," : "") << p[j];
            os << ")";
            throw std::domain_error(os.str());
        }
        out.push_back(v);
    }
    return out;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
    if (weights.size() != values.size()) throw std::invalid_argument("weighted_sum: size mismatch");
    std::vector<double> prod(values.size());
    for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = weights[j] * values[j];
    return pairwise_sum(prod);
}

double integrate(const PointEvaluator& f, const HyperRect& domain, const QuadratureRule& rule) {
    auto grid = tensor_grid(domain, rule);
    return weighted_sum(grid.weights(), sample(f, grid));
}

double l2_norm(const PointEvaluator& f, const HyperRect& domain, const QuadratureRule& rule) {
    return std::sqrt(integrate([&](std::span<const double> s) { double v = f(s); return v * v; }, domain, rule));
}

double l2_error(const PointEvaluator& f, const PointEvaluator& g, const HyperRect& domain, const QuadratureRule& rule) {
    return std::sqrt(integrate([&](std::span<const double> s) { double v = f(s) - g(s); return v * v; }, domain, rule));
}

} // namespace sobolev
