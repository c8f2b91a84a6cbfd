#include "sobolev/norms.hpp"

#include "sobolev/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sobolev {

namespace {

double squared_integral(const PointEvaluator& f, const TensorGrid& grid) {
    auto v = sample(f, grid);
    for (double& x : v) x *= x;
    return weighted_sum(grid.weights(), v);
}

std::vector<MultiIndex> simplex(const MultiIndex& delta, int order) {
    std::vector<MultiIndex> out;
    for (const auto& a : multiindex_range(delta))
        if (a.l1() <= order) out.push_back(a);
    return out;
}

double inactive_width(const HyperRect& d, const SubdomainSpec& spec) {
    double w = 1.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (!spec.is_active(i)) w *= d.width(i);
    return w;
}

std::vector<std::vector<double>> breaks_of(const PiecewisePoly& f) { return f.all_breaks(); }
std::vector<std::vector<double>> breaks_of(const LegendreSeries& f) { return std::vector<std::vector<double>>(f.dims()); }
const MultiIndex& degree_of(const PiecewisePoly& f) { return f.degree_cap(); }
const MultiIndex& degree_of(const LegendreSeries& f) { return f.degree(); }

template <class A>
std::vector<int> min_nodes_for(const A& approx) {
    std::vector<int> m(approx.dims());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = degree_of(approx)[i] + 8;
    return m;
}

template <class A>
ErrorProfile derivative_errors_impl(const AnalyticFunction& u, const A& approx, const MultiIndex& delta,
                                    const QuadratureRule& rule) {
    if (!(approx.domain() == u.domain())) throw std::invalid_argument("derivative_errors: domains differ");
    if (!leq(delta, u.delta())) {
        throw std::invalid_argument("derivative_errors: order " + delta.to_string() + " exceeds the smoothness " +
                                    u.delta().to_string());
    }
    const auto grid = tensor_grid(u.domain(), rule, breaks_of(approx), min_nodes_for(approx));
    const auto weights = grid.weights();
    const auto nodes = grid.node_lists();
    ErrorProfile p{delta, {}};
    for (const auto& alpha : multiindex_range(delta)) {
        auto exact = sample(u.derivative(alpha), grid);
        const auto approx_vals = approx.derivative(alpha).eval_on_grid(nodes);
        for (std::size_t j = 0; j < exact.size(); ++j) {
            const double e = exact[j] - approx_vals[j];
            exact[j] = e * e;
        }
        p.squared.push_back(weighted_sum(weights, exact));
    }
    return p;
}

template <class A>
double dc_error_impl(const AnalyticFunction& u, const A& approx, const MultiIndex& gamma, const QuadratureRule& rule) {
    if (!(approx.domain() == u.domain())) throw std::invalid_argument("dc_error: domains differ");
    const auto traces = extract_traces(u, gamma);
    const auto extra = breaks_of(approx);
    const auto min_nodes = min_nodes_for(approx);
    double total = 0.0;
    for (const auto& alpha : multiindex_range(gamma)) {
        const auto spec = face_spec(alpha, gamma);
        const auto grid = tensor_grid(u.domain(), spec.active_axes(), rule, extra, min_nodes);
        auto exact = sample(traces[alpha].evaluator(), grid);
        std::vector<std::vector<double>> nodes(u.dims());
        for (std::size_t i = 0; i < u.dims(); ++i) nodes[i] = {u.domain().lo(i)};
        for (std::size_t j = 0; j < grid.axes.size(); ++j) nodes[grid.axes[j]] = grid.grids[j].nodes;
        const auto vals = approx.derivative(alpha).eval_on_grid(nodes);
        for (std::size_t j = 0; j < exact.size(); ++j) {
            const double e = exact[j] - vals[j];
            exact[j] = e * e;
        }
        total += weighted_sum(grid.weights(), exact);
    }
    return std::sqrt(total);
}

} // namespace

double sobolev_norm(const AnalyticFunction& u, const MultiIndex& gamma, const QuadratureRule& rule) {
    if (!leq(gamma, u.delta())) throw std::invalid_argument("sobolev_norm: derivative order unavailable");
    const auto grid = tensor_grid(u.domain(), rule);
    double acc = 0.0;
    for (const auto& a : multiindex_range(gamma)) acc += squared_integral(u.derivative(a), grid);
    return std::sqrt(acc);
}

double w_norm(const AnalyticFunction& u, int order, const QuadratureRule& rule) {
    if (order > u.delta().max_entry() || order < 0) throw std::invalid_argument("w_norm: derivative order unavailable");
    const auto grid = tensor_grid(u.domain(), rule);
    double acc = 0.0;
    for (const auto& a : simplex(MultiIndex::filled(u.dims(), order), order)) {
        if (!leq(a, u.delta())) throw std::invalid_argument("w_norm: derivative " + a.to_string() + " unavailable");
        acc += squared_integral(u.derivative(a), grid);
    }
    return std::sqrt(acc);
}

double dc_norm(const AnalyticFunction& u, const MultiIndex& gamma, const QuadratureRule& rule) {
    return bundle_norm(extract_traces(u, gamma), rule);
}

double sobolev_norm(const PiecewisePoly& u, const MultiIndex& gamma) {
    double acc = 0.0;
    for (const auto& a : multiindex_range(gamma)) {
        auto d = u.derivative(a);
        acc += pw_inner(d, d);
    }
    return std::sqrt(acc);
}

double w_norm(const PiecewisePoly& u, int order) {
    double acc = 0.0;
    for (const auto& a : simplex(MultiIndex::filled(u.dims(), order), order)) {
        auto d = u.derivative(a);
        acc += pw_inner(d, d);
    }
    return std::sqrt(acc);
}

double dc_norm(const PiecewisePoly& u, const MultiIndex& gamma) { return bundle_norm(extract_traces_poly(u, gamma)); }

double sobolev_norm(const LegendreSeries& u, const MultiIndex& gamma) {
    double acc = 0.0;
    for (const auto& a : multiindex_range(gamma)) acc += u.derivative(a).l2_norm_squared();
    return std::sqrt(acc);
}

double dc_norm(const LegendreSeries& u, const MultiIndex& gamma) { return bundle_norm(extract_traces_poly(u, gamma)); }

double face_norm_squared(const PiecewisePoly& f, const SubdomainSpec& spec) {
    PiecewisePoly g = f;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (!spec.is_active(i)) g = g.pin_lower(i);
    return pw_inner(g, g) / inactive_width(f.domain(), spec);
}

double face_norm_squared(const LegendreSeries& f, const SubdomainSpec& spec) {
    LegendreSeries g = f;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (!spec.is_active(i)) g = g.pin_lower(i);
    return g.l2_norm_squared() / inactive_width(f.domain(), spec);
}

double face_norm_squared(const TraceFunction& f, const QuadratureRule& rule) {
    const auto grid = tensor_grid(f.domain(), f.active_axes(), rule);
    return squared_integral(f.evaluator(), grid);
}

double bundle_norm(const BasicTraceBundle<PiecewisePoly>& b) {
    double acc = 0.0;
    for (const auto& a : multiindex_range(b.delta())) acc += face_norm_squared(b[a], b.spec(a));
    return std::sqrt(acc);
}

double bundle_norm(const BasicTraceBundle<LegendreSeries>& b) {
    double acc = 0.0;
    for (const auto& a : multiindex_range(b.delta())) acc += face_norm_squared(b[a], b.spec(a));
    return std::sqrt(acc);
}

double bundle_norm(const TraceBundle& b, const QuadratureRule& rule) {
    double acc = 0.0;
    for (const auto& v : b.entries()) acc += face_norm_squared(v, rule);
    return std::sqrt(acc);
}

double ErrorProfile::l2() const { return std::sqrt(squared.front()); }

double ErrorProfile::s_norm(const MultiIndex& gamma) const {
    double acc = 0.0;
    for (const auto& a : multiindex_range(gamma)) acc += squared[lattice_position(a, delta)];
    return std::sqrt(acc);
}

double ErrorProfile::w_norm(int order) const {
    if (order > *std::min_element(delta.entries().begin(), delta.entries().end())) {
        throw std::invalid_argument("ErrorProfile::w_norm: order exceeds the recorded derivatives");
    }
    double acc = 0.0;
    for (const auto& a : simplex(delta, order)) acc += squared[lattice_position(a, delta)];
    return std::sqrt(acc);
}

ErrorProfile derivative_errors(const AnalyticFunction& u, const PiecewisePoly& approx, const MultiIndex& delta,
                               const QuadratureRule& rule) {
    return derivative_errors_impl(u, approx, delta, rule);
}

ErrorProfile derivative_errors(const AnalyticFunction& u, const LegendreSeries& approx, const MultiIndex& delta,
                               const QuadratureRule& rule) {
    return derivative_errors_impl(u, approx, delta, rule);
}

double l2_error(const AnalyticFunction& u, const PiecewisePoly& approx, const QuadratureRule& rule) {
    return derivative_errors(u, approx, MultiIndex::zeros(u.dims()), rule).l2();
}

double l2_error(const AnalyticFunction& u, const LegendreSeries& approx, const QuadratureRule& rule) {
    return derivative_errors(u, approx, MultiIndex::zeros(u.dims()), rule).l2();
}

double dc_error(const AnalyticFunction& u, const PiecewisePoly& approx, const MultiIndex& gamma,
                const QuadratureRule& rule) {
    return dc_error_impl(u, approx, gamma, rule);
}

double dc_error(const AnalyticFunction& u, const LegendreSeries& approx, const MultiIndex& gamma,
                const QuadratureRule& rule) {
    return dc_error_impl(u, approx, gamma, rule);
}

} // namespace sobolev
