#include "sobolev/projection.hpp"

#include "sobolev/detail/tensor.hpp"
#include "sobolev/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sobolev {

MultiIndex kappa(const MultiIndex& d, const SubdomainSpec& beta) {
    if (d.size() != beta.size()) throw std::invalid_argument("kappa: dimension mismatch");
    std::vector<int> k(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) k[i] = beta.is_active(i) ? d[i] : 0;
    return MultiIndex(std::move(k));
}

double LegendreCoeffs::norm_squared() const {
    double acc = 0.0;
    for (double c : coeffs) acc += c * c;
    return acc;
}

LegendreSeries LegendreCoeffs::to_series() const {
    LegendreSeries s = LegendreSeries::from_orthonormal(domain, degree, coeffs);
    // inactive axes carry the face value itself
    std::vector<double> c = s.coeffs();
    double undo = 1.0;
    for (std::size_t i = 0; i < face.size(); ++i)
        if (!face.is_active(i)) undo *= std::sqrt(domain.width(i));
    for (double& x : c) x *= undo;
    return LegendreSeries(domain, degree, std::move(c));
}

LegendreCoeffs project_legendre(const TraceFunction& f, const MultiIndex& d, const QuadratureRule& rule) {
    const HyperRect& dom = f.domain();
    if (d.size() != dom.dims()) throw std::invalid_argument("project_legendre: degree/domain dimension mismatch");
    LegendreCoeffs out{dom, f.spec(), kappa(d, f.spec()), {}};
    const auto& active = f.active_axes();
    if (active.empty()) {
        out.coeffs = {f.scalar_value()};
        return out;
    }
    std::vector<int> min_nodes(dom.dims());
    for (std::size_t i = 0; i < dom.dims(); ++i) min_nodes[i] = d[i] + 8;
    const auto grid = tensor_grid(dom, active, rule, {}, min_nodes);
    auto vals = sample(f.evaluator(), grid);
    const auto w = grid.weights();
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] *= w[j];

    std::vector<std::size_t> ext;
    for (const auto& g : grid.grids) ext.push_back(g.nodes.size());
    for (std::size_t j = 0; j < active.size(); ++j) {
        const std::size_t axis = active[j];
        const int deg = d[axis];
        const auto& nodes = grid.grids[j].nodes;
        const std::size_t rows = static_cast<std::size_t>(deg) + 1, cols = nodes.size();
        std::vector<double> basis(rows * cols);
        std::vector<double> p(rows);
        const double lo = dom.lo(axis), width = dom.width(axis);
        for (std::size_t c = 0; c < cols; ++c) {
            legendre_values(deg, (2.0 * (nodes[c] - lo) - width) / width, p);
            for (std::size_t r = 0; r < rows; ++r) basis[r * cols + c] = p[r] * std::sqrt((2.0 * r + 1.0) / width);
        }
        vals = detail::contract_axis(vals, ext, j, basis, rows);
        ext[j] = rows;
    }
    out.coeffs = std::move(vals);
    return out;
}

LegendreCoeffs project_legendre(const PointEvaluator& f, const HyperRect& domain, const MultiIndex& d,
                                const QuadratureRule& rule) {
    return project_legendre(TraceFunction(domain, SubdomainSpec(std::vector<int>(domain.dims(), 0)), f), d, rule);
}

BasicTraceBundle<LegendreSeries> project_traces_legendre(const AnalyticFunction& u, const MultiIndex& gamma,
                                                         const MultiIndex& d, const QuadratureRule& rule) {
    const auto traces = extract_traces(u, gamma);
    BasicTraceBundle<LegendreSeries> out(gamma);
    for (const auto& alpha : multiindex_range(gamma)) out[alpha] = project_legendre(traces[alpha], d, rule).to_series();
    return out;
}

LegendreSeries sobolev_project_legendre(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& d,
                                        const QuadratureRule& rule) {
    if (!leq(gamma, u.delta())) {
        throw std::invalid_argument("sobolev_project_legendre: gamma " + gamma.to_string() + " exceeds delta " +
                                    u.delta().to_string());
    }
    return reconstruct(project_traces_legendre(u, gamma, d, rule));
}

LegendreSeries sobolev_project_legendre(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& d) {
    return sobolev_project_legendre(u, gamma, d, rule_for(u));
}

std::vector<double> uniform_breaks(double lo, double hi, int cells) {
    if (cells < 1) throw std::invalid_argument("uniform_breaks: need at least one cell");
    std::vector<double> b;
    for (int j = 1; j < cells; ++j) b.push_back(lo + (hi - lo) * j / cells);
    return b;
}

double CellGrid::cell_volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < face.size(); ++i)
        if (face.is_active(i)) v *= domain.width(i) / counts[i];
    return v;
}

double CellGrid::average(const std::vector<std::size_t>& cell) const {
    std::size_t pos = 0, stride = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        pos += cell.at(i) * stride;
        stride *= static_cast<std::size_t>(counts[i]);
    }
    return averages.at(pos);
}

PiecewisePoly CellGrid::to_piecewise() const {
    std::vector<std::vector<double>> breaks(domain.dims());
    for (std::size_t i = 0; i < domain.dims(); ++i)
        if (face.is_active(i)) breaks[i] = uniform_breaks(domain.lo(i), domain.hi(i), counts[i]);
    return PiecewisePoly(domain, breaks, MultiIndex::zeros(domain.dims()), averages);
}

CellGrid project_step(const TraceFunction& f, const MultiIndex& K, const QuadratureRule& rule) {
    const HyperRect& dom = f.domain();
    if (K.size() != dom.dims()) throw std::invalid_argument("project_step: cell counts/domain dimension mismatch");
    std::vector<int> counts(dom.dims(), 1);
    for (std::size_t i = 0; i < dom.dims(); ++i) {
        if (f.spec().is_active(i)) {
            if (K[i] < 1) throw std::invalid_argument("project_step: need at least one cell per axis");
            counts[i] = K[i];
        }
    }
    CellGrid out{dom, f.spec(), MultiIndex(counts), {}};
    const auto& active = f.active_axes();
    if (active.empty()) {
        out.averages = {f.scalar_value()};
        return out;
    }
    std::vector<std::vector<double>> edges(dom.dims());
    for (std::size_t a : active) edges[a] = uniform_breaks(dom.lo(a), dom.hi(a), counts[a]);
    const auto grid = tensor_grid(dom, active, rule, edges);
    auto vals = sample(f.evaluator(), grid);

    // separable sums: contract each axis with its cell-indicator weight matrix
    std::vector<std::size_t> ext;
    for (const auto& g : grid.grids) ext.push_back(g.nodes.size());
    for (std::size_t j = 0; j < active.size(); ++j) {
        const auto& b = edges[active[j]];
        const auto& g = grid.grids[j];
        const std::size_t rows = static_cast<std::size_t>(counts[active[j]]), cols = g.nodes.size();
        std::vector<double> m(rows * cols, 0.0);
        for (std::size_t c = 0; c < cols; ++c) {
            const auto cell = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), g.nodes[c]) - b.begin());
            m[cell * cols + c] = g.weights[c];
        }
        vals = detail::contract_axis(vals, ext, j, m, rows);
        ext[j] = rows;
    }
    out.averages = std::move(vals);
    const double vol = out.cell_volume();
    for (double& a : out.averages) a /= vol;
    return out;
}

CellGrid project_step(const PointEvaluator& f, const HyperRect& domain, const MultiIndex& K, const QuadratureRule& rule) {
    return project_step(TraceFunction(domain, SubdomainSpec(std::vector<int>(domain.dims(), 0)), f), K, rule);
}

BasicTraceBundle<PiecewisePoly> project_traces_step(const AnalyticFunction& u, const MultiIndex& gamma,
                                                    const MultiIndex& K, const QuadratureRule& rule) {
    const auto traces = extract_traces(u, gamma);
    BasicTraceBundle<PiecewisePoly> out(gamma);
    for (const auto& alpha : multiindex_range(gamma)) out[alpha] = project_step(traces[alpha], K, rule).to_piecewise();
    return out;
}

PiecewisePoly sobolev_project_step(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& K,
                                   const QuadratureRule& rule) {
    if (!leq(gamma, u.delta())) {
        throw std::invalid_argument("sobolev_project_step: gamma " + gamma.to_string() + " exceeds delta " +
                                    u.delta().to_string());
    }
    return reconstruct(project_traces_step(u, gamma, K, rule));
}

PiecewisePoly sobolev_project_step(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& K) {
    return sobolev_project_step(u, gamma, K, rule_for(u));
}

} // namespace sobolev
