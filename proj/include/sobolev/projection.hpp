#pragma once

// Legendre and step-function projections of traces, and the Sobolev projections built from them.

#include "sobolev/core.hpp"
#include "sobolev/funcmodel.hpp"
#include "sobolev/legendre.hpp"
#include "sobolev/polyrep.hpp"
#include "sobolev/quadrature.hpp"

#include <vector>

namespace sobolev {

/// (kappa)_i = d_i on active axes of beta, 0 elsewhere.
MultiIndex kappa(const MultiIndex& d, const SubdomainSpec& beta);

/// Orthonormal Legendre coefficients of a face function over the active axes of `face`.
/// Inactive axes carry degree 0 and no normalization.
struct LegendreCoeffs {
    HyperRect domain;
    SubdomainSpec face;
    MultiIndex degree;
    std::vector<double> coeffs;

    /// Sum of squared coefficients, the squared face norm of the projection.
    double norm_squared() const;
    LegendreSeries to_series() const;
};

/// Orthogonal projection of f onto polynomials of degree kappa(d, face) on its face.
LegendreCoeffs project_legendre(const TraceFunction& f, const MultiIndex& d, const QuadratureRule& rule);
/// Plain projection of a full-dimensional function.
LegendreCoeffs project_legendre(const PointEvaluator& f, const HyperRect& domain, const MultiIndex& d,
                                const QuadratureRule& rule);

/// Projections of every trace of order gamma.
BasicTraceBundle<LegendreSeries> project_traces_legendre(const AnalyticFunction& u, const MultiIndex& gamma,
                                                         const MultiIndex& d, const QuadratureRule& rule);

/// P_d^gamma u, a single-cell polynomial of degree <= d + gamma kept in Legendre form.
LegendreSeries sobolev_project_legendre(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& d,
                                        const QuadratureRule& rule);
LegendreSeries sobolev_project_legendre(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& d);

/// Cell averages of a face function on a uniform grid over its active axes.
struct CellGrid {
    HyperRect domain;
    SubdomainSpec face;
    /// K_i on active axes, 1 on inactive ones.
    MultiIndex counts;
    /// First axis fastest.
    std::vector<double> averages;

    /// Volume of one cell measured over the active axes.
    double cell_volume() const;
    double average(const std::vector<std::size_t>& cell) const;
    PiecewisePoly to_piecewise() const;
};

CellGrid project_step(const TraceFunction& f, const MultiIndex& K, const QuadratureRule& rule);
CellGrid project_step(const PointEvaluator& f, const HyperRect& domain, const MultiIndex& K, const QuadratureRule& rule);

BasicTraceBundle<PiecewisePoly> project_traces_step(const AnalyticFunction& u, const MultiIndex& gamma,
                                                    const MultiIndex& K, const QuadratureRule& rule);

/// Q_K^gamma u, piecewise polynomial of degree <= gamma on the uniform K-grid.
PiecewisePoly sobolev_project_step(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& K,
                                   const QuadratureRule& rule);
PiecewisePoly sobolev_project_step(const AnalyticFunction& u, const MultiIndex& gamma, const MultiIndex& K);

/// Interior edges of the uniform K-cell split of [lo, hi].
std::vector<double> uniform_breaks(double lo, double hi, int cells);

} // namespace sobolev
