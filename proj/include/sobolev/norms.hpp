#pragma once

// L2, box Sobolev (S), simplex Sobolev (W) and trace-space (dc) norms, plus error norms
// between an analytic target and an approximant.

#include "sobolev/core.hpp"
#include "sobolev/funcmodel.hpp"
#include "sobolev/legendre.hpp"
#include "sobolev/polyrep.hpp"
#include "sobolev/quadrature.hpp"

#include <vector>

namespace sobolev {

/// sqrt(sum_{alpha <= gamma} ||D^alpha u||^2), by quadrature.
double sobolev_norm(const AnalyticFunction& u, const MultiIndex& gamma, const QuadratureRule& rule);
/// sqrt(sum_{|alpha|_1 <= order} ||D^alpha u||^2); needs order <= min(delta).
double w_norm(const AnalyticFunction& u, int order, const QuadratureRule& rule);
/// sqrt(sum_{alpha <= gamma} ||B^{alpha-gamma} D^alpha u||^2 on the face).
double dc_norm(const AnalyticFunction& u, const MultiIndex& gamma, const QuadratureRule& rule);

// exact versions
double sobolev_norm(const PiecewisePoly& u, const MultiIndex& gamma);
double w_norm(const PiecewisePoly& u, int order);
double dc_norm(const PiecewisePoly& u, const MultiIndex& gamma);
double sobolev_norm(const LegendreSeries& u, const MultiIndex& gamma);
double dc_norm(const LegendreSeries& u, const MultiIndex& gamma);

/// Squared L2 norm over the face: integral over the active axes only.
double face_norm_squared(const PiecewisePoly& f, const SubdomainSpec& spec);
double face_norm_squared(const LegendreSeries& f, const SubdomainSpec& spec);
double face_norm_squared(const TraceFunction& f, const QuadratureRule& rule);

double bundle_norm(const BasicTraceBundle<PiecewisePoly>& b);
double bundle_norm(const BasicTraceBundle<LegendreSeries>& b);
double bundle_norm(const TraceBundle& b, const QuadratureRule& rule);

/// ||D^alpha (u - A)||^2 for every alpha <= delta, in multiindex_range(delta) order.
struct ErrorProfile {
    MultiIndex delta;
    std::vector<double> squared;

    double l2() const;
    /// Box norm over alpha <= gamma (gamma <= delta).
    double s_norm(const MultiIndex& gamma) const;
    double s_norm() const { return s_norm(delta); }
    /// Simplex norm over |alpha|_1 <= order.
    double w_norm(int order) const;
};

ErrorProfile derivative_errors(const AnalyticFunction& u, const PiecewisePoly& approx, const MultiIndex& delta,
                               const QuadratureRule& rule);
ErrorProfile derivative_errors(const AnalyticFunction& u, const LegendreSeries& approx, const MultiIndex& delta,
                               const QuadratureRule& rule);

double l2_error(const AnalyticFunction& u, const PiecewisePoly& approx, const QuadratureRule& rule);
double l2_error(const AnalyticFunction& u, const LegendreSeries& approx, const QuadratureRule& rule);

/// Trace-space distance between u and an approximant at order gamma.
double dc_error(const AnalyticFunction& u, const PiecewisePoly& approx, const MultiIndex& gamma,
                const QuadratureRule& rule);
double dc_error(const AnalyticFunction& u, const LegendreSeries& approx, const MultiIndex& gamma,
                const QuadratureRule& rule);

} // namespace sobolev
