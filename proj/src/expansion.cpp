#include "sobolev/expansion.hpp"

#include "sobolev/detail/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sobolev {

const char* to_string(AxisMode mode) {
    switch (mode) {
    case AxisMode::Identity: return "identity";
    case AxisMode::Multiplier: return "multiplier";
    case AxisMode::Volterra: return "volterra";
    }
    return "?";
}

AxisOperator::AxisOperator(std::size_t axis, int order_alpha, int order_delta)
    : axis_(axis), alpha_(order_alpha), delta_(order_delta) {
    if (order_alpha < 0 || order_alpha > order_delta) {
        throw std::invalid_argument("AxisOperator: need 0 <= alpha_i <= delta_i");
    }
    if (order_alpha < order_delta) mode_ = AxisMode::Multiplier;
    else if (order_delta == 0) mode_ = AxisMode::Identity;
    else mode_ = AxisMode::Volterra;
}

TensorOperator::TensorOperator(const MultiIndex& alpha, const MultiIndex& delta) {
    if (alpha.size() != delta.size() || !leq(alpha, delta)) {
        throw std::invalid_argument("TensorOperator: alpha " + alpha.to_string() + " not <= delta " + delta.to_string());
    }
    for (std::size_t i = 0; i < alpha.size(); ++i) factors_.emplace_back(i, alpha[i], delta[i]);
}

void check_membership(const PiecewisePoly& u, const MultiIndex& delta, double tol) {
    const double limit = tol * std::max(1.0, u.max_abs_coeff());
    for (std::size_t axis = 0; axis < u.dims(); ++axis) {
        if (u.breaks(axis).empty()) continue;
        const auto edges = u.cell_edges(axis);
        const std::size_t nb = u.breaks(axis).size();
        PiecewisePoly g = u;
        for (int k = 0; k < delta[axis]; ++k) {
            const std::size_t m = static_cast<std::size_t>(g.degree_cap()[axis] + 1);
            std::vector<double> worst(nb, 0.0);
            detail::map_fibers(g.raw(), g.extents(), axis, 1, [&](std::span<const double> f, std::span<double>) {
                for (std::size_t b = 0; b < nb; ++b) {
                    const double left = eval_scaled_monomials(f.subspan(b * m, m), edges[b + 1] - edges[b]);
                    const double right = f[(b + 1) * m];
                    worst[b] = std::max(worst[b], std::abs(left - right));
                }
            });
            for (std::size_t b = 0; b < nb; ++b) {
                if (worst[b] > limit) {
                    std::ostringstream os;
                    os << "extract_traces_poly: D^alpha u with alpha = " << MultiIndex::unit(u.dims(), axis, k).to_string()
                       << " jumps by " << worst[b] << " across the break s_" << axis << " = " << edges[b + 1]
                       << ", so u is not in S^" << delta.to_string();
                    throw std::domain_error(os.str());
                }
            }
            g = g.derivative(axis);
        }
    }
}

std::pair<PiecewisePoly, PiecewisePoly> fund_int_check(int delta1, int k, const PiecewisePoly& v) {
    if (k < 0 || k > delta1) throw std::invalid_argument("fund_int_check: need 0 <= k <= delta1");
    PiecewisePoly lhs = apply_axis_op(AxisOperator(0, k, delta1), v).antiderivative(0);
    PiecewisePoly rhs = apply_axis_op(AxisOperator(0, k + 1, delta1 + 1), v);
    return {std::move(lhs), std::move(rhs)};
}

double evaluate_summand(const TraceFunction& v, const MultiIndex& alpha, const MultiIndex& delta,
                        std::span<const double> point, const QuadratureRule& rule) {
    const HyperRect& dom = v.domain();
    if (!dom.contains(point)) throw std::domain_error("evaluate_summand: point outside the domain");
    if (!(v.spec() == face_spec(alpha, delta))) {
        throw std::invalid_argument("evaluate_summand: trace face does not match alpha " + alpha.to_string());
    }
    const std::size_t n = dom.dims();
    double factor = 1.0;
    std::vector<std::size_t> volterra;
    for (std::size_t i = 0; i < n; ++i) {
        const AxisOperator op(i, alpha[i], delta[i]);
        if (op.mode() == AxisMode::Multiplier) {
            factor *= Poly1D::kernel(alpha[i])(point[i] - dom.lo(i));
        } else if (op.mode() == AxisMode::Volterra) {
            if (point[i] == dom.lo(i)) return 0.0;
            volterra.push_back(i);
        }
    }
    const auto& active = v.active_axes();
    std::vector<double> a(active.size());
    if (volterra.empty()) {
        for (std::size_t j = 0; j < active.size(); ++j) a[j] = point[active[j]];
        return factor * v.eval_active(a);
    }

    std::vector<double> lo(dom.lo()), hi(dom.hi());
    for (std::size_t i : volterra) hi[i] = point[i];
    HyperRect box(lo, hi);
    const auto grid = tensor_grid(box, volterra, rule);
    const auto integrand = [&](std::span<const double> theta) {
        double w = 1.0;
        for (std::size_t j = 0; j < volterra.size(); ++j) {
            const std::size_t i = volterra[j];
            w *= Poly1D::kernel(alpha[i] - 1)(point[i] - theta[j]);
        }
        for (std::size_t j = 0, q = 0; j < active.size(); ++j) {
            if (q < volterra.size() && volterra[q] == active[j]) a[j] = theta[q++];
            else a[j] = point[active[j]];
        }
        return w * v.eval_active(a);
    };
    return factor * weighted_sum(grid.weights(), sample(integrand, grid));
}

} // namespace sobolev
