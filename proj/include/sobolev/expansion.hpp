#pragma once

// The reconstruction map from lower-face traces back to a function, and its inverse.

#include "sobolev/core.hpp"
#include "sobolev/funcmodel.hpp"
#include "sobolev/legendre.hpp"
#include "sobolev/polyrep.hpp"
#include "sobolev/quadrature.hpp"

#include <concepts>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sobolev {

/// Function representations on which the per-axis operators act exactly.
template <class F>
concept TensorRep = requires(const F& f, std::size_t axis, int k) {
    { f.domain() } -> std::convertible_to<HyperRect>;
    { f.derivative(axis) } -> std::same_as<F>;
    { f.antiderivative(axis) } -> std::same_as<F>;
    { f.multiply_by_shifted_power(axis, k) } -> std::same_as<F>;
    { f.pin_lower(axis) } -> std::same_as<F>;
    { f.is_constant_along(axis) } -> std::same_as<bool>;
    { f + f } -> std::same_as<F>;
};

enum class AxisMode { Identity, Multiplier, Volterra };

const char* to_string(AxisMode mode);

class AxisOperator {
public:
    AxisOperator(std::size_t axis, int order_alpha, int order_delta);

    std::size_t axis() const { return axis_; }
    int order_alpha() const { return alpha_; }
    int order_delta() const { return delta_; }
    AxisMode mode() const { return mode_; }

private:
    std::size_t axis_;
    int alpha_;
    int delta_;
    AxisMode mode_;
};

class TensorOperator {
public:
    TensorOperator(const MultiIndex& alpha, const MultiIndex& delta);
    const std::vector<AxisOperator>& factors() const { return factors_; }

private:
    std::vector<AxisOperator> factors_;
};

/// Multiplier: p_alpha(s_i - a_i) v. Volterra: alpha-fold antiderivative from a_i, which equals
/// the integral of p_{alpha-1}(s_i - theta) v(theta) over [a_i, s_i]. Identity: v.
template <TensorRep F>
F apply_axis_op(const AxisOperator& op, const F& v) {
    switch (op.mode()) {
    case AxisMode::Identity:
        return v;
    case AxisMode::Multiplier:
        return v.multiply_by_shifted_power(op.axis(), op.order_alpha());
    case AxisMode::Volterra: {
        F g = v;
        for (int j = 0; j < op.order_alpha(); ++j) g = g.antiderivative(op.axis());
        return g;
    }
    }
    throw std::logic_error("apply_axis_op: unknown mode");
}

template <TensorRep F>
F apply_tensor_op(const TensorOperator& op, const F& v) {
    F g = v;
    for (const auto& f : op.factors()) g = apply_axis_op(f, g);
    return g;
}

/// Throws std::invalid_argument if any face function varies along an inactive axis or the
/// domains disagree.
template <TensorRep F>
void validate_bundle(const BasicTraceBundle<F>& bundle) {
    const auto alphas = multiindex_range(bundle.delta());
    if (bundle.size() != alphas.size()) throw std::invalid_argument("reconstruct: incomplete trace bundle");
    const HyperRect dom = bundle.entries().front().domain();
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        const auto& v = bundle.entries()[j];
        if (!(v.domain() == dom)) throw std::invalid_argument("reconstruct: trace domains disagree");
        const auto spec = face_spec(alphas[j], bundle.delta());
        for (std::size_t i = 0; i < spec.size(); ++i) {
            if (!spec.is_active(i) && !v.is_constant_along(i)) {
                throw std::invalid_argument("reconstruct: trace for alpha " + alphas[j].to_string() +
                                            " varies along inactive axis " + std::to_string(i) + " (face " +
                                            spec.to_string() + ")");
            }
        }
    }
}

/// u = sum over alpha <= delta of G^delta_alpha v^alpha, summed in range order.
template <TensorRep F>
F reconstruct(const BasicTraceBundle<F>& bundle) {
    validate_bundle(bundle);
    const auto alphas = multiindex_range(bundle.delta());
    F u = apply_tensor_op(TensorOperator(alphas[0], bundle.delta()), bundle.entries()[0]);
    for (std::size_t j = 1; j < alphas.size(); ++j) {
        u = u + apply_tensor_op(TensorOperator(alphas[j], bundle.delta()), bundle.entries()[j]);
    }
    return u;
}

/// Throws std::domain_error unless D^alpha u is continuous across every axis-i break whenever
/// alpha_i < delta_i (tolerance scaled by the coefficient magnitude).
void check_membership(const PiecewisePoly& u, const MultiIndex& delta, double tol = 1e-10);

/// v^alpha = D^alpha u pinned at the lower edge of every axis with alpha_i < delta_i.
template <TensorRep F>
BasicTraceBundle<F> extract_traces_poly(const F& u, const MultiIndex& delta) {
    if (delta.size() != u.domain().dims()) throw std::invalid_argument("extract_traces_poly: dimension mismatch");
    if constexpr (std::same_as<F, PiecewisePoly>) check_membership(u, delta);
    BasicTraceBundle<F> b(delta);
    for (const auto& alpha : multiindex_range(delta)) {
        F g = u.derivative(alpha);
        for (std::size_t i = 0; i < delta.size(); ++i)
            if (alpha[i] < delta[i]) g = g.pin_lower(i);
        b[alpha] = std::move(g);
    }
    return b;
}

/// Both sides of the identity  int_{a}^{s} G^{d}_{k} v = G^{d+1}_{k+1} v  along axis 0.
std::pair<PiecewisePoly, PiecewisePoly> fund_int_check(int delta1, int k, const PiecewisePoly& v);

/// (G^delta_alpha v)(s) for a non-polynomial trace, with the Volterra integrals done by quadrature.
double evaluate_summand(const TraceFunction& v, const MultiIndex& alpha, const MultiIndex& delta,
                        std::span<const double> point, const QuadratureRule& rule);

} // namespace sobolev
