#pragma once

// Tensor Legendre series on a box, kept in coefficient form so high degrees stay well conditioned.

#include "sobolev/core.hpp"
#include "sobolev/polyrep.hpp"

#include <initializer_list>
#include <span>
#include <vector>

namespace sobolev {

/// Unnormalized P_0..P_n at x, written into out[0..n].
void legendre_values(int n, double x, std::span<double> out);
double legendre_p(int n, double x);

/// Normalized tensor value prod_i sqrt(d_i + 1/2) P_{d_i}(s_i) on [-1,1]^N.
double legendre_eval(const MultiIndex& d, std::span<const double> s);

/// sum_k c_k prod_i P_{k_i}(x_i(s_i)) with x_i the affine map of [lo_i, hi_i] onto [-1, 1].
class LegendreSeries {
public:
    static constexpr int kMaxMonomialDegree = 30;

    LegendreSeries() = default;
    LegendreSeries(HyperRect domain, MultiIndex degree);
    LegendreSeries(HyperRect domain, MultiIndex degree, std::vector<double> coeffs);

    static LegendreSeries constant(const HyperRect& domain, double value);
    /// Coefficients given in the L2-orthonormal basis of the box.
    static LegendreSeries from_orthonormal(const HyperRect& domain, const MultiIndex& degree,
                                           std::span<const double> coeffs);

    const HyperRect& domain() const { return domain_; }
    std::size_t dims() const { return domain_.dims(); }
    const MultiIndex& degree() const { return degree_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    std::vector<std::size_t> extents() const;
    std::vector<double> orthonormal_coeffs() const;

    double operator()(std::span<const double> s) const;
    double operator()(std::initializer_list<double> s) const {
        return (*this)(std::span<const double>(s.begin(), s.size()));
    }
    std::vector<double> eval_on_grid(const std::vector<std::vector<double>>& axis_points) const;

    LegendreSeries derivative(std::size_t axis) const;
    LegendreSeries derivative(const MultiIndex& alpha) const;
    /// Antiderivative along `axis` vanishing at the lower edge.
    LegendreSeries antiderivative(std::size_t axis) const;
    /// Multiplies by p_k(s_axis - lo_axis).
    LegendreSeries multiply_by_shifted_power(std::size_t axis, int k) const;
    LegendreSeries pin(std::size_t axis, double value) const;
    LegendreSeries pin_lower(std::size_t axis) const { return pin(axis, domain_.lo(axis)); }
    bool is_constant_along(std::size_t axis) const;
    LegendreSeries with_degree(const MultiIndex& degree) const;

    double l2_norm_squared() const;
    double integral() const;

    /// Exact change of basis to a single-cell PiecewisePoly; throws std::domain_error above kMaxMonomialDegree.
    PiecewisePoly to_piecewise() const;

    LegendreSeries operator+(const LegendreSeries& other) const;
    LegendreSeries operator-(const LegendreSeries& other) const;
    LegendreSeries operator*(double scale) const;

private:
    HyperRect domain_;
    MultiIndex degree_;
    std::vector<double> coeffs_;
};

inline LegendreSeries operator*(double scale, const LegendreSeries& f) { return f * scale; }

} // namespace sobolev
