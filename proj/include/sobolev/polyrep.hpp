#pragma once

// Tensor-grid piecewise polynomials in the basis (s - c)^k / k! about each cell's lower corner.

#include "sobolev/core.hpp"

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sobolev {

/// One-variable polynomial sum_k c_k (s - center)^k / k!.
class Poly1D {
public:
    Poly1D() = default;
    Poly1D(double center, std::vector<double> coeffs);

    /// p_k(s - center) = (s - center)^k / k!.
    static Poly1D kernel(int k, double center = 0.0);

    double center() const { return center_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    bool is_zero() const;

    double operator()(double s) const;
    Poly1D derivative() const;
    /// Antiderivative vanishing at `from`.
    Poly1D antiderivative(double from) const;

private:
    double center_ = 0.0;
    std::vector<double> coeffs_{0.0};
};

double factorial(int n);

/// Evaluates sum_k c[k] t^k / k! with Horner.
double eval_scaled_monomials(std::span<const double> c, double t);

class PiecewisePoly {
public:
    PiecewisePoly() = default;
    /// Zero function on the given grid.
    PiecewisePoly(HyperRect domain, std::vector<std::vector<double>> breaks, MultiIndex degree_cap);
    /// `coeffs` is a tensor with per-axis extent (cap_i + 1) * cells_i; along axis i the flat index
    /// is k_i + (cap_i + 1) * cell_i, first axis fastest.
    PiecewisePoly(HyperRect domain, std::vector<std::vector<double>> breaks, MultiIndex degree_cap,
                  std::vector<double> coeffs);

    static PiecewisePoly constant(const HyperRect& domain, double value);
    /// p_k(s_axis - anchor) as a single-cell polynomial.
    static PiecewisePoly axis_kernel(const HyperRect& domain, std::size_t axis, int k, double anchor);

    const HyperRect& domain() const { return domain_; }
    std::size_t dims() const { return domain_.dims(); }
    const std::vector<double>& breaks(std::size_t axis) const { return breaks_[axis]; }
    const std::vector<std::vector<double>>& all_breaks() const { return breaks_; }
    const MultiIndex& degree_cap() const { return cap_; }
    std::size_t cells(std::size_t axis) const { return breaks_[axis].size() + 1; }
    std::size_t num_cells() const;
    /// lo, interior breaks, hi.
    std::vector<double> cell_edges(std::size_t axis) const;
    std::vector<std::size_t> extents() const;
    const std::vector<double>& raw() const { return coeffs_; }

    double coeff(const std::vector<std::size_t>& cell, const MultiIndex& k) const;
    void set_coeff(const std::vector<std::size_t>& cell, const MultiIndex& k, double value);

    /// Index of the half-open cell containing s along `axis` (last cell closed).
    std::size_t locate(std::size_t axis, double s) const;

    double operator()(std::span<const double> s) const;
    double operator()(std::initializer_list<double> s) const {
        return (*this)(std::span<const double>(s.begin(), s.size()));
    }
    /// Values on the tensor grid axis_points[0] x ... , first axis fastest.
    std::vector<double> eval_on_grid(const std::vector<std::vector<double>>& axis_points) const;

    PiecewisePoly derivative(std::size_t axis) const;
    PiecewisePoly derivative(const MultiIndex& alpha) const;
    /// Antiderivative along `axis` from the lower domain edge, continuous across breaks.
    PiecewisePoly antiderivative(std::size_t axis) const;
    /// Multiplies by p_k(s_axis - lo_axis).
    PiecewisePoly multiply_by_shifted_power(std::size_t axis, int k) const;
    /// Restriction s_axis = value, represented as constant along `axis`.
    PiecewisePoly pin(std::size_t axis, double value) const;
    PiecewisePoly pin_lower(std::size_t axis) const { return pin(axis, domain_.lo(axis)); }
    bool is_constant_along(std::size_t axis) const;

    /// Same function on a finer grid; `breaks` must contain the current breaks along `axis`.
    PiecewisePoly refine(std::size_t axis, const std::vector<double>& breaks) const;
    PiecewisePoly refine_to(const std::vector<std::vector<double>>& breaks) const;
    PiecewisePoly with_degree_cap(const MultiIndex& cap) const;

    double integral() const;
    double max_abs_coeff() const;

    PiecewisePoly operator+(const PiecewisePoly& other) const;
    PiecewisePoly operator-(const PiecewisePoly& other) const;
    PiecewisePoly operator*(double scale) const;
    PiecewisePoly operator-() const { return (*this) * -1.0; }

private:
    HyperRect domain_;
    std::vector<std::vector<double>> breaks_;
    MultiIndex cap_;
    std::vector<double> coeffs_;
};

inline PiecewisePoly operator*(double scale, const PiecewisePoly& f) { return f * scale; }

double pw_eval(const PiecewisePoly& f, std::span<const double> s);
PiecewisePoly pw_derivative(const PiecewisePoly& f, std::size_t axis);
PiecewisePoly pw_antiderivative(const PiecewisePoly& f, std::size_t axis);
double pw_integral(const PiecewisePoly& f);
PiecewisePoly pw_product(const PiecewisePoly& f, const PiecewisePoly& g);
double pw_inner(const PiecewisePoly& f, const PiecewisePoly& g);

/// Sorted union of two break lists (entries within 1e-14 relative are merged).
std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b, double scale = 1.0);

/// Largest coefficient difference after both are put on a common grid and degree cap.
double max_coeff_difference(const PiecewisePoly& a, const PiecewisePoly& b);

std::string serialize(const PiecewisePoly& f);
PiecewisePoly deserialize_piecewise(const std::string& text);

} // namespace sobolev
