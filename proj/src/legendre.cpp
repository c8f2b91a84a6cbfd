#include "sobolev/legendre.hpp"

#include "sobolev/detail/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sobolev {

using detail::map_fibers;

void legendre_values(int n, double x, std::span<double> out) {
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = x;
    for (int k = 1; k < n; ++k) out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1);
}

double legendre_p(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre_p: negative degree");
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    legendre_values(n, x, v);
    return v.back();
}

double legendre_eval(const MultiIndex& d, std::span<const double> s) {
    if (s.size() != d.size()) throw std::invalid_argument("legendre_eval: dimension mismatch");
    double r = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) r *= std::sqrt(d[i] + 0.5) * legendre_p(d[i], s[i]);
    return r;
}

namespace {

double to_reference(const HyperRect& box, std::size_t axis, double s) {
    return (2.0 * (s - box.lo(axis)) - box.width(axis)) / box.width(axis);
}

} // namespace

LegendreSeries::LegendreSeries(HyperRect domain, MultiIndex degree)
    : domain_(std::move(domain)), degree_(std::move(degree)) {
    if (degree_.size() != domain_.dims()) throw std::invalid_argument("LegendreSeries: degree/domain dimension mismatch");
    coeffs_.assign(lattice_size(degree_), 0.0);
}

LegendreSeries::LegendreSeries(HyperRect domain, MultiIndex degree, std::vector<double> coeffs)
    : LegendreSeries(std::move(domain), std::move(degree)) {
    if (coeffs.size() != coeffs_.size()) throw std::invalid_argument("LegendreSeries: coefficient count mismatch");
    coeffs_ = std::move(coeffs);
}

LegendreSeries LegendreSeries::constant(const HyperRect& domain, double value) {
    return LegendreSeries(domain, MultiIndex::zeros(domain.dims()), {value});
}

std::vector<std::size_t> LegendreSeries::extents() const {
    std::vector<std::size_t> e(dims());
    for (std::size_t i = 0; i < dims(); ++i) e[i] = static_cast<std::size_t>(degree_[i] + 1);
    return e;
}

LegendreSeries LegendreSeries::from_orthonormal(const HyperRect& domain, const MultiIndex& degree,
                                                std::span<const double> coeffs) {
    LegendreSeries f(domain, degree);
    if (coeffs.size() != f.coeffs_.size()) throw std::invalid_argument("from_orthonormal: coefficient count mismatch");
    std::size_t j = 0;
    for (detail::Odometer k(f.extents()); !k.done(); k.next(), ++j) {
        double scale = 1.0;
        for (std::size_t i = 0; i < f.dims(); ++i) scale *= std::sqrt((2.0 * k.index()[i] + 1.0) / domain.width(i));
        f.coeffs_[j] = coeffs[j] * scale;
    }
    return f;
}

std::vector<double> LegendreSeries::orthonormal_coeffs() const {
    std::vector<double> out(coeffs_.size());
    std::size_t j = 0;
    for (detail::Odometer k(extents()); !k.done(); k.next(), ++j) {
        double scale = 1.0;
        for (std::size_t i = 0; i < dims(); ++i) scale *= std::sqrt(domain_.width(i) / (2.0 * k.index()[i] + 1.0));
        out[j] = coeffs_[j] * scale;
    }
    return out;
}

double LegendreSeries::operator()(std::span<const double> s) const {
    if (!domain_.contains(s)) throw std::domain_error("LegendreSeries: evaluation point outside the domain");
    std::vector<std::vector<double>> pts(dims());
    for (std::size_t i = 0; i < dims(); ++i) pts[i] = {s[i]};
    return eval_on_grid(pts)[0];
}

std::vector<double> LegendreSeries::eval_on_grid(const std::vector<std::vector<double>>& axis_points) const {
    if (axis_points.size() != dims()) throw std::invalid_argument("eval_on_grid: dimension mismatch");
    auto ext = extents();
    std::vector<double> cur = coeffs_;
    for (std::size_t i = 0; i < dims(); ++i) {
        const auto& pts = axis_points[i];
        const std::size_t cols = ext[i];
        std::vector<double> basis(pts.size() * cols);
        for (std::size_t r = 0; r < pts.size(); ++r) {
            legendre_values(degree_[i], to_reference(domain_, i, pts[r]), std::span<double>(basis).subspan(r * cols, cols));
        }
        cur = detail::contract_axis(cur, ext, i, basis, pts.size());
        ext[i] = pts.size();
    }
    return cur;
}

LegendreSeries LegendreSeries::derivative(std::size_t axis) const {
    const int n = degree_[axis];
    if (n == 0) return LegendreSeries(domain_, degree_);
    const double scale = 2.0 / domain_.width(axis);
    auto out = map_fibers(coeffs_, extents(), axis, static_cast<std::size_t>(n), [&](std::span<const double> c, std::span<double> b) {
        // b_{k-1} = (2k-1) (c_k + b_{k+1} / (2k+3))
        double next = 0.0, next2 = 0.0;  // b_{k+1}, b_{k}
        for (int k = n; k >= 1; --k) {
            double bk1 = (2 * k - 1) * (c[static_cast<std::size_t>(k)] + next / (2 * k + 3));
            b[static_cast<std::size_t>(k - 1)] = bk1 * scale;
            next = next2;
            next2 = bk1;
        }
    });
    return LegendreSeries(domain_, degree_.with(axis, n - 1), std::move(out));
}

LegendreSeries LegendreSeries::derivative(const MultiIndex& alpha) const {
    LegendreSeries g = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int k = 0; k < alpha[i]; ++k) g = g.derivative(i);
    return g;
}

LegendreSeries LegendreSeries::antiderivative(std::size_t axis) const {
    const int n = degree_[axis];
    const double half = 0.5 * domain_.width(axis);
    auto out = map_fibers(coeffs_, extents(), axis, static_cast<std::size_t>(n) + 2, [&](std::span<const double> c, std::span<double> a) {
        a[0] += c[0] * half;
        a[1] += c[0] * half;
        for (int k = 1; k <= n; ++k) {
            const double w = c[static_cast<std::size_t>(k)] * half / (2 * k + 1);
            a[static_cast<std::size_t>(k + 1)] += w;
            a[static_cast<std::size_t>(k - 1)] -= w;
        }
    });
    return LegendreSeries(domain_, degree_.with(axis, n + 1), std::move(out));
}

LegendreSeries LegendreSeries::multiply_by_shifted_power(std::size_t axis, int k) const {
    if (k < 0) throw std::invalid_argument("multiply_by_shifted_power: negative order");
    LegendreSeries g = *this;
    const double half = 0.5 * domain_.width(axis);
    for (int j = 1; j <= k; ++j) {
        const int n = g.degree_[axis];
        auto out = map_fibers(g.coeffs_, g.extents(), axis, static_cast<std::size_t>(n) + 2, [&](std::span<const double> c, std::span<double> a) {
            // (x + 1) P_m = P_m + ((m+1) P_{m+1} + m P_{m-1}) / (2m+1)
            for (int m = 0; m <= n; ++m) {
                const double w = c[static_cast<std::size_t>(m)] * half / j;
                a[static_cast<std::size_t>(m)] += w;
                a[static_cast<std::size_t>(m + 1)] += w * (m + 1) / (2 * m + 1);
                if (m > 0) a[static_cast<std::size_t>(m - 1)] += w * m / (2 * m + 1);
            }
        });
        g = LegendreSeries(domain_, g.degree_.with(axis, n + 1), std::move(out));
    }
    return g;
}

LegendreSeries LegendreSeries::pin(std::size_t axis, double value) const {
    if (!(value >= domain_.lo(axis) && value <= domain_.hi(axis))) {
        throw std::domain_error("LegendreSeries::pin: value outside the domain");
    }
    const int n = degree_[axis];
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    legendre_values(n, to_reference(domain_, axis, value), p);
    auto out = map_fibers(coeffs_, extents(), axis, 1, [&](std::span<const double> c, std::span<double> o) {
        double acc = 0.0;
        for (std::size_t m = 0; m < p.size(); ++m) acc += c[m] * p[m];
        o[0] = acc;
    });
    return LegendreSeries(domain_, degree_.with(axis, 0), std::move(out));
}

bool LegendreSeries::is_constant_along(std::size_t axis) const {
    if (degree_[axis] == 0) return true;
    double scale = 0.0;
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    const double tol = 1e-13 * std::max(1.0, scale);
    bool ok = true;
    map_fibers(coeffs_, extents(), axis, 1, [&](std::span<const double> c, std::span<double>) {
        for (std::size_t m = 1; m < c.size(); ++m) ok = ok && std::abs(c[m]) <= tol;
    });
    return ok;
}

LegendreSeries LegendreSeries::with_degree(const MultiIndex& degree) const {
    if (!leq(degree_, degree)) throw std::invalid_argument("LegendreSeries::with_degree: cannot lower the degree");
    LegendreSeries g = *this;
    for (std::size_t i = 0; i < dims(); ++i) {
        if (degree[i] == g.degree_[i]) continue;
        const std::size_t n = static_cast<std::size_t>(g.degree_[i] + 1);
        g.coeffs_ = map_fibers(g.coeffs_, g.extents(), i, static_cast<std::size_t>(degree[i] + 1),
                               [&](std::span<const double> c, std::span<double> o) { std::copy(c.begin(), c.begin() + n, o.begin()); });
        g.degree_ = g.degree_.with(i, degree[i]);
    }
    return g;
}

double LegendreSeries::l2_norm_squared() const {
    double acc = 0.0;
    std::size_t j = 0;
    for (detail::Odometer k(extents()); !k.done(); k.next(), ++j) {
        double w = 1.0;
        for (std::size_t i = 0; i < dims(); ++i) w *= domain_.width(i) / (2.0 * k.index()[i] + 1.0);
        acc += coeffs_[j] * coeffs_[j] * w;
    }
    return acc;
}

double LegendreSeries::integral() const { return coeffs_[0] * domain_.volume(); }

PiecewisePoly LegendreSeries::to_piecewise() const {
    for (std::size_t i = 0; i < dims(); ++i) {
        if (degree_[i] > kMaxMonomialDegree) {
            throw std::domain_error("LegendreSeries::to_piecewise: degree " + std::to_string(degree_[i]) +
                                    " exceeds the monomial conversion limit " + std::to_string(kMaxMonomialDegree));
        }
    }
    auto ext = extents();
    std::vector<double> cur = coeffs_;
    for (std::size_t i = 0; i < dims(); ++i) {
        const int n = degree_[i];
        const double s = 2.0 / domain_.width(i);
        // P_m^{(j)}(-1) = (-1)^{m-j} (m+j)! / (2^j j! (m-j)!)
        std::vector<double> T(static_cast<std::size_t>((n + 1) * (n + 1)), 0.0);
        for (int m = 0; m <= n; ++m) {
            for (int j = 0; j <= m; ++j) {
                double v = factorial(m + j) / (std::ldexp(factorial(j), j) * factorial(m - j));
                if ((m - j) % 2) v = -v;
                T[static_cast<std::size_t>(j * (n + 1) + m)] = v * std::pow(s, j);
            }
        }
        cur = detail::contract_axis(cur, ext, i, T, static_cast<std::size_t>(n + 1));
    }
    return PiecewisePoly(domain_, {}, degree_, std::move(cur));
}

LegendreSeries LegendreSeries::operator+(const LegendreSeries& other) const {
    if (!(domain_ == other.domain_)) throw std::invalid_argument("LegendreSeries: operands live on different domains");
    std::vector<int> d(dims());
    for (std::size_t i = 0; i < dims(); ++i) d[i] = std::max(degree_[i], other.degree_[i]);
    MultiIndex deg(d);
    auto a = with_degree(deg), b = other.with_degree(deg);
    for (std::size_t j = 0; j < a.coeffs_.size(); ++j) a.coeffs_[j] += b.coeffs_[j];
    return a;
}

LegendreSeries LegendreSeries::operator-(const LegendreSeries& other) const { return *this + other * -1.0; }

LegendreSeries LegendreSeries::operator*(double scale) const {
    LegendreSeries g = *this;
    for (double& c : g.coeffs_) c *= scale;
    return g;
}

} // namespace sobolev
