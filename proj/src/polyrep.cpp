#include "sobolev/polyrep.hpp"

#include "sobolev/detail/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace sobolev {

using detail::map_fibers;

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double eval_scaled_monomials(std::span<const double> c, double t) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = c[k] + acc * t / static_cast<double>(k + 1);
    return acc;
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// coefficients of f(t + h) in the basis t^j/j!
void recenter(std::span<const double> c, double h, std::span<double> out) {
    const std::size_t n = c.size();
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        double hp = 1.0;
        for (std::size_t k = j; k < n; ++k) {
            acc += c[k] * hp;
            hp *= h / static_cast<double>(k - j + 1);
        }
        out[j] = acc;
    }
}

std::vector<double> edges_of(const HyperRect& d, const std::vector<double>& breaks, std::size_t axis) {
    std::vector<double> e;
    e.reserve(breaks.size() + 2);
    e.push_back(d.lo(axis));
    e.insert(e.end(), breaks.begin(), breaks.end());
    e.push_back(d.hi(axis));
    return e;
}

bool near(double a, double b, double scale) { return std::abs(a - b) <= 1e-13 * std::max(1.0, scale); }

} // namespace

Poly1D::Poly1D(double center, std::vector<double> coeffs) : center_(center), coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Poly1D Poly1D::kernel(int k, double center) {
    if (k < 0) throw std::invalid_argument("Poly1D::kernel: negative order");
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c.back() = 1.0;
    return Poly1D(center, std::move(c));
}

bool Poly1D::is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

double Poly1D::operator()(double s) const { return eval_scaled_monomials(coeffs_, s - center_); }

Poly1D Poly1D::derivative() const {
    if (coeffs_.size() == 1) return Poly1D(center_, {0.0});
    return Poly1D(center_, std::vector<double>(coeffs_.begin() + 1, coeffs_.end()));
}

Poly1D Poly1D::antiderivative(double from) const {
    std::vector<double> c(coeffs_.size() + 1, 0.0);
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
    c[0] = -eval_scaled_monomials(c, from - center_);
    return Poly1D(center_, std::move(c));
}

PiecewisePoly::PiecewisePoly(HyperRect domain, std::vector<std::vector<double>> breaks, MultiIndex degree_cap)
    : domain_(std::move(domain)), breaks_(std::move(breaks)), cap_(std::move(degree_cap)) {
    if (breaks_.empty()) breaks_.resize(domain_.dims());
    if (breaks_.size() != domain_.dims() || cap_.size() != domain_.dims()) {
        throw std::invalid_argument("PiecewisePoly: breaks/degree cap do not match domain dimension");
    }
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        double prev = domain_.lo(i);
        for (double b : breaks_[i]) {
            if (!(b > prev) || !(b < domain_.hi(i))) {
                throw std::invalid_argument("PiecewisePoly: breaks must be strictly increasing inside the domain");
            }
            prev = b;
        }
    }
    coeffs_.assign(detail::extent_product(extents()), 0.0);
}

PiecewisePoly::PiecewisePoly(HyperRect domain, std::vector<std::vector<double>> breaks, MultiIndex degree_cap,
                             std::vector<double> coeffs)
    : PiecewisePoly(std::move(domain), std::move(breaks), std::move(degree_cap)) {
    if (coeffs.size() != coeffs_.size()) {
        throw std::invalid_argument("PiecewisePoly: expected " + std::to_string(coeffs_.size()) +
                                    " coefficients, got " + std::to_string(coeffs.size()));
    }
    coeffs_ = std::move(coeffs);
}

PiecewisePoly PiecewisePoly::constant(const HyperRect& domain, double value) {
    return PiecewisePoly(domain, {}, MultiIndex::zeros(domain.dims()), {value});
}

PiecewisePoly PiecewisePoly::axis_kernel(const HyperRect& domain, std::size_t axis, int k, double anchor) {
    auto cap = MultiIndex::zeros(domain.dims()).with(axis, k);
    PiecewisePoly f(domain, {}, cap);
    std::vector<double> c(static_cast<std::size_t>(k) + 1);
    recenter(Poly1D::kernel(k).coeffs(), domain.lo(axis) - anchor, c);
    f.coeffs_ = c;
    return f;
}

std::size_t PiecewisePoly::num_cells() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dims(); ++i) n *= cells(i);
    return n;
}

std::vector<double> PiecewisePoly::cell_edges(std::size_t axis) const { return edges_of(domain_, breaks_[axis], axis); }

std::vector<std::size_t> PiecewisePoly::extents() const {
    std::vector<std::size_t> e(dims());
    for (std::size_t i = 0; i < dims(); ++i) e[i] = static_cast<std::size_t>(cap_[i] + 1) * cells(i);
    return e;
}

namespace {
std::size_t flat_index(const std::vector<std::size_t>& ext, const MultiIndex& cap,
                       const std::vector<std::size_t>& cell, const MultiIndex& k) {
    std::size_t pos = 0, stride = 1;
    for (std::size_t i = 0; i < ext.size(); ++i) {
        if (k[i] > cap[i] || cell[i] >= ext[i] / static_cast<std::size_t>(cap[i] + 1)) {
            throw std::out_of_range("PiecewisePoly: coefficient index out of range");
        }
        pos += (static_cast<std::size_t>(k[i]) + static_cast<std::size_t>(cap[i] + 1) * cell[i]) * stride;
        stride *= ext[i];
    }
    return pos;
}
} // namespace

double PiecewisePoly::coeff(const std::vector<std::size_t>& cell, const MultiIndex& k) const {
    return coeffs_[flat_index(extents(), cap_, cell, k)];
}

void PiecewisePoly::set_coeff(const std::vector<std::size_t>& cell, const MultiIndex& k, double value) {
    coeffs_[flat_index(extents(), cap_, cell, k)] = value;
}

std::size_t PiecewisePoly::locate(std::size_t axis, double s) const {
    const auto& b = breaks_[axis];
    return static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), s) - b.begin());
}

double PiecewisePoly::operator()(std::span<const double> s) const {
    if (!domain_.contains(s)) throw std::domain_error("PiecewisePoly: evaluation point outside the domain");
    std::vector<std::vector<double>> pts(dims());
    for (std::size_t i = 0; i < dims(); ++i) pts[i] = {s[i]};
    return eval_on_grid(pts)[0];
}

std::vector<double> PiecewisePoly::eval_on_grid(const std::vector<std::vector<double>>& axis_points) const {
    if (axis_points.size() != dims()) throw std::invalid_argument("eval_on_grid: dimension mismatch");
    auto ext = extents();
    std::vector<double> cur = coeffs_;
    for (std::size_t i = 0; i < dims(); ++i) {
        const auto& pts = axis_points[i];
        const auto edges = cell_edges(i);
        const std::size_t m = static_cast<std::size_t>(cap_[i] + 1);
        std::vector<std::size_t> cell(pts.size());
        std::vector<double> t(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) {
            cell[j] = locate(i, pts[j]);
            t[j] = pts[j] - edges[cell[j]];
        }
        cur = map_fibers(cur, ext, i, pts.size(), [&](std::span<const double> f, std::span<double> out) {
            for (std::size_t j = 0; j < pts.size(); ++j) out[j] = eval_scaled_monomials(f.subspan(cell[j] * m, m), t[j]);
        });
        ext[i] = pts.size();
    }
    return cur;
}

PiecewisePoly PiecewisePoly::derivative(std::size_t axis) const {
    const int c = cap_[axis];
    if (c == 0) return PiecewisePoly(domain_, breaks_, cap_);
    const std::size_t m = static_cast<std::size_t>(c + 1), nc = cells(axis);
    auto out = map_fibers(coeffs_, extents(), axis, (m - 1) * nc, [&](std::span<const double> f, std::span<double> o) {
        for (std::size_t cell = 0; cell < nc; ++cell)
            for (std::size_t k = 0; k + 1 < m; ++k) o[k + (m - 1) * cell] = f[k + 1 + m * cell];
    });
    return PiecewisePoly(domain_, breaks_, cap_.with(axis, c - 1), std::move(out));
}

PiecewisePoly PiecewisePoly::derivative(const MultiIndex& alpha) const {
    PiecewisePoly g = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int k = 0; k < alpha[i]; ++k) g = g.derivative(i);
    return g;
}

PiecewisePoly PiecewisePoly::antiderivative(std::size_t axis) const {
    const std::size_t m = static_cast<std::size_t>(cap_[axis] + 1), nc = cells(axis);
    const auto edges = cell_edges(axis);
    auto out = map_fibers(coeffs_, extents(), axis, (m + 1) * nc, [&](std::span<const double> f, std::span<double> o) {
        double carry = 0.0;
        for (std::size_t cell = 0; cell < nc; ++cell) {
            auto blk = o.subspan((m + 1) * cell, m + 1);
            blk[0] = carry;
            for (std::size_t k = 0; k < m; ++k) blk[k + 1] = f[k + m * cell];
            carry = eval_scaled_monomials(blk, edges[cell + 1] - edges[cell]);
        }
    });
    return PiecewisePoly(domain_, breaks_, cap_.with(axis, cap_[axis] + 1), std::move(out));
}

PiecewisePoly PiecewisePoly::multiply_by_shifted_power(std::size_t axis, int k) const {
    if (k < 0) throw std::invalid_argument("multiply_by_shifted_power: negative order");
    if (k == 0) return *this;
    const std::size_t m = static_cast<std::size_t>(cap_[axis] + 1), nc = cells(axis);
    const std::size_t mk = m + static_cast<std::size_t>(k);
    const auto edges = cell_edges(axis);
    const auto kern = Poly1D::kernel(k).coeffs();
    auto out = map_fibers(coeffs_, extents(), axis, mk * nc, [&](std::span<const double> f, std::span<double> o) {
        std::vector<double> q(kern.size());
        for (std::size_t cell = 0; cell < nc; ++cell) {
            recenter(kern, edges[cell] - domain_.lo(axis), q);
            for (std::size_t a = 0; a < m; ++a) {
                const double fa = f[a + m * cell];
                if (fa == 0.0) continue;
                for (std::size_t b = 0; b < q.size(); ++b)
                    o[a + b + mk * cell] += fa * q[b] * binomial(static_cast<int>(a + b), static_cast<int>(a));
            }
        }
    });
    return PiecewisePoly(domain_, breaks_, cap_.with(axis, cap_[axis] + k), std::move(out));
}

PiecewisePoly PiecewisePoly::pin(std::size_t axis, double value) const {
    if (!(value >= domain_.lo(axis) && value <= domain_.hi(axis))) {
        throw std::domain_error("PiecewisePoly::pin: value outside the domain");
    }
    const std::size_t m = static_cast<std::size_t>(cap_[axis] + 1);
    const std::size_t cell = locate(axis, value);
    const double t = value - cell_edges(axis)[cell];
    auto out = map_fibers(coeffs_, extents(), axis, 1, [&](std::span<const double> f, std::span<double> o) {
        o[0] = eval_scaled_monomials(f.subspan(cell * m, m), t);
    });
    auto br = breaks_;
    br[axis].clear();
    return PiecewisePoly(domain_, std::move(br), cap_.with(axis, 0), std::move(out));
}

bool PiecewisePoly::is_constant_along(std::size_t axis) const {
    if (cap_[axis] == 0 && breaks_[axis].empty()) return true;
    const double tol = 1e-13 * std::max(1.0, max_abs_coeff());
    const std::size_t m = static_cast<std::size_t>(cap_[axis] + 1), nc = cells(axis);
    bool ok = true;
    map_fibers(coeffs_, extents(), axis, 1, [&](std::span<const double> f, std::span<double>) {
        for (std::size_t cell = 0; cell < nc; ++cell) {
            for (std::size_t k = 1; k < m; ++k) ok = ok && std::abs(f[k + m * cell]) <= tol;
            ok = ok && std::abs(f[m * cell] - f[0]) <= tol;
        }
    });
    return ok;
}

PiecewisePoly PiecewisePoly::refine(std::size_t axis, const std::vector<double>& breaks) const {
    const double scale = std::max(std::abs(domain_.lo(axis)), std::abs(domain_.hi(axis)));
    for (double b : breaks_[axis]) {
        if (std::none_of(breaks.begin(), breaks.end(), [&](double x) { return near(x, b, scale); })) {
            throw std::invalid_argument("PiecewisePoly::refine: new breaks must contain the existing ones");
        }
    }
    auto br = breaks_;
    br[axis] = breaks;
    PiecewisePoly g(domain_, br, cap_);
    const auto old_edges = cell_edges(axis);
    const auto new_edges = g.cell_edges(axis);
    const std::size_t m = static_cast<std::size_t>(cap_[axis] + 1), nc = g.cells(axis);
    std::vector<std::size_t> src(nc);
    for (std::size_t c = 0; c < nc; ++c) src[c] = locate(axis, 0.5 * (new_edges[c] + new_edges[c + 1]));
    g.coeffs_ = map_fibers(coeffs_, extents(), axis, m * nc, [&](std::span<const double> f, std::span<double> o) {
        for (std::size_t c = 0; c < nc; ++c)
            recenter(f.subspan(src[c] * m, m), new_edges[c] - old_edges[src[c]], o.subspan(c * m, m));
    });
    return g;
}

PiecewisePoly PiecewisePoly::refine_to(const std::vector<std::vector<double>>& breaks) const {
    PiecewisePoly g = *this;
    for (std::size_t i = 0; i < dims(); ++i) {
        if (breaks[i] != breaks_[i]) g = g.refine(i, breaks[i]);
    }
    return g;
}

PiecewisePoly PiecewisePoly::with_degree_cap(const MultiIndex& cap) const {
    if (!leq(cap_, cap)) throw std::invalid_argument("with_degree_cap: cannot lower the degree cap");
    PiecewisePoly g = *this;
    for (std::size_t i = 0; i < dims(); ++i) {
        const std::size_t m = static_cast<std::size_t>(g.cap_[i] + 1), nc = cells(i);
        const std::size_t mn = static_cast<std::size_t>(cap[i] + 1);
        if (m == mn) continue;
        g.coeffs_ = map_fibers(g.coeffs_, g.extents(), i, mn * nc, [&](std::span<const double> f, std::span<double> o) {
            for (std::size_t c = 0; c < nc; ++c)
                for (std::size_t k = 0; k < m; ++k) o[k + mn * c] = f[k + m * c];
        });
        g.cap_ = g.cap_.with(i, cap[i]);
    }
    return g;
}

double PiecewisePoly::integral() const {
    auto ext = extents();
    std::vector<double> cur = coeffs_;
    for (std::size_t i = 0; i < dims(); ++i) {
        const std::size_t m = static_cast<std::size_t>(cap_[i] + 1), nc = cells(i);
        const auto edges = cell_edges(i);
        cur = map_fibers(cur, ext, i, 1, [&](std::span<const double> f, std::span<double> o) {
            double acc = 0.0;
            for (std::size_t c = 0; c < nc; ++c) {
                const double h = edges[c + 1] - edges[c];
                double hp = h;
                for (std::size_t k = 0; k < m; ++k) {
                    acc += f[k + m * c] * hp;
                    hp *= h / static_cast<double>(k + 2);
                }
            }
            o[0] = acc;
        });
        ext[i] = 1;
    }
    return cur[0];
}

double PiecewisePoly::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

namespace {
std::pair<PiecewisePoly, PiecewisePoly> align(const PiecewisePoly& a, const PiecewisePoly& b, bool caps) {
    if (!(a.domain() == b.domain())) throw std::invalid_argument("PiecewisePoly: operands live on different domains");
    std::vector<std::vector<double>> br(a.dims());
    for (std::size_t i = 0; i < a.dims(); ++i) {
        const double scale = std::max(std::abs(a.domain().lo(i)), std::abs(a.domain().hi(i)));
        br[i] = merge_breaks(a.breaks(i), b.breaks(i), scale);
    }
    auto ra = a.refine_to(br), rb = b.refine_to(br);
    if (caps) {
        std::vector<int> c(a.dims());
        for (std::size_t i = 0; i < a.dims(); ++i) c[i] = std::max(a.degree_cap()[i], b.degree_cap()[i]);
        MultiIndex cap(c);
        ra = ra.with_degree_cap(cap);
        rb = rb.with_degree_cap(cap);
    }
    return {std::move(ra), std::move(rb)};
}
} // namespace

PiecewisePoly PiecewisePoly::operator+(const PiecewisePoly& other) const {
    auto [a, b] = align(*this, other, true);
    for (std::size_t j = 0; j < a.coeffs_.size(); ++j) a.coeffs_[j] += b.coeffs_[j];
    return a;
}

PiecewisePoly PiecewisePoly::operator-(const PiecewisePoly& other) const { return *this + other * -1.0; }

PiecewisePoly PiecewisePoly::operator*(double scale) const {
    PiecewisePoly g = *this;
    for (double& c : g.coeffs_) c *= scale;
    return g;
}

double pw_eval(const PiecewisePoly& f, std::span<const double> s) { return f(s); }
PiecewisePoly pw_derivative(const PiecewisePoly& f, std::size_t axis) { return f.derivative(axis); }
PiecewisePoly pw_antiderivative(const PiecewisePoly& f, std::size_t axis) { return f.antiderivative(axis); }
double pw_integral(const PiecewisePoly& f) { return f.integral(); }

PiecewisePoly pw_product(const PiecewisePoly& f, const PiecewisePoly& g) {
    auto [a, b] = align(f, g, false);
    const std::size_t n = a.dims();
    const MultiIndex& ca = a.degree_cap();
    const MultiIndex& cb = b.degree_cap();
    PiecewisePoly out(a.domain(), a.all_breaks(), ca + cb);
    std::vector<double> coeffs(out.raw().size(), 0.0);

    const auto ea = a.extents(), eb = b.extents(), eo = out.extents();
    std::vector<std::size_t> ncell(n), ma(n), mb(n), mo(n);
    for (std::size_t i = 0; i < n; ++i) {
        ncell[i] = a.cells(i);
        ma[i] = static_cast<std::size_t>(ca[i] + 1);
        mb[i] = static_cast<std::size_t>(cb[i] + 1);
        mo[i] = ma[i] + mb[i] - 1;
    }
    for (detail::Odometer cell(ncell); !cell.done(); cell.next()) {
        for (detail::Odometer ka(ma); !ka.done(); ka.next()) {
            std::size_t ia = 0, st = 1;
            for (std::size_t i = 0; i < n; ++i) {
                ia += (ka.index()[i] + ma[i] * cell.index()[i]) * st;
                st *= ea[i];
            }
            const double va = a.raw()[ia];
            if (va == 0.0) continue;
            for (detail::Odometer kb(mb); !kb.done(); kb.next()) {
                std::size_t ib = 0, io = 0, sb = 1, so = 1;
                double w = va;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t x = ka.index()[i], y = kb.index()[i];
                    ib += (y + mb[i] * cell.index()[i]) * sb;
                    io += (x + y + mo[i] * cell.index()[i]) * so;
                    sb *= eb[i];
                    so *= eo[i];
                    w *= binomial(static_cast<int>(x + y), static_cast<int>(x));
                }
                coeffs[io] += w * b.raw()[ib];
            }
        }
    }
    return PiecewisePoly(a.domain(), a.all_breaks(), ca + cb, std::move(coeffs));
}

double pw_inner(const PiecewisePoly& f, const PiecewisePoly& g) { return pw_product(f, g).integral(); }

std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b, double scale) {
    std::vector<double> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    for (double x : all) {
        if (out.empty() || !near(out.back(), x, scale)) out.push_back(x);
    }
    return out;
}

double max_coeff_difference(const PiecewisePoly& a, const PiecewisePoly& b) { return (a - b).max_abs_coeff(); }

namespace {
std::string hex(double x) {
    std::ostringstream os;
    os << std::hexfloat << x;
    return os.str();
}

double parse_hex(const std::string& tok) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw std::invalid_argument("deserialize: bad number '" + tok + "'");
    return v;
}

void expect(std::istream& is, const std::string& word) {
    std::string tok;
    if (!(is >> tok) || tok != word) {
        throw std::invalid_argument("deserialize: expected '" + word + "', got '" + tok + "'");
    }
}
} // namespace

std::string serialize(const PiecewisePoly& f) {
    std::ostringstream os;
    os << "PIECEWISEPOLY v1\n";
    os << "dims " << f.dims() << '\n';
    for (std::size_t i = 0; i < f.dims(); ++i) {
        os << "axis " << i << " lo " << hex(f.domain().lo(i)) << " hi " << hex(f.domain().hi(i)) << " cap "
           << f.degree_cap()[i] << " breaks " << f.breaks(i).size();
        for (double b : f.breaks(i)) os << ' ' << hex(b);
        os << '\n';
    }
    os << "coeffs " << f.raw().size() << '\n';
    for (double c : f.raw()) os << hex(c) << '\n';
    os << "end\n";
    return os.str();
}

PiecewisePoly deserialize_piecewise(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    expect(is, "PIECEWISEPOLY");
    is >> tok;
    if (tok != "v1") throw std::invalid_argument("deserialize: unsupported version '" + tok + "'");
    expect(is, "dims");
    std::size_t n = 0;
    if (!(is >> n) || n == 0) throw std::invalid_argument("deserialize: bad dimension");
    std::vector<double> lo(n), hi(n);
    std::vector<int> cap(n);
    std::vector<std::vector<double>> breaks(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t axis = 0, nb = 0;
        expect(is, "axis");
        is >> axis;
        if (axis != i) throw std::invalid_argument("deserialize: axes out of order");
        expect(is, "lo");
        is >> tok;
        lo[i] = parse_hex(tok);
        expect(is, "hi");
        is >> tok;
        hi[i] = parse_hex(tok);
        expect(is, "cap");
        is >> cap[i];
        expect(is, "breaks");
        is >> nb;
        for (std::size_t j = 0; j < nb; ++j) {
            is >> tok;
            breaks[i].push_back(parse_hex(tok));
        }
    }
    expect(is, "coeffs");
    std::size_t nc = 0;
    is >> nc;
    std::vector<double> c(nc);
    for (auto& x : c) {
        if (!(is >> tok)) throw std::invalid_argument("deserialize: truncated coefficient list");
        x = parse_hex(tok);
    }
    expect(is, "end");
    return PiecewisePoly(HyperRect(lo, hi), breaks, MultiIndex(cap), std::move(c));
}

} // namespace sobolev
