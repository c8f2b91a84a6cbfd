#include "doctest.h"

#include "sobolev/legendre.hpp"
#include "sobolev/quadrature.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace sobolev;

namespace {

LegendreSeries random_series(std::mt19937_64& rng, const HyperRect& box, const MultiIndex& degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(lattice_size(degree));
    for (auto& x : c) x = u(rng);
    return LegendreSeries(box, degree, c);
}

void check_same_function(const LegendreSeries& a, const PiecewisePoly& b, std::mt19937_64& rng) {
    const HyperRect& box = a.domain();
    std::vector<double> s(box.dims());
    for (int t = 0; t < 20; ++t) {
        for (std::size_t i = 0; i < box.dims(); ++i)
            s[i] = std::uniform_real_distribution<double>(box.lo(i), box.hi(i))(rng);
        CHECK(a(s) == doctest::Approx(b(s)).epsilon(1e-11).scale(1.0));
    }
}

} // namespace

TEST_CASE("Legendre recurrence values") {
    CHECK(legendre_p(2, 1.0) == doctest::Approx(1.0));
    CHECK(legendre_p(2, 0.5) == doctest::Approx(-0.125));
    CHECK(legendre_p(5, -1.0) == doctest::Approx(-1.0));
    CHECK(legendre_eval(MultiIndex{0}, std::vector<double>{0.37}) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(legendre_eval(MultiIndex{1, 2}, std::vector<double>{1.0, 1.0}) ==
          doctest::Approx(std::sqrt(1.5) * std::sqrt(2.5)));
}

TEST_CASE("integral of P_m^2 is 1/(m+1/2)") {
    const auto& g = gauss_legendre(20);
    for (int m = 0; m <= 12; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.nodes.size(); ++j) acc += g.weights[j] * std::pow(legendre_p(m, g.nodes[j]), 2);
        CHECK(acc == doctest::Approx(1.0 / (m + 0.5)).epsilon(1e-14));
    }
}

TEST_CASE("series operations match the monomial representation") {
    std::mt19937_64 rng(5);
    const HyperRect box({-0.5, 1.0}, {1.5, 2.25});
    const auto f = random_series(rng, box, MultiIndex{6, 4});
    const auto pf = f.to_piecewise();
    check_same_function(f, pf, rng);
    check_same_function(f.derivative(0), pf.derivative(0), rng);
    check_same_function(f.derivative(MultiIndex{2, 3}), pf.derivative(MultiIndex{2, 3}), rng);
    check_same_function(f.antiderivative(1), pf.antiderivative(1), rng);
    check_same_function(f.multiply_by_shifted_power(0, 3), pf.multiply_by_shifted_power(0, 3), rng);
    check_same_function(f.pin_lower(1), pf.pin_lower(1), rng);
    // monomials about the lower corner lose a few digits to cancellation at degree 6
    CHECK(f.integral() == doctest::Approx(pf.integral()).epsilon(1e-10));
}

TEST_CASE("antiderivative vanishes at the lower edge and inverts the derivative") {
    std::mt19937_64 rng(9);
    const HyperRect box({0.0}, {3.0});
    const auto f = random_series(rng, box, MultiIndex{40});
    const auto F = f.antiderivative(0);
    CHECK(std::abs(F({0.0})) < 1e-13);
    const auto back = F.derivative(0);
    for (double x : {0.1, 1.3, 2.9}) CHECK(back({x}) == doctest::Approx(f({x})).epsilon(1e-12));
}

TEST_CASE("orthonormal coefficients carry the L2 norm") {
    std::mt19937_64 rng(2);
    const HyperRect box({-1.0, 0.0}, {2.0, 0.5});
    std::vector<double> c(lattice_size(MultiIndex{3, 2}));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double sq = 0.0;
    for (auto& x : c) {
        x = u(rng);
        sq += x * x;
    }
    const auto f = LegendreSeries::from_orthonormal(box, MultiIndex{3, 2}, c);
    CHECK(f.l2_norm_squared() == doctest::Approx(sq).epsilon(1e-14));
    const auto back = f.orthonormal_coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) CHECK(back[j] == doctest::Approx(c[j]).epsilon(1e-14));
}

TEST_CASE("pinned series are constant along the pinned axis") {
    std::mt19937_64 rng(3);
    const auto f = random_series(rng, HyperRect::cube(2), MultiIndex{3, 3});
    CHECK_FALSE(f.is_constant_along(0));
    const auto p = f.pin(0, 0.25);
    CHECK(p.is_constant_along(0));
    CHECK(p({-0.9, 0.4}) == doctest::Approx(f({0.25, 0.4})).epsilon(1e-14));
}

TEST_CASE("monomial conversion is refused above degree 30") {
    const LegendreSeries f(HyperRect::cube(1), MultiIndex{31});
    CHECK_THROWS_AS(f.to_piecewise(), std::domain_error);
    CHECK_NOTHROW(LegendreSeries(HyperRect::cube(1), MultiIndex{30}).to_piecewise());
}
