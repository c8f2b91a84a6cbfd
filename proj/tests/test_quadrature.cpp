#include "doctest.h"

#include "sobolev/benchlab.hpp"
#include "sobolev/legendre.hpp"
#include "sobolev/quadrature.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using namespace sobolev;

TEST_CASE("two-point Gauss integrates cubics exactly") {
    const auto& g = gauss_legendre(2);
    double acc = 0.0;
    for (std::size_t j = 0; j < 2; ++j) acc += g.weights[j] * g.nodes[j] * g.nodes[j];
    CHECK(acc == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(g.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("Gauss rules: weights sum to 2 and Legendre polynomials are orthogonal") {
    for (int n : {1, 5, 16, 64, 300}) {
        const auto& g = gauss_legendre(n);
        double w = 0.0;
        for (double x : g.weights) w += x;
        CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    }
    const auto& g = gauss_legendre(16);
    double acc = 0.0;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) acc += g.weights[j] * legendre_p(2, g.nodes[j]) * legendre_p(3, g.nodes[j]);
    CHECK(std::abs(acc) < 1e-15);
}

TEST_CASE("graded rule reproduces the integral of (d^5 u)^2 for example1") {
    const auto u = example1();
    const auto rule = rule_for(u);
    const auto& d5 = u.derivative(MultiIndex{5});
    const double val = integrate([&](std::span<const double> s) { return std::pow(d5(s), 2); }, u.domain(), rule);
    CHECK(std::abs(val - 1.0) <= 1e-8);
}

TEST_CASE("doubling panels leaves smooth integrals unchanged") {
    const HyperRect box({-1.0, 0.0}, {2.0, 1.5});
    const PointEvaluator f = [](std::span<const double> s) { return std::exp(s[0]) * std::cos(3.0 * s[1]); };
    QuadratureRule a, b;
    b.panels_per_axis = 2 * a.panels_per_axis;
    const double ia = integrate(f, box, a), ib = integrate(f, box, b);
    CHECK(std::abs(ia - ib) <= 1e-10 * std::abs(ib));
    const double exact = (std::exp(2.0) - std::exp(-1.0)) * std::sin(4.5) / 3.0;
    CHECK(ia == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("quadrature of a piecewise polynomial matches its exact integral") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const HyperRect box({-1.0, 0.5}, {1.0, 2.0});
    const std::vector<std::vector<double>> breaks{{-0.3, 0.4}, {1.1}};
    PiecewisePoly shape(box, breaks, MultiIndex{4, 3});
    std::vector<double> c(shape.raw().size());
    for (auto& x : c) x = u(rng);
    const PiecewisePoly p(box, breaks, MultiIndex{4, 3}, c);
    QuadratureRule rule;
    rule.mandatory_splits = breaks;
    const double q = integrate([&](std::span<const double> s) { return p(s); }, box, rule);
    CHECK(q == doctest::Approx(p.integral()).epsilon(1e-12));
}

TEST_CASE("grids put nodes strictly inside panels split at breakpoints") {
    QuadratureRule rule;
    rule.mandatory_splits = {{-0.5, 0.5}};
    const auto g = axis_grid(-1.0, 1.0, rule, 0);
    for (double x : g.nodes) {
        CHECK(x != -0.5);
        CHECK(x != 0.5);
    }
    double w = 0.0;
    for (double x : g.weights) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sampling reports non-finite integrands") {
    const PointEvaluator bad = [](std::span<const double> s) {
        return s[0] > 0.5 ? std::numeric_limits<double>::infinity() : 1.0;
    };
    CHECK_THROWS_AS(integrate(bad, HyperRect::cube(1), QuadratureRule{}), std::domain_error);
}

TEST_CASE("invalid rules are rejected") {
    QuadratureRule r;
    r.nodes_per_panel = 1;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
    r = {};
    r.grading = 1.5;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

TEST_CASE("pairwise summation") {
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
}
