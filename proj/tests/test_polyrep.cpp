#include "doctest.h"

#include "sobolev/polyrep.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace sobolev;

namespace {

PiecewisePoly two_cell_step() {
    // -1 on [-1,0), +1 on [0,1]
    return PiecewisePoly(HyperRect::cube(1), {{0.0}}, MultiIndex{0}, {-1.0, 1.0});
}

PiecewisePoly random_pw(std::mt19937_64& rng, const HyperRect& box, const MultiIndex& cap, int max_breaks) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> nb(0, max_breaks);
    std::vector<std::vector<double>> breaks(box.dims());
    for (std::size_t i = 0; i < box.dims(); ++i) {
        int n = nb(rng);
        for (int j = 1; j <= n; ++j) {
            double frac = (j + 0.3 * u(rng)) / (n + 1);
            breaks[i].push_back(box.lo(i) + frac * box.width(i));
        }
    }
    PiecewisePoly f(box, breaks, cap);
    std::vector<double> c(f.raw().size());
    for (auto& x : c) x = u(rng);
    return PiecewisePoly(box, breaks, cap, c);
}

} // namespace

TEST_CASE("kernels p_k") {
    auto p3 = Poly1D::kernel(3);
    CHECK(p3(2.0) == doctest::Approx(8.0 / 6.0).epsilon(1e-15));
    CHECK(p3.degree() == 3);
    CHECK(p3.derivative().coeffs() == Poly1D::kernel(2).coeffs());
    CHECK(Poly1D::kernel(2).antiderivative(0.0).coeffs() == p3.coeffs());

    auto p2 = PiecewisePoly::axis_kernel(HyperRect::cube(1, 0.0, 1.0), 0, 2, 0.0);
    CHECK(p2({1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    auto p3pw = PiecewisePoly::axis_kernel(HyperRect::cube(1, 0.0, 3.0), 0, 3, 0.0);
    CHECK(p3pw({2.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    auto d = p3pw.derivative(0);
    CHECK(max_coeff_difference(d, PiecewisePoly::axis_kernel(HyperRect::cube(1, 0.0, 3.0), 0, 2, 0.0)) < 1e-15);
}

TEST_CASE("half-open cell convention") {
    auto f = two_cell_step();
    CHECK(f({0.0}) == 1.0);
    CHECK(f({-1.0}) == -1.0);
    CHECK(f({1.0}) == 1.0);
    CHECK(f({-1e-300}) == -1.0);
    CHECK_THROWS_AS(f({1.5}), std::domain_error);
}

TEST_CASE("derivatives") {
    CHECK(two_cell_step().derivative(0).max_abs_coeff() == 0.0);

    // x^2 y on [0,1]^2: coefficient of (x^2/2)(y) is 2
    PiecewisePoly f(HyperRect::cube(2, 0.0, 1.0), {}, MultiIndex{2, 1});
    f.set_coeff({0, 0}, MultiIndex{2, 1}, 2.0);
    CHECK(f({0.3, 0.7}) == doctest::Approx(0.3 * 0.3 * 0.7).epsilon(1e-15));
    CHECK(f.derivative(0)({0.3, 0.7}) == doctest::Approx(0.42).epsilon(1e-15));
    CHECK(f.derivative(MultiIndex{2, 1})({0.9, 0.1}) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("antiderivatives") {
    auto one = PiecewisePoly::constant(HyperRect::cube(1, 0.0, 1.0), 1.0);
    CHECK(one.antiderivative(0)({0.4}) == doctest::Approx(0.4));

    auto F = two_cell_step().antiderivative(0);
    for (double x : {-1.0, -0.6, -0.1}) CHECK(F({x}) == doctest::Approx(-(x + 1.0)).epsilon(1e-15));
    for (double x : {0.0, 0.2, 1.0}) CHECK(F({x}) == doctest::Approx(x - 1.0).epsilon(1e-15));
    CHECK(F({-1e-12}) == doctest::Approx(-1.0).epsilon(1e-10));

    auto two = PiecewisePoly::constant(HyperRect::cube(1, 0.0, 1.0), 2.0);
    auto x2 = two.antiderivative(0).antiderivative(0);
    for (double x : {0.0, 0.3, 1.0}) CHECK(x2({x}) == doctest::Approx(x * x).epsilon(1e-15));
}

TEST_CASE("integrals and inner products") {
    auto x = PiecewisePoly::axis_kernel(HyperRect::cube(1), 0, 1, 0.0);
    CHECK(pw_inner(x, x) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(pw_inner(two_cell_step(), two_cell_step()) == doctest::Approx(2.0).epsilon(1e-15));

    // P2 and P3 on [-1,1] are orthogonal; P2 = (3x^2-1)/2 = 3 p2 - 1/2, P3 = (5x^3-3x)/2 = 15 p3 - 1.5 p1
    auto box = HyperRect::cube(1);
    auto P2 = PiecewisePoly::axis_kernel(box, 0, 2, 0.0) * 3.0 - PiecewisePoly::constant(box, 0.5);
    auto P3 = PiecewisePoly::axis_kernel(box, 0, 3, 0.0) * 15.0 - PiecewisePoly::axis_kernel(box, 0, 1, 0.0) * 1.5;
    CHECK(std::abs(pw_inner(P2, P3)) < 1e-12);
    CHECK(pw_inner(P2, P2) == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("derivative inverts antiderivative on random inputs") {
    std::mt19937_64 rng(7);
    HyperRect box({-0.5, 1.0, 0.0}, {1.5, 2.0, 0.25});
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_pw(rng, box, MultiIndex{2, 1, 3}, 3);
        for (std::size_t axis = 0; axis < 3; ++axis) {
            auto back = f.antiderivative(axis).derivative(axis);
            CHECK(max_coeff_difference(back, f) <= 1e-12 * std::max(1.0, f.max_abs_coeff()));
        }
    }
}

TEST_CASE("antiderivative is continuous and vanishes at the lower edge") {
    std::mt19937_64 rng(11);
    HyperRect box({-1.0, -1.0}, {1.0, 1.0});
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_pw(rng, box, MultiIndex{1, 2}, 4);
        auto F = f.antiderivative(0);
        CHECK(F.pin_lower(0).max_abs_coeff() < 1e-15);
        for (double b : f.breaks(0)) {
            for (double y : {-0.9, 0.1, 0.77}) {
                double left = F({std::nextafter(b, -2.0), y});
                double right = F({b, y});
                CHECK(std::abs(left - right) < 1e-12);
            }
        }
    }
}

TEST_CASE("common-refinement products match pointwise products") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    HyperRect box({-1.0, 0.0}, {1.0, 3.0});
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_pw(rng, box, MultiIndex{2, 3}, 3);
        auto g = random_pw(rng, box, MultiIndex{1, 2}, 3);
        auto h = pw_product(f, g);
        for (int j = 0; j < 100; ++j) {
            std::vector<double> s{box.lo(0) + u(rng) * box.width(0), box.lo(1) + u(rng) * box.width(1)};
            double want = f(s) * g(s);
            CHECK(std::abs(h(s) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
        CHECK(pw_inner(f, f) >= 0.0);
    }
}

TEST_CASE("multiply by shifted power and pin") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    HyperRect box({0.5, -2.0}, {2.0, 1.0});
    auto f = random_pw(rng, box, MultiIndex{2, 1}, 2);
    auto g = f.multiply_by_shifted_power(1, 3);
    for (int j = 0; j < 50; ++j) {
        std::vector<double> s{box.lo(0) + u(rng) * box.width(0), box.lo(1) + u(rng) * box.width(1)};
        double z = s[1] - box.lo(1);
        CHECK(g(s) == doctest::Approx(f(s) * z * z * z / 6.0).epsilon(1e-12));
    }
    auto p = f.pin(0, 1.3);
    CHECK(p.is_constant_along(0));
    CHECK_FALSE(f.is_constant_along(0));
    CHECK(p({0.7, 0.2}) == doctest::Approx(f({1.3, 0.2})).epsilon(1e-14));
}

TEST_CASE("grid evaluation agrees with pointwise evaluation") {
    std::mt19937_64 rng(9);
    HyperRect box({-1.0, -1.0}, {1.0, 1.0});
    auto f = random_pw(rng, box, MultiIndex{3, 2}, 3);
    std::vector<std::vector<double>> pts{{-1.0, -0.3, 0.0, 0.9, 1.0}, {-0.7, 0.5, 1.0}};
    auto v = f.eval_on_grid(pts);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 5; ++i) CHECK(v[i + 5 * j] == f({pts[0][i], pts[1][j]}));
}

TEST_CASE("serialization roundtrip is bit exact") {
    std::mt19937_64 rng(13);
    auto f = random_pw(rng, HyperRect({-1.0, 0.1}, {1.0, 0.9}), MultiIndex{2, 3}, 3);
    auto text = serialize(f);
    CHECK(text.rfind("PIECEWISEPOLY v1", 0) == 0);
    auto g = deserialize_piecewise(text);
    CHECK(g.raw() == f.raw());
    CHECK(g.all_breaks() == f.all_breaks());
    CHECK(g.degree_cap() == f.degree_cap());
    CHECK(g.domain() == f.domain());
    CHECK_THROWS_AS(deserialize_piecewise("PIECEWISEPOLY v9\n"), std::invalid_argument);
}
