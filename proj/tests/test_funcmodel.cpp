#include "doctest.h"

#include "sobolev/benchlab.hpp"
#include "sobolev/funcmodel.hpp"

#include <cmath>
#include <stdexcept>

using namespace sobolev;

namespace {

/// Central difference of D^alpha u along `axis` at s.
double central_difference(const AnalyticFunction& u, const MultiIndex& alpha, std::size_t axis, std::vector<double> s,
                          double h) {
    std::vector<double> a = s, b = s;
    a[axis] += h;
    b[axis] -= h;
    return (u.eval_derivative(alpha, a) - u.eval_derivative(alpha, b)) / (2.0 * h);
}

void check_derivatives_by_differences(const AnalyticFunction& u, const std::vector<std::vector<double>>& points) {
    const double h = 1e-4;
    for (const auto& s : points) {
        for (const auto& alpha : multiindex_range(u.delta())) {
            for (std::size_t i = 0; i < u.dims(); ++i) {
                if (alpha[i] + 1 > u.delta()[i]) continue;
                const MultiIndex next = alpha.with(i, alpha[i] + 1);
                const double exact = u.eval_derivative(next, s);
                const double fd = central_difference(u, alpha, i, s, h);
                INFO("alpha " << alpha.to_string() << " axis " << i << " at " << s[0]);
                CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

} // namespace

TEST_CASE("example derivatives agree with finite differences away from breakpoints") {
    check_derivatives_by_differences(example1(), {{-0.83}, {-0.31}, {0.27}, {0.64}, {0.95}});
    check_derivatives_by_differences(example2(), {{-0.8, 0.1}, {0.2, -0.9}, {0.7, 0.75}, {-0.2, 0.3}});
    check_derivatives_by_differences(example_x2y(), {{0.3, 0.6}, {0.9, 0.1}});
}

TEST_CASE("x^2 y traces of order (2,1)") {
    const auto u = example_x2y();
    const auto b = extract_traces(u);
    REQUIRE(b.size() == 6);
    for (const auto& alpha : multiindex_range(u.delta())) {
        const auto& v = b[alpha];
        CHECK(v.spec() == face_spec(alpha, u.delta()));
        const double expected = alpha == MultiIndex{2, 1} ? 2.0 : 0.0;
        CHECK(v.eval_full(std::vector<double>{0.7, 0.4}) == doctest::Approx(expected).epsilon(1e-15));
    }
    CHECK(b[MultiIndex{2, 1}].is_scalar() == false);
    CHECK(b[MultiIndex{0, 0}].is_scalar());
    CHECK(b[MultiIndex{0, 0}].scalar_value() == 0.0);
}

TEST_CASE("traces pin inactive coordinates at the lower edge") {
    const auto u = example2();
    const auto b = extract_traces(u, MultiIndex{1, 1});
    // alpha = (1,0): face active on axis 0, axis 1 pinned at -1
    const auto& v = b[MultiIndex{1, 0}];
    CHECK(v.active_axes() == std::vector<std::size_t>{0});
    const double s0 = 0.3;
    const double expected = example2_factor(1, s0) * example2_factor(0, -1.0);
    CHECK(v.eval_active(std::vector<double>{s0}) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(v.eval_full(std::vector<double>{s0, 0.9}) == doctest::Approx(expected).epsilon(1e-14));
    // alpha = (0,0): the corner value
    CHECK(b[MultiIndex{0, 0}].scalar_value() == doctest::Approx(std::pow(example2_factor(0, -1.0), 2)).epsilon(1e-14));
}

TEST_CASE("analytic functions reject points outside the domain and orders above delta") {
    const auto u = example1();
    CHECK_THROWS_AS(u({1.5}), std::domain_error);
    CHECK_THROWS_AS(u.derivative(MultiIndex{6}), std::invalid_argument);
    CHECK_THROWS_AS(extract_traces(u, MultiIndex{6}), std::invalid_argument);
}

TEST_CASE("sign0") {
    CHECK(sign0(-2.0) == -1.0);
    CHECK(sign0(0.0) == 0.0);
    CHECK(sign0(3.0) == 1.0);
}
