#include "doctest.h"

#include "sobolev/benchlab.hpp"
#include "sobolev/expansion.hpp"
#include "sobolev/norms.hpp"
#include "sobolev/projection.hpp"

#include <cmath>
#include <stdexcept>

using namespace sobolev;

TEST_CASE("kappa restricts degrees to active axes") {
    CHECK(kappa(MultiIndex{4, 7}, SubdomainSpec({-1, 0})) == MultiIndex{0, 7});
    CHECK(kappa(MultiIndex{4, 7}, SubdomainSpec({0, 0})) == MultiIndex{4, 7});
    CHECK(kappa(MultiIndex{4, 7}, SubdomainSpec({-1, -1})) == MultiIndex{0, 0});
}

TEST_CASE("Legendre projection oracles") {
    const QuadratureRule rule;
    const HyperRect box = HyperRect::cube(1);
    const auto absx = project_legendre([](std::span<const double> s) { return std::abs(s[0]); }, box, MultiIndex{0},
                                       QuadratureRule{1, 16, {{0.0}}});
    CHECK(absx.coeffs[0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(absx.to_series()({0.3}) == doctest::Approx(0.5).epsilon(1e-14));

    const auto sq = project_legendre([](std::span<const double> s) { return s[0] * s[0]; }, box, MultiIndex{2}, rule)
                        .to_series();
    for (double x : {-0.9, 0.1, 0.7}) CHECK(sq({x}) == doctest::Approx(x * x).epsilon(1e-14));

    const TraceFunction scalar(box, SubdomainSpec({-1}), [](std::span<const double>) { return 3.25; });
    const auto c = project_legendre(scalar, MultiIndex{5}, rule);
    CHECK(c.coeffs.size() == 1);
    CHECK(c.to_series()({0.0}) == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("step projection oracles") {
    const QuadratureRule rule;
    const HyperRect box = HyperRect::cube(1);
    const auto lin = project_step([](std::span<const double> s) { return s[0]; }, box, MultiIndex{2}, rule);
    CHECK(lin.averages[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(lin.averages[1] == doctest::Approx(0.5).epsilon(1e-15));

    const auto d3v = project_step([](std::span<const double> s) { return example2_factor(3, s[0]); }, box,
                                  MultiIndex{4}, rule);
    const std::vector<double> expected{1.0, -1.0, -1.0, 1.0};
    for (std::size_t j = 0; j < 4; ++j) CHECK(d3v.averages[j] == doctest::Approx(expected[j]).epsilon(1e-15));

    const auto flat = project_step([](std::span<const double>) { return 2.5; }, HyperRect::cube(2), MultiIndex{3, 2}, rule);
    CHECK(flat.averages.size() == 6);
    for (double a : flat.averages) CHECK(a == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("projections are idempotent") {
    const auto u = example1();
    const auto rule = rule_for(u);
    const auto p = sobolev_project_legendre(u, MultiIndex{0}, MultiIndex{12}, rule);
    const auto again = project_legendre([&](std::span<const double> s) { return p(s); }, u.domain(), MultiIndex{12}, rule)
                           .to_series();
    for (std::size_t j = 0; j < p.coeffs().size(); ++j)
        CHECK(std::abs(again.coeffs()[j] - p.coeffs()[j]) < 1e-10);

    const auto q = sobolev_project_step(u, MultiIndex{0}, MultiIndex{8}, rule);
    const auto q2 = project_step([&](std::span<const double> s) { return q(s); }, u.domain(), MultiIndex{8}, rule);
    for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(q2.averages[j] - q.coeff({j}, MultiIndex{0})) < 1e-10);
}

TEST_CASE("traces of the Sobolev projections are the projected traces") {
    const auto w = example2();
    const auto rule = rule_for(w);
    const MultiIndex gamma{1, 1};
    {
        const MultiIndex d{3, 3};
        const auto p = sobolev_project_legendre(w, gamma, d, rule);
        const auto projected = project_traces_legendre(w, gamma, d, rule);
        const auto back = extract_traces_poly(p, gamma);
        for (const auto& alpha : multiindex_range(gamma)) {
            const auto diff = back[alpha] - projected[alpha];
            for (double c : diff.coeffs()) CHECK(std::abs(c) < 1e-10);
        }
        CHECK(p.degree() == d + gamma);
    }
    {
        const MultiIndex K{4, 4};
        const auto q = sobolev_project_step(w, gamma, K, rule);
        const auto projected = project_traces_step(w, gamma, K, rule);
        const auto back = extract_traces_poly(q, gamma);
        for (const auto& alpha : multiindex_range(gamma))
            CHECK(max_coeff_difference(back[alpha], projected[alpha]) < 1e-10);
    }
}

TEST_CASE("polynomials are reproduced at every order") {
    const MultiIndex delta{2, 1};
    const auto u = random_polynomial_function(2, delta, 11);
    const auto rule = rule_for(u);
    const MultiIndex d = delta + MultiIndex{2, 2};
    for (const auto& gamma : multiindex_range(delta)) {
        const auto p = sobolev_project_legendre(u, gamma, d, rule);
        CHECK(l2_error(u, p, rule) < 1e-12);
    }
}

TEST_CASE("degree bookkeeping and order checks") {
    const auto u = random_polynomial_function(2, MultiIndex{2, 1}, 3);
    const auto p = sobolev_project_legendre(u, MultiIndex{2, 1}, MultiIndex{3, 3});
    CHECK(p.degree() == MultiIndex{5, 4});
    CHECK_THROWS_AS(sobolev_project_legendre(u, MultiIndex{3, 1}, MultiIndex{3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_project_step(u, MultiIndex{0, 2}, MultiIndex{2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(project_step([](std::span<const double>) { return 0.0; }, HyperRect::cube(1), MultiIndex{0},
                                 QuadratureRule{}),
                    std::invalid_argument);
}

TEST_CASE("single-cell step reconstruction at full order") {
    // Taylor part at -1 plus the mean of d^5 u, which is (4/3)/2, times p_5(s+1)
    const auto u = example1();
    const auto q = sobolev_project_step(u, MultiIndex{5}, MultiIndex{1});
    for (double s : {-0.7, 0.0, 0.45, 1.0}) {
        double expected = 0.0;
        for (int k = 0; k < 5; ++k)
            expected += u.eval_derivative(MultiIndex{k}, std::vector<double>{-1.0}) * std::pow(s + 1.0, k) / factorial(k);
        expected += (2.0 / 3.0) * std::pow(s + 1.0, 5) / factorial(5);
        CHECK(q({s}) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("piecewise constant exactness of the fourth-order step projection") {
    const auto w = example2();
    const auto rule = rule_for(w);
    const auto q = sobolev_project_step(w, MultiIndex{3, 3}, MultiIndex{4, 4}, rule);
    const auto prof = derivative_errors(w, q, w.delta(), rule);
    CHECK(prof.l2() <= 1e-12);
    CHECK(prof.s_norm() <= 1e-12);
}
