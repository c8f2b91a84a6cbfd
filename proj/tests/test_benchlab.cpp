#include "doctest.h"

#include "sobolev/benchlab.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace sobolev;

TEST_CASE("example1 spot values") {
    const auto u = example1();
    CHECK(u.delta() == MultiIndex{5});
    CHECK(u({0.0}) == doctest::Approx(-413.0 / 1140.0).epsilon(1e-15));
    CHECK(u.eval_derivative(MultiIndex{5}, std::vector<double>{0.5}) == doctest::Approx(0.594604).epsilon(1e-6));
    for (double s : {-0.8, -0.1, 0.3, 0.9})
        CHECK(u.eval_derivative(MultiIndex{5}, std::vector<double>{s}) ==
              doctest::Approx(0.5 / std::pow(std::abs(s), 0.25)).epsilon(1e-14));
}

TEST_CASE("example2 factor: third derivative steps and C2 joins") {
    CHECK(example2_factor(0, -1.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(example2_factor(3, -0.75) == 1.0);
    CHECK(example2_factor(3, 0.2) == -1.0);
    CHECK(example2_factor(3, 0.75) == 1.0);
    const double eps = 1e-13;
    for (double x : {-0.5, 0.5}) {
        for (int k = 0; k <= 2; ++k) CHECK(std::abs(example2_factor(k, x - eps) - example2_factor(k, x + eps)) < 1e-12);
    }
    const auto w = example2();
    CHECK(w.delta() == MultiIndex{3, 3});
    CHECK(w({0.3, -0.2}) == doctest::Approx(example2_factor(0, 0.3) * example2_factor(0, -0.2)).epsilon(1e-15));
}

TEST_CASE("slope fitting") {
    std::vector<double> x, y;
    for (double d = 4; d <= 512; d *= 2) {
        x.push_back(d);
        y.push_back(3.7 * std::pow(d, -5.0));
    }
    CHECK(std::abs(fit_slope(x, y) + 5.0) < 1e-8);
    y[2] = 0.0;
    CHECK_THROWS_AS(fit_slope(x, y), std::domain_error);

    SweepResult r{"synthetic", Method::Legendre, MultiIndex{0}, {}};
    for (int p : {2, 4, 8, 16}) r.points.push_back({p, 1.0 / p, 2.0, 2.0, 0.0, {}});
    CHECK(fit_slope(r, ErrorNorm::L2, 2, 16) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_slope(r, ErrorNorm::L2, 8, 16), std::domain_error);
    CHECK(error_ratio(r, ErrorNorm::Sobolev) == doctest::Approx(1.0));
}

TEST_CASE("sweeps: polynomial reproduction and recorded failures") {
    const auto u = make_example("poly-random", {7, 2, MultiIndex{1, 1}});
    const auto r = run_sweep(u, Method::Legendre, MultiIndex{1, 0}, {3, 4});
    for (const auto& p : r.points) {
        CHECK(p.ok());
        CHECK(p.l2_error < 1e-12);
        CHECK(p.s_error < 1e-11);
    }
    const auto bad = run_sweep(example1(), Method::Step, MultiIndex{0}, {0, 2});
    CHECK_FALSE(bad.points[0].ok());
    CHECK(bad.points[1].ok());
    CHECK_THROWS_AS(run_sweep(example1(), Method::Step, MultiIndex{6}, {2}), std::invalid_argument);
}

TEST_CASE("direct step approximation of example1 converges at first order") {
    const auto r = run_sweep(example1(), Method::Step, MultiIndex{0}, {8, 16, 32, 64, 128, 256});
    for (std::size_t j = 1; j < r.points.size(); ++j)
        CHECK(r.points[j].l2_error / r.points[j - 1].l2_error == doctest::Approx(0.5).epsilon(0.05));
    CHECK(r.points.back().l2_error < r.points.front().l2_error / 10);
}

TEST_CASE("fourth-order step projection of example2 is exact on 4x4 cells") {
    const auto r = run_sweep(example2(), Method::Step, MultiIndex{3, 3}, {4});
    CHECK(r.points[0].l2_error <= 1e-12);
    CHECK(r.points[0].s_error <= 1e-12);
}

TEST_CASE("CSV layout") {
    SweepResult r{"example2-2d", Method::Step, MultiIndex{3, 3}, {{4, 0.25, 0.5, 0.125, 0.0, {}}, {8, 0, 0, 0, 0, "boom"}}};
    std::ostringstream os;
    write_csv(r, os);
    CHECK(os.str() == "param,l2_error,s_error,w_error,runtime_s\n4,0.25,0.5,0.125,0\n8,nan,nan,nan,0\n");
    CHECK(csv_filename(r) == "example2-2d_step_gamma3-3.csv");
}

TEST_CASE("registry and figure definitions") {
    for (const auto& name : example_names()) CHECK_NOTHROW(make_example(name));
    CHECK_THROWS_AS(make_example("nope"), std::invalid_argument);
    CHECK(parse_method("step") == Method::Step);
    CHECK_THROWS_AS(parse_method("spline"), std::invalid_argument);
    const auto f1 = figure_spec("fig1");
    CHECK(f1.params.front() == 2);
    CHECK(f1.params.back() == 256);
    CHECK(figure_spec("fig3").gammas.size() == 4);
    CHECK_THROWS_AS(figure_spec("fig9"), std::invalid_argument);
}
