#include "doctest.h"

#include "sobolev/benchlab.hpp"
#include "sobolev/expansion.hpp"
#include "sobolev/norms.hpp"

#include <cmath>
#include <random>

using namespace sobolev;

namespace {

PiecewisePoly random_pw(std::mt19937_64& rng, const HyperRect& box, const std::vector<std::vector<double>>& breaks,
                        const MultiIndex& cap) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PiecewisePoly shape(box, breaks, cap);
    std::vector<double> c(shape.raw().size());
    for (auto& x : c) x = u(rng);
    return PiecewisePoly(box, breaks, cap, c);
}

} // namespace

TEST_CASE("dc norm of x^2 y at order (2,1) is 2") {
    const auto u = example_x2y();
    CHECK(dc_norm(u, MultiIndex{2, 1}, rule_for(u)) == doctest::Approx(2.0).epsilon(1e-13));
    PiecewisePoly p(HyperRect({0.0, 0.0}, {1.0, 1.0}), {{}, {}}, MultiIndex{2, 1});
    p.set_coeff({0, 0}, MultiIndex{2, 1}, 2.0);
    CHECK(dc_norm(p, MultiIndex{2, 1}) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("order zero norms reduce to L2") {
    const auto u = example_x2y();
    const auto rule = rule_for(u);
    const double l2 = std::sqrt(1.0 / 15.0); // int x^4 y^2 over the unit square = 1/5 * 1/3
    CHECK(sobolev_norm(u, MultiIndex{0, 0}, rule) == doctest::Approx(l2).epsilon(1e-13));
    CHECK(dc_norm(u, MultiIndex{0, 0}, rule) == doctest::Approx(l2).epsilon(1e-13));
    CHECK(w_norm(u, 0, rule) == doctest::Approx(l2).epsilon(1e-13));
}

TEST_CASE("exact and quadrature Sobolev norms agree on piecewise polynomials") {
    std::mt19937_64 rng(8);
    const HyperRect box({-1.0, 0.0}, {1.0, 2.0});
    const MultiIndex delta{2, 1};
    BasicTraceBundle<PiecewisePoly> b(delta);
    for (const auto& alpha : multiindex_range(delta)) {
        const auto spec = face_spec(alpha, delta);
        std::vector<std::vector<double>> breaks(2);
        std::vector<int> cap(2, 0);
        for (std::size_t i = 0; i < 2; ++i)
            if (spec.is_active(i)) {
                cap[i] = 2;
                breaks[i] = {box.lo(i) + 0.37 * box.width(i)};
            }
        b[alpha] = random_pw(rng, box, breaks, MultiIndex(cap));
    }
    const auto p = reconstruct(b);
    const auto u = from_piecewise(p, delta, "reconstructed");
    const auto rule = rule_for(u);
    CHECK(sobolev_norm(u, delta, rule) == doctest::Approx(sobolev_norm(p, delta)).epsilon(1e-12));
    CHECK(w_norm(u, 1, rule) == doctest::Approx(w_norm(p, 1)).epsilon(1e-12));
    CHECK(dc_norm(u, delta, rule) == doctest::Approx(dc_norm(p, delta)).epsilon(1e-12));
    CHECK(dc_norm(p, delta) == doctest::Approx(bundle_norm(b)).epsilon(1e-12));
}

TEST_CASE("error profile aggregates") {
    ErrorProfile e{MultiIndex{1, 1}, {1.0, 4.0, 9.0, 16.0}};
    CHECK(e.l2() == doctest::Approx(1.0));
    CHECK(e.s_norm() == doctest::Approx(std::sqrt(30.0)));
    CHECK(e.s_norm(MultiIndex{1, 0}) == doctest::Approx(std::sqrt(5.0)));
    CHECK(e.w_norm(1) == doctest::Approx(std::sqrt(14.0)));
}

TEST_CASE("derivative errors vanish for an exact approximant") {
    const auto w = example2();
    const auto rule = rule_for(w);
    const auto zero = PiecewisePoly::constant(w.domain(), 0.0);
    const auto prof = derivative_errors(w, zero, w.delta(), rule);
    // |v|^2 per axis factor, so the zero approximant error equals the norm of w itself
    CHECK(prof.s_norm() == doctest::Approx(sobolev_norm(w, w.delta(), rule)).epsilon(1e-12));
    CHECK(l2_error(w, zero, rule) == doctest::Approx(prof.l2()).epsilon(1e-12));
}

TEST_CASE("one-dimensional simplex and box norms coincide") {
    const auto u = example1();
    const auto rule = rule_for(u);
    CHECK(w_norm(u, 5, rule) == doctest::Approx(sobolev_norm(u, MultiIndex{5}, rule)).epsilon(1e-14));
}
