#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pegame/poly_roots.hpp"
#include "support.hpp"

using namespace pegame;

TEST_CASE("quadratic with symmetric real roots") {
    const auto roots = real_roots({1.0, 0.0, -1.0});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-1.0));
    CHECK(roots[1] == doctest::Approx(1.0));
}

TEST_CASE("double real root is merged and the complex pair discarded") {
    // (t-2)^2 (t^2+1) = t^4 - 4t^3 + 5t^2 - 4t + 4
    const auto roots = real_roots({1.0, -4.0, 5.0, -4.0, 4.0});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("benchmark tangency quartic has its capture root where expected") {
    // 1 + (t-1)^2 - 0.25 t^2 (t-1)^2, expanded highest-first.
    const PolyCoeffs p{-0.25, 0.5, 0.75, -2.0, 2.0};
    const auto roots = real_roots(p);
    double smallest_above_one = 1e300;
    for (double r : roots)
        if (r > 1.0) smallest_above_one = std::min(smallest_above_one, r);
    CHECK(smallest_above_one == doctest::Approx(testsupport::kS1TF).epsilon(1e-9));
}

TEST_CASE("linear and degenerate inputs") {
    const auto lin = real_roots({2.0, -4.0});
    REQUIRE(lin.size() == 1);
    CHECK(lin[0] == doctest::Approx(2.0));
    CHECK_THROWS_AS(real_roots({5.0}), NumericError);            // degree 0
    CHECK_THROWS_AS(real_roots({0.0, 0.0, 0.0}), NumericError);  // all zero
    CHECK_THROWS_AS(real_roots({}), NumericError);
}

TEST_CASE("random factored quartics are recovered to 1e-9 relative") {
    auto rng = testsupport::seeded_rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        double r[4];
        for (double& v : r) v = testsupport::uniform(rng, -5.0, 5.0);
        std::sort(r, r + 4);
        bool well_separated = true;
        for (int i = 0; i + 1 < 4; ++i)
            if (r[i + 1] - r[i] < 1e-3) well_separated = false;
        if (!well_separated) continue;
        const double lead = testsupport::uniform(rng, 0.2, 3.0) *
                            (testsupport::uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        // Expand lead * (t-r0)(t-r1)(t-r2)(t-r3).
        PolyCoeffs p{lead};
        for (int i = 0; i < 4; ++i) {
            PolyCoeffs next(p.size() + 1, 0.0);
            for (size_t j = 0; j < p.size(); ++j) {
                next[j] += p[j];
                next[j + 1] -= p[j] * r[i];
            }
            p = next;
        }
        const auto roots = real_roots(p);
        REQUIRE(roots.size() == 4);
        for (int i = 0; i < 4; ++i)
            CHECK(roots[i] == doctest::Approx(r[i]).epsilon(1e-9));
    }
}

TEST_CASE("every reported root passes the residual gate") {
    auto rng = testsupport::seeded_rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        PolyCoeffs p(5);
        for (double& c : p) c = testsupport::uniform(rng, -3.0, 3.0);
        if (std::fabs(p[0]) < 1e-3) continue;
        double scale = 0.0;
        for (double c : p) scale = std::max(scale, std::fabs(c));
        for (double r : real_roots(p)) {
            const double amp = std::pow(std::max(1.0, std::fabs(r)), 4.0);
            CHECK(std::fabs(poly_eval(p, r)) <= 1e-10 * scale * amp * 10.0);
        }
    }
}

TEST_CASE("bisection converges on simple brackets") {
    const auto linear = [](double t) { return t - 1.0; };
    CHECK(bisect(linear, 0.0, 2.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(bisect([](double t) { return std::cos(t); }, 0.0, std::numbers::pi, 1e-12) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-11));
}

TEST_CASE("bisection requires a sign change") {
    CHECK_THROWS_AS(bisect([](double t) { return t * t + 1.0; }, -1.0, 1.0, 1e-9), NumericError);
}

TEST_CASE("bisection contracts the bracket to the requested width") {
    // The returned midpoint must sit within tol of the true zero for an
    // arbitrary transcendental bracket.
    const auto f = [](double t) { return std::exp(t) - 3.0; };
    const double root = bisect(f, 0.0, 2.0, 1e-10);
    CHECK(root == doctest::Approx(std::log(3.0)).epsilon(1e-9));
}
