#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclic/montecarlo.hpp"
#include "cyclic/polygon.hpp"

#include <cmath>

using namespace cyclic;

namespace {
constexpr double kPi = core::kPi;

core::CentralAngles make_angles(std::initializer_list<double> theta) {
    core::CentralAngles ca;
    ca.theta.assign(theta);
    ca.n = static_cast<int>(ca.theta.size());
    return ca;
}
} // namespace

TEST_CASE("rng streams are reproducible and distinct") {
    core::RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool same_ac = true, same_ad = true;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        same_ac = same_ac && va == c.next_u64();
        same_ad = same_ad && va == d.next_u64();
    }
    CHECK_FALSE(same_ac);
    CHECK_FALSE(same_ad);
}

TEST_CASE("uniform draws lie in [0, 1)") {
    core::RngStream rng(1, 2);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("sampled central angles are sorted, in range, deterministic") {
    core::RngStream rng(99, 5);
    const auto ca = core::sample_central_angles(4, rng);
    REQUIRE(ca.n == 4);
    REQUIRE(ca.theta.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(ca.theta[i] >= 0.0);
        CHECK(ca.theta[i] < core::kTwoPi);
        if (i > 0)
            CHECK(ca.theta[i] > ca.theta[i - 1]);
    }
    core::RngStream rng2(99, 5);
    const auto again = core::sample_central_angles(4, rng2);
    CHECK(again.theta == ca.theta);
    CHECK_THROWS_AS(core::sample_central_angles(2, rng), std::invalid_argument);
}

TEST_CASE("gaps are positive and sum to the full circle") {
    core::RngStream rng(3, 3);
    for (int n = 3; n <= 6; ++n) {
        const auto ca = core::sample_central_angles(n, rng);
        const auto g = core::gaps(ca);
        double sum = 0.0;
        for (double x : g) {
            CHECK(x > 0.0);
            sum += x;
        }
        CHECK(std::abs(sum - core::kTwoPi) < 1e-12);
    }
}

TEST_CASE("measure of the inscribed square") {
    const auto m = core::measure(make_angles({0.0, kPi / 2.0, kPi, 1.5 * kPi}));
    for (double s : m.sides)
        CHECK(s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (double a : m.angles)
        CHECK(a == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(m.d1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.d2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.omega == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(m.area == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.perimeter == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("measure of the equilateral triangle") {
    const auto m = core::measure(make_angles({0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0}));
    for (double s : m.sides)
        CHECK(s == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    for (double a : m.angles)
        CHECK(a == doctest::Approx(kPi / 3.0).epsilon(1e-14));
    CHECK(m.area == doctest::Approx(0.75 * std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("measure of an asymmetric quadrilateral") {
    const auto m = core::measure(make_angles({0.0, kPi / 3.0, kPi, 1.5 * kPi}));
    CHECK(m.sides[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(m.sides[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m.sides[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(m.sides[3] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(m.angles[0] == doctest::Approx(5.0 * kPi / 12.0).epsilon(1e-13));
    CHECK(m.angles[1] == doctest::Approx(kPi / 2.0).epsilon(1e-13));
    CHECK(m.angles[2] == doctest::Approx(7.0 * kPi / 12.0).epsilon(1e-13));
    CHECK(m.angles[3] == doctest::Approx(kPi / 2.0).epsilon(1e-13));
    CHECK(m.omega == doctest::Approx(5.0 * kPi / 12.0).epsilon(1e-13));
    CHECK(m.area == doctest::Approx(1.8660254037844386).epsilon(1e-13));
}

TEST_CASE("quadrilateral angle conventions hold for every sample") {
    core::RngStream rng(17, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto ca = core::sample_central_angles(4, rng);
        const auto m = core::measure(ca);
        CHECK(std::abs(m.angles[0] + m.angles[2] - kPi) < 1e-12);
        CHECK(std::abs(m.angles[1] + m.angles[3] - kPi) < 1e-12);
        CHECK(std::abs(m.d1 - 2.0 * std::sin(m.angles[2])) < 1e-12);
        CHECK(std::abs(m.d2 - 2.0 * std::sin(m.angles[1])) < 1e-12);
        CHECK(m.omega > 0.0);
        CHECK(m.omega < kPi);
        CHECK(m.omega_min == std::min(m.omega, kPi - m.omega));
        // tetrahedral constraints are identities in the gaps
        const double a = m.angles[1], b = m.angles[2], w = m.omega;
        CHECK(a + b > w);
        CHECK(a + w > b);
        CHECK(b + w > a);
        CHECK(a + b + w < core::kTwoPi);
    }
}

TEST_CASE("interior angles sum to (n-2) pi") {
    core::RngStream rng(18, 0);
    for (int n = 3; n <= 6; ++n) {
        for (int i = 0; i < 500; ++i) {
            const auto m = core::measure(core::sample_central_angles(n, rng));
            double sum = 0.0;
            for (double a : m.angles) {
                CHECK(a > 0.0);
                CHECK(a < kPi);
                sum += a;
            }
            CHECK(std::abs(sum - (n - 2) * kPi) < 1e-11);
        }
    }
}

TEST_CASE("trigonometric areas match shoelace areas") {
    core::RngStream rng(19, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto q = core::measure(core::sample_central_angles(4, rng));
        CHECK(std::abs(q.area - 2.0 * std::sin(q.angles[1]) * std::sin(q.angles[2]) *
                                    std::sin(q.omega)) < 1e-10);
        const auto t = core::measure(core::sample_central_angles(3, rng));
        CHECK(std::abs(t.area - 2.0 * std::sin(t.angles[0]) * std::sin(t.angles[1]) *
                                    std::sin(t.angles[0] + t.angles[1])) < 1e-10);
    }
}

TEST_CASE("angles_from_sides on symmetric input") {
    const double s = std::sqrt(2.0);
    const auto q = core::angles_from_sides(s, s, s, s);
    CHECK(q.alpha == doctest::Approx(kPi / 2.0).epsilon(1e-13));
    CHECK(q.beta == doctest::Approx(kPi / 2.0).epsilon(1e-13));
    CHECK(q.omega == doctest::Approx(kPi / 2.0).epsilon(1e-13));
}

TEST_CASE("angles_from_sides matches the asymmetric example") {
    const auto q =
        core::angles_from_sides(1.0, std::sqrt(3.0), std::sqrt(2.0), std::sqrt(2.0));
    CHECK(q.alpha == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(q.beta == doctest::Approx(7.0 * kPi / 12.0).epsilon(1e-12));
    CHECK(q.omega == doctest::Approx(5.0 * kPi / 12.0).epsilon(1e-12));
}

TEST_CASE("angles_from_sides round-trips sampled quadrilaterals") {
    core::RngStream rng(23, 0);
    for (int i = 0; i < 10000; ++i) {
        const auto m = core::measure(core::sample_central_angles(4, rng));
        const auto q =
            core::angles_from_sides(m.sides[1], m.sides[2], m.sides[3], m.sides[0]);
        CHECK(std::abs(q.alpha - m.angles[1]) < 1e-9);
        CHECK(std::abs(q.beta - m.angles[2]) < 1e-9);
        CHECK(std::abs(q.omega - m.omega) < 1e-9);
    }
}

TEST_CASE("angles_from_sides rejects infeasible sides") {
    CHECK_THROWS_AS(core::angles_from_sides(3.0, 0.5, 0.5, 0.5),
                    core::InfeasibleSidesError);
    CHECK_THROWS_AS(core::angles_from_sides(-1.0, 1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("third side branch formulas") {
    const double r3 = std::sqrt(3.0);
    CHECK(core::third_side_triangle(r3, r3, core::Branch::plus) ==
          doctest::Approx(r3).epsilon(1e-13));
    CHECK(core::third_side_triangle(r3, r3, core::Branch::minus) ==
          doctest::Approx(0.0).epsilon(1e-13));
    for (double b : {0.3, 1.0, 1.7}) {
        const double want = std::sqrt(4.0 - b * b);
        CHECK(core::third_side_triangle(2.0, b, core::Branch::plus) ==
              doctest::Approx(want).epsilon(1e-13));
        CHECK(core::third_side_triangle(2.0, b, core::Branch::minus) ==
              doctest::Approx(want).epsilon(1e-13));
    }
    CHECK_THROWS_AS(core::third_side_triangle(0.0, 1.0, core::Branch::plus),
                    std::domain_error);
    CHECK_THROWS_AS(core::third_side_triangle(1.0, 2.1, core::Branch::plus),
                    std::domain_error);
}

TEST_CASE("sampled triangle sides satisfy one of the two branches") {
    core::RngStream rng(29, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto m = core::measure(core::sample_central_angles(3, rng));
        const double plus =
            core::third_side_triangle(m.sides[0], m.sides[1], core::Branch::plus);
        const double minus =
            core::third_side_triangle(m.sides[0], m.sides[1], core::Branch::minus);
        const double defect =
            std::min(std::abs(m.sides[2] - plus), std::abs(m.sides[2] - minus));
        CHECK(defect < 1e-10);
    }
}

TEST_CASE("a randomly chosen normalized gap follows the spacing law") {
    core::RngStream rng(31, 0);
    std::vector<double> samples;
    samples.reserve(50000);
    for (int i = 0; i < 50000; ++i) {
        const auto g = core::gaps(core::sample_central_angles(4, rng));
        samples.push_back(g[rng.below(4)] / core::kTwoPi);
    }
    const auto rep = mc::ks_test(
        std::move(samples),
        [](double u) {
            if (u <= 0.0) return 0.0;
            if (u >= 1.0) return 1.0;
            const double v = 1.0 - u;
            return 1.0 - v * v * v;
        },
        0.01);
    CHECK(rep.pass);
}
