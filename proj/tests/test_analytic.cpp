#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclic/analytic.hpp"
#include "cyclic/polygon.hpp"
#include "cyclic/special_functions.hpp"

#include <cmath>

using namespace cyclic;

namespace {
constexpr double kPi = core::kPi;
const double kPi2 = kPi * kPi;
const double kPi3 = kPi2 * kPi;
} // namespace

TEST_CASE("order statistic pair densities") {
    using analytic::OrderStatPair;
    CHECK(analytic::orderstat_pair_pdf(OrderStatPair::x1x2, 0.2, 0.5) ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK(analytic::orderstat_pair_pdf(OrderStatPair::x1x4, 0.5, 0.2) == 0.0);
    CHECK(analytic::orderstat_pair_pdf(OrderStatPair::x2x4, 0.25, 0.75) ==
          doctest::Approx(24.0 * 0.25 * 0.5).epsilon(1e-14));
    // each pair density integrates to 1 over the triangle x < y
    specfun::QuadratureSpec outer;
    outer.abs_tol = outer.rel_tol = 1e-7; // the inner integral is itself noisy
    for (auto pair : {OrderStatPair::x1x2, OrderStatPair::x1x3, OrderStatPair::x1x4,
                      OrderStatPair::x2x4}) {
        const double total = specfun::integrate(
            [pair](double y) {
                return specfun::integrate(
                    [pair, y](double x) {
                        return analytic::orderstat_pair_pdf(pair, x, y);
                    },
                    0.0, y > 0.0 ? y : 1e-12);
            },
            1e-12, 1.0, outer);
        CHECK(std::abs(total - 1.0) < 1e-6);
    }
}

TEST_CASE("gap laws") {
    CHECK(analytic::gap_pdf(analytic::GapLaw::g21, 0.5) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(analytic::gap_pdf(analytic::GapLaw::g31, 0.0) == 0.0);
    CHECK(analytic::gap_pdf(analytic::GapLaw::g31, 1.0) == 0.0);
    const double mean21 = specfun::integrate(
        [](double u) { return u * analytic::gap_pdf(analytic::GapLaw::g21, u); }, 0.0,
        1.0);
    CHECK(std::abs(mean21 - 0.2) < 1e-9);
    // cdfs match quadrature of the pdfs
    for (auto law :
         {analytic::GapLaw::g21, analytic::GapLaw::g31, analytic::GapLaw::g41}) {
        for (double u : {0.1, 0.35, 0.6, 0.9}) {
            const double by_quad = specfun::integrate(
                [law](double v) { return analytic::gap_pdf(law, v); }, 0.0, u);
            CHECK(std::abs(analytic::gap_cdf(law, u) - by_quad) < 1e-9);
        }
        CHECK(analytic::gap_cdf(law, 0.0) == 0.0);
        CHECK(analytic::gap_cdf(law, 1.0) == 1.0);
    }
}

TEST_CASE("side density values and mixture identity") {
    CHECK(analytic::side_pdf(0.0) ==
          doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-14));
    CHECK(analytic::side_pdf(1.0) ==
          doctest::Approx(0.39818198002684981).epsilon(1e-13));
    CHECK(analytic::side_pdf(-0.5) == 0.0);
    CHECK(analytic::side_pdf(2.0) == 0.0);
    CHECK(analytic::side_cdf(2.0) == 1.0);
    CHECK(analytic::side_cdf(0.0) == 0.0);

    core::RngStream rng(5, 0);
    for (int i = 0; i < 100; ++i) {
        const double s = rng.uniform() * 2.0;
        const double mix = 0.75 * analytic::side_component_pdf(s) +
                           0.25 * analytic::side_special_pdf(s);
        CHECK(analytic::side_pdf(s) == doctest::Approx(mix).epsilon(1e-12));
    }
    // cdf consistent with quadrature in arc coordinates s = 2 sin t
    for (double s : {0.4, 1.0, 1.6, 1.95}) {
        const double t_hi = std::asin(0.5 * s);
        const double by_quad = specfun::integrate(
            [](double t) {
                return analytic::side_pdf(2.0 * std::sin(t)) * 2.0 * std::cos(t);
            },
            0.0, t_hi);
        CHECK(std::abs(analytic::side_cdf(s) - by_quad) < 1e-9);
    }
}

TEST_CASE("diagonal density and moments") {
    CHECK(analytic::diagonal_pdf(0.0) == 0.0);
    CHECK(analytic::diagonal_pdf(1.0) ==
          doctest::Approx(0.30629383078988447).epsilon(1e-13));
    CHECK(analytic::diagonal_cdf(2.0) == 1.0);
    const double mean = specfun::integrate(
        [](double t) {
            const double z = 2.0 * std::sin(t);
            return z * analytic::diagonal_pdf(z) * 2.0 * std::cos(t);
        },
        0.0, kPi / 2.0);
    CHECK(std::abs(mean - 48.0 / kPi3) < 1e-7);
    const double m2 = specfun::integrate(
        [](double t) {
            const double z = 2.0 * std::sin(t);
            return z * z * analytic::diagonal_pdf(z) * 2.0 * std::cos(t);
        },
        0.0, kPi / 2.0);
    CHECK(std::abs(m2 - (2.0 + 6.0 / kPi2)) < 1e-7);
}

TEST_CASE("angle density and mixture identity") {
    CHECK(analytic::angle_pdf(0.0) == 0.0);
    CHECK(analytic::angle_pdf(kPi / 2.0) ==
          doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-14));
    const double total =
        specfun::integrate([](double x) { return analytic::angle_pdf(x); }, 0.0, kPi);
    CHECK(std::abs(total - 1.0) < 1e-10);
    core::RngStream rng(6, 0);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform() * kPi;
        const double mix =
            0.5 * analytic::angle_alpha1_pdf(x) + 0.5 * analytic::angle_alpha2_pdf(x);
        CHECK(analytic::angle_pdf(x) == doctest::Approx(mix).epsilon(1e-12));
    }
    for (double x : {0.3, 1.1, 2.0, 3.0}) {
        const double by_quad = specfun::integrate(
            [](double y) { return analytic::angle_pdf(y); }, 0.0, x);
        CHECK(std::abs(analytic::angle_cdf(x) - by_quad) < 1e-9);
    }
}

TEST_CASE("tent density case values") {
    CHECK(analytic::tent_pdf(kPi / 2.0, kPi / 2.0) ==
          doctest::Approx(3.0 / kPi2).epsilon(1e-14));
    CHECK(analytic::tent_pdf(0.1 * kPi, 0.95 * kPi) ==
          doctest::Approx(0.3 / kPi2).epsilon(1e-13));
    CHECK(analytic::tent_pdf(-0.1, 1.0) == 0.0);
    CHECK(analytic::tent_pdf(1.0, kPi) == 0.0);
}

TEST_CASE("tent four-case form equals the min form") {
    core::RngStream rng(8, 0);
    for (int i = 0; i < 10000; ++i) {
        const double a = rng.uniform() * kPi;
        const double b = rng.uniform() * kPi;
        CHECK(analytic::tent_pdf(a, b) == analytic::tent_pdf_min_form(a, b));
    }
}

TEST_CASE("tent marginals and normalization") {
    specfun::QuadratureSpec outer;
    outer.abs_tol = outer.rel_tol = 1e-7;
    const double total = specfun::integrate(
        [](double a) {
            return specfun::integrate(
                [a](double b) { return analytic::tent_pdf(a, b); }, 0.0, kPi);
        },
        0.0, kPi, outer);
    CHECK(std::abs(total - 1.0) < 1e-6);
    for (double a : {0.4, 1.2, 2.2, 2.9}) {
        const double marg = specfun::integrate(
            [a](double b) { return analytic::tent_pdf(a, b); }, 0.0, kPi);
        CHECK(std::abs(marg - analytic::angle_pdf(a)) < 1e-8);
    }
}

TEST_CASE("tent has zero correlation but is dependent") {
    specfun::QuadratureSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-7;
    const double ea = specfun::integrate(
        [&](double a) {
            return a * specfun::integrate(
                           [a](double b) { return analytic::tent_pdf(a, b); }, 0.0, kPi,
                           {});
        },
        0.0, kPi, spec);
    CHECK(std::abs(ea - kPi / 2.0) < 1e-7);
    const double eab = specfun::integrate(
        [&](double a) {
            return a * specfun::integrate(
                           [a](double b) { return b * analytic::tent_pdf(a, b); }, 0.0,
                           kPi, {});
        },
        0.0, kPi, spec);
    CHECK(std::abs(eab - kPi2 / 4.0) < 1e-6);

    const double c = kPi / 4.0;
    const double joint = specfun::integrate(
        [&](double a) {
            return specfun::integrate(
                [a](double b) { return analytic::tent_pdf(a, b); }, 0.0, c, {});
        },
        0.0, c, spec);
    const double marg = analytic::angle_cdf(c);
    CHECK(joint > marg * marg + 0.005); // dependence witness
}

TEST_CASE("triangle angle and side densities") {
    CHECK(analytic::triangle_angle_pdf(kPi / 3.0, kPi / 3.0) ==
          doctest::Approx(2.0 / kPi2).epsilon(1e-14));
    CHECK(analytic::triangle_angle_pdf(2.4, kPi / 2.0) == 0.0);
    CHECK(analytic::triangle_side_joint_pdf(1.0, 1.0) ==
          doctest::Approx(4.0 / (3.0 * kPi2)).epsilon(1e-13));
    CHECK(analytic::triangle_side_joint_pdf(0.0, 0.0) ==
          doctest::Approx(1.0 / kPi2).epsilon(1e-13));
    core::RngStream rng(9, 0);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform() * 2.0;
        const double b = rng.uniform() * 2.0;
        CHECK(analytic::triangle_side_joint_pdf(a, b) ==
              analytic::triangle_side_marginal_pdf(a) *
                  analytic::triangle_side_marginal_pdf(b));
    }
    CHECK(analytic::triangle_side_marginal_cdf(2.0) == 1.0);
    CHECK(std::abs(analytic::triangle_side_marginal_cdf(1.0) - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("triangle area density values") {
    CHECK(analytic::triangle_area_pdf(-0.1) == 0.0);
    CHECK(analytic::triangle_area_pdf(0.0) == 0.0);
    CHECK(analytic::triangle_area_pdf(analytic::kTriangleAreaMax) == 0.0);
    CHECK(analytic::triangle_area_pdf(0.1) ==
          doctest::Approx(1.3566710316685956).epsilon(1e-9));
    CHECK(analytic::triangle_area_pdf(0.5) ==
          doctest::Approx(0.69108999626465228).epsilon(1e-9));
    CHECK(analytic::triangle_area_pdf(1.0) ==
          doctest::Approx(0.48916628562285978).epsilon(1e-9));
}

TEST_CASE("triangle area moments by quadrature") {
    CHECK(std::abs(analytic::triangle_area_moment(0) - 1.0) < 1e-6);
    CHECK(std::abs(analytic::triangle_area_moment(1) - 3.0 / (2.0 * kPi)) < 1e-6);
    CHECK(std::abs(analytic::triangle_area_moment(2) - 0.375) < 1e-6);
    CHECK(analytic::triangle_area_cutoff_mass() < 1e-6);
    CHECK(analytic::triangle_area_cutoff_mass() > 0.0);
}

TEST_CASE("triangle area cdf") {
    CHECK(analytic::triangle_area_cdf(0.0) == 0.0);
    CHECK(std::abs(analytic::triangle_area_cdf(0.5) - 0.57655267224429065) < 1e-7);
    CHECK(std::abs(analytic::triangle_area_cdf(1.0) - 0.86397721016732473) < 1e-7);
    CHECK(std::abs(analytic::triangle_area_cdf(analytic::kTriangleAreaMax) - 1.0) <
          1e-5);
    // monotone
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double x = analytic::kTriangleAreaMax * i / 200.0;
        const double f = analytic::triangle_area_cdf(x);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("conjectured joint angle density") {
    CHECK(analytic::quad_angle_joint_pdf(kPi / 2.0, kPi / 2.0, kPi / 2.0) ==
          doctest::Approx(3.0 / kPi3).epsilon(1e-14));
    CHECK(analytic::quad_angle_joint_pdf(kPi / 4.0, kPi / 4.0, 3.0 * kPi / 4.0) == 0.0);
}

TEST_CASE("moment registry") {
    CHECK(analytic::closed_form_moment("SIDE_MEAN") ==
          doctest::Approx(6.0 / kPi - 24.0 / kPi3).epsilon(1e-15));
    CHECK(analytic::closed_form_moment("SIDE_MEAN") ==
          doctest::Approx(1.1358226).epsilon(1e-6));
    CHECK(analytic::closed_form_moment("QUAD_AREA_M2") ==
          doctest::Approx(1.1649202).epsilon(1e-6));
    CHECK(std::abs(analytic::closed_form_moment("SIDE_ADJ_CORR") - (-0.183)) < 0.001);
    CHECK(analytic::moment_info("HEX_CORR_ADJ").conjecture);
    CHECK_FALSE(analytic::moment_info("PENT_CORR_ADJ").conjecture);
    CHECK_THROWS_AS(analytic::closed_form_moment("NO_SUCH_ID"), std::invalid_argument);
}

TEST_CASE("density registry lookup") {
    CHECK(analytic::find_density("side") != nullptr);
    CHECK(analytic::find_density("tent") != nullptr);
    CHECK(analytic::find_density("quad_angle_joint") != nullptr);
    CHECK(analytic::find_density("quad_angle_joint")->conjecture);
    CHECK(analytic::find_density("nope") == nullptr);
    const auto* side = analytic::find_density("side");
    CHECK(side->dim == 1);
    CHECK(side->pdf({1.0}) == analytic::side_pdf(1.0));
    CHECK(side->cdf(1.0) == analytic::side_cdf(1.0));
    for (const auto& d : analytic::density_registry()) {
        CHECK(d.domain.size() == static_cast<std::size_t>(d.dim));
        CHECK(d.grid_hi.size() == static_cast<std::size_t>(d.dim));
    }
}
