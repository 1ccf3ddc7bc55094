#include "cyclic/analytic.hpp"

#include "cyclic/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace cyclic::analytic {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2 = kPi * kPi;
constexpr double kPi3 = kPi2 * kPi;
constexpr double kPi4 = kPi3 * kPi;

// Fraction of the support width excluded at the upper endpoint, where the
// hypergeometric argument reaches 1.
constexpr double kAreaCutoffFrac = 1e-6;
constexpr double kAreaCutoff = kTriangleAreaMax * (1.0 - kAreaCutoffFrac);

} // namespace

double orderstat_pair_pdf(OrderStatPair pair, double x, double y) {
    if (!(0.0 < x && x < y && y < 1.0))
        return 0.0;
    switch (pair) {
    case OrderStatPair::x1x2: return 12.0 * (1.0 - y) * (1.0 - y);
    case OrderStatPair::x1x3: return 24.0 * (y - x) * (1.0 - y);
    case OrderStatPair::x1x4: return 12.0 * (y - x) * (y - x);
    case OrderStatPair::x2x4: return 24.0 * x * (y - x);
    }
    return 0.0;
}

double gap_pdf(GapLaw law, double u) {
    if (!(u > 0.0 && u < 1.0))
        return 0.0;
    const double v = 1.0 - u;
    switch (law) {
    case GapLaw::g21: return 4.0 * v * v * v;
    case GapLaw::g31: return 12.0 * u * v * v;
    case GapLaw::g41: return 12.0 * u * u * v;
    }
    return 0.0;
}

double gap_cdf(GapLaw law, double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double v = 1.0 - u;
    switch (law) {
    case GapLaw::g21: return 1.0 - v * v * v * v;
    case GapLaw::g31: return u * u * (6.0 - 8.0 * u + 3.0 * u * u);
    case GapLaw::g41: return u * u * u * (4.0 - 3.0 * u);
    }
    return 0.0;
}

double side_component_pdf(double s) {
    if (!(s >= 0.0 && s < 2.0))
        return 0.0;
    const double t = std::asin(0.5 * s);
    return 4.0 / (kPi * std::sqrt(4.0 - s * s)) * (1.0 - 3.0 * t * (kPi - t) / kPi2);
}

double side_special_pdf(double s) {
    if (!(s >= 0.0 && s < 2.0))
        return 0.0;
    const double t = std::asin(0.5 * s);
    return 4.0 / (kPi * std::sqrt(4.0 - s * s)) * (3.0 * t * (kPi - t) / kPi2);
}

double side_pdf(double s) {
    if (!(s >= 0.0 && s < 2.0))
        return 0.0;
    const double t = std::asin(0.5 * s);
    return 3.0 / (kPi * std::sqrt(4.0 - s * s)) * (1.0 - 2.0 * t * (kPi - t) / kPi2);
}

// Antiderivative in arc coordinates t = asin(s/2), where the density is
// (3/pi)(1 - 2 t (pi - t) / pi^2).
double side_cdf(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 2.0) return 1.0;
    const double t = std::asin(0.5 * s);
    return 3.0 / kPi * (t - t * t / kPi + 2.0 * t * t * t / (3.0 * kPi2));
}

double diagonal_pdf(double z) { return side_special_pdf(z); }

double diagonal_cdf(double z) {
    if (z <= 0.0) return 0.0;
    if (z >= 2.0) return 1.0;
    const double t = std::asin(0.5 * z);
    return 6.0 * t * t / kPi2 - 4.0 * t * t * t / kPi3;
}

double angle_pdf(double x) {
    if (!(x > 0.0 && x < kPi))
        return 0.0;
    return 6.0 * x * (kPi - x) / kPi3;
}

double angle_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= kPi) return 1.0;
    return 3.0 * x * x / kPi2 - 2.0 * x * x * x / kPi3;
}

double angle_alpha1_pdf(double x) {
    if (!(x > 0.0 && x < kPi))
        return 0.0;
    return 12.0 * x * x * (kPi - x) / kPi4;
}

double angle_alpha2_pdf(double x) {
    if (!(x > 0.0 && x < kPi))
        return 0.0;
    return 12.0 * x * (kPi - x) * (kPi - x) / kPi4;
}

double tent_pdf(double a, double b) {
    if (!(a > 0.0 && a < kPi && b > 0.0 && b < kPi))
        return 0.0;
    // The four wedges of the square around its center; shared boundaries
    // carry equal values so the <= variants below cover the full square.
    if (a <= b && b <= kPi - a)
        return 6.0 * a / kPi3;
    if (kPi - b <= a && a <= b)
        return 6.0 * (kPi - b) / kPi3;
    if (b <= a && a <= kPi - b)
        return 6.0 * b / kPi3;
    if (kPi - a <= b && b <= a)
        return 6.0 * (kPi - a) / kPi3;
    return 0.0;
}

double tent_pdf_min_form(double a, double b) {
    if (!(a > 0.0 && a < kPi && b > 0.0 && b < kPi))
        return 0.0;
    return 6.0 * std::min(std::min(a, b), std::min(kPi - a, kPi - b)) / kPi3;
}

double triangle_angle_pdf(double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0 && alpha + beta < kPi))
        return 0.0;
    return 2.0 / kPi2;
}

double triangle_side_marginal_pdf(double a) {
    if (!(a >= 0.0 && a < 2.0))
        return 0.0;
    return 2.0 / (kPi * std::sqrt(4.0 - a * a));
}

double triangle_side_marginal_cdf(double a) {
    if (a <= 0.0) return 0.0;
    if (a >= 2.0) return 1.0;
    return 2.0 / kPi * std::asin(0.5 * a);
}

double triangle_side_joint_pdf(double a, double b) {
    // the pair factorizes exactly, so compute it that way
    return triangle_side_marginal_pdf(a) * triangle_side_marginal_pdf(b);
}

namespace {

double area_kernel(double y) {
    static const double g13 = specfun::gamma(1.0 / 3.0);
    static const double g23 = specfun::gamma(2.0 / 3.0);
    static const double g13_cubed = g13 * g13 * g13;
    static const double g23_cubed = g23 * g23 * g23;
    const double q = 4.0 * y / 27.0;
    const double f1 = specfun::gauss_2f1(1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, q);
    const double f2 = specfun::gauss_2f1(2.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, q);
    return 1.0 / (4.0 * kPi3 * std::sqrt(y)) *
           (g13_cubed * std::pow(q, -1.0 / 6.0) * f1 -
            3.0 * g23_cubed * std::pow(q, 1.0 / 6.0) * f2);
}

// Integrals over the area density are done in u with x = u^3, which removes
// the x^{-1/3} singularity at zero. g(x) is the weight (1, x, x^2, ...).
template <typename G>
double area_integral(G&& g, const specfun::QuadratureSpec& spec) {
    const double u_hi = std::cbrt(kAreaCutoff);
    auto integrand = [&](double u) {
        if (u <= 0.0)
            return 0.0;
        const double x = u * u * u;
        return 3.0 * u * u * g(x) * triangle_area_pdf(x);
    };
    return specfun::integrate(integrand, 0.0, u_hi, spec);
}

struct AreaCdfTable {
    std::vector<double> cum; // cumulative integral at u-grid nodes
    double u_hi = 0.0;
    double du = 0.0;
};

const AreaCdfTable& area_cdf_table() {
    static AreaCdfTable table;
    static std::once_flag once;
    std::call_once(once, [] {
        constexpr int kPanels = 4096;
        table.u_hi = std::cbrt(kAreaCutoff);
        table.du = table.u_hi / kPanels;
        table.cum.resize(kPanels + 1);
        table.cum[0] = 0.0;
        auto f = [&](double u) {
            if (u <= 0.0)
                return 0.0;
            const double x = u * u * u;
            return 3.0 * u * u * triangle_area_pdf(x);
        };
        double prev = f(0.0);
        for (int i = 1; i <= kPanels; ++i) {
            const double u0 = (i - 1) * table.du;
            const double u1 = i * table.du;
            const double fm = f(0.5 * (u0 + u1));
            const double f1v = f(u1);
            table.cum[i] = table.cum[i - 1] + table.du / 6.0 * (prev + 4.0 * fm + f1v);
            prev = f1v;
        }
    });
    return table;
}

} // namespace

double triangle_area_pdf(double x) {
    if (!(x > 0.0 && x < kTriangleAreaMax))
        return 0.0;
    return 8.0 * x * area_kernel(4.0 * x * x);
}

double triangle_area_cdf(double x) {
    const AreaCdfTable& t = area_cdf_table();
    if (x <= 0.0)
        return 0.0;
    const double u = std::cbrt(std::min(x, kAreaCutoff));
    if (u >= t.u_hi)
        return t.cum.back();
    const double pos = u / t.du;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return t.cum[i] + frac * (t.cum[i + 1] - t.cum[i]);
}

double triangle_area_moment(int k) {
    if (k < 0)
        throw std::invalid_argument("triangle_area_moment: k >= 0 required");
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-9;
    spec.rel_tol = 1e-9;
    const double body =
        area_integral([k](double x) { return std::pow(x, k); }, spec);
    // The density is finite at the endpoint; close the cutoff gap with a
    // left-endpoint tail estimate.
    const double f_cut = triangle_area_pdf(kAreaCutoff);
    const double tail = f_cut / (k + 1) *
        (std::pow(kTriangleAreaMax, k + 1) - std::pow(kAreaCutoff, k + 1));
    return body + tail;
}

double triangle_area_cutoff_mass() {
    return triangle_area_pdf(kAreaCutoff) * (kTriangleAreaMax - kAreaCutoff);
}

double quad_angle_joint_pdf(double alpha, double beta, double omega) {
    if (alpha + beta > omega && alpha + omega > beta && beta + omega > alpha &&
        alpha + beta + omega < 2.0 * kPi)
        return 3.0 / kPi3;
    return 0.0;
}

namespace {

std::vector<MomentInfo> build_moment_registry() {
    const double es = 6.0 / kPi - 24.0 / kPi3;
    const double es2 = 2.0 - 3.0 / kPi2;
    const double est = 12.0 / kPi2;
    std::vector<MomentInfo> r;
    r.push_back({"SIDE_MEAN", "6/pi - 24/pi^3", es, "sec. 1 (sides)", false});
    r.push_back({"SIDE_M2", "2 - 3/pi^2", es2, "sec. 1 (sides)", false});
    r.push_back({"SIDE_ADJ_PRODUCT", "12/pi^2", est, "sec. 1 (sides)", false});
    r.push_back({"SIDE_OPP_PRODUCT", "12/pi^2", est, "sec. 1 (sides)", false});
    r.push_back({"SIDE_S2S3_PRODUCT", "48/pi^2 - 384/pi^4",
                 48.0 / kPi2 - 384.0 / kPi4, "sec. 1 (sides)", false});
    r.push_back({"SIDE_S1S2_PRODUCT", "-24/pi^2 + 384/pi^4",
                 -24.0 / kPi2 + 384.0 / kPi4, "sec. 1 (sides)", false});
    r.push_back({"SIDE_ADJ_CORR", "(12/pi^2 - E(s)^2) / (E(s^2) - E(s)^2)",
                 (est - es * es) / (es2 - es * es), "sec. 1 (sides)", false});
    r.push_back({"DIAG_MEAN", "48/pi^3", 48.0 / kPi3, "sec. 1 (sides)", false});
    r.push_back({"DIAG_M2", "2 + 6/pi^2", 2.0 + 6.0 / kPi2, "sec. 1 (sides)", false});
    r.push_back({"TENT_CORR", "0", 0.0, "sec. 2 (angles)", false});
    r.push_back({"TRI_ANGLE_CORR", "-1/2", -0.5, "sec. 3 (looking back)", false});
    r.push_back({"PENT_CORR_ADJ", "1/6", 1.0 / 6.0, "sec. 4 (looking forward)", false});
    r.push_back({"PENT_CORR_NONADJ", "-2/3", -2.0 / 3.0, "sec. 4 (looking forward)", false});
    r.push_back({"HEX_CORR_ADJ", "1/4", 0.25, "sec. 4 (looking forward)", true});
    r.push_back({"HEX_CORR_GAMMA", "-1/2", -0.5, "sec. 4 (looking forward)", true});
    r.push_back({"HEX_CORR_DELTA", "-1/2", -0.5, "sec. 4 (looking forward)", true});
    r.push_back({"TRI_AREA_MEAN", "3/(2 pi)", 3.0 / (2.0 * kPi), "sec. 5 (area)", false});
    r.push_back({"TRI_AREA_M2", "3/8", 0.375, "sec. 5 (area)", false});
    r.push_back({"QUAD_AREA_MEAN", "3/pi", 3.0 / kPi, "sec. 5 (area)", false});
    r.push_back({"QUAD_AREA_M2", "1/2 + 105/(16 pi^2)",
                 0.5 + 105.0 / (16.0 * kPi2), "sec. 5 (area)", false});
    return r;
}

} // namespace

const std::vector<MomentInfo>& moment_registry() {
    static const std::vector<MomentInfo> registry = build_moment_registry();
    return registry;
}

const MomentInfo& moment_info(const std::string& id) {
    for (const auto& m : moment_registry())
        if (m.id == id)
            return m;
    throw std::invalid_argument("moment_info: unknown id '" + id + "'");
}

double closed_form_moment(const std::string& id) { return moment_info(id).value; }

namespace {

std::vector<AnalyticDensity> build_density_registry() {
    std::vector<AnalyticDensity> r;
    auto pdf1 = [](double (*f)(double)) {
        return [f](const std::vector<double>& p) { return f(p[0]); };
    };
    auto pdf2 = [](double (*f)(double, double)) {
        return [f](const std::vector<double>& p) { return f(p[0], p[1]); };
    };

    r.push_back({"side", 1, {{0.0, 2.0}}, {2.0 - 1e-6}, pdf1(side_pdf), side_cdf, false});
    r.push_back({"side_component", 1, {{0.0, 2.0}}, {2.0 - 1e-6},
                 pdf1(side_component_pdf), nullptr, false});
    r.push_back({"diagonal", 1, {{0.0, 2.0}}, {2.0 - 1e-6}, pdf1(diagonal_pdf),
                 diagonal_cdf, false});
    r.push_back({"angle", 1, {{0.0, kPi}}, {kPi}, pdf1(angle_pdf), angle_cdf, false});
    r.push_back({"angle_alpha1", 1, {{0.0, kPi}}, {kPi}, pdf1(angle_alpha1_pdf), nullptr, false});
    r.push_back({"angle_alpha2", 1, {{0.0, kPi}}, {kPi}, pdf1(angle_alpha2_pdf), nullptr, false});
    auto gap = [&](const char* name, GapLaw law) {
        r.push_back({name, 1, {{0.0, 1.0}}, {1.0},
                     [law](const std::vector<double>& p) { return gap_pdf(law, p[0]); },
                     [law](double u) { return gap_cdf(law, u); }, false});
    };
    gap("gap21", GapLaw::g21);
    gap("gap31", GapLaw::g31);
    gap("gap41", GapLaw::g41);
    r.push_back({"tri_side_marginal", 1, {{0.0, 2.0}}, {2.0 - 1e-6},
                 pdf1(triangle_side_marginal_pdf), triangle_side_marginal_cdf, false});
    r.push_back({"tri_area", 1, {{0.0, kTriangleAreaMax}}, {kAreaCutoff},
                 pdf1(triangle_area_pdf), triangle_area_cdf, false});
    r.push_back({"tent", 2, {{0.0, kPi}, {0.0, kPi}}, {kPi, kPi}, pdf2(tent_pdf),
                 nullptr, false});
    r.push_back({"tri_angle", 2, {{0.0, kPi}, {0.0, kPi}}, {kPi, kPi},
                 pdf2(triangle_angle_pdf), nullptr, false});
    r.push_back({"tri_side_joint", 2, {{0.0, 2.0}, {0.0, 2.0}},
                 {2.0 - 1e-6, 2.0 - 1e-6}, pdf2(triangle_side_joint_pdf), nullptr, false});
    r.push_back({"quad_angle_joint", 3, {{0.0, kPi}, {0.0, kPi}, {0.0, kPi}},
                 {kPi, kPi, kPi},
                 [](const std::vector<double>& p) {
                     return quad_angle_joint_pdf(p[0], p[1], p[2]);
                 },
                 nullptr, true});
    auto ospair = [&](const char* name, OrderStatPair pair) {
        r.push_back({name, 2, {{0.0, 1.0}, {0.0, 1.0}}, {1.0, 1.0},
                     [pair](const std::vector<double>& p) {
                         return orderstat_pair_pdf(pair, p[0], p[1]);
                     },
                     nullptr, false});
    };
    ospair("orderstat_12", OrderStatPair::x1x2);
    ospair("orderstat_13", OrderStatPair::x1x3);
    ospair("orderstat_14", OrderStatPair::x1x4);
    ospair("orderstat_24", OrderStatPair::x2x4);
    return r;
}

} // namespace

const std::vector<AnalyticDensity>& density_registry() {
    static const std::vector<AnalyticDensity> registry = build_density_registry();
    return registry;
}

const AnalyticDensity* find_density(const std::string& name) {
    for (const auto& d : density_registry())
        if (d.name == name)
            return &d;
    return nullptr;
}

} // namespace cyclic::analytic
