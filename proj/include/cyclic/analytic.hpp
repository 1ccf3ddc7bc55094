#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace cyclic::analytic {

// ---- Order statistics of 4 uniforms on [0,1] --------------------------

enum class OrderStatPair { x1x2, x1x3, x1x4, x2x4 };

// Joint density of the named order-statistic pair; 0 outside 0 < x < y < 1.
double orderstat_pair_pdf(OrderStatPair pair, double x, double y);

// ---- Gap (spacing) laws ------------------------------------------------

enum class GapLaw { g21, g31, g41 }; // X2-X1, X3-X1 (= X4-X2), X4-X1

double gap_pdf(GapLaw law, double u);
double gap_cdf(GapLaw law, double u);

// ---- Quadrilateral side and diagonal laws ------------------------------

// (3/4, 1/4) mixture density for an arbitrary side, support [0, 2).
double side_pdf(double s);
double side_cdf(double s);
// Law shared by s2, s3, s4.
double side_component_pdf(double s);
// Law shared by s1 and both diagonals.
double side_special_pdf(double s);

double diagonal_pdf(double z);
double diagonal_cdf(double z);

// ---- Quadrilateral angle laws ------------------------------------------

// (1/2, 1/2) mixture density for an arbitrary angle, 6x(pi-x)/pi^3 on (0, pi).
double angle_pdf(double x);
double angle_cdf(double x);
double angle_alpha1_pdf(double x); // 12 x^2 (pi - x) / pi^4
double angle_alpha2_pdf(double x); // 12 x (pi - x)^2 / pi^4

// Bivariate tent density of arbitrary adjacent angles, four-case form.
double tent_pdf(double alpha, double beta);
// Equivalent closed form 6 min(a, b, pi-a, pi-b) / pi^3, kept separate as a
// cross-check target, never as the definition.
double tent_pdf_min_form(double alpha, double beta);

// ---- Triangle laws -------------------------------------------------------

// Constant 2/pi^2 on the open simplex {a, b > 0, a + b < pi}.
double triangle_angle_pdf(double alpha, double beta);
// Product density 4 / (pi^2 sqrt(4-a^2) sqrt(4-b^2)) on [0, 2)^2.
double triangle_side_joint_pdf(double a, double b);
double triangle_side_marginal_pdf(double a);
double triangle_side_marginal_cdf(double a);

// Triangle area density 8x K(4x^2) on (0, 3*sqrt(3)/4).
inline constexpr double kTriangleAreaMax = 1.2990381056766579701;

double triangle_area_pdf(double x);
// cdf from a cumulative tabulation in cube-root coordinates (removes the
// x^{-1/3} singularity at zero); integrates up to the endpoint cutoff.
double triangle_area_cdf(double x);
// E(X^k) by adaptive quadrature with an endpoint-cutoff tail correction.
double triangle_area_moment(int k);
// Estimated probability mass beyond the evaluation cutoff near the upper
// endpoint (reported alongside claims that rely on the cutoff).
double triangle_area_cutoff_mass();

// ---- Quadrilateral joint angle conjecture --------------------------------

// Conjectured constant 3/pi^3 on the tetrahedron a+b > w, a+w > b, b+w > a,
// a+b+w < 2*pi.
double quad_angle_joint_pdf(double alpha, double beta, double omega);

// ---- Closed-form moment registry -----------------------------------------

struct MomentInfo {
    std::string id;
    std::string expression; // exact symbolic form, for reports
    double value;
    std::string location; // source section
    bool conjecture;
};

const std::vector<MomentInfo>& moment_registry();
// Throws std::invalid_argument for unknown ids.
double closed_form_moment(const std::string& id);
const MomentInfo& moment_info(const std::string& id);

// ---- Density registry (CLI surface) ---------------------------------------

struct AnalyticDensity {
    std::string name;
    int dim = 1;
    std::vector<std::pair<double, double>> domain; // per-axis bounds
    // Upper grid bound per axis for tabulation; pulled inside the domain
    // where the pdf diverges at the boundary.
    std::vector<double> grid_hi;
    std::function<double(const std::vector<double>&)> pdf;
    std::function<double(double)> cdf; // 1-D only; may be empty
    bool conjecture = false;
};

const std::vector<AnalyticDensity>& density_registry();
const AnalyticDensity* find_density(const std::string& name);

} // namespace cyclic::analytic
