// End-to-end acceptance run: every numbered criterion prints one PASS/FAIL
// line; the process exits nonzero if any fails. Sample counts and the seed
// are pinned so the run is reproducible.
#include "cyclic/analytic.hpp"
#include "cyclic/claims.hpp"
#include "cyclic/polygon.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr std::uint64_t kSeed = 20260823;
int g_failures = 0;
int g_workers = 1;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

cyclic::claims::ClaimResult run(const char* id, std::uint64_t n) {
    return cyclic::claims::run_claim(id, n, kSeed, g_workers);
}

std::string zline(const cyclic::claims::ClaimResult& r) {
    std::ostringstream os;
    os << r.claim_id << " estimate " << r.estimate << " vs " << r.analytic << " (z = "
       << r.statistic << ")";
    return os.str();
}

bool all_pass(const std::vector<cyclic::claims::ClaimResult>& rs, std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (const auto& r : rs) {
        ok = ok && r.pass;
        os << r.claim_id << (r.pass ? " ok" : " FAILED") << "; ";
    }
    detail = os.str();
    return ok;
}

} // namespace

int main() {
    const unsigned hw = std::thread::hardware_concurrency();
    g_workers = static_cast<int>(hw == 0 ? 1 : std::min(hw, 4u));
    std::printf("seed %llu, %d workers\n", static_cast<unsigned long long>(kSeed),
                g_workers);

    // 1. mean side length
    {
        const auto r = run("SIDE_MEAN", 1000000);
        report(1, "SIDE_MEAN within 4 stderr", r.pass, zline(r));
    }

    // 2. remaining side/diagonal moments
    {
        std::string detail;
        const bool ok = all_pass({run("SIDE_M2", 1000000), run("DIAG_MEAN", 1000000),
                                  run("DIAG_M2", 1000000)},
                                 detail);
        report(2, "SIDE_M2 / DIAG_MEAN / DIAG_M2 within 4 stderr", ok, detail);
    }

    // 3. adjacent and opposite side products
    {
        std::string detail;
        const bool ok = all_pass(
            {run("SIDE_ADJ_PRODUCT", 1000000), run("SIDE_OPP_PRODUCT", 1000000)},
            detail);
        report(3, "side product moments within 4 stderr", ok, detail);
    }

    // 4. adjacent side correlation: exact assembled value and Monte Carlo
    {
        const double exact = cyclic::analytic::closed_form_moment("SIDE_ADJ_CORR");
        const bool near = std::abs(exact - (-0.183)) <= 0.001;
        const auto r = run("SIDE_ADJ_CORR", 1000000);
        std::ostringstream os;
        os << "exact " << exact << ", " << zline(r);
        report(4, "SIDE_ADJ_CORR exact near -0.183 and sampled within 4 stderr",
               near && r.pass, os.str());
    }

    // 5. one-dimensional distribution suite
    {
        std::string detail;
        const bool ok = all_pass(
            {run("SIDE_KS", 1000000), run("DIAG_KS", 1000000), run("ANGLE_KS", 1000000),
             run("GAP21_KS", 1000000), run("GAP31_KS", 1000000),
             run("GAP41_KS", 1000000), run("TRI_SIDE_MARGINAL_KS", 1000000)},
            detail);
        report(5, "KS suite at alpha 0.01", ok, detail);
    }

    // 6. zero correlation yet detectable dependence of adjacent angles
    {
        const auto rho = run("TENT_RHO_ZERO", 1000000);
        const auto dep = run("TENT_DEPENDENCE", 1000000);
        std::ostringstream os;
        os << zline(rho) << "; dependence z = " << dep.statistic;
        report(6, "TENT_RHO_ZERO passes and TENT_DEPENDENCE detects at 5 stderr",
               rho.pass && dep.pass && dep.statistic >= 5.0, os.str());
    }

    // 7. triangle angle correlation and side independence
    {
        const auto rho = run("TRI_ANGLE_RHO", 1000000);
        const auto indep = run("TRI_SIDE_INDEP_CHI2", 1000000);
        std::ostringstream os;
        os << zline(rho) << "; independence min p = " << indep.estimate;
        report(7, "TRI_ANGLE_RHO and TRI_SIDE_INDEP_CHI2", rho.pass && indep.pass,
               os.str());
    }

    // 8. triangle area moments: quadrature and Monte Carlo
    {
        const double pi = cyclic::core::kPi;
        const double m1 = cyclic::analytic::triangle_area_moment(1);
        const double m2 = cyclic::analytic::triangle_area_moment(2);
        const bool quad_ok =
            std::abs(m1 - 3.0 / (2.0 * pi)) <= 1e-6 && std::abs(m2 - 0.375) <= 1e-6;
        const auto rm1 = run("TRI_AREA_MEAN", 1000000);
        const auto rm2 = run("TRI_AREA_M2", 1000000);
        std::ostringstream os;
        os << "quadrature m1 " << m1 << ", m2 " << m2 << " (cutoff mass "
           << cyclic::analytic::triangle_area_cutoff_mass() << "); " << zline(rm1)
           << "; " << zline(rm2);
        report(8, "triangle area moments by quadrature and sampling",
               quad_ok && rm1.pass && rm2.pass, os.str());
    }

    // 9. triangle area distribution
    {
        const auto r = run("TRI_AREA_KS", 100000);
        std::ostringstream os;
        os << "D = " << r.statistic << ", threshold " << r.analytic;
        report(9, "TRI_AREA_KS at alpha 0.01", r.pass, os.str());
    }

    // 10. joint angle conjecture: support and uniformity, tent marginal
    {
        const auto support = run("QUAD_F_SUPPORT_CHI2", 4000000);
        const auto marginal = run("QUAD_F_MARGINAL_TENT", 1000000);
        std::ostringstream os;
        os << "support chi2 p = " << support.estimate << ", marginal chi2 p = "
           << marginal.estimate;
        report(10, "QUAD_F_SUPPORT_CHI2 and QUAD_F_MARGINAL_TENT",
               support.pass && marginal.pass, os.str());
    }

    // 11. quadrilateral area moments and the twice-triangle ratio
    {
        std::string detail;
        const bool ok =
            all_pass({run("QUAD_AREA_MEAN", 1000000), run("QUAD_AREA_M2", 1000000),
                      run("QUAD_AREA_TWICE_TRI", 1000000)},
                     detail);
        report(11, "quadrilateral area moments", ok, detail);
    }

    // 12. pentagon and hexagon angle correlations
    {
        std::string detail;
        const bool ok = all_pass(
            {run("PENT_RHO_ADJ", 1000000), run("PENT_RHO_NONADJ", 1000000),
             run("HEX_RHO_ADJ", 1000000), run("HEX_RHO_GAMMA", 1000000),
             run("HEX_RHO_DELTA", 1000000)},
            detail);
        report(12, "pentagon and hexagon correlations within 4 stderr", ok, detail);
    }

    // 13. exact identity suite
    {
        std::string detail;
        const bool ok = all_pass(
            {run("OPP_ANGLES_SUPPLEMENTARY", 10000), run("ANGLE_SUM_IDENTITY", 10000),
             run("AREA_TRIG_VS_SHOELACE", 10000), run("DIAG_SIN_IDENTITY", 10000),
             run("TRI_THIRD_SIDE_IDENTITY", 100000),
             run("TAN_HALF_ANGLE_IDENTITY", 10000)},
            detail);
        report(13, "identity suite to 1e-9", ok, detail);
    }

    // 14. determinism of the full suite
    {
        const auto first = cyclic::claims::run_all(std::uint64_t{50000}, kSeed, g_workers);
        const auto second = cyclic::claims::run_all(std::uint64_t{50000}, kSeed, g_workers);
        const std::string ja = cyclic::claims::report_json(first);
        const std::string jb = cyclic::claims::report_json(second);
        report(14, "run_all twice yields byte-identical JSON", ja == jb,
               ja == jb ? "reports match" : "reports differ");
    }

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
