#include "cyclic/claims.hpp"

#include "cyclic/analytic.hpp"
#include "cyclic/montecarlo.hpp"
#include "cyclic/polygon.hpp"
#include "cyclic/special_functions.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

#include <json.hpp>

namespace cyclic::claims {

namespace {

using core::RngStream;

constexpr double kPi = core::kPi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kChunk = 65536;
constexpr double kIdentityTol = 1e-9;

// ---- deterministic chunked parallelism ------------------------------------
//
// Work is split into fixed-size chunks, each with its own RNG stream keyed
// by (claim ordinal, chunk index). Partial accumulators are merged in chunk
// order, so the result is identical for any worker count.

template <typename Acc, typename Make, typename Body>
Acc parallel_chunks(std::uint64_t n, std::uint64_t seed, std::uint64_t ordinal,
                    int workers, Make make, Body body) {
    const std::uint64_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<std::optional<Acc>> parts(nchunks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= nchunks)
                return;
            const std::uint64_t count = std::min(kChunk, n - c * kChunk);
            RngStream rng(seed, (ordinal << 32) | c);
            Acc acc = make();
            for (std::uint64_t i = 0; i < count; ++i)
                body(rng, acc);
            parts[c].emplace(std::move(acc));
        }
    };
    const int w = std::max(1, workers);
    std::vector<std::thread> threads;
    threads.reserve(w - 1);
    for (int i = 1; i < w; ++i)
        threads.emplace_back(work);
    work();
    for (auto& t : threads)
        t.join();
    Acc total = make();
    for (auto& p : parts)
        total.merge(*p);
    return total;
}

struct VecAcc {
    std::vector<double> v;
    void merge(const VecAcc& o) { v.insert(v.end(), o.v.begin(), o.v.end()); }
};

struct MaxAcc {
    double value = 0.0;
    void merge(const MaxAcc& o) { value = std::max(value, o.value); }
};

// ---- samplers --------------------------------------------------------------

core::PolygonMeasurements sample_polygon(int n, RngStream& rng) {
    return core::measure(core::sample_central_angles(n, rng));
}

// Gaps of an n-gon after a uniformly random cyclic rotation of the labels.
// The rotation averages away the size bias of the gap containing the origin,
// leaving the gaps exchangeable (normalized, they are Dirichlet(1,...,1)).
std::vector<double> rotated_gaps(int n, RngStream& rng) {
    core::CentralAngles ca = core::sample_central_angles(n, rng);
    std::vector<double> g = core::gaps(ca);
    const std::uint32_t r = rng.below(static_cast<std::uint32_t>(n));
    std::rotate(g.begin(), g.begin() + r, g.end());
    return g;
}

struct AngleTriple {
    double a, b, w;
};

// One of the eight rotations/reflections of the quadrilateral's gap triple,
// chosen uniformly: the resulting (adjacent angle, adjacent angle, diagonal
// crossing angle) triple is exchangeable over the vertex labeling.
AngleTriple quad_symmetrized(RngStream& rng) {
    core::CentralAngles ca = core::sample_central_angles(4, rng);
    const std::vector<double> g = core::gaps(ca);
    const std::uint32_t r = rng.below(4);
    double c0 = g[r];
    const double c1 = g[(r + 1) % 4];
    double c2 = g[(r + 2) % 4];
    if (rng.below(2) == 1)
        std::swap(c0, c2);
    return {0.5 * (c0 + c1), 0.5 * (c1 + c2), 0.5 * (c0 + c2)};
}

// ---- kind-specific finishers ------------------------------------------------

void finish_z_test(ClaimResult& res, double target, double estimate, double se) {
    res.analytic = target;
    res.estimate = estimate;
    res.stderr_value = se;
    if (se > 0.0)
        res.statistic = (estimate - target) / se;
    else
        res.statistic = estimate == target ? 0.0 : std::numeric_limits<double>::infinity();
    res.pass = std::abs(res.statistic) <= 4.0;
}

void finish_ks(ClaimResult& res, const mc::KsReport& rep) {
    res.analytic = rep.threshold_at_alpha;
    res.estimate = kNan;
    res.stderr_value = kNan;
    res.statistic = rep.d_statistic;
    res.pass = rep.pass;
}

void finish_chi2(ClaimResult& res, const mc::Chi2Report& rep, double alpha) {
    res.analytic = alpha;
    res.estimate = rep.p_value;
    res.stderr_value = kNan;
    res.statistic = rep.statistic;
    res.pass = rep.pass;
}

void finish_identity(ClaimResult& res, double max_defect) {
    res.analytic = kIdentityTol;
    res.estimate = kNan;
    res.stderr_value = kNan;
    res.statistic = max_defect;
    res.pass = max_defect <= kIdentityTol;
}

// ---- generic runners ---------------------------------------------------------

struct RunArgs {
    std::uint64_t n;
    std::uint64_t seed;
    int workers;
    std::uint64_t ordinal;
};

template <typename Sampler>
void run_moment(ClaimResult& res, const RunArgs& a, double target, Sampler sampler) {
    auto acc = parallel_chunks<mc::MomentAccumulator>(
        a.n, a.seed, a.ordinal, a.workers, [] { return mc::MomentAccumulator{}; },
        [&](RngStream& rng, mc::MomentAccumulator& m) { m.add(sampler(rng)); });
    finish_z_test(res, target, acc.mean(), acc.stderr_of_mean());
}

template <typename Sampler>
void run_correlation(ClaimResult& res, const RunArgs& a, double target, Sampler sampler) {
    auto acc = parallel_chunks<mc::PairAccumulator>(
        a.n, a.seed, a.ordinal, a.workers, [] { return mc::PairAccumulator{}; },
        [&](RngStream& rng, mc::PairAccumulator& p) {
            auto [x, y] = sampler(rng);
            p.add(x, y);
        });
    finish_z_test(res, target, acc.correlation(), acc.correlation_stderr());
}

template <typename Sampler>
void run_ks(ClaimResult& res, const RunArgs& a, const std::function<double(double)>& cdf,
            Sampler sampler) {
    auto acc = parallel_chunks<VecAcc>(
        a.n, a.seed, a.ordinal, a.workers, [] { return VecAcc{}; },
        [&](RngStream& rng, VecAcc& v) { v.v.push_back(sampler(rng)); });
    finish_ks(res, mc::ks_test(std::move(acc.v), cdf, 0.01));
}

template <typename Sampler>
void run_identity(ClaimResult& res, const RunArgs& a, Sampler defect) {
    auto acc = parallel_chunks<MaxAcc>(
        a.n, a.seed, a.ordinal, a.workers, [] { return MaxAcc{}; },
        [&](RngStream& rng, MaxAcc& m) { m.value = std::max(m.value, defect(rng)); });
    finish_identity(res, acc.value);
}

// Chi-square restricted to cells passing an interiority predicate, with an
// exact per-cell mass function; everything else (boundary cells, exterior,
// out-of-range samples) lands in the pooled remainder of chi_square_cells.
mc::Chi2Report chi2_selected_cells(
    const mc::HistogramND& hist,
    const std::function<bool(const std::vector<double>&, const std::vector<double>&)>& interior,
    const std::function<double(const std::vector<double>&, const std::vector<double>&)>& cell_mass,
    double alpha) {
    std::vector<std::uint64_t> counts;
    std::vector<double> masses;
    for (std::size_t c = 0; c < hist.cell_count(); ++c) {
        auto [lo, hi] = hist.cell_bounds(c);
        if (!interior(lo, hi))
            continue;
        counts.push_back(hist.counts()[c]);
        masses.push_back(cell_mass(lo, hi));
    }
    return mc::chi_square_cells(counts, masses, hist.total(), alpha);
}

// Tensor 3-point Gauss estimate of the mass of one box cell (exact for
// polynomial densities up to degree 5 per axis).
double gauss_cell_mass(const std::vector<double>& lo, const std::vector<double>& hi,
                       const std::function<double(const std::vector<double>&)>& pdf) {
    static constexpr std::array<double, 3> nodes = {-0.7745966692414834, 0.0,
                                                    0.7745966692414834};
    static constexpr std::array<double, 3> weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const int d = static_cast<int>(lo.size());
    const int points = d == 1 ? 3 : (d == 2 ? 9 : 27);
    std::vector<double> pt(d);
    double mass = 0.0;
    for (int g = 0; g < points; ++g) {
        int rem = g;
        double w = 1.0;
        for (int a = 0; a < d; ++a) {
            const int idx = rem % 3;
            rem /= 3;
            pt[a] = 0.5 * (lo[a] + hi[a]) + 0.5 * (hi[a] - lo[a]) * nodes[idx];
            w *= 0.5 * (hi[a] - lo[a]) * weights[idx];
        }
        mass += w * pdf(pt);
    }
    return mass;
}

// ---- individual claim bodies --------------------------------------------------

double random_side(RngStream& rng) {
    const auto m = sample_polygon(4, rng);
    return m.sides[rng.below(4)];
}

double random_diagonal(RngStream& rng) {
    const auto m = sample_polygon(4, rng);
    return rng.below(2) == 0 ? m.d1 : m.d2;
}

void run_orderstat_chi2(ClaimResult& res, const RunArgs& a) {
    struct Acc {
        std::vector<mc::HistogramND> h;
        void merge(const Acc& o) {
            for (std::size_t i = 0; i < h.size(); ++i)
                h[i].merge(o.h[i]);
        }
    };
    auto make = [] {
        Acc acc;
        for (int i = 0; i < 4; ++i)
            acc.h.emplace_back(std::vector<int>{24, 24},
                               std::vector<std::pair<double, double>>{{0.0, 1.0}, {0.0, 1.0}});
        return acc;
    };
    auto acc = parallel_chunks<Acc>(
        a.n, a.seed, a.ordinal, a.workers, make, [](RngStream& rng, Acc& acc) {
            const core::CentralAngles ca = core::sample_central_angles(4, rng);
            std::array<double, 4> x{};
            for (int i = 0; i < 4; ++i)
                x[i] = ca.theta[i] / core::kTwoPi;
            acc.h[0].add(x[0], x[1]);
            acc.h[1].add(x[0], x[2]);
            acc.h[2].add(x[0], x[3]);
            acc.h[3].add(x[1], x[3]);
        });

    // Four tests at a Bonferroni-split level; only cells strictly above the
    // x < y diagonal are scored individually (the densities are polynomial
    // there, so the Gauss cell masses are exact).
    const double alpha = 0.01 / 4.0;
    static const std::array<analytic::OrderStatPair, 4> pairs = {
        analytic::OrderStatPair::x1x2, analytic::OrderStatPair::x1x3,
        analytic::OrderStatPair::x1x4, analytic::OrderStatPair::x2x4};
    auto interior = [](const std::vector<double>& lo, const std::vector<double>& hi) {
        return hi[0] <= lo[1];
    };
    double min_p = 1.0;
    double worst_stat = 0.0;
    bool all_pass = true;
    for (int i = 0; i < 4; ++i) {
        const auto pair = pairs[i];
        auto mass = [pair](const std::vector<double>& lo, const std::vector<double>& hi) {
            return gauss_cell_mass(lo, hi, [pair](const std::vector<double>& p) {
                return analytic::orderstat_pair_pdf(pair, p[0], p[1]);
            });
        };
        const mc::Chi2Report rep = chi2_selected_cells(acc.h[i], interior, mass, alpha);
        if (rep.p_value < min_p) {
            min_p = rep.p_value;
            worst_stat = rep.statistic;
        }
        all_pass = all_pass && rep.pass;
    }
    res.analytic = alpha;
    res.estimate = min_p;
    res.stderr_value = kNan;
    res.statistic = worst_stat;
    res.pass = all_pass;
}

void run_tent_chi2(ClaimResult& res, const RunArgs& a,
                   const std::function<AngleTriple(RngStream&)>& triple,
                   bool use_omega) {
    auto make = [] {
        return mc::HistogramND(std::vector<int>{24, 24},
                               std::vector<std::pair<double, double>>{{0.0, kPi}, {0.0, kPi}});
    };
    auto acc = parallel_chunks<mc::HistogramND>(
        a.n, a.seed, a.ordinal, a.workers, make,
        [&](RngStream& rng, mc::HistogramND& h) {
            const AngleTriple t = triple(rng);
            h.add(t.a, use_omega ? t.w : t.b);
        });
    const auto rep = mc::chi_square_uniformity(
        acc, [](const std::vector<double>& p) { return analytic::tent_pdf(p[0], p[1]); },
        0.01);
    finish_chi2(res, rep, 0.01);
}

void run_tent_dependence(ClaimResult& res, const RunArgs& a) {
    struct Counts {
        std::uint64_t n = 0, na = 0, nb = 0, nab = 0;
        void merge(const Counts& o) {
            n += o.n;
            na += o.na;
            nb += o.nb;
            nab += o.nab;
        }
    };
    const double c = kPi / 4.0;
    auto acc = parallel_chunks<Counts>(
        a.n, a.seed, a.ordinal, a.workers, [] { return Counts{}; },
        [&](RngStream& rng, Counts& k) {
            const AngleTriple t = quad_symmetrized(rng);
            const bool ia = t.a < c;
            const bool ib = t.b < c;
            ++k.n;
            k.na += ia;
            k.nb += ib;
            k.nab += ia && ib;
        });
    const double n = static_cast<double>(acc.n);
    const double p11 = static_cast<double>(acc.nab) / n;
    const double pa = static_cast<double>(acc.na) / n;
    const double pb = static_cast<double>(acc.nb) / n;
    const double d_hat = p11 - pa * pb;
    // Delta method over the 2x2 indicator multinomial.
    const double p10 = pa - p11;
    const double p01 = pb - p11;
    const double g11 = 1.0 - pa - pb;
    const double mean_g = p11 * g11 + p10 * (-pb) + p01 * (-pa);
    const double mean_g2 = p11 * g11 * g11 + p10 * pb * pb + p01 * pa * pa;
    const double se = std::sqrt(std::max(0.0, mean_g2 - mean_g * mean_g) / n);

    // Analytic gap P(A and B) - P(A) P(B) under the tent law, by quadrature
    // (outer pass looser than the inner one, which feeds it noise).
    specfun::QuadratureSpec outer;
    outer.abs_tol = outer.rel_tol = 1e-7;
    const double p_joint = specfun::integrate(
        [&](double x) {
            return specfun::integrate(
                [&](double y) { return analytic::tent_pdf(x, y); }, 0.0, c);
        },
        0.0, c, outer);
    const double p_marg = analytic::angle_cdf(c);

    res.analytic = p_joint - p_marg * p_marg;
    res.estimate = d_hat;
    res.stderr_value = se;
    res.statistic = se > 0.0 ? d_hat / se : 0.0;
    res.pass = res.statistic >= 5.0;
}

void run_tri_side_indep(ClaimResult& res, const RunArgs& a) {
    auto make = [] {
        return mc::HistogramND(std::vector<int>{24, 24},
                               std::vector<std::pair<double, double>>{{0.0, 2.0}, {0.0, 2.0}});
    };
    auto acc = parallel_chunks<mc::HistogramND>(
        a.n, a.seed, a.ordinal, a.workers, make,
        [](RngStream& rng, mc::HistogramND& h) {
            const std::vector<double> g = rotated_gaps(3, rng);
            h.add(2.0 * std::sin(0.5 * g[0]), 2.0 * std::sin(0.5 * g[1]));
        });

    const double alpha = 0.01 / 2.0;
    const mc::Chi2Report indep = mc::chi_square_independence(acc, alpha);
    // Against the analytic product, with exact cell masses from the marginal
    // cdf (the pdf blows up at the edge, so quadrature cell masses would not
    // do).
    auto mass = [](const std::vector<double>& lo, const std::vector<double>& hi) {
        return (analytic::triangle_side_marginal_cdf(hi[0]) -
                analytic::triangle_side_marginal_cdf(lo[0])) *
               (analytic::triangle_side_marginal_cdf(hi[1]) -
                analytic::triangle_side_marginal_cdf(lo[1]));
    };
    auto all_cells = [](const std::vector<double>&, const std::vector<double>&) {
        return true;
    };
    const mc::Chi2Report against = chi2_selected_cells(acc, all_cells, mass, alpha);

    res.analytic = alpha;
    res.estimate = std::min(indep.p_value, against.p_value);
    res.stderr_value = kNan;
    res.statistic = indep.p_value < against.p_value ? indep.statistic : against.statistic;
    res.pass = indep.pass && against.pass;
}

void run_tri_angle_uniform(ClaimResult& res, const RunArgs& a) {
    auto make = [] {
        return mc::HistogramND(std::vector<int>{24, 24},
                               std::vector<std::pair<double, double>>{{0.0, kPi}, {0.0, kPi}});
    };
    auto acc = parallel_chunks<mc::HistogramND>(
        a.n, a.seed, a.ordinal, a.workers, make,
        [](RngStream& rng, mc::HistogramND& h) {
            const std::vector<double> g = rotated_gaps(3, rng);
            h.add(0.5 * g[0], 0.5 * g[1]);
        });
    // Cells fully inside the open simplex carry exact constant mass; the
    // boundary strip is pooled.
    auto interior = [](const std::vector<double>& lo, const std::vector<double>& hi) {
        return lo[0] > 0.0 && lo[1] > 0.0 && hi[0] + hi[1] < kPi;
    };
    auto mass = [](const std::vector<double>& lo, const std::vector<double>& hi) {
        return 2.0 / (kPi * kPi) * (hi[0] - lo[0]) * (hi[1] - lo[1]);
    };
    finish_chi2(res, chi2_selected_cells(acc, interior, mass, 0.01), 0.01);
}

void run_quad_f_support(ClaimResult& res, const RunArgs& a) {
    struct Acc {
        mc::HistogramND h;
        std::uint64_t violations = 0;
        void merge(const Acc& o) {
            h.merge(o.h);
            violations += o.violations;
        }
    };
    auto make = [] {
        return Acc{mc::HistogramND(std::vector<int>{16, 16, 16},
                                   std::vector<std::pair<double, double>>{
                                       {0.0, kPi}, {0.0, kPi}, {0.0, kPi}}),
                   0};
    };
    auto acc = parallel_chunks<Acc>(
        a.n, a.seed, a.ordinal, a.workers, make, [](RngStream& rng, Acc& acc) {
            const AngleTriple t = quad_symmetrized(rng);
            if (analytic::quad_angle_joint_pdf(t.a, t.b, t.w) == 0.0)
                ++acc.violations;
            acc.h.add(t.a, t.b, t.w);
        });

    auto inside = [](double x, double y, double z) {
        return x + y > z && x + z > y && y + z > x && x + y + z < 2.0 * kPi;
    };
    auto interior = [&](const std::vector<double>& lo, const std::vector<double>& hi) {
        for (int i = 0; i < 8; ++i) {
            const double x = (i & 1) ? hi[0] : lo[0];
            const double y = (i & 2) ? hi[1] : lo[1];
            const double z = (i & 4) ? hi[2] : lo[2];
            if (!inside(x, y, z))
                return false;
        }
        return lo[0] > 0.0 && lo[1] > 0.0 && lo[2] > 0.0;
    };
    auto mass = [](const std::vector<double>& lo, const std::vector<double>& hi) {
        return 3.0 / (kPi * kPi * kPi) * (hi[0] - lo[0]) * (hi[1] - lo[1]) *
               (hi[2] - lo[2]);
    };
    const mc::Chi2Report rep = chi2_selected_cells(acc.h, interior, mass, 0.01);
    finish_chi2(res, rep, 0.01);
    res.pass = rep.pass && acc.violations == 0;
}

void run_quad_area_twice_tri(ClaimResult& res, const RunArgs& a) {
    struct Acc {
        mc::MomentAccumulator quad, tri;
        void merge(const Acc& o) {
            quad.merge(o.quad);
            tri.merge(o.tri);
        }
    };
    auto acc = parallel_chunks<Acc>(
        a.n, a.seed, a.ordinal, a.workers, [] { return Acc{}; },
        [](RngStream& rng, Acc& acc) {
            acc.quad.add(sample_polygon(4, rng).area);
            acc.tri.add(sample_polygon(3, rng).area);
        });
    const double mq = acc.quad.mean();
    const double mt = acc.tri.mean();
    const double ratio = mq / mt;
    const double rel_q = acc.quad.stderr_of_mean() / mq;
    const double rel_t = acc.tri.stderr_of_mean() / mt;
    const double se = std::abs(ratio) * std::sqrt(rel_q * rel_q + rel_t * rel_t);
    finish_z_test(res, 2.0, ratio, se);
}

// ---- registry -------------------------------------------------------------

struct ClaimDef {
    Claim claim;
    std::function<void(ClaimResult&, const RunArgs&)> run;
};

std::vector<ClaimDef> build_registry() {
    std::vector<ClaimDef> defs;
    auto add = [&](Claim c, std::function<void(ClaimResult&, const RunArgs&)> fn) {
        defs.push_back({std::move(c), std::move(fn)});
    };
    auto target = [](const char* id) { return analytic::closed_form_moment(id); };
    auto loc = [](const char* id) { return analytic::moment_info(id).location; };

    // -- quadrilateral side and diagonal moments --
    add({"SIDE_MEAN", "mean of an arbitrary quadrilateral side", loc("SIDE_MEAN"),
         ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("SIDE_MEAN"), random_side);
        });
    add({"SIDE_M2", "second moment of an arbitrary quadrilateral side", loc("SIDE_M2"),
         ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("SIDE_M2"), [](RngStream& rng) {
                const double s = random_side(rng);
                return s * s;
            });
        });
    add({"SIDE_ADJ_PRODUCT", "mean product of an arbitrary adjacent side pair",
         loc("SIDE_ADJ_PRODUCT"), ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("SIDE_ADJ_PRODUCT"), [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                const std::uint32_t j = rng.below(4);
                return m.sides[j] * m.sides[(j + 1) % 4];
            });
        });
    add({"SIDE_OPP_PRODUCT", "mean product of an arbitrary opposite side pair",
         loc("SIDE_OPP_PRODUCT"), ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("SIDE_OPP_PRODUCT"), [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                const std::uint32_t j = rng.below(2);
                return m.sides[j] * m.sides[j + 2];
            });
        });
    add({"SIDE_S2S3_PRODUCT", "mean product of the two middle sides",
         loc("SIDE_S2S3_PRODUCT"), ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("SIDE_S2S3_PRODUCT"), [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                return m.sides[1] * m.sides[2];
            });
        });
    add({"SIDE_S1S2_PRODUCT", "mean product of the first two sides",
         loc("SIDE_S1S2_PRODUCT"), ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("SIDE_S1S2_PRODUCT"), [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                return m.sides[0] * m.sides[1];
            });
        });
    add({"SIDE_ADJ_CORR", "correlation of an arbitrary adjacent side pair",
         loc("SIDE_ADJ_CORR"), ClaimKind::correlation, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_correlation(r, a, target("SIDE_ADJ_CORR"), [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                const std::uint32_t j = rng.below(4);
                return std::pair{m.sides[j], m.sides[(j + 1) % 4]};
            });
        });
    add({"DIAG_MEAN", "mean diagonal length", loc("DIAG_MEAN"), ClaimKind::moment,
         false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("DIAG_MEAN"), random_diagonal);
        });
    add({"DIAG_M2", "second moment of the diagonal length", loc("DIAG_M2"),
         ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("DIAG_M2"), [](RngStream& rng) {
                const double d = random_diagonal(rng);
                return d * d;
            });
        });

    // -- distributional tests, sec. 1 --
    add({"SIDE_KS", "arbitrary side against its mixture law", "sec. 1 (sides)",
         ClaimKind::density_1d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) {
            run_ks(r, a, analytic::side_cdf, random_side);
        });
    add({"DIAG_KS", "diagonal length against its law", "sec. 1 (sides)",
         ClaimKind::density_1d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) {
            run_ks(r, a, analytic::diagonal_cdf, random_diagonal);
        });
    auto gap_claim = [&](const char* id, const char* desc, analytic::GapLaw law,
                         int hi_index) {
        add({id, desc, "sec. 1 (sides)", ClaimKind::density_1d, false, 1000000},
            [law, hi_index](ClaimResult& r, const RunArgs& a) {
                run_ks(
                    r, a, [law](double u) { return analytic::gap_cdf(law, u); },
                    [hi_index](RngStream& rng) {
                        const core::CentralAngles ca = core::sample_central_angles(4, rng);
                        return (ca.theta[hi_index] - ca.theta[0]) / core::kTwoPi;
                    });
            });
    };
    gap_claim("GAP21_KS", "difference of the first two order statistics",
              analytic::GapLaw::g21, 1);
    gap_claim("GAP31_KS", "difference of the first and third order statistics",
              analytic::GapLaw::g31, 2);
    gap_claim("GAP41_KS", "difference of the extreme order statistics",
              analytic::GapLaw::g41, 3);
    add({"ORDERSTAT_PAIR_CHI2", "joint laws of the four order-statistic pairs",
         "sec. 1 (sides)", ClaimKind::density_2d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) { run_orderstat_chi2(r, a); });

    // -- angles, sec. 2 --
    add({"ANGLE_KS", "arbitrary quadrilateral angle against its mixture law",
         "sec. 2 (angles)", ClaimKind::density_1d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) {
            run_ks(r, a, analytic::angle_cdf, [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                return m.angles[rng.below(4)];
            });
        });
    add({"TENT_CHI2", "adjacent angle pair against the bivariate tent law",
         "sec. 2 (angles)", ClaimKind::density_2d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) {
            run_tent_chi2(r, a, quad_symmetrized, false);
        });
    add({"TENT_RHO_ZERO", "adjacent angles are uncorrelated", loc("TENT_CORR"),
         ClaimKind::correlation, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_correlation(r, a, target("TENT_CORR"), [](RngStream& rng) {
                const AngleTriple t = quad_symmetrized(rng);
                return std::pair{t.a, t.b};
            });
        });
    add({"TENT_DEPENDENCE", "adjacent angles are nevertheless dependent",
         "sec. 2 (angles)", ClaimKind::moment, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) { run_tent_dependence(r, a); });

    // -- triangles, sec. 3 --
    add({"TRI_ANGLE_RHO", "correlation of two triangle angles", loc("TRI_ANGLE_CORR"),
         ClaimKind::correlation, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_correlation(r, a, target("TRI_ANGLE_CORR"), [](RngStream& rng) {
                const std::vector<double> g = rotated_gaps(3, rng);
                return std::pair{0.5 * g[0], 0.5 * g[1]};
            });
        });
    add({"TRI_SIDE_INDEP_CHI2", "two triangle sides are independent with the stated product law",
         "sec. 3 (looking back)", ClaimKind::density_2d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) { run_tri_side_indep(r, a); });
    add({"TRI_SIDE_MARGINAL_KS", "triangle side against its arcsine law",
         "sec. 3 (looking back)", ClaimKind::density_1d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) {
            run_ks(r, a, analytic::triangle_side_marginal_cdf, [](RngStream& rng) {
                const std::vector<double> g = rotated_gaps(3, rng);
                return 2.0 * std::sin(0.5 * g[0]);
            });
        });
    add({"TRI_THIRD_SIDE_IDENTITY", "third side matches one of the two branch formulas",
         "sec. 3 (looking back)", ClaimKind::identity, false, 100000},
        [](ClaimResult& r, const RunArgs& a) {
            run_identity(r, a, [](RngStream& rng) {
                const auto m = sample_polygon(3, rng);
                const double plus =
                    core::third_side_triangle(m.sides[0], m.sides[1], core::Branch::plus);
                const double minus =
                    core::third_side_triangle(m.sides[0], m.sides[1], core::Branch::minus);
                return std::min(std::abs(m.sides[2] - plus), std::abs(m.sides[2] - minus));
            });
        });
    add({"TRI_ANGLE_UNIFORM_CHI2", "triangle angle pair is uniform over the simplex",
         "sec. 3 (looking back)", ClaimKind::density_2d, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) { run_tri_angle_uniform(r, a); });

    // -- pentagon and hexagon correlations, sec. 4 --
    auto ngon_corr = [&](const char* id, const char* desc, const char* moment_id,
                         int n, int i2, bool conjecture) {
        add({id, desc, loc(moment_id), ClaimKind::correlation, conjecture, 1000000},
            [=](ClaimResult& r, const RunArgs& a) {
                run_correlation(r, a, target(moment_id), [=](RngStream& rng) {
                    const std::vector<double> g = rotated_gaps(n, rng);
                    const double x = kPi - 0.5 * (g[0] + g[1]);
                    const double y = kPi - 0.5 * (g[i2] + g[i2 + 1]);
                    return std::pair{x, y};
                });
            });
    };
    ngon_corr("PENT_RHO_ADJ", "correlation of adjacent pentagon angles",
              "PENT_CORR_ADJ", 5, 1, false);
    ngon_corr("PENT_RHO_NONADJ", "correlation of nonadjacent pentagon angles",
              "PENT_CORR_NONADJ", 5, 2, false);
    ngon_corr("HEX_RHO_ADJ", "correlation of adjacent hexagon angles",
              "HEX_CORR_ADJ", 6, 1, true);
    ngon_corr("HEX_RHO_GAMMA", "correlation of hexagon angles one vertex apart",
              "HEX_CORR_GAMMA", 6, 2, true);
    ngon_corr("HEX_RHO_DELTA", "correlation of opposite hexagon angles",
              "HEX_CORR_DELTA", 6, 3, true);

    // -- area, sec. 5 --
    add({"TRI_AREA_MEAN", "mean triangle area", loc("TRI_AREA_MEAN"),
         ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("TRI_AREA_MEAN"),
                       [](RngStream& rng) { return sample_polygon(3, rng).area; });
        });
    add({"TRI_AREA_M2", "second moment of the triangle area", loc("TRI_AREA_M2"),
         ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("TRI_AREA_M2"), [](RngStream& rng) {
                const double x = sample_polygon(3, rng).area;
                return x * x;
            });
        });
    add({"TRI_AREA_KS", "triangle area against the elliptic-kernel law",
         "sec. 5 (area)", ClaimKind::density_1d, false, 100000},
        [](ClaimResult& r, const RunArgs& a) {
            run_ks(r, a, analytic::triangle_area_cdf,
                   [](RngStream& rng) { return sample_polygon(3, rng).area; });
        });
    add({"QUAD_F_SUPPORT_CHI2",
         "joint angle triple is uniform over the tetrahedron and never leaves it",
         "sec. 5 (area)", ClaimKind::density_3d, true, 4000000},
        [](ClaimResult& r, const RunArgs& a) { run_quad_f_support(r, a); });
    add({"QUAD_F_MARGINAL_TENT", "angle/diagonal-angle marginal matches the tent law",
         "sec. 5 (area)", ClaimKind::density_2d, true, 1000000},
        [](ClaimResult& r, const RunArgs& a) {
            run_tent_chi2(r, a, quad_symmetrized, true);
        });
    add({"QUAD_AREA_MEAN", "mean quadrilateral area", loc("QUAD_AREA_MEAN"),
         ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("QUAD_AREA_MEAN"),
                       [](RngStream& rng) { return sample_polygon(4, rng).area; });
        });
    add({"QUAD_AREA_M2", "second moment of the quadrilateral area", loc("QUAD_AREA_M2"),
         ClaimKind::moment, false, 1000000},
        [=](ClaimResult& r, const RunArgs& a) {
            run_moment(r, a, target("QUAD_AREA_M2"), [](RngStream& rng) {
                const double x = sample_polygon(4, rng).area;
                return x * x;
            });
        });
    add({"QUAD_AREA_TWICE_TRI", "mean quadrilateral area is twice the triangle mean",
         "sec. 5 (area)", ClaimKind::moment, false, 1000000},
        [](ClaimResult& r, const RunArgs& a) { run_quad_area_twice_tri(r, a); });

    // -- exact identities --
    add({"TAN_HALF_ANGLE_IDENTITY", "side-based tan-half-angle reconstruction round-trips",
         "sec. 5 (area)", ClaimKind::identity, false, 10000},
        [](ClaimResult& r, const RunArgs& a) {
            run_identity(r, a, [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                const core::QuadAngles q = core::angles_from_sides(
                    m.sides[1], m.sides[2], m.sides[3], m.sides[0]);
                return std::max({std::abs(q.alpha - m.angles[1]),
                                 std::abs(q.beta - m.angles[2]),
                                 std::abs(q.omega - m.omega)});
            });
        });
    add({"OPP_ANGLES_SUPPLEMENTARY", "opposite quadrilateral angles sum to pi",
         "preamble", ClaimKind::identity, false, 10000},
        [](ClaimResult& r, const RunArgs& a) {
            run_identity(r, a, [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                return std::max(std::abs(m.angles[0] + m.angles[2] - kPi),
                                std::abs(m.angles[1] + m.angles[3] - kPi));
            });
        });
    add({"ANGLE_SUM_IDENTITY", "interior angles sum to (n-2) pi for n = 3..6",
         "preamble", ClaimKind::identity, false, 10000},
        [](ClaimResult& r, const RunArgs& a) {
            run_identity(r, a, [](RngStream& rng) {
                double worst = 0.0;
                for (int n = 3; n <= 6; ++n) {
                    const auto m = sample_polygon(n, rng);
                    double sum = 0.0;
                    for (double ang : m.angles)
                        sum += ang;
                    worst = std::max(worst, std::abs(sum - (n - 2) * kPi));
                }
                return worst;
            });
        });
    add({"AREA_TRIG_VS_SHOELACE", "trigonometric area forms match the shoelace area",
         "preamble / sec. 5 (area)", ClaimKind::identity, false, 10000},
        [](ClaimResult& r, const RunArgs& a) {
            run_identity(r, a, [](RngStream& rng) {
                const auto q = sample_polygon(4, rng);
                const double quad_defect = std::abs(
                    q.area - 2.0 * std::sin(q.angles[1]) * std::sin(q.angles[2]) *
                                 std::sin(q.omega));
                const auto t = sample_polygon(3, rng);
                const double tri_defect = std::abs(
                    t.area - 2.0 * std::sin(t.angles[0]) * std::sin(t.angles[1]) *
                                 std::sin(t.angles[0] + t.angles[1]));
                return std::max(quad_defect, tri_defect);
            });
        });
    add({"DIAG_SIN_IDENTITY", "diagonals equal twice the sine of the subtending angle",
         "preamble", ClaimKind::identity, false, 10000},
        [](ClaimResult& r, const RunArgs& a) {
            run_identity(r, a, [](RngStream& rng) {
                const auto m = sample_polygon(4, rng);
                return std::max(std::abs(m.d1 - 2.0 * std::sin(m.angles[2])),
                                std::abs(m.d2 - 2.0 * std::sin(m.angles[1])));
            });
        });

    return defs;
}

const std::vector<ClaimDef>& registry() {
    static const std::vector<ClaimDef> defs = build_registry();
    return defs;
}

const ClaimDef* find_def(const std::string& id, std::uint64_t* ordinal) {
    const auto& defs = registry();
    for (std::size_t i = 0; i < defs.size(); ++i) {
        if (defs[i].claim.id == id) {
            if (ordinal)
                *ordinal = i;
            return &defs[i];
        }
    }
    return nullptr;
}

} // namespace

const char* kind_name(ClaimKind kind) {
    switch (kind) {
    case ClaimKind::moment: return "moment";
    case ClaimKind::correlation: return "correlation";
    case ClaimKind::density_1d: return "density_1d";
    case ClaimKind::density_2d: return "density_2d";
    case ClaimKind::density_3d: return "density_3d";
    case ClaimKind::identity: return "identity";
    }
    return "unknown";
}

std::uint64_t min_samples(ClaimKind kind) {
    switch (kind) {
    case ClaimKind::moment: return 2;
    case ClaimKind::correlation: return 3;
    case ClaimKind::density_1d: return 100;
    case ClaimKind::density_2d: return 1000;
    case ClaimKind::density_3d: return 1000;
    case ClaimKind::identity: return 1;
    }
    return 1;
}

const std::vector<Claim>& list_claims() {
    static const std::vector<Claim> claims = [] {
        std::vector<Claim> out;
        for (const auto& d : registry())
            out.push_back(d.claim);
        return out;
    }();
    return claims;
}

const Claim& claim_info(const std::string& id) {
    const ClaimDef* def = find_def(id, nullptr);
    if (!def)
        throw std::invalid_argument("claim_info: unknown claim id '" + id + "'");
    return def->claim;
}

ClaimResult run_claim(const std::string& id, std::uint64_t n_samples,
                      std::uint64_t seed, int workers, bool record_timing) {
    std::uint64_t ordinal = 0;
    const ClaimDef* def = find_def(id, &ordinal);
    if (!def)
        throw std::invalid_argument("run_claim: unknown claim id '" + id + "'");
    ClaimResult res;
    res.claim_id = def->claim.id;
    res.description = def->claim.description;
    res.paper_location = def->claim.paper_location;
    res.conjecture = def->claim.conjecture;
    res.kind = def->claim.kind;
    res.n_samples = n_samples;
    res.seed = seed;
    res.workers = std::max(1, workers);
    if (n_samples < min_samples(def->claim.kind))
        throw InsufficientSamplesError("run_claim: claim '" + id + "' needs at least " +
                                       std::to_string(min_samples(def->claim.kind)) +
                                       " samples");
    const auto t0 = std::chrono::steady_clock::now();
    def->run(res, RunArgs{n_samples, seed, res.workers, ordinal});
    if (record_timing) {
        const auto t1 = std::chrono::steady_clock::now();
        res.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    }
    return res;
}

std::vector<ClaimResult> run_all(std::optional<std::uint64_t> n_samples_override,
                                 std::uint64_t seed, int workers,
                                 bool record_timing) {
    std::vector<ClaimResult> out;
    for (const auto& def : registry()) {
        const std::uint64_t n = n_samples_override.value_or(def.claim.default_samples);
        try {
            out.push_back(run_claim(def.claim.id, n, seed, workers, record_timing));
        } catch (const std::exception& e) {
            ClaimResult res;
            res.claim_id = def.claim.id;
            res.description = def.claim.description;
            res.paper_location = def.claim.paper_location;
            res.conjecture = def.claim.conjecture;
            res.kind = def.claim.kind;
            res.analytic = kNan;
            res.estimate = kNan;
            res.stderr_value = kNan;
            res.statistic = kNan;
            res.pass = false;
            res.n_samples = n;
            res.seed = seed;
            res.workers = std::max(1, workers);
            res.error = e.what();
            out.push_back(std::move(res));
        }
    }
    return out;
}

std::string report_json(const std::vector<ClaimResult>& results) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json obj;
        obj["claim_id"] = r.claim_id;
        obj["description"] = r.description;
        obj["paper_location"] = r.paper_location;
        obj["conjecture"] = r.conjecture;
        obj["kind"] = kind_name(r.kind);
        obj["analytic"] = r.analytic;
        obj["estimate"] = r.estimate;
        obj["stderr"] = r.stderr_value;
        obj["statistic"] = r.statistic;
        obj["pass"] = r.pass;
        obj["n_samples"] = r.n_samples;
        obj["seed"] = r.seed;
        obj["workers"] = r.workers;
        obj["elapsed_seconds"] = r.elapsed_seconds;
        if (!r.error.empty())
            obj["error"] = r.error;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2);
}

bool all_required_pass(const std::vector<ClaimResult>& results) {
    for (const auto& r : results)
        if (!r.conjecture && (!r.pass || !r.error.empty()))
            return false;
    return true;
}

} // namespace cyclic::claims
