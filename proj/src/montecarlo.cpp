#include "cyclic/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <tuple>

namespace cyclic::mc {

void MomentAccumulator::add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.n_ == 0)
        return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double d = other.mean_ - mean_;
    const double n = na + nb;
    m2_ += other.m2_ + d * d * na * nb / n;
    mean_ += d * nb / n;
    n_ += other.n_;
}

double MomentAccumulator::mean() const {
    if (n_ == 0)
        throw std::invalid_argument("MomentAccumulator: no data");
    return mean_;
}

double MomentAccumulator::variance() const {
    if (n_ < 2)
        throw std::invalid_argument("MomentAccumulator: need at least 2 samples");
    return m2_ / static_cast<double>(n_ - 1);
}

double MomentAccumulator::stderr_of_mean() const {
    return std::sqrt(variance() / static_cast<double>(n_));
}

void PairAccumulator::add(double x, double y) {
    ++n_;
    const double inv = 1.0 / static_cast<double>(n_);
    const double dx = x - mx_;
    const double dy = y - my_;
    mx_ += dx * inv;
    my_ += dy * inv;
    cxx_ += dx * (x - mx_);
    cyy_ += dy * (y - my_);
    cxy_ += dx * (y - my_);
}

void PairAccumulator::merge(const PairAccumulator& other) {
    if (other.n_ == 0)
        return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double dx = other.mx_ - mx_;
    const double dy = other.my_ - my_;
    cxx_ += other.cxx_ + dx * dx * na * nb / n;
    cyy_ += other.cyy_ + dy * dy * na * nb / n;
    cxy_ += other.cxy_ + dx * dy * na * nb / n;
    mx_ += dx * nb / n;
    my_ += dy * nb / n;
    n_ += other.n_;
}

double PairAccumulator::covariance() const {
    if (n_ < 2)
        throw std::invalid_argument("PairAccumulator: need at least 2 samples");
    return cxy_ / static_cast<double>(n_ - 1);
}

double PairAccumulator::variance_x() const {
    if (n_ < 2)
        throw std::invalid_argument("PairAccumulator: need at least 2 samples");
    return cxx_ / static_cast<double>(n_ - 1);
}

double PairAccumulator::variance_y() const {
    if (n_ < 2)
        throw std::invalid_argument("PairAccumulator: need at least 2 samples");
    return cyy_ / static_cast<double>(n_ - 1);
}

double PairAccumulator::correlation() const {
    if (n_ < 3)
        throw std::invalid_argument("PairAccumulator: need at least 3 samples");
    if (!(cxx_ > 0.0) || !(cyy_ > 0.0))
        throw std::invalid_argument("PairAccumulator: zero marginal variance");
    return cxy_ / std::sqrt(cxx_ * cyy_);
}

double PairAccumulator::correlation_stderr() const {
    const double rho = correlation();
    return (1.0 - rho * rho) / std::sqrt(static_cast<double>(n_));
}

std::tuple<double, double, double>
estimate_mean_var(const std::vector<double>& values) {
    MomentAccumulator acc;
    for (double v : values)
        acc.add(v);
    return {acc.mean(), acc.variance(), acc.stderr_of_mean()};
}

std::tuple<double, double>
estimate_correlation(const std::vector<std::pair<double, double>>& pairs) {
    PairAccumulator acc;
    for (const auto& [x, y] : pairs)
        acc.add(x, y);
    return {acc.correlation(), acc.correlation_stderr()};
}

KsReport ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf, double alpha) {
    const std::size_t n = samples.size();
    if (n < 100)
        throw std::invalid_argument("ks_test: need at least 100 samples");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ks_test: alpha in (0,1) required");
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    double prev_f = -1.0;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(samples[i]);
        if (f < prev_f - 1e-12 || f < -1e-12 || f > 1.0 + 1e-12)
            throw std::invalid_argument("ks_test: cdf is not monotone on the sample range");
        prev_f = f;
        d = std::max(d, f - static_cast<double>(i) * inv_n);
        d = std::max(d, static_cast<double>(i + 1) * inv_n - f);
    }
    KsReport rep;
    rep.n = n;
    rep.d_statistic = d;
    rep.threshold_at_alpha = std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
    rep.pass = d <= rep.threshold_at_alpha;
    return rep;
}

HistogramND::HistogramND(std::vector<int> bins_per_axis,
                         std::vector<std::pair<double, double>> ranges)
    : bins_(std::move(bins_per_axis)), ranges_(std::move(ranges)) {
    if (bins_.empty() || bins_.size() > 3 || bins_.size() != ranges_.size())
        throw std::invalid_argument("HistogramND: 1 to 3 axes with matching ranges required");
    std::size_t cells = 1;
    for (std::size_t a = 0; a < bins_.size(); ++a) {
        if (bins_[a] < 1 || !(ranges_[a].second > ranges_[a].first))
            throw std::invalid_argument("HistogramND: invalid bins or range");
        cells *= static_cast<std::size_t>(bins_[a]);
    }
    counts_.assign(cells, 0);
}

void HistogramND::add_point(const double* p, int d) {
    if (d != dim())
        throw std::invalid_argument("HistogramND: dimension mismatch");
    ++total_;
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
        const auto& [lo, hi] = ranges_[a];
        if (!(p[a] >= lo && p[a] < hi))
            return; // out of range, counted only in total_
        const auto idx = static_cast<std::size_t>((p[a] - lo) / (hi - lo) * bins_[a]);
        flat = flat * static_cast<std::size_t>(bins_[a]) +
               std::min(idx, static_cast<std::size_t>(bins_[a] - 1));
    }
    ++counts_[flat];
}

void HistogramND::add(double x) { add_point(&x, 1); }
void HistogramND::add(double x, double y) {
    const double p[2] = {x, y};
    add_point(p, 2);
}
void HistogramND::add(double x, double y, double z) {
    const double p[3] = {x, y, z};
    add_point(p, 3);
}

std::uint64_t HistogramND::in_range() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::pair<std::vector<double>, std::vector<double>>
HistogramND::cell_bounds(std::size_t flat) const {
    const int d = dim();
    std::vector<double> lo(d), hi(d);
    for (int a = d - 1; a >= 0; --a) {
        const auto nb = static_cast<std::size_t>(bins_[a]);
        const std::size_t idx = flat % nb;
        flat /= nb;
        const double w = (ranges_[a].second - ranges_[a].first) / static_cast<double>(bins_[a]);
        lo[a] = ranges_[a].first + static_cast<double>(idx) * w;
        hi[a] = lo[a] + w;
    }
    return {lo, hi};
}

double HistogramND::cell_volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < bins_.size(); ++a)
        v *= (ranges_[a].second - ranges_[a].first) / static_cast<double>(bins_[a]);
    return v;
}

void HistogramND::merge(const HistogramND& other) {
    if (bins_ != other.bins_ || ranges_ != other.ranges_)
        throw std::invalid_argument("HistogramND: merge layout mismatch");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] += other.counts_[i];
    total_ += other.total_;
}

namespace {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// series for x < a + 1 and continued fraction otherwise.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double chi2_survival(double statistic, int dof) {
    if (dof < 1)
        throw std::invalid_argument("chi2_survival: dof >= 1 required");
    if (statistic <= 0.0)
        return 1.0;
    const double a = 0.5 * static_cast<double>(dof);
    const double x = 0.5 * statistic;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

Chi2Report chi_square_cells(const std::vector<std::uint64_t>& counts,
                            const std::vector<double>& expected_mass,
                            std::uint64_t n_total, double alpha) {
    if (counts.size() != expected_mass.size() || counts.empty())
        throw std::invalid_argument("chi_square_cells: size mismatch");
    const double n = static_cast<double>(n_total);
    double stat = 0.0;
    int cells = 0;
    double pooled_mass = 0.0;
    std::uint64_t pooled_count = 0;
    double covered_mass = 0.0;
    std::uint64_t covered_count = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        covered_mass += expected_mass[i];
        covered_count += counts[i];
        const double e = n * expected_mass[i];
        if (e >= 5.0) {
            const double d = static_cast<double>(counts[i]) - e;
            stat += d * d / e;
            ++cells;
        } else {
            pooled_mass += expected_mass[i];
            pooled_count += counts[i];
        }
    }
    // Any probability mass not represented by a cell joins the pool, along
    // with the samples that fell outside the cells.
    pooled_mass += std::max(0.0, 1.0 - covered_mass);
    pooled_count += n_total - covered_count;
    const double pe = n * pooled_mass;
    if (pe > 0.0) {
        const double d = static_cast<double>(pooled_count) - pe;
        stat += d * d / pe;
        ++cells;
    }
    if (cells < 2)
        throw std::invalid_argument("chi_square_cells: degenerate binning (all cells pooled)");
    Chi2Report rep;
    rep.statistic = stat;
    rep.dof = cells - 1;
    rep.p_value = chi2_survival(stat, rep.dof);
    rep.pass = rep.p_value > alpha;
    return rep;
}

namespace {

constexpr std::array<double, 3> kGaussNodes = {-0.7745966692414834, 0.0,
                                               0.7745966692414834};
constexpr std::array<double, 3> kGaussWeights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

} // namespace

Chi2Report chi_square_uniformity(
    const HistogramND& hist,
    const std::function<double(const std::vector<double>&)>& expected_pdf,
    double alpha) {
    const int d = hist.dim();
    const std::size_t cells = hist.cell_count();
    std::vector<double> masses(cells, 0.0);
    std::vector<double> pt(d);
    for (std::size_t c = 0; c < cells; ++c) {
        auto [lo, hi] = hist.cell_bounds(c);
        double mass = 0.0;
        const int points = d == 1 ? 3 : (d == 2 ? 9 : 27);
        for (int g = 0; g < points; ++g) {
            int rem = g;
            double w = 1.0;
            for (int a = 0; a < d; ++a) {
                const int idx = rem % 3;
                rem /= 3;
                pt[a] = 0.5 * (lo[a] + hi[a]) + 0.5 * (hi[a] - lo[a]) * kGaussNodes[idx];
                w *= 0.5 * kGaussWeights[idx];
            }
            mass += w * expected_pdf(pt);
        }
        masses[c] = mass * hist.cell_volume();
    }
    return chi_square_cells(hist.counts(), masses, hist.total(), alpha);
}

Chi2Report chi_square_independence(const HistogramND& hist, double alpha) {
    if (hist.dim() != 2)
        throw std::invalid_argument("chi_square_independence: 2-D histogram required");
    // Infer the grid shape from the flat layout (row-major, axis 0 outer).
    std::size_t ncols = 0;
    {
        const double first_row_lo = hist.cell_bounds(0).first[0];
        for (std::size_t c = 0; c < hist.cell_count(); ++c) {
            if (hist.cell_bounds(c).first[0] != first_row_lo)
                break;
            ++ncols;
        }
    }
    const std::size_t nrows = hist.cell_count() / ncols;
    std::vector<double> row(nrows, 0.0), col(ncols, 0.0);
    const auto& counts = hist.counts();
    double n = 0.0;
    for (std::size_t r = 0; r < nrows; ++r)
        for (std::size_t c = 0; c < ncols; ++c) {
            const double v = static_cast<double>(counts[r * ncols + c]);
            row[r] += v;
            col[c] += v;
            n += v;
        }
    if (n < 1.0)
        throw std::invalid_argument("chi_square_independence: empty histogram");
    double stat = 0.0;
    for (std::size_t r = 0; r < nrows; ++r)
        for (std::size_t c = 0; c < ncols; ++c) {
            const double e = row[r] * col[c] / n;
            if (e <= 0.0)
                continue;
            const double diff = static_cast<double>(counts[r * ncols + c]) - e;
            stat += diff * diff / e;
        }
    Chi2Report rep;
    rep.statistic = stat;
    rep.dof = static_cast<int>((nrows - 1) * (ncols - 1));
    rep.p_value = chi2_survival(stat, rep.dof);
    rep.pass = rep.p_value > alpha;
    return rep;
}

} // namespace cyclic::mc
