#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cyclic::mc {

// One-pass mean/variance accumulator (Welford updates) with an exact
// pairwise merge, so per-worker instances can be reduced after the fact.
class MomentAccumulator {
public:
    void add(double x);
    void merge(const MomentAccumulator& other);

    std::uint64_t count() const { return n_; }
    double mean() const;
    double variance() const; // unbiased
    double stderr_of_mean() const;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Bivariate analogue tracking both marginals plus the cross-comoment.
class PairAccumulator {
public:
    void add(double x, double y);
    void merge(const PairAccumulator& other);

    std::uint64_t count() const { return n_; }
    double mean_x() const { return mx_; }
    double mean_y() const { return my_; }
    double covariance() const;  // unbiased
    double variance_x() const;
    double variance_y() const;
    double correlation() const;
    // Large-sample standard error (1 - rho^2) / sqrt(n).
    double correlation_stderr() const;

private:
    std::uint64_t n_ = 0;
    double mx_ = 0.0, my_ = 0.0;
    double cxx_ = 0.0, cyy_ = 0.0, cxy_ = 0.0;
};

std::tuple<double, double, double>
estimate_mean_var(const std::vector<double>& values); // (mean, var, stderr)

std::tuple<double, double>
estimate_correlation(const std::vector<std::pair<double, double>>& pairs);

struct KsReport {
    std::size_t n = 0;
    double d_statistic = 0.0;
    double threshold_at_alpha = 0.0;
    bool pass = false;
};

// One-sample Kolmogorov-Smirnov test against an analytic cdf. The cdf must
// be monotone over the sample range; threshold is c(alpha)/sqrt(n) with
// c(alpha) = sqrt(-ln(alpha/2)/2)  (c(0.01) ~ 1.628).
KsReport ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf, double alpha = 0.01);

// Regular grid histogram in 1 to 3 dimensions.
class HistogramND {
public:
    HistogramND(std::vector<int> bins_per_axis,
                std::vector<std::pair<double, double>> ranges);

    int dim() const { return static_cast<int>(bins_.size()); }
    void add(double x);
    void add(double x, double y);
    void add(double x, double y, double z);

    std::uint64_t total() const { return total_; }   // includes out-of-range
    std::uint64_t in_range() const;
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::size_t cell_count() const { return counts_.size(); }
    // Axis-aligned bounds of a flat-indexed cell.
    std::pair<std::vector<double>, std::vector<double>> cell_bounds(std::size_t flat) const;
    double cell_volume() const;

    void merge(const HistogramND& other);

private:
    void add_point(const double* p, int d);

    std::vector<int> bins_;
    std::vector<std::pair<double, double>> ranges_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

struct Chi2Report {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
    bool pass = false;
};

// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi2_survival(double statistic, int dof);

// Pearson chi-square over explicit cells. expected_mass[i] is the analytic
// probability of cell i; cells with expected count below 5 are pooled,
// together with any probability mass not covered by the cells. Throws when
// pooling degenerates to fewer than two effective cells.
Chi2Report chi_square_cells(const std::vector<std::uint64_t>& counts,
                            const std::vector<double>& expected_mass,
                            std::uint64_t n_total, double alpha = 0.01);

// Chi-square of a histogram against an expected pdf, with per-cell expected
// masses computed by tensor 3-point Gauss quadrature.
Chi2Report chi_square_uniformity(
    const HistogramND& hist,
    const std::function<double(const std::vector<double>&)>& expected_pdf,
    double alpha = 0.01);

// Contingency-table independence test for a 2-D histogram (expected cell
// counts from the product of its own marginals).
Chi2Report chi_square_independence(const HistogramND& hist, double alpha = 0.01);

} // namespace cyclic::mc
