#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclic::claims {

enum class ClaimKind { moment, correlation, density_1d, density_2d, density_3d, identity };

const char* kind_name(ClaimKind kind);

struct Claim {
    std::string id;
    std::string description;
    std::string paper_location;
    ClaimKind kind;
    bool conjecture = false;
    std::uint64_t default_samples = 0;
};

// Outcome of one verification run. The meaning of the numeric fields
// depends on the kind:
//   moment/correlation: analytic = closed-form target, estimate/stderr from
//     sampling, statistic = z-score; pass iff |z| <= 4 (dependence witness
//     claims instead require z >= 5).
//   density_1d: statistic = KS D, analytic = threshold at alpha = 0.01.
//   density_2d/3d: statistic = chi-square, estimate = p-value,
//     analytic = alpha; pass iff p > alpha.
//   identity: statistic = max absolute defect, analytic = tolerance 1e-9.
struct ClaimResult {
    std::string claim_id;
    std::string description;
    std::string paper_location;
    bool conjecture = false;
    ClaimKind kind = ClaimKind::moment;
    double analytic = 0.0;
    double estimate = 0.0;
    double stderr_value = 0.0;
    double statistic = 0.0;
    bool pass = false;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    double elapsed_seconds = 0.0;
    std::string error; // non-empty when the claim could not be evaluated
};

class InsufficientSamplesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const std::vector<Claim>& list_claims();
const Claim& claim_info(const std::string& id); // throws on unknown id

// Minimum sample count accepted for a claim kind.
std::uint64_t min_samples(ClaimKind kind);

// Runs one claim. Sampling fans out over `workers` threads in fixed-size
// chunks with per-chunk RNG streams, so the result is identical for any
// worker count. elapsed_seconds stays 0.0 unless record_timing is set,
// keeping default reports byte-reproducible.
ClaimResult run_claim(const std::string& id, std::uint64_t n_samples,
                      std::uint64_t seed, int workers, bool record_timing = false);

// Runs every claim with its default sample count (or the override when
// given). Per-claim errors are captured in the result entries rather than
// aborting the suite.
std::vector<ClaimResult> run_all(std::optional<std::uint64_t> n_samples_override,
                                 std::uint64_t seed, int workers,
                                 bool record_timing = false);

// JSON array of results, one object per claim, stable field order.
std::string report_json(const std::vector<ClaimResult>& results);

// True iff every non-conjecture result passed with no error.
bool all_required_pass(const std::vector<ClaimResult>& results);

} // namespace cyclic::claims
