#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <vector>

#include "auvsom/environment.hpp"
#include "auvsom/metrics.hpp"
#include "auvsom/som.hpp"

namespace auvsom {

/// Which allocation variants a campaign runs on each drawn scenario.
enum class BalancingMode { BalancedOnly, UnbalancedOnly, Compare };

struct CampaignRow {
    std::size_t trial = 0;
    std::uint64_t trial_seed = 0;
    bool balanced = true;
    std::size_t auvs = 0;
    std::size_t targets = 0;
    RunMetrics metrics;
};

/// Means over the trials of one balancing variant.
struct CampaignAggregate {
    bool balanced = true;
    double mean_total = 0.0;
    double mean_max = 0.0;
    double mean_deviation = 0.0;
    double worst_max = 0.0;
    double mean_wall_ms = 0.0;
    double mean_unassigned = 0.0;
    std::size_t max_task_count = 0;
};

struct CampaignReport {
    std::uint64_t seed = 0;
    std::size_t n_trials = 0;
    std::vector<CampaignRow> rows;              ///< trial-major; balanced before unbalanced within a trial
    std::vector<CampaignAggregate> aggregates;  ///< one per variant, balanced first
};

struct CampaignOptions {
    BalancingMode mode = BalancingMode::BalancedOnly;
    std::size_t jobs = 1;
    double sample_step = 0.0;
    std::size_t max_draw_attempts = 10000;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Seed for trial `trial` of a campaign seeded with `seed` (splitmix64 of the pair).
[[nodiscard]] std::uint64_t derive_trial_seed(std::uint64_t seed, std::size_t trial) noexcept;

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
[[nodiscard]] double uniform01(std::mt19937_64& rng) noexcept;

/// Copies `base` and redraws every AUV and target uniformly inside the bounds, rejecting
/// draws inside an obstacle envelope. Headings are uniform; obstacles are kept.
[[nodiscard]] Scenario draw_scenario(const Scenario& base, std::uint64_t seed, std::size_t max_attempts = 10000);

/// Runs `n_trials` seeded trials and aggregates their metrics. Rows are ordered by trial
/// index regardless of `jobs`.
[[nodiscard]] CampaignReport run_campaign(const Scenario& base, std::size_t n_trials, std::uint64_t seed,
                                          const SomParams& params, const CampaignOptions& options = {});

/// CSV with one row per trial and variant, plus a "mean" footer per variant when n_trials > 1.
/// wall_ms is left empty unless `include_timing`.
void write_campaign_csv(std::ostream& out, const CampaignReport& report, bool include_timing);

}  // namespace auvsom
