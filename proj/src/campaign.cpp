#include "auvsom/campaign.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

#include <fmt/format.h>

namespace auvsom {

std::uint64_t derive_trial_seed(std::uint64_t seed, std::size_t trial) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(rng); }

Vec3 draw_point(const Scenario& s, std::mt19937_64& rng, std::size_t max_attempts, const char* what) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Vec3 p{uniform(rng, s.bounds.min.x, s.bounds.max.x), uniform(rng, s.bounds.min.y, s.bounds.max.y), 0.0};
        if (s.dimensions == 3) p.z = uniform(rng, s.bounds.min.z, s.bounds.max.z);
        if (point_clear(p, s)) return p;
    }
    throw GenerationError(fmt::format("could not place {} clear of obstacles after {} attempts", what, max_attempts));
}

}  // namespace

Scenario draw_scenario(const Scenario& base, std::uint64_t seed, std::size_t max_attempts) {
    Scenario s = base;
    s.seed = seed;
    std::mt19937_64 rng(seed);
    for (Pose& auv : s.auvs) {
        const Vec3 p = draw_point(s, rng, max_attempts, "an AUV");
        auv = Pose::make(p.x, p.y, uniform(rng, 0.0, kTwoPi), p.z);
    }
    for (Target& t : s.targets) {
        t.position = draw_point(s, rng, max_attempts, "a target");
        t.heading.reset();
    }
    return s;
}

namespace {

std::vector<bool> variants(BalancingMode mode) {
    switch (mode) {
        case BalancingMode::BalancedOnly: return {true};
        case BalancingMode::UnbalancedOnly: return {false};
        case BalancingMode::Compare: return {true, false};
    }
    return {true};
}

}  // namespace

CampaignReport run_campaign(const Scenario& base, std::size_t n_trials, std::uint64_t seed, const SomParams& params,
                            const CampaignOptions& options) {
    if (n_trials == 0) throw std::invalid_argument("a campaign needs at least one trial");
    params.validate();
    const auto modes = variants(options.mode);

    CampaignReport report;
    report.seed = seed;
    report.n_trials = n_trials;
    report.rows.resize(n_trials * modes.size());

    auto run_trial = [&](std::size_t trial) {
        const std::uint64_t trial_seed = derive_trial_seed(seed, trial);
        const Scenario scenario = draw_scenario(base, trial_seed, options.max_draw_attempts);
        for (std::size_t v = 0; v < modes.size(); ++v) {
            AllocationOptions alloc;
            alloc.balanced = modes[v];
            alloc.sample_step = options.sample_step;
            const AssignmentResult result = run_allocation(scenario, params, alloc);
            report.rows[trial * modes.size() + v] =
                CampaignRow{trial, trial_seed, modes[v], scenario.auvs.size(), scenario.targets.size(), result.metrics};
        }
    };

    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, n_trials);
    if (jobs == 1) {
        for (std::size_t trial = 0; trial < n_trials; ++trial) run_trial(trial);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        {
            std::vector<std::jthread> workers;
            for (std::size_t w = 0; w < jobs; ++w) {
                workers.emplace_back([&, w] {
                    try {
                        for (std::size_t trial = w; trial < n_trials; trial += jobs) run_trial(trial);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    for (const bool balanced : modes) {
        CampaignAggregate agg;
        agg.balanced = balanced;
        for (const CampaignRow& row : report.rows) {
            if (row.balanced != balanced) continue;
            agg.mean_total += row.metrics.total;
            agg.mean_max += row.metrics.max;
            agg.mean_deviation += row.metrics.deviation;
            agg.mean_wall_ms += row.metrics.wall_ms;
            agg.mean_unassigned += static_cast<double>(row.metrics.unassigned);
            agg.worst_max = std::max(agg.worst_max, row.metrics.max);
            for (const std::size_t c : row.metrics.task_counts) agg.max_task_count = std::max(agg.max_task_count, c);
        }
        const double n = static_cast<double>(n_trials);
        agg.mean_total /= n;
        agg.mean_max /= n;
        agg.mean_deviation /= n;
        agg.mean_wall_ms /= n;
        agg.mean_unassigned /= n;
        report.aggregates.push_back(agg);
    }
    return report;
}

void write_campaign_csv(std::ostream& out, const CampaignReport& report, bool include_timing) {
    out << "format_version,row,seed,trials,auvs,targets,balanced,total,max,deviation,wall_ms,unassigned\n";
    auto wall = [&](double ms) { return include_timing ? fmt::format("{:.3f}", ms) : std::string{}; };
    std::size_t auvs = 0;
    std::size_t targets = 0;
    for (const CampaignRow& row : report.rows) {
        auvs = row.auvs;
        targets = row.targets;
        out << fmt::format("1,{},{},{},{},{},{},{},{},{},{},{}\n", row.trial, row.trial_seed, report.n_trials,
                           row.auvs, row.targets, row.balanced ? 1 : 0, row.metrics.total, row.metrics.max,
                           row.metrics.deviation, wall(row.metrics.wall_ms), row.metrics.unassigned);
    }
    if (report.n_trials < 2) return;
    for (const CampaignAggregate& agg : report.aggregates) {
        out << fmt::format("1,mean,{},{},{},{},{},{},{},{},{},{}\n", report.seed, report.n_trials, auvs, targets,
                           agg.balanced ? 1 : 0, agg.mean_total, agg.mean_max, agg.mean_deviation,
                           wall(agg.mean_wall_ms), agg.mean_unassigned);
    }
}

}  // namespace auvsom
