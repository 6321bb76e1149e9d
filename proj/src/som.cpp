#include "auvsom/som.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace auvsom {

void SomParams::validate() const {
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) throw std::invalid_argument("learning_rate must be in (0, 1]");
    if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("decay must be in (0, 1)");
    if (!(initial_gain > 0.0)) throw std::invalid_argument("initial_gain must be positive");
    if (!(neighborhood_radius > 0.0)) throw std::invalid_argument("neighborhood_radius must be positive");
    if (!(snap_distance > 0.0)) throw std::invalid_argument("snap_distance must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (neurons_per_auv < 1) throw std::invalid_argument("neurons_per_auv must be at least 1");
}

SomNetwork SomNetwork::initialize(const Scenario& scenario, const SomParams& params) {
    SomNetwork net;
    net.dimensions = scenario.dimensions;
    net.bounds = scenario.bounds;
    net.neuron_spacing = scenario.limits.r_min;
    net.auvs.resize(scenario.auvs.size());
    for (std::size_t j = 0; j < scenario.auvs.size(); ++j) {
        net.auvs[j].anchor = scenario.auvs[j];
        net.auvs[j].neurons.resize(static_cast<std::size_t>(params.neurons_per_auv));
        net.reset_neurons(j);
    }
    return net;
}

double SomNetwork::mean_path_length() const noexcept {
    if (auvs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& a : auvs) sum += a.path_length;
    return sum / static_cast<double>(auvs.size());
}

void SomNetwork::reset_neurons(std::size_t auv) {
    AuvState& a = auvs.at(auv);
    const Vec3 origin = a.anchor.position();
    const Vec3 ahead{std::cos(a.anchor.heading), std::sin(a.anchor.heading), 0.0};
    for (std::size_t k = 0; k < a.neurons.size(); ++k) {
        a.neurons[k] = bounds.clamp(origin + (static_cast<double>(k) * neuron_spacing) * ahead, dimensions);
    }
}

std::size_t compute_nmax(std::size_t n_targets, std::size_t n_auvs) {
    if (n_auvs == 0) throw std::invalid_argument("compute_nmax needs at least one AUV");
    if (n_targets == 0) throw std::invalid_argument("compute_nmax needs at least one target");
    return n_targets % n_auvs == 0 ? n_targets / n_auvs : n_targets / n_auvs + 1;
}

double load_balance_term(double path_length, double mean_path_length) noexcept {
    return (path_length - mean_path_length) / (1.0 + mean_path_length);
}

double competition_distance(Vec3 target, Vec3 neuron, double load_term, double path_length, double s_max) noexcept {
    if (path_length >= s_max) return std::numeric_limits<double>::infinity();
    return distance(target, neuron) * (1.0 + load_term);
}

double neuron_distance(const SomNetwork& network, std::size_t auv, std::size_t neuron, Vec3 target,
                       const CompetitionContext& ctx) noexcept {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const AuvState& a = network.auvs[auv];
    if (auv < ctx.excluded.size() && ctx.excluded[auv]) return inf;
    if (ctx.balanced && ctx.n_max && a.tour.size() >= *ctx.n_max) return inf;
    const double v = ctx.balanced ? load_balance_term(a.path_length, ctx.mean_path_length) : 0.0;
    return competition_distance(target, a.neurons[neuron], v, a.path_length, ctx.s_max);
}

std::optional<Winner> select_winner(Vec3 target, const SomNetwork& network, const CompetitionContext& ctx) {
    std::optional<Winner> best;
    for (std::size_t j = 0; j < network.auvs.size(); ++j) {
        for (std::size_t k = 0; k < network.auvs[j].neurons.size(); ++k) {
            const double d = neuron_distance(network, j, k, target, ctx);
            if (std::isinf(d)) continue;
            if (!best || d < best->distance) best = Winner{j, k, d};
        }
    }
    return best;
}

double neighborhood(double d, int iteration, const SomParams& params) noexcept {
    if (!(d < params.neighborhood_radius)) return 0.0;
    const double gain = std::pow(1.0 - params.decay, iteration) * params.initial_gain;
    return std::exp(-(d * d) / (gain * gain));
}

void update_weights(SomNetwork& network, const Winner& winner, Vec3 target, int iteration, const SomParams& params,
                    const CompetitionContext& ctx) {
    const Vec3 center = network.auvs.at(winner.auv).neurons.at(winner.neuron);

    // distances are evaluated against the pre-update state so the order of updates does not matter
    struct Move {
        std::size_t auv;
        std::size_t neuron;
        Vec3 to;
    };
    std::vector<Move> moves;
    for (std::size_t j = 0; j < network.auvs.size(); ++j) {
        const AuvState& a = network.auvs[j];
        for (std::size_t k = 0; k < a.neurons.size(); ++k) {
            const Vec3 w = a.neurons[k];
            const double f = neighborhood(distance(w, center), iteration, params);
            if (f == 0.0) continue;
            Vec3 next;
            if (neuron_distance(network, j, k, target, ctx) < params.snap_distance) {
                next = target;
            } else {
                next = w + (params.learning_rate * f) * (target - w);
            }
            moves.push_back({j, k, network.bounds.clamp(next, network.dimensions)});
        }
    }
    for (const Move& m : moves) {
        AuvState& a = network.auvs[m.auv];
        if (m.neuron == 0) a.path_length += distance(a.neurons[0], m.to);
        a.neurons[m.neuron] = m.to;
    }
}

double obstacle_weight(Vec3 obstacle, const SomNetwork& network) noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : network.auvs) {
        for (const Vec3& w : a.neurons) best = std::min(best, distance(obstacle, w));
    }
    return best;
}

TriggerState evaluate_trigger(double distance, double obstacle_weight, double d_safety) noexcept {
    TriggerState s;
    s.u1 = std::isinf(distance) ? 0 : 1;
    s.u2 = obstacle_weight > d_safety ? 0 : 1;
    s.u = s.u1 & s.u2;
    return s;
}

double effective_step(const Scenario& scenario, double requested) {
    if (requested > 0.0) return requested;
    return std::min(0.1, scenario.d_safety / 2.0);
}

Path3D plan_leg(const Pose& from, const Target& target, const KinematicLimits& limits, int dimensions,
                int heading_candidates) {
    const double z1 = dimensions == 3 ? target.position.z : 0.0;
    const double z0 = dimensions == 3 ? from.z : 0.0;
    Pose start = Pose::make(from.x, from.y, from.heading);

    auto plan_for = [&](double heading) {
        const Pose goal = Pose::make(target.position.x, target.position.y, heading);
        const DubinsPath flat = shortest_path(start, goal, limits);
        if (dimensions == 3) return plan_3d(flat, z0, z1, limits);
        return Path3D{flat, 0.0, 0.0, 0};
    };

    if (target.heading) return plan_for(*target.heading);
    if (heading_candidates < 1) throw std::invalid_argument("heading_candidates must be at least 1");

    std::optional<Path3D> best;
    for (int i = 0; i < heading_candidates; ++i) {
        Path3D candidate = plan_for(kTwoPi * i / heading_candidates);
        if (!best || candidate.length() < best->length()) best = std::move(candidate);
    }
    return *best;
}

namespace {

class Allocator {
public:
    Allocator(const Scenario& scenario, const SomParams& params, const AllocationOptions& options)
        : scenario_(scenario),
          params_(params),
          options_(options),
          step_(effective_step(scenario, options.sample_step)),
          network_(SomNetwork::initialize(scenario, params)) {
        result_.scenario_name = scenario.name;
        result_.dimensions = scenario.dimensions;
        result_.balanced = options.balanced;
        if (options.balanced) result_.n_max = compute_nmax(scenario.targets.size(), scenario.auvs.size());
        result_.target_to_auv.assign(scenario.targets.size(), std::nullopt);
    }

    AssignmentResult run() {
        std::vector<std::size_t> pending(scenario_.targets.size());
        for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;

        // each epoch presents the still-unassigned targets in scenario order; a target
        // nobody could take is retried only if the epoch changed some AUV's state
        for (std::size_t epoch = 0; !pending.empty(); ++epoch) {
            std::vector<std::size_t> deferred;
            bool progress = false;
            for (const std::size_t l : pending) {
                if (allocate(l, epoch)) {
                    progress = true;
                } else {
                    deferred.push_back(l);
                }
            }
            pending = std::move(deferred);
            if (!progress) break;
        }

        result_.unassigned = pending;
        result_.tours.resize(network_.auvs.size());
        for (std::size_t j = 0; j < network_.auvs.size(); ++j) result_.tours[j] = network_.auvs[j].tour;
        return std::move(result_);
    }

private:
    Vec3 target_point(std::size_t l) const {
        Vec3 p = scenario_.targets[l].position;
        if (scenario_.dimensions < 3) p.z = 0.0;
        return p;
    }

    std::optional<Winner> compete(Vec3 target, const CompetitionContext& ctx) const {
        SomNetwork working = network_;
        std::optional<Winner> winner;
        for (int t = 0; t < params_.max_iterations; ++t) {
            const auto w = select_winner(target, working, ctx);
            // drift can exhaust every range mid-round; the last winner still stands
            if (!w) break;
            winner = w;
            update_weights(working, *w, target, t, params_, ctx);
            if (w->distance < params_.snap_distance) break;
        }
        return winner;
    }

    bool allocate(std::size_t l, std::size_t epoch) {
        const Vec3 target = target_point(l);
        CompetitionContext ctx;
        ctx.s_max = scenario_.s_max;
        ctx.balanced = options_.balanced;
        ctx.n_max = result_.n_max;
        ctx.excluded.assign(network_.auvs.size(), false);

        for (std::size_t rejections = 0; rejections < network_.auvs.size(); ++rejections) {
            ctx.mean_path_length = network_.mean_path_length();
            const auto winner = compete(target, ctx);
            if (!winner) return false;

            const std::size_t j = winner->auv;
            AuvState& auv = network_.auvs[j];
            Path3D path = plan_leg(auv.anchor, scenario_.targets[l], scenario_.limits, scenario_.dimensions,
                                   options_.heading_candidates);
            auto polyline = sample_path(path, step_);
            const double length = path.length();

            if (!polyline_clear(polyline, scenario_)) {
                reject(epoch, l, j, "path_blocked", TriggerState{1, 0, 0}, ctx);
                continue;
            }
            if (auv.path_length + length > scenario_.s_max) {
                reject(epoch, l, j, "range_exceeded", TriggerState{0, 1, 0}, ctx);
                continue;
            }

            auv.path_length += length;
            auv.tour.push_back(l);
            auv.anchor = path.horizontal.goal;
            auv.anchor.z = path.z1;
            auv.anchor.pitch = 0.0;
            network_.reset_neurons(j);
            result_.target_to_auv[l] = j;
            result_.legs.push_back(Leg{j, l, std::move(path), length, std::move(polyline)});
            return true;
        }
        return false;
    }

    void reject(std::size_t epoch, std::size_t l, std::size_t j, const char* reason, TriggerState trigger,
                CompetitionContext& ctx) {
        result_.events.push_back(ReassignmentEvent{epoch, l, j, reason, trigger});
        ctx.excluded[j] = true;
    }

    const Scenario& scenario_;
    const SomParams& params_;
    const AllocationOptions& options_;
    double step_;
    SomNetwork network_;
    AssignmentResult result_;
};

}  // namespace

AssignmentResult run_allocation(const Scenario& scenario, const SomParams& params, const AllocationOptions& options) {
    if (const auto issues = check_scenario(scenario); !issues.empty()) {
        throw std::invalid_argument("invalid scenario: " + issues.front().code + ": " + issues.front().message);
    }
    params.validate();
    const double step = effective_step(scenario, options.sample_step);
    if (step > scenario.d_safety / 2.0) throw std::invalid_argument("sample step exceeds d_safety / 2");

    const auto begin = std::chrono::steady_clock::now();
    AssignmentResult result = Allocator(scenario, params, options).run();
    const auto end = std::chrono::steady_clock::now();

    result.metrics = compute_metrics(result);
    result.metrics.wall_ms = std::chrono::duration<double, std::milli>(end - begin).count();
    return result;
}

}  // namespace auvsom
