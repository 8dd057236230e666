#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coman/core/errors.hpp"
#include "coman/dataset/corpus.hpp"
#include "coman/signals/channels.hpp"
#include "coman/signals/power.hpp"

namespace coman::dataset {

void WindowSpec::validate(double rate_hz) const {
    if (feature_set < 1 || feature_set > 3) throw std::invalid_argument("feature_set must be 1, 2 or 3");
    if (length_samples < 2) throw std::invalid_argument("window length too short");
    if (length_samples / rate_hz > 0.4 + 1e-9) {
        throw std::invalid_argument("window exceeds the 0.4 s reaction-time budget");
    }
}

int feature_count(const WindowSpec& spec, int n_goals) {
    return 4 * 2 * signals::feature_set_signal_count(spec.feature_set, n_goals);
}

namespace {

/// Goal whose direction best matches the object's final heading: mean
/// measured velocity over the last 0.5 s of observable motion.
int final_heading_goal(const signals::TrialRecording& trial, int participant) {
    const auto& track = trial.track(participant);
    const std::size_t n = trial.n_samples();
    const std::size_t want = static_cast<std::size_t>(std::llround(0.5 * trial.rate_hz));

    Vec2 mean_v{0.0, 0.0};
    Vec2 ref_pos = track.grasp_pos.front();
    std::size_t got = 0;
    for (std::size_t i = n; i-- > 0 && got < want;) {
        if (track.velocity[i].norm() > 0.15) {
            mean_v += track.velocity[i];
            ref_pos = track.grasp_pos[i];
            ++got;
        }
    }
    if (got < want / 5) {
        // Not enough motion; fall back to net displacement.
        mean_v = track.grasp_pos.back() - track.grasp_pos.front();
        ref_pos = track.grasp_pos.front();
    }
    if (mean_v.norm() < 1e-9) return 0;

    const Vec2 dir = mean_v.normalized();
    int best = 0;
    double best_cos = -2.0;
    for (int g = 1; g <= trial.layout.n_goals(); ++g) {
        const Vec2 to_goal = trial.layout.goal(g) - ref_pos;
        if (to_goal.norm() < 1e-9) continue;
        const double c = dir.dot(to_goal.normalized());
        if (c > best_cos) {
            best_cos = c;
            best = g;
        }
    }
    return best;
}

double mean_projected_power(const signals::TrialRecording& trial, int participant, int goal,
                            double t0, double tf) {
    const auto& track = trial.track(participant);
    const std::size_t a = trial.index_at(t0);
    const std::size_t b = std::min(trial.index_at(tf), trial.n_samples() - 1);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = a; i <= b; ++i) {
        acc += signals::projected_power(track.force[i], track.velocity[i], track.grasp_pos[i],
                                        trial.layout.goal(goal));
        ++cnt;
    }
    return cnt ? acc / static_cast<double>(cnt) : 0.0;
}

}  // namespace

std::optional<Annotation> annotate_participant(const signals::TrialRecording& trial, int participant,
                                               const AnnotateOptions& options) {
    const auto detected = phase::detect_action_phase(trial, participant, options.detector);
    if (!detected) return std::nullopt;

    Annotation ann;
    ann.participant = participant;
    ann.phase = *detected;
    try {
        const auto idle = phase::idle_phase(trial, *detected);
        ann.has_idle = true;
        ann.idle_start = idle.first;
        ann.idle_end = idle.second;
    } catch (const EmptyIdleError&) {
        ann.has_idle = false;
    }

    // Label: the privately assigned goal, relabelled when the trial's final
    // heading points elsewhere and the projected-power cue agrees.
    const int assigned = trial.meta.participant[static_cast<std::size_t>(participant - 1)].assigned_goal;
    const int heading = final_heading_goal(trial, participant);
    int label = assigned;
    if (assigned == 0) {
        label = heading;  // follower: no own goal, the heading is the intent
    } else if (heading != 0 && heading != assigned) {
        const double p_head = mean_projected_power(trial, participant, heading, detected->t0, detected->tf);
        const double p_assigned =
            mean_projected_power(trial, participant, assigned, detected->t0, detected->tf);
        if (p_head > p_assigned) label = heading;
    }
    if (label == 0) return std::nullopt;  // no resolvable intent
    ann.label = label;

    ann.weak = detected->strength < options.weak_strength;

    // Opposing: measured power sustained below threshold after the phase start.
    const auto& track = trial.track(participant);
    std::vector<double> p(trial.n_samples());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = signals::raw_power(track.force[i], track.velocity[i]);
    }
    const auto smooth = signals::moving_average(p, options.detector.smooth_width);
    const int need = static_cast<int>(std::llround(options.opposing_min_len * trial.rate_hz));
    int run = 0;
    const std::size_t from = trial.index_at(detected->t0);
    for (std::size_t i = from; i < smooth.size(); ++i) {
        run = smooth[i] < options.opposing_power ? run + 1 : 0;
        if (run >= need) {
            ann.opposing = true;
            break;
        }
    }
    return ann;
}

std::vector<double> window_stats(const signals::SignalMatrix& matrix, std::size_t end_index, int length) {
    if (length < 1 || end_index + 1 < static_cast<std::size_t>(length) || end_index >= matrix.n_samples()) {
        throw std::out_of_range("window_stats: window outside the signal matrix");
    }
    const std::size_t begin = end_index + 1 - static_cast<std::size_t>(length);
    std::vector<double> out;
    out.reserve(matrix.n_channels() * 4);
    for (const auto& ch : matrix.values) {
        double mn = ch[begin], mx = ch[begin], sum = 0.0;
        for (std::size_t i = begin; i <= end_index; ++i) {
            mn = std::min(mn, ch[i]);
            mx = std::max(mx, ch[i]);
            sum += ch[i];
        }
        const double mean = sum / length;
        double var = 0.0;
        for (std::size_t i = begin; i <= end_index; ++i) {
            const double d = ch[i] - mean;
            var += d * d;
        }
        out.push_back(mn);
        out.push_back(mx);
        out.push_back(mean);
        out.push_back(std::sqrt(var / length));  // population std
    }
    return out;
}

namespace {

struct Region {
    std::size_t lo = 0;  // first sample index
    std::size_t hi = 0;  // last sample index (inclusive)
    int label = 0;
};

}  // namespace

std::vector<LabeledWindow> neighborhood_sample(const signals::TrialRecording& trial,
                                               const Annotation& annotation, const WindowSpec& spec,
                                               const SamplingPlan& plan, Rng& rng,
                                               std::vector<std::string>* warnings) {
    const int L = spec.length_samples;
    const auto matrix = signals::derive_channel_matrix(trial, annotation.participant, spec.feature_set);

    std::vector<Region> regions;
    if (annotation.has_idle) {
        Region idle;
        idle.lo = trial.index_at(annotation.idle_start);
        // last sample at or before t0
        std::size_t hi = trial.index_at(annotation.phase.t0);
        if (hi > 0 && trial.t[hi] > annotation.phase.t0) --hi;
        idle.hi = hi;
        idle.label = 0;
        regions.push_back(idle);
    }
    {
        Region act;
        act.lo = trial.index_at(annotation.phase.t0);
        std::size_t hi = trial.index_at(annotation.phase.tf);
        if (hi > 0 && trial.t[hi] > annotation.phase.tf) --hi;
        act.hi = std::min(hi, trial.n_samples() - 1);
        act.label = annotation.label;
        regions.push_back(act);
    }

    std::vector<LabeledWindow> out;
    auto emit = [&](std::size_t end_index, int label) {
        LabeledWindow w;
        w.features = window_stats(matrix, end_index, L);
        w.label = label;
        w.trial_id = trial.meta.trial_id;
        w.participant = annotation.participant;
        w.end_time = trial.t[end_index];
        out.push_back(std::move(w));
    };

    for (const Region& r : regions) {
        // Feasible end indices keep the whole window inside the region.
        const std::size_t min_end = r.lo + static_cast<std::size_t>(L) - 1;
        if (min_end > r.hi || min_end >= trial.n_samples()) {
            if (warnings) {
                warnings->push_back("trial " + std::to_string(trial.meta.trial_id) + " participant " +
                                    std::to_string(annotation.participant) +
                                    (r.label == 0 ? " idle" : " action") +
                                    " region shorter than the window; no samples");
            }
            continue;
        }
        const std::size_t span = r.hi - min_end + 1;
        for (int i = 0; i < plan.n_uniform; ++i) {
            emit(min_end + rng.uniform_index(span), r.label);
        }
        // Stage 2: half-normal anchored at the transition. Idle windows end
        // just before t0, action windows start just after it.
        for (int i = 0; i < plan.n_skewed; ++i) {
            double offset_s = 0.0;
            std::size_t end_index = 0;
            bool ok = false;
            for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
                offset_s = rng.half_normal(plan.sigma_skew);
                const auto steps = static_cast<std::size_t>(std::llround(offset_s * trial.rate_hz));
                if (r.label == 0) {
                    if (r.hi < steps) continue;
                    end_index = r.hi - steps;
                    ok = end_index >= min_end;
                } else {
                    end_index = min_end + steps;
                    ok = end_index <= r.hi;
                }
            }
            if (!ok) end_index = r.label == 0 ? r.hi : min_end;  // clamp to the transition
            emit(end_index, r.label);
        }
    }
    return out;
}

}  // namespace coman::dataset
