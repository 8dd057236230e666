#include "coman/phase/detect.hpp"

#include <algorithm>
#include <cmath>

#include "coman/core/errors.hpp"
#include "coman/signals/channels.hpp"

namespace coman::phase {

std::vector<PeakEvent> find_filtered_peaks(const std::vector<double>& channel,
                                           const std::vector<double>& t,
                                           double delta_t, double eta,
                                           const std::string& channel_name) {
    const std::size_t n = channel.size();
    std::vector<PeakEvent> raw;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (channel[i] > channel[i - 1] && channel[i] > channel[i + 1] && channel[i] > 0.0) {
            raw.push_back({t[i], channel[i], channel_name});
        }
    }
    if (raw.empty()) return raw;

    // Suppress neighbours within delta_t, strongest first (ties: earlier).
    // The survivors are pairwise at least delta_t apart, so a second pass
    // is a no-op.
    std::vector<std::size_t> order(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (raw[a].magnitude != raw[b].magnitude) return raw[a].magnitude > raw[b].magnitude;
        return raw[a].t_dominant < raw[b].t_dominant;
    });
    std::vector<PeakEvent> kept;
    for (std::size_t idx : order) {
        bool suppressed = false;
        for (const auto& k : kept) {
            if (std::fabs(k.t_dominant - raw[idx].t_dominant) < delta_t) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(raw[idx]);
    }

    double max_mag = 0.0;
    for (const auto& p : kept) max_mag = std::max(max_mag, p.magnitude);
    const double floor_mag = eta * max_mag;
    std::vector<PeakEvent> out;
    for (const auto& p : kept) {
        if (p.magnitude >= floor_mag) out.push_back(p);
    }
    std::sort(out.begin(), out.end(),
              [](const PeakEvent& a, const PeakEvent& b) { return a.t_dominant < b.t_dominant; });
    return out;
}

RisePeriod rising_onset(const std::vector<double>& channel, const std::vector<double>& t,
                        const PeakEvent& peak, double tau) {
    const double level = tau * peak.magnitude;
    // Index of the peak sample (first t >= t_dominant).
    std::size_t pi = static_cast<std::size_t>(
        std::lower_bound(t.begin(), t.end(), peak.t_dominant - 1e-12) - t.begin());
    if (pi >= t.size()) pi = t.size() - 1;

    for (std::size_t i = pi; i > 0; --i) {
        if (channel[i - 1] < level && channel[i] >= level) {
            const double c0 = channel[i - 1];
            const double c1 = channel[i];
            const double frac = (level - c0) / (c1 - c0);
            return {t[i - 1] + frac * (t[i] - t[i - 1]), peak.t_dominant, peak.magnitude, false};
        }
    }
    return {t.front(), peak.t_dominant, peak.magnitude, true};
}

std::vector<RisePeriod> collect_rise_periods(const signals::PowerChannels& channels,
                                             const std::vector<double>& t,
                                             const DetectorParams& params,
                                             std::vector<std::string>* channel_names) {
    std::vector<RisePeriod> periods;
    std::vector<std::string> names;
    auto handle = [&](const std::vector<double>& ch, const std::string& name) {
        const auto smoothed = signals::moving_average(ch, params.smooth_width);
        const auto peaks = find_filtered_peaks(smoothed, t, params.delta_t, params.eta, name);
        if (peaks.empty()) return;
        periods.push_back(rising_onset(smoothed, t, peaks.front(), params.tau));
        names.push_back(name);
    };
    handle(channels.abs_power, "absP");
    for (std::size_t g = 0; g < channels.projected.size(); ++g) {
        handle(channels.projected[g], "Pp" + std::to_string(g + 1));
    }

    double best = 0.0;
    for (const auto& p : periods) best = std::max(best, p.peak_magnitude);
    std::vector<RisePeriod> strong;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (periods[i].peak_magnitude >= params.eta * best) {
            strong.push_back(periods[i]);
            if (channel_names) channel_names->push_back(names[i]);
        }
    }
    return strong;
}

namespace {

/// First maximal island of the union of closed intervals.
std::optional<std::pair<double, double>> first_union_island(std::vector<RisePeriod> periods) {
    if (periods.empty()) return std::nullopt;
    std::sort(periods.begin(), periods.end(),
              [](const RisePeriod& a, const RisePeriod& b) { return a.t_start < b.t_start; });
    double lo = periods.front().t_start;
    double hi = periods.front().t_dominant;
    for (std::size_t i = 1; i < periods.size(); ++i) {
        if (periods[i].t_start <= hi) {
            hi = std::max(hi, periods[i].t_dominant);
        } else {
            break;  // first island only
        }
    }
    return std::make_pair(lo, hi);
}

}  // namespace

std::optional<ActionPhase> detect_action_phase(const signals::TrialRecording& trial,
                                               int participant,
                                               const DetectorParams& params) {
    // Negotiation frame [t_beep, t_end]: actions start only after the beep.
    const std::size_t i0 = trial.index_at(trial.t_beep);
    const std::vector<double> frame_t(trial.t.begin() + static_cast<std::ptrdiff_t>(i0), trial.t.end());

    auto slice = [&](const std::vector<double>& full) {
        return std::vector<double>(full.begin() + static_cast<std::ptrdiff_t>(i0), full.end());
    };
    auto frame_channels = [&](int k) {
        signals::PowerChannels pc = signals::power_channels(trial, k);
        signals::PowerChannels sliced;
        sliced.abs_power = slice(pc.abs_power);
        for (const auto& pr : pc.projected) sliced.projected.push_back(slice(pr));
        return sliced;
    };

    const signals::PowerChannels own = frame_channels(participant);
    std::vector<RisePeriod> periods = collect_rise_periods(own, frame_t, params);
    if (params.joint_participants) {
        const signals::PowerChannels other = frame_channels(3 - participant);
        const auto extra = collect_rise_periods(other, frame_t, params);
        periods.insert(periods.end(), extra.begin(), extra.end());
    }

    const auto island = first_union_island(periods);
    if (!island) return std::nullopt;

    ActionPhase phase;
    phase.t0 = island->first;
    phase.tf = island->second;
    phase.participant = participant;
    for (const auto& p : periods) {
        if (p.truncated && p.t_start <= island->second && p.t_dominant >= island->first) {
            phase.truncated = true;
        }
    }
    // Strength: max |P_k| over [t0, tf] on the unsmoothed channel.
    const std::size_t a = trial.index_at(phase.t0);
    const std::size_t b = trial.index_at(phase.tf);
    const signals::PowerChannels raw = signals::power_channels(trial, participant);
    double strength = 0.0;
    for (std::size_t i = a; i <= b && i < raw.abs_power.size(); ++i) {
        strength = std::max(strength, raw.abs_power[i]);
    }
    phase.strength = strength;
    return phase;
}

std::pair<double, double> idle_phase(const signals::TrialRecording& trial, const ActionPhase& phase) {
    if (phase.t0 <= trial.t_beep) {
        throw EmptyIdleError("action began at the beep; idle class unavailable for this trial");
    }
    return {trial.t_beep, phase.t0};
}

}  // namespace coman::phase
