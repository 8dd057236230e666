#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coman/signals/types.hpp"

namespace coman::phase {

/// Detection parameters. Defaults follow the rising-edge detector:
/// tau is the rise threshold fraction, delta_t the human reaction time
/// used to merge adjacent peaks, eta the relative magnitude floor for
/// outlier removal, smooth_width the moving-average width applied to each
/// power channel before peak finding.
struct DetectorParams {
    double tau = 0.1;
    double delta_t = 0.25;   // s
    double eta = 0.4;
    int smooth_width = 9;
    bool joint_participants = false;  // union both participants' channels
};

struct PeakEvent {
    double t_dominant = 0.0;
    double magnitude = 0.0;  // > 0
    std::string channel;
};

struct RisePeriod {
    double t_start = 0.0;
    double t_dominant = 0.0;
    double peak_magnitude = 0.0;
    bool truncated = false;  // channel never dipped below tau*magnitude before the peak
};

struct ActionPhase {
    double t0 = 0.0;
    double tf = 0.0;
    double strength = 0.0;  // max |P_k| over [t0, tf]
    int participant = 0;
    bool truncated = false;
};

/// Local maxima of a uniformly sampled channel, merged so that no two
/// surviving peaks are closer than delta_t (larger magnitude wins, ties go
/// to the earlier peak), then filtered by magnitude >= eta * largest peak.
std::vector<PeakEvent> find_filtered_peaks(const std::vector<double>& channel,
                                           const std::vector<double>& t,
                                           double delta_t, double eta,
                                           const std::string& channel_name = {});

/// Latest time before the peak at which the channel crosses
/// tau * magnitude from below (linear interpolation between samples).
/// Falls back to the frame start with truncated=true when the channel
/// never dips below the threshold.
RisePeriod rising_onset(const std::vector<double>& channel, const std::vector<double>& t,
                        const PeakEvent& peak, double tau);

/// Rise periods contributed by one set of power channels (one per channel
/// that produced a peak; each channel contributes its first surviving peak).
/// Channels whose first peak is below eta times the strongest first peak
/// across channels are dropped: all channels carry the same unit (W), and
/// a weak projection channel holds no independent onset information.
std::vector<RisePeriod> collect_rise_periods(const signals::PowerChannels& channels,
                                             const std::vector<double>& t,
                                             const DetectorParams& params,
                                             std::vector<std::string>* channel_names = nullptr);

/// The action-phase detector: union the rise periods of the N+1 power
/// channels and return the first maximal island as [t0, tf]. Returns
/// nullopt when no channel yields a peak.
std::optional<ActionPhase> detect_action_phase(const signals::TrialRecording& trial,
                                               int participant,
                                               const DetectorParams& params = {});

/// Idle interval [t_beep, t0] preceding the detected phase.
/// Throws EmptyIdleError when t0 <= t_beep.
std::pair<double, double> idle_phase(const signals::TrialRecording& trial, const ActionPhase& phase);

}  // namespace coman::phase
