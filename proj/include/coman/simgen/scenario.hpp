#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "coman/signals/types.hpp"

namespace coman::simgen {

enum class Behavior : std::uint8_t { Decisive = 0, Indecisive = 1 };

/// Everything a single synthetic trial depends on. Given (config, seed)
/// the trial is a pure function; all noise and timing draws come from the
/// per-trial stream.
struct ScenarioConfig {
    signals::GoalLayout layout;           // default: 3 goals, 2.4 m away, 40 deg apart
    double object_mass = 2.1;             // kg
    double damping = 6.0;                 // N s/m, viscous
    double rate_hz = 200.0;
    double t_beep = 0.3;                  // s
    double duration = 7.0;                // s, fixed trial length

    std::array<signals::ParticipantMeta, 2> roles{};
    std::array<Behavior, 2> behavior{Behavior::Decisive, Behavior::Decisive};

    // Noise model
    double force_noise_std = 0.5;         // N, per axis, grasp-force noise
    double walk_amp = 1.2;                // N, walking artifact amplitude
    double walk_freq = 2.0;               // Hz, jittered +-0.3 per participant
    double velocity_noise_std = 0.015;    // m/s, per axis

    // Interaction dynamics
    double hump_amp_min = 8.0;            // N
    double hump_amp_max = 11.0;
    double hump_dur_min = 0.4;            // s
    double hump_dur_max = 1.0;
    double p_yield = 0.85;                // soft goals concede with this probability
    double conflict_threshold = 5.0;      // N, stretch magnitude marking a conflict
    double reaction_time = 0.25;          // s, concession ramp length

    // Navigation servo (both participants share the load 50/50)
    double v_cruise = 0.9;                // m/s
    double servo_gain = 30.0;             // N per m/s of velocity error (total)
    double arrive_dist = 0.12;            // m

    std::uint64_t seed = 1;
    std::int64_t trial_id = 0;
    std::int64_t dyad_id = 0;
};

/// Start at the origin, N goals `distance` metres away separated by
/// `separation_deg`, centred straight ahead (+y).
signals::GoalLayout default_layout(int n_goals = 3, double distance = 2.4, double separation_deg = 40.0);

/// Per-participant ground truth emitted alongside each trial.
struct ParticipantTruth {
    std::vector<int> intent;      // per sample: 0 idle, 1..N goal index
    double force_onset = 0.0;     // s, first applied-force rise
    double power_onset = 0.0;     // s, noiseless |P| crossing tau of its first peak
    double first_peak_time = 0.0; // s, noiseless |P| first hump peak
    double peak_lo = 0.0;         // interval where the noiseless |P| stays
    double peak_hi = 0.0;         //   within 90% of the first-peak value
    bool opposing = false;        // negative-power episode followed by an intent change
    double opposing_start = 0.0;
    double opposing_end = 0.0;
    bool yielded = false;
};

struct GroundTruth {
    std::array<ParticipantTruth, 2> participant{};
    int final_goal = 0;           // 0 when the trial stalemates
    double consensus_time = 0.0;  // both intents equal final_goal from here on
    bool conflict = false;        // noiseless stretch exceeded the threshold
    bool stalemate = false;
    double max_stretch = 0.0;     // noiseless max ||F1 - F2||
};

struct GeneratedTrial {
    signals::TrialRecording trial;
    GroundTruth truth;
};

/// Role-pair mixture for corpus generation; weights are normalized.
struct MixConfig {
    double follower = 0.22;           // decisive leader + follower
    double same_goal = 0.18;          // both assigned the same goal
    double conflict_hard_soft = 0.25; // hard vs soft, different goals
    double conflict_soft_soft = 0.15; // soft vs soft, different goals
    double probe_soft = 0.12;         // indecisive soft probes, then follows
    double hard_hard = 0.08;          // stalemate-prone
};

struct CorpusGenConfig {
    int n_trials = 300;
    MixConfig mix;
    ScenarioConfig base;     // layout, noise and dynamics shared by all trials
    std::uint64_t seed = 1;
    int trials_per_dyad = 12;
};

/// Ratio of the weakest hump amplitude to the RMS of the force noise
/// (grasp noise + walking artifact), in dB.
double force_snr_db(const ScenarioConfig& config);

GeneratedTrial generate_trial(const ScenarioConfig& config);

/// Deterministic under seed; trial k uses sub-seed derive_seed(seed, k),
/// so generation parallelizes without changing output.
std::vector<GeneratedTrial> generate_corpus(const CorpusGenConfig& config);

}  // namespace coman::simgen
