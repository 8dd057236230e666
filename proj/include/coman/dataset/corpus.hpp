#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coman/core/rng.hpp"
#include "coman/phase/detect.hpp"
#include "coman/signals/types.hpp"

namespace coman::dataset {

/// Fixed-length analysis window: L samples of the chosen feature set.
struct WindowSpec {
    int length_samples = 60;  // {20, 40, 60, 80}
    int feature_set = 1;      // {1, 2, 3}

    void validate(double rate_hz) const;  // window must fit the reaction-time budget (0.4 s)
};

/// Two-stage neighborhood sampling counts per labeled region.
struct SamplingPlan {
    int n_uniform = 10;
    int n_skewed = 5;
    double sigma_skew = 0.15;  // s, half-normal scale anchored at the transition
    std::uint64_t seed = 1;
};

struct LabeledWindow {
    std::vector<double> features;
    int label = 0;  // 0 idle, 1..N goal
    std::int64_t trial_id = 0;
    int participant = 0;
    double end_time = 0.0;
};

/// Per-participant annotation derived from the detector plus the
/// re-annotation rule; the unit both sampling and splitting operate on.
struct Annotation {
    int participant = 0;
    phase::ActionPhase phase;
    bool has_idle = false;
    double idle_start = 0.0;
    double idle_end = 0.0;
    int label = 0;          // re-annotated goal
    bool opposing = false;  // negative-power episode; excluded from training
    bool weak = false;      // phase strength below threshold; excluded from training
};

struct AnnotateOptions {
    phase::DetectorParams detector{};
    double weak_strength = 0.5;       // W
    double opposing_power = -0.5;     // W, sustained threshold
    double opposing_min_len = 0.12;   // s
};

/// Detect the phase, derive the idle interval, apply the re-annotation
/// rule and tag opposing/weak instances, all from the measured signals.
/// Returns nullopt when no phase is detected.
std::optional<Annotation> annotate_participant(const signals::TrialRecording& trial, int participant,
                                               const AnnotateOptions& options = {});

/// Per-channel (min, max, mean, population std) over the window ending at
/// end_index (inclusive), concatenated in canonical channel order.
std::vector<double> window_stats(const signals::SignalMatrix& matrix, std::size_t end_index, int length);

/// Number of features per window: 4 stats x channels (with derivatives).
int feature_count(const WindowSpec& spec, int n_goals);

/// Two-stage window sampling for one labeled region pair (idle + action).
/// Stage 1 draws end times uniformly inside each region; stage 2 draws
/// them from a half-normal anchored at the transition t0 (into idle for
/// idle windows, just after t0 for action windows). Regions shorter than
/// the window yield no samples and a warning.
std::vector<LabeledWindow> neighborhood_sample(const signals::TrialRecording& trial,
                                               const Annotation& annotation, const WindowSpec& spec,
                                               const SamplingPlan& plan, Rng& rng,
                                               std::vector<std::string>* warnings = nullptr);

struct SignalInstance {
    std::int64_t trial_id = 0;
    int participant = 0;
    bool opposing = false;
    bool weak = false;
};

struct CorpusOptions {
    WindowSpec window;
    SamplingPlan plan;
    AnnotateOptions annotate;
    std::uint64_t split_seed = 1;
    double test_fraction = 0.15;
    bool stratify_by_dyad = true;  // paper-faithful mode splits interactions directly
};

struct Corpus {
    WindowSpec window;
    SamplingPlan plan;
    int n_goals = 0;
    double rate_hz = 0.0;
    std::vector<std::string> channel_names;
    std::uint64_t fingerprint = 0;
    std::vector<LabeledWindow> train;
    std::vector<LabeledWindow> test;
    std::vector<std::int64_t> train_trials;
    std::vector<std::int64_t> test_trials;
    std::vector<SignalInstance> heldout;  // opposing/weak instances, signal-level set
    std::vector<std::string> warnings;

    int n_features() const;
    int n_classes() const { return n_goals + 1; }
};

/// Feature-spec fingerprint: hash of feature set, window length, goal
/// count, rate and the channel order. Models refuse mismatching vectors.
std::uint64_t feature_fingerprint(const WindowSpec& spec, int n_goals, double rate_hz);

/// Build the corpus: interaction-level 85/15 split (dyad-stratified by
/// default), neighborhood sampling of training and test windows, and the
/// tagged signal-level held-out set. Unusable trials are skipped.
Corpus build_corpus(const std::vector<signals::TrialRecording>& trials, const CorpusOptions& options);

}  // namespace coman::dataset
