#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coman/core/vec2.hpp"

namespace coman::signals {

/// Workspace geometry: start position plus N goal locations. Goal indices
/// are 1-based everywhere downstream (0 is the idle class).
struct GoalLayout {
    Vec2 start;
    std::vector<Vec2> goals;

    int n_goals() const { return static_cast<int>(goals.size()); }
    const Vec2& goal(int index1) const { return goals[static_cast<std::size_t>(index1 - 1)]; }
};

enum class GoalType : std::uint8_t { Hard = 0, Soft = 1, Follower = 2 };

const char* to_string(GoalType t);
GoalType goal_type_from_string(const std::string& s);

struct ParticipantMeta {
    int assigned_goal = 0;  // 1..N, 0 for follower (no own goal)
    GoalType type = GoalType::Hard;
};

struct TrialMeta {
    std::int64_t trial_id = 0;
    std::int64_t dyad_id = 0;
    std::array<ParticipantMeta, 2> participant{};
    bool usable = true;  // stalemate trials are flagged unusable
};

/// One participant's synchronized force/velocity/grasp-position tracks.
struct ParticipantTrack {
    std::vector<Vec2> force;      // N
    std::vector<Vec2> velocity;   // m/s
    std::vector<Vec2> grasp_pos;  // m
};

/// Synchronized per-participant recording of one co-manipulation trial.
struct TrialRecording {
    double rate_hz = 200.0;
    std::vector<double> t;  // strictly increasing, step 1/rate_hz
    std::array<ParticipantTrack, 2> participants{};
    double t_beep = 0.0;
    double t_end = 0.0;
    GoalLayout layout;
    TrialMeta meta;

    std::size_t n_samples() const { return t.size(); }
    const ParticipantTrack& track(int k) const { return participants[static_cast<std::size_t>(k - 1)]; }
    ParticipantTrack& track(int k) { return participants[static_cast<std::size_t>(k - 1)]; }

    /// Index of the first sample with t >= time (clamped to the last sample).
    std::size_t index_at(double time) const;

    void validate() const;  // throws std::invalid_argument on broken invariants
};

/// |P_k| plus the N goal-projected power signals for one participant;
/// the inputs of the action-phase detector.
struct PowerChannels {
    std::vector<double> abs_power;            // |P_k(t)|, >= 0
    std::vector<std::vector<double>> projected;  // [goal i-1][t], signed
};

/// Channels-by-time matrix holding the chosen feature set's signals, each
/// immediately followed by its first time derivative.
struct SignalMatrix {
    std::vector<std::string> channel_names;
    std::vector<std::vector<double>> values;  // [channel][t]
    double rate_hz = 0.0;

    std::size_t n_channels() const { return values.size(); }
    std::size_t n_samples() const { return values.empty() ? 0 : values.front().size(); }
};

}  // namespace coman::signals
