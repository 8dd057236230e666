#pragma once

#include <vector>

#include "coman/signals/types.hpp"

namespace coman::signals {

/// Centered moving average of odd width (zero phase lag on ramps);
/// shrinks the window symmetrically at the edges.
std::vector<double> moving_average(const std::vector<double>& x, int width);

/// First time derivative: 5-sample moving-average smoothing followed by
/// central differences scaled by rate_hz, one-sided at the endpoints.
std::vector<double> time_derivative(const std::vector<double>& x, double rate_hz);

/// |P_k| and the N projected power signals for participant k (1 or 2),
/// recomputed per sample from the current grasp position.
PowerChannels power_channels(const TrialRecording& trial, int participant);

/// Number of base signals (before derivatives) in a feature set, for N goals.
int feature_set_signal_count(int feature_set, int n_goals);

/// Channel names for a feature set: each base signal followed by "d:" +
/// name. Order is fixed and documented in the corpus format.
std::vector<std::string> feature_set_channel_names(int feature_set, int n_goals);

/// Build the channels-by-time matrix for one participant and feature set.
/// Every base signal is immediately followed by its first derivative.
SignalMatrix derive_channel_matrix(const TrialRecording& trial, int participant, int feature_set);

}  // namespace coman::signals
