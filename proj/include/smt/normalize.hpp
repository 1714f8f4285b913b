#pragma once

#include <span>
#include <vector>

#include "smt/config.hpp"
#include "smt/prosody.hpp"

namespace smt {

/// Relative prosody of one syllable; each value in [0, 1].
struct NormalizedProsody {
  double loudness = 0.5;
  double pitch = 0.5;
  double tempo = 0.5;
  bool pitch_was_voiced = false;

  friend bool operator==(const NormalizedProsody&, const NormalizedProsody&) = default;
};

/// Output value for a series (or window) whose max equals its min.
inline constexpr double kNeutral = 0.5;

/// (x - min) / (max - min) over the whole series.
std::vector<double> global_normalize(std::span<const double> values);

/// Same map with min/max taken over indices
/// [max(0, i - look_back), min(n - 1, i + look_ahead)].
std::vector<double> local_normalize(std::span<const double> values, const WindowSpec& window = {});

/// Element-wise arithmetic mean.
std::vector<double> combine(std::span<const double> globals, std::span<const double> locals);

/// Mean of global and local normalization of one series.
std::vector<double> normalize_series(std::span<const double> values, const WindowSpec& window = {});

/// Normalizes magnitude, pitch and duration independently. Unvoiced syllables
/// are dropped from the pitch series before normalizing and get kNeutral.
std::vector<NormalizedProsody> normalize_utterance(std::span<const ProsodyVector> features,
                                                   const WindowSpec& window = {});

}  // namespace smt
