#pragma once

#include <span>
#include <vector>

#include "smt/config.hpp"
#include "smt/normalize.hpp"

namespace smt {

/// Typographic parameters of one syllable. Positive baseline shift is
/// visually upward; renderers negate it where y grows downward.
struct TypoStyle {
  double font_weight = defaults::kWeightMin;
  double baseline_shift_em = 0.0;
  double letter_spacing_em = 0.0;

  friend bool operator==(const TypoStyle&, const TypoStyle&) = default;
};

// Each map throws OutOfRange unless v is in [0, 1].

/// Linear from weight_min (v = 0) to weight_max (v = 1).
double map_loudness_to_weight(double v, const MapConfig& cfg = {});

/// (v - 0.5) * 2 * baseline_max_em; neutral pitch stays on the baseline.
double map_pitch_to_baseline(double v, const MapConfig& cfg = {});

/// Half-rectified ramp: zero up to spacing_pivot, spacing_max_em at v = 1.
/// Letters are only ever spread apart, never squeezed.
double map_tempo_to_spacing(double v, const MapConfig& cfg = {});

TypoStyle style_syllable(const NormalizedProsody& norm, const MapConfig& cfg = {});

std::vector<TypoStyle> style_utterance(std::span<const NormalizedProsody> norm,
                                       const MapConfig& cfg = {});

/// True when the style satisfies the range invariants of `cfg`.
bool within_limits(const TypoStyle& style, const MapConfig& cfg);

}  // namespace smt
