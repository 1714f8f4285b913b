#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace smt {

// Every numeric default of the pipeline lives in this header.
namespace defaults {
inline constexpr double kPitchMinHz = 50.0;
inline constexpr double kPitchMaxHz = 350.0;
inline constexpr double kFramePeriods = 3.0;  // frame length in periods of the lowest pitch
inline constexpr double kHopSec = 0.010;
inline constexpr double kVoicingThreshold = 0.45;
inline constexpr double kOctaveCost = 0.01;  // per octave, favours shorter lags among near-equal peaks

inline constexpr std::size_t kLookBack = 10;
inline constexpr std::size_t kLookAhead = 5;

inline constexpr double kWeightMin = 300.0;
inline constexpr double kWeightMax = 800.0;
inline constexpr double kBaselineMaxEm = 0.25;
inline constexpr double kSpacingMaxEm = 0.40;
inline constexpr double kSpacingPivot = 0.5;

inline constexpr std::string_view kFontFamily = "Recursive";
}  // namespace defaults

struct PitchConfig {
  double min_hz = defaults::kPitchMinHz;
  double max_hz = defaults::kPitchMaxHz;
  /// Unset means kFramePeriods / min_hz.
  std::optional<double> frame_sec;
  double hop_sec = defaults::kHopSec;
  double voicing_threshold = defaults::kVoicingThreshold;
  double octave_cost = defaults::kOctaveCost;

  double effective_frame_sec() const {
    return frame_sec.value_or(defaults::kFramePeriods / min_hz);
  }

  /// Throws ConfigError unless 0 < min < max < rate/2, frame >= 2/min,
  /// hop > 0 and threshold in (0, 1). Pass rate 0 to skip the Nyquist check.
  void validate(std::uint32_t sample_rate = 0) const;

  friend bool operator==(const PitchConfig&, const PitchConfig&) = default;
};

/// Asymmetric neighbourhood used by local normalization, in syllables.
struct WindowSpec {
  std::size_t look_back = defaults::kLookBack;
  std::size_t look_ahead = defaults::kLookAhead;

  void validate() const;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

struct MapConfig {
  double weight_min = defaults::kWeightMin;
  double weight_max = defaults::kWeightMax;
  double baseline_max_em = defaults::kBaselineMaxEm;
  double spacing_max_em = defaults::kSpacingMaxEm;
  double spacing_pivot = defaults::kSpacingPivot;

  void validate() const;

  friend bool operator==(const MapConfig&, const MapConfig&) = default;
};

struct PipelineConfig {
  PitchConfig pitch;
  WindowSpec window;
  MapConfig map;
  std::string font_family{defaults::kFontFamily};

  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Reads a TOML-style file of `key = value` lines grouped under `[pitch]`,
/// `[window]` and `[map]` tables; `font_family` sits at top level. Keys not
/// present keep the values already in `base`.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

}  // namespace smt
