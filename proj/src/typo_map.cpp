#include "smt/typo_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smt/error.hpp"

namespace smt {

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, std::string(what) + " value " + std::to_string(v) +
                                           " is outside [0, 1]");
  }
}

}  // namespace

double map_loudness_to_weight(double v, const MapConfig& cfg) {
  check_unit(v, "loudness");
  return cfg.weight_min + v * (cfg.weight_max - cfg.weight_min);
}

double map_pitch_to_baseline(double v, const MapConfig& cfg) {
  check_unit(v, "pitch");
  return (v - 0.5) * 2.0 * cfg.baseline_max_em;
}

double map_tempo_to_spacing(double v, const MapConfig& cfg) {
  check_unit(v, "tempo");
  return std::max(0.0, (v - cfg.spacing_pivot) / (1.0 - cfg.spacing_pivot)) * cfg.spacing_max_em;
}

TypoStyle style_syllable(const NormalizedProsody& norm, const MapConfig& cfg) {
  return {map_loudness_to_weight(norm.loudness, cfg), map_pitch_to_baseline(norm.pitch, cfg),
          map_tempo_to_spacing(norm.tempo, cfg)};
}

std::vector<TypoStyle> style_utterance(std::span<const NormalizedProsody> norm,
                                       const MapConfig& cfg) {
  if (norm.empty()) throw Error(ErrorKind::EmptyInput, "utterance has no syllables");
  cfg.validate();
  std::vector<TypoStyle> out;
  out.reserve(norm.size());
  for (std::size_t i = 0; i < norm.size(); ++i) {
    try {
      out.push_back(style_syllable(norm[i], cfg));
    } catch (const Error& e) {
      throw e.with_prefix("syllables[" + std::to_string(i) + "]");
    }
  }
  return out;
}

bool within_limits(const TypoStyle& style, const MapConfig& cfg) {
  return style.font_weight >= cfg.weight_min && style.font_weight <= cfg.weight_max &&
         std::abs(style.baseline_shift_em) <= cfg.baseline_max_em &&
         style.letter_spacing_em >= 0.0 && style.letter_spacing_em <= cfg.spacing_max_em;
}

}  // namespace smt
