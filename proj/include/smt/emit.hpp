#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smt/config.hpp"
#include "smt/normalize.hpp"
#include "smt/prosody.hpp"
#include "smt/transcript.hpp"
#include "smt/typo_map.hpp"

namespace smt {

inline constexpr std::string_view kDocVersion = "1.0";

struct CaptionSyllable {
  std::string text;
  double start = 0.0;
  double end = 0.0;
  TypoStyle style;
  ProsodyVector raw;
  NormalizedProsody norm;

  friend bool operator==(const CaptionSyllable&, const CaptionSyllable&) = default;
};

struct CaptionWord {
  std::string text;
  std::vector<CaptionSyllable> syllables;

  friend bool operator==(const CaptionWord&, const CaptionWord&) = default;
};

struct CaptionUtterance {
  std::vector<CaptionWord> words;

  friend bool operator==(const CaptionUtterance&, const CaptionUtterance&) = default;
};

/// The `.smt.json` interchange document: per-syllable timing, target style,
/// and the raw and normalized features that produced it.
struct ModulatedCaptionDoc {
  std::string version{kDocVersion};
  std::string font_family{defaults::kFontFamily};
  MapConfig config;
  std::vector<CaptionUtterance> utterances;

  friend bool operator==(const ModulatedCaptionDoc&, const ModulatedCaptionDoc&) = default;
};

/// Rounds to six decimal places (and folds -0 into 0). Every number written
/// by serialize_doc goes through this, so quantized docs round-trip exactly.
double quantize(double value);

/// Assembles a document from per-utterance stage outputs, quantizing all
/// numbers. The outer vectors are indexed by utterance, the inner ones by
/// syllable in time order. Throws LengthMismatch on shape disagreement.
ModulatedCaptionDoc build_doc(const TimedTranscript& transcript,
                              std::span<const std::vector<ProsodyVector>> raw,
                              std::span<const std::vector<NormalizedProsody>> norm,
                              std::span<const std::vector<TypoStyle>> styles,
                              const MapConfig& config, std::string font_family);

/// ValidationError (with path) on any broken document invariant.
void validate(const ModulatedCaptionDoc& doc);

/// Canonical JSON: UTF-8, fixed key order, two-space indent, trailing newline.
std::string serialize_doc(const ModulatedCaptionDoc& doc);
ModulatedCaptionDoc parse_doc(std::string_view json_text);
ModulatedCaptionDoc load_doc(const std::filesystem::path& path);

/// Standalone HTML page with one inline-styled span per syllable.
std::string emit_static_markup(const ModulatedCaptionDoc& doc);

/// `.align.json` text for a transcript; parse_transcript reads it back exactly.
std::string serialize_transcript(const TimedTranscript& transcript);

/// Shortest decimal form of a quantized number, as used in markup ("0.25",
/// "550", "-0.1").
std::string format_number(double value);

}  // namespace smt
