#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smt/audio.hpp"

namespace smt {

struct Syllable {
  std::string text;
  TimeSpan span;
  /// Vowel nucleus; magnitude is measured here when present.
  std::optional<TimeSpan> vowel_span;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

struct Word {
  std::string text;
  std::vector<Syllable> syllables;

  friend bool operator==(const Word&, const Word&) = default;
};

struct Utterance {
  std::vector<Word> words;

  /// First syllable start to last syllable end.
  TimeSpan span() const;
  std::size_t syllable_count() const;
  /// Syllables of all words in time order.
  std::vector<const Syllable*> syllables() const;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

struct TimedTranscript {
  std::vector<Utterance> utterances;

  friend bool operator==(const TimedTranscript&, const TimedTranscript&) = default;
};

/// Parses the `.align.json` schema. Throws SchemaError for structural problems
/// and ValidationError for violated timing/text invariants; both carry the
/// offending path, e.g. "utterances[0].words[1].syllables[0].vowelEnd".
TimedTranscript parse_transcript(std::string_view json_text);
TimedTranscript load_transcript(const std::filesystem::path& path);

/// Checks every invariant parse_transcript enforces.
void validate(const TimedTranscript& transcript);

std::vector<std::size_t> syllable_count(const TimedTranscript& transcript);

/// Space-separated words, one utterance per line, no trailing newline.
std::string plain_text(const TimedTranscript& transcript);

}  // namespace smt
