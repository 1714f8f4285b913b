#include "smt/transcript.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smt/error.hpp"

namespace smt {

namespace {

using nlohmann::json;

// Boundaries closer than this are considered to coincide.
constexpr double kTimeTolerance = 1e-6;

std::string index_path(std::string_view parent, std::string_view field, std::size_t i) {
  std::string p(parent);
  if (!p.empty()) p += '.';
  p += field;
  p += '[' + std::to_string(i) + ']';
  return p;
}

std::string field_path(const std::string& parent, std::string_view field) {
  return parent.empty() ? std::string(field) : parent + "." + std::string(field);
}

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::SchemaError, message, path);
}

[[noreturn]] void validation_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::ValidationError, message, path);
}

const json& member(const json& obj, const std::string& path, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(field_path(path, key), "missing field");
  return *it;
}

const json& array_member(const json& obj, const std::string& path, std::string_view key) {
  const json& v = member(obj, path, key);
  if (!v.is_array()) schema_error(field_path(path, key), "expected an array");
  return v;
}

std::string string_member(const json& obj, const std::string& path, std::string_view key) {
  const json& v = member(obj, path, key);
  if (!v.is_string()) schema_error(field_path(path, key), "expected a string");
  return v.get<std::string>();
}

double number_member(const json& obj, const std::string& path, std::string_view key) {
  const json& v = member(obj, path, key);
  if (!v.is_number()) schema_error(field_path(path, key), "expected a number");
  return v.get<double>();
}

void check_object(const json& v, const std::string& path) {
  if (!v.is_object()) schema_error(path, "expected an object");
}

bool has_whitespace(std::string_view s) {
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return true;
  }
  return false;
}

Syllable parse_syllable(const json& v, const std::string& path) {
  check_object(v, path);
  Syllable syl;
  syl.text = string_member(v, path, "text");
  syl.span = {number_member(v, path, "start"), number_member(v, path, "end")};
  const bool has_vs = v.contains("vowelStart");
  const bool has_ve = v.contains("vowelEnd");
  if (has_vs != has_ve) {
    schema_error(field_path(path, has_vs ? "vowelEnd" : "vowelStart"),
                 "vowelStart and vowelEnd must appear together");
  }
  if (has_vs) {
    syl.vowel_span = TimeSpan{number_member(v, path, "vowelStart"),
                              number_member(v, path, "vowelEnd")};
  }
  return syl;
}

Word parse_word(const json& v, const std::string& path) {
  check_object(v, path);
  Word word;
  word.text = string_member(v, path, "text");
  const json& syllables = array_member(v, path, "syllables");
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    word.syllables.push_back(parse_syllable(syllables[i], index_path(path, "syllables", i)));
  }
  return word;
}

void validate_syllable(const Syllable& syl, const std::string& path) {
  if (syl.text.empty()) validation_error(field_path(path, "text"), "syllable text is empty");
  if (!syl.span.valid()) {
    validation_error(field_path(path, "end"), "span must satisfy 0 <= start < end");
  }
  if (syl.vowel_span) {
    if (!syl.vowel_span->valid()) {
      validation_error(field_path(path, "vowelEnd"), "vowel span must satisfy 0 <= start < end");
    }
    if (syl.vowel_span->start_sec < syl.span.start_sec - kTimeTolerance ||
        syl.vowel_span->end_sec > syl.span.end_sec + kTimeTolerance) {
      validation_error(field_path(path, "vowelStart"), "vowel span lies outside the syllable span");
    }
  }
}

void validate_word(const Word& word, const std::string& path) {
  if (word.text.empty()) validation_error(field_path(path, "text"), "word text is empty");
  if (has_whitespace(word.text)) {
    validation_error(field_path(path, "text"), "word text contains whitespace");
  }
  if (word.syllables.empty()) validation_error(field_path(path, "syllables"), "word has no syllables");
  std::string joined;
  for (std::size_t i = 0; i < word.syllables.size(); ++i) {
    const std::string sp = index_path(path, "syllables", i);
    validate_syllable(word.syllables[i], sp);
    if (i > 0 && std::abs(word.syllables[i].span.start_sec - word.syllables[i - 1].span.end_sec) >
                     kTimeTolerance) {
      validation_error(field_path(sp, "start"),
                       "syllables within a word must be contiguous (start == previous end)");
    }
    joined += word.syllables[i].text;
  }
  if (joined != word.text) {
    validation_error(field_path(path, "text"),
                     "syllable texts concatenate to '" + joined + "', not '" + word.text + "'");
  }
}

}  // namespace

TimeSpan Utterance::span() const {
  if (words.empty() || words.front().syllables.empty() || words.back().syllables.empty()) return {};
  return {words.front().syllables.front().span.start_sec, words.back().syllables.back().span.end_sec};
}

std::size_t Utterance::syllable_count() const {
  std::size_t n = 0;
  for (const auto& w : words) n += w.syllables.size();
  return n;
}

std::vector<const Syllable*> Utterance::syllables() const {
  std::vector<const Syllable*> out;
  out.reserve(syllable_count());
  for (const auto& w : words) {
    for (const auto& s : w.syllables) out.push_back(&s);
  }
  return out;
}

void validate(const TimedTranscript& transcript) {
  double previous_end = 0.0;
  for (std::size_t u = 0; u < transcript.utterances.size(); ++u) {
    const std::string up = index_path("", "utterances", u);
    const Utterance& utt = transcript.utterances[u];
    if (utt.words.empty()) validation_error(field_path(up, "words"), "utterance has no words");
    for (std::size_t w = 0; w < utt.words.size(); ++w) {
      const std::string wp = index_path(up, "words", w);
      validate_word(utt.words[w], wp);
      const TimeSpan first = utt.words[w].syllables.front().span;
      if (first.start_sec < previous_end - kTimeTolerance) {
        validation_error(field_path(index_path(wp, "syllables", 0), "start"),
                         "overlaps the preceding word or utterance");
      }
      previous_end = utt.words[w].syllables.back().span.end_sec;
    }
  }
}

TimedTranscript parse_transcript(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  check_object(doc, "");
  TimedTranscript transcript;
  const json& utterances = array_member(doc, "", "utterances");
  for (std::size_t u = 0; u < utterances.size(); ++u) {
    const std::string up = index_path("", "utterances", u);
    check_object(utterances[u], up);
    Utterance utt;
    const json& words = array_member(utterances[u], up, "words");
    for (std::size_t w = 0; w < words.size(); ++w) {
      utt.words.push_back(parse_word(words[w], index_path(up, "words", w)));
    }
    transcript.utterances.push_back(std::move(utt));
  }
  validate(transcript);
  return transcript;
}

TimedTranscript load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open file", path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_transcript(text.str());
  } catch (const Error& e) {
    throw e.with_prefix(path.string(), ":");
  }
}

std::vector<std::size_t> syllable_count(const TimedTranscript& transcript) {
  std::vector<std::size_t> counts;
  counts.reserve(transcript.utterances.size());
  for (const auto& utt : transcript.utterances) counts.push_back(utt.syllable_count());
  return counts;
}

std::string plain_text(const TimedTranscript& transcript) {
  std::string out;
  for (std::size_t u = 0; u < transcript.utterances.size(); ++u) {
    if (u > 0) out += '\n';
    const auto& words = transcript.utterances[u].words;
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (w > 0) out += ' ';
      out += words[w].text;
    }
  }
  return out;
}

}  // namespace smt
