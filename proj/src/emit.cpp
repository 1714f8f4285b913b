#include "smt/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smt/error.hpp"

namespace smt {

namespace {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

constexpr double kTimeTolerance = 1e-6;

std::string join(const std::string& parent, std::string_view field) {
  return parent.empty() ? std::string(field) : parent + "." + std::string(field);
}

std::string at(const std::string& parent, std::string_view field, std::size_t i) {
  return join(parent, field) + "[" + std::to_string(i) + "]";
}

[[noreturn]] void fail(ErrorKind kind, const std::string& path, const std::string& message) {
  throw Error(kind, message, path);
}

// ---- reading helpers --------------------------------------------------------

const json& field(const json& obj, const std::string& path, std::string_view key) {
  if (!obj.is_object()) fail(ErrorKind::SchemaError, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::SchemaError, join(path, key), "missing field");
  return *it;
}

double number(const json& obj, const std::string& path, std::string_view key) {
  const json& v = field(obj, path, key);
  if (!v.is_number()) fail(ErrorKind::SchemaError, join(path, key), "expected a number");
  return v.get<double>();
}

std::string text(const json& obj, const std::string& path, std::string_view key) {
  const json& v = field(obj, path, key);
  if (!v.is_string()) fail(ErrorKind::SchemaError, join(path, key), "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& obj, const std::string& path, std::string_view key) {
  const json& v = field(obj, path, key);
  if (!v.is_boolean()) fail(ErrorKind::SchemaError, join(path, key), "expected a boolean");
  return v.get<bool>();
}

const json& array(const json& obj, const std::string& path, std::string_view key) {
  const json& v = field(obj, path, key);
  if (!v.is_array()) fail(ErrorKind::SchemaError, join(path, key), "expected an array");
  return v;
}

CaptionSyllable read_syllable(const json& v, const std::string& path) {
  CaptionSyllable s;
  s.text = text(v, path, "text");
  s.start = number(v, path, "start");
  s.end = number(v, path, "end");

  const std::string sp = join(path, "style");
  const json& style = field(v, path, "style");
  s.style = {number(style, sp, "fontWeight"), number(style, sp, "baselineShiftEm"),
             number(style, sp, "letterSpacingEm")};

  const std::string rp = join(path, "raw");
  const json& raw = field(v, path, "raw");
  s.raw.magnitude_rms = number(raw, rp, "magnitudeRms");
  const json& pitch = field(raw, rp, "pitchHz");
  if (pitch.is_number()) {
    s.raw.pitch_hz = pitch.get<double>();
  } else if (!pitch.is_null()) {
    fail(ErrorKind::SchemaError, join(rp, "pitchHz"), "expected a number or null");
  }
  s.raw.duration_sec = number(raw, rp, "durationSec");

  const std::string np = join(path, "norm");
  const json& norm = field(v, path, "norm");
  s.norm = {number(norm, np, "loudness"), number(norm, np, "pitch"), number(norm, np, "tempo"),
            boolean(norm, np, "pitchWasVoiced")};
  return s;
}

// ---- validation -------------------------------------------------------------

void check(bool ok, const std::string& path, const std::string& message) {
  if (!ok) fail(ErrorKind::ValidationError, path, message);
}

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

bool css_safe(std::string_view family) {
  for (char c : family) {
    if (c == '"' || c == '\\' || c == '<' || c == '>' || c == ';' || c == '{' || c == '}' ||
        static_cast<unsigned char>(c) < 0x20) {
      return false;
    }
  }
  return true;
}

void validate_syllable(const CaptionSyllable& s, const MapConfig& cfg, const std::string& path) {
  check(!s.text.empty(), join(path, "text"), "syllable text is empty");
  check(std::isfinite(s.start) && s.start >= 0.0, join(path, "start"), "must be finite and >= 0");
  check(std::isfinite(s.end) && s.end > s.start, join(path, "end"), "must be after start");
  const std::string sp = join(path, "style");
  check(s.style.font_weight >= cfg.weight_min && s.style.font_weight <= cfg.weight_max,
        join(sp, "fontWeight"), "outside [weightMin, weightMax]");
  check(std::abs(s.style.baseline_shift_em) <= cfg.baseline_max_em, join(sp, "baselineShiftEm"),
        "magnitude exceeds baselineMaxEm");
  check(s.style.letter_spacing_em >= 0.0 && s.style.letter_spacing_em <= cfg.spacing_max_em,
        join(sp, "letterSpacingEm"), "outside [0, spacingMaxEm]");
  const std::string rp = join(path, "raw");
  check(std::isfinite(s.raw.magnitude_rms) && s.raw.magnitude_rms >= 0.0,
        join(rp, "magnitudeRms"), "must be >= 0");
  check(!s.raw.pitch_hz || (std::isfinite(*s.raw.pitch_hz) && *s.raw.pitch_hz > 0.0),
        join(rp, "pitchHz"), "must be positive or null");
  check(std::isfinite(s.raw.duration_sec) && s.raw.duration_sec > 0.0, join(rp, "durationSec"),
        "must be positive");
  const std::string np = join(path, "norm");
  check(unit(s.norm.loudness), join(np, "loudness"), "outside [0, 1]");
  check(unit(s.norm.pitch), join(np, "pitch"), "outside [0, 1]");
  check(unit(s.norm.tempo), join(np, "tempo"), "outside [0, 1]");
  check(s.norm.pitch_was_voiced == s.raw.voiced(), join(np, "pitchWasVoiced"),
        "disagrees with raw.pitchHz");
}

// ---- writing helpers --------------------------------------------------------

ojson write_config(const MapConfig& c) {
  ojson j = ojson::object();
  j["weightMin"] = quantize(c.weight_min);
  j["weightMax"] = quantize(c.weight_max);
  j["baselineMaxEm"] = quantize(c.baseline_max_em);
  j["spacingMaxEm"] = quantize(c.spacing_max_em);
  j["spacingPivot"] = quantize(c.spacing_pivot);
  return j;
}

ojson write_syllable(const CaptionSyllable& s) {
  ojson j = ojson::object();
  j["text"] = s.text;
  j["start"] = quantize(s.start);
  j["end"] = quantize(s.end);
  ojson style = ojson::object();
  style["fontWeight"] = quantize(s.style.font_weight);
  style["baselineShiftEm"] = quantize(s.style.baseline_shift_em);
  style["letterSpacingEm"] = quantize(s.style.letter_spacing_em);
  j["style"] = std::move(style);
  ojson raw = ojson::object();
  raw["magnitudeRms"] = quantize(s.raw.magnitude_rms);
  raw["pitchHz"] = s.raw.pitch_hz ? ojson(quantize(*s.raw.pitch_hz)) : ojson(nullptr);
  raw["durationSec"] = quantize(s.raw.duration_sec);
  j["raw"] = std::move(raw);
  ojson norm = ojson::object();
  norm["loudness"] = quantize(s.norm.loudness);
  norm["pitch"] = quantize(s.norm.pitch);
  norm["tempo"] = quantize(s.norm.tempo);
  norm["pitchWasVoiced"] = s.norm.pitch_was_voiced;
  j["norm"] = std::move(norm);
  return j;
}

std::string dump(const ojson& j) {
  try {
    return j.dump(2) + "\n";
  } catch (const ojson::type_error& e) {
    throw Error(ErrorKind::ValidationError, std::string("text is not valid UTF-8: ") + e.what());
  }
}

// ---- markup helpers ---------------------------------------------------------

void append_escaped(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
}

// Byte offset of the last UTF-8 code point.
std::size_t last_glyph_offset(std::string_view s) {
  std::size_t i = s.size() - 1;
  while (i > 0 && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) --i;
  return i;
}

void append_syllable_span(std::string& out, const CaptionSyllable& s, bool word_final) {
  out += "<span class=\"s\" style=\"font-variation-settings: 'wght' ";
  out += format_number(s.style.font_weight);
  out += "; top: ";
  out += format_number(-s.style.baseline_shift_em);
  out += "em; letter-spacing: ";
  out += format_number(s.style.letter_spacing_em);
  out += "em\">";
  if (word_final) {
    const std::size_t cut = last_glyph_offset(s.text);
    append_escaped(out, std::string_view(s.text).substr(0, cut));
    out += "<span class=\"wf\">";
    append_escaped(out, std::string_view(s.text).substr(cut));
    out += "</span>";
  } else {
    append_escaped(out, s.text);
  }
  out += "</span>";
}

}  // namespace

double quantize(double value) {
  if (!std::isfinite(value)) return value;
  return std::round(value * 1e6) / 1e6 + 0.0;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", quantize(value));
  std::string s(buf);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

ModulatedCaptionDoc build_doc(const TimedTranscript& transcript,
                              std::span<const std::vector<ProsodyVector>> raw,
                              std::span<const std::vector<NormalizedProsody>> norm,
                              std::span<const std::vector<TypoStyle>> styles,
                              const MapConfig& config, std::string font_family) {
  const std::size_t n = transcript.utterances.size();
  if (raw.size() != n || norm.size() != n || styles.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "stage outputs do not cover every utterance");
  }
  ModulatedCaptionDoc doc;
  doc.font_family = std::move(font_family);
  doc.config = {quantize(config.weight_min), quantize(config.weight_max),
                quantize(config.baseline_max_em), quantize(config.spacing_max_em),
                quantize(config.spacing_pivot)};
  for (std::size_t u = 0; u < n; ++u) {
    const Utterance& utt = transcript.utterances[u];
    const std::size_t count = utt.syllable_count();
    if (raw[u].size() != count || norm[u].size() != count || styles[u].size() != count) {
      throw Error(ErrorKind::LengthMismatch, "stage outputs disagree with the syllable count",
                  at("", "utterances", u));
    }
    CaptionUtterance cu;
    std::size_t k = 0;
    for (const Word& word : utt.words) {
      CaptionWord cw{word.text, {}};
      for (const Syllable& syl : word.syllables) {
        CaptionSyllable cs;
        cs.text = syl.text;
        cs.start = quantize(syl.span.start_sec);
        cs.end = quantize(syl.span.end_sec);
        cs.style = {quantize(styles[u][k].font_weight), quantize(styles[u][k].baseline_shift_em),
                    quantize(styles[u][k].letter_spacing_em)};
        cs.raw.magnitude_rms = quantize(raw[u][k].magnitude_rms);
        if (raw[u][k].pitch_hz) cs.raw.pitch_hz = quantize(*raw[u][k].pitch_hz);
        cs.raw.duration_sec = quantize(raw[u][k].duration_sec);
        cs.norm = {quantize(norm[u][k].loudness), quantize(norm[u][k].pitch),
                   quantize(norm[u][k].tempo), norm[u][k].pitch_was_voiced};
        cw.syllables.push_back(std::move(cs));
        ++k;
      }
      cu.words.push_back(std::move(cw));
    }
    doc.utterances.push_back(std::move(cu));
  }
  validate(doc);
  return doc;
}

void validate(const ModulatedCaptionDoc& doc) {
  check(doc.version == kDocVersion, "version",
        "unsupported version '" + doc.version + "' (expected " + std::string(kDocVersion) + ")");
  check(!doc.font_family.empty() && css_safe(doc.font_family), "fontFamily",
        "must be a non-empty family name without quotes, backslashes or markup characters");
  try {
    doc.config.validate();
  } catch (const Error& e) {
    fail(ErrorKind::ValidationError, "config", e.detail());
  }
  for (std::size_t u = 0; u < doc.utterances.size(); ++u) {
    const std::string up = at("", "utterances", u);
    const auto& words = doc.utterances[u].words;
    check(!words.empty(), join(up, "words"), "utterance has no words");
    for (std::size_t w = 0; w < words.size(); ++w) {
      const std::string wp = at(up, "words", w);
      const CaptionWord& word = words[w];
      check(!word.text.empty(), join(wp, "text"), "word text is empty");
      check(!word.syllables.empty(), join(wp, "syllables"), "word has no syllables");
      std::string joined;
      for (std::size_t s = 0; s < word.syllables.size(); ++s) {
        const std::string sp = at(wp, "syllables", s);
        validate_syllable(word.syllables[s], doc.config, sp);
        if (s > 0) {
          const CaptionSyllable& prev = word.syllables[s - 1];
          check(word.syllables[s].start > prev.start &&
                    word.syllables[s].start >= prev.end - kTimeTolerance,
                join(sp, "start"), "syllable timing must increase within a word");
        }
        joined += word.syllables[s].text;
      }
      check(joined == word.text, join(wp, "text"), "syllable texts do not concatenate to the word");
      check(word.text.find_first_of(" \t\r\n") == std::string::npos, join(wp, "text"),
            "word text contains whitespace");
    }
  }
}

std::string serialize_doc(const ModulatedCaptionDoc& doc) {
  ojson j = ojson::object();
  j["version"] = doc.version;
  j["fontFamily"] = doc.font_family;
  j["config"] = write_config(doc.config);
  ojson utterances = ojson::array();
  for (const auto& utt : doc.utterances) {
    ojson words = ojson::array();
    for (const auto& word : utt.words) {
      ojson syllables = ojson::array();
      for (const auto& s : word.syllables) syllables.push_back(write_syllable(s));
      ojson jw = ojson::object();
      jw["text"] = word.text;
      jw["syllables"] = std::move(syllables);
      words.push_back(std::move(jw));
    }
    ojson ju = ojson::object();
    ju["words"] = std::move(words);
    utterances.push_back(std::move(ju));
  }
  j["utterances"] = std::move(utterances);
  return dump(j);
}

ModulatedCaptionDoc parse_doc(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  ModulatedCaptionDoc doc;
  doc.version = text(j, "", "version");
  doc.font_family = text(j, "", "fontFamily");
  const json& cfg = field(j, "", "config");
  doc.config = {number(cfg, "config", "weightMin"), number(cfg, "config", "weightMax"),
                number(cfg, "config", "baselineMaxEm"), number(cfg, "config", "spacingMaxEm"),
                number(cfg, "config", "spacingPivot")};
  const json& utterances = array(j, "", "utterances");
  for (std::size_t u = 0; u < utterances.size(); ++u) {
    const std::string up = at("", "utterances", u);
    CaptionUtterance cu;
    const json& words = array(utterances[u], up, "words");
    for (std::size_t w = 0; w < words.size(); ++w) {
      const std::string wp = at(up, "words", w);
      CaptionWord cw;
      cw.text = text(words[w], wp, "text");
      const json& syllables = array(words[w], wp, "syllables");
      for (std::size_t s = 0; s < syllables.size(); ++s) {
        cw.syllables.push_back(read_syllable(syllables[s], at(wp, "syllables", s)));
      }
      cu.words.push_back(std::move(cw));
    }
    doc.utterances.push_back(std::move(cu));
  }
  validate(doc);
  return doc;
}

ModulatedCaptionDoc load_doc(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_doc(buf.str());
  } catch (const Error& e) {
    throw e.with_prefix(path.string(), ":");
  }
}

std::string emit_static_markup(const ModulatedCaptionDoc& doc) {
  validate(doc);
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>Speech-modulated captions</title>\n<style>\n";
  out += "@font-face { font-family: \"" + doc.font_family + "\"; src: local(\"" +
         doc.font_family + "\"); font-weight: " + format_number(doc.config.weight_min) + " " +
         format_number(doc.config.weight_max) + "; }\n";
  out += ".smt { font-family: \"" + doc.font_family + "\", sans-serif; line-height: 2; }\n";
  out += ".smt .u { margin: 0 0 0.5em 0; }\n";
  out += ".smt .s { position: relative; }\n";
  out += ".smt .wf { letter-spacing: 0; }\n";
  out += "</style>\n</head>\n<body>\n<div class=\"smt\">\n";
  for (const auto& utt : doc.utterances) {
    out += "<p class=\"u\">";
    for (std::size_t w = 0; w < utt.words.size(); ++w) {
      if (w > 0) out += ' ';
      const auto& syllables = utt.words[w].syllables;
      for (std::size_t s = 0; s < syllables.size(); ++s) {
        append_syllable_span(out, syllables[s], s + 1 == syllables.size());
      }
    }
    out += "</p>\n";
  }
  out += "</div>\n</body>\n</html>\n";
  return out;
}

std::string serialize_transcript(const TimedTranscript& transcript) {
  ojson utterances = ojson::array();
  for (const auto& utt : transcript.utterances) {
    ojson words = ojson::array();
    for (const auto& word : utt.words) {
      ojson syllables = ojson::array();
      for (const auto& s : word.syllables) {
        ojson js = ojson::object();
        js["text"] = s.text;
        js["start"] = s.span.start_sec;
        js["end"] = s.span.end_sec;
        if (s.vowel_span) {
          js["vowelStart"] = s.vowel_span->start_sec;
          js["vowelEnd"] = s.vowel_span->end_sec;
        }
        syllables.push_back(std::move(js));
      }
      ojson jw = ojson::object();
      jw["text"] = word.text;
      jw["syllables"] = std::move(syllables);
      words.push_back(std::move(jw));
    }
    ojson ju = ojson::object();
    ju["words"] = std::move(words);
    utterances.push_back(std::move(ju));
  }
  ojson j = ojson::object();
  j["utterances"] = std::move(utterances);
  return dump(j);
}

}  // namespace smt
