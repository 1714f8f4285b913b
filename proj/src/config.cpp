#include "smt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "smt/error.hpp"

namespace smt {

namespace {

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw Error(ErrorKind::ConfigError, message, key);
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Drops a trailing comment, ignoring '#' inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

double parse_number(std::string_view text, const std::string& key) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(value), key,
          "expected a finite number, got '" + std::string(text) + "'");
  return value;
}

std::size_t parse_count(std::string_view text, const std::string& key) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size(), key,
          "expected a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

std::string parse_string(std::string_view text, const std::string& key) {
  require(text.size() >= 2 && text.front() == '"' && text.back() == '"', key,
          "expected a double-quoted string");
  return std::string(text.substr(1, text.size() - 2));
}

void assign(PipelineConfig& cfg, const std::string& table, std::string_view name,
            std::string_view value) {
  const std::string key = table.empty() ? std::string(name) : table + "." + std::string(name);
  if (table.empty() && name == "font_family") {
    cfg.font_family = parse_string(value, key);
  } else if (table == "pitch" && name == "min_hz") {
    cfg.pitch.min_hz = parse_number(value, key);
  } else if (table == "pitch" && name == "max_hz") {
    cfg.pitch.max_hz = parse_number(value, key);
  } else if (table == "pitch" && name == "frame_sec") {
    cfg.pitch.frame_sec = parse_number(value, key);
  } else if (table == "pitch" && name == "hop_sec") {
    cfg.pitch.hop_sec = parse_number(value, key);
  } else if (table == "pitch" && name == "voicing_threshold") {
    cfg.pitch.voicing_threshold = parse_number(value, key);
  } else if (table == "pitch" && name == "octave_cost") {
    cfg.pitch.octave_cost = parse_number(value, key);
  } else if (table == "window" && name == "lookback") {
    cfg.window.look_back = parse_count(value, key);
  } else if (table == "window" && name == "lookahead") {
    cfg.window.look_ahead = parse_count(value, key);
  } else if (table == "map" && name == "weight_min") {
    cfg.map.weight_min = parse_number(value, key);
  } else if (table == "map" && name == "weight_max") {
    cfg.map.weight_max = parse_number(value, key);
  } else if (table == "map" && name == "baseline_max_em") {
    cfg.map.baseline_max_em = parse_number(value, key);
  } else if (table == "map" && name == "spacing_max_em") {
    cfg.map.spacing_max_em = parse_number(value, key);
  } else if (table == "map" && name == "spacing_pivot") {
    cfg.map.spacing_pivot = parse_number(value, key);
  } else {
    throw Error(ErrorKind::ConfigError, "unknown key", key);
  }
}

}  // namespace

void PitchConfig::validate(std::uint32_t sample_rate) const {
  require(std::isfinite(min_hz) && min_hz > 0.0, "pitch.min_hz", "must be positive");
  require(std::isfinite(max_hz) && max_hz > min_hz, "pitch.max_hz", "must exceed pitch.min_hz");
  if (sample_rate > 0) {
    require(max_hz < sample_rate / 2.0, "pitch.max_hz", "must be below the Nyquist frequency");
  }
  require(effective_frame_sec() >= 2.0 / min_hz, "pitch.frame_sec",
          "must cover at least two periods of pitch.min_hz");
  require(std::isfinite(hop_sec) && hop_sec > 0.0, "pitch.hop_sec", "must be positive");
  require(voicing_threshold > 0.0 && voicing_threshold < 1.0, "pitch.voicing_threshold",
          "must lie in (0, 1)");
  require(std::isfinite(octave_cost) && octave_cost >= 0.0, "pitch.octave_cost",
          "must be non-negative");
}

void WindowSpec::validate() const {
  require(look_back + look_ahead >= 1, "window", "lookback + lookahead must be at least 1");
}

void MapConfig::validate() const {
  require(std::isfinite(weight_min) && std::isfinite(weight_max) && weight_min < weight_max,
          "map.weight_min", "must be below map.weight_max");
  require(std::isfinite(baseline_max_em) && baseline_max_em > 0.0, "map.baseline_max_em",
          "must be positive");
  require(std::isfinite(spacing_max_em) && spacing_max_em > 0.0, "map.spacing_max_em",
          "must be positive");
  require(spacing_pivot > 0.0 && spacing_pivot < 1.0, "map.spacing_pivot", "must lie in (0, 1)");
}

void PipelineConfig::validate() const {
  pitch.validate();
  window.validate();
  map.validate();
  require(!font_family.empty(), "font_family", "must not be empty");
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
  std::string table;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      require(line.back() == ']', where, "unterminated table header");
      table = std::string(trim(line.substr(1, line.size() - 2)));
      require(table == "pitch" || table == "window" || table == "map", where,
              "unknown table [" + table + "]");
      continue;
    }
    auto eq = line.find('=');
    require(eq != std::string_view::npos, where, "expected key = value");
    assign(base, table, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open file", path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str(), std::move(base));
  } catch (const Error& e) {
    throw e.with_prefix(path.string(), ":");
  }
}

}  // namespace smt
