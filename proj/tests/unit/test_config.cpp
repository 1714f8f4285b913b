#include <doctest.h>

#include "smt/config.hpp"
#include "smt/error.hpp"

using namespace smt;

namespace {

Error config_error(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected parse_config to throw");
  return Error(ErrorKind::IoError, "");
}

}  // namespace

TEST_CASE("empty config keeps every default") {
  CHECK(parse_config("") == PipelineConfig{});
  CHECK(parse_config("# nothing here\n\n") == PipelineConfig{});
  PipelineConfig d;
  CHECK(d.pitch.effective_frame_sec() == doctest::Approx(0.06));
  CHECK(d.window.look_back == 10);
  CHECK(d.window.look_ahead == 5);
  CHECK(d.map.weight_min == 300.0);
  CHECK(d.map.weight_max == 800.0);
}

TEST_CASE("all keys parse") {
  auto cfg = parse_config(R"(
font_family = "Inter"   # trailing comment

[pitch]
min_hz = 75
max_hz = 500
frame_sec = 0.05
hop_sec = 0.005
voicing_threshold = 0.5
octave_cost = 0.02

[window]
lookback = 4
lookahead = 2

[map]
weight_min = 200
weight_max = 900
baseline_max_em = 0.3
spacing_max_em = 0.5
spacing_pivot = 0.6
)");
  CHECK(cfg.font_family == "Inter");
  CHECK(cfg.pitch.min_hz == 75);
  CHECK(cfg.pitch.max_hz == 500);
  CHECK(cfg.pitch.effective_frame_sec() == 0.05);
  CHECK(cfg.pitch.hop_sec == 0.005);
  CHECK(cfg.pitch.voicing_threshold == 0.5);
  CHECK(cfg.pitch.octave_cost == 0.02);
  CHECK(cfg.window == WindowSpec{4, 2});
  CHECK(cfg.map.weight_min == 200);
  CHECK(cfg.map.weight_max == 900);
  CHECK(cfg.map.baseline_max_em == 0.3);
  CHECK(cfg.map.spacing_max_em == 0.5);
  CHECK(cfg.map.spacing_pivot == 0.6);
}

TEST_CASE("partial config overrides only what it names") {
  PipelineConfig base;
  base.map.weight_max = 700;
  auto cfg = parse_config("[pitch]\nmax_hz = 400\n", base);
  CHECK(cfg.pitch.max_hz == 400);
  CHECK(cfg.map.weight_max == 700);
}

TEST_CASE("config errors name the offending key") {
  CHECK(config_error("[pitch]\nmin_hz = fast\n").path() == "pitch.min_hz");
  CHECK(config_error("[pitch]\ncolour = 1\n").path() == "pitch.colour");
  CHECK(config_error("[fonts]\n").path() == "line 1");
  CHECK(config_error("weight_min = 3\n").path() == "weight_min");
  CHECK(config_error("[map]\nweight_min = 900\n").path() == "map.weight_min");
  CHECK(config_error("[pitch]\nmax_hz = 40\n").path() == "pitch.max_hz");
  CHECK(config_error("[window]\nlookback = -1\n").path() == "window.lookback");
  CHECK(config_error("[window]\nlookback = 0\nlookahead = 0\n").path() == "window");
  CHECK(config_error("[map]\nspacing_pivot = 1\n").path() == "map.spacing_pivot");
  CHECK(config_error("font_family = Inter\n").path() == "font_family");
  CHECK(config_error("[pitch\n").kind() == ErrorKind::ConfigError);
}

TEST_CASE("pitch config checks Nyquist only when a rate is given") {
  PitchConfig cfg;
  cfg.max_hz = 5000;
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS_AS(cfg.validate(8000), Error);
  CHECK_NOTHROW(cfg.validate(16000));
}

TEST_CASE("load_config prefixes the file path") {
  try {
    load_config("/nonexistent/smt.toml");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
    CHECK(e.path() == "/nonexistent/smt.toml");
  }
}
