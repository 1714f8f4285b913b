// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../support/markup.hpp"
#include "../support/oracles.hpp"
#include "smt/emit.hpp"
#include "smt/normalize.hpp"
#include "smt/pipeline.hpp"
#include "smt/prosody.hpp"
#include "smt/typo_map.hpp"

using namespace smt;
using namespace smt::testing;

namespace {

// Tolerances and budgets.
constexpr double kRmsRelTol = 1e-9;
constexpr double kRmsBudgetSec = 5.0;
constexpr double kPitchRelTol = 0.02;
constexpr double kPitchMinFraction = 0.95;
constexpr double kPitchScaleTolHz = 0.1;
constexpr double kPitchBudgetSec = 30.0;
constexpr double kNormBudgetSec = 5.0;
constexpr int kMappingTriplets = 10000;

const std::vector<std::string> kFixtures{"two_syllable", "stanza"};

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome rms_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(1 + rng() % 4000);
    const double gain = std::uniform_real_distribution<double>(1e-4, 1.0)(rng);
    for (double& v : x) v = gain * amp(rng);
    const double expected = naive_rms(x);
    const double got = rms(x);
    const double rel = expected == 0.0 ? std::abs(got) : std::abs(got - expected) / expected;
    worst = std::max(worst, rel);
  }
  const double elapsed = seconds_since(t0);
  o.require(worst <= kRmsRelTol, "relative error " + std::to_string(worst));
  o.require(elapsed < kRmsBudgetSec, "took " + std::to_string(elapsed) + " s");
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "1000 segments, worst rel err %.2e, %.2f s", worst, elapsed);
    o.detail = buf;
  }
  return o;
}

Outcome pitch_accuracy() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint32_t rate = 16000;
  std::mt19937_64 rng(60330);
  std::uniform_real_distribution<double> f0_dist(60.0, 330.0);
  int within = 0;
  double worst_shift = 0.0;
  const int cases = 200;
  for (int i = 0; i < cases; ++i) {
    const double f0 = f0_dist(rng);
    const auto x = harmonic(f0, 0.3, rate, rng);
    const auto quiet = estimate_pitch(scaled(x, rate, 0.09));
    const auto loud = estimate_pitch(scaled(x, rate, 0.9));
    if (quiet && std::abs(*quiet - f0) <= kPitchRelTol * f0) ++within;
    if (quiet.has_value() != loud.has_value()) {
      o.require(false, "voicing changed under 10x scaling at f0 " + std::to_string(f0));
    } else if (quiet) {
      worst_shift = std::max(worst_shift, std::abs(*quiet - *loud));
    }
  }
  int noise_voiced = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    if (estimate_pitch(scaled(white_noise(0.3, rate, 9000 + seed), rate))) ++noise_voiced;
  }
  const double elapsed = seconds_since(t0);
  const double fraction = static_cast<double>(within) / cases;
  o.require(fraction >= kPitchMinFraction, "only " + std::to_string(within) + "/200 within 2%");
  o.require(worst_shift < kPitchScaleTolHz, "10x scaling moved estimate by " + std::to_string(worst_shift) + " Hz");
  o.require(noise_voiced == 0, std::to_string(noise_voiced) + "/20 noise signals reported voiced");
  o.require(elapsed < kPitchBudgetSec, "took " + std::to_string(elapsed) + " s");
  if (o.ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d/200 within 2%%, max 10x shift %.2e Hz, 0/20 noise voiced, %.2f s",
                  within, worst_shift, elapsed);
    o.detail = buf;
  }
  return o;
}

Outcome normalization_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(500);
  std::uniform_real_distribution<double> real(-50.0, 50.0);
  std::uniform_int_distribution<int> integer(-1000, 1000), gain(1, 64), offset(-5000, 5000);
  for (int trial = 0; trial < 500 && o.ok; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    std::vector<double> x(n);
    for (double& v : x) v = real(rng);

    o.require(local_normalize(x) == brute_local(x), "local window mismatch, trial " + std::to_string(trial));

    const auto g = global_normalize(x);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*lo != *hi) {
      o.require(g[lo - x.begin()] == 0.0 && g[hi - x.begin()] == 1.0,
                "global endpoints not exactly 0 and 1, trial " + std::to_string(trial));
    }

    // Affine maps that are exact in binary floating point: integer data with
    // integer gain and offset, and real data under power-of-two gains.
    std::vector<double> k(n);
    for (double& v : k) v = integer(rng);
    const double c = gain(rng), d = offset(rng);
    std::vector<double> affine(n);
    for (std::size_t i = 0; i < n; ++i) affine[i] = c * k[i] + d;
    o.require(normalize_series(affine) == normalize_series(k),
              "affine invariance broken, trial " + std::to_string(trial));

    std::vector<double> dyadic(x);
    const double p = std::ldexp(1.0, static_cast<int>(rng() % 21) - 10);
    for (double& v : dyadic) v *= p;
    o.require(normalize_series(dyadic) == normalize_series(x),
              "power-of-two scaling broken, trial " + std::to_string(trial));
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < kNormBudgetSec, "took " + std::to_string(elapsed) + " s");
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "500 series, %.2f s", elapsed);
    o.detail = buf;
  }
  return o;
}

Outcome mapping_invariants() {
  Outcome o;
  const MapConfig cfg;
  const double mid = (cfg.weight_min + cfg.weight_max) / 2.0;
  const TypoStyle neutral = style_syllable({0.5, 0.5, 0.5, true}, cfg);
  o.require(neutral == TypoStyle{mid, 0.0, 0.0}, "neutral triplet does not map to the resting style");

  std::mt19937_64 rng(10000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < kMappingTriplets && o.ok; ++i) {
    const NormalizedProsody a{u(rng), u(rng), u(rng), true};
    const NormalizedProsody other{u(rng), u(rng), u(rng), true};
    const TypoStyle s = style_syllable(a, cfg);

    o.require(s.letter_spacing_em >= 0.0, "negative letter-spacing");
    o.require(within_limits(s, cfg), "style outside configured limits");

    // Raising one axis never lowers its own output.
    const double up = std::uniform_real_distribution<double>(0.0, 1.0 - 1e-12)(rng);
    auto raise = [&](double v) { return v + (1.0 - v) * up; };
    o.require(map_loudness_to_weight(raise(a.loudness), cfg) >= s.font_weight, "weight not monotone");
    o.require(map_pitch_to_baseline(raise(a.pitch), cfg) >= s.baseline_shift_em, "baseline not monotone");
    o.require(map_tempo_to_spacing(raise(a.tempo), cfg) >= s.letter_spacing_em, "spacing not monotone");
    if (a.loudness < other.loudness) {
      o.require(s.font_weight < map_loudness_to_weight(other.loudness, cfg), "weight not strictly increasing");
    }

    // Each output depends on its own axis only.
    const TypoStyle mixed_l = style_syllable({a.loudness, other.pitch, other.tempo, true}, cfg);
    const TypoStyle mixed_p = style_syllable({other.loudness, a.pitch, other.tempo, true}, cfg);
    const TypoStyle mixed_t = style_syllable({other.loudness, other.pitch, a.tempo, true}, cfg);
    o.require(mixed_l.font_weight == s.font_weight, "weight depends on another axis");
    o.require(mixed_p.baseline_shift_em == s.baseline_shift_em, "baseline depends on another axis");
    o.require(mixed_t.letter_spacing_em == s.letter_spacing_em, "spacing depends on another axis");
  }
  if (o.ok) o.detail = std::to_string(kMappingTriplets) + " triplets";
  return o;
}

Outcome determinism_and_round_trip() {
  Outcome o;
  for (const auto& name : kFixtures) {
    const auto audio = read_wav_file(fixture(name + ".wav"));
    const auto transcript = load_transcript(fixture(name + ".align.json"));
    const std::string first = serialize_doc(modulate(audio, transcript));
    const std::string second = serialize_doc(modulate(read_wav_file(fixture(name + ".wav")),
                                                      load_transcript(fixture(name + ".align.json"))));
    o.require(first == second, name + ": modulate output differs between runs");

    const auto doc = parse_doc(first);
    o.require(serialize_doc(doc) == first, name + ": serialize(parse(doc)) changed bytes");
    o.require(parse_doc(serialize_doc(doc)) == doc, name + ": parse(serialize(doc)) changed document");

    const auto committed = load_doc(fixture(name + ".smt.json"));
    o.require(serialize_doc(committed) == read_file(fixture(name + ".smt.json")),
              name + ": committed document is not canonical");
    o.require(emit_static_markup(committed) == read_file(fixture(name + ".html")),
              name + ": markup differs from the golden file");
  }
  if (o.ok) o.detail = std::to_string(kFixtures.size()) + " fixtures";
  return o;
}

Outcome text_preservation() {
  Outcome o;
  for (const auto& name : kFixtures) {
    const auto transcript = load_transcript(fixture(name + ".align.json"));
    const auto doc = modulate(read_wav_file(fixture(name + ".wav")), transcript);
    const std::string text = markup_text(emit_static_markup(doc));
    o.require(text == plain_text(transcript), name + ": reconstructed text '" + text + "'");
    const std::string golden = markup_text(read_file(fixture(name + ".html")));
    o.require(golden == plain_text(transcript), name + ": golden markup text differs");
  }
  if (o.ok) o.detail = std::to_string(kFixtures.size()) + " fixtures";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rms-oracle-equivalence", rms_equivalence},
      {"pitch-accuracy", pitch_accuracy},
      {"normalization-brute-force-equivalence", normalization_equivalence},
      {"mapping-invariants", mapping_invariants},
      {"end-to-end-determinism-and-round-trip", determinism_and_round_trip},
      {"text-preservation", text_preservation},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failures += o.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
