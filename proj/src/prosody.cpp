#include "smt/prosody.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "smt/error.hpp"

namespace smt {

namespace {

// Frames whose energy after mean removal falls below this are silent.
constexpr double kSilenceEnergy = 1e-12;

struct LagRange {
  std::size_t lo = 0;  // shortest lag searched (highest pitch)
  std::size_t hi = 0;  // longest lag searched (lowest pitch)
};

class Autocorrelator {
 public:
  Autocorrelator(std::size_t frame_len, LagRange lags) : lags_(lags), window_(frame_len) {
    const double n = static_cast<double>(frame_len);
    for (std::size_t i = 0; i < frame_len; ++i) {
      window_[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / n);
    }
    window_acf_ = raw_acf(window_);
  }

  std::size_t frame_len() const { return window_.size(); }
  const LagRange& lags() const { return lags_; }

  /// Normalized autocorrelation r(τ) = (r_a(τ)/r_a(0)) / (r_w(τ)/r_w(0)) for
  /// τ in [lo-1, hi+1]; index 0 of the result is lag lo-1. Empty if silent.
  std::vector<double> normalized(std::vector<double>& frame) const {
    for (std::size_t i = 0; i < frame.size(); ++i) frame[i] *= window_[i];
    std::vector<double> acf = raw_acf(frame);
    const double energy = acf.front();
    if (energy <= kSilenceEnergy) return {};
    std::vector<double> out(acf.size() - 1);
    for (std::size_t k = 1; k < acf.size(); ++k) {
      out[k - 1] = (acf[k] / energy) / (window_acf_[k] / window_acf_.front());
    }
    return out;
  }

 private:
  // Element 0 is lag 0, followed by lags lo-1 .. hi+1.
  std::vector<double> raw_acf(const std::vector<double>& x) const {
    const std::size_t n = x.size();
    std::vector<double> acf;
    acf.reserve(lags_.hi - lags_.lo + 4);
    acf.push_back(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    for (std::size_t lag = lags_.lo - 1; lag <= lags_.hi + 1; ++lag) {
      acf.push_back(std::inner_product(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n - lag),
                                       x.begin() + static_cast<std::ptrdiff_t>(lag), 0.0));
    }
    return acf;
  }

  LagRange lags_;
  std::vector<double> window_;
  std::vector<double> window_acf_;
};

struct Candidate {
  double lag = 0.0;
  double peak = 0.0;
  double strength = -1e300;
};

Candidate best_peak(const std::vector<double>& r, const LagRange& lags, double min_hz,
                    double rate, double octave_cost) {
  Candidate best;
  // r[k] holds lag lo - 1 + k.
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    const double left = r[k - 1], mid = r[k], right = r[k + 1];
    if (!(mid > 0.0 && mid > left && mid >= right)) continue;
    double shift = 0.0;
    double peak = mid;
    const double curvature = left - 2.0 * mid + right;
    if (curvature < 0.0) {
      shift = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
      peak = mid - 0.25 * (left - right) * shift;
    }
    const double lag = static_cast<double>(lags.lo - 1 + k) + shift;
    const double strength = peak - octave_cost * std::log2(min_hz * lag / rate);
    if (strength > best.strength) best = {lag, peak, strength};
  }
  return best;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double rms(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorKind::EmptySegment, "RMS of an empty segment");
  const double sum_sq = std::inner_product(samples.begin(), samples.end(), samples.begin(), 0.0);
  return std::sqrt(sum_sq / static_cast<double>(samples.size()));
}

double rms(const AudioBuffer& segment) { return rms(segment.samples()); }

std::vector<PitchFrame> analyze_pitch_frames(const AudioBuffer& segment, const PitchConfig& cfg) {
  if (segment.empty()) throw Error(ErrorKind::EmptySegment, "pitch of an empty segment");
  cfg.validate(segment.sample_rate());

  const double rate = segment.sample_rate();
  const auto frame_len = static_cast<std::size_t>(std::lround(cfg.effective_frame_sec() * rate));
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(cfg.hop_sec * rate)));
  const LagRange lags{std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(rate / cfg.max_hz))),
                      static_cast<std::size_t>(std::floor(rate / cfg.min_hz))};
  const Autocorrelator acf(frame_len, lags);

  const auto samples = segment.samples();
  const std::size_t n = samples.size();

  // Frame start positions; a short segment becomes one centred, zero-padded
  // frame and the tail of a long one is covered by an end-aligned frame.
  std::vector<std::size_t> starts;
  if (n <= frame_len) {
    starts.push_back(0);
  } else {
    for (std::size_t s = 0; s + frame_len <= n; s += hop) starts.push_back(s);
    if (starts.back() + frame_len < n) starts.push_back(n - frame_len);
  }

  std::vector<PitchFrame> frames;
  frames.reserve(starts.size());
  std::vector<double> frame(frame_len);
  for (std::size_t start : starts) {
    std::fill(frame.begin(), frame.end(), 0.0);
    const std::size_t count = std::min(frame_len, n - start);
    const std::size_t offset = (frame_len - count) / 2;
    const double mean =
        std::accumulate(samples.begin() + static_cast<std::ptrdiff_t>(start),
                        samples.begin() + static_cast<std::ptrdiff_t>(start + count), 0.0) /
        static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) frame[offset + i] = samples[start + i] - mean;

    PitchFrame result{start, 0.0, 0.0, false};
    const std::vector<double> r = acf.normalized(frame);
    if (!r.empty()) {
      const Candidate c = best_peak(r, lags, cfg.min_hz, rate, cfg.octave_cost);
      if (c.lag > 0.0) {
        result.lag = c.lag;
        result.peak = c.peak;
        result.voiced = c.peak >= cfg.voicing_threshold;
      }
    }
    frames.push_back(result);
  }
  return frames;
}

std::optional<double> estimate_pitch(const AudioBuffer& segment, const PitchConfig& cfg) {
  const auto frames = analyze_pitch_frames(segment, cfg);
  std::vector<double> f0s;
  for (const auto& f : frames) {
    if (f.voiced) {
      f0s.push_back(std::clamp(segment.sample_rate() / f.lag, cfg.min_hz, cfg.max_hz));
    }
  }
  if (f0s.empty()) return std::nullopt;
  return median(std::move(f0s));
}

std::vector<ProsodyVector> extract_utterance(const AudioBuffer& buffer, const Utterance& utterance,
                                             const PitchConfig& cfg) {
  cfg.validate(buffer.sample_rate());
  std::vector<ProsodyVector> out;
  const auto syllables = utterance.syllables();
  out.reserve(syllables.size());
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    const Syllable& syl = *syllables[i];
    try {
      const AudioBuffer whole = slice(buffer, syl.span);
      const AudioBuffer nucleus = syl.vowel_span ? slice(buffer, *syl.vowel_span) : whole;
      ProsodyVector pv;
      pv.magnitude_rms = rms(nucleus);
      pv.pitch_hz = estimate_pitch(whole, cfg);
      pv.duration_sec = syl.span.length();
      out.push_back(pv);
    } catch (const Error& e) {
      throw e.with_prefix("syllables[" + std::to_string(i) + "]");
    }
  }
  return out;
}

}  // namespace smt
