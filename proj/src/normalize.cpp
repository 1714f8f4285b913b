#include "smt/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "smt/error.hpp"

namespace smt {

namespace {

double min_max_map(double x, double lo, double hi) {
  if (hi == lo) return kNeutral;
  return (x - lo) / (hi - lo);
}

void check_input(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "cannot normalize an empty series");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::OutOfRange, "series contains a non-finite value");
  }
}

// Monotonic deque over a window whose both ends only move forward.
class SlidingExtremum {
 public:
  explicit SlidingExtremum(bool keep_max) : keep_max_(keep_max) {}

  void push(std::size_t index, double value) {
    while (!idx_.empty() && dominated(val_.back(), value)) {
      idx_.pop_back();
      val_.pop_back();
    }
    idx_.push_back(index);
    val_.push_back(value);
  }

  void evict_before(std::size_t first) {
    while (!idx_.empty() && idx_.front() < first) {
      idx_.pop_front();
      val_.pop_front();
    }
  }

  double value() const { return val_.front(); }

 private:
  bool dominated(double old_value, double incoming) const {
    return keep_max_ ? old_value <= incoming : old_value >= incoming;
  }

  bool keep_max_;
  std::deque<std::size_t> idx_;
  std::deque<double> val_;
};

}  // namespace

std::vector<double> global_normalize(std::span<const double> values) {
  check_input(values);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [lo = *lo, hi = *hi](double x) { return min_max_map(x, lo, hi); });
  return out;
}

std::vector<double> local_normalize(std::span<const double> values, const WindowSpec& window) {
  check_input(values);
  window.validate();
  const std::size_t n = values.size();
  SlidingExtremum lo(false), hi(true);
  std::vector<double> out(n);
  std::size_t next = 0;  // first index not yet pushed
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t last = std::min(n - 1, i + window.look_ahead);
    const std::size_t first = i > window.look_back ? i - window.look_back : 0;
    for (; next <= last; ++next) {
      lo.push(next, values[next]);
      hi.push(next, values[next]);
    }
    lo.evict_before(first);
    hi.evict_before(first);
    out[i] = min_max_map(values[i], lo.value(), hi.value());
  }
  return out;
}

std::vector<double> combine(std::span<const double> globals, std::span<const double> locals) {
  if (globals.size() != locals.size()) {
    throw Error(ErrorKind::LengthMismatch, "global and local series differ in length (" +
                                               std::to_string(globals.size()) + " vs " +
                                               std::to_string(locals.size()) + ")");
  }
  std::vector<double> out(globals.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (globals[i] + locals[i]) / 2.0;
  return out;
}

std::vector<double> normalize_series(std::span<const double> values, const WindowSpec& window) {
  return combine(global_normalize(values), local_normalize(values, window));
}

std::vector<NormalizedProsody> normalize_utterance(std::span<const ProsodyVector> features,
                                                   const WindowSpec& window) {
  if (features.empty()) throw Error(ErrorKind::EmptyInput, "utterance has no syllables");

  std::vector<double> magnitude, duration, voiced_pitch;
  for (const auto& f : features) {
    magnitude.push_back(f.magnitude_rms);
    duration.push_back(f.duration_sec);
    if (f.pitch_hz) voiced_pitch.push_back(*f.pitch_hz);
  }
  const auto loudness = normalize_series(magnitude, window);
  const auto tempo = normalize_series(duration, window);
  const auto pitch = voiced_pitch.empty() ? std::vector<double>{}
                                          : normalize_series(voiced_pitch, window);

  std::vector<NormalizedProsody> out(features.size());
  std::size_t voiced_index = 0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    out[i].loudness = loudness[i];
    out[i].tempo = tempo[i];
    out[i].pitch_was_voiced = features[i].voiced();
    out[i].pitch = features[i].voiced() ? pitch[voiced_index++] : kNeutral;
  }
  return out;
}

}  // namespace smt
