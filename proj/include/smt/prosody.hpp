#pragma once

#include <optional>
#include <span>
#include <vector>

#include "smt/audio.hpp"
#include "smt/config.hpp"
#include "smt/transcript.hpp"

namespace smt {

/// Raw per-syllable measurements. An empty `pitch_hz` means unvoiced.
struct ProsodyVector {
  double magnitude_rms = 0.0;
  std::optional<double> pitch_hz;
  double duration_sec = 0.0;

  bool voiced() const { return pitch_hz.has_value(); }

  friend bool operator==(const ProsodyVector&, const ProsodyVector&) = default;
};

/// Root mean square of the samples. Throws EmptySegment on empty input.
double rms(std::span<const double> samples);
double rms(const AudioBuffer& segment);

/// Per-frame detail of the pitch tracker, exposed for diagnostics and tests.
struct PitchFrame {
  std::size_t start = 0;  // first sample of the frame within the segment
  double peak = 0.0;      // interpolated normalized autocorrelation at the chosen lag
  double lag = 0.0;       // in samples, after parabolic refinement; 0 if no peak
  bool voiced = false;
};

/// Frames the segment and picks the strongest normalized-autocorrelation peak
/// in each frame (see estimate_pitch).
std::vector<PitchFrame> analyze_pitch_frames(const AudioBuffer& segment, const PitchConfig& cfg);

/// Hanning-tapered, mean-removed frames; autocorrelation divided by that of
/// the window; lag search over [1/max_hz, 1/min_hz] with parabolic refinement.
/// Returns the median f0 of frames whose peak reaches the voicing threshold,
/// or nullopt when no frame does. Segments shorter than a frame are analysed
/// as one zero-padded frame.
std::optional<double> estimate_pitch(const AudioBuffer& segment, const PitchConfig& cfg = {});

/// One ProsodyVector per syllable, in order. Magnitude uses the vowel span
/// when present, otherwise the whole syllable.
std::vector<ProsodyVector> extract_utterance(const AudioBuffer& buffer, const Utterance& utterance,
                                             const PitchConfig& cfg = {});

}  // namespace smt
