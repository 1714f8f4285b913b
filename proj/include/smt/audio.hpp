#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace smt {

/// Half-open time interval in seconds.
struct TimeSpan {
  double start_sec = 0.0;
  double end_sec = 0.0;

  double length() const { return end_sec - start_sec; }
  /// start >= 0, end > start, both finite.
  bool valid() const;
  bool contains(const TimeSpan& other) const {
    return other.start_sec >= start_sec && other.end_sec <= end_sec;
  }

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

/// Mono samples in [-1, 1] at a fixed integer rate. Immutable once built.
class AudioBuffer {
 public:
  AudioBuffer() = default;
  /// Throws ValidationError if the rate is zero or any sample is outside
  /// [-1, 1] or non-finite.
  AudioBuffer(std::vector<double> samples, std::uint32_t sample_rate);

  std::span<const double> samples() const { return samples_; }
  std::uint32_t sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_sec() const {
    return sample_rate_ == 0 ? 0.0 : static_cast<double>(samples_.size()) / sample_rate_;
  }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;

 private:
  std::vector<double> samples_;
  std::uint32_t sample_rate_ = 0;
};

enum class WavEncoding { Pcm16, Float32 };

/// Decodes a RIFF/WAVE byte stream (16-bit PCM or 32-bit float, mono or
/// stereo, rate >= 8000 Hz). Stereo is mixed down by per-frame mean.
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

AudioBuffer read_wav_file(const std::filesystem::path& path);

/// Encodes a mono buffer as a canonical 44-byte-header WAVE file. PCM16
/// quantizes by round(s * 32768), saturating at 32767.
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer,
                                     WavEncoding encoding = WavEncoding::Pcm16);

/// Samples in [floor(start * rate), floor(end * rate)). The end bound may
/// exceed the buffer duration by at most half a sample period.
AudioBuffer slice(const AudioBuffer& buffer, const TimeSpan& span);

}  // namespace smt
