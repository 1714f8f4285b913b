#include "smt/audio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "smt/error.hpp"

namespace smt {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr std::uint32_t kMinSampleRate = 8000;

// Sample-index conversion tolerates representation error in tick-aligned
// times such as 0.29 s at 100 Hz (28.999999999999996 samples).
constexpr double kTickSlack = 1e-7;

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }

  void require(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw Error(ErrorKind::MalformedContainer, std::string("truncated ") + what);
    }
  }

  std::uint16_t u16(const char* what) {
    require(2, what);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }

  std::uint32_t u32(const char* what) {
    require(4, what);
    std::uint32_t v = static_cast<std::uint32_t>(bytes_[pos_]) |
                      (static_cast<std::uint32_t>(bytes_[pos_ + 1]) << 8) |
                      (static_cast<std::uint32_t>(bytes_[pos_ + 2]) << 16) |
                      (static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }

  std::string tag(const char* what) {
    require(4, what);
    std::string t(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return t;
  }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    require(n, what);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  void skip(std::size_t n, const char* what) { take(n, what); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint16_t block_align = 0;
};

FormatChunk parse_format(std::span<const std::uint8_t> body) {
  ByteReader r(body);
  FormatChunk fmt;
  fmt.format = r.u16("fmt chunk");
  fmt.channels = r.u16("fmt chunk");
  fmt.sample_rate = r.u32("fmt chunk");
  r.u32("fmt chunk");  // byte rate
  fmt.block_align = r.u16("fmt chunk");
  fmt.bits_per_sample = r.u16("fmt chunk");
  if (fmt.format == kFormatExtensible) {
    std::uint16_t ext_size = r.u16("fmt extension");
    if (ext_size < 22) {
      throw Error(ErrorKind::MalformedContainer, "WAVE_FORMAT_EXTENSIBLE extension too short");
    }
    r.u16("fmt extension");  // valid bits
    r.u32("fmt extension");  // channel mask
    fmt.format = r.u16("fmt extension");  // leading two bytes of the sub-format GUID
  }
  return fmt;
}

void check_supported(const FormatChunk& fmt) {
  const bool pcm16 = fmt.format == kFormatPcm && fmt.bits_per_sample == 16;
  const bool float32 = fmt.format == kFormatFloat && fmt.bits_per_sample == 32;
  if (!pcm16 && !float32) {
    throw Error(ErrorKind::UnsupportedEncoding,
                "format tag " + std::to_string(fmt.format) + " with " +
                    std::to_string(fmt.bits_per_sample) +
                    " bits per sample (only 16-bit PCM and 32-bit float are supported)");
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    throw Error(ErrorKind::UnsupportedEncoding,
                std::to_string(fmt.channels) + " channels (only mono and stereo are supported)");
  }
  if (fmt.sample_rate < kMinSampleRate) {
    throw Error(ErrorKind::UnsupportedEncoding,
                "sample rate " + std::to_string(fmt.sample_rate) + " Hz is below 8000 Hz");
  }
  if (fmt.block_align != fmt.channels * (fmt.bits_per_sample / 8)) {
    throw Error(ErrorKind::MalformedContainer, "block alignment disagrees with channel layout");
  }
}

double read_sample(const std::uint8_t* p, const FormatChunk& fmt) {
  if (fmt.format == kFormatPcm) {
    auto raw = static_cast<std::int16_t>(static_cast<std::uint16_t>(p[0] | (p[1] << 8)));
    return static_cast<double>(raw) / 32768.0;
  }
  std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                       (static_cast<std::uint32_t>(p[2]) << 16) |
                       (static_cast<std::uint32_t>(p[3]) << 24);
  float value = std::bit_cast<float>(bits);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::MalformedContainer, "non-finite float sample");
  }
  return std::clamp(static_cast<double>(value), -1.0, 1.0);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

std::size_t tick_index(double t, std::uint32_t rate) {
  return static_cast<std::size_t>(std::floor(t * rate + kTickSlack));
}

}  // namespace

bool TimeSpan::valid() const {
  return std::isfinite(start_sec) && std::isfinite(end_sec) && start_sec >= 0.0 &&
         end_sec > start_sec;
}

AudioBuffer::AudioBuffer(std::vector<double> samples, std::uint32_t sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ == 0) throw Error(ErrorKind::ValidationError, "sample rate must be positive");
  for (double s : samples_) {
    if (!(s >= -1.0 && s <= 1.0)) {
      throw Error(ErrorKind::ValidationError, "sample outside [-1, 1]");
    }
  }
}

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.remaining() < 12) throw Error(ErrorKind::MalformedContainer, "shorter than a RIFF header");
  if (r.tag("RIFF header") != "RIFF") throw Error(ErrorKind::MalformedContainer, "missing RIFF tag");
  r.u32("RIFF header");
  if (r.tag("RIFF header") != "WAVE") throw Error(ErrorKind::MalformedContainer, "missing WAVE tag");

  std::optional<FormatChunk> fmt;
  std::optional<std::span<const std::uint8_t>> data;
  while (r.remaining() >= 8 && !data) {
    std::string id = r.tag("chunk header");
    std::uint32_t size = r.u32("chunk header");
    if (id == "fmt ") {
      fmt = parse_format(r.take(size, "fmt chunk"));
      check_supported(*fmt);
    } else if (id == "data") {
      if (!fmt) throw Error(ErrorKind::MalformedContainer, "data chunk precedes fmt chunk");
      data = r.take(size, "data chunk");
    } else {
      r.skip(size, ("'" + id + "' chunk").c_str());
    }
    if (!data && (size & 1u) && r.remaining() > 0) r.skip(1, "chunk padding");
  }
  if (!fmt) throw Error(ErrorKind::MalformedContainer, "missing fmt chunk");
  if (!data) throw Error(ErrorKind::MalformedContainer, "missing data chunk");
  if (data->size() % fmt->block_align != 0) {
    throw Error(ErrorKind::MalformedContainer, "data chunk ends inside a sample frame");
  }

  const std::size_t frames = data->size() / fmt->block_align;
  const std::size_t width = fmt->bits_per_sample / 8;
  std::vector<double> mono(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::uint8_t* frame = data->data() + i * fmt->block_align;
    if (fmt->channels == 1) {
      mono[i] = read_sample(frame, *fmt);
    } else {
      mono[i] = 0.5 * (read_sample(frame, *fmt) + read_sample(frame + width, *fmt));
    }
  }
  return AudioBuffer(std::move(mono), fmt->sample_rate);
}

AudioBuffer read_wav_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open file", path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    throw e.with_prefix(path.string(), ":");
  }
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer, WavEncoding encoding) {
  const std::uint16_t bits = encoding == WavEncoding::Pcm16 ? 16 : 32;
  const std::uint16_t block = bits / 8;
  const auto data_size = static_cast<std::uint32_t>(buffer.size() * block);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, encoding == WavEncoding::Pcm16 ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, buffer.sample_rate());
  put_u32(out, buffer.sample_rate() * block);
  put_u16(out, block);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_size);
  for (double s : buffer.samples()) {
    if (encoding == WavEncoding::Pcm16) {
      double q = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
      put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
    }
  }
  return out;
}

AudioBuffer slice(const AudioBuffer& buffer, const TimeSpan& span) {
  const double rate = buffer.sample_rate();
  const double half_period = 0.5 / rate;
  if (!span.valid() || span.end_sec > buffer.duration_sec() + half_period) {
    throw Error(ErrorKind::SpanOutOfRange,
                "span [" + std::to_string(span.start_sec) + ", " + std::to_string(span.end_sec) +
                    ") outside buffer of " + std::to_string(buffer.duration_sec()) + " s");
  }
  const std::size_t first = std::min(tick_index(span.start_sec, buffer.sample_rate()), buffer.size());
  const std::size_t last = std::min(tick_index(span.end_sec, buffer.sample_rate()), buffer.size());
  auto all = buffer.samples();
  return AudioBuffer(std::vector<double>(all.begin() + first, all.begin() + std::max(first, last)),
                     buffer.sample_rate());
}

}  // namespace smt
