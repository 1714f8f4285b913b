#include "smt/pipeline.hpp"

#include <json.hpp>

#include "smt/error.hpp"
#include "smt/normalize.hpp"
#include "smt/typo_map.hpp"

namespace smt {

namespace {

std::string utterance_path(std::size_t u) { return "utterances[" + std::to_string(u) + "]"; }

}  // namespace

std::vector<std::vector<ProsodyVector>> extract_features(const AudioBuffer& audio,
                                                         const TimedTranscript& transcript,
                                                         const PitchConfig& cfg) {
  cfg.validate(audio.sample_rate());
  std::vector<std::vector<ProsodyVector>> out;
  out.reserve(transcript.utterances.size());
  for (std::size_t u = 0; u < transcript.utterances.size(); ++u) {
    try {
      out.push_back(extract_utterance(audio, transcript.utterances[u], cfg));
    } catch (const Error& e) {
      throw e.with_prefix(utterance_path(u));
    }
  }
  return out;
}

std::string features_report(const TimedTranscript& transcript,
                            const std::vector<std::vector<ProsodyVector>>& features,
                            const PitchConfig& cfg, std::uint32_t sample_rate) {
  using ojson = nlohmann::ordered_json;
  if (features.size() != transcript.utterances.size()) {
    throw Error(ErrorKind::LengthMismatch, "feature table does not cover every utterance");
  }
  ojson pitch = ojson::object();
  pitch["minHz"] = quantize(cfg.min_hz);
  pitch["maxHz"] = quantize(cfg.max_hz);
  pitch["frameSec"] = quantize(cfg.effective_frame_sec());
  pitch["hopSec"] = quantize(cfg.hop_sec);
  pitch["voicingThreshold"] = quantize(cfg.voicing_threshold);

  ojson utterances = ojson::array();
  for (std::size_t u = 0; u < features.size(); ++u) {
    const Utterance& utt = transcript.utterances[u];
    if (features[u].size() != utt.syllable_count()) {
      throw Error(ErrorKind::LengthMismatch, "feature rows disagree with the syllable count",
                  utterance_path(u));
    }
    ojson rows = ojson::array();
    std::size_t k = 0;
    for (std::size_t w = 0; w < utt.words.size(); ++w) {
      for (const Syllable& syl : utt.words[w].syllables) {
        const ProsodyVector& pv = features[u][k++];
        ojson row = ojson::object();
        row["word"] = w;
        row["text"] = syl.text;
        row["start"] = quantize(syl.span.start_sec);
        row["end"] = quantize(syl.span.end_sec);
        row["magnitudeRms"] = quantize(pv.magnitude_rms);
        row["pitchHz"] = pv.pitch_hz ? ojson(quantize(*pv.pitch_hz)) : ojson(nullptr);
        row["durationSec"] = quantize(pv.duration_sec);
        rows.push_back(std::move(row));
      }
    }
    ojson ju = ojson::object();
    ju["syllables"] = std::move(rows);
    utterances.push_back(std::move(ju));
  }

  ojson report = ojson::object();
  report["sampleRate"] = sample_rate;
  report["pitch"] = std::move(pitch);
  report["utterances"] = std::move(utterances);
  return report.dump(2) + "\n";
}

ModulatedCaptionDoc modulate(const AudioBuffer& audio, const TimedTranscript& transcript,
                             const PipelineConfig& cfg) {
  cfg.validate();
  const auto raw = extract_features(audio, transcript, cfg.pitch);
  std::vector<std::vector<NormalizedProsody>> norm;
  std::vector<std::vector<TypoStyle>> styles;
  norm.reserve(raw.size());
  styles.reserve(raw.size());
  for (std::size_t u = 0; u < raw.size(); ++u) {
    try {
      norm.push_back(normalize_utterance(raw[u], cfg.window));
      styles.push_back(style_utterance(norm.back(), cfg.map));
    } catch (const Error& e) {
      throw e.with_prefix(utterance_path(u));
    }
  }
  return build_doc(transcript, raw, norm, styles, cfg.map, cfg.font_family);
}

}  // namespace smt
