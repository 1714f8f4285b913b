#pragma once

#include <string>
#include <vector>

#include "smt/audio.hpp"
#include "smt/config.hpp"
#include "smt/emit.hpp"
#include "smt/prosody.hpp"
#include "smt/transcript.hpp"

namespace smt {

/// Raw features for every utterance, in transcript order. Errors carry the
/// utterance and syllable index in their path.
std::vector<std::vector<ProsodyVector>> extract_features(const AudioBuffer& audio,
                                                         const TimedTranscript& transcript,
                                                         const PitchConfig& cfg = {});

/// JSON table of raw features, one row per syllable, plus the pitch settings
/// used. Canonical like serialize_doc.
std::string features_report(const TimedTranscript& transcript,
                            const std::vector<std::vector<ProsodyVector>>& features,
                            const PitchConfig& cfg, std::uint32_t sample_rate);

/// Audio + transcript to caption document: extract, normalize per utterance,
/// map to typography.
ModulatedCaptionDoc modulate(const AudioBuffer& audio, const TimedTranscript& transcript,
                             const PipelineConfig& cfg = {});

}  // namespace smt
