"""Speech-modulated typography.

Turns speech audio and a syllable-timed transcript into per-syllable
typographic styles (weight from loudness, baseline shift from pitch,
letter-spacing from duration).
"""

from ._core import (
    AudioBuffer,
    MapConfig,
    PipelineConfig,
    PitchConfig,
    SmtError,
    TimedTranscript,
    WindowSpec,
    canonicalize_doc,
    combine,
    decode_wav,
    encode_wav,
    estimate_pitch,
    extract,
    global_normalize,
    local_normalize,
    map_loudness_to_weight,
    map_pitch_to_baseline,
    map_tempo_to_spacing,
    modulate,
    parse_config,
    parse_transcript,
    read_wav,
    render_static,
    rms,
    slice,
)

__all__ = [
    "AudioBuffer",
    "MapConfig",
    "PipelineConfig",
    "PitchConfig",
    "SmtError",
    "TimedTranscript",
    "WindowSpec",
    "canonicalize_doc",
    "combine",
    "decode_wav",
    "encode_wav",
    "estimate_pitch",
    "extract",
    "global_normalize",
    "local_normalize",
    "map_loudness_to_weight",
    "map_pitch_to_baseline",
    "map_tempo_to_spacing",
    "modulate",
    "parse_config",
    "parse_transcript",
    "read_wav",
    "render_static",
    "rms",
    "slice",
]
