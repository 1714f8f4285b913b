import json
import math
import os
from pathlib import Path

import pytest

import smtype

FIXTURES = Path(os.environ.get("SMT_FIXTURE_DIR", Path(__file__).resolve().parents[1] / "fixtures"))


def fixture(name):
    return str(FIXTURES / name)


def test_rms_and_pitch():
    assert smtype.rms([0.5] * 100) == pytest.approx(0.5)
    rate = 16000
    tone = [0.5 * math.sin(2 * math.pi * 220 * i / rate) for i in range(rate // 5)]
    f0 = smtype.estimate_pitch(smtype.AudioBuffer(tone, rate))
    assert f0 == pytest.approx(220, rel=0.02)
    assert smtype.estimate_pitch(smtype.AudioBuffer([0.0] * 3200, rate)) is None


def test_normalize_and_maps():
    assert smtype.global_normalize([1, 2, 3]) == [0.0, 0.5, 1.0]
    assert smtype.local_normalize([4.0]) == [0.5]
    assert smtype.combine([0.0, 1.0], [1.0, 0.0]) == [0.5, 0.5]
    assert smtype.map_loudness_to_weight(0.5) == 550
    assert smtype.map_pitch_to_baseline(0.5) == 0
    assert smtype.map_tempo_to_spacing(0.25) == 0


def test_errors_carry_kind_and_path():
    with pytest.raises(smtype.SmtError) as info:
        smtype.map_loudness_to_weight(1.5)
    assert info.value.kind == "OutOfRange"
    with pytest.raises(ValueError):
        smtype.parse_transcript('{"utterances": [{"words": []}]}')


def test_wav_round_trip():
    buf = smtype.AudioBuffer([0.0, 0.25, -0.5, 0.75], 16000)
    back = smtype.decode_wav(smtype.encode_wav(buf))
    assert back.samples == [0.0, 0.25, -0.5, 0.75]
    assert back.sample_rate == 16000


def test_modulate_fixture_matches_golden():
    doc = smtype.modulate(fixture("two_syllable.wav"), fixture("two_syllable.align.json"))
    assert doc == Path(fixture("two_syllable.smt.json")).read_text(encoding="utf-8")
    assert smtype.canonicalize_doc(doc) == doc
    html = smtype.render_static(doc)
    assert html == Path(fixture("two_syllable.html")).read_text(encoding="utf-8")


def test_extract_and_config():
    cfg = smtype.parse_config("[map]\nweight_max = 700\n")
    doc = json.loads(smtype.modulate(fixture("stanza.wav"), fixture("stanza.align.json"), cfg))
    assert doc["config"]["weightMax"] == 700
    weights = [s["style"]["fontWeight"] for u in doc["utterances"] for w in u["words"] for s in w["syllables"]]
    assert max(weights) == 700
    table = json.loads(smtype.extract(fixture("stanza.wav"), fixture("stanza.align.json")))
    hush = [s for u in table["utterances"] for s in u["syllables"] if s["text"] == "hush"]
    assert hush and hush[0]["pitchHz"] is None


def test_transcript_text():
    t = smtype.parse_transcript(Path(fixture("stanza.align.json")).read_text(encoding="utf-8"))
    assert len(t.syllable_counts) == 3
    assert "café" in t.plain_text()
