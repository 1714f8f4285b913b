#!/usr/bin/env python3
"""Synthesize the fixture corpus under tests/fixtures/.

Each fixture is a .wav plus a matching .align.json. Syllables are built from
a noisy consonant onset followed by a harmonic vowel whose f0, level and
length are chosen per syllable, so the pipeline sees real contrasts in all
three features. Output is deterministic for a given numpy version.
"""

import argparse
import json
import pathlib
import wave

import numpy as np

# Syllable tuples: (text, duration s, f0 Hz or None for unvoiced, vowel level,
# whether the alignment carries a vowel span).


def synth(utterances, rate, seed, gap=0.12, lead=0.05):
    rng = np.random.default_rng(seed)
    t_cursor = lead
    pieces = [np.zeros(int(round(lead * rate)))]
    align = {"utterances": []}
    for u, words in enumerate(utterances):
        if u > 0:
            pieces.append(np.zeros(int(round(gap * 2 * rate))))
            t_cursor += round(gap * 2 * rate) / rate
        out_words = []
        for w, (word, syllables) in enumerate(words):
            if w > 0:
                pieces.append(np.zeros(int(round(gap * rate))))
                t_cursor += round(gap * rate) / rate
            out_syl = []
            for text, dur, f0, level, vowel in syllables:
                n = int(round(dur * rate))
                onset = n // 4
                seg = np.zeros(n)
                seg[:onset] = 0.04 * rng.standard_normal(onset)
                tt = np.arange(n - onset) / rate
                if f0 is None:
                    body = level * rng.standard_normal(n - onset) * 0.5
                else:
                    body = np.zeros(n - onset)
                    for h, amp in enumerate([1.0, 0.5, 0.3, 0.15], start=1):
                        body += amp * np.sin(2 * np.pi * h * f0 * tt + rng.uniform(0, 2 * np.pi))
                    body *= level / 1.95
                ramp = min(len(body) // 4, int(0.01 * rate))
                env = np.ones(len(body))
                env[:ramp] = np.linspace(0, 1, ramp)
                env[len(env) - ramp:] = np.linspace(1, 0, ramp)
                seg[onset:] = body * env
                pieces.append(seg)
                start = t_cursor
                end = t_cursor + n / rate
                entry = {"text": text, "start": round(start, 6), "end": round(end, 6)}
                if vowel:
                    entry["vowelStart"] = round(start + onset / rate, 6)
                    entry["vowelEnd"] = round(end, 6)
                out_syl.append(entry)
                t_cursor = end
            out_words.append({"text": word, "syllables": out_syl})
        align["utterances"].append({"words": out_words})
    pieces.append(np.zeros(int(round(lead * rate))))
    audio = np.clip(np.concatenate(pieces), -1.0, 1.0)
    return audio, align


def write_wav(path, audio, rate, channels):
    pcm = np.clip(np.round(audio * 32768.0), -32768, 32767).astype("<i2")
    if channels == 2:
        pcm = np.repeat(pcm[:, None], 2, axis=1).reshape(-1)
    with wave.open(str(path), "wb") as f:
        f.setnchannels(channels)
        f.setsampwidth(2)
        f.setframerate(rate)
        f.writeframes(pcm.tobytes())


FIXTURES = {
    # One word, two syllables: the smallest end-to-end case.
    "two_syllable": dict(
        rate=16000, channels=1, seed=7,
        utterances=[[("hello", [("hel", 0.20, 140.0, 0.30, True),
                                ("lo", 0.32, 180.0, 0.60, True)])]],
    ),
    # Three lines with loud/soft, high/low, short/long syllables, an
    # unvoiced syllable, a syllable without a vowel span, and non-ASCII text.
    "stanza": dict(
        rate=22050, channels=2, seed=11,
        utterances=[
            [("whispers", [("whis", 0.18, 120.0, 0.15, True), ("pers", 0.22, 110.0, 0.12, True)]),
             ("and", [("and", 0.14, 115.0, 0.20, True)]),
             ("yelps", [("yelps", 0.30, 240.0, 0.85, True)])],
            [("hush", [("hush", 0.25, None, 0.10, False)]),
             ("now", [("now", 0.20, 130.0, 0.35, True)]),
             ("café", [("ca", 0.16, 150.0, 0.40, True), ("fé", 0.40, 200.0, 0.70, True)])],
            [("a", [("a", 0.10, 100.0, 0.25, True)]),
             ("long", [("long", 0.45, 90.0, 0.45, True)]),
             ("bawl", [("bawl", 0.38, 160.0, 0.95, True)]),
             ("ending", [("en", 0.15, 140.0, 0.30, True), ("ding", 0.28, 105.0, 0.22, False)])],
        ],
    ),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent /
                                         "tests" / "fixtures"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, params in FIXTURES.items():
        audio, align = synth(params["utterances"], params["rate"], params["seed"])
        write_wav(out / f"{name}.wav", audio, params["rate"], params["channels"])
        (out / f"{name}.align.json").write_text(json.dumps(align, indent=2, ensure_ascii=False) + "\n",
                                                encoding="utf-8")
        print(f"wrote {name}: {len(audio) / params['rate']:.3f} s")


if __name__ == "__main__":
    main()
