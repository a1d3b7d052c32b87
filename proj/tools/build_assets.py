#!/usr/bin/env python3
# Copyright 2026 The lir Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the pronunciation assets under data/.

Inputs are the upstream packages of `cmudict` (BSD-style), `pypinyin` (MIT)
and `jieba` (MIT):

    pip download --no-deps cmudict==1.1.3 pypinyin==0.55.0 jieba==0.42.1
    python3 tools/build_assets.py --cmudict-wheel cmudict-*.whl \
        --pypinyin-wheel pypinyin-*.whl --jieba-sdist jieba-*.tar.gz --out data

Outputs (UTF-8, `surface<TAB>reading ...`, `#` comments):
    en_lexicon.txt       word -> ARPAbet phonemes, stress removed, first
                         pronunciation only
    zh_pinyin.txt        character -> numbered-tone pinyin readings, in
                         upstream order (first reading is the default)
    zh_words.txt         multi-character Han words of the jieba dictionary
                         with frequency >= 5, used by the segmenter
    zh_common_chars.txt  characters of pypinyin's phrase dictionary, eligible
                         as substitution targets
"""

import argparse
import json
import re
import tarfile
import unicodedata
import zipfile
from pathlib import Path

TONE_MARKS = {
    "̄": "1",  # macron
    "́": "2",  # acute
    "̌": "3",  # caron
    "̀": "4",  # grave
}

ASSET_VERSION = "1"
MIN_WORD_FREQ = 5


def numbered(syllable: str) -> str:
    decomposed = unicodedata.normalize("NFD", syllable)
    tone = "5"
    out = []
    for ch in decomposed:
        if ch in TONE_MARKS:
            tone = TONE_MARKS[ch]
        elif ch == "̈":  # diaeresis: u-umlaut is spelled v
            out[-1] = "v"
        elif ch == "̂":  # e-circumflex
            continue
        else:
            out.append(ch)
    base = "".join(out).lower()
    if not re.fullmatch(r"[a-z]+", base):
        return ""
    return base + tone


def build_en(wheel: Path, out: Path) -> int:
    with zipfile.ZipFile(wheel) as zf:
        raw = zf.read("cmudict/data/cmudict.dict").decode("utf-8")
    seen = set()
    rows = []
    for line in raw.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        word, *phones = line.split()
        if "(" in word:
            continue
        if not re.fullmatch(r"[a-z][a-z']*", word) or word in seen:
            continue
        seen.add(word)
        rows.append(f"{word}\t{' '.join(re.sub(r'[0-9]', '', p) for p in phones)}")
    with out.open("w", encoding="utf-8") as fh:
        fh.write(f"# en pronunciation lexicon v{ASSET_VERSION}\n")
        fh.write("# derived from CMUdict 1.1.3 (see data/LICENSES.md); stress removed\n")
        fh.write("\n".join(rows) + "\n")
    return len(rows)


def is_han(ch: str) -> bool:
    return "\u4e00" <= ch <= "\u9fff" or "\u3400" <= ch <= "\u4dbf"


def jieba_words(sdist: Path) -> list[str]:
    with tarfile.open(sdist) as tf:
        member = next(m for m in tf.getmembers() if m.name.endswith("jieba/dict.txt"))
        raw = tf.extractfile(member).read().decode("utf-8")
    words = set()
    for line in raw.splitlines():
        parts = line.split()
        if len(parts) < 2:
            continue
        word, freq = parts[0], int(parts[1])
        if len(word) >= 2 and freq >= MIN_WORD_FREQ and all(is_han(ch) for ch in word):
            words.add(word)
    return sorted(words)


def build_zh(wheel: Path, sdist: Path, out_dir: Path) -> tuple[int, int, int]:
    with zipfile.ZipFile(wheel) as zf:
        chars = json.loads(zf.read("pypinyin/pinyin_dict.json"))
        phrases = json.loads(zf.read("pypinyin/phrases_dict.json"))

    rows = []
    for code in sorted(chars, key=int):
        readings = []
        for r in chars[code].split(","):
            n = numbered(r.strip())
            if n and n not in readings:
                readings.append(n)
        if readings:
            rows.append(f"{chr(int(code))}\t{' '.join(readings)}")
    with (out_dir / "zh_pinyin.txt").open("w", encoding="utf-8") as fh:
        fh.write(f"# zh character pinyin table v{ASSET_VERSION}\n")
        fh.write("# derived from pypinyin 0.55.0 (see data/LICENSES.md); first reading is the default\n")
        fh.write("\n".join(rows) + "\n")

    words = jieba_words(sdist)
    with (out_dir / "zh_words.txt").open("w", encoding="utf-8") as fh:
        fh.write(f"# zh word list v{ASSET_VERSION} for longest-match segmentation\n")
        fh.write(f"# derived from jieba 0.42.1 dict.txt (see data/LICENSES.md); Han words, frequency >= {MIN_WORD_FREQ}\n")
        fh.write("\n".join(words) + "\n")

    known = {chr(int(c)) for c in chars}
    common = sorted({ch for w in phrases if len(w) >= 2 for ch in w if ch in known})
    with (out_dir / "zh_common_chars.txt").open("w", encoding="utf-8") as fh:
        fh.write(f"# zh substitution vocabulary v{ASSET_VERSION}: characters of pypinyin's phrase dictionary\n")
        fh.write("\n".join(common) + "\n")
    return len(rows), len(words), len(common)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--cmudict-wheel", type=Path, required=True)
    ap.add_argument("--pypinyin-wheel", type=Path, required=True)
    ap.add_argument("--jieba-sdist", type=Path, required=True)
    ap.add_argument("--out", type=Path, default=Path("data"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    n_en = build_en(args.cmudict_wheel, args.out / "en_lexicon.txt")
    n_zh, n_words, n_common = build_zh(args.pypinyin_wheel, args.jieba_sdist, args.out)
    print(f"en_lexicon: {n_en}  zh_pinyin: {n_zh}  zh_words: {n_words}  zh_common_chars: {n_common}")


if __name__ == "__main__":
    main()
