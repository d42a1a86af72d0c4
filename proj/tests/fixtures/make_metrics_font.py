#!/usr/bin/env python3
# Copyright 2026 The invsynth Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds metrics_fixture.ttf: every glyph advances 0.6 em, ascent 0.9 em,
descent 0.3 em (line height 1.2 em). Non-space glyphs are solid rectangles
spanning [0.05, 0.55] em horizontally and the full line height vertically,
so ink is exactly centred inside the advance box."""

import sys

from fontTools.fontBuilder import FontBuilder
from fontTools.pens.ttGlyphPen import TTGlyphPen

UPEM = 1000
ADVANCE = 600
ASCENT = 900
DESCENT = 300


def rect_glyph():
    pen = TTGlyphPen(None)
    pen.moveTo((50, -DESCENT))
    pen.lineTo((50, ASCENT))
    pen.lineTo((550, ASCENT))
    pen.lineTo((550, -DESCENT))
    pen.closePath()
    return pen.glyph()


def empty_glyph():
    return TTGlyphPen(None).glyph()


def main(out_path):
    codepoints = list(range(0x20, 0x7F)) + list(range(0xA0, 0x100))
    names = [".notdef"] + ["uni%04X" % cp for cp in codepoints]
    cmap = {cp: "uni%04X" % cp for cp in codepoints}
    blank = {0x20, 0xA0}

    glyphs = {".notdef": rect_glyph()}
    metrics = {".notdef": (ADVANCE, 50)}
    for cp in codepoints:
        name = "uni%04X" % cp
        if cp in blank:
            glyphs[name] = empty_glyph()
            metrics[name] = (ADVANCE, 0)
        else:
            glyphs[name] = rect_glyph()
            metrics[name] = (ADVANCE, 50)

    fb = FontBuilder(UPEM, isTTF=True)
    fb.setupGlyphOrder(names)
    fb.setupCharacterMap(cmap)
    fb.setupGlyf(glyphs)
    fb.setupHorizontalMetrics(metrics)
    fb.setupHorizontalHeader(ascent=ASCENT, descent=-DESCENT, lineGap=0)
    fb.setupNameTable({"familyName": "InvsynthMetricsFixture", "styleName": "Regular"})
    fb.setupOS2(sTypoAscender=ASCENT, sTypoDescender=-DESCENT, sTypoLineGap=0,
                usWinAscent=ASCENT, usWinDescent=DESCENT)
    fb.setupPost()
    fb.font["head"].created = 0
    fb.font["head"].modified = 0
    fb.save(out_path)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "metrics_fixture.ttf")
