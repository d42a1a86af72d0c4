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

"""Renders the bundled seed invoice and its canonical layout file.

Stands in for a scanned invoice plus OCR output: boxes are the tight ink
boxes of each text run widened by a small margin, as an OCR engine would
report them. Output is deterministic (fixed noise seed)."""

import json
import os
import sys

import numpy as np
from PIL import Image, ImageDraw, ImageFont

WIDTH, HEIGHT = 850, 1100
PAGE_TINT = (250, 248, 243)
INK = (34, 34, 38)
BLUE = (22, 48, 112)
MARGIN = 3

HERE = os.path.dirname(os.path.abspath(__file__))
FONT_PATH = os.path.join(HERE, "..", "fonts", "DejaVuSans.ttf")

# (text, x, y, size, colour, anchor, content_class, replace)
# anchor "la" = left/ascender, "ra" = right/ascender.
RUNS = [
    ("INVOICE", 60, 48, 40, INK, "la", "free_text", False),
    ("Acme Logistics Ltd.", 790, 52, 24, BLUE, "ra", "free_text", True),
    ("Invoice Date:", 60, 128, 15, INK, "la", "free_text", False),
    ("12/03/2024", 180, 128, 15, INK, "la", "date", True),
    ("INV-20417", 790, 128, 15, INK, "ra", "numeric_id", True),
    ("Due Date:", 60, 158, 15, INK, "la", "free_text", False),
    ("01/04/2024", 180, 158, 15, INK, "la", "date", True),
    ("418 Harbor Way, Springfield", 790, 158, 15, INK, "ra", "free_text", True),
    ("Bill To:", 60, 216, 15, INK, "la", "free_text", False),
    ("accounts@acme-logistics.com", 790, 216, 15, INK, "ra", "email", True),
    ("Jonathan Miller", 60, 246, 17, INK, "la", "free_text", True),
    ("(555) 123-4567", 790, 246, 15, INK, "ra", "phone", True),
    ("27 Elm Street, Riverton", 60, 276, 15, INK, "la", "free_text", True),
    ("Description", 70, 352, 15, INK, "la", "free_text", False),
    ("Qty", 470, 352, 15, INK, "la", "free_text", False),
    ("Unit Price", 560, 352, 15, INK, "la", "free_text", False),
    ("Amount", 780, 352, 15, INK, "ra", "free_text", False),
    ("Freight handling services", 70, 402, 15, INK, "la", "free_text", True),
    ("2", 478, 402, 15, INK, "la", "numeric_id", False),
    ("$450.00", 560, 402, 15, INK, "la", "currency_amount", False),
    ("$900.00", 780, 402, 15, INK, "ra", "currency_amount", True),
    ("Pallet storage monthly", 70, 442, 15, INK, "la", "free_text", False),
    ("3", 478, 442, 15, INK, "la", "numeric_id", False),
    ("$75.00", 560, 442, 15, INK, "la", "currency_amount", False),
    ("$225.00", 780, 442, 15, INK, "ra", "currency_amount", False),
    ("Customs documentation", 70, 482, 15, INK, "la", "free_text", False),
    ("1", 478, 482, 15, INK, "la", "numeric_id", False),
    ("$125.00", 560, 482, 15, INK, "la", "currency_amount", False),
    ("$125.00", 780, 482, 15, INK, "ra", "currency_amount", False),
    ("Express delivery surcharge", 70, 522, 15, INK, "la", "free_text", False),
    ("1", 478, 522, 15, INK, "la", "numeric_id", False),
    ("$60.00", 560, 522, 15, INK, "la", "currency_amount", False),
    ("$60.00", 780, 522, 15, INK, "ra", "currency_amount", False),
    ("Subtotal:", 560, 600, 15, INK, "la", "free_text", False),
    ("$1,310.00", 780, 600, 15, INK, "ra", "currency_amount", False),
    ("Tax (10%):", 560, 632, 15, INK, "la", "free_text", False),
    ("$131.00", 780, 632, 15, INK, "ra", "currency_amount", False),
    ("Total Due:", 560, 672, 17, INK, "la", "free_text", False),
    ("$1,441.00", 780, 672, 17, INK, "ra", "currency_amount", True),
    ("INV-20417-02", 60, 760, 14, INK, "la", "numeric_id", False),
    ("Payment due within thirty days", 60, 790, 14, INK, "la", "free_text", False),
    ("Thank you for your business", 60, 1010, 14, INK, "la", "free_text", False),
]


def main(out_dir):
    rng = np.random.default_rng(20240312)
    base = np.empty((HEIGHT, WIDTH, 3), dtype=np.int16)
    base[:, :] = PAGE_TINT
    base += rng.integers(-2, 3, size=(HEIGHT, WIDTH, 1), dtype=np.int16)
    img = Image.fromarray(np.clip(base, 0, 255).astype(np.uint8), "RGB")
    draw = ImageDraw.Draw(img)

    # Table header band, a shaded first item row and ruled lines.
    draw.rectangle((56, 340, 794, 378), fill=(226, 230, 236))
    draw.rectangle((56, 392, 794, 428), fill=(243, 241, 234))
    for y in (335, 383, 560, 660, 704):
        draw.line((56, y, 794, y), fill=(150, 150, 155), width=1)
    draw.line((56, 100, 794, 100), fill=BLUE, width=2)

    fragments = []
    for i, (text, x, y, size, colour, anchor, cls, replace) in enumerate(RUNS):
        font = ImageFont.truetype(FONT_PATH, size)
        draw.text((x, y), text, font=font, fill=colour, anchor=anchor)
        l, t, r, b = draw.textbbox((x, y), text, font=font, anchor=anchor)
        fragments.append({
            "id": "frag_%03d" % i,
            "text": text,
            "bbox": {
                "x_min": float(max(0, l - MARGIN)),
                "y_min": float(max(0, t - MARGIN)),
                "x_max": float(min(WIDTH, r + MARGIN)),
                "y_max": float(min(HEIGHT, b + MARGIN)),
            },
            "content_class": cls,
            "replace": replace,
        })

    img.save(os.path.join(out_dir, "sample_invoice.png"), optimize=False, compress_level=9)
    doc = {
        "page_width": WIDTH,
        "page_height": HEIGHT,
        "source_image_ref": "sample_invoice.png",
        "fragments": fragments,
    }
    with open(os.path.join(out_dir, "sample_layout.json"), "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2, ensure_ascii=False)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else HERE)
