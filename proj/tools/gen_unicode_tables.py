#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from Python's unicodedata.

The classifier table stores merged codepoint ranges with a flag bitmask
(UPPER, LOWER, LETTER, DIGIT). The case table stores simple one-to-one
lowercase mappings. Python's str.lower() performs full case mapping; the
only codepoint whose full lowercase differs from the one-to-one mapping
in a non-conditional way is U+0130 (-> U+0069 in UnicodeData.txt), which
is patched explicitly below.

Usage: python3 tools/gen_unicode_tables.py > src/unicode_tables.inc
"""

import sys
import unicodedata

UPPER, LOWER, LETTER, DIGIT = 1, 2, 4, 8


def flags_of(cp: int) -> int:
    cat = unicodedata.category(chr(cp))
    if cat == "Lu":
        return UPPER | LETTER
    if cat == "Ll":
        return LOWER | LETTER
    if cat in ("Lt", "Lm", "Lo"):
        return LETTER
    if cat == "Nd":
        return DIGIT
    return 0


def main() -> None:
    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_tables.py (Unicode %s). Do not edit.\n"
              % unicodedata.unidata_version)

    ranges = []
    start = 0
    cur = flags_of(0)
    for cp in range(1, 0x110000):
        f = flags_of(cp)
        if f != cur:
            if cur:
                ranges.append((start, cp - 1, cur))
            start = cp
            cur = f
    if cur:
        ranges.append((start, 0x10FFFF, cur))

    out.write("static constexpr CharClassRange kCharClassRanges[] = {\n")
    for lo, hi, f in ranges:
        out.write("    {0x%X, 0x%X, %d},\n" % (lo, hi, f))
    out.write("};\n\n")

    pairs = []
    for cp in range(0x110000):
        if cp == 0x130:
            pairs.append((cp, 0x69))
            continue
        lo = chr(cp).lower()
        if len(lo) == 1 and lo != chr(cp):
            pairs.append((cp, ord(lo)))

    out.write("static constexpr CaseMapEntry kSimpleLowerMap[] = {\n")
    for cp, lo in pairs:
        out.write("    {0x%X, 0x%X},\n" % (cp, lo))
    out.write("};\n")
    sys.stderr.write("ranges=%d lower_pairs=%d\n" % (len(ranges), len(pairs)))


if __name__ == "__main__":
    main()
