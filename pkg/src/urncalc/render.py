"""Text, JSON and CSV renderings of signed distributions, plus ket parsing."""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from math import lcm

from .channels import SignedDist
from .errors import UrnError
from .multiset import Multiset, parse_multiset


def outcome_text(x) -> str:
    if isinstance(x, Multiset):
        return x.ket()
    if isinstance(x, tuple):
        return "(" + ", ".join(outcome_text(y) for y in x) + ")"
    return str(x)


def _weight_text(w: Fraction, den: int | None) -> str:
    """Magnitude of ``w``, optionally over a fixed denominator."""
    w = abs(w)
    if den is None:
        return str(w)
    num = w * den
    if num.denominator != 1:
        raise UrnError(f"{w} cannot be written over denominator {den}")
    return f"{num.numerator}/{den}" if den != 1 else str(num.numerator)


def common_denominator(dist: SignedDist) -> int:
    return lcm(*(w.denominator for _, w in dist.items())) if len(dist) else 1


def render_ket(dist: SignedDist, denominator: int | None = None) -> str:
    """``-1/4|2|0>> + 1/6|1|0>+1|1>> - ...`` in canonical outcome order."""
    parts = []
    for k, (x, w) in enumerate(dist.items()):
        term = f"{_weight_text(w, denominator)}|{outcome_text(x)}>"
        if k == 0:
            parts.append(("-" if w < 0 else "") + term)
        else:
            parts.append(("- " if w < 0 else "+ ") + term)
    return " ".join(parts)


def _record(x, w: Fraction, denominator: int | None) -> dict:
    if denominator is None:
        num, den = w.numerator, w.denominator
    else:
        num, den = int(w * denominator), denominator
    return {"outcome": outcome_text(x), "num": num, "den": den}


def render_json(dist: SignedDist, denominator: int | None = None) -> str:
    return json.dumps([_record(x, w, denominator) for x, w in dist.items()], indent=2)


def render_csv(dist: SignedDist, denominator: int | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["outcome", "num", "den"])
    for x, w in dist.items():
        rec = _record(x, w, denominator)
        writer.writerow([rec["outcome"], rec["num"], rec["den"]])
    return buf.getvalue()


def render(dist: SignedDist, fmt: str = "ket", denominator: int | None = None) -> str:
    if fmt == "ket":
        return render_ket(dist, denominator)
    if fmt == "json":
        return render_json(dist, denominator)
    if fmt == "csv":
        return render_csv(dist, denominator)
    raise UrnError(f"unknown format {fmt!r}")


_WEIGHT = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)\s*\|")


def _parse_outcome(text: str, n_colors: int | None):
    if re.fullmatch(r"\d+", text):
        return int(text)
    return parse_multiset(text, n_colors)


def parse_ket(text: str, n_colors: int | None = None) -> SignedDist:
    """Inverse of :func:`render_ket` for colour and multiset outcomes.

    Multiset outcomes without ``n_colors`` share one ambient size, taken from
    the largest colour mentioned anywhere in the text.
    """
    raw: list[tuple[str, Fraction]] = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _WEIGHT.match(s, pos)
        if not m:
            raise UrnError(f"cannot parse weight at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        weight = sign * Fraction(m.group(2))
        i = m.end()
        depth = 1
        start = i
        while i < len(s) and depth:
            if s[i] == "|":
                depth += 1
            elif s[i] == ">":
                depth -= 1
            i += 1
        if depth:
            raise UrnError(f"unterminated ket in {text!r}")
        raw.append((s[start:i - 1].strip(), weight))
        pos = i
        while pos < len(s) and s[pos] == " ":
            pos += 1
    if n_colors is None:
        colors = [int(c) for o, _ in raw for c in re.findall(r"\|(\d+)>", o)]
        n_colors = max(colors) + 1 if colors else None
    return SignedDist((_parse_outcome(o, n_colors), w) for o, w in raw)
