"""Two-dimensional text rendering of integer polynomials and rational series.

A block is a list of equal-width lines with a baseline row; exponents sit on
the row above the baseline, as in::

            2     3    4
    1 - T - 4T  - 2T  + T
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Block:
    lines: tuple[str, ...]
    baseline: int

    @property
    def width(self) -> int:
        return len(self.lines[0]) if self.lines else 0

    @classmethod
    def text(cls, s: str) -> "Block":
        return cls((s,), 0)

    def __str__(self):
        return "\n".join(line.rstrip() for line in self.lines)


def hjoin(blocks: Sequence[Block]) -> Block:
    """Place blocks side by side, aligned on their baselines."""
    above = max(b.baseline for b in blocks)
    below = max(len(b.lines) - b.baseline - 1 for b in blocks)
    rows = [""] * (above + below + 1)
    for b in blocks:
        top = above - b.baseline
        for k in range(len(rows)):
            j = k - top
            rows[k] += b.lines[j] if 0 <= j < len(b.lines) else " " * b.width
    return Block(tuple(rows), above)


def poly_block(coeffs: Sequence[int], var: str = "T") -> Block:
    top, bottom = [], []
    first = True
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if first:
            sign = "-" if c < 0 else ""
        else:
            sign = " - " if c < 0 else " + "
        first = False
        a = abs(c)
        body = sign + (str(a) if a != 1 or k == 0 else "")
        if k >= 1:
            body += var
        exp = str(k) if k >= 2 else ""
        bottom.append(body + " " * len(exp))
        top.append(" " * len(body) + exp)
    if first:
        return Block.text("0")
    t, b = "".join(top), "".join(bottom)
    if t.strip():
        return Block((t, b), 1)
    return Block.text(b)


def _binomial_power(coeffs: Sequence[int]) -> int | None:
    """k if coeffs are those of (1+t)^k with k >= 2, else None."""
    k = len(coeffs) - 1
    if k < 2:
        return None
    row = [1]
    for _ in range(k):
        row = [a + b for a, b in zip(row + [0], [0] + row)]
    return k if list(coeffs) == row else None


def numerator_block(coeffs: Sequence[int], var: str = "T") -> Block:
    k = _binomial_power(coeffs)
    if k is None:
        return poly_block(coeffs, var)
    base = f"(1 + {var})"
    exp = str(k)
    return Block((" " * len(base) + exp, base + " " * len(exp)), 1)


def fraction_block(num: Block, den: Block) -> Block:
    width = max(num.width, den.width)

    def centre(b: Block) -> list[str]:
        left = (width - b.width + 1) // 2
        return [" " * left + line + " " * (width - b.width - left) for line in b.lines]

    rows = centre(num) + ["-" * width] + centre(den)
    return Block(tuple(rows), len(num.lines))


def _shifted(series) -> tuple[int, ...]:
    return (0,) * series.shift + tuple(series.numerator)


def series_block(series, var: str = "T") -> Block:
    num = numerator_block(_shifted(series), var)
    if tuple(series.denominator) == (1,):
        return num
    return fraction_block(num, poly_block(series.denominator, var))


def render_series(series, var: str = "T") -> str:
    return str(series_block(series, var))


def _poly_inline(coeffs: Sequence[int], var: str) -> str:
    out = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        a = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        coef = str(a) if a != 1 or k == 0 else ""
        out.append(sign + coef + mono)
    return "".join(out) or "0"


def series_one_line(series, var: str = "T") -> str:
    coeffs = _shifted(series)
    k = _binomial_power(coeffs)
    num = f"(1+{var})^{k}" if k is not None else f"({_poly_inline(coeffs, var)})"
    if tuple(series.denominator) == (1,):
        return num[1:-1] if k is None else num
    return f"{num}/({_poly_inline(series.denominator, var)})"
