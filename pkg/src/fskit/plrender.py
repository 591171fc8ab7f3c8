"""Exact piecewise-linear rendering on the unit interval and circle.

The Cantor space maps onto [0,1] by j(p) = sum p_k/2^k; a prefix piece
(u -> v) becomes the affine map of slope 2^{|u|-|v|} sending the dyadic
interval below u onto the one below v.  Tail families contribute pieces
until the rendered width drops under 2^-depth; beyond that the pieces are
elided and the accumulation point is recorded.  Everything is exact: all
endpoints are dyadic, slopes are powers of two, and fixed points are exact
rationals.  Floats never enter the data path; SVG output serialises
coordinates at 9 decimal digits with round-half-even.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .eppm import Eppm, EppmError, NotOrderPreserving, canonicalize
from . import dynamics


class NotCyclicOrderPreserving(EppmError):
    pass


@dataclass(frozen=True)
class Dyadic:
    """num / 2^exp, normalized so num is odd or (num, exp) = (0, 0)."""

    num: int
    exp: int

    def __post_init__(self):
        if self.exp < 0 or (self.num % 2 == 0 and not (self.num == 0 and self.exp == 0)):
            raise ValueError(f"unnormalized dyadic {self.num}/2^{self.exp}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, 2**self.exp)

    def __lt__(self, other: "Dyadic") -> bool:
        return self.value < other.value

    def __le__(self, other: "Dyadic") -> bool:
        return self.value <= other.value

    def __str__(self) -> str:
        return decimal_string(self)


def dyadic(num: int, exp: int = 0) -> Dyadic:
    while exp > 0 and num % 2 == 0:
        num //= 2
        exp -= 1
    if num == 0:
        exp = 0
    return Dyadic(num, exp)


def from_fraction(fr: Fraction) -> Dyadic:
    den = fr.denominator
    exp = den.bit_length() - 1
    if 2**exp != den:
        raise ValueError(f"{fr} is not dyadic")
    return dyadic(fr.numerator, exp)


def cone_left(prefix: str) -> Fraction:
    """j(prefix.0^inf): the left endpoint of the cone's dyadic interval."""
    if not prefix:
        return Fraction(0)
    return Fraction(int(prefix, 2), 2 ** len(prefix))


def cone_width(prefix: str) -> Fraction:
    return Fraction(1, 2 ** len(prefix))


def decimal_string(d: Dyadic) -> str:
    """Exact decimal form; dyadics have terminating decimals."""
    if d.exp == 0:
        return str(d.num)
    scaled = d.num * 5**d.exp
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(d.exp + 1, "0")
    return f"{sign}{digits[:-d.exp]}.{digits[-d.exp:]}"


@dataclass(frozen=True)
class PlPiece:
    left: Dyadic
    right: Dyadic
    slope_exp: int
    intercept: Dyadic  # x -> 2^slope_exp * x + intercept on [left, right)

    def apply(self, x: Fraction) -> Fraction:
        return Fraction(2) ** self.slope_exp * x + self.intercept.value


@dataclass(frozen=True)
class PlMap:
    pieces: tuple[PlPiece, ...]
    accumulation_points: tuple[Dyadic, ...]
    truncation_depth: int
    domain_kind: str  # "interval" | "circle"


def _piece_to_pl(dom: str, ran: str) -> PlPiece:
    left = cone_left(dom)
    slope_exp = len(dom) - len(ran)
    intercept = cone_left(ran) - Fraction(2) ** slope_exp * left
    return PlPiece(
        from_fraction(left),
        from_fraction(left + cone_width(dom)),
        slope_exp,
        from_fraction(intercept),
    )


def _expand(f: Eppm, depth: int) -> tuple[list[PlPiece], list[Dyadic]]:
    pl: list[PlPiece] = []
    accumulation: list[Dyadic] = []
    for p in f.pieces:
        pl.append(_piece_to_pl(p.dom, p.ran))
    for fam in f.families:
        # expand while the unexpanded roof cone is at least 2^-depth wide,
        # so everything elided lives strictly below the resolution
        m = 0
        while len(fam.dom_base) + m * fam.dom_step <= depth:
            for d, r in fam.blocks:
                piece = fam.piece_at(m, (d, r))
                pl.append(_piece_to_pl(piece.dom, piece.ran))
            m += 1
        sup = cone_left(fam.dom_base) + cone_width(fam.dom_base)
        accumulation.append(from_fraction(sup))
    pl.sort(key=lambda q: q.left.value)
    return pl, sorted(dict.fromkeys(accumulation), key=lambda d: d.value)


def to_interval_map(f: Eppm, depth: int = 12) -> PlMap:
    f = canonicalize(f)
    if not dynamics.is_order_preserving(f):
        raise NotOrderPreserving("interval rendering needs an order-preserving map")
    pieces, accumulation = _expand(f, depth)
    return PlMap(tuple(pieces), tuple(accumulation), depth, "interval")


def to_circle_map(f: Eppm, depth: int = 12) -> PlMap:
    f = canonicalize(f)
    if not dynamics.is_cyclic_order_preserving(f):
        raise NotCyclicOrderPreserving("circle rendering needs a cyclic-order map")
    pieces, accumulation = _expand(f, depth)
    m = PlMap(tuple(pieces), tuple(accumulation), depth, "circle")
    _validate_circle_continuity(m)
    return m


def _validate_circle_continuity(m: PlMap) -> None:
    """Adjacent rendered pieces of a T-type map must join continuously
    modulo 1 (gaps from truncation are skipped)."""
    for a, b in zip(m.pieces, m.pieces[1:]):
        if a.right != b.left:
            continue
        left_val = a.apply(a.right.value) % 1
        right_val = b.apply(b.left.value) % 1
        if left_val != right_val:
            raise NotCyclicOrderPreserving(
                f"discontinuity at {a.right}: {left_val} vs {right_val}"
            )


def breakpoints(m: PlMap) -> list[tuple[Dyadic, int, int]]:
    """Interior boundaries where slope or intercept jumps, as
    (point, left_slope_exp, right_slope_exp)."""
    out = []
    for a, b in zip(m.pieces, m.pieces[1:]):
        if a.right != b.left:
            continue
        if a.slope_exp != b.slope_exp or a.intercept != b.intercept:
            out.append((a.right, a.slope_exp, b.slope_exp))
    return out


FixedSet = Union[tuple[str, Fraction, Fraction], tuple[str, Fraction]]


def fixed_points(m: PlMap) -> list[FixedSet]:
    """Exact solutions of piece(x) = x: ("interval", l, r) for identity
    pieces, ("point", x) with x an exact rational otherwise."""
    out: list[FixedSet] = []
    for p in m.pieces:
        slope = Fraction(2) ** p.slope_exp
        if slope == 1 and p.intercept.num == 0:
            out.append(("interval", p.left.value, p.right.value))
        elif slope != 1:
            x = p.intercept.value / (1 - slope)
            if p.left.value <= x < p.right.value:
                out.append(("point", x))
    return out


# ---------------------------------------------------------------------------
# deterministic CSV / SVG emission


CSV_HEADER = "left,right,slope_exp,intercept_num,intercept_exp"


def emit_csv(m: PlMap) -> str:
    lines = [CSV_HEADER]
    for p in m.pieces:
        lines.append(
            f"{decimal_string(p.left)},{decimal_string(p.right)},"
            f"{p.slope_exp},{p.intercept.num},{p.intercept.exp}"
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str, domain_kind: str = "interval") -> PlMap:
    lines = [ln for ln in text.strip().splitlines() if ln]
    if lines[0] != CSV_HEADER:
        raise ValueError("bad CSV header")
    pieces = []
    for ln in lines[1:]:
        left_s, right_s, se, inum, iexp = ln.split(",")
        pieces.append(
            PlPiece(
                from_fraction(Fraction(left_s)),
                from_fraction(Fraction(right_s)),
                int(se),
                Dyadic(int(inum), int(iexp)),
            )
        )
    return PlMap(tuple(pieces), (), 0, domain_kind)


def _round_half_even_scaled(fr: Fraction, digits: int = 9) -> int:
    scaled = fr * 10**digits
    n, d = scaled.numerator, scaled.denominator
    q, r = divmod(n, d)
    if 2 * r > d or (2 * r == d and q % 2):
        q += 1
    return q


def _svg_coord(fr: Fraction) -> str:
    q = _round_half_even_scaled(fr)
    sign = "-" if q < 0 else ""
    digits = str(abs(q)).rjust(10, "0")
    return f"{sign}{digits[:-9]}.{digits[-9:]}"


def emit_svg(m: PlMap, width: int = 512, height: int = 512) -> str:
    """Deterministic standalone SVG of the graph on [0,1]^2."""

    def x(fr: Fraction) -> str:
        return _svg_coord(fr * width)

    def y(fr: Fraction) -> str:
        return _svg_coord((1 - fr) * height)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" '
        'fill="white" stroke="black" stroke-width="1"/>',
        f'<line x1="{x(Fraction(0))}" y1="{y(Fraction(0))}" '
        f'x2="{x(Fraction(1))}" y2="{y(Fraction(1))}" '
        'stroke="#cccccc" stroke-width="1" stroke-dasharray="4 4"/>',
    ]
    for p in m.pieces:
        x0, x1 = p.left.value, p.right.value
        y0, y1 = p.apply(x0), p.apply(x1)
        lines.append(
            f'<line x1="{x(x0)}" y1="{y(y0)}" x2="{x(x1)}" y2="{y(y1)}" '
            'stroke="black" stroke-width="2"/>'
        )
    for a in m.accumulation_points:
        lines.append(
            f'<circle cx="{x(a.value)}" cy="{y(Fraction(0))}" r="3" '
            'fill="none" stroke="red" stroke-width="1"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
