"""Eventually periodic binary sequences u.(v)^inf, exactly represented.

These are the computable points of the Cantor space {0,1}^N.  Values are
kept in a normal form (primitive period, minimal preperiod) so that two
sequences are equal iff their representations are identical.  The literal
syntax is ``u(v)``, e.g. ``01(10)`` for 01.101010...; ``(0)`` and ``(1)``
are the endpoints o and omega.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class PointSyntaxError(ValueError):
    pass


def _primitive(v: str) -> str:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v == v[:d] * (n // d):
            return v[:d]
    return v


@dataclass(frozen=True)
class EvPeriodic:
    """Normalized eventually periodic sequence pre.(per)^inf."""

    pre: str
    per: str

    def __str__(self) -> str:
        return f"{self.pre}({self.per})"

    def letter(self, i: int) -> str:
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, n: int) -> str:
        return "".join(self.letter(i) for i in range(n))

    def starts_with(self, w: str) -> bool:
        return all(self.letter(i) == ch for i, ch in enumerate(w))

    def drop(self, n: int) -> "EvPeriodic":
        """The sequence with its first n letters removed."""
        if n <= len(self.pre):
            return ev_periodic(self.pre[n:], self.per)
        k = (n - len(self.pre)) % len(self.per)
        return ev_periodic("", self.per[k:] + self.per[:k])

    def prepend(self, w: str) -> "EvPeriodic":
        return ev_periodic(w + self.pre, self.per)

    def is_constant(self, ch: str) -> bool:
        return self.pre == "" and self.per == ch

    def leading_run(self, ch: str) -> int:
        """Length of the maximal prefix of copies of ch; requires the
        sequence not to be constant ch."""
        if self.is_constant(ch):
            raise ValueError("constant sequence has no finite leading run")
        i = 0
        while self.letter(i) == ch:
            i += 1
        return i

    def has_tail(self, ch: str) -> bool:
        return self.per == ch

    def to_fraction(self) -> Fraction:
        """The value sum p_k / 2^k of the sequence in [0, 1]."""
        u, v = self.pre, self.per
        head = Fraction(int(u, 2) if u else 0, 2 ** len(u))
        tail = Fraction(int(v, 2), 2 ** len(v) - 1) / 2 ** len(u)
        return head + tail


def ev_periodic(pre: str, per: str) -> EvPeriodic:
    if not per or any(ch not in "01" for ch in pre + per):
        raise PointSyntaxError(f"bad sequence {pre!r}({per!r})")
    per = _primitive(per)
    pre = str(pre)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1] + per[:-1]
    return EvPeriodic(pre, _primitive(per))


O_POINT = ev_periodic("", "0")
OMEGA = ev_periodic("", "1")

_POINT_RE = re.compile(r"^([01]*)\(([01]+)\)$")


def parse_point(text: str) -> EvPeriodic:
    m = _POINT_RE.match(text.strip())
    if not m:
        raise PointSyntaxError(f"bad point literal {text!r}; expected u(v)")
    return ev_periodic(m.group(1), m.group(2))


def tail_equivalent(p: EvPeriodic, q: EvPeriodic) -> bool:
    """True iff p and q share a common suffix.

    With primitive periods, this holds exactly when the periods are
    rotations of each other (every rotation occurs as a suffix of both).
    """
    if len(p.per) != len(q.per):
        return False
    return q.per in p.per + p.per


def compare(p: EvPeriodic, q: EvPeriodic) -> int:
    """Lexicographic comparison (0 < 1); -1, 0, or 1."""
    if p == q:
        return 0
    bound = len(p.pre) + len(q.pre) + len(p.per) * len(q.per) + 1
    for i in range(bound):
        a, b = p.letter(i), q.letter(i)
        if a != b:
            return -1 if a < b else 1
    return 0
