"""The canonical actions on the Cantor space, realised as Eppms.

For a presentation <a,b | x(a) = rho(b)> with rho a right-vine, the four
pointed carets act on binary sequences by

    A0: z -> 0.z      A1: z -> 1.z      B0: z -> 0^{L_x}.z

and B1 shifts along the leaves w_i of the infinite tree built by stacking
copies of x on its own last leaf: B1(w_i.q) = w_{i+1}.q, fixing 1^inf.
Group elements are evaluated either from signed generator words or from
tree-pair fractions [t, pi, s], and all operations (equality, supports,
germs, order tests) happen on the exact Eppm representation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import eppm
from .eppm import (
    Eppm,
    Family,
    IDENTITY,
    NotBijective,
    NotOrderPreserving,
    NotTotal,
    Piece,
    canonicalize,
    compose,
    eq_runs,
    equals,
    evaluate,
    invert,
    is_total,
    make_eppm,
    restrict,
)
from .forest import Tree, leaf_count, leaf_path
from .presentation import TwoColourRightVine, UnsupportedClass
from .sequences import EvPeriodic, ev_periodic


GENERATORS = ("A0", "A1", "B0", "B1")


def caret_map(cls: TwoColourRightVine, colour: str, direction: int) -> Eppm:
    """The pointed-caret transformation beta(Y_colour, direction)."""
    if colour == cls.colour_a:
        return make_eppm(pieces=[Piece("", str(direction))])
    if colour != cls.colour_b:
        raise UnsupportedClass(f"unknown colour {colour!r}")
    if direction == 0:
        return make_eppm(pieces=[Piece("", "0" * cls.L_x)])
    n, r = cls.n, cls.R_x
    blocks = []
    for k in range(1, n - 1):
        blocks.append((cls.leaves[k - 1], cls.leaves[k]))
    blocks.append((cls.leaves[n - 2], "1" * r + cls.leaves[0]))
    fam = Family("", "", r, r, tuple(sorted(blocks)))
    return canonicalize(make_eppm(families=[fam]))


def generator_map(cls: TwoColourRightVine, token: str) -> Eppm:
    colour = cls.colour_a if token[0] == "A" else cls.colour_b
    return caret_map(cls, colour, int(token[1]))


SignedWord = tuple[tuple[str, int], ...]


def evaluate_word(cls: TwoColourRightVine, word: SignedWord) -> Eppm:
    """Fold caret maps over a signed generator word, leftmost outermost."""
    acc = IDENTITY
    for token, exp in word:
        m = generator_map(cls, token)
        if exp == -1:
            m = invert(m)
        elif exp != 1:
            raise ValueError(f"bad exponent {exp}")
        acc = compose(acc, m)
    return acc


_TOKEN_RE = re.compile(r"^(A0|A1|B0|B1)(\^-1)?$")


def parse_signed_word(text: str) -> SignedWord:
    word = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ValueError(f"bad generator token {tok!r}")
        word.append((m.group(1), -1 if m.group(2) else 1))
    return tuple(word)


def format_signed_word(word: SignedWord) -> str:
    return " ".join(t + ("^-1" if e == -1 else "") for t, e in word)


# ---------------------------------------------------------------------------
# fractions [t, pi, s]


def beta_path(cls: TwoColourRightVine, t: Tree, leaf: int) -> Eppm:
    """beta(t, leaf): the pointed-tree transformation, composed along the
    root-to-leaf path with the root caret outermost."""
    acc = IDENTITY
    for colour, direction in leaf_path(t, leaf):
        acc = compose(acc, caret_map(cls, colour, direction))
    return acc


def evaluate_fraction(
    cls: TwoColourRightVine,
    t: Tree,
    perm: tuple[int, ...],
    s: Tree,
) -> Eppm:
    """alpha([t, pi, s]): on Cone(s, j) acts as beta(t, pi(j)) o beta(s, j)^-1.

    The permutation is stored as the image list of 1..n, so Cone(s, j) maps
    onto Cone(t, perm[j-1]).
    """
    n = leaf_count(s)
    if leaf_count(t) != n or sorted(perm) != list(range(1, n + 1)):
        raise NotBijective(
            f"fraction shape mismatch: {leaf_count(t)} vs {n} leaves, perm {perm}"
        )
    pieces: list[Piece] = []
    fams = []
    limits = []
    for j in range(1, n + 1):
        branch = compose(beta_path(cls, t, perm[j - 1]), invert(beta_path(cls, s, j)))
        pieces.extend(branch.pieces)
        fams.extend(branch.families)
        limits.extend(branch.limits)
    out = canonicalize(make_eppm(pieces, fams, limits))
    if not is_total(out) or not is_total(invert(out)):
        raise NotBijective("fraction did not evaluate to a total bijection")
    return out


_FRACTION_RE = re.compile(r"^\[([^|\]]*)\|([^|\]]*)\|([^|\]]*)\]$")


def parse_fraction(text: str) -> tuple[Tree, tuple[int, ...], Tree]:
    from .forest import build_tree, parse_caret_word

    m = _FRACTION_RE.match(text.strip().replace(" ", " "))
    if not m:
        raise ValueError(f"bad fraction literal {text!r}")
    t = build_tree(parse_caret_word(m.group(1)))
    s = build_tree(parse_caret_word(m.group(3)))
    perm_text = m.group(2).strip()
    if perm_text == "id":
        perm = tuple(range(1, leaf_count(s) + 1))
    else:
        perm = tuple(int(x) for x in perm_text.split())
    return t, perm, s


def parse_element(cls: TwoColourRightVine, text: str) -> Eppm:
    """Either a signed generator word or a fraction literal."""
    text = text.strip()
    if text.startswith("["):
        t, perm, s = parse_fraction(text)
        return evaluate_fraction(cls, t, perm, s)
    return evaluate_word(cls, parse_signed_word(text))


# ---------------------------------------------------------------------------
# power-of-A1 detection


def is_power_of_a1(f: Eppm) -> Optional[int]:
    """j >= 0 with f = A1^j, else None; decided by probing (0)^inf and
    confirming with exact equality."""
    o = ev_periodic("", "0")
    try:
        image = evaluate(f, o)
    except eppm.UndefinedAt:
        return None
    if image.per != "0" or any(ch != "1" for ch in image.pre):
        return None
    j = len(image.pre)
    if equals(f, make_eppm(pieces=[Piece("", "1" * j)])):
        return j
    return None


# ---------------------------------------------------------------------------
# order and cyclic order


def _atom_dom_min(atom) -> str:
    if isinstance(atom, Piece):
        return atom.dom
    return atom.dom_base + min(d for d, _ in atom.blocks)


def _cone_before(a: str, b: str) -> bool:
    """Whether the cone below a lies entirely before the cone below b."""
    return not a.startswith(b) and not b.startswith(a) and a < b


def _family_ran_sorted(fam: Family) -> bool:
    """Blocks sorted by dom must have sorted ranges within a layer, and the
    last range of one layer must precede the first of the next (uniform in
    the layer index, so one check suffices)."""
    blocks = sorted(fam.blocks)
    rans = [fam.ran_base + r for _, r in blocks]
    if not all(_cone_before(a, b) for a, b in zip(rans, rans[1:])):
        return False
    return _cone_before(blocks[-1][1], "1" * fam.ran_step + blocks[0][1])


def _interval_keys(f: Eppm):
    """(dom_min, ran_min) word keys per atom, in domain order."""
    entries = []
    for p in f.pieces:
        entries.append((p.dom, p.ran, p))
    for fam in f.families:
        blocks = sorted(fam.blocks)
        entries.append(
            (fam.dom_base + blocks[0][0], fam.ran_base + blocks[0][1], fam)
        )
    entries.sort(key=lambda e: _pad_key(e[0]))
    return entries


def _pad_key(word: str):
    # cone prefixes ordered by their infimum point: u < u.w for w not all 0
    return tuple(int(ch) for ch in word)


def is_order_preserving(f: Eppm) -> bool:
    f = canonicalize(f)
    if not is_total(f):
        raise NotTotal("order test requires a total map")
    for fam in f.families:
        if not _family_ran_sorted(fam):
            return False
    entries = _interval_keys(f)
    rans = [_pad_key(r) for _, r, _ in entries]
    return all(a < b for a, b in zip(rans, rans[1:]))


def is_cyclic_order_preserving(f: Eppm) -> bool:
    f = canonicalize(f)
    if not is_total(f):
        raise NotTotal("cyclic order test requires a total map")
    for fam in f.families:
        if not _family_ran_sorted(fam):
            return False
    entries = _interval_keys(f)
    rans = [_pad_key(r) for _, r, _ in entries]
    if len(rans) <= 1:
        return True
    descents = sum(1 for a, b in zip(rans, rans[1:] + rans[:1]) if not a < b)
    return descents <= 1


def classify_element(f: Eppm) -> str:
    if is_order_preserving(f):
        return "F"
    if is_cyclic_order_preserving(f):
        return "T"
    return "V"


# ---------------------------------------------------------------------------
# support


@dataclass(frozen=True)
class FixedLadder:
    """Fixed points base.1^{m step}.suffix.(tail)^inf for every m >= 0."""

    base: str
    step: int
    suffix: str
    tail: str

    def point(self, m: int) -> EvPeriodic:
        return ev_periodic(self.base + "1" * (m * self.step) + self.suffix, self.tail)


@dataclass(frozen=True)
class Support:
    fixed_cones: tuple[str, ...]
    fixed_points: tuple[EvPeriodic, ...]
    fixed_ladders: tuple[FixedLadder, ...]
    moved_cones: tuple[str, ...]


def _piece_fixed_point(dom: str, ran: str) -> Optional[EvPeriodic]:
    if dom == ran:
        return None
    if ran.startswith(dom):
        tail = ran[len(dom) :]
        return ev_periodic(dom, tail)
    if dom.startswith(ran):
        tail = dom[len(ran) :]
        return ev_periodic(ran, tail)
    return None


def support(f: Eppm) -> Support:
    f = canonicalize(f)
    if not is_total(f):
        raise NotTotal("support requires a total map")
    fixed_cones: list[str] = []
    fixed_points: list[EvPeriodic] = []
    ladders: list[FixedLadder] = []
    moved: list[str] = []

    for p in f.pieces:
        if p.dom == p.ran:
            fixed_cones.append(p.dom)
            continue
        moved.append(p.dom)
        fp = _piece_fixed_point(p.dom, p.ran)
        if fp is not None:
            fixed_points.append(fp)

    for fam in f.families:
        identity = all(
            eq_runs(fam.dom_base, fam.dom_step, d, fam.ran_base, fam.ran_step, r)
            for d, r in fam.blocks
        )
        if identity:
            fixed_cones.append(fam.dom_base)
            continue
        moved.append(fam.dom_base)
        if fam.carries_limit and fam.limit_dom == fam.limit_ran:
            fixed_points.append(fam.limit_dom)
        for d, r in fam.blocks:
            dom0, ran0 = fam.dom_base + d, fam.ran_base + r
            dom1 = fam.dom_base + "1" * fam.dom_step + d
            ran1 = fam.ran_base + "1" * fam.ran_step + r
            if ran0.startswith(dom0) and ran1.startswith(dom1):
                w0, w1 = ran0[len(dom0) :], ran1[len(dom1) :]
                if w0 == w1 and w0:
                    ladders.append(FixedLadder(fam.dom_base, fam.dom_step, d, w0))
            elif dom0.startswith(ran0) and dom1.startswith(ran1):
                w0, w1 = dom0[len(ran0) :], dom1[len(ran1) :]
                if w0 == w1 and w0:
                    ladders.append(FixedLadder(fam.dom_base, fam.dom_step, d, w0))

    for p, q in f.limits:
        if p == q:
            fixed_points.append(p)
        else:
            moved.append(str(p))

    return Support(
        tuple(sorted(fixed_cones)),
        tuple(sorted(dict.fromkeys(fixed_points), key=lambda e: (e.pre, e.per))),
        tuple(sorted(dict.fromkeys(ladders), key=lambda l: (l.base, l.suffix))),
        tuple(sorted(moved)),
    )


# ---------------------------------------------------------------------------
# singular points and germs


def singular_points(f: Eppm) -> tuple[EvPeriodic, ...]:
    """Tail-1^inf points where f is not locally a single prefix piece:
    the limit points of the non-collapsible families of the canonical form."""
    f = canonicalize(f)
    if not is_total(f):
        raise NotTotal("singular points are defined for total maps")
    pts = {fam.limit_dom for fam in f.families}
    return tuple(sorted(pts, key=lambda e: (e.pre, e.per)))


@dataclass(frozen=True)
class Germ:
    """Germ of f at a tail-1^inf point.

    Keeps the underlying map together with the source/target points; two
    germs are equal iff the maps agree on a neighbourhood of the point,
    which is decided exactly by re-basing both maps at a *common* depth
    (so their layer phases stay comparable) and comparing the deep
    restrictions.  The re-based local map at the germ's own depth is kept
    for display.
    """

    source: EvPeriodic
    target: EvPeriodic
    local: Eppm
    depth: int
    map: Eppm

    def _local_at(self, depth: int) -> Eppm:
        return _rebase_local(self.map, self.source, self.target, depth)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Germ):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        k = max(self.depth, other.depth)
        probe = "1" * k
        return equals(
            restrict(self._local_at(k), probe), restrict(other._local_at(k), probe)
        )

    def __hash__(self):
        return hash((self.source, self.target))


def _rebase_local(f: Eppm, p: EvPeriodic, q: EvPeriodic, depth: int) -> Eppm:
    """f in coordinates where p and q read as (1)^inf: strip the length-
    `depth` prefix of q from outputs and prepend the one of p to inputs."""
    w = p.prefix(depth)
    v = q.prefix(depth)
    return canonicalize(
        compose(
            make_eppm(pieces=[Piece(v, "")]),
            compose(f, make_eppm(pieces=[Piece("", w)])),
        )
    )


def germ_at(f: Eppm, p: EvPeriodic) -> Germ:
    """The germ of f at a point with tail (1)^inf."""
    if not p.has_tail("1"):
        raise ValueError("germ_at expects a tail-(1)^inf point")
    f = canonicalize(f)
    q = evaluate(f, p)
    if not q.has_tail("1"):
        raise ValueError("image has no tail-(1)^inf form; germ not representable")
    depth = eppm._max_depth(f) + max(
        [fam.dom_step for fam in f.families] or [1]
    ) + len(p.pre) + len(q.pre) + 2
    return Germ(p, q, _rebase_local(f, p, q, depth), depth, f)


# ---------------------------------------------------------------------------
# the bi-order on order-preserving elements


def bi_order_compare(f: Eppm, g: Eppm) -> str:
    """Compare f and g in the bi-order of the order-preserving group:
    'less', 'equal', or 'greater'.  f > g iff f o g^-1 exceeds the identity,
    decided by the slope at the first deviating cone."""
    for m in (f, g):
        if not is_order_preserving(m):
            raise NotOrderPreserving("bi-order needs order-preserving inputs")
    if equals(f, g):
        return "equal"
    h = canonicalize(compose(f, invert(g)))
    deviation = _first_deviation(h)
    assert deviation is not None
    dom, ran = deviation
    if len(dom) != len(ran):
        return "greater" if len(dom) > len(ran) else "less"
    return "greater" if ran > dom else "less"


def _first_deviation(h: Eppm) -> Optional[tuple[str, str]]:
    """The (dom, ran) of the generated piece with lexicographically least
    domain where h differs from the identity."""
    candidates = []
    for p in h.pieces:
        if p.dom != p.ran:
            candidates.append((_pad_key(p.dom), (p.dom, p.ran)))
    for fam in h.families:
        for d, r in sorted(fam.blocks):
            bound = (
                len(fam.dom_base) + len(fam.ran_base) + len(d) + len(r)
            ) // max(fam.dom_step, 1) + 2
            for m in range(bound + 1):
                piece = fam.piece_at(m, (d, r))
                if piece.dom != piece.ran:
                    candidates.append((_pad_key(piece.dom), (piece.dom, piece.ran)))
                    break
    if not candidates:
        return None
    return min(candidates)[1]
