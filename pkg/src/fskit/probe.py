"""Good-word faithfulness probe.

kappa_omega reads a positive colour word into the composed last-leaf
dynamics (a -> A1, b -> B1).  A non-trivial good word whose image is a
power of A1 certifies that the canonical action is unfaithful (the
category has a proper left-cancellative quotient); absence of collapses
over all good words is the faithfulness criterion.  The probe searches
words in length-then-lex order and reports the first collapse, or that
none exists up to the given length.  A NoCollapse outcome is bounded
evidence, not a proof.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .dynamics import caret_map, compose, is_power_of_a1
from .eppm import Eppm, IDENTITY, RepresentationOverflow, evaluate
from .presentation import (
    TwoColourRightVine,
    enumerate_good_words,
    good_word_check,
    is_trivial_good_word,
)
from .sequences import ev_periodic


def kappa_omega(cls: TwoColourRightVine, word: str) -> Eppm:
    """Compose A1/B1 per letter, leftmost letter outermost."""
    if not word:
        raise ValueError("kappa_omega needs a non-empty word")
    letters = {
        cls.colour_a: caret_map(cls, cls.colour_a, 1),
        cls.colour_b: caret_map(cls, cls.colour_b, 1),
    }
    acc = IDENTITY
    for ch in word:
        acc = compose(acc, letters[ch])
    return acc


@dataclass(frozen=True)
class ProbeReport:
    presentation: str
    max_len: int
    outcome: str  # "CollapseFound" | "NoCollapseUpTo" | "Inconclusive"
    collapse_word: Optional[str] = None
    collapse_power: Optional[int] = None
    tested: int = 0
    inconclusive: tuple[str, ...] = ()
    seconds: float = 0.0

    def to_json(self) -> str:
        data = {
            "presentation": self.presentation,
            "max_len": self.max_len,
            "outcome": self.outcome,
            "tested": self.tested,
            "inconclusive": list(self.inconclusive),
            "seconds": round(self.seconds, 3),
        }
        if self.collapse_word is not None:
            data["collapse"] = {"word": self.collapse_word, "j": self.collapse_power}
        return json.dumps(data, sort_keys=True)


def _test_word(cls: TwoColourRightVine, word: str):
    """(word, j or None) or an overflow marker."""
    try:
        return word, is_power_of_a1(kappa_omega(cls, word))
    except RepresentationOverflow:
        return word, "overflow"


def probe(
    cls: TwoColourRightVine,
    max_len: int,
    jobs: int = 1,
    presentation_name: str = "",
) -> ProbeReport:
    """Search non-trivial good words of length <= max_len for a collapse
    kappa_omega(w) = A1^j.  Deterministic: first collapse in enumeration
    order wins regardless of the degree of parallelism."""
    start = time.monotonic()
    words = list(enumerate_good_words(cls, max_len))
    tested = 0
    inconclusive: list[str] = []
    found: Optional[tuple[str, int]] = None

    if jobs <= 1:
        results = map(lambda w: _test_word(cls, w), words)
        for word, res in results:
            tested += 1
            if res == "overflow":
                inconclusive.append(word)
            elif res is not None:
                found = (word, res)
                break
    else:
        chunk = max(4 * jobs, 16)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for base in range(0, len(words), chunk):
                batch = words[base : base + chunk]
                for word, res in pool.map(lambda w: _test_word(cls, w), batch):
                    tested += 1
                    if res == "overflow":
                        inconclusive.append(word)
                    elif res is not None and found is None:
                        found = (word, res)
                if found:
                    break

    seconds = time.monotonic() - start
    if found:
        word, j = found
        return ProbeReport(
            presentation_name,
            max_len,
            "CollapseFound",
            word,
            j,
            tested,
            tuple(inconclusive),
            seconds,
        )
    outcome = "Inconclusive" if inconclusive else "NoCollapseUpTo"
    return ProbeReport(
        presentation_name,
        max_len,
        outcome,
        None,
        None,
        tested,
        tuple(inconclusive),
        seconds,
    )


class WrongShape(Exception):
    pass


def certificate_check(cls: TwoColourRightVine, word: str) -> bool:
    """Witness-point check that kappa_omega(word) is no power of A1, for
    presentations with R_x = 2 (shape x = Y(s (x) Y)).

    A power of A1 sends (0)^inf to 1^j.(0)^inf and 0.(1)^inf to
    1^j.0.(1)^inf; the case analysis behind the simplicity proof guarantees
    one of the two witness images breaks that shape for every non-trivial
    good word."""
    if cls.R_x != 2:
        raise WrongShape(f"certificate needs R_x = 2, got {cls.R_x}")
    if not good_word_check(cls, word) or is_trivial_good_word(cls, word):
        raise ValueError(f"{word!r} is not a non-trivial good word")
    g = kappa_omega(cls, word)
    z1 = evaluate(g, ev_periodic("", "0"))
    z2 = evaluate(g, ev_periodic("0", "1"))
    # a power of A1 sends the witnesses to 1^j.(0)^inf and 1^j.0.(1)^inf
    z1_power_shape = z1.per == "0" and set(z1.pre) <= {"1"}
    z2_power_shape = z2.per == "1" and z2.pre.count("0") == 1
    return not (z1_power_shape and z2_power_shape)
