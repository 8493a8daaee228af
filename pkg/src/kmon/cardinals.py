"""Exact arithmetic and ordering for cardinals up to a configured symbolic bound.

Values are either non-negative integers or symbolic alephs ``aleph0 .. alephK``
with ``K`` a library-wide configuration (default 3).  Sums with infinite
content follow the closed form ``max(total index cardinality, sup of values)``;
finite content sums as ordinary integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CardBoundError, CardOverflowError

_MAX_ALEPH_LEVEL = 3
_FINITE_WIDTH: Optional[int] = None


def max_aleph_level() -> int:
    return _MAX_ALEPH_LEVEL


def set_max_aleph_level(k: int) -> None:
    """Set the largest admissible aleph level (the bound kappa = aleph_K)."""
    global _MAX_ALEPH_LEVEL
    if k < 0:
        raise CardBoundError(f"max aleph level must be >= 0, got {k}")
    _MAX_ALEPH_LEVEL = k


def set_finite_width(bits: Optional[int]) -> None:
    """Restrict finite parts to ``bits`` bits; arithmetic that exceeds the
    width raises CardOverflowError instead of wrapping.  ``None`` (the
    default) means arbitrary precision."""
    global _FINITE_WIDTH
    _FINITE_WIDTH = bits


def _check_width(n: int) -> int:
    if _FINITE_WIDTH is not None and n.bit_length() > _FINITE_WIDTH:
        raise CardOverflowError(f"finite cardinal {n} exceeds {_FINITE_WIDTH} bits")
    return n


@dataclass(frozen=True, order=False)
class ExtCard:
    """A cardinal: finite ``n`` (aleph_level is None) or ``aleph(level)``."""

    n: int = 0
    aleph_level: Optional[int] = None

    def __post_init__(self):
        if self.aleph_level is not None:
            if self.aleph_level < 0 or self.aleph_level > _MAX_ALEPH_LEVEL:
                raise CardBoundError(
                    f"aleph level {self.aleph_level} outside 0..{_MAX_ALEPH_LEVEL}"
                )
            if self.n != 0:
                raise ValueError("aleph values carry no finite part")
        elif self.n < 0:
            raise ValueError("finite cardinals are non-negative")

    @property
    def is_finite(self) -> bool:
        return self.aleph_level is None

    @property
    def is_infinite(self) -> bool:
        return self.aleph_level is not None

    @property
    def is_zero(self) -> bool:
        return self.aleph_level is None and self.n == 0

    def sort_key(self):
        if self.aleph_level is None:
            return (0, self.n)
        return (1, self.aleph_level)

    def __le__(self, other: "ExtCard") -> bool:
        if self.aleph_level is None:
            return other.aleph_level is not None or self.n <= other.n
        return other.aleph_level is not None and self.aleph_level <= other.aleph_level

    def __lt__(self, other: "ExtCard") -> bool:
        if self.aleph_level is None:
            return other.aleph_level is not None or self.n < other.n
        return other.aleph_level is not None and self.aleph_level < other.aleph_level

    def __ge__(self, other: "ExtCard") -> bool:
        return other <= self

    def __gt__(self, other: "ExtCard") -> bool:
        return other < self

    def __add__(self, other: "ExtCard") -> "ExtCard":
        return card_sum([(self, FIN1), (other, FIN1)])

    def __mul__(self, other: "ExtCard") -> "ExtCard":
        return card_mul(self, other)

    def __str__(self) -> str:
        return render_card(self)

    def __repr__(self) -> str:
        if self.aleph_level is None:
            return f"fin({self.n})"
        return f"aleph({self.aleph_level})"


def fin(n: int) -> ExtCard:
    if 0 <= n < 256:
        return _FIN_CACHE[n]
    return ExtCard(n=n)


def aleph(level: int) -> ExtCard:
    return ExtCard(aleph_level=level)


_FIN_CACHE = tuple(ExtCard(n=i) for i in range(256))
ZERO = fin(0)
FIN1 = fin(1)
ALEPH0 = ExtCard(aleph_level=0)


def kappa_card() -> ExtCard:
    """The configured bound kappa = aleph_K."""
    return aleph(_MAX_ALEPH_LEVEL)


def infinite_levels(upto: ExtCard) -> list[ExtCard]:
    """All alephs aleph0 <= a <= upto, ascending."""
    if upto.is_finite:
        return []
    return [aleph(k) for k in range(upto.aleph_level + 1)]


def card_leq(a: ExtCard, b: ExtCard) -> bool:
    """Total order: all finite values < aleph0 < aleph1 < ..."""
    return a <= b


def card_max(items: Iterable[ExtCard]) -> ExtCard:
    out = ZERO
    for c in items:
        if out < c:
            out = c
    return out


def card_sum(items: Iterable[tuple[ExtCard, ExtCard]]) -> ExtCard:
    """Sum of a finite multiset of (value, count) pairs.

    Entries with value 0 or count 0 are absorbed.  If all values are finite
    and the total index count is finite, this is the ordinary integer sum;
    otherwise it is max(total index cardinality, sup of values).
    """
    total = 0   # integer sum when everything is finite
    top = -1    # largest aleph level seen in a value or an accumulated count
    for v, c in items:
        vl, cl = v.aleph_level, c.aleph_level
        if (vl is None and v.n == 0) or (cl is None and c.n == 0):
            continue
        if vl is not None and vl > top:
            top = vl
        if cl is None:
            if vl is None:
                total += v.n * c.n
        elif cl > top:
            top = cl
    if top < 0:
        return fin(_check_width(total))
    return ExtCard(aleph_level=top)


def card_mul(a: ExtCard, b: ExtCard) -> ExtCard:
    """Ordinary product when both finite; 0 absorbs; otherwise max(a, b)."""
    if a.is_zero or b.is_zero:
        return ZERO
    if a.is_finite and b.is_finite:
        return fin(_check_width(a.n * b.n))
    return a if b < a else b


def card_sub_least(a: ExtCard, b: ExtCard) -> Optional[ExtCard]:
    """Least c with b + c = a, or None if b > a (no such c exists)."""
    if a < b:
        return None
    if a.is_finite:
        return fin(a.n - b.n)
    if b < a:
        return a
    return ZERO  # a == b infinite; 0 is the least complement


@dataclass(frozen=True)
class CardBoundMode:
    """Summation bound: AtMost(kappa) admits index sets of cardinality <= kappa,
    Below(lam) only strictly smaller ones (lam regular; Below(aleph0) is a
    plain monoid)."""

    mode: str  # "at_most" | "below"
    card: ExtCard

    def __post_init__(self):
        if self.mode not in ("at_most", "below"):
            raise ValueError(f"unknown bound mode {self.mode!r}")
        if self.card.is_finite:
            raise ValueError("bound cardinal must be infinite")

    def admits(self, count: ExtCard) -> bool:
        if self.mode == "at_most":
            return count <= self.card
        return count < self.card

    def admissible_levels(self) -> list[ExtCard]:
        """Infinite cardinals usable as multiplicities under this bound."""
        k = self.card.aleph_level
        if self.mode == "below":
            k -= 1
        return [aleph(i) for i in range(k + 1)]

    def __str__(self) -> str:
        name = "at_most" if self.mode == "at_most" else "below"
        return f"{name}({self.card})"


def at_most(card: ExtCard) -> CardBoundMode:
    return CardBoundMode("at_most", card)


def below(card: ExtCard) -> CardBoundMode:
    return CardBoundMode("below", card)


_CARD_RE = re.compile(r"^(?:(\d+)|aleph\s*\(?\s*(\d+)\s*\)?|w)$", re.IGNORECASE)


def parse_card(text: str) -> ExtCard:
    """Parse a cardinal literal: ``0``, ``17``, ``aleph0`` .. ``aleph(K)``;
    case-insensitive, ``w`` is an alias for ``aleph0``."""
    m = _CARD_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a cardinal literal: {text!r}")
    if m.group(1) is not None:
        return fin(int(m.group(1)))
    if m.group(2) is not None:
        return aleph(int(m.group(2)))
    return ALEPH0


def render_card(c: ExtCard) -> str:
    if c.aleph_level is None:
        return str(c.n)
    return f"aleph{c.aleph_level}"
