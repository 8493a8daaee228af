"""Concrete monoids-with-infinite-summation drawn from module theory: the
trivial extension of a reduced monoid, the exact-rational line with its two
copies of each positive value, rank-and-class monoids over a finite abelian
group, and the membership predicate for the infinite part of the
stable-class monoid of a hereditary noetherian prime ring."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cardinals import (
    ALEPH0,
    CardBoundMode,
    ExtCard,
    ZERO,
    at_most,
    below,
    card_sum,
    fin,
    kappa_card,
)
from .core import CyclicExtensionMonoid, CyclicMonoid, Family, KappaMonoid
from .errors import PreconditionError
from .free_vectors import CardVec
from .tribool import TriBool, from_bool, no, yes

# -- trivial extension ----------------------------------------------------------


@dataclass(frozen=True)
class Inf:
    """The adjoined top element of a trivial extension."""

    def sort_key(self):
        return (2, "inf")

    def __str__(self):
        return "inf"


INF = Inf()


class TrivialExtensionMonoid(KappaMonoid):
    """A reduced base monoid plus a top element; any sum with infinite
    content is the top.  Generally different from the universal extension of
    the same base."""

    def __init__(self, base: KappaMonoid, bound: Optional[CardBoundMode] = None):
        if base.bound.admissible_levels():
            raise ValueError("trivial extension takes a plain (finite-sum) base")
        self.base = base
        self.bound = bound if bound is not None else at_most(kappa_card())
        self.name = f"trivial({base.name})"

    @property
    def zero(self):
        return self.base.zero

    def raw_ksum(self, fam: Family):
        zero = self.base.zero
        ents = [(e, m) for e, m in fam if not self.eq(e, zero).is_yes]
        if any(isinstance(e, Inf) for e, _ in ents):
            return INF
        if any(m.is_infinite for _, m in ents):
            return INF
        return self.base.raw_ksum(Family.of(ents))

    def eq(self, a, b) -> TriBool:
        ia, ib = isinstance(a, Inf), isinstance(b, Inf)
        if ia or ib:
            return from_bool(ia and ib)
        return self.base.eq(a, b)

    def sub(self, a, b):
        if isinstance(a, Inf):
            return INF  # b + inf = inf for every b
        if isinstance(b, Inf):
            return None
        return self.base.sub(a, b)

    def finite_multiple_leq(self, u, x, search_bound: int) -> TriBool:
        if isinstance(x, Inf):
            return no(note="the top element exceeds every finite multiple")
        if isinstance(u, Inf):
            return yes(witness=1)
        return self.base.finite_multiple_leq(u, x, search_bound)

    def sample_element(self, rng: random.Random):
        if rng.random() < 0.2:
            return INF
        return self.base.sample_element(rng)

    def canonical_order_unit(self):
        return self.base.canonical_order_unit()

    def canon(self, e):
        if isinstance(e, Inf):
            return e
        f = getattr(self.base, "canon", None)
        return f(e) if f is not None else e


def trivial_sum(t: TrivialExtensionMonoid, fam: Family):
    return t.ksum(fam)


def plain_n0() -> CyclicExtensionMonoid:
    return CyclicExtensionMonoid(CyclicMonoid(), below(ALEPH0))


# -- the exact-rational line ----------------------------------------------------


@dataclass(frozen=True)
class QPoint:
    """A point of the rational-line monoid: a plain non-negative rational, a
    tilde copy of a positive rational, or the top."""

    q: Fraction
    tag: str  # "plain" | "tilde" | "inf"

    def __post_init__(self):
        if self.tag not in ("plain", "tilde", "inf"):
            raise ValueError(f"bad tag {self.tag}")
        if self.tag == "tilde" and self.q <= 0:
            raise ValueError("tilde points are positive")
        if self.tag == "plain" and self.q < 0:
            raise ValueError("plain points are non-negative")

    @staticmethod
    def plain(q) -> "QPoint":
        return QPoint(Fraction(q), "plain")

    @staticmethod
    def tilde(q) -> "QPoint":
        return QPoint(Fraction(q), "tilde")

    def sort_key(self):
        order = {"plain": 0, "tilde": 1, "inf": 2}
        return (order[self.tag], self.q.numerator, self.q.denominator)

    def __str__(self):
        if self.tag == "inf":
            return "inf"
        s = str(self.q)
        return s if self.tag == "plain" else f"~{s}"


QINF = QPoint(Fraction(0), "inf")


class RationalLineMonoid(KappaMonoid):
    """Non-negative rationals, tilde copies of the positive ones, and a top;
    sums of infinite support land in the tilde copy, divergent ones at the
    top.  There is a single zero and a single top."""

    name = "qline"

    def __init__(self, bound: Optional[CardBoundMode] = None):
        self.bound = bound if bound is not None else at_most(kappa_card())

    @property
    def zero(self) -> QPoint:
        return QPoint.plain(0)

    def raw_ksum(self, fam: Family) -> QPoint:
        ents = [(e, m) for e, m in fam if not (e.tag == "plain" and e.q == 0)]
        if not ents:
            return self.zero
        if any(e.tag == "inf" for e, _ in ents):
            return QINF
        if any(m.is_infinite for _, m in ents):
            return QINF  # positive entries with infinite multiplicity diverge
        total = sum((e.q * m.n for e, m in ents), Fraction(0))
        if any(e.tag == "tilde" for e, _ in ents):
            return QPoint(total, "tilde")
        return QPoint(total, "plain")

    def eq(self, a: QPoint, b: QPoint) -> TriBool:
        return from_bool(a == b)

    def sub(self, a: QPoint, b: QPoint) -> Optional[QPoint]:
        if a.tag == "inf":
            return QINF
        if b.tag == "inf":
            return None
        if a.tag == "plain":
            if b.tag != "plain" or b.q > a.q:
                return None
            return QPoint.plain(a.q - b.q)
        # a is a tilde point
        if b.tag == "plain":
            if b.q > a.q:
                return None
            if b.q == a.q:
                return None  # would need tilde(0)
            return QPoint.tilde(a.q - b.q)
        if b.q > a.q:
            return None
        return QPoint.plain(a.q - b.q)

    def finite_multiple_leq(self, u: QPoint, x: QPoint, search_bound: int) -> TriBool:
        # exact by rational arithmetic; the search bound is never needed
        if x.tag == "inf":
            return no(note="top exceeds every finite multiple")
        if u.tag == "inf":
            return yes(witness=1)
        if x == self.zero:
            return yes(witness=0)
        if u.q == 0:
            return no(note="u is zero")
        if x.tag == "tilde":
            if u.tag == "tilde":
                return yes(witness=max(1, math.ceil(x.q / u.q)))
            return no(note="tilde points never sit below plain multiples")
        if u.tag == "tilde":
            return yes(witness=int(x.q / u.q) + 1)  # strict domination needed
        return yes(witness=math.ceil(x.q / u.q))

    def sample_element(self, rng: random.Random) -> QPoint:
        r = rng.random()
        if r < 0.1:
            return QINF
        q = Fraction(rng.randrange(0, 8), rng.randrange(1, 5))
        if r < 0.5 or q == 0:
            return QPoint.plain(q)
        return QPoint.tilde(q)

    def canonical_order_unit(self) -> QPoint:
        return QPoint.plain(1)


def line_sum(fam: Family, bound: Optional[CardBoundMode] = None) -> QPoint:
    return RationalLineMonoid(bound).ksum(fam)


# -- rank-and-class monoids over a finite abelian group --------------------------


@dataclass(frozen=True)
class RankClass:
    """Zero, a finite rank with a class in the group, or a pure infinite
    rank (the class collapses at infinite rank)."""

    rank: ExtCard
    cls: tuple[int, ...]

    def sort_key(self):
        return (self.rank.sort_key(), self.cls)

    def __str__(self):
        if self.rank.is_zero:
            return "0"
        if self.rank.is_infinite:
            return f"({self.rank})"
        return f"({self.rank},{'+'.join(map(str, self.cls))})"


class DedekindVMonoid(KappaMonoid):
    """Projective-module style monoid over a Dedekind-like base: an element
    is a rank together with an ideal class, and any infinite rank forgets the
    class.  Elements with rank 0 have trivial class."""

    def __init__(self, factors: tuple[int, ...], bound: Optional[CardBoundMode] = None):
        if not all(f >= 1 for f in factors):
            raise ValueError("invariant factors are positive")
        self.factors = tuple(factors)
        self.bound = bound if bound is not None else at_most(kappa_card())
        self.name = f"dedekind({','.join(map(str, factors))})"

    @property
    def zero(self) -> RankClass:
        return RankClass(ZERO, tuple(0 for _ in self.factors))

    def elem(self, rank, cls=None) -> RankClass:
        rank = fin(rank) if isinstance(rank, int) else rank
        if rank.is_zero or rank.is_infinite:
            return RankClass(rank, tuple(0 for _ in self.factors))
        cls = tuple(cls) if cls is not None else tuple(0 for _ in self.factors)
        return RankClass(rank, tuple(c % f for c, f in zip(cls, self.factors)))

    def _gsum(self, items) -> tuple[int, ...]:
        out = [0] * len(self.factors)
        for cls, k in items:
            for i, c in enumerate(cls):
                out[i] = (out[i] + c * k) % self.factors[i]
        return tuple(out)

    def raw_ksum(self, fam: Family) -> RankClass:
        ents = [(e, m) for e, m in fam if not e.rank.is_zero]
        if not ents:
            return self.zero
        total = card_sum((e.rank, m) for e, m in ents)
        if total.is_infinite:
            return RankClass(total, tuple(0 for _ in self.factors))
        cls = self._gsum((e.cls, m.n) for e, m in ents)
        return RankClass(total, cls)

    def eq(self, a: RankClass, b: RankClass) -> TriBool:
        return from_bool(a == b)

    def sub(self, a: RankClass, b: RankClass) -> Optional[RankClass]:
        if b.rank.is_zero:
            return a
        if a.rank.is_infinite:
            if not b.rank <= a.rank:
                return None
            if b.rank == a.rank:
                return self.zero  # least complement
            return a
        if b.rank.is_infinite or not b.rank <= a.rank:
            return None
        if a.rank == b.rank:
            return self.zero if a.cls == b.cls else None
        diff = tuple(
            (x - y) % f for x, y, f in zip(a.cls, b.cls, self.factors)
        )
        return RankClass(fin(a.rank.n - b.rank.n), diff)

    def finite_multiple_leq(self, u: RankClass, x: RankClass, search_bound: int) -> TriBool:
        # exact: a strictly smaller positive rank is always a summand, so the
        # scan is bounded by the rank of x plus one
        if x.rank.is_infinite:
            return no(note="infinite rank exceeds every finite multiple")
        if u.rank.is_zero:
            return from_bool(x.rank.is_zero, witness=0)
        bound = 2 if u.rank.is_infinite else x.rank.n + 2
        acc = self.zero
        for n in range(bound):
            if self.leq(x, acc).is_yes:
                return yes(witness=n)
            acc = self.add(acc, u)
        return no()

    def sample_element(self, rng: random.Random) -> RankClass:
        r = rng.random()
        if r < 0.15:
            return self.zero
        if r < 0.35:
            return RankClass(
                rng.choice(self.bound.admissible_levels()),
                tuple(0 for _ in self.factors),
            )
        return self.elem(
            rng.randrange(1, 5), [rng.randrange(f) for f in self.factors]
        )

    def canonical_order_unit(self) -> RankClass:
        return self.elem(1)

    def member_pair(self, rank: ExtCard, cls: tuple[int, ...]) -> bool:
        """The defining predicate: a pair is an element iff the rank is a
        positive finite one, or the class is trivial."""
        if rank.is_zero or rank.is_infinite:
            return all(c % f == 0 for c, f in zip(cls, self.factors))
        return True


def dedekind_sum(d: DedekindVMonoid, fam: Family) -> RankClass:
    return d.ksum(fam)


# -- hereditary noetherian prime rings: the infinite part ------------------------


@dataclass(frozen=True)
class HNPInfiniteVec:
    """A candidate infinite stable class over a finite index set with
    distinguished index 0 and positive local ranks."""

    x: CardVec
    c: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.x) != len(self.c):
            raise ValueError("rank vector and local ranks differ in length")
        if any(ci <= 0 for ci in self.c):
            raise ValueError("local ranks are positive")


@dataclass(frozen=True)
class HNPPredicate:
    """CLI-addressable membership predicate for the infinite part; not a
    summation structure."""

    c: tuple[Fraction, ...]

    @property
    def name(self) -> str:
        return f"hnp(c={','.join(str(q) for q in self.c)})"

    def member(self, x: CardVec, kappa: ExtCard) -> bool:
        return hnp_member(HNPInfiniteVec(x, self.c), kappa)


def hnp_member(v: HNPInfiniteVec, kappa: ExtCard) -> bool:
    """Membership of the infinite part: the distinguished coordinate must be
    infinite and dominate the others, and (with positive local ranks over a
    finite index set) every coordinate must be infinite."""
    x0 = v.x[0]
    if not x0.is_infinite:
        raise PreconditionError("the distinguished coordinate must be infinite")
    if not x0 <= kappa:
        return False
    for i in range(len(v.x)):
        if not v.x[i] <= x0:
            return False
    # finitely many indices: a finite coordinate would sit below n*c_i for
    # large n ever after, which the defining condition forbids
    return all(v.x[i].is_infinite for i in range(len(v.x)))
