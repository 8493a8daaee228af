"""The abstract monoid-with-infinite-summation contract and concrete cyclic
monoids.

A ``KappaMonoid`` carries a zero, a summation over families, and a (possibly
three-valued) equality predicate.  Families are order-free finite multisets of
``(element, cardinal multiplicity)`` pairs; re-labelling invariance of the
summation is thereby a representation invariant rather than an axiom to check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable, Optional

from .cardinals import (
    ALEPH0,
    CardBoundMode,
    ExtCard,
    FIN1,
    ZERO,
    at_most,
    card_mul,
    card_sub_least,
    card_sum,
    fin,
    infinite_levels,
    kappa_card,
)
from .errors import BoundExceededError, PreconditionError
from .tribool import TriBool, from_bool, no, unknown, yes

DEFAULT_SEARCH_BOUND = 64


def sort_key(x: Any):
    # namespaced by type so heterogeneous elements stay comparable
    sk = getattr(x, "sort_key", None)
    if sk is not None:
        return (type(x).__name__, sk())
    return ("~" + type(x).__name__, str(x))


@dataclass(frozen=True)
class Family:
    """Finite multiset of (element, multiplicity) pairs, multiplicities >= 1.

    Canonical form merges equal elements by cardinal addition of their
    multiplicities and sorts entries by a stable element key.
    """

    entries: tuple[tuple[Any, ExtCard], ...]

    @staticmethod
    def of(pairs: Iterable[tuple[Any, ExtCard]]) -> "Family":
        merged: dict[Any, list] = {}
        order: list[Any] = []
        for elem, mult in pairs:
            if mult.is_zero:
                continue
            if elem in merged:
                merged[elem].append((mult, FIN1))
            else:
                merged[elem] = [(mult, FIN1)]
                order.append(elem)
        if not order:
            return Family(())
        items = [
            (e, ms[0][0] if len(ms) == 1 else card_sum(ms))
            for e, ms in ((e, merged[e]) for e in order)
        ]
        if len(items) > 1:
            items.sort(key=lambda p: (sort_key(p[0]), p[1].sort_key()))
        return Family(tuple(items))

    @staticmethod
    def empty() -> "Family":
        return Family(())

    def mult_of(self, elem: Any) -> ExtCard:
        for e, m in self.entries:
            if e == elem:
                return m
        return ZERO

    def index_card(self) -> ExtCard:
        """Total index cardinality (all entries, zeros included)."""
        return card_sum((m, FIN1) for _, m in self.entries)

    def add(self, other: "Family") -> "Family":
        return Family.of(self.entries + other.entries)

    def scale(self, a: ExtCard) -> "Family":
        if a.is_zero:
            return Family.empty()
        return Family.of((e, card_mul(a, m)) for e, m in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        inner = ", ".join(f"{e}*{m}" for e, m in self.entries)
        return "{" + inner + "}"


def flatten(outer: Family) -> Family:
    """Flatten a family of families: multiset union with multiplicities
    multiplied through (the representation-level flattening axiom)."""
    pairs: list[tuple[Any, ExtCard]] = []
    for inner, mult in outer:
        for e, m in inner:
            pairs.append((e, card_mul(mult, m)))
    return Family.of(pairs)


class KappaMonoid:
    """Interface for monoids with summation over families within a bound.

    Implementations must be immutable and free of shared mutable state.
    Equality may be three-valued; laws are asserted only on decided pairs.
    """

    name: str = "monoid"
    bound: CardBoundMode

    @property
    def zero(self) -> Any:
        raise NotImplementedError

    def raw_ksum(self, fam: Family) -> Any:
        raise NotImplementedError

    def eq(self, a: Any, b: Any) -> TriBool:
        return from_bool(a == b)

    def support_card(self, fam: Family) -> ExtCard:
        z = self.zero
        return card_sum((m, FIN1) for e, m in fam if not self.eq(e, z).is_yes)

    def check_bound(self, fam: Family) -> None:
        cnt = self.support_card(fam)
        if not self.bound.admits(cnt):
            raise BoundExceededError(
                f"family index cardinality {cnt} violates bound {self.bound}"
            )

    def ksum(self, fam: Family) -> Any:
        self.check_bound(fam)
        return self.raw_ksum(fam)

    def add(self, a: Any, b: Any) -> Any:
        return self.raw_ksum(Family.of([(a, FIN1), (b, FIN1)]))

    def scalar(self, a: ExtCard, x: Any) -> Any:
        if a.is_zero:
            return self.zero
        return self.ksum(Family.of([(x, a)]))

    def leq(self, a: Any, b: Any) -> TriBool:
        """Does some c satisfy a + c = b?  (The algebraic preorder.)"""
        c = self.sub(b, a)
        if c is None:
            return no()
        return yes(witness=c)

    def sub(self, a: Any, b: Any) -> Optional[Any]:
        """A canonical c with b + c = a, or None when there is none (or it is
        not known how to find one)."""
        raise NotImplementedError

    def finite_multiple_leq(self, u: Any, x: Any, search_bound: int) -> TriBool:
        """Is x <= n*u for some finite n?  Default: bounded search, Unknown on
        exhaustion; the scan is exact when the multiples stabilize, and
        concrete monoids override with fully exact answers."""
        acc = self.zero
        for n in range(search_bound + 1):
            if self.leq(x, acc).is_yes:
                return yes(witness=n)
            nxt = self.add(acc, u)
            if self.eq(nxt, acc).is_yes:
                return no(note=f"multiples of u stabilize at {acc}")
            acc = nxt
        return unknown(note=f"no finite multiple found up to {search_bound}")

    def sample_element(self, rng: random.Random) -> Any:
        raise NotImplementedError

    def sample_mults(self) -> list[ExtCard]:
        return [fin(1), fin(2), fin(3)] + self.bound.admissible_levels()

    def sample_family(self, rng: random.Random, max_entries: int = 4) -> Family:
        mults = self.sample_mults()
        k = rng.randrange(max_entries + 1)
        return Family.of(
            (self.sample_element(rng), rng.choice(mults)) for _ in range(k)
        )

    def canonical_order_unit(self) -> Optional[Any]:
        """An order-unit to exercise order-unit laws against, if one is known."""
        return None


# -- derived operations -------------------------------------------------------


def ksum(m: KappaMonoid, fam: Family) -> Any:
    return m.ksum(fam)


def scalar(m: KappaMonoid, a: ExtCard, x: Any) -> Any:
    return m.scalar(a, x)


def is_reduced_witness(m: KappaMonoid, a: Any, b: Any) -> bool:
    """Precondition a + b = 0; returns whether a = 0 = b (always true in a
    lawful monoid -- the swindle)."""
    if not m.eq(m.add(a, b), m.zero).is_yes:
        raise PreconditionError("a + b = 0 does not hold")
    return m.eq(a, m.zero).is_yes and m.eq(b, m.zero).is_yes


def _top_multiple(m: KappaMonoid) -> ExtCard:
    """The scalar used for 'kappa times u' under the monoid's bound."""
    if m.bound.mode == "at_most":
        return m.bound.card
    levels = m.bound.admissible_levels()
    return levels[-1] if levels else ALEPH0  # Below(aleph0): no top; caller guards


def order_unit_check(m: KappaMonoid, u: Any, probes: Iterable[Any]) -> TriBool:
    """True iff every probe x admits x' with x + x' = kappa*u."""
    if m.bound.mode == "below" and not m.bound.admissible_levels():
        # plain monoid: classic order-unit, bounded search over finite multiples
        for x in probes:
            r = m.finite_multiple_leq(u, x, DEFAULT_SEARCH_BOUND)
            if not r.is_yes:
                return r
        return yes()
    top = m.scalar(_top_multiple(m), u)
    for x in probes:
        r = m.leq(x, top)
        if not r.is_yes:
            return no(witness=x) if r.is_no else r
    return yes()


def size_of(
    m: KappaMonoid, u: Any, x: Any, search_bound: int = DEFAULT_SEARCH_BOUND
) -> ExtCard:
    """0 if x <= n*u for some finite n, else the least infinite a with
    x <= a*u.  Raises SearchExhausted via Unknown when the finite search
    cannot be decided."""
    from .errors import SearchExhausted

    r = m.finite_multiple_leq(u, x, search_bound)
    if r.is_yes:
        return ZERO
    if r.is_unknown:
        raise SearchExhausted(str(r.note))
    if m.bound.admissible_levels():
        for a in infinite_levels(_top_multiple(m)):
            if m.leq(x, m.scalar(a, u)).is_yes:
                return a
    raise PreconditionError("u is not an order-unit for x")


def absorb_big(m: KappaMonoid, u: Any, t: Any, l: Any) -> bool:
    """Precondition t = kappa*u + l; asserts t = kappa*u."""
    top = m.scalar(_top_multiple(m), u)
    if not m.eq(t, m.add(top, l)).is_yes:
        raise PreconditionError("t = kappa*u + l does not hold")
    return m.eq(t, top).is_yes


def in_add(
    m: KappaMonoid, y: Any, x: Any, n_bound: int = DEFAULT_SEARCH_BOUND
) -> TriBool:
    """Is y a summand of a finite multiple of x (divisor-closed submonoid
    membership)?"""
    acc = m.zero
    for n in range(n_bound + 1):
        if m.leq(y, acc).is_yes:
            return yes(witness=n)
        acc = m.add(acc, x)
    return unknown(note=f"not found with multiples up to {n_bound}")


# -- cyclic monoids ------------------------------------------------------------


@dataclass(frozen=True)
class CyclicMonoid:
    """A cyclic commutative monoid: the free one (m is None) or C_{m,n} with
    m + n elements, where classes k and l coincide iff k = l or n divides
    |k - l| and min(k, l) >= m."""

    m: Optional[int] = None  # None = free
    n: int = 1

    def __post_init__(self):
        if self.m is not None and (self.m < 0 or self.n < 1):
            raise ValueError("need m >= 0 and n >= 1")

    @property
    def is_free(self) -> bool:
        return self.m is None

    @property
    def is_reduced(self) -> bool:
        return self.m is None or self.m >= 1

    def canon(self, k: int) -> int:
        if self.m is None or k < self.m:
            return k
        return self.m + (k - self.m) % self.n

    def add(self, a: int, b: int) -> int:
        return self.canon(a + b)

    def __str__(self):
        return "N0" if self.m is None else f"cmn({self.m},{self.n})"


class CyclicExtensionMonoid(KappaMonoid):
    """The faithful extension of a reduced cyclic monoid by the chain of
    infinite cardinals up to the configured bound.

    Elements are ExtCard values; finite values are canonical class
    representatives, infinite values are the adjoined cardinals.  The free
    case is exactly the monoid of all cardinals up to the bound.
    """

    def __init__(self, cyc: CyclicMonoid, bound: Optional[CardBoundMode] = None):
        if not cyc.is_reduced:
            raise ValueError(
                "faithful extension needs a reduced cyclic monoid (m >= 1 or free)"
            )
        self.cyc = cyc
        self.bound = bound if bound is not None else at_most(kappa_card())
        self.name = f"cyclic-ext({cyc})"

    @property
    def zero(self) -> ExtCard:
        return ZERO

    def canon(self, x: ExtCard) -> ExtCard:
        if x.is_finite:
            return fin(self.cyc.canon(x.n))
        return x

    def raw_ksum(self, fam: Family) -> ExtCard:
        ents = [(self.canon(e), m) for e, m in fam if not self.canon(e).is_zero]
        if not ents:
            return ZERO
        support = card_sum((m, FIN1) for _, m in ents)
        if support.is_finite and all(e.is_finite for e, _ in ents):
            total = 0
            for e, m in ents:
                total = self.cyc.add(total, self.cyc.canon(e.n * m.n))
            return fin(total)
        # infinite content: the class structure collapses to cardinal size
        return card_sum(ents)

    def eq(self, a: ExtCard, b: ExtCard) -> TriBool:
        return from_bool(self.canon(a) == self.canon(b))

    def sub(self, a: ExtCard, b: ExtCard) -> Optional[ExtCard]:
        a, b = self.canon(a), self.canon(b)
        if a.is_infinite or b.is_infinite:
            return card_sub_least(a, b)  # least complement, 0 at equal alephs
        if self.cyc.is_free:
            return fin(a.n - b.n) if b.n <= a.n else None
        span = self.cyc.m + self.cyc.n
        for c in range(span):
            if self.cyc.add(b.n, c) == a.n:
                return fin(c)
        return None

    def finite_multiple_leq(self, u: ExtCard, x: ExtCard, search_bound: int) -> TriBool:
        x = self.canon(x)
        if x.is_infinite:
            return no(note="infinite element exceeds every finite multiple")
        return super().finite_multiple_leq(u, x, search_bound)

    def sample_element(self, rng: random.Random) -> ExtCard:
        levels = self.bound.admissible_levels()
        if levels and rng.random() < 0.25:
            return rng.choice(levels)
        span = 8 if self.cyc.is_free else self.cyc.m + self.cyc.n
        return fin(rng.randrange(span))

    def canonical_order_unit(self) -> ExtCard:
        return FIN1
