"""Free monoids on a finite basis: fixed-length vectors of cardinals with
coordinatewise summation."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Optional

from .cardinals import (
    CardBoundMode,
    ExtCard,
    FIN1,
    ZERO,
    at_most,
    card_sub_least,
    card_sum,
    fin,
    kappa_card,
)
from .core import Family, KappaMonoid
from .errors import DimensionError
from .tribool import TriBool, from_bool, no, yes


@dataclass(frozen=True)
class CardVec:
    """Element of the rank-n free monoid: an n-tuple of cardinals."""

    coords: tuple[ExtCard, ...]

    @staticmethod
    def of(*cs: ExtCard) -> "CardVec":
        return CardVec(tuple(cs))

    @staticmethod
    def fins(*ns: int) -> "CardVec":
        return CardVec(tuple(fin(n) for n in ns))

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> ExtCard:
        return self.coords[i]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def vec_zero(n: int) -> CardVec:
    return CardVec(tuple(ZERO for _ in range(n)))


class VecMonoid(KappaMonoid):
    """F^n with coordinatewise cardinal summation, under an AtMost or Below
    bound (Below(aleph0) gives the plain finite-vector monoid)."""

    def __init__(self, n: int, bound: Optional[CardBoundMode] = None):
        self.n = n
        self.bound = bound if bound is not None else at_most(kappa_card())
        self.name = f"vec({n})@{self.bound}"

    @property
    def zero(self) -> CardVec:
        return vec_zero(self.n)

    def _check_dim(self, v: CardVec) -> None:
        if len(v) != self.n:
            raise DimensionError(f"expected length {self.n}, got {len(v)}")

    def raw_ksum(self, fam: Family) -> CardVec:
        for v, _ in fam:
            self._check_dim(v)
        coords = tuple(
            card_sum((v[i], m) for v, m in fam) for i in range(self.n)
        )
        return CardVec(coords)

    def eq(self, a: CardVec, b: CardVec) -> TriBool:
        return from_bool(a == b)

    def sub(self, a: CardVec, b: CardVec) -> Optional[CardVec]:
        out = []
        for i in range(self.n):
            d = card_sub_least(a[i], b[i])
            if d is None:
                return None
            out.append(d)
        return CardVec(tuple(out))

    def finite_multiple_leq(self, u: CardVec, x: CardVec, search_bound: int) -> TriBool:
        # exact: x <= n*u for some finite n iff coordinatewise x_i is finite
        # wherever u_i > 0 and zero wherever u_i = 0
        need = 0
        for i in range(self.n):
            if x[i].is_zero:
                continue
            if u[i].is_zero:
                return no(note=f"coordinate {i}: {x[i]} vs 0 forever")
            if x[i].is_infinite:
                return no(note=f"coordinate {i} is infinite")
            need = max(need, 1 if u[i].is_infinite else -(-x[i].n // u[i].n))
        return yes(witness=need)

    def sample_element(self, rng: random.Random) -> CardVec:
        levels = self.bound.admissible_levels()
        out = []
        for _ in range(self.n):
            if levels and rng.random() < 0.3:
                out.append(rng.choice(levels))
            else:
                out.append(fin(rng.randrange(5)))
        return CardVec(tuple(out))

    def canonical_order_unit(self) -> CardVec:
        return CardVec(tuple(FIN1 for _ in range(self.n)))


def vec_ksum(fams: Family, n: Optional[int] = None) -> CardVec:
    """Coordinatewise sum with multiplicities of a family of equal-length
    vectors."""
    if len(fams) == 0:
        if n is None:
            raise DimensionError("empty family needs an explicit length")
        return vec_zero(n)
    dim = len(fams.entries[0][0])
    return VecMonoid(dim).ksum(fams)


def free_extend_hom(images: list[Any], target: KappaMonoid, x: CardVec) -> Any:
    """The unique homomorphism out of the free monoid determined by generator
    images, evaluated at x: the target-sum of images weighted by coordinates."""
    if len(images) != len(x):
        raise DimensionError(f"{len(images)} images for length-{len(x)} vector")
    fam = Family.of(
        (img, c) for img, c in zip(images, x.coords) if not c.is_zero
    )
    return target.ksum(fam)
