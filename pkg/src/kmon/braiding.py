"""Braiding certificates: finite witnesses that two families interleave into
each other through a chain of shared blocks.

An omega certificate is a prefix of blocks followed by a periodic cycle; each
block consumes a finite chunk of both families and threads carry elements
``u`` (shared by the two block equations) and ``v`` (passed to the next
block).  Layered certificates glue weighted omega layers for families with
multiplicities above aleph0; collapsed certificates witness the simpler
block-sum-equality form that the relation degenerates to above aleph0.
"""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass
from typing import Any, Optional

from .cardinals import ALEPH0, ExtCard, FIN1, card_sum, fin
from .core import Family, KappaMonoid, sort_key
from .free_vectors import CardVec
from .tribool import TriBool, no, unknown, yes

DEFAULT_BUDGET = 5000
BLOCK_CAP = 8


def _canon(m: KappaMonoid, e: Any) -> Any:
    f = getattr(m, "canon", None)
    return f(e) if f is not None else e


def canonical_family(m: KappaMonoid, fam: Family) -> Family:
    """Canonicalize elements through the monoid and drop zero entries."""
    z = m.zero
    return Family.of(
        (_canon(m, e), mult) for e, mult in fam if not m.eq(e, z).is_yes
    )


@dataclass(frozen=True)
class BraidBlock:
    iblock: Family  # chunk of the x-family
    jblock: Family  # chunk of the y-family
    u: Any
    v_next: Any


@dataclass(frozen=True)
class OmegaCertificate:
    prefix: tuple[BraidBlock, ...] = ()
    cycle: tuple[BraidBlock, ...] = ()

    @property
    def kind(self) -> str:
        return "omega"


@dataclass(frozen=True)
class LayeredCertificate:
    layers: tuple[tuple[ExtCard, OmegaCertificate], ...]  # (weight, layer)

    @property
    def kind(self) -> str:
        return "layered"


@dataclass(frozen=True)
class CollapsedCertificate:
    blocks: tuple[tuple[Family, Family, ExtCard], ...]  # (iblock, jblock, weight)

    @property
    def kind(self) -> str:
        return "collapsed"


Certificate = Any  # OmegaCertificate | LayeredCertificate | CollapsedCertificate


# -- verification ---------------------------------------------------------------


def _block_counts(blocks, side: str) -> dict:
    counts: dict[Any, int] = {}
    for b in blocks:
        fam = b.iblock if side == "i" else b.jblock
        for e, mult in fam:
            if mult.is_infinite:
                return None  # omega blocks must be finite
            counts[e] = counts.get(e, 0) + mult.n
    return counts


def _chain_check(m: KappaMonoid, cert: OmegaCertificate) -> TriBool:
    """Block equations and the cycle seam, threading v through the chain."""
    memfn = getattr(m, "member", None)
    if memfn is not None:
        for b in cert.prefix + cert.cycle:
            if not memfn(b.u) or not memfn(b.v_next):
                return no(note="carry element outside the monoid", witness=b)
    v = m.zero
    for b in cert.prefix:
        r1 = m.eq(m.ksum(b.iblock), m.add(v, b.u))
        if not r1.is_yes:
            return r1 if r1.is_unknown else no(note="prefix block equation fails", witness=b)
        r2 = m.eq(m.ksum(b.jblock), m.add(b.v_next, b.u))
        if not r2.is_yes:
            return r2 if r2.is_unknown else no(note="prefix block equation fails", witness=b)
        v = b.v_next
    if not cert.cycle:
        r = m.eq(v, m.zero)
        if not r.is_yes:
            return r if r.is_unknown else no(note="prefix ends with nonzero carry")
        return yes()
    entry = v
    for b in cert.cycle:
        r1 = m.eq(m.ksum(b.iblock), m.add(v, b.u))
        if not r1.is_yes:
            return r1 if r1.is_unknown else no(note="cycle block equation fails", witness=b)
        r2 = m.eq(m.ksum(b.jblock), m.add(b.v_next, b.u))
        if not r2.is_yes:
            return r2 if r2.is_unknown else no(note="cycle block equation fails", witness=b)
        v = b.v_next
    r = m.eq(v, entry)
    if not r.is_yes:
        return r if r.is_unknown else no(note="cycle seam mismatch")
    return yes()


def _omega_consumption(cert: OmegaCertificate, side: str) -> Optional[dict]:
    """Element -> consumed cardinal over the whole omega chain."""
    pc = _block_counts(cert.prefix, side)
    cc = _block_counts(cert.cycle, side)
    if pc is None or cc is None:
        return None
    out: dict[Any, ExtCard] = {}
    for e in set(pc) | set(cc):
        out[e] = ALEPH0 if cc.get(e, 0) > 0 else fin(pc.get(e, 0))
    return out


def _counts_match(m: KappaMonoid, fam: Family, got: dict) -> TriBool:
    want = {e: mult for e, mult in canonical_family(m, fam)}
    got = {k: v for k, v in got.items() if not v.is_zero}
    if set(want) != set(got):
        missing = set(want) ^ set(got)
        return no(note=f"consumption mismatch on {sorted(map(str, missing))}")
    for e, mult in want.items():
        if got[e] != mult:
            return no(note=f"consumption of {e}: {got[e]} != {mult}")
    return yes()


def _verify_omega(
    m: KappaMonoid, xfam: Family, yfam: Family, cert: OmegaCertificate, lam: ExtCard
) -> TriBool:
    for b in cert.prefix + cert.cycle:
        for fam in (b.iblock, b.jblock):
            if not fam.index_card() < lam:
                return no(note=f"block size {fam.index_card()} not below {lam}")
    r = _chain_check(m, cert)
    if not r.is_yes:
        return r
    for side, fam in (("i", xfam), ("j", yfam)):
        cons = _omega_consumption(cert, side)
        if cons is None:
            return no(note="omega blocks must have finite multiplicities")
        cons = {_canon(m, e): v for e, v in cons.items()}
        r = _counts_match(m, fam, cons)
        if not r.is_yes:
            return r
    return yes()


def _verify_layered(
    m: KappaMonoid, xfam: Family, yfam: Family, cert: LayeredCertificate, lam: ExtCard
) -> TriBool:
    totals_i: dict[Any, list] = {}
    totals_j: dict[Any, list] = {}
    for weight, layer in cert.layers:
        if weight.is_zero:
            return no(note="layer weights must be >= 1")
        r = _chain_check(m, layer)
        if not r.is_yes:
            return r
        for b in layer.prefix + layer.cycle:
            for fam in (b.iblock, b.jblock):
                if not fam.index_card() < lam:
                    return no(note="layer block too large")
        for side, totals in (("i", totals_i), ("j", totals_j)):
            cons = _omega_consumption(layer, side)
            if cons is None:
                return no(note="omega blocks must have finite multiplicities")
            for e, c in cons.items():
                totals.setdefault(_canon(m, e), []).append((c, weight))
    got_i = {e: card_sum((c, w) for c, w in lst) for e, lst in totals_i.items()}
    got_j = {e: card_sum((c, w) for c, w in lst) for e, lst in totals_j.items()}
    r = _counts_match(m, xfam, got_i)
    if not r.is_yes:
        return r
    return _counts_match(m, yfam, got_j)


def _verify_collapsed(
    m: KappaMonoid, xfam: Family, yfam: Family, cert: CollapsedCertificate, lam: ExtCard
) -> TriBool:
    if lam <= ALEPH0:
        return no(note="collapsed certificates require lambda above aleph0")
    totals_i: dict[Any, list] = {}
    totals_j: dict[Any, list] = {}
    for ib, jb, weight in cert.blocks:
        if weight.is_zero:
            return no(note="block weights must be >= 1")
        if not ib.index_card() < lam or not jb.index_card() < lam:
            return no(note="collapsed block too large")
        r = m.eq(m.ksum(ib), m.ksum(jb))
        if not r.is_yes:
            return r if r.is_unknown else no(note="collapsed block sums differ")
        for fam, totals in ((ib, totals_i), (jb, totals_j)):
            for e, mult in fam:
                totals.setdefault(_canon(m, e), []).append((mult, weight))
    got_i = {e: card_sum((c, w) for c, w in lst) for e, lst in totals_i.items()}
    got_j = {e: card_sum((c, w) for c, w in lst) for e, lst in totals_j.items()}
    r = _counts_match(m, xfam, got_i)
    if not r.is_yes:
        return r
    return _counts_match(m, yfam, got_j)


def verify(
    m: KappaMonoid,
    xfam: Family,
    yfam: Family,
    cert: Certificate,
    lam: ExtCard = ALEPH0,
) -> TriBool:
    """Check the block equations, seam conditions, and consumption accounting
    of a certificate against the two families."""
    if isinstance(cert, OmegaCertificate):
        return _verify_omega(m, xfam, yfam, cert, lam)
    if isinstance(cert, LayeredCertificate):
        return _verify_layered(m, xfam, yfam, cert, lam)
    if isinstance(cert, CollapsedCertificate):
        return _verify_collapsed(m, xfam, yfam, cert, lam)
    return no(note=f"unknown certificate kind {type(cert).__name__}")


def telescope(m: KappaMonoid, cert: Certificate, xfam: Family, yfam: Family):
    """The two family sums; equal whenever the certificate verifies."""
    return m.ksum(xfam), m.ksum(yfam)


# -- symmetry -------------------------------------------------------------------


class _Chain:
    """Position-indexed view of an omega certificate, with implicit empty
    blocks past a finite prefix."""

    def __init__(self, m: KappaMonoid, cert: OmegaCertificate):
        self.m = m
        self.p = list(cert.prefix)
        self.c = list(cert.cycle)

    def block(self, mu: int) -> Optional[BraidBlock]:
        if mu < len(self.p):
            return self.p[mu]
        if not self.c:
            return None
        return self.c[(mu - len(self.p)) % len(self.c)]

    def u(self, mu: int):
        b = self.block(mu)
        return self.m.zero if b is None else b.u

    def v_next(self, mu: int):
        b = self.block(mu)
        return self.m.zero if b is None else b.v_next

    def v_in(self, mu: int):
        return self.m.zero if mu == 0 else self.v_next(mu - 1)

    def iblock(self, mu: int) -> Family:
        b = self.block(mu)
        return Family.empty() if b is None else b.iblock

    def jblock(self, mu: int) -> Family:
        b = self.block(mu)
        return Family.empty() if b is None else b.jblock

    def finite_len(self) -> Optional[int]:
        return len(self.p) if not self.c else None


def flip(m: KappaMonoid, cert: OmegaCertificate) -> OmegaCertificate:
    """Certificate for the swapped pair, by the index shift: the new block at
    a position reuses the old j-chunk as its i-chunk and pulls the next old
    i-chunk over, with the limit position absorbing the extra block."""
    ch = _Chain(m, cert)
    p, c = len(cert.prefix), len(cert.cycle)
    p_new = max(p, 1)
    blocks = []
    for mu in range(p_new + c):
        if mu == 0:
            ib = ch.jblock(0)
            jb = ch.iblock(0).add(ch.iblock(1))
            u = m.add(ch.u(0), ch.v_next(0))
            vn = ch.u(1)
        else:
            ib = ch.jblock(mu)
            jb = ch.iblock(mu + 1)
            u = ch.v_next(mu)
            vn = ch.u(mu + 1)
        blocks.append(BraidBlock(ib, jb, u, vn))
    return OmegaCertificate(tuple(blocks[:p_new]), tuple(blocks[p_new:]))


def flip_any(m: KappaMonoid, cert: Certificate) -> Certificate:
    if isinstance(cert, OmegaCertificate):
        return flip(m, cert)
    if isinstance(cert, LayeredCertificate):
        return LayeredCertificate(tuple((w, flip(m, lay)) for w, lay in cert.layers))
    if isinstance(cert, CollapsedCertificate):
        return CollapsedCertificate(tuple((jb, ib, w) for ib, jb, w in cert.blocks))
    raise TypeError(type(cert).__name__)


# -- composition ----------------------------------------------------------------


def _fam_counts(fam: Family) -> dict:
    return {e: mult.n for e, mult in fam if mult.is_finite}


@dataclass
class _Super:
    """One aligned superblock: a consecutive run of each chain."""

    x: Family
    z: Family
    u1: Any  # merged u of the x/y chain over this run
    v1_in: Any
    g2: Any  # merged u of the y/z chain over this run
    h2_in: Any
    s_val: Any = None  # sum of the y-overshoot after this superblock
    t_val: Any = None  # sum of the y-shortfall closed by the next A-step


def _merge_run(m: KappaMonoid, ch: _Chain, start: int, end: int, side: str):
    """Merged chunk and chain data of consecutive positions start..end-1."""
    chunk = Family.empty()
    if start >= end:
        return chunk, m.zero, ch.v_in(start)
    u = ch.u(start)
    for mu in range(start + 1, end):
        u = m.add(u, m.add(ch.v_in(mu), ch.u(mu)))
    for mu in range(start, end):
        chunk = chunk.add(ch.iblock(mu) if side == "i" else ch.jblock(mu))
    return chunk, u, ch.v_in(start)


def _compose_walk(
    m: KappaMonoid,
    c1: _Chain,
    c2: _Chain,
    budget: int,
) -> Optional[tuple[list[_Super], int, int]]:
    """Align the two chains along the shared middle family.

    Returns (superblocks, cycle_start, cycle_period) with period 0 for the
    finite case; None when alignment fails within the budget."""
    diff: dict[Any, int] = {}  # middle-family counts: chain1 minus chain2

    def bump(fam: Family, sign: int):
        for e, mult in fam:
            if mult.is_infinite:
                raise ValueError("omega chains have finite blocks")
            k = diff.get(e, 0) + sign * mult.n
            if k == 0:
                diff.pop(e, None)
            else:
                diff[e] = k

    pos1 = pos2 = 0
    fin1, fin2 = c1.finite_len(), c2.finite_len()
    supers: list[_Super] = []
    seen: dict = {}
    steps = 0
    pending_cycle: Optional[tuple[int, int]] = None
    drift_cap = 256  # incompatible consumption ratios buffer without bound

    while True:
        steps += 1
        if steps > budget:
            return None
        if sum(abs(k) for k in diff.values()) > drift_cap:
            return None  # aperiodic alignment; the caller falls back
        exhausted1 = fin1 is not None and pos1 >= fin1
        exhausted2 = fin2 is not None and pos2 >= fin2
        if exhausted1 and exhausted2 and not diff:
            if pending_cycle:
                start, period = pending_cycle
                return supers, start, period
            return supers, len(supers), 0
        if pending_cycle is None and fin1 is None and fin2 is None:
            if pos1 >= len(c1.p) and pos2 >= len(c2.p):
                key = (
                    (pos1 - len(c1.p)) % len(c1.c),
                    (pos2 - len(c2.p)) % len(c2.c),
                    tuple(sorted((sort_key(e), k) for e, k in diff.items())),
                )
                if key in seen:
                    start = seen[key]
                    pending_cycle = (start, len(supers) - start)
                else:
                    seen[key] = len(supers)
        if pending_cycle and len(supers) >= pending_cycle[0] + pending_cycle[1] + 1:
            # one extra superblock computed so every t_val in the unit is set
            start, period = pending_cycle
            return supers, start, period

        # A-step: advance chain1 to cover chain2's overshoot
        s1 = pos1
        if not (fin1 is not None and pos1 >= fin1):
            bump(c1.jblock(pos1), +1)
            pos1 += 1
        guard = 0
        while any(k < 0 for k in diff.values()):
            if fin1 is not None and pos1 >= fin1:
                return None
            bump(c1.jblock(pos1), +1)
            pos1 += 1
            guard += 1
            if guard > budget:
                return None
        if supers:
            shortfall = Family.of((e, fin(k)) for e, k in diff.items() if k > 0)
            supers[-1].t_val = m.ksum(shortfall)

        # B-step: advance chain2 to cover chain1
        s2 = pos2
        if not (fin2 is not None and pos2 >= fin2):
            bump(c2.iblock(pos2), -1)
            pos2 += 1
        guard = 0
        while any(k > 0 for k in diff.values()):
            if fin2 is not None and pos2 >= fin2:
                return None
            bump(c2.iblock(pos2), -1)
            pos2 += 1
            guard += 1
            if guard > budget:
                return None
        overshoot = Family.of((e, fin(-k)) for e, k in diff.items() if k < 0)

        xchunk, u1, v1_in = _merge_run(m, c1, s1, pos1, "i")
        zchunk, g2, h2_in = _merge_run(m, c2, s2, pos2, "j")
        supers.append(
            _Super(
                x=xchunk,
                z=zchunk,
                u1=u1,
                v1_in=v1_in,
                g2=g2,
                h2_in=h2_in,
                s_val=m.ksum(overshoot),
            )
        )


def _super_at(supers: list[_Super], start: int, period: int, idx: int) -> _Super:
    if period > 0 and idx >= start:
        return supers[start + (idx - start) % period]
    return supers[idx]


def _compose_blocks(
    m: KappaMonoid, supers: list[_Super], start: int, period: int, count: int
) -> list[BraidBlock]:
    """Composite blocks: the limit block plus three superblocks per step."""

    def S(idx: int) -> _Super:
        if period == 0 and idx >= len(supers):
            return _Super(
                x=Family.empty(),
                z=Family.empty(),
                u1=m.zero,
                v1_in=m.zero,
                g2=m.zero,
                h2_in=m.zero,
                s_val=m.zero,
                t_val=m.zero,
            )
        s = _super_at(supers, start, period, idx)
        if s.t_val is None:
            s.t_val = m.zero
        return s

    def d(l: int):
        if l == 0:
            return m.zero
        a, b = S(3 * (l - 1)), S(3 * (l - 1) + 1)
        return m.add(a.s_val, m.add(b.h2_in, b.v1_in))

    blocks = []
    for l in range(count):
        if l == 0:
            s0 = S(0)
            blocks.append(BraidBlock(s0.x, s0.z, s0.u1, d(1)))
            continue
        s1, s2, s3 = S(3 * (l - 1) + 1), S(3 * (l - 1) + 2), S(3 * (l - 1) + 3)
        ib = s1.x.add(s2.x).add(s3.x)
        jb = s1.z.add(s2.z).add(s3.z)
        c_l = m.add(s1.g2, m.add(s1.t_val, s3.u1))
        blocks.append(BraidBlock(ib, jb, c_l, d(l + 1)))
    return blocks


def compose(
    m: KappaMonoid,
    xfam: Family,
    yfam: Family,
    zfam: Family,
    cert_xy: Certificate,
    cert_yz: Certificate,
    lam: ExtCard = ALEPH0,
    budget: int = DEFAULT_BUDGET,
) -> TriBool:
    """Certificate for (xfam, zfam) from certificates through a shared middle
    family: align the two chains on the middle family, then group three
    aligned runs per composite block.  Falls back to a fresh search when the
    periodic structures refuse to align.

    The composite of two periodically certified braidings need not admit a
    periodic certificate at all (the two chains may consume the middle
    family in incompatible ratios); Unknown is then the honest outcome."""
    if isinstance(cert_xy, OmegaCertificate) and isinstance(cert_yz, OmegaCertificate):
        try:
            walk = _compose_walk(m, _Chain(m, cert_xy), _Chain(m, cert_yz), budget)
        except ValueError:
            walk = None
        if walk is not None:
            supers, start, period = walk
            cert = _assemble_composite(m, supers, start, period)
            if cert is not None:
                r = verify(m, xfam, zfam, cert, lam)
                if r.is_yes:
                    return yes(witness=cert)
    found = braid_find(m, xfam, zfam, lam, budget)
    if found.is_yes:
        return yes(witness=found.witness, note="via re-search")
    return unknown(note="composition alignment failed and re-search exhausted")


def _assemble_composite(
    m: KappaMonoid, supers: list[_Super], start: int, period: int
) -> Optional[OmegaCertificate]:
    if period == 0:
        nblocks = 1 + (max(len(supers), 1) + 1) // 3 + 1
        blocks = _compose_blocks(m, supers, start, period, nblocks)
        while blocks and len(blocks) > 1 and _is_trivial_block(m, blocks[-1]):
            blocks.pop()
        return OmegaCertificate(tuple(blocks), ())
    pc = period // math.gcd(3, period)
    count = start // 3 + 3 + 3 * pc
    blocks = _compose_blocks(m, supers, start, period, count)
    for l0 in range(1, len(blocks) - 2 * pc):
        if blocks[l0 : l0 + pc] == blocks[l0 + pc : l0 + 2 * pc]:
            return OmegaCertificate(tuple(blocks[:l0]), tuple(blocks[l0 : l0 + pc]))
    return None


def _is_trivial_block(m: KappaMonoid, b: BraidBlock) -> bool:
    return (
        len(b.iblock) == 0
        and len(b.jblock) == 0
        and m.eq(b.u, m.zero).is_yes
        and m.eq(b.v_next, m.zero).is_yes
    )


# -- search ---------------------------------------------------------------------


class _Stream:
    """Eventually-periodic enumeration of a family: finite-multiplicity
    entries first (canonical order), then one copy of each aleph0-entry per
    period."""

    def __init__(self, fam: Family):
        self.head: list = []
        self.cycle: list = []
        for e, mult in fam:
            if mult.is_finite:
                self.head.extend([e] * mult.n)
            else:
                self.cycle.append(e)

    def at(self, i: int):
        if i < len(self.head):
            return self.head[i]
        return self.cycle[(i - len(self.head)) % len(self.cycle)]

    def finite_len(self) -> Optional[int]:
        return len(self.head) if not self.cycle else None


def _cycle_counts(m: KappaMonoid, sx: "_Stream", sy: "_Stream", cap: int):
    """Positive per-value counts making one x-block sum equal one y-block
    sum.  Uniform whole-cycle scaling first; for finite vector values the
    balance condition is itself a homogeneous linear system over the counts,
    solved exactly by small enumeration."""
    xtot = m.raw_ksum(Family.of([(e, FIN1) for e in sx.cycle]))
    ytot = m.raw_ksum(Family.of([(e, FIN1) for e in sy.cycle]))
    for a in range(1, cap + 1):
        asum = m.scalar(fin(a), xtot)
        for b in range(1, cap + 1):
            if m.eq(asum, m.scalar(fin(b), ytot)).is_yes:
                return {e: a for e in sx.cycle}, {e: b for e in sy.cycle}
    vals = sx.cycle + sy.cycle
    if (
        all(isinstance(e, CardVec) for e in vals)
        and all(c.is_finite for e in vals for c in e.coords)
        and len(vals) <= 6
    ):
        from .diophantine import ConstraintSystem, enumerate_solutions

        dim = len(vals[0])
        kx = len(sx.cycle)
        eqs = []
        for i in range(dim):
            left = tuple(e[i].n for e in sx.cycle) + tuple(0 for _ in sy.cycle)
            right = tuple(0 for _ in sx.cycle) + tuple(f[i].n for f in sy.cycle)
            eqs.append((left, right))
        sys = ConstraintSystem.make(len(vals), equations=eqs)
        for sol in enumerate_solutions(sys, min(cap, 8)):
            if all(c >= 1 for c in sol):
                return (
                    {e: sol[k] for k, e in enumerate(sx.cycle)},
                    {f: sol[kx + k] for k, f in enumerate(sy.cycle)},
                )
    return None


def _uniform_omega(
    m: KappaMonoid, xfam: Family, yfam: Family, scale_cap: int = 12
) -> Optional[OmegaCertificate]:
    """Periodic certificate from balanced whole blocks: one cycle block with
    per-value counts chosen so its two sums agree, plus one prefix block
    padding the finite heads with extra cycle copies until they balance."""
    sx, sy = _Stream(xfam), _Stream(yfam)
    if not sx.cycle or not sy.cycle:
        return None
    counts = _cycle_counts(m, sx, sy, scale_cap)
    if counts is None:
        return None
    cx, cy = counts
    iblk = Family.of((e, fin(c)) for e, c in cx.items())
    jblk = Family.of((f, fin(c)) for f, c in cy.items())
    block_sum = m.raw_ksum(iblk)
    cycle_block = BraidBlock(iblk, jblk, block_sum, m.zero)
    if not sx.head and not sy.head:
        return OmegaCertificate((), (cycle_block,))
    hx = m.raw_ksum(Family.of([(e, FIN1) for e in sx.head]))
    hy = m.raw_ksum(Family.of([(e, FIN1) for e in sy.head]))
    for kx in range(scale_cap + 1):
        left = m.add(hx, m.scalar(fin(kx), block_sum))
        for ky in range(scale_cap + 1):
            if m.eq(left, m.add(hy, m.scalar(fin(ky), block_sum))).is_yes:
                prefix = BraidBlock(
                    Family.of(
                        [(e, FIN1) for e in sx.head]
                        + [(e, fin(kx * c)) for e, c in cx.items()]
                    ),
                    Family.of(
                        [(f, FIN1) for f in sy.head]
                        + [(f, fin(ky * c)) for f, c in cy.items()]
                    ),
                    left,
                    m.zero,
                )
                return OmegaCertificate((prefix,), (cycle_block,))
    return None


def _greedy_omega(
    m: KappaMonoid, xfam: Family, yfam: Family, budget: int, block_cap: int = 64
) -> Optional[OmegaCertificate]:
    """Deterministic minimal-consumption walk for infinite-support pairs:
    take just enough of each stream to cover the carry, and close the cycle
    at the first repeated state.  Complete for positive scalars, where the
    carry stays below the largest stream value."""
    sx, sy = _Stream(xfam), _Stream(yfam)
    if not sx.cycle or not sy.cycle:
        return None
    i = j = 0
    v = m.zero
    blocks: list[BraidBlock] = []
    seen: dict = {}
    px, py = len(sx.head), len(sy.head)
    for _ in range(budget):
        if i >= px and j >= py:
            state = ((i - px) % len(sx.cycle), (j - py) % len(sy.cycle), sort_key(v))
            if state in seen:
                k, i0, j0 = seen[state]
                if (i - i0) >= len(sx.cycle) and (j - j0) >= len(sy.cycle):
                    return OmegaCertificate(tuple(blocks[:k]), tuple(blocks[k:]))
                return None  # repeated without a full wrap: walk is stuck
            seen[state] = (len(blocks), i, j)
        ichunk = []
        u = m.sub(m.zero, v)
        k = 0
        while u is None and k < block_cap:
            ichunk.append(sx.at(i + k))
            k += 1
            u = m.sub(m.raw_ksum(Family.of([(e, FIN1) for e in ichunk])), v)
        if u is None:
            return None
        if k == 0:  # always make progress on the x stream
            ichunk.append(sx.at(i))
            k = 1
            u = m.sub(m.raw_ksum(Family.of([(e, FIN1) for e in ichunk])), v)
            if u is None:
                return None
        i += k
        jchunk = []
        vn = m.sub(m.zero, u)
        k = 0
        while vn is None and k < block_cap:
            jchunk.append(sy.at(j + k))
            k += 1
            vn = m.sub(m.raw_ksum(Family.of([(e, FIN1) for e in jchunk])), u)
        if vn is None:
            return None
        if k == 0:
            jchunk.append(sy.at(j))
            k = 1
            vn = m.sub(m.raw_ksum(Family.of([(e, FIN1) for e in jchunk])), u)
            if vn is None:
                return None
        j += k
        blocks.append(
            BraidBlock(
                Family.of((e, FIN1) for e in ichunk),
                Family.of((e, FIN1) for e in jchunk),
                u,
                vn,
            )
        )
        v = vn
    return None


def _search_omega(
    m: KappaMonoid,
    xfam: Family,
    yfam: Family,
    budget: int,
    block_cap: int = BLOCK_CAP,
) -> Optional[OmegaCertificate]:
    """Depth-first search over consecutive block splits of canonical streams;
    deterministic order, smallest blocks first."""
    sx, sy = _Stream(xfam), _Stream(yfam)
    fx, fy = sx.finite_len(), sy.finite_len()
    infinite = fx is None  # class agreement checked by the caller

    def key(state):
        i, j, v = state
        if infinite:
            pi = i if i < len(sx.head) else len(sx.head) + (i - len(sx.head)) % len(sx.cycle)
            pj = j if j < len(sy.head) else len(sy.head) + (j - len(sy.head)) % len(sy.cycle)
            return (pi, pj, sort_key(v))
        return (i, j, sort_key(v))

    budget_left = [budget]
    path: list[tuple] = []  # (state_key, block, i, j)

    def dfs(i: int, j: int, v) -> Optional[tuple[int, ...]]:
        # returns (cycle_start_index,) when a certificate closes, else None
        if budget_left[0] <= 0:
            return None
        budget_left[0] -= 1
        if not infinite and i == fx and j == fy and m.eq(v, m.zero).is_yes:
            return (len(path),)
        if infinite and i >= len(sx.head) and j >= len(sy.head):
            k = key((i, j, v))
            for idx, (pk, _b, pi, pj) in enumerate(path):
                if (
                    pk == k
                    and i - pi >= len(sx.cycle)
                    and j - pj >= len(sy.cycle)
                    and (i - pi) % len(sx.cycle) == 0
                    and (j - pj) % len(sy.cycle) == 0
                ):
                    return (idx,)
        for kx in range(0, block_cap + 1):
            if fx is not None and i + kx > fx:
                break
            ichunk = [sx.at(i + t) for t in range(kx)]
            isum = (
                m.raw_ksum(Family.of([(e, FIN1) for e in ichunk]))
                if ichunk
                else m.zero
            )
            # need u with isum = v + u
            u = m.sub(isum, v)
            if u is None:
                continue
            for ky in range(0, block_cap + 1):
                if kx == 0 and ky == 0:
                    continue
                if fy is not None and j + ky > fy:
                    break
                jchunk = [sy.at(j + t) for t in range(ky)]
                jsum = (
                    m.raw_ksum(Family.of([(e, FIN1) for e in jchunk]))
                    if jchunk
                    else m.zero
                )
                vn = m.sub(jsum, u)
                if vn is None:
                    continue
                blk = BraidBlock(
                    Family.of((e, FIN1) for e in ichunk),
                    Family.of((e, FIN1) for e in jchunk),
                    u,
                    vn,
                )
                path.append((key((i, j, v)), blk, i, j))
                hit = dfs(i + kx, j + ky, vn)
                if hit is not None:
                    return hit
                path.pop()
        return None

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(10000)
    try:
        hit = dfs(0, 0, m.zero)
    finally:
        sys.setrecursionlimit(old)
    if hit is None:
        return None
    cut = hit[0]
    blocks = [b for _k, b, _i, _j in path]
    if not infinite:
        return OmegaCertificate(tuple(blocks), ())
    return OmegaCertificate(tuple(blocks[:cut]), tuple(blocks[cut:]))


def braid_find(
    m: KappaMonoid,
    xfam: Family,
    yfam: Family,
    lam: ExtCard = ALEPH0,
    budget: int = DEFAULT_BUDGET,
) -> TriBool:
    """Search for a certificate.  No is returned only with a checkable
    obstruction (decided sum mismatch, or a finite form against an infinite
    one); otherwise the search is honest about exhaustion."""
    xf = canonical_family(m, xfam)
    yf = canonical_family(m, yfam)
    if lam == ALEPH0:
        cx, cy = xf.index_card(), yf.index_card()
        if cx.is_finite != cy.is_finite:
            return no(note="finite vs infinite form")
    e = m.eq(m.ksum(xf), m.ksum(yf))
    if e.is_no:
        return no(note="sums differ")

    if lam == ALEPH0:
        cx, cy = xf.index_card(), yf.index_card()
        if cx.is_finite:
            if not e.is_yes:
                return unknown(note="sum equality undecided")
            cert = OmegaCertificate(
                (BraidBlock(xf, yf, m.ksum(xf), m.zero),), ()
            )
            r = verify(m, xf, yf, cert, lam)
            return yes(witness=cert) if r.is_yes else unknown(note="trivial block rejected")
        high = [
            mult
            for _, mult in itertools.chain(xf, yf)
            if mult.is_infinite and mult != ALEPH0
        ]
        if high:
            return _layered_find(m, xf, yf, budget)
        cert = _uniform_omega(m, xf, yf)
        if cert is not None and verify(m, xf, yf, cert, lam).is_yes:
            return yes(witness=cert)
        cert = _greedy_omega(m, xf, yf, min(budget, 512))
        if cert is not None and verify(m, xf, yf, cert, lam).is_yes:
            return yes(witness=cert)
        cert = _search_omega(m, xf, yf, budget)
        if cert is not None:
            r = verify(m, xf, yf, cert, lam)
            if r.is_yes:
                return yes(witness=cert)
        return unknown(note=f"no certificate within budget {budget}")

    return _collapsed_find(m, xf, yf, lam, budget)


def _layered_find(m: KappaMonoid, xf: Family, yf: Family, budget: int) -> TriBool:
    """Canonical level split: one weighted layer per multiplicity level above
    aleph0, plus a weight-one base layer for the rest."""
    levels = sorted(
        {mult for _, mult in itertools.chain(xf, yf) if mult.is_infinite and mult != ALEPH0},
        key=lambda c: c.sort_key(),
    )
    layers: list[tuple[ExtCard, OmegaCertificate]] = []
    base_x = Family.of((e, mult) for e, mult in xf if mult.is_finite or mult == ALEPH0)
    base_y = Family.of((e, mult) for e, mult in yf if mult.is_finite or mult == ALEPH0)
    for lvl in levels:
        lx = Family.of((e, ALEPH0) for e, mult in xf if mult == lvl)
        ly = Family.of((e, ALEPH0) for e, mult in yf if mult == lvl)
        sub = braid_find(m, lx, ly, ALEPH0, budget)
        if not sub.is_yes:
            return unknown(note=f"level {lvl} layer failed: {sub.note}")
        layers.append((lvl, sub.witness))
    if len(base_x) or len(base_y):
        sub = braid_find(m, base_x, base_y, ALEPH0, budget)
        if not sub.is_yes:
            return (
                no(note=f"base layer: {sub.note}") if sub.is_no else
                unknown(note=f"base layer: {sub.note}")
            )
        layers.append((FIN1, sub.witness))
    cert = LayeredCertificate(tuple(layers))
    r = verify(m, xf, yf, cert, ALEPH0)
    if r.is_yes:
        return yes(witness=cert)
    return unknown(note=f"layered assembly rejected: {r.note}")


def _collapsed_find(
    m: KappaMonoid, xf: Family, yf: Family, lam: ExtCard, budget: int
) -> TriBool:
    big_levels = sorted(
        {mult for _, mult in itertools.chain(xf, yf) if not mult < lam},
        key=lambda c: c.sort_key(),
    )
    blocks: list[tuple[Family, Family, ExtCard]] = []
    for lvl in big_levels:
        ib = Family.of((e, FIN1) for e, mult in xf if mult == lvl)
        jb = Family.of((e, FIN1) for e, mult in yf if mult == lvl)
        r = m.eq(m.ksum(ib), m.ksum(jb))
        if not r.is_yes:
            return unknown(note=f"level {lvl} blocks do not balance")
        blocks.append((ib, jb, lvl))
    rx = Family.of((e, mult) for e, mult in xf if mult < lam)
    ry = Family.of((e, mult) for e, mult in yf if mult < lam)
    if len(rx) or len(ry):
        r = m.eq(m.ksum(rx), m.ksum(ry))
        if r.is_no:
            return no(note="small-multiplicity remainders have different sums")
        if r.is_unknown:
            return unknown(note="remainder sum equality undecided")
        blocks.append((rx, ry, FIN1))
    cert = CollapsedCertificate(tuple(blocks))
    r = verify(m, xf, yf, cert, lam)
    if r.is_yes:
        return yes(witness=cert)
    return unknown(note=f"canonical level split rejected: {r.note}")
