"""Two-generated monoids-with-countable-sums presented by finitely many
relations between forms.

A form counts how many copies of each generator a family holds.  Equality in
the quotient is explored by congruence saturation (relation application under
finite and countable multipliers, which subsumes the absorption rewrites);
negative answers carry a separating homomorphism into a small concrete
monoid, and structural preconditions (rigid finite forms, finiteness-class
preservation) upgrade bounded answers to exact ones where they apply.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Optional

from .cardinals import ALEPH0, ExtCard, ZERO, at_most, card_mul, card_sub_least, card_sum, fin
from .core import CyclicExtensionMonoid, CyclicMonoid, Family, KappaMonoid
from .tribool import TriBool, no, unknown, yes

NCAP = 8  # range for 'finite n' quantifiers
TCAP = 4  # range for slack-form coordinates
HOM_COEFF_CAP = 8


@dataclass(frozen=True)
class Form:
    """alpha*X1 + beta*X2 with both coefficients at most aleph0."""

    a: ExtCard
    b: ExtCard

    def __post_init__(self):
        for c in (self.a, self.b):
            if c.is_infinite and c != ALEPH0:
                raise ValueError("form coefficients are bounded by aleph0")

    @staticmethod
    def of(a, b) -> "Form":
        conv = lambda v: fin(v) if isinstance(v, int) else v
        return Form(conv(a), conv(b))

    def __add__(self, other: "Form") -> "Form":
        return Form(self.a + other.a, self.b + other.b)

    def scale(self, m: ExtCard) -> "Form":
        return Form(card_mul(m, self.a), card_mul(m, self.b))

    @property
    def is_infinite(self) -> bool:
        return self.a.is_infinite or self.b.is_infinite

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    def coeff(self, i: int) -> ExtCard:
        return self.a if i == 1 else self.b

    def sort_key(self):
        return (self.a.sort_key(), self.b.sort_key())

    def __str__(self):
        return f"{self.a}*X1 + {self.b}*X2"


X1 = Form.of(1, 0)
X2 = Form.of(0, 1)
FORM_ZERO = Form.of(0, 0)


def gen(i: int) -> Form:
    return X1 if i == 1 else X2


@dataclass(frozen=True)
class TwoGenPresentation:
    """Finitely many form equalities; the symmetric closure is taken on load."""

    relations: tuple[tuple[Form, Form], ...]

    @staticmethod
    def of(pairs) -> "TwoGenPresentation":
        rels = []
        for l, r in pairs:
            if l == r:
                continue
            if (l, r) not in rels:
                rels.append((l, r))
            if (r, l) not in rels:
                rels.append((r, l))
        return TwoGenPresentation(tuple(rels))

    @property
    def effective(self) -> tuple[tuple[Form, Form], ...]:
        return self.relations

    @property
    def finite_forms_rigid(self) -> bool:
        """No relation side is a finite form, so no rewrite applies to a
        finite form and their classes are singletons."""
        return all(l.is_infinite and r.is_infinite for l, r in self.relations)

    @property
    def class_preserving(self) -> bool:
        """Every rewrite preserves the finite/infinite class of a form."""
        return all(
            (l.is_infinite == r.is_infinite) and (l.is_zero == r.is_zero)
            for l, r in self.relations
        )

    def max_finite_coord(self) -> int:
        out = 0
        for l, r in self.relations:
            for c in (l.a, l.b, r.a, r.b):
                if c.is_finite:
                    out = max(out, c.n)
        return out


# -- rewriting ------------------------------------------------------------------


def _sub_coeff_choices(fc: ExtCard, lc: ExtCard) -> list[ExtCard]:
    """Coefficients t with t + lc = fc (the branching lives at aleph0 = aleph0
    where any finite slack or aleph0 works)."""
    if fc.is_finite:
        if lc.is_finite and lc.n <= fc.n:
            return [fin(fc.n - lc.n)]
        return []
    if lc.is_finite:
        return [ALEPH0]
    return [fin(k) for k in range(TCAP + 1)] + [ALEPH0]


_MULTIPLIERS = [fin(k) for k in range(1, 5)] + [ALEPH0]


def _successors(p: TwoGenPresentation, f: Form, goal: Optional[Form] = None):
    """Single-rewrite successors f = t + m*L -> t + m*R, and whether the
    capped slack branching lost any (a capped aleph0-slack is lossless only
    when the replacement side is infinite there, making all slacks agree).
    Slack choices are seeded with goal-aligned values so one-step matches
    beyond the cap are still found."""
    out = []
    lossy = False
    for ridx, (l, r) in enumerate(p.relations):
        for m in _MULTIPLIERS:
            ml, mr = l.scale(m), r.scale(m)
            ta_choices = _sub_coeff_choices(f.a, ml.a)
            tb_choices = _sub_coeff_choices(f.b, ml.b)
            if len(ta_choices) > 1:
                if mr.a.is_finite:
                    lossy = True
                if goal is not None and goal.a.is_finite and mr.a.is_finite:
                    aim = goal.a.n - mr.a.n
                    if aim >= 0 and fin(aim) not in ta_choices:
                        ta_choices = ta_choices + [fin(aim)]
            if len(tb_choices) > 1:
                if mr.b.is_finite:
                    lossy = True
                if goal is not None and goal.b.is_finite and mr.b.is_finite:
                    aim = goal.b.n - mr.b.n
                    if aim >= 0 and fin(aim) not in tb_choices:
                        tb_choices = tb_choices + [fin(aim)]
            for ta in ta_choices:
                for tb in tb_choices:
                    t = Form(ta, tb)
                    g = t + mr
                    if g != f:
                        out.append((g, (ridx, m, t)))
    return out, lossy


def replay_chain(p: TwoGenPresentation, f: Form, g: Form, chain) -> bool:
    """Validate a rewrite chain emitted by forms_equal."""
    cur = f
    for frm, (ridx, m, t), to in chain:
        if frm != cur:
            return False
        l, r = p.relations[ridx]
        if t + l.scale(m) != frm or t + r.scale(m) != to:
            return False
        cur = to
    return cur == g


# -- separating homomorphisms ---------------------------------------------------


def _hom_targets():
    targets = [CyclicExtensionMonoid(CyclicMonoid(), at_most(ALEPH0))]
    for mm in (1, 2):
        for nn in (1, 2):
            targets.append(
                CyclicExtensionMonoid(CyclicMonoid(mm, nn), at_most(ALEPH0))
            )
    return targets


_TARGETS = _hom_targets()


def _hom_values(t: CyclicExtensionMonoid) -> list[ExtCard]:
    if t.cyc.is_free:
        vals = [fin(k) for k in range(HOM_COEFF_CAP + 1)]
    else:
        vals = [fin(k) for k in range(t.cyc.m + t.cyc.n)]
    return vals + [ALEPH0]


def _apply_hom(t: CyclicExtensionMonoid, va, vb, f: Form):
    return t.add(t.scalar(f.a, va), t.scalar(f.b, vb))


def _respects(p: TwoGenPresentation, t, va, vb) -> bool:
    return all(
        t.eq(_apply_hom(t, va, vb, l), _apply_hom(t, va, vb, r)).is_yes
        for l, r in p.relations
    )


def find_separating_hom(p: TwoGenPresentation, f: Form, g: Form):
    """A homomorphism into a small cyclic-extension monoid that respects all
    relations but distinguishes f from g; a replayable negative witness."""
    for t in _TARGETS:
        for va in _hom_values(t):
            for vb in _hom_values(t):
                if not _respects(p, t, va, vb):
                    continue
                if not t.eq(_apply_hom(t, va, vb, f), _apply_hom(t, va, vb, g)).is_yes:
                    return (t.name, va, vb)
    return None


# -- equality -------------------------------------------------------------------


def forms_equal(
    p: TwoGenPresentation, f: Form, g: Form, budget: int = 10_000
) -> TriBool:
    """Tri-valued form equality in the presented monoid.

    Yes carries a rewrite chain; No carries either a structural reason or a
    separating homomorphism; both replay.
    """
    if f == g:
        return yes(witness=[])
    if not p.relations:
        return no(note="free presentation: distinct forms differ")
    if p.finite_forms_rigid and not f.is_infinite and not g.is_infinite:
        return no(note="finite forms are rigid under these relations")
    if p.class_preserving and (f.is_infinite != g.is_infinite):
        return no(note="rewrites preserve the finite/infinite class")

    # bounded congruence saturation, breadth-first, shortest chain first
    coord_cap = (
        max(
            p.max_finite_coord() * 2,
            *(c.n for c in (f.a, f.b, g.a, g.b) if c.is_finite),
            4,
        )
        + 2 * TCAP
        + 8
    )
    seen = {f: None}
    frontier = [f]
    expanded = 0
    pruned = False
    while frontier and expanded < budget:
        nxt = []
        for pos, cur in enumerate(frontier):
            if expanded >= budget:
                nxt.extend(frontier[pos:])
                break
            expanded += 1
            succs, lossy = _successors(p, cur, goal=g)
            pruned = pruned or lossy
            for succ, step in sorted(succs, key=lambda s: s[0].sort_key()):
                if any(c.is_finite and c.n > coord_cap for c in (succ.a, succ.b)):
                    pruned = True
                    continue
                if succ in seen:
                    continue
                seen[succ] = (cur, step)
                if succ == g:
                    chain = []
                    node = succ
                    while seen[node] is not None:
                        prev, st = seen[node]
                        chain.append((prev, st, node))
                        node = prev
                    chain.reverse()
                    assert replay_chain(p, f, g, chain)
                    return yes(witness=chain)
                nxt.append(succ)
        frontier = nxt
    if not frontier and not pruned:
        # the whole equivalence class was enumerated and g is not in it
        return no(note="equivalence class exhausted without reaching the target")

    hom = find_separating_hom(p, f, g)
    if hom is not None:
        return no(witness=hom, note="separating homomorphism")
    return unknown(note=f"saturation budget {budget} exhausted")


# -- divisor-closed membership --------------------------------------------------


def _t_grid():
    coords = [fin(k) for k in range(TCAP + 1)] + [ALEPH0]
    return [Form(a, b) for a in coords for b in coords]


def in_add(
    p: TwoGenPresentation, target: Form, base: Form, budget: int = 10_000
) -> TriBool:
    """Is target a summand of some finite multiple of base?"""
    if target.is_zero:
        return yes(witness=(0, FORM_ZERO, []))
    # exact closed forms first
    if not p.relations:
        ok = True
        for i in (1, 2):
            tc, bc = target.coeff(i), base.coeff(i)
            if bc.is_zero and not tc.is_zero:
                ok = False
            if tc.is_infinite and not bc.is_infinite:
                ok = False
        if not ok:
            return no(note="free presentation: a coordinate can never be covered")
    if (
        p.finite_forms_rigid
        and p.class_preserving
        and not base.is_infinite
        and p.relations
    ):
        # n*base stays a rigid finite form, so target + t must match exactly
        ok = not target.is_infinite and all(
            not (base.coeff(i).is_zero and not target.coeff(i).is_zero)
            for i in (1, 2)
        )
        if not ok:
            return no(note="rigid finite multiples cannot absorb the target")

    per_try = max(200, budget // (NCAP * 8))
    mult = FORM_ZERO
    for n in range(NCAP + 1):
        for t in _t_grid():
            r = forms_equal(p, target + t, mult, per_try)
            if r.is_yes:
                return yes(witness=(n, t, r.witness))
        mult = mult + base

    # homomorphism obstruction: some respecting hom sends target outside
    # every multiple of base
    for tgt in _TARGETS:
        for va in _hom_values(tgt):
            for vb in _hom_values(tgt):
                if not _respects(p, tgt, va, vb):
                    continue
                pt = _apply_hom(tgt, va, vb, target)
                pb = _apply_hom(tgt, va, vb, base)
                if _hom_blocks_in_add(tgt, pt, pb):
                    return no(witness=(tgt.name, va, vb), note="homomorphism obstruction")
    return unknown(note=f"no witness with n <= {NCAP}")


def _hom_blocks_in_add(t: CyclicExtensionMonoid, pt, pb) -> bool:
    """In the target: pt <= n*pb for no finite n.  Multiples of a finite
    class are eventually periodic, so a bounded scan is exact."""
    span = 2 + (HOM_COEFF_CAP * NCAP if t.cyc.is_free else t.cyc.m + t.cyc.n)
    if t.cyc.is_free:
        if pb.is_zero:
            return not pt.is_zero
        if pt.is_infinite:
            return pb.is_finite
        return False
    acc = t.zero
    for _ in range(span + 1):
        if t.leq(pt, acc).is_yes:
            return False
        acc = t.add(acc, pb)
    return True


# -- condition reports ----------------------------------------------------------


@dataclass
class ConditionStatus:
    name: str
    status: str  # "holds" | "violated" | "unknown"
    exact: bool = False
    witness: Any = None
    detail: str = ""

    def line(self) -> str:
        tag = {"holds": "OK  ", "violated": "FAIL", "unknown": "??  "}[self.status]
        extra = " (exact)" if self.exact and self.status != "unknown" else ""
        w = f" witness={self.witness}" if self.witness is not None else ""
        d = f" [{self.detail}]" if self.detail else ""
        return f"{tag} {self.name}{extra}{w}{d}"


@dataclass
class RealizabilityReport:
    verdict: TriBool
    conditions: list[ConditionStatus] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def render(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        lines += [c.line() for c in self.conditions]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)

    def condition(self, name: str) -> Optional[ConditionStatus]:
        for c in self.conditions:
            if c.name == name:
                return c
        return None


def _peel_decided(p: TwoGenPresentation, i: int, j: int, budget: int) -> TriBool:
    """Can one copy of x_i be absorbed into aleph0*x_j?"""
    return forms_equal(p, gen(i) + gen(j).scale(ALEPH0), gen(j).scale(ALEPH0), budget)


def _cyclic_witness(p: TwoGenPresentation, budget: int):
    """A generator expressible through the other one, if that is decidable."""
    per = max(200, budget // 24)
    open_pair = None
    for i, j in ((1, 2), (2, 1)):
        for beta in [fin(k) for k in range(NCAP + 1)] + [ALEPH0]:
            r = forms_equal(p, gen(i), gen(j).scale(beta), per)
            if r.is_yes:
                return ("cyclic", i, j, beta, r.witness)
            if r.is_unknown and open_pair is None:
                open_pair = (i, j)
    if open_pair is not None:
        return ("undecided", open_pair[0], open_pair[1], None, None)
    return ("non-cyclic", None, None, None, None)


def realizable_two_gen(
    p: TwoGenPresentation, budget: int = 10_000
) -> RealizabilityReport:
    """Decide realizability of the presented two-generator monoid by the
    three conditions (absorption forces divisor membership; equal infinite
    forms with incomparable generators reduce to finite equalities; no mixed
    finite/infinite element), for both generator orders."""
    rep = RealizabilityReport(verdict=unknown())
    kind, ci, cj, cbeta, cchain = _cyclic_witness(p, budget)
    if kind == "cyclic":
        rep.notes.append(
            f"presentation is cyclic: X{ci} = {cbeta}*X{cj};"
            " using the one-generator criterion"
        )
        rep.conditions.append(
            ConditionStatus("non-cyclic", "violated", True, (ci, cj, cbeta))
        )
        # cyclic criterion: realizable iff aleph0*x != n*x for every finite n
        x = gen(cj)
        per = max(200, budget // (NCAP + 2))
        if p.class_preserving and not x.is_zero:
            rep.verdict = yes(note="cyclic with aleph0*x distinct from all n*x")
            rep.conditions.append(
                ConditionStatus(
                    "cyclic-criterion",
                    "holds",
                    True,
                    detail="rewrites preserve finiteness, so aleph0*x != n*x",
                )
            )
            return rep
        for n in range(NCAP + 1):
            r = forms_equal(p, x.scale(ALEPH0), x.scale(fin(n)), per)
            if r.is_yes:
                rep.verdict = no(witness=n, note=f"aleph0*x = {n}*x")
                rep.conditions.append(
                    ConditionStatus("cyclic-criterion", "violated", True, n)
                )
                return rep
        rep.verdict = unknown(note="cyclic; criterion checked only on a range")
        rep.conditions.append(ConditionStatus("cyclic-criterion", "holds", False))
        return rep
    if kind == "undecided":
        rep.notes.append(
            f"non-cyclicity unverified (X{ci} vs multiples of X{cj} undecided)"
        )
    else:
        rep.conditions.append(ConditionStatus("non-cyclic", "holds", True))

    exact_all = kind == "non-cyclic"
    per = max(200, budget // 64)

    # (iii) no element with both finite and infinite forms
    if p.class_preserving:
        rep.conditions.append(
            ConditionStatus(
                "(iii) finite/infinite separation",
                "holds",
                True,
                detail="all rewrites preserve the finiteness class",
            )
        )
    else:
        clash = None
        grid_fin = [
            Form(fin(a), fin(b)) for a in range(NCAP + 1) for b in range(NCAP + 1)
        ]
        grid_inf = [f for f in _t_grid() if f.is_infinite]
        for ff in grid_fin:
            for gg in grid_inf:
                if forms_equal(p, ff, gg, per).is_yes:
                    clash = (ff, gg)
                    break
            if clash:
                break
        if clash:
            rep.conditions.append(
                ConditionStatus(
                    "(iii) finite/infinite separation", "violated", True, clash
                )
            )
        else:
            rep.conditions.append(
                ConditionStatus(
                    "(iii) finite/infinite separation",
                    "unknown",
                    detail="no clash on the grid; no preservation argument",
                )
            )
            exact_all = False

    adds = {
        (i, j): in_add(p, gen(i), gen(j), budget) for i, j in ((1, 2), (2, 1))
    }

    for i, j in ((1, 2), (2, 1)):
        inf_j = gen(j).scale(ALEPH0)
        both_inf = gen(i).scale(ALEPH0) + inf_j

        # (i): n x_i + w x_j = w x_i + w x_j forces absorption and membership
        name_i = f"(i) i={i},j={j}"
        peel = _peel_decided(p, i, j, per)
        status = None
        for n in range(NCAP + 1):
            prem = forms_equal(p, gen(i).scale(fin(n)) + inf_j, both_inf, per)
            if prem.is_yes:
                concl1 = forms_equal(p, inf_j, both_inf, per)
                concl2 = adds[(i, j)]
                if concl1.is_yes and concl2.is_yes:
                    status = ConditionStatus(name_i, "holds", True, n)
                elif concl1.is_no or concl2.is_no:
                    status = ConditionStatus(
                        name_i,
                        "violated",
                        True,
                        n,
                        detail=(
                            "absorption fails"
                            if concl1.is_no
                            else f"X{i} not a summand of multiples of X{j}"
                        ),
                    )
                else:
                    status = ConditionStatus(name_i, "unknown", detail="conclusion undecided")
                break
            if prem.is_unknown:
                status = ConditionStatus(name_i, "unknown", detail=f"premise undecided at n={n}")
                break
        if status is None:
            # peel-yes makes the premise independent of n: one absorbed copy
            # absorbs them all, so the n = 0 verdict settles every n
            exact = not p.relations or peel.is_yes
            status = ConditionStatus(
                name_i,
                "holds",
                exact,
                detail="premise fails for all tested n"
                + ("" if exact else f" (n <= {NCAP} only)"),
            )
        if not status.exact or status.status == "unknown":
            exact_all = exact_all and status.status == "holds" and status.exact
        if status.status == "holds" and not status.exact:
            exact_all = False
        rep.conditions.append(status)

        # (ii): with x_i outside add(x_j), equal infinite forms reduce to a
        # finite equality
        name_ii = f"(ii) i={i},j={j}"
        if adds[(i, j)].is_yes:
            rep.conditions.append(
                ConditionStatus(
                    name_ii, "holds", True, detail="vacuous: X{} in add(X{})".format(i, j)
                )
            )
            continue
        if adds[(i, j)].is_unknown:
            rep.conditions.append(
                ConditionStatus(name_ii, "unknown", detail="add membership undecided")
            )
            exact_all = False
            continue
        status = None
        for mth in range(NCAP + 1):
            for nth in range(mth + 1, NCAP + 1):
                prem = forms_equal(
                    p,
                    gen(i).scale(fin(mth)) + inf_j,
                    gen(i).scale(fin(nth)) + inf_j,
                    per,
                )
                if not prem.is_yes:
                    if prem.is_unknown:
                        exact_all = False
                    continue
                found = False
                for k in range(NCAP + 1):
                    for kp in range(NCAP + 1):
                        if forms_equal(
                            p,
                            gen(i).scale(fin(mth)) + gen(j).scale(fin(k)),
                            gen(i).scale(fin(nth)) + gen(j).scale(fin(kp)),
                            per,
                        ).is_yes:
                            found = True
                            break
                    if found:
                        break
                if not found:
                    exact = p.finite_forms_rigid and p.class_preserving
                    status = ConditionStatus(
                        name_ii,
                        "violated",
                        exact,
                        (mth, nth),
                        detail="no finite equality matches the infinite one",
                    )
                    break
            if status:
                break
        if status is None:
            # no range-independence argument is available for the premises
            # of (ii) beyond the free case
            exact = not p.relations
            status = ConditionStatus(
                name_ii,
                "holds",
                exact,
                detail="checked premises on the range" if not exact else "",
            )
            if not exact:
                exact_all = False
        rep.conditions.append(status)

    violated = [c for c in rep.conditions if c.status == "violated" and c.exact]
    und = [c for c in rep.conditions if c.status == "unknown" or not c.exact]
    if violated:
        rep.verdict = no(witness=[c.name for c in violated])
    elif not und and exact_all:
        rep.verdict = yes()
    else:
        rep.verdict = unknown(
            note="; ".join(c.name for c in und) or "range-limited arguments"
        )
    return rep


def corollary_checks(p: TwoGenPresentation, budget: int = 10_000) -> RealizabilityReport:
    """Classify the presentation by how the generators' divisor-closed
    submonoids relate, evaluate the case-specific equivalents, and
    cross-check agreement with the main decider where both decide."""
    rep = _corollary_cases(p, budget)
    main = realizable_two_gen(p, budget)
    if rep.verdict.decided and main.verdict.decided:
        agree = rep.verdict.kind == main.verdict.kind
        rep.conditions.append(
            ConditionStatus(
                "cross-check against the three-condition decider",
                "holds" if agree else "violated",
                True,
                None if agree else (rep.verdict.kind, main.verdict.kind),
            )
        )
        if not agree:
            rep.verdict = unknown(note="case analysis and decider disagree")
    elif main.verdict.decided and not rep.verdict.decided:
        rep.notes.append(
            f"three-condition decider: {main.verdict} (case analysis undecided)"
        )
    return rep


def _corollary_cases(p: TwoGenPresentation, budget: int) -> RealizabilityReport:
    rep = RealizabilityReport(verdict=unknown())
    a12 = in_add(p, X1, X2, budget)
    a21 = in_add(p, X2, X1, budget)
    per = max(200, budget // 64)
    rep.notes.append(f"X1 in add(X2): {a12}; X2 in add(X1): {a21}")

    if not a12.decided or not a21.decided:
        rep.notes.append("classification undecided")
        return rep

    if a12.is_no and a21.is_no:
        rep.notes.append("case: incomparable generators")
        ok = True
        exact = not p.relations
        witness = None
        coeffs = [fin(k) for k in range(4)] + [ALEPH0]
        for i, j in ((1, 2), (2, 1)):
            for a1, b1, a2, b2 in itertools.product(coeffs, repeat=4):
                f1 = gen(i).scale(a1) + gen(j).scale(b1)
                f2 = gen(i).scale(a2) + gen(j).scale(b2)
                if not forms_equal(p, f1, f2, per).is_yes:
                    continue
                if a1.is_finite != a2.is_finite:
                    ok, witness = False, (i, j, f1, f2)
                    break
                if a1.is_infinite and a2.is_infinite:
                    found = any(
                        forms_equal(
                            p,
                            gen(i).scale(fin(m1)) + gen(j).scale(b1),
                            gen(i).scale(fin(m2)) + gen(j).scale(b2),
                            per,
                        ).is_yes
                        for m1 in range(4)
                        for m2 in range(4)
                    )
                    if not found:
                        ok, witness = False, (i, j, f1, f2)
                        break
            if not ok:
                break
        rep.conditions.append(
            ConditionStatus(
                "incomparable case: coefficient classes align",
                "holds" if ok else "violated",
                exact or not ok,
                witness,
            )
        )
        rep.verdict = yes() if ok and exact else (no(witness=witness) if not ok else unknown())
    elif a12.is_yes and a21.is_yes:
        rep.notes.append("case: add(X1) = add(X2)")
        pats = [Form(ALEPH0, ZERO), Form(ZERO, ALEPH0), Form(ALEPH0, ALEPH0)]
        uniq = all(
            forms_equal(p, f1, f2, per).is_yes
            for f1, f2 in itertools.combinations(pats, 2)
        )
        rep.conditions.append(
            ConditionStatus(
                "equal-adds case: unique infinite element",
                "holds" if uniq else "unknown",
                False,
                detail="infinite patterns collapse" if uniq else "",
            )
        )
        sep = p.class_preserving
        rep.conditions.append(
            ConditionStatus(
                "equal-adds case: no finite/infinite clash",
                "holds" if sep else "unknown",
                sep,
            )
        )
        if uniq and sep:
            rep.verdict = yes(
                note="realizable with every non-finitely-generated projective free"
            )
    else:
        i, j = (1, 2) if a12.is_yes else (2, 1)
        rep.notes.append(f"case: X{i} in add(X{j}) only")
        # aleph0 x_j absorbs every multiple of x_i
        absorb = all(
            forms_equal(
                p, gen(j).scale(ALEPH0) + gen(i).scale(b), gen(j).scale(ALEPH0), per
            ).is_yes
            for b in [fin(1), fin(2), ALEPH0]
        )
        rep.conditions.append(
            ConditionStatus(
                "one-sided case: absorption into the big multiple",
                "holds" if absorb else "unknown",
                False,
            )
        )
        ok = True
        witness = None
        for nn in range(3):
            for beta in [fin(k) for k in range(3)] + [ALEPH0]:
                prem = forms_equal(
                    p,
                    gen(i).scale(ALEPH0) + gen(j).scale(fin(nn)),
                    gen(i).scale(ALEPH0) + gen(j).scale(beta),
                    per,
                ).is_yes
                if not prem:
                    continue
                if beta.is_infinite:
                    ok, witness = False, (nn, beta)
                    break
                found = any(
                    forms_equal(
                        p,
                        gen(i).scale(fin(m1)) + gen(j).scale(beta),
                        gen(i).scale(fin(m2)) + gen(j).scale(fin(nn)),
                        per,
                    ).is_yes
                    for m1 in range(4)
                    for m2 in range(4)
                )
                if not found:
                    ok, witness = False, (nn, beta)
                    break
            if not ok:
                break
        sep = p.class_preserving
        rep.conditions.append(
            ConditionStatus(
                "one-sided case: infinite equalities reduce and classes separate",
                "holds" if (ok and sep) else ("violated" if not ok else "unknown"),
                False,
                witness,
            )
        )
    return rep


# -- the presented monoid as a summation structure ------------------------------


class TwoGenMonoid(KappaMonoid):
    """The presented monoid with forms as element representatives and
    three-valued equality."""

    def __init__(self, p: TwoGenPresentation, budget: int = 2000):
        self.p = p
        self.budget = budget
        self.bound = at_most(ALEPH0)
        self.name = f"twogen({len(p.relations)} rels)"

    @property
    def zero(self) -> Form:
        return FORM_ZERO

    def raw_ksum(self, fam: Family) -> Form:
        a = card_sum((f.a, mult) for f, mult in fam)
        b = card_sum((f.b, mult) for f, mult in fam)
        return Form(a, b)

    def eq(self, x: Form, y: Form) -> TriBool:
        return forms_equal(self.p, x, y, self.budget)

    def sub(self, x: Form, y: Form) -> Optional[Form]:
        da = card_sub_least(x.a, y.a)
        db = card_sub_least(x.b, y.b)
        if da is not None and db is not None:
            return Form(da, db)
        for t in _t_grid():
            if self.eq(y + t, x).is_yes:
                return t
        return None

    def sample_element(self, rng) -> Form:
        coords = [fin(k) for k in range(4)] + [ALEPH0]
        return Form(rng.choice(coords), rng.choice(coords))
