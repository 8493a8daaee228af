"""Text formats: cardinal/vector/family literals, constraint systems,
two-generator presentations, monoid names, and certificate serialization.

Hand-rolled recursive descent with line/column diagnostics; every parser has
a renderer and ``parse(render(x))`` reproduces ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .braiding import (
    BraidBlock,
    Certificate,
    CollapsedCertificate,
    LayeredCertificate,
    OmegaCertificate,
)
from .cardinals import ALEPH0, ExtCard, aleph, below, fin, render_card
from .core import CyclicExtensionMonoid, CyclicMonoid, Family, KappaMonoid
from .diophantine import ConstraintSystem, DioMonoid
from .errors import CardBoundError, ParseError
from .free_vectors import CardVec, VecMonoid
from .gallery import (
    INF,
    DedekindVMonoid,
    HNPPredicate,
    Inf,
    QPoint,
    RankClass,
    RationalLineMonoid,
    TrivialExtensionMonoid,
)
from .presentations import Form, TwoGenMonoid, TwoGenPresentation

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<num>\d+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<sym><=|[(){},;:*+=/~'\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "ident" | "sym" | "eof"
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if not m:
            raise ParseError(f"unexpected character {src[i]!r}", line, col)
        text = m.group(0)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, text, line, col))
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        i = m.end()
    out.append(Token("eof", "", line, col))
    return out


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg: str):
        t = self.peek()
        raise ParseError(f"{msg}, got {t.text!r}" if t.text else f"{msg} at end", t.line, t.col)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            self.fail(f"expected {text!r}")
        return self.next()

    def expect_kind(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {kind}")
        return self.next()

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def at_ident(self, *names: str) -> bool:
        t = self.peek()
        return t.kind == "ident" and t.text.lower() in names

    def done(self) -> bool:
        return self.peek().kind == "eof"

    # -- cardinals --------------------------------------------------------

    def card(self) -> ExtCard:
        t = self.peek()
        if t.kind == "num":
            return fin(int(self.next().text))
        if t.kind == "ident":
            low = t.text.lower()
            if low == "w":
                self.next()
                return ALEPH0
            m = re.fullmatch(r"aleph(\d+)", low)
            if m:
                self.next()
                return self._aleph(int(m.group(1)), t)
            if low == "aleph":
                self.next()
                self.expect("(")
                level = int(self.expect_kind("num").text)
                self.expect(")")
                return self._aleph(level, t)
        self.fail("expected a cardinal literal")

    def _aleph(self, level: int, tok: Token) -> ExtCard:
        try:
            return aleph(level)
        except CardBoundError as e:
            raise ParseError(str(e), tok.line, tok.col) from None

    def _fraction(self) -> Fraction:
        num = int(self.expect_kind("num").text)
        den = 1
        if self.at("/"):
            self.next()
            den = int(self.expect_kind("num").text)
        return Fraction(num, den)

    # -- vectors ------------------------------------------------------------

    def vec(self) -> CardVec:
        self.expect("(")
        coords = [self.card()]
        while self.at(","):
            self.next()
            coords.append(self.card())
        self.expect(")")
        return CardVec(tuple(coords))

    # -- gallery elements -----------------------------------------------------

    def qpoint(self) -> QPoint:
        if self.at_ident("inf"):
            self.next()
            return QPoint(Fraction(0), "inf")
        tilde = False
        if self.at("~"):
            self.next()
            tilde = True
        num = int(self.expect_kind("num").text)
        den = 1
        if self.at("/"):
            self.next()
            den = int(self.expect_kind("num").text)
        q = Fraction(num, den)
        return QPoint(q, "tilde" if tilde else "plain")

    def rank_class(self, d: DedekindVMonoid) -> RankClass:
        if self.peek().kind == "num" and self.peek().text == "0":
            self.next()
            return d.zero
        self.expect("(")
        rank = self.card()
        cls = []
        if self.at(";"):
            self.next()
            if not self.at(")"):
                cls.append(int(self.expect_kind("num").text))
                while self.at(","):
                    self.next()
                    cls.append(int(self.expect_kind("num").text))
        self.expect(")")
        if rank.is_infinite or rank.is_zero:
            return RankClass(rank, tuple(0 for _ in d.factors))
        return d.elem(rank, cls or None)

    # -- forms ---------------------------------------------------------------

    def form(self) -> Form:
        a = b = fin(0)
        while True:
            coeff = fin(1)
            t = self.peek()
            if t.kind in ("num",) or self.at_ident("w") or (
                t.kind == "ident" and t.text.lower().startswith("aleph")
            ):
                coeff = self.card()
                if self.at("*"):
                    self.next()
            name = self.expect_kind("ident").text.upper()
            if name == "X1":
                a = a + coeff
            elif name == "X2":
                b = b + coeff
            else:
                self.fail("expected X1 or X2")
            if self.at("+"):
                self.next()
                continue
            break
        return Form(a, b)

    # -- families -------------------------------------------------------------

    def family(self, elem: Callable) -> Family:
        if self.at_ident("fam"):
            self.next()
        self.expect("{")
        pairs = []
        while not self.at("}"):
            e = elem()
            mult = fin(1)
            if self.at("*"):
                self.next()
                mult = self.card()
            pairs.append((e, mult))
            if self.at(","):
                self.next()
            elif not self.at("}"):
                self.fail("expected ',' or '}'")
        self.expect("}")
        return Family.of(pairs)

    # -- constraint systems -----------------------------------------------------

    def linear(self, n: int) -> tuple[int, ...]:
        coeffs = [0] * n
        while True:
            c = 1
            if self.peek().kind == "num":
                c = int(self.next().text)
                if self.at("*"):
                    self.next()
            t = self.expect_kind("ident")
            m = re.fullmatch(r"x(\d+)", t.text.lower())
            if not m:
                raise ParseError(f"expected a variable x0..x{n-1}", t.line, t.col)
            idx = int(m.group(1))
            if idx >= n:
                raise ParseError(f"variable x{idx} outside dimension {n}", t.line, t.col)
            coeffs[idx] += c
            if self.at("+"):
                self.next()
                continue
            return tuple(coeffs)

    def dio(self) -> ConstraintSystem:
        t = self.expect_kind("ident")
        if t.text.lower() != "dio":
            raise ParseError("expected 'dio'", t.line, t.col)
        nt = self.expect_kind("ident")
        if nt.text.lower() != "n":
            raise ParseError("expected 'n='", nt.line, nt.col)
        self.expect("=")
        n = int(self.expect_kind("num").text)
        self.expect("{")
        eqs, ineqs, congs = [], [], []
        while not self.at("}"):
            kind = self.expect_kind("ident").text.lower()
            self.expect(":")
            if kind == "eq":
                a = self.linear(n)
                self.expect("=")
                eqs.append((a, self.linear(n)))
            elif kind == "ineq":
                a = self.linear(n)
                self.expect("<=")
                ineqs.append((a, self.linear(n)))
            elif kind == "cong":
                a = self.linear(n)
                it = self.expect_kind("ident")
                if it.text.lower() != "in":
                    raise ParseError("expected 'in'", it.line, it.col)
                d = int(self.expect_kind("num").text)
                nt = self.expect_kind("ident")
                if nt.text.upper() != "N":
                    raise ParseError("expected 'N'", nt.line, nt.col)
                congs.append((a, d))
            else:
                self.fail("expected eq, ineq, or cong")
            self.expect(";")
        self.expect("}")
        return ConstraintSystem.make(n, eqs, ineqs, congs)

    # -- presentations -----------------------------------------------------------

    def twogen(self) -> TwoGenPresentation:
        t = self.expect_kind("ident")
        if t.text.lower() != "twogen":
            raise ParseError("expected 'twogen'", t.line, t.col)
        self.expect("{")
        rels = []
        while not self.at("}"):
            rt = self.expect_kind("ident")
            if rt.text.lower() != "rel":
                raise ParseError("expected 'rel'", rt.line, rt.col)
            self.expect(":")
            l = self.form()
            self.expect("=")
            r = self.form()
            self.expect(";")
            rels.append((l, r))
        self.expect("}")
        return TwoGenPresentation.of(rels)

    # -- monoids -------------------------------------------------------------------

    def monoid(self, bound=None) -> KappaMonoid:
        t = self.peek()
        if t.kind != "ident":
            self.fail("expected a monoid")
        low = t.text.lower()
        if low == "n0":
            self.next()
            return CyclicExtensionMonoid(CyclicMonoid(), bound)
        if low == "cmn":
            self.next()
            self.expect("(")
            m = int(self.expect_kind("num").text)
            self.expect(",")
            nn = int(self.expect_kind("num").text)
            self.expect(")")
            return CyclicExtensionMonoid(CyclicMonoid(m, nn), bound)
        if low == "vec":
            self.next()
            self.expect("(")
            n = int(self.expect_kind("num").text)
            self.expect(")")
            return VecMonoid(n, bound)
        if low == "dio":
            return DioMonoid(self.dio(), bound)
        if low == "qline":
            self.next()
            return RationalLineMonoid(bound)
        if low == "dedekind":
            self.next()
            self.expect("(")
            if self.at_ident("g"):
                self.next()
                self.expect("=")
            factors = [int(self.expect_kind("num").text)]
            while self.at(","):
                self.next()
                factors.append(int(self.expect_kind("num").text))
            self.expect(")")
            return DedekindVMonoid(tuple(factors), bound)
        if low == "hnp":
            self.next()
            self.expect("(")
            ct = self.expect_kind("ident")
            if ct.text.lower() != "c":
                raise ParseError("expected 'c='", ct.line, ct.col)
            self.expect("=")
            cs = [self._fraction()]
            while self.at(","):
                self.next()
                cs.append(self._fraction())
            self.expect(")")
            return HNPPredicate(tuple(cs))
        if low == "trivial":
            self.next()
            self.expect("(")
            base = self.monoid(bound=below(ALEPH0))
            self.expect(")")
            return TrivialExtensionMonoid(base, bound)
        if low == "twogen":
            return TwoGenMonoid(self.twogen())
        self.fail("expected a monoid name")


# -- element parser selection -------------------------------------------------


def element_parser(p: Parser, m: KappaMonoid) -> Callable:
    if isinstance(m, TrivialExtensionMonoid):
        inner = element_parser(p, m.base)

        def elem():
            if p.at_ident("inf"):
                p.next()
                return INF
            return inner()

        return elem
    if isinstance(m, RationalLineMonoid):
        return p.qpoint
    if isinstance(m, DedekindVMonoid):
        return lambda: p.rank_class(m)
    if isinstance(m, VecMonoid):  # includes DioMonoid
        return p.vec
    if isinstance(m, TwoGenMonoid):

        def form_elem():
            p.expect("(")
            f = p.form()
            p.expect(")")
            return f

        return form_elem
    return p.card  # cyclic extensions and anything cardinal-valued


def parse_family(src: str, m: KappaMonoid) -> Family:
    p = Parser(src)
    fam = p.family(element_parser(p, m))
    if not p.done():
        p.fail("trailing input")
    return fam


def parse_monoid(src: str, bound=None) -> KappaMonoid:
    p = Parser(src)
    m = p.monoid(bound)
    if not p.done():
        p.fail("trailing input")
    return m


def parse_vec(src: str) -> CardVec:
    p = Parser(src)
    v = p.vec()
    if not p.done():
        p.fail("trailing input")
    return v


def parse_presentation(src: str) -> TwoGenPresentation:
    p = Parser(src)
    t = p.twogen()
    if not p.done():
        p.fail("trailing input")
    return t


def parse_dsl(src: str):
    """Single entry point: sniff whether the text is a vector, a family (of
    cardinals or vectors), a constraint system, a presentation, or a monoid
    name, and return the corresponding value."""
    p = Parser(src)
    head = p.peek()
    if head.text == "(":
        out = p.vec()
    elif head.kind == "ident" and head.text.lower() == "fam":
        save = p.pos
        try:
            p.next()
            p.expect("{")
            vecs = p.at("(")
        finally:
            p.pos = save
        elem = (lambda: p.vec()) if vecs else p.card
        out = p.family(elem)
    elif head.kind == "ident" and head.text.lower() == "twogen":
        out = p.twogen()
    elif head.kind == "ident" and head.text.lower() == "dio":
        out = p.dio()
    else:
        out = p.monoid()
    if not p.done():
        p.fail("trailing input")
    return out


def render_dsl(x) -> str:
    """Inverse of parse_dsl for the values it produces."""
    if isinstance(x, CardVec):
        return render_elem(x)
    if isinstance(x, Family):
        return render_family(x)
    if isinstance(x, ConstraintSystem):
        return render_dio(x)
    if isinstance(x, TwoGenPresentation):
        return render_presentation(x)
    return render_monoid(x)


# -- rendering ------------------------------------------------------------------


def render_elem(e) -> str:
    if isinstance(e, ExtCard):
        return render_card(e)
    if isinstance(e, CardVec):
        return "(" + ", ".join(render_card(c) for c in e.coords) + ")"
    if isinstance(e, Inf):
        return "inf"
    if isinstance(e, QPoint):
        if e.tag == "inf":
            return "inf"
        body = str(e.q.numerator) if e.q.denominator == 1 else f"{e.q.numerator}/{e.q.denominator}"
        return ("~" if e.tag == "tilde" else "") + body
    if isinstance(e, RankClass):
        if e.rank.is_zero:
            return "0"
        if e.rank.is_infinite:
            return f"({render_card(e.rank)};)"
        return f"({render_card(e.rank)}; {', '.join(map(str, e.cls))})"
    if isinstance(e, Form):
        return f"({render_form(e)})"
    raise TypeError(f"no renderer for {type(e).__name__}")


def render_form(f: Form) -> str:
    return f"{render_card(f.a)}*X1 + {render_card(f.b)}*X2"


def render_family(fam: Family) -> str:
    inner = ", ".join(
        f"{render_elem(e)}*{render_card(m)}" for e, m in fam.entries
    )
    return "fam {" + inner + "}"


def render_linear(coeffs: tuple[int, ...]) -> str:
    terms = [
        (f"{c} x{i}" if c != 1 else f"x{i}") for i, c in enumerate(coeffs) if c
    ]
    return " + ".join(terms) if terms else "0 x0"


def render_dio(sys: ConstraintSystem) -> str:
    parts = []
    for a, b in sys.equations:
        parts.append(f"eq: {render_linear(a)} = {render_linear(b)};")
    for a, b in sys.inequalities:
        parts.append(f"ineq: {render_linear(a)} <= {render_linear(b)};")
    for a, d in sys.congruences:
        parts.append(f"cong: {render_linear(a)} in {d}N;")
    return f"dio n={sys.n} {{ " + " ".join(parts) + " }"


def render_presentation(p: TwoGenPresentation) -> str:
    seen = set()
    parts = []
    for l, r in p.relations:
        if (r, l) in seen:
            continue
        seen.add((l, r))
        parts.append(f"rel: {render_form(l)} = {render_form(r)};")
    return "twogen { " + " ".join(parts) + " }"


def render_monoid(m: KappaMonoid) -> str:
    if isinstance(m, TrivialExtensionMonoid):
        return f"trivial({render_monoid(m.base)})"
    if isinstance(m, DioMonoid):
        return render_dio(m.system)
    if isinstance(m, VecMonoid):
        return f"vec({m.n})"
    if isinstance(m, CyclicExtensionMonoid):
        return "N0" if m.cyc.is_free else f"cmn({m.cyc.m},{m.cyc.n})"
    if isinstance(m, RationalLineMonoid):
        return "qline"
    if isinstance(m, DedekindVMonoid):
        return "dedekind(" + ",".join(map(str, m.factors)) + ")"
    if isinstance(m, HNPPredicate):
        return m.name
    if isinstance(m, TwoGenMonoid):
        return render_presentation(m.p)
    raise TypeError(f"no renderer for {type(m).__name__}")


# -- certificates ---------------------------------------------------------------


def _render_blockset(fam: Family) -> str:
    return "{" + ", ".join(f"{render_elem(e)}*{render_card(m)}" for e, m in fam) + "}"


def render_certificate(cert: Certificate) -> str:
    lines = []
    if isinstance(cert, OmegaCertificate):
        lines.append("PREFIX")
        for b in cert.prefix:
            lines.append(
                f"B i={_render_blockset(b.iblock)} j={_render_blockset(b.jblock)}"
                f" u={render_elem(b.u)} v'={render_elem(b.v_next)}"
            )
        lines.append("CYCLE")
        for b in cert.cycle:
            lines.append(
                f"B i={_render_blockset(b.iblock)} j={_render_blockset(b.jblock)}"
                f" u={render_elem(b.u)} v'={render_elem(b.v_next)}"
            )
        return "\n".join(lines)
    if isinstance(cert, LayeredCertificate):
        for w, layer in cert.layers:
            lines.append(f"LAYER w={render_card(w)}")
            lines.append(render_certificate(layer))
        return "\n".join(lines)
    if isinstance(cert, CollapsedCertificate):
        for ib, jb, w in cert.blocks:
            lines.append(
                f"C i={_render_blockset(ib)} j={_render_blockset(jb)} w={render_card(w)}"
            )
        return "\n".join(lines)
    raise TypeError(f"no renderer for {type(cert).__name__}")


def parse_certificate(src: str, m: KappaMonoid) -> Certificate:
    """Parse the line-oriented certificate format against a monoid's element
    grammar."""
    stripped = [ln.strip() for ln in src.splitlines() if ln.strip()]
    if not stripped:
        raise ParseError("empty certificate", 1, 1)

    def parse_blockset(p: Parser) -> Family:
        elem = element_parser(p, m)
        p.expect("{")
        pairs = []
        while not p.at("}"):
            e = elem()
            mult = fin(1)
            if p.at("*"):
                p.next()
                mult = p.card()
            pairs.append((e, mult))
            if p.at(","):
                p.next()
        p.expect("}")
        return Family.of(pairs)

    def parse_b_line(line: str) -> BraidBlock:
        p = Parser(line)
        t = p.expect_kind("ident")
        if t.text != "B":
            raise ParseError("expected 'B'", t.line, t.col)
        p.expect_kind("ident")  # i
        p.expect("=")
        ib = parse_blockset(p)
        p.expect_kind("ident")  # j
        p.expect("=")
        jb = parse_blockset(p)
        p.expect_kind("ident")  # u
        p.expect("=")
        u = element_parser(p, m)()
        p.expect_kind("ident")  # v
        p.expect("'")
        p.expect("=")
        vn = element_parser(p, m)()
        return BraidBlock(ib, jb, u, vn)

    if stripped[0].startswith("C "):
        blocks = []
        for line in stripped:
            p = Parser(line)
            t = p.expect_kind("ident")
            if t.text != "C":
                raise ParseError("expected 'C'", t.line, t.col)
            p.expect_kind("ident")
            p.expect("=")
            ib = parse_blockset(p)
            p.expect_kind("ident")
            p.expect("=")
            jb = parse_blockset(p)
            p.expect_kind("ident")
            p.expect("=")
            w = p.card()
            blocks.append((ib, jb, w))
        return CollapsedCertificate(tuple(blocks))

    if stripped[0].startswith("LAYER"):
        layers = []
        i = 0
        while i < len(stripped):
            header = stripped[i]
            mm = re.fullmatch(r"LAYER\s+w=(\S+)", header)
            if not mm:
                raise ParseError("expected 'LAYER w=...'", i + 1, 1)
            w = Parser(mm.group(1)).card()
            i += 1
            chunk = []
            while i < len(stripped) and not stripped[i].startswith("LAYER"):
                chunk.append(stripped[i])
                i += 1
            layers.append((w, _parse_omega_lines(chunk, parse_b_line)))
        return LayeredCertificate(tuple(layers))

    return _parse_omega_lines(stripped, parse_b_line)


def _parse_omega_lines(lines: list[str], parse_b_line) -> OmegaCertificate:
    prefix, cycle = [], []
    target = None
    for ln in lines:
        if ln == "PREFIX":
            target = prefix
        elif ln == "CYCLE":
            target = cycle
        else:
            if target is None:
                raise ParseError("certificate lines before a section header", 1, 1)
            target.append(parse_b_line(ln))
    return OmegaCertificate(tuple(prefix), tuple(cycle))
