"""Expression grammar and session configuration for the CLI.

Grammar (ASCII canonical, Greek aliases accepted):

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*'? factor)*
    factor   := atom ('^' ['-'] uint)?
    atom     := 'th' | 'thb' | 'q' | 'qb' | 'w' uint | 'u' uint
              | uint ['/' uint] | 'i' | '(' expr ')'

Adjacency means product and products keep their written order; the
algebra is noncommutative and normal ordering happens only during
evaluation.  Negative exponents are accepted for the commuting scalar
atoms (the printers emit them for Laurent coefficients) but rejected on
the nilpotent generators.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from .algebra import PGAlgebra, PGElement
from .errors import ParseError, PGError
from .inner import WeightSpec
from .scalars import GaussianRational, Ring, Scalar

GENERATORS = ("th", "thb")
SCALAR_ATOMS = ("q", "qb")

_EXPONENT_CAP = 10_000


# -- tokens -------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # name | uint | imag | symbol
    text: str
    pos: int
    index: int | None = None


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()+-*^/":
            toks.append(Token("symbol", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token("uint", src[i:j], i))
            i = j
            continue
        if src.startswith("thb", i):
            toks.append(Token("name", "thb", i))
            i += 3
            continue
        if src.startswith("th", i):
            toks.append(Token("name", "th", i))
            i += 2
            continue
        if ch == "θ":  # Greek theta, optionally with combining macron
            if i + 1 < n and src[i + 1] == "̄":
                toks.append(Token("name", "thb", i))
                i += 2
            else:
                toks.append(Token("name", "th", i))
                i += 1
            continue
        if src.startswith("qb", i):
            toks.append(Token("name", "qb", i))
            i += 2
            continue
        if ch == "q":
            toks.append(Token("name", "q", i))
            i += 1
            continue
        if ch in "wu":
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"'{ch}' needs a numeric index", i)
            toks.append(Token("name", ch, i, index=int(src[i + 1 : j])))
            i = j
            continue
        if ch == "i":
            toks.append(Token("imag", "i", i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return toks


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: GaussianRational


@dataclass(frozen=True)
class Atom:
    kind: str  # th | thb | q | qb | w | u
    index: int | None = None


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Prod:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    items: tuple[tuple[int, "Node"], ...]  # (sign, node)


Node = Union[Lit, Atom, Pow, Prod, Sum]


class _Parser:
    def __init__(self, toks: list[Token], length: int):
        self.toks = toks
        self.pos = 0
        self.length = length

    def peek(self) -> Token | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self.length)
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.pos)
        return t

    def parse_expr(self) -> Node:
        items = []
        sign = 1
        t = self.peek()
        if t is not None and t.text == "-":
            self.next()
            sign = -1
        items.append((sign, self.parse_term()))
        while True:
            t = self.peek()
            if t is None or t.text not in "+-":
                break
            self.next()
            items.append((1 if t.text == "+" else -1, self.parse_term()))
        if len(items) == 1 and items[0][0] == 1:
            return items[0][1]
        return Sum(tuple(items))

    def parse_term(self) -> Node:
        factors = [self.parse_factor()]
        while True:
            t = self.peek()
            if t is None:
                break
            if t.text == "*":
                self.next()
                factors.append(self.parse_factor())
                continue
            if t.kind in ("name", "uint", "imag") or t.text == "(":
                factors.append(self.parse_factor())
                continue
            break
        if len(factors) == 1:
            return factors[0]
        return Prod(tuple(factors))

    def parse_factor(self) -> Node:
        base = self.parse_atom()
        t = self.peek()
        if t is not None and t.text == "^":
            self.next()
            neg = False
            t2 = self.peek()
            if t2 is not None and t2.text == "-":
                self.next()
                neg = True
            t3 = self.next()
            if t3.kind != "uint":
                raise ParseError("exponent must be an integer", t3.pos)
            e = int(t3.text)
            if e > _EXPONENT_CAP:
                warnings.warn(f"exponent {e} is implausibly large", stacklevel=4)
            return Pow(base, -e if neg else e)
        return base

    def parse_atom(self) -> Node:
        t = self.next()
        if t.text == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if t.kind == "imag":
            return Lit(GaussianRational(Fraction(0), Fraction(1)))
        if t.kind == "uint":
            num = int(t.text)
            nxt = self.peek()
            if nxt is not None and nxt.text == "/":
                self.next()
                den_tok = self.next()
                if den_tok.kind != "uint":
                    raise ParseError("denominator must be an integer", den_tok.pos)
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.pos)
                return Lit(GaussianRational(Fraction(num, den)))
            return Lit(GaussianRational(Fraction(num)))
        if t.kind == "name":
            if t.text in ("w", "u"):
                return Atom(t.text, t.index)
            return Atom(t.text)
        raise ParseError(f"unexpected token {t.text!r}", t.pos)


def parse(src: str) -> Node:
    toks = tokenize(src)
    if not toks:
        raise ParseError("empty expression", 0)
    p = _Parser(toks, len(src))
    node = p.parse_expr()
    t = p.peek()
    if t is not None:
        raise ParseError(f"trailing input {t.text!r}", t.pos)
    return node


def parse_gaussian(src: str) -> GaussianRational:
    """Parse a constant expression (rationals, i, sums, products, powers)."""

    def fold(node: Node) -> GaussianRational:
        if isinstance(node, Lit):
            return node.value
        if isinstance(node, Sum):
            acc = GaussianRational.zero()
            for sign, item in node.items:
                acc = acc + (fold(item) if sign > 0 else -fold(item))
            return acc
        if isinstance(node, Prod):
            acc = GaussianRational.one()
            for f in node.factors:
                acc = acc * fold(f)
            return acc
        if isinstance(node, Pow):
            return fold(node.base) ** node.exponent
        raise ParseError("expected a constant expression", 0)

    return fold(parse(src))


# -- session configuration ---------------------------------------------------------


@dataclass(frozen=True)
class SessionConfig:
    """Everything the CLI needs to interpret an expression."""

    l: int = 2
    q: str = "symbolic"  # "symbolic" | "real" | a nonzero Gaussian literal
    weights: str = "symbolic"  # "symbolic" | "1,2,..." | "preset:<name>"
    fmt: str = "text"

    def __post_init__(self):
        if self.l < 2:
            raise PGError("l must be at least 2")
        if self.fmt not in ("text", "latex", "json"):
            raise PGError(f"unknown output format {self.fmt!r}")

    @cached_property
    def q_value(self) -> GaussianRational | None:
        if self.q in ("symbolic", "real"):
            return None
        v = parse_gaussian(self.q)
        if v.is_zero():
            raise PGError("numeric q must be nonzero")
        return v

    @cached_property
    def weight_spec(self) -> WeightSpec:
        w = self.weights
        if w == "symbolic":
            return WeightSpec.symbolic(self.l)
        if w.startswith("preset:"):
            name = w.split(":", 1)[1]
            q = None
            if name == "qfactorial":
                v = self.q_value
                if v is None or not v.is_real() or v.re <= 0:
                    raise PGError("the qfactorial preset needs --q <positive rational>")
                q = v.re
            return WeightSpec.preset(self.l, name, q=q)
        try:
            values = [Fraction(part.strip()) for part in w.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise PGError(f"cannot read weights {w!r}: {exc}") from exc
        if len(values) != self.l:
            raise PGError(f"got {len(values)} weights but l={self.l}")
        return WeightSpec.numeric(self.l, values)

    @cached_property
    def ring(self) -> Ring:
        return self.weight_spec.ring(real_q=(self.q == "real"), q_value=self.q_value)

    @cached_property
    def algebra(self) -> PGAlgebra:
        return PGAlgebra(self.ring)


# -- evaluation ----------------------------------------------------------------------


def eval_ast(node: Node, cfg: SessionConfig) -> PGElement:
    """Evaluate left-to-right, respecting the written order of products."""
    alg = cfg.algebra
    ring = cfg.ring

    def scalar_elem(s: Scalar) -> PGElement:
        return alg.from_scalar(s)

    def ev(node: Node) -> PGElement:
        if isinstance(node, Lit):
            return scalar_elem(ring.from_gaussian(node.value))
        if isinstance(node, Atom):
            if node.kind == "th":
                return alg.theta()
            if node.kind == "thb":
                return alg.theta_bar()
            if node.kind == "q":
                return scalar_elem(ring.q())
            if node.kind == "qb":
                return scalar_elem(ring.qb())
            if node.kind == "w":
                if not 0 <= node.index < cfg.l:
                    raise PGError(f"w{node.index} out of range for l={cfg.l}")
                return scalar_elem(ring.w(node.index))
            if node.kind == "u":
                if not 0 <= node.index < cfg.l:
                    raise PGError(f"u{node.index} out of range for l={cfg.l}")
                return scalar_elem(ring.u(node.index))
            raise PGError(f"unknown atom {node.kind!r}")
        if isinstance(node, Pow):
            if node.exponent < 0:
                base = ev(node.base)
                s = base.coeff(0, 0)
                if base != scalar_elem(s):
                    raise PGError("negative powers need an invertible scalar base")
                return scalar_elem(s ** node.exponent)
            if (
                isinstance(node.base, Atom)
                and node.base.kind in GENERATORS
                and node.exponent >= cfg.l
            ):
                warnings.warn(
                    f"power {node.exponent} >= l={cfg.l} normalises to zero",
                    stacklevel=2,
                )
                return alg.zero()
            return ev(node.base) ** node.exponent
        if isinstance(node, Prod):
            out = alg.one()
            for f in node.factors:
                out = out * ev(f)
            return out
        if isinstance(node, Sum):
            out = alg.zero()
            for sign, item in node.items:
                v = ev(item)
                out = out + (v if sign > 0 else -v)
            return out
        raise PGError(f"cannot evaluate {node!r}")

    return ev(node)


def eval_expression(src: str, cfg: SessionConfig) -> PGElement:
    return eval_ast(parse(src), cfg)
