"""Exact arithmetic for the coefficient ring.

Scalars are finite sums of monomials

    c * q^a * qb^b * w0^e0 ... w_{l-1}^e_{l-1} * u0^f0 ... u_{l-1}^f_{l-1}

with Gaussian-rational coefficients ``c``.  Here ``q`` and ``qb`` are
commuting deformation symbols, ``wn`` are weight symbols (Laurent, so
negative powers are allowed) and ``un`` is the positive square root of
``wn``; the relation ``un^2 = wn`` is folded in whenever terms are built,
so every scalar has one canonical form and equality is structural.

A :class:`Ring` fixes how the symbols are read: independent ``q``/``qb``,
a real ``q`` (``qb`` folded into ``q``), or an exact numeric ``q``;
weights symbolic or bound to exact rational values.  Scalars from
different rings never interoperate.

All values are immutable; operations return new scalars.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence, Union

from .errors import (
    EnvironmentMismatchError,
    ExactDivisionError,
    NotHilbertSpaceError,
    PGError,
)

RatLike = Union[int, Fraction]


def fraction_sqrt(v: Fraction) -> Fraction | None:
    """Exact square root of a positive rational, or None if irrational."""
    if v <= 0:
        return None
    rn, rd = isqrt(v.numerator), isqrt(v.denominator)
    if rn * rn == v.numerator and rd * rd == v.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(Fraction(value), Fraction(0))
        raise TypeError(f"cannot coerce {value!r} to a Gaussian rational")

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return (GaussianRational.one() / self) ** (-n)
        out = GaussianRational.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    @staticmethod
    def zero() -> "GaussianRational":
        return GaussianRational()

    @staticmethod
    def one() -> "GaussianRational":
        return GaussianRational(Fraction(1), Fraction(0))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


@dataclass(frozen=True)
class Ring:
    """Symbol environment for scalars.

    l              number of weight symbols (the nilpotency order)
    real_q         fold qb into q on construction (q treated as real)
    q_value        exact numeric q; q/qb powers fold into coefficients
    weight_values  exact numeric weights; w symbols fold into coefficients
    """

    l: int
    real_q: bool = False
    q_value: GaussianRational | None = None
    weight_values: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.l < 2:
            raise ValueError("nilpotency order l must be at least 2")
        if self.q_value is not None and self.q_value.is_zero():
            raise ValueError("numeric q must be nonzero")
        if self.weight_values is not None:
            if len(self.weight_values) != self.l:
                raise ValueError("need exactly l weight values")
            if any(v == 0 for v in self.weight_values):
                raise ValueError("weight values must be nonzero")

    @property
    def q_mode(self) -> str:
        if self.q_value is not None:
            return "numeric"
        return "real" if self.real_q else "symbolic"

    # -- term layout: key = (eq, eqb, w0..w_{l-1}, u0..u_{l-1}) ------------

    def _normalize(self, eq, eqb, w, u, coeff):
        """Canonicalise one monomial; None if the coefficient vanished."""
        if coeff.is_zero():
            return None
        if self.q_value is not None:
            if eq:
                coeff = coeff * self.q_value ** eq
                eq = 0
            if eqb:
                coeff = coeff * self.q_value.conj() ** eqb
                eqb = 0
        elif self.real_q and eqb:
            eq += eqb
            eqb = 0
        w = list(w)
        u = list(u)
        vals = self.weight_values
        for n in range(self.l):
            un = u[n]
            if un:
                if vals is None:
                    r = un % 2
                    w[n] += (un - r) // 2
                    u[n] = r
                else:
                    root = fraction_sqrt(vals[n])
                    if root is not None:
                        coeff = coeff * root ** un
                        u[n] = 0
                    elif vals[n] > 0:
                        r = un % 2
                        coeff = coeff * vals[n] ** ((un - r) // 2)
                        u[n] = r
                    else:
                        raise NotHilbertSpaceError(
                            f"square root of non-positive weight w{n}"
                        )
            if vals is not None and w[n]:
                coeff = coeff * vals[n] ** w[n]
                w[n] = 0
        return (eq, eqb, *w, *u), coeff

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Scalar":
        return Scalar(self, {})

    def one(self) -> "Scalar":
        return self.from_gaussian(GaussianRational.one())

    def from_gaussian(self, c) -> "Scalar":
        c = GaussianRational.of(c)
        if c.is_zero():
            return self.zero()
        key = (0, 0) + (0,) * (2 * self.l)
        return Scalar(self, {key: c})

    def monomial(self, coeff, eq=0, eqb=0, w=None, u=None) -> "Scalar":
        w = list(w) if w is not None else [0] * self.l
        u = list(u) if u is not None else [0] * self.l
        if len(w) != self.l or len(u) != self.l:
            raise ValueError("exponent vectors must have length l")
        nt = self._normalize(eq, eqb, w, u, GaussianRational.of(coeff))
        return Scalar(self, {} if nt is None else {nt[0]: nt[1]})

    def q(self, power: int = 1) -> "Scalar":
        return self.monomial(1, eq=power)

    def qb(self, power: int = 1) -> "Scalar":
        return self.monomial(1, eqb=power)

    def w(self, n: int, power: int = 1) -> "Scalar":
        if not 0 <= n < self.l:
            raise ValueError(f"weight index {n} out of range for l={self.l}")
        w = [0] * self.l
        w[n] = power
        return self.monomial(1, w=w)

    def u(self, n: int, power: int = 1) -> "Scalar":
        if not 0 <= n < self.l:
            raise ValueError(f"root index {n} out of range for l={self.l}")
        u = [0] * self.l
        u[n] = power
        return self.monomial(1, u=u)

    # -- key introspection (used by printers and tests) --------------------

    def key_q(self, key) -> int:
        return key[0]

    def key_qb(self, key) -> int:
        return key[1]

    def key_w(self, key) -> tuple[int, ...]:
        return key[2 : 2 + self.l]

    def key_u(self, key) -> tuple[int, ...]:
        return key[2 + self.l : 2 + 2 * self.l]


class Scalar:
    """Element of the coefficient ring, kept in canonical form."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self._terms = terms

    # -- helpers -----------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise EnvironmentMismatchError(
                    "scalars from different rings cannot be combined"
                )
            return other
        return self.ring.from_gaussian(GaussianRational.of(other))

    @staticmethod
    def _make(ring: Ring, terms: dict) -> "Scalar":
        return Scalar(ring, {k: c for k, c in terms.items() if not c.is_zero()})

    def iter_terms(self) -> Iterator[tuple[tuple, GaussianRational]]:
        """Terms in canonical (lexicographic key) order."""
        for key in sorted(self._terms):
            yield key, self._terms[key]

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self == self.ring.one()

    def is_real(self) -> bool:
        """Structurally invariant under conjugation in this ring's mode."""
        return self == self.conj()

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in k) for k in self._terms)

    def involves_q(self) -> bool:
        return any(k[0] or k[1] for k in self._terms)

    def constant(self) -> GaussianRational:
        """The value of a symbol-free scalar."""
        if self.is_zero():
            return GaussianRational.zero()
        if not self.is_constant():
            raise PGError("scalar is not constant")
        return next(iter(self._terms.values()))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, GaussianRational.zero()) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return Scalar(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        ring = self.ring
        ll = ring.l
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                nt = ring._normalize(
                    k1[0] + k2[0],
                    k1[1] + k2[1],
                    [a + b for a, b in zip(k1[2 : 2 + ll], k2[2 : 2 + ll])],
                    [a + b for a, b in zip(k1[2 + ll :], k2[2 + ll :])],
                    c1 * c2,
                )
                if nt is None:
                    continue
                key, c = nt
                s = out.get(key, GaussianRational.zero()) + c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return Scalar(ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Scalar":
        """Inverse of a single-term scalar (a unit of the Laurent ring)."""
        if len(self._terms) != 1:
            raise PGError("only monomial scalars are invertible")
        (key, c), = self._terms.items()
        inv_key = tuple(-e for e in key)
        ll = self.ring.l
        nt = self.ring._normalize(
            inv_key[0],
            inv_key[1],
            list(inv_key[2 : 2 + ll]),
            list(inv_key[2 + ll :]),
            GaussianRational.one() / c,
        )
        return Scalar(self.ring, {nt[0]: nt[1]})

    def exact_div(self, other: "Scalar") -> "Scalar":
        """Exact quotient self/other; raises if the division is not exact.

        Leading-term elimination in lexicographic key order.  Valid because
        canonical monomials form an ordered group, so leading terms multiply.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("exact division by zero scalar")
        if self.is_zero():
            return self
        if len(other._terms) == 1:
            return self * other.inverse()
        lead_key = max(other._terms)
        lead_c = other._terms[lead_key]
        lead = Scalar(self.ring, {lead_key: lead_c})
        rem = self
        out = self.ring.zero()
        last = None
        for _ in range(10000):
            if rem.is_zero():
                return out
            rk = max(rem._terms)
            if last is not None and rk >= last:
                break
            last = rk
            t = Scalar(self.ring, {rk: rem._terms[rk]}).exact_div(lead)
            out = out + t
            rem = rem - t * other
        raise ExactDivisionError("inexact polynomial division")

    # -- conjugation and substitutions ---------------------------------------

    def conj(self) -> "Scalar":
        """Swap q and qb exponents, conjugate coefficients; weights fixed."""
        ring = self.ring
        out: dict = {}
        for k, c in self._terms.items():
            key = (k[1], k[0]) + k[2:]
            cc = c.conj()
            s = out.get(key, GaussianRational.zero()) + cc
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Scalar(ring, out)

    def cast(self, ring: Ring) -> "Scalar":
        """Reinterpret in another ring of the same l, folding any symbols
        the target ring binds to numeric values."""
        if ring == self.ring:
            return self
        if ring.l != self.ring.l:
            raise EnvironmentMismatchError("cannot cast between different l")
        ll = ring.l
        out = ring.zero()
        for k, c in self._terms.items():
            out = out + ring.monomial(
                c, eq=k[0], eqb=k[1], w=k[2 : 2 + ll], u=k[2 + ll :]
            )
        return out

    def fold_real(self) -> "Scalar":
        """Image under the substitution qb -> q (q read as real)."""
        from dataclasses import replace

        if self.ring.real_q or self.ring.q_value is not None:
            return self
        return self.cast(replace(self.ring, real_q=True))

    # -- evaluation -----------------------------------------------------------

    def eval(self, q_val=1, w_vals: Sequence | None = None) -> complex:
        """Substitute numbers for the symbols and return a complex value.

        Rational inputs go through exact arithmetic with a single final
        rounding; other inputs use complex arithmetic throughout.
        """
        need_w = any(
            any(k[2 + i] for i in range(2 * self.ring.l)) for k in self._terms
        )
        if need_w and w_vals is None:
            raise PGError("this scalar needs weight values to evaluate")
        if w_vals is not None and len(w_vals) != self.ring.l:
            raise PGError("need exactly l weight values")

        exact_q = isinstance(q_val, (int, Fraction, GaussianRational))
        exact_w = w_vals is None or all(
            isinstance(v, (int, Fraction)) for v in w_vals
        )
        no_roots = all(
            not any(k[2 + self.ring.l :]) for k in self._terms
        )
        ll = self.ring.l
        if exact_q and exact_w and no_roots:
            qv = GaussianRational.of(q_val)
            acc = GaussianRational.zero()
            for k, c in self._terms.items():
                t = c
                if k[0]:
                    t = t * qv ** k[0]
                if k[1]:
                    t = t * qv.conj() ** k[1]
                for n in range(ll):
                    e = k[2 + n]
                    if e:
                        t = t * Fraction(w_vals[n]) ** e
                acc = acc + t
            return complex(acc)

        qc = complex(GaussianRational.of(q_val)) if exact_q else complex(q_val)
        acc_c = 0j
        for k, c in self._terms.items():
            t = complex(c)
            if k[0]:
                t *= qc ** k[0]
            if k[1]:
                t *= qc.conjugate() ** k[1]
            for n in range(ll):
                if k[2 + n]:
                    t *= complex(w_vals[n]) ** k[2 + n]
                if k[2 + ll + n]:
                    t *= cmath.sqrt(complex(w_vals[n])) ** k[2 + ll + n]
            acc_c += t
        return acc_c

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.ring.from_gaussian(GaussianRational.of(other))
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_zero():
            return "Scalar(0)"
        bits = []
        for key, c in self.iter_terms():
            bits.append(f"{c!r}*{key}")
        return "Scalar(" + " + ".join(bits) + ")"
