"""The paragrassmann algebra on two conjugate nilpotent generators.

Elements are stored in anti-Wick normal form: an l-by-l array of scalars,
entry (i, j) multiplying the basis word th^i * thb^j.  Multiplication
rewrites thb*th as q^{-1}*th*thb and drops any word whose exponent
reaches l, so products land back in normal form.

An algebra context carries the coefficient ring, a variable tag (so the
same coefficients can live over th/thb, eta/etab, ...) and a flag
recording whether the deformation parameter is read as q or as its
inverse (the generator-swap map lands in the latter).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatchError,
    EnvironmentMismatchError,
    WrongSubspaceError,
)
from .scalars import GaussianRational, Ring, Scalar


class Subspace(Enum):
    HOLOMORPHIC = "holomorphic"
    ANTI_HOLOMORPHIC = "anti-holomorphic"
    SPAN_S = "span-s"
    FULL = "full"


@dataclass(frozen=True)
class PGAlgebra:
    """Context for elements: coefficient ring, variable tag, q-orientation."""

    ring: Ring
    var: str = "th"
    q_inverted: bool = False

    @property
    def l(self) -> int:
        return self.ring.l

    def q_factor(self, power: int) -> Scalar:
        """The deformation parameter of this algebra raised to `power`."""
        return self.ring.q(-power if self.q_inverted else power)

    def swapped(self) -> "PGAlgebra":
        return replace(self, q_inverted=not self.q_inverted)

    def with_var(self, var: str) -> "PGAlgebra":
        return replace(self, var=var)

    # -- element constructors ------------------------------------------------

    def zero(self) -> "PGElement":
        n = self.l
        z = self.ring.zero()
        return PGElement(self, tuple(tuple(z for _ in range(n)) for _ in range(n)))

    def one(self) -> "PGElement":
        return self.basis(0, 0)

    def basis(self, i: int, j: int, coeff=1) -> "PGElement":
        """coeff * th^i * thb^j."""
        if not (0 <= i < self.l and 0 <= j < self.l):
            raise DimensionMismatchError(
                f"exponents ({i},{j}) out of range for l={self.l}"
            )
        rows = [[self.ring.zero()] * self.l for _ in range(self.l)]
        rows[i][j] = (
            coeff if isinstance(coeff, Scalar) else self.ring.from_gaussian(coeff)
        )
        return PGElement(self, tuple(tuple(r) for r in rows))

    def theta(self, k: int = 1) -> "PGElement":
        return self.basis(k, 0)

    def theta_bar(self, k: int = 1) -> "PGElement":
        return self.basis(0, k)

    def from_scalar(self, s) -> "PGElement":
        return self.basis(0, 0, coeff=s)

    def from_terms(self, terms: Iterable[tuple[int, int, Scalar]]) -> "PGElement":
        rows = [[self.ring.zero()] * self.l for _ in range(self.l)]
        for i, j, c in terms:
            rows[i][j] = rows[i][j] + c
        return PGElement(self, tuple(tuple(r) for r in rows))


class PGElement:
    """Element in anti-Wick normal form over a fixed algebra context."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: PGAlgebra, coeffs: tuple[tuple[Scalar, ...], ...]):
        self.alg = alg
        self.coeffs = coeffs

    # -- plumbing -------------------------------------------------------------

    def _check(self, other: "PGElement") -> None:
        if self.alg.l != other.alg.l:
            raise DimensionMismatchError(
                f"elements of different order: l={self.alg.l} vs l={other.alg.l}"
            )
        if self.alg != other.alg:
            raise EnvironmentMismatchError(
                "elements live over different algebra contexts"
            )

    def coeff(self, i: int, j: int) -> Scalar:
        return self.coeffs[i][j]

    def terms(self) -> Iterator[tuple[int, int, Scalar]]:
        """Nonzero coefficients, ordered by (i, j)."""
        for i in range(self.alg.l):
            for j in range(self.alg.l):
                c = self.coeffs[i][j]
                if not c.is_zero():
                    yield i, j, c

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.coeffs for c in row)

    def __eq__(self, other):
        if not isinstance(other, PGElement):
            return NotImplemented
        return self.alg == other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.alg, self.coeffs))

    def __repr__(self):
        parts = [f"({i},{j}):{c!r}" for i, j, c in self.terms()] or ["0"]
        return f"PGElement<{self.alg.var},l={self.alg.l}>[" + ", ".join(parts) + "]"

    # -- linear structure ------------------------------------------------------

    def __add__(self, other: "PGElement") -> "PGElement":
        self._check(other)
        return PGElement(
            self.alg,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.coeffs, other.coeffs)
            ),
        )

    def __neg__(self) -> "PGElement":
        return PGElement(
            self.alg, tuple(tuple(-c for c in row) for row in self.coeffs)
        )

    def __sub__(self, other: "PGElement") -> "PGElement":
        return self + (-other)

    def scale(self, s) -> "PGElement":
        s = s if isinstance(s, Scalar) else self.alg.ring.from_gaussian(
            GaussianRational.of(s)
        )
        return PGElement(
            self.alg, tuple(tuple(s * c for c in row) for row in self.coeffs)
        )

    def __rmul__(self, other):
        if isinstance(other, (int, GaussianRational, Scalar)):
            return self.scale(other)
        return NotImplemented

    # -- multiplication ----------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, PGElement):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        ll = alg.l
        out = [[alg.ring.zero()] * ll for _ in range(ll)]
        for i, j, fc in self.terms():
            for k, m, gc in other.terms():
                if i + k >= ll or j + m >= ll:
                    continue
                out[i + k][j + m] = out[i + k][j + m] + fc * gc * alg.q_factor(-j * k)
        return PGElement(alg, tuple(tuple(r) for r in out))

    def __pow__(self, n: int) -> "PGElement":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def awp(self, other: "PGElement") -> "PGElement":
        """Anti-Wick product: exponents add with no deformation factor."""
        self._check(other)
        alg = self.alg
        ll = alg.l
        out = [[alg.ring.zero()] * ll for _ in range(ll)]
        for i, j, fc in self.terms():
            for k, m, gc in other.terms():
                if i + k >= ll or j + m >= ll:
                    continue
                out[i + k][j + m] = out[i + k][j + m] + fc * gc
        return PGElement(alg, tuple(tuple(r) for r in out))

    # -- conjugation, integral, swap ------------------------------------------------

    def star(self) -> "PGElement":
        """Anti-linear involution: coefficients conjugated, indices swapped."""
        ll = self.alg.l
        return PGElement(
            self.alg,
            tuple(
                tuple(self.coeffs[j][i].conj() for j in range(ll))
                for i in range(ll)
            ),
        )

    def berezin(self) -> Scalar:
        """Berezin integral: the coefficient of the top word."""
        return self.coeffs[self.alg.l - 1][self.alg.l - 1]

    def swap(self) -> "PGElement":
        """Image under th -> thb, thb -> th, landing in the algebra whose
        deformation parameter is the inverse of this one's."""
        target = self.alg.swapped()
        out = [[self.alg.ring.zero()] * self.alg.l for _ in range(self.alg.l)]
        for i, j, c in self.terms():
            out[j][i] = out[j][i] + c * self.alg.q_factor(i * j)
        return PGElement(target, tuple(tuple(r) for r in out))

    def substitute(self, var: str) -> "PGElement":
        """Same coefficients re-tagged to a new variable pair."""
        return PGElement(self.alg.with_var(var), self.coeffs)

    # -- subspace predicates ----------------------------------------------------------

    def is_holomorphic(self) -> bool:
        return all(j == 0 for _, j, _ in self.terms())

    def is_anti_holomorphic(self) -> bool:
        return all(i == 0 for i, _, _ in self.terms())

    def in_span_s(self) -> bool:
        return all(i == 0 or j == 0 for i, j, _ in self.terms())

    def in_subspace(self, tag: Subspace) -> bool:
        if tag is Subspace.HOLOMORPHIC:
            return self.is_holomorphic()
        if tag is Subspace.ANTI_HOLOMORPHIC:
            return self.is_anti_holomorphic()
        if tag is Subspace.SPAN_S:
            return self.in_span_s()
        return True


def w_to_aw(alg: PGAlgebra, i: int, j: int) -> PGElement:
    """Normal form of the Wick word thb^i * th^j, i.e. q^{-ij} th^j thb^i."""
    if not (0 <= i < alg.l and 0 <= j < alg.l):
        raise DimensionMismatchError(f"indices ({i},{j}) out of range for l={alg.l}")
    return alg.basis(j, i, coeff=alg.q_factor(-i * j))


def poly_calculus(coeffs: Sequence, target: PGElement) -> PGElement:
    """Evaluate sum_k coeffs[k] * target^k by Horner's rule."""
    alg = target.alg
    out = alg.zero()
    for c in reversed(list(coeffs)):
        out = out * target + alg.from_scalar(
            c if isinstance(c, Scalar) else alg.ring.from_gaussian(GaussianRational.of(c))
        )
    return out


def substitute_variable(f: PGElement, var: str) -> PGElement:
    return f.substitute(var)


def require_subspace(f: PGElement, tag: Subspace) -> None:
    if not f.in_subspace(tag):
        raise WrongSubspaceError(f"element does not lie in {tag.value}")
