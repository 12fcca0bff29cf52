"""Weights and the weighted sesquilinear form.

The weight element is w(th, thb) = sum_m w_{l-1-m} th^m thb^m; the
reversed sub-index makes |th^a|^2 come out as w_a.  The form itself has
the closed formula

    <th^a thb^b, th^c thb^d> = [a+d == b+c] * [a+d < l] * w_{a+d}

extended anti-linearly in the first slot and linearly in the second.
`inner_berezin` computes the same pairing from its integral definition
(anti-Wick products against the weight, then a Berezin integral) and is
kept as an independent cross-check of `inner_closed`.

The form is indefinite on the full algebra: the top word has norm zero
and suitable combinations have strictly negative square norm.  Restricted
to the holomorphic span, the anti-holomorphic span, or their union it is
positive definite, with orthonormal bases given by th^n / sqrt(w_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import PGAlgebra, PGElement, Subspace
from .errors import (
    DimensionMismatchError,
    EnvironmentMismatchError,
    NotHilbertSpaceError,
    PGError,
    SingularWeightError,
    SymbolicOrderError,
)
from .scalars import Ring, Scalar


@dataclass(frozen=True)
class WeightSpec:
    """Weight data w_0 .. w_{l-1}: symbolic, or bound to nonzero rationals."""

    l: int
    values: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.l < 2:
            raise ValueError("need l >= 2")
        if self.values is not None:
            if len(self.values) != self.l:
                raise ValueError("need exactly l weight values")
            if any(v == 0 for v in self.values):
                raise SingularWeightError("weights must be nonzero")

    @staticmethod
    def symbolic(l: int) -> "WeightSpec":
        return WeightSpec(l)

    @staticmethod
    def numeric(l: int, values: Sequence) -> "WeightSpec":
        return WeightSpec(l, tuple(Fraction(v) for v in values))

    @staticmethod
    def preset(l: int, name: str, q: Fraction | None = None) -> "WeightSpec":
        """Named weight families: ones, factorial, qfactorial.

        The q-factorial family multiplies the truncated geometric sums
        1 + q + ... + q^{n-1}; it needs a positive rational q so that the
        weights stay positive.
        """
        if name == "ones":
            return WeightSpec.numeric(l, [1] * l)
        if name == "factorial":
            vals, f = [], 1
            for n in range(l):
                f *= max(n, 1)
                vals.append(f)
            return WeightSpec.numeric(l, vals)
        if name == "qfactorial":
            if q is None or q <= 0:
                raise PGError("the qfactorial preset needs a positive rational q")
            vals = []
            acc = Fraction(1)
            for n in range(l):
                if n:
                    acc *= sum(Fraction(q) ** k for k in range(n))
                vals.append(acc)
            return WeightSpec.numeric(l, vals)
        raise PGError(f"unknown weight preset {name!r}")

    @property
    def symbolic_mode(self) -> bool:
        return self.values is None

    @property
    def positive(self) -> bool:
        """Numeric specs report the actual sign; symbolic weights are
        positive by convention."""
        if self.values is None:
            return True
        return all(v > 0 for v in self.values)

    def ring(self, real_q: bool = False, q_value=None) -> Ring:
        return Ring(self.l, real_q=real_q, q_value=q_value, weight_values=self.values)

    def algebra(self, var: str = "th", **ring_kw) -> PGAlgebra:
        return PGAlgebra(self.ring(**ring_kw), var=var)


def check_spec(f: PGElement, spec: WeightSpec) -> None:
    if f.alg.l != spec.l:
        raise DimensionMismatchError(
            f"element has l={f.alg.l} but the weight spec has l={spec.l}"
        )
    if f.alg.ring.weight_values != spec.values:
        raise EnvironmentMismatchError(
            "element ring and weight spec disagree about the weight values"
        )


def weight_element(spec: WeightSpec, alg: PGAlgebra) -> PGElement:
    """w(th, thb) = sum_m w_{l-1-m} th^m thb^m."""
    ring = alg.ring
    out = alg.zero()
    for m in range(spec.l):
        out = out + alg.basis(m, m, coeff=ring.w(spec.l - 1 - m))
    check_spec(out, spec)
    return out


def inner_closed(f: PGElement, g: PGElement, spec: WeightSpec) -> Scalar:
    """The form via its closed formula: anti-linear in f, linear in g."""
    f._check(g)
    check_spec(f, spec)
    ring = f.alg.ring
    ll = spec.l
    total = ring.zero()
    for a, b, fc in f.terms():
        for c, d, gc in g.terms():
            if a + d == b + c and a + d < ll:
                total = total + fc.conj() * gc * ring.w(a + d)
    return total


def inner_berezin(f: PGElement, g: PGElement, spec: WeightSpec) -> Scalar:
    """The form via its integral definition; independent of inner_closed.

    For each m the words th^m, star(f), g, thb^m are merged by anti-Wick
    products into a single normal-ordered sum, which is then integrated.
    """
    f._check(g)
    check_spec(f, spec)
    alg = f.alg
    ring = alg.ring
    fs = f.star()
    total = ring.zero()
    for m in range(spec.l):
        integrand = alg.basis(m, 0).awp(fs).awp(g).awp(alg.basis(0, m))
        total = total + ring.w(spec.l - 1 - m) * integrand.berezin()
    return total


def norm_squared(f: PGElement, spec: WeightSpec) -> Scalar:
    return inner_closed(f, f, spec)


def negative_norm_witness(spec: WeightSpec, alg: PGAlgebra) -> PGElement:
    """1 + beta * th^{l-1} thb^{l-1} with beta = -w_0/w_{l-1}, which has
    square norm w_0 + 2*beta*w_{l-1} = -w_0 < 0 for positive weights."""
    if spec.symbolic_mode:
        raise SymbolicOrderError(
            "negative-norm witnesses need numeric weights; symbols are unordered"
        )
    if not spec.positive:
        raise NotHilbertSpaceError("witness construction assumes positive weights")
    beta = -spec.values[0] / spec.values[spec.l - 1]
    top = alg.basis(spec.l - 1, spec.l - 1, coeff=Fraction(beta))
    out = alg.one() + top
    check_spec(out, spec)
    return out


def phi_basis(
    spec: WeightSpec, alg: PGAlgebra, subspace: Subspace = Subspace.HOLOMORPHIC
) -> list[PGElement]:
    """Orthonormal bases th^n/sqrt(w_n) of the holomorphic span, their
    conjugates for the anti-holomorphic span, or the union for their sum."""
    if not spec.positive:
        raise NotHilbertSpaceError(
            "the form is not positive definite for these weights"
        )
    ring = alg.ring
    phis = [alg.basis(n, 0, coeff=ring.u(n, -1)) for n in range(spec.l)]
    if subspace is Subspace.HOLOMORPHIC:
        out = phis
    elif subspace is Subspace.ANTI_HOLOMORPHIC:
        out = [p.star() for p in phis]
    elif subspace is Subspace.SPAN_S:
        out = phis + [p.star() for p in phis[1:]]
    else:
        raise NotHilbertSpaceError(
            "the full algebra carries an indefinite form; no orthonormal basis"
        )
    for p in out:
        check_spec(p, spec)
    return out
