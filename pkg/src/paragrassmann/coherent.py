"""Coherent states and the Segal-Bargmann transform.

The model Hilbert space is coordinate l-space over the scalar ring with
distinguished basis e_0..e_{l-1}.  The two coherent states are single
tensors (not families):

    ket = sum_n phi_n (x) e_n        bra = sum_n star(phi_n) (x) e'_n

Pairing bra against ket contracts the dual basis and leaves the
holomorphic-space reproducing kernel.  The transform C sends e_n to
phi_n; it is unitary from coordinate space onto the holomorphic span,
and applying it to the ket's Hilbert slot also returns the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import PGAlgebra, PGElement, Subspace, require_subspace
from .errors import DimensionMismatchError, EnvironmentMismatchError
from .inner import WeightSpec, check_spec, inner_closed, phi_basis
from .kernels import OperatorOnBH, TensorElement
from .scalars import GaussianRational, Ring, Scalar


def as_coords(ring: Ring, psi: Sequence) -> list[Scalar]:
    """Coerce a coordinate sequence into scalars over `ring`."""
    out = []
    for c in psi:
        out.append(c if isinstance(c, Scalar) else ring.from_gaussian(GaussianRational.of(c)))
    if len(out) != ring.l:
        raise DimensionMismatchError(f"need exactly {ring.l} coordinates")
    return out


@dataclass(frozen=True)
class CoherentState:
    """One tensor pairing the phi basis against the model basis (ket) or
    its dual (bra); parts[n] is the paragrassmann factor of slot n."""

    spec: WeightSpec
    parts: tuple[PGElement, ...]
    dual: bool

    @property
    def alg(self) -> PGAlgebra:
        return self.parts[0].alg


def coherent_ket(spec: WeightSpec, alg: PGAlgebra) -> CoherentState:
    return CoherentState(spec, tuple(phi_basis(spec, alg)), dual=False)


def coherent_bra(spec: WeightSpec, alg: PGAlgebra) -> CoherentState:
    phis = phi_basis(spec, alg)
    return CoherentState(spec, tuple(p.star() for p in phis), dual=True)


def coherent_pairing(bra: CoherentState, ket: CoherentState) -> TensorElement:
    """<bra | ket>: the dual pairing contracts e'_n against e_n, leaving
    sum_n star(phi_n)(left) (x) phi_n(right) — the reproducing kernel."""
    if not bra.dual or ket.dual:
        raise EnvironmentMismatchError("pairing needs a bra and a ket")
    if bra.spec != ket.spec:
        raise EnvironmentMismatchError("coherent states built from different specs")
    if bra.alg.ring != ket.alg.ring:
        raise EnvironmentMismatchError("coherent states over different rings")
    ring = bra.alg.ring
    entries: dict = {}
    for bn, kn in zip(bra.parts, ket.parts):
        for a, b, cb in bn.terms():
            for c, d, ck in kn.terms():
                key = ((a, b), (c, d))
                entries[key] = entries.get(key, ring.zero()) + cb * ck
    return TensorElement(bra.alg, ket.alg, entries)


def sb_transform(psi: Sequence, spec: WeightSpec, alg: PGAlgebra) -> PGElement:
    """C psi = sum_n psi_n phi_n: the unitary sending e_n to phi_n."""
    coords = as_coords(alg.ring, psi)
    phis = phi_basis(spec, alg)
    out = alg.zero()
    for c, p in zip(coords, phis):
        out = out + p.scale(c)
    return out


def sb_inverse(f: PGElement, spec: WeightSpec) -> list[Scalar]:
    """Coordinates <phi_n, f> of a holomorphic element; inverts sb_transform."""
    require_subspace(f, Subspace.HOLOMORPHIC)
    check_spec(f, spec)
    phis = phi_basis(spec, f.alg)
    return [inner_closed(p, f, spec) for p in phis]


def sb_transform_ket(ket: CoherentState, out_var: str = "th") -> TensorElement:
    """Apply the transform to the Hilbert slot of a paragrassmann-valued
    vector: sum_n star(phi_n)(out) (x) parts_n.  On the coherent ket this
    gives the reproducing kernel."""
    alg_out = ket.alg.with_var(out_var)
    phis = phi_basis(ket.spec, alg_out)
    ring = alg_out.ring
    entries: dict = {}
    for n, part in enumerate(ket.parts):
        left = phis[n].star()
        for a, b, cl in left.terms():
            for c, d, cr in part.terms():
                key = ((a, b), (c, d))
                entries[key] = entries.get(key, ring.zero()) + cl * cr
    return TensorElement(alg_out, ket.alg, entries)


def hilbert_inner(ring: Ring, psi: Sequence, chi: Sequence) -> Scalar:
    """<psi, chi> = sum_n conj(psi_n) chi_n on coordinate l-space."""
    ps, cs = as_coords(ring, psi), as_coords(ring, chi)
    out = ring.zero()
    for p, c in zip(ps, cs):
        out = out + p.conj() * c
    return out


def resolution_of_identity(spec: WeightSpec, alg: PGAlgebra) -> OperatorOnBH:
    """sum_n |phi_n><phi_n| as an operator on the holomorphic span; equals
    the identity, which is the finite-model form of the resolution."""
    phis = phi_basis(spec, alg)
    out = OperatorOnBH(alg.ring, [[alg.ring.zero()] * spec.l for _ in range(spec.l)])
    for p in phis:
        out = out + OperatorOnBH.outer(p, p, spec)
    return out
