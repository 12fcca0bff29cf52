"""Reproducing kernels for the holomorphic subspace and the full algebra.

The holomorphic-space kernel is the two-variable tensor
K = sum_j (1/w_j) thb^j (x) eta^j: pairing its right slot against any
holomorphic element returns that element.  Its anti-holomorphic mirror is
the slotwise conjugate.

The full-space kernel comes from the Gram matrix G of the anti-Wick basis
under the weighted form.  G is block diagonal once the basis is grouped
by the grading j - i, each block is an anti-triangular Hankel matrix in
the weights, and det G is plus-or-minus a pure power of the top weight —
so G is invertible whenever w_{l-1} is nonzero and the inverse entries
are Laurent in the weights.  The block solve is the fast path; dense
fraction-free elimination is kept alongside as a cross-check.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from .algebra import PGAlgebra, PGElement, Subspace, require_subspace
from .errors import (
    DimensionMismatchError,
    EnvironmentMismatchError,
    IndefiniteMetricWarning,
    PGError,
    SingularWeightError,
)
from .exactlinalg import (
    bareiss_det,
    exact_inverse,
    char_poly,
    identity as mat_identity,
    is_hermitian,
    mat_mul,
    matrix_rank,
    montante_inverse,
    psd_certificate,
)
from .inner import WeightSpec, check_spec, inner_closed
from .scalars import GaussianRational, Ring, Scalar


def _default_ring(spec: WeightSpec, ring: Ring | None) -> Ring:
    if ring is None:
        return spec.ring()
    if ring.l != spec.l or ring.weight_values != spec.values:
        raise EnvironmentMismatchError("ring and weight spec disagree")
    return ring


class TensorElement:
    """Element of a two-variable tensor space over a shared scalar ring.

    Entries map ((a, b), (c, d)) to the scalar multiplying
    left^a leftbar^b (x) right^c rightbar^d.
    """

    __slots__ = ("left", "right", "entries")

    def __init__(self, left: PGAlgebra, right: PGAlgebra, entries: dict):
        if left.ring != right.ring:
            raise EnvironmentMismatchError("tensor slots must share one ring")
        self.left = left
        self.right = right
        self.entries = {k: v for k, v in entries.items() if not v.is_zero()}

    @property
    def l(self) -> int:
        return self.left.l

    def iter_entries(self):
        for key in sorted(self.entries):
            yield key, self.entries[key]

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.left == other.left
            and self.right == other.right
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.left, self.right, frozenset(self.entries.items())))

    def __repr__(self):
        bits = [f"{k}:{v!r}" for k, v in self.iter_entries()] or ["0"]
        return f"Tensor<{self.left.var}|{self.right.var}>[" + ", ".join(bits) + "]"

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if self.left != other.left or self.right != other.right:
            raise EnvironmentMismatchError("tensors live over different slots")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, self.left.ring.zero()) + v
        return TensorElement(self.left, self.right, out)

    def scale(self, s) -> "TensorElement":
        return TensorElement(
            self.left, self.right, {k: s * v for k, v in self.entries.items()}
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def perturbed(self, key, delta=1) -> "TensorElement":
        out = dict(self.entries)
        out[key] = out.get(key, self.left.ring.zero()) + self.left.ring.from_gaussian(
            GaussianRational.of(delta)
        )
        return TensorElement(self.left, self.right, out)

    def star_slots(self) -> "TensorElement":
        """Apply the conjugation to both slots: indices swap, scalars conj."""
        out = {}
        for ((a, b), (c, d)), v in self.entries.items():
            out[((b, a), (d, c))] = v.conj()
        return TensorElement(self.left, self.right, out)

    def rename(self, left_var: str | None = None, right_var: str | None = None):
        return TensorElement(
            self.left.with_var(left_var or self.left.var),
            self.right.with_var(right_var or self.right.var),
            self.entries,
        )

    def pair_right(self, f: PGElement, spec: WeightSpec) -> PGElement:
        """<self, f> over the right slot: anti-linear in the tensor, so its
        coefficients are conjugated and its left slot is starred."""
        check_spec(f, spec)
        if f.alg.ring != self.left.ring:
            raise EnvironmentMismatchError("tensor and element rings differ")
        if f.alg.var != self.right.var:
            f = f.substitute(self.right.var)
        ring = self.left.ring
        ll = self.l
        out = [[ring.zero()] * ll for _ in range(ll)]
        for ((a, b), (c, d)), v in self.entries.items():
            for i, j, fc in f.terms():
                if c + j == d + i and c + j < ll:
                    out[b][a] = out[b][a] + v.conj() * fc * ring.w(c + j)
        return PGElement(self.left, tuple(tuple(r) for r in out))


def kernel_bh(
    spec: WeightSpec,
    ring: Ring | None = None,
    left_var: str = "th",
    right_var: str = "eta",
) -> TensorElement:
    """K = sum_j (1/w_j) leftbar^j (x) right^j, anti-holomorphic in the
    left slot and holomorphic in the right."""
    ring = _default_ring(spec, ring)
    entries = {}
    for j in range(spec.l):
        wj = ring.w(j)
        if wj.is_zero():
            raise SingularWeightError(f"w{j} = 0 leaves the kernel undefined")
        entries[((0, j), (j, 0))] = wj.inverse()
    return TensorElement(
        PGAlgebra(ring, var=left_var), PGAlgebra(ring, var=right_var), entries
    )


def kernel_ah(
    spec: WeightSpec,
    ring: Ring | None = None,
    left_var: str = "th",
    right_var: str = "eta",
) -> TensorElement:
    """Mirror kernel sum_j (1/w_j) left^j (x) rightbar^j; equals the
    slotwise conjugate of kernel_bh."""
    return kernel_bh(spec, ring, left_var, right_var).star_slots()


def reproduce_bh(K: TensorElement, f: PGElement, spec: WeightSpec) -> PGElement:
    """Pair the right slot of K against a holomorphic element; the result
    (in the left variable) equals the input element."""
    require_subspace(f, Subspace.HOLOMORPHIC)
    return K.pair_right(f, spec)


def reproduce_ah(K: TensorElement, f: PGElement, spec: WeightSpec) -> PGElement:
    require_subspace(f, Subspace.ANTI_HOLOMORPHIC)
    return K.pair_right(f, spec)


def kernel_self_pairing(
    spec: WeightSpec,
    ring: Ring | None = None,
    out_left: str = "rho",
    out_right: str = "eta",
) -> TensorElement:
    """<K(eta, th), K(rho, th)> over the shared holomorphic slot.

    The result is again the kernel, now in the two leftover variables:
    pairing two kernel slices reproduces the kernel.
    """
    ring = _default_ring(spec, ring)
    k1 = kernel_bh(spec, ring, left_var=out_right, right_var="th")
    k2 = kernel_bh(spec, ring, left_var=out_left, right_var="th")
    entries: dict = {}
    ll = spec.l
    for ((a1, b1), (c1, d1)), v1 in k1.entries.items():
        for ((a2, b2), (c2, d2)), v2 in k2.entries.items():
            # <th^{c1} thb^{d1}, th^{c2} thb^{d2}> under the form
            if c1 + d2 == d1 + c2 and c1 + d2 < ll:
                w = ring.w(c1 + d2)
                # anti-linear slot: k1's coefficient conjugated, left slot starred
                key = ((b2, a2), (b1, a1))
                add = v1.conj() * v2 * w
                entries[key] = entries.get(key, ring.zero()) + add
    return TensorElement(
        PGAlgebra(ring, var=out_left), PGAlgebra(ring, var=out_right), entries
    )


class OperatorOnBH:
    """Linear operator on the holomorphic span in the th^j basis."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]

    @property
    def l(self) -> int:
        return self.ring.l

    def __eq__(self, other):
        if not isinstance(other, OperatorOnBH):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __repr__(self):
        return f"OperatorOnBH({self.rows!r})"

    @staticmethod
    def identity(ring: Ring) -> "OperatorOnBH":
        return OperatorOnBH(ring, mat_identity(ring.l, ring))

    @staticmethod
    def outer(f: PGElement, g: PGElement, spec: WeightSpec) -> "OperatorOnBH":
        """|f><g| : v -> f * <g, v>.  Matrix entry (i, k) is f_i conj(g_k) w_k."""
        require_subspace(f, Subspace.HOLOMORPHIC)
        require_subspace(g, Subspace.HOLOMORPHIC)
        check_spec(f, spec)
        ring = f.alg.ring
        ll = ring.l
        rows = [[ring.zero()] * ll for _ in range(ll)]
        for i in range(ll):
            fi = f.coeff(i, 0)
            if fi.is_zero():
                continue
            for k in range(ll):
                gk = g.coeff(k, 0)
                if gk.is_zero():
                    continue
                rows[i][k] = fi * gk.conj() * ring.w(k)
        return OperatorOnBH(ring, rows)

    def __add__(self, other: "OperatorOnBH") -> "OperatorOnBH":
        return OperatorOnBH(
            self.ring,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "OperatorOnBH") -> "OperatorOnBH":
        return OperatorOnBH(
            self.ring,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def scale(self, s) -> "OperatorOnBH":
        return OperatorOnBH(self.ring, [[s * c for c in row] for row in self.rows])

    def trace(self) -> Scalar:
        t = self.ring.zero()
        for i in range(self.l):
            t = t + self.rows[i][i]
        return t

    def apply(self, v: PGElement) -> PGElement:
        require_subspace(v, Subspace.HOLOMORPHIC)
        ring = self.ring
        ll = self.l
        out = [[ring.zero()] * ll for _ in range(ll)]
        for i in range(ll):
            acc = ring.zero()
            for k in range(ll):
                acc = acc + self.rows[i][k] * v.coeff(k, 0)
            out[i][0] = acc
        return PGElement(v.alg, tuple(tuple(r) for r in out))

    def form_matrix(self) -> list[list[Scalar]]:
        """W*A where W = diag(w_0..w_{l-1}) is the Gram matrix of th^j.

        <v, A v> = v^H (W A) v, so self-adjointness and positivity of the
        operator under the weighted form are Hermitian-ness and PSD-ness
        of this plain matrix.
        """
        ring = self.ring
        return [
            [ring.w(i) * self.rows[i][k] for k in range(self.l)]
            for i in range(self.l)
        ]

    def is_self_adjoint(self) -> bool:
        return is_hermitian(self.form_matrix())

    def is_psd(self) -> tuple[bool, list]:
        """Exact PSD decision for numeric weights via minor-sum signs."""
        s = self.form_matrix()
        if not is_hermitian(s):
            return False, []
        return psd_certificate(s, self.ring)

    def rank(self) -> int:
        return matrix_rank(self.rows, self.ring)


def kernel_diagonal_operator(
    spec: WeightSpec, ring: Ring | None = None
) -> OperatorOnBH:
    """K with both slots in the same variable, read as an operator on the
    holomorphic span: sum_j (1/w_j) |th^j><th^j|, which is the identity."""
    ring = _default_ring(spec, ring)
    if not spec.positive:
        warnings.warn(
            "weights are not all positive; the metric is indefinite",
            IndefiniteMetricWarning,
            stacklevel=2,
        )
    alg = PGAlgebra(ring)
    out = OperatorOnBH(ring, [[ring.zero()] * spec.l for _ in range(spec.l)])
    for j in range(spec.l):
        pj = alg.basis(j, 0, coeff=ring.w(j, -1))
        out = out + OperatorOnBH.outer(pj, alg.basis(j, 0), spec)
    return out


def pointwise_operator_bound(
    f: PGElement, spec: WeightSpec
) -> tuple[OperatorOnBH, bool]:
    """D = |f|^2 I - |f><f| together with an exact PSD verdict.

    The bound |f><f| <= |f|^2 I is the surviving analogue of the pointwise
    estimate of kernel theory; D is always PSD and annihilates f itself.
    """
    require_subspace(f, Subspace.HOLOMORPHIC)
    check_spec(f, spec)
    if spec.symbolic_mode or not spec.positive:
        raise PGError("the PSD decision needs positive numeric weights")
    ring = f.alg.ring
    n2 = inner_closed(f, f, spec)
    d = OperatorOnBH.identity(ring).scale(n2) - OperatorOnBH.outer(f, f, spec)
    verdict, _ = d.is_psd()
    return d, verdict


# -- Gram matrix of the anti-Wick basis -------------------------------------


def aw_basis_order(l: int) -> list[tuple[int, int]]:
    """Anti-Wick labels sorted by total degree, then by the th exponent."""
    return sorted(((i, j) for i in range(l) for j in range(l)),
                  key=lambda t: (t[0] + t[1], t[0]))


class GramMatrix:
    """The l^2 x l^2 matrix of anti-Wick pair inner products.

    Nonzero entries need equal gradings j - i of row and column labels, so
    grouping the basis by grading makes the matrix block diagonal with
    2l - 1 blocks of size at most l.
    """

    __slots__ = ("spec", "ring", "basis", "index", "rows", "blocks")

    def __init__(self, spec: WeightSpec, ring: Ring):
        self.spec = spec
        self.ring = ring
        self.basis = aw_basis_order(spec.l)
        self.index = {lab: p for p, lab in enumerate(self.basis)}
        alg = PGAlgebra(ring)
        elems = [alg.basis(i, j) for (i, j) in self.basis]
        self.rows = [
            [inner_closed(e1, e2, spec) for e2 in elems] for e1 in elems
        ]
        n = len(self.basis)
        for r in range(n):
            for c in range(r + 1, n):
                assert self.rows[r][c] == self.rows[c][r], "form must be symmetric"
        by_grading: dict[int, list[int]] = {}
        for p, (i, j) in enumerate(self.basis):
            by_grading.setdefault(j - i, []).append(p)
        self.blocks = [
            (g, by_grading[g]) for g in sorted(by_grading)
        ]

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, row_label, col_label) -> Scalar:
        return self.rows[self.index[row_label]][self.index[col_label]]

    def block_rows(self, positions: list[int]) -> list[list[Scalar]]:
        return [[self.rows[r][c] for c in positions] for r in positions]

    def det(self, method: str = "block") -> Scalar:
        """Exact determinant.  Symmetric regrouping by grading changes the
        determinant not at all (the permutation acts on rows and columns
        alike), so the block product needs no sign correction."""
        if method == "dense":
            return bareiss_det(self.rows, self.ring)
        if method != "block":
            raise ValueError("method must be 'block' or 'dense'")
        det = self.ring.one()
        for _, positions in self.blocks:
            det = det * bareiss_det(self.block_rows(positions), self.ring)
        return det

    def det_reference(self) -> Scalar:
        """(w_{l-1})^{l^2}, the determinant up to sign."""
        return self.ring.w(self.spec.l - 1) ** (self.spec.l ** 2)

    def det_sign(self, method: str = "block") -> int:
        """The sign in det = +- (w_{l-1})^{l^2}, settled by computation."""
        d = self.det(method)
        ref = self.det_reference()
        if d == ref:
            return 1
        if d == -ref:
            return -1
        raise PGError("determinant is not plus-or-minus the reference power")

    def inverse(self, method: str = "block") -> list[list[Scalar]]:
        """G^{-1}, exact; entries are Laurent in the weights because each
        block determinant is a monomial."""
        n = self.size
        if method == "dense":
            try:
                return exact_inverse(self.rows, self.ring)
            except PGError as exc:
                raise SingularWeightError(str(exc)) from exc
        if method != "block":
            raise ValueError("method must be 'block' or 'dense'")
        out = [[self.ring.zero()] * n for _ in range(n)]
        for _, positions in self.blocks:
            try:
                binv = exact_inverse(self.block_rows(positions), self.ring)
            except PGError as exc:
                raise SingularWeightError(str(exc)) from exc
            for bi, r in enumerate(positions):
                for bj, c in enumerate(positions):
                    out[r][c] = binv[bi][bj]
        return out


def gram_matrix(spec: WeightSpec, ring: Ring | None = None) -> GramMatrix:
    return GramMatrix(spec, _default_ring(spec, ring))


def gram_det(spec_or_gram, method: str = "block") -> Scalar:
    g = spec_or_gram if isinstance(spec_or_gram, GramMatrix) else gram_matrix(spec_or_gram)
    return g.det(method)


def kernel_pg(
    spec: WeightSpec,
    ring: Ring | None = None,
    left_var: str = "th",
    right_var: str = "eta",
    method: str = "block",
) -> TensorElement:
    """The unique full-space kernel: coefficients k_{abcd} solve
    sum_{cd} conj(k_{abcd}) G_{(c,d),(i,j)} = [(b,a) == (i,j)], i.e.
    k_{abcd} = (G^{-1})_{(c,d),(b,a)} since G is real symmetric."""
    ring = _default_ring(spec, ring)
    g = gram_matrix(spec, ring)
    ginv = g.inverse(method)
    entries = {}
    ll = spec.l
    for a in range(ll):
        for b in range(ll):
            col = g.index[(b, a)]
            for c in range(ll):
                for d in range(ll):
                    v = ginv[g.index[(c, d)]][col]
                    if not v.is_zero():
                        entries[((a, b), (c, d))] = v
    return TensorElement(
        PGAlgebra(ring, var=left_var), PGAlgebra(ring, var=right_var), entries
    )


def reproduce_pg(K: TensorElement, f: PGElement, spec: WeightSpec) -> PGElement:
    """Pair the right slot of the full-space kernel against any element;
    the result equals that element in the left variable."""
    return K.pair_right(f, spec)
