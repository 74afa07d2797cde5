"""B-field transforms, normal forms, pure spinors, Hermitian pairs, and metrics.

A B-field acts on the generalized tangent space by e^B = [[1, 0], [B, 1]]
with B(X) = i_X B, and on an invariant structure by J |-> e^{-B} J e^{B}.
Invariant B-fields are supported on 2-element M-classes, one coefficient
r X*_alpha ^ X*_beta per class, so the action is blockwise: complex-type
blocks are fixed and noncomplex-type blocks move within their x-slice.
The corresponding spinor transform is wedging with exp(B), and the pure
spinor line of a structure with parametrized blocks is

    phi = exp(sum_nc (B_alpha + i omega_alpha)) ^ wedge_c Omega_alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import InvariantViolation, UnsupportedFlag
from .gtangent import (
    Block,
    ComplexBlock,
    FMatrix,
    GeneralBlock,
    GVector,
    InvariantGacs,
    NonComplexBlock,
    assemble,
    _finv,
    _fmul,
)
from .mclass import MClass, compute_classes
from .rationals import GQ, ONE, ZERO
from .rootsys import FlagSpec, Root, complement_roots

Pair = Tuple[Root, Root]


@dataclass(frozen=True, eq=False)
class BField:
    """A real invariant 2-form sum_pairs t X*_{r1} ^ X*_{r2} on the complement."""

    flag: FlagSpec
    coeffs: Dict[Pair, Q]

    @staticmethod
    def make(flag: FlagSpec, items: Iterable[Tuple[Pair, Q]]) -> BField:
        """Build a B-field, canonicalizing each pair to complement order."""
        order = {r: i for i, r in enumerate(complement_roots(flag))}
        coeffs: Dict[Pair, Q] = {}
        for (r1, r2), t in items:
            if r1 not in order or r2 not in order:
                raise InvariantViolation("B-field pair outside the complement")
            if r1 == r2:
                raise InvariantViolation("B-field pair must consist of distinct roots")
            t = Q(t)
            if order[r1] > order[r2]:
                r1, r2, t = r2, r1, -t
            s = coeffs.get((r1, r2), Q(0)) + t
            if s:
                coeffs[(r1, r2)] = s
            else:
                coeffs.pop((r1, r2), None)
        return BField(flag, coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_invariant(self) -> bool:
        """Whether every pair is exactly the member pair of a 2-element M-class."""
        pairs = {
            cls.members for cls in compute_classes(self.flag) if cls.size == 2
        }
        return all(pair in pairs for pair in self.coeffs)

    def class_coefficient(self, cls: MClass) -> Q:
        if cls.size != 2:
            return Q(0)
        return self.coeffs.get((cls.members[0], cls.members[1]), Q(0))

    def two_form(self) -> Spinor:
        """The same 2-form as a degree-2 spinor."""
        return Spinor(
            self.flag, {pair: GQ(t) for pair, t in self.coeffs.items()}
        )

    def __add__(self, other: BField) -> BField:
        if self.flag != other.flag:
            raise InvariantViolation("B-fields belong to different flags")
        return BField.make(
            self.flag, list(self.coeffs.items()) + list(other.coeffs.items())
        )

    def __neg__(self) -> BField:
        return BField(self.flag, {pair: -t for pair, t in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BField):
            return NotImplemented
        return self.flag == other.flag and self.coeffs == other.coeffs


def _shear(t: Q) -> FMatrix:
    """The 4x4 matrix of e^B on a 2-element class for B = t X*_{r1} ^ X*_{r2}."""
    one, zero = Q(1), Q(0)
    return [
        [one, zero, zero, zero],
        [zero, one, zero, zero],
        [zero, -t, one, zero],
        [t, zero, zero, one],
    ]


def _recognize(matrix: FMatrix) -> Block:
    """Recognize a 4x4 block matrix as a parametrized block, else wrap it."""
    if matrix[0][3] == 0:
        candidate: Block = ComplexBlock(matrix[0][0], matrix[1][0])
    else:
        candidate = NonComplexBlock(-matrix[0][0], -matrix[0][3], matrix[3][0])
    if candidate.matrix() == matrix:
        return candidate
    return GeneralBlock(tuple(tuple(row) for row in matrix))


def apply_b(j: InvariantGacs, b: BField) -> InvariantGacs:
    """The B-transform e^{-B} J e^{B} of an invariant structure."""
    if j.flag != b.flag:
        raise InvariantViolation("structure and B-field belong to different flags")
    if not b.is_invariant():
        raise InvariantViolation("B-field is not invariant")
    blocks: List[Block] = []
    for cls, block in zip(j.classes, j.blocks):
        t = b.class_coefficient(cls)
        if not t:
            blocks.append(block)
            continue
        e = _shear(t)
        e_inv = _shear(-t)
        blocks.append(_recognize(_fmul(_fmul(e_inv, block.matrix()), e)))
    return assemble(j.flag, blocks)


@dataclass(frozen=True)
class SymplecticChart:
    """Moduli chart of a noncomplex-type class: the B-transform orbit of x."""

    x: Q

    kind = "symplectic"


@dataclass(frozen=True)
class ComplexChart:
    """Moduli chart of a complex-type class: the B-fixed parameters (c, b)."""

    c: Q
    b: Q

    kind = "complex"


def canonical_form(j: InvariantGacs) -> Tuple[InvariantGacs, BField]:
    """Split j into a B-transform normal form: apply_b(j0, b) == j.

    Complex blocks are fixed points and stay put; a noncomplex block
    (a, x, y) is the transform of the symplectic representative
    (0, x, 1/x) by B = (a/x) X*_alpha ^ X*_beta.
    """
    blocks: List[Block] = []
    items: List[Tuple[Pair, Q]] = []
    for cls, block in zip(j.classes, j.blocks):
        if isinstance(block, ComplexBlock):
            blocks.append(block)
        elif isinstance(block, NonComplexBlock):
            blocks.append(NonComplexBlock(Q(0), block.x, 1 / block.x))
            items.append(((cls.members[0], cls.members[1]), block.a / block.x))
        else:
            raise UnsupportedFlag("canonical form requires parametrized blocks")
    return assemble(j.flag, blocks), BField.make(j.flag, items)


def moduli_coordinates(j: InvariantGacs):
    """Per-class moduli coordinates of j up to B-transform, in class order."""
    charts = []
    for block in j.blocks:
        if isinstance(block, ComplexBlock):
            charts.append(ComplexChart(block.c, block.b))
        elif isinstance(block, NonComplexBlock):
            charts.append(SymplecticChart(block.x))
        else:
            raise UnsupportedFlag("moduli coordinates require parametrized blocks")
    return tuple(charts)


SpinorKey = Tuple[Root, ...]


@dataclass(frozen=True, eq=False)
class Spinor:
    """An element of the complexified exterior algebra of (n^-)*.

    Terms map strictly increasing tuples of complement roots (in complement
    order) to GQ coefficients; the empty tuple is the scalar part.
    """

    flag: FlagSpec
    terms: Dict[SpinorKey, GQ]

    @staticmethod
    def scalar(flag: FlagSpec, value: GQ = ONE) -> Spinor:
        return Spinor(flag, {(): value} if value else {})

    @staticmethod
    def one_form(flag: FlagSpec, root: Root, coeff: GQ = ONE) -> Spinor:
        return Spinor(flag, {(root,): coeff} if coeff else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: Spinor) -> Spinor:
        if self.flag != other.flag:
            raise InvariantViolation("spinors belong to different flags")
        out = dict(self.terms)
        for key, v in other.terms.items():
            s = out.get(key, ZERO) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Spinor(self.flag, out)

    def __neg__(self) -> Spinor:
        return Spinor(self.flag, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Spinor) -> Spinor:
        return self + (-other)

    def scale(self, s: GQ) -> Spinor:
        if not s:
            return Spinor(self.flag, {})
        return Spinor(self.flag, {k: s * v for k, v in self.terms.items()})

    def wedge(self, other: Spinor) -> Spinor:
        if self.flag != other.flag:
            raise InvariantViolation("spinors belong to different flags")
        order = {r: i for i, r in enumerate(complement_roots(self.flag))}
        out: Dict[SpinorKey, GQ] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                merged = _merge_keys(k1, k2, order)
                if merged is None:
                    continue
                key, sign = merged
                value = v1 * v2 if sign > 0 else -(v1 * v2)
                s = out.get(key, ZERO) + value
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Spinor(self.flag, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.flag == other.flag and self.terms == other.terms

    def proportional_to(self, other: Spinor) -> Optional[GQ]:
        """The nonzero scalar s with self == s * other, or None."""
        if self.flag != other.flag or set(self.terms) != set(other.terms):
            return None
        if self.is_zero():
            return None
        key = next(iter(self.terms))
        s = self.terms[key] / other.terms[key]
        if not s:
            return None
        return s if self == other.scale(s) else None


def _merge_keys(
    k1: SpinorKey, k2: SpinorKey, order: Dict[Root, int]
) -> Optional[Tuple[SpinorKey, int]]:
    """Interleave two increasing tuples, tracking the permutation sign."""
    if not k1:
        return k2, 1
    if not k2:
        return k1, 1
    if set(k1) & set(k2):
        return None
    merged = sorted(k1 + k2, key=order.__getitem__)
    sign = 1
    i1 = 0
    remaining = len(k1)
    k1_set = set(k1)
    for r in merged:
        if r in k1_set:
            remaining -= 1
        elif remaining % 2:
            sign = -sign
    return tuple(merged), sign


def spinor_exp(theta: Spinor) -> Spinor:
    """exp of an even-degree spinor with zero scalar part (finite wedge series)."""
    if any(len(k) % 2 or not k for k in theta.terms):
        raise InvariantViolation("spinor exponential needs even positive degrees")
    acc = Spinor.scalar(theta.flag)
    term = Spinor.scalar(theta.flag)
    k = 1
    while True:
        term = term.wedge(theta).scale(GQ(Q(1, k)))
        if term.is_zero():
            return acc
        acc = acc + term
        k += 1


def clifford_act(v: GVector, s: Spinor) -> Spinor:
    """Clifford action (X + xi) . s = i_X s + xi ^ s, so v . v . s = <v, v> s."""
    if v.flag != s.flag:
        raise InvariantViolation("vector and spinor belong to different flags")
    out = Spinor(s.flag, {})
    xi = Spinor(
        s.flag, {(root,): c for (part, root), c in v.coeffs.items() if part == "d"}
    )
    if xi.terms:
        out = out + xi.wedge(s)
    for (part, root), c in v.coeffs.items():
        if part != "x":
            continue
        contracted: Dict[SpinorKey, GQ] = {}
        for key, value in s.terms.items():
            if root not in key:
                continue
            pos = key.index(root)
            coeff = c * value if pos % 2 == 0 else -(c * value)
            new_key = key[:pos] + key[pos + 1 :]
            acc = contracted.get(new_key, ZERO) + coeff
            if acc:
                contracted[new_key] = acc
            else:
                contracted.pop(new_key, None)
        out = out + Spinor(s.flag, contracted)
    return out


def pure_spinor(j: InvariantGacs) -> Spinor:
    """The pure spinor line of j, for structures with parametrized blocks.

    phi = exp(sum_nc (B_alpha + i omega_alpha)) ^ wedge_c Omega_alpha with
    B_alpha = (a/x) X*_alpha ^ X*_beta, omega_alpha = (1/x) X*_alpha ^ X*_beta,
    and Omega_alpha the annihilator line of pi_1 L on a complex-type class,
    normalized with leading coefficient (b + i) on X*_alpha.
    """
    theta = Spinor(j.flag, {})
    phi = Spinor.scalar(j.flag)
    for cls, block in zip(j.classes, j.blocks):
        if cls.size == 2:
            r1, r2 = cls.members
        if isinstance(block, NonComplexBlock):
            coeff = GQ(block.a, 1) / block.x
            theta = theta + Spinor(j.flag, {(r1, r2): coeff})
        elif isinstance(block, ComplexBlock):
            bi = GQ(block.b, 1)
            omega = Spinor(
                j.flag, {(r1,): bi, (r2,): -(bi * bi) / block.c}
            )
            phi = phi.wedge(omega)
        else:
            raise UnsupportedFlag("pure spinors require parametrized blocks")
    return spinor_exp(theta).wedge(phi)


@dataclass(frozen=True, eq=False)
class GeneralizedMetric:
    """A generalized metric in block form: one 4x4 matrix per 2-element class."""

    flag: FlagSpec
    classes: Tuple[MClass, ...]
    blocks: Tuple[Tuple[Tuple[Q, ...], ...], ...]

    def block_matrix(self, class_index: int) -> FMatrix:
        return [list(row) for row in self.blocks[class_index]]


def _gram(g: FMatrix) -> FMatrix:
    """S = G^T Qm with Qm the split pairing matrix (1/2)[[0, I], [I, 0]]."""
    n = len(g)
    k = n // 2
    half = Q(1, 2)
    return [[half * g[(j + k) % n][i] for j in range(n)] for i in range(n)]


def _positive_definite(s: FMatrix) -> bool:
    """Symmetry plus positivity of all leading principal minors."""
    n = len(s)
    if any(s[i][j] != s[j][i] for i in range(n) for j in range(i)):
        return False
    for size in range(1, n + 1):
        if _det([row[:size] for row in s[:size]]) <= 0:
            return False
    return True


def _det(m: FMatrix) -> Q:
    a = [row[:] for row in m]
    n = len(a)
    det = Q(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Q(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


@dataclass(frozen=True, eq=False)
class HermitianPair:
    """The outcome of testing (J, J') as a generalized Hermitian pair."""

    flag: FlagSpec
    commute: bool
    positive: bool
    metric: Optional[GeneralizedMetric]

    @property
    def valid(self) -> bool:
        return self.commute and self.positive


def hermitian_pair(j: InvariantGacs, jp: InvariantGacs) -> HermitianPair:
    """Test whether (j, jp) is a Hermitian pair and produce G = -J J'.

    The pair is valid when the structures commute blockwise and the pairing
    Gram matrix of G is positive definite on every class.
    """
    if j.flag != jp.flag:
        raise InvariantViolation("structures belong to different flags")
    if any(cls.size != 2 for cls in j.classes):
        raise UnsupportedFlag("Hermitian pairs require parametrized blocks")
    metric_blocks: List[Tuple[Tuple[Q, ...], ...]] = []
    positive = True
    for ci in range(len(j.classes)):
        a = j.block_matrix(ci)
        b = jp.block_matrix(ci)
        if _fmul(a, b) != _fmul(b, a):
            return HermitianPair(j.flag, False, False, None)
        g = [[-x for x in row] for row in _fmul(a, b)]
        metric_blocks.append(tuple(tuple(row) for row in g))
        if not _positive_definite(_gram(g)):
            positive = False
    metric = GeneralizedMetric(j.flag, j.classes, tuple(metric_blocks))
    return HermitianPair(j.flag, True, positive, metric)


@dataclass(frozen=True, eq=False)
class MetricNormalForm:
    """G = e^{b2} [[0, g^{-1}], [g, 0]] e^{-b2} with g Riemannian per class."""

    flag: FlagSpec
    classes: Tuple[MClass, ...]
    riemannian: Tuple[Tuple[Tuple[Q, ...], ...], ...]
    b2: BField


def metric_normal_form(g: GeneralizedMetric) -> MetricNormalForm:
    """Split a generalized metric into a Riemannian metric and a B-field.

    On each class G = [[-g^{-1}M, g^{-1}], [g - M g^{-1} M, M g^{-1}]], so the
    top-right block inverts to the metric and M = -g G_{11}; the factorization
    is verified by exact reconstruction.
    """
    riemannian: List[Tuple[Tuple[Q, ...], ...]] = []
    items: List[Tuple[Pair, Q]] = []
    for ci, cls in enumerate(g.classes):
        mat = g.block_matrix(ci)
        g12 = [row[2:] for row in mat[:2]]
        try:
            metric = _finv(g12)
        except ValueError:
            raise InvariantViolation("generalized metric block has singular g^{-1} corner")
        g11 = [row[:2] for row in mat[:2]]
        m = [[-x for x in row] for row in _fmul(metric, g11)]
        if m[0][0] or m[1][1] or m[0][1] != -m[1][0]:
            raise InvariantViolation("generalized metric block has no B-field splitting")
        t = m[1][0]
        riemannian.append(tuple(tuple(row) for row in metric))
        if t:
            items.append(((cls.members[0], cls.members[1]), t))
    b2 = BField.make(g.flag, items)
    form = MetricNormalForm(g.flag, g.classes, tuple(riemannian), b2)
    _verify_metric_form(g, form)
    return form


def _verify_metric_form(g: GeneralizedMetric, form: MetricNormalForm) -> None:
    for ci, cls in enumerate(g.classes):
        metric = [list(row) for row in form.riemannian[ci]]
        inv = _finv(metric)
        base = [
            [Q(0), Q(0)] + inv[0],
            [Q(0), Q(0)] + inv[1],
            metric[0] + [Q(0), Q(0)],
            metric[1] + [Q(0), Q(0)],
        ]
        t = form.b2.class_coefficient(cls)
        rebuilt = _fmul(_fmul(_shear(t), base), _shear(-t))
        if rebuilt != g.block_matrix(ci):
            raise InvariantViolation("metric normal form failed to reconstruct G")
        if not _positive_definite(metric):
            raise InvariantViolation("metric normal form is not Riemannian")


@dataclass(frozen=True)
class MetricModuli:
    """The moduli description of invariant generalized metrics on a flag."""

    flag: FlagSpec
    classes: Tuple[MClass, ...]
    factor: str = "{(c, x, b) : c*x > 0}"
    components_per_class: int = 2

    @property
    def dimension(self) -> int:
        return 3 * len(self.classes)

    @property
    def components(self) -> int:
        return self.components_per_class ** len(self.classes)


def metric_moduli(flag: FlagSpec) -> MetricModuli:
    """Moduli of invariant generalized metrics: one signed octant per class."""
    classes = compute_classes(flag)
    if not classes or any(cls.size != 2 for cls in classes):
        raise UnsupportedFlag("metric moduli require 2-element classes only")
    return MetricModuli(flag, classes)
