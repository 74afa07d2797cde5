"""The invariant generalized tangent space n^- + (n^-)* and block structures.

Vectors live in the complexified space spanned by X_r (tangent) and X*_r
(dual) over the complement roots of a flag.  Invariant generalized almost
complex structures decompose into blocks along M-classes: parametrized 4x4
blocks on 2-element classes (complex type with parameters b, c; noncomplex
type with parameters a, x, y, a^2 = xy - 1) and explicit orthogonal matrices
(GeneralBlock) on larger classes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import InvariantViolation
from .mclass import MClass, compute_classes
from .rootsys import FlagSpec, Root, complement_roots
from .rationals import GQ, I, ONE, ZERO

BasisKey = Tuple[str, Root]  # ("x", r) for X_r, ("d", r) for X*_r

FMatrix = List[List[Q]]


@dataclass(frozen=True, eq=False)
class GVector:
    """A complexified generalized tangent vector with sparse GQ coefficients."""

    flag: FlagSpec
    coeffs: Dict[BasisKey, GQ]

    @staticmethod
    def make(flag: FlagSpec, items: Iterable[Tuple[BasisKey, GQ]]) -> GVector:
        coeffs = {k: v for k, v in items if v}
        return GVector(flag, coeffs)

    @staticmethod
    def tangent(flag: FlagSpec, root: Root, coeff: GQ = ONE) -> GVector:
        return GVector.make(flag, [(("x", root), coeff)])

    @staticmethod
    def dual(flag: FlagSpec, root: Root, coeff: GQ = ONE) -> GVector:
        return GVector.make(flag, [(("d", root), coeff)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: GVector) -> GVector:
        _check_same_flag(self, other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GVector(self.flag, out)

    def __neg__(self) -> GVector:
        return GVector(self.flag, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: GVector) -> GVector:
        return self + (-other)

    def scale(self, s: GQ) -> GVector:
        if not s:
            return GVector(self.flag, {})
        return GVector(self.flag, {k: s * v for k, v in self.coeffs.items()})

    def conjugate(self) -> GVector:
        return GVector(self.flag, {k: v.conjugate() for k, v in self.coeffs.items()})

    def tangent_part(self) -> GVector:
        return GVector(self.flag, {k: v for k, v in self.coeffs.items() if k[0] == "x"})

    def dual_part(self) -> GVector:
        return GVector(self.flag, {k: v for k, v in self.coeffs.items() if k[0] == "d"})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GVector):
            return NotImplemented
        return self.flag == other.flag and self.coeffs == other.coeffs


def _check_same_flag(u: GVector, v: GVector) -> None:
    if u.flag != v.flag:
        raise InvariantViolation("vectors belong to different flags")


def pairing_q(u: GVector, v: GVector) -> GQ:
    """The split pairing <X + xi, Y + eta> = (xi(Y) + eta(X)) / 2."""
    _check_same_flag(u, v)
    small, big = (u.coeffs, v.coeffs) if len(u.coeffs) <= len(v.coeffs) else (v.coeffs, u.coeffs)
    acc = ZERO
    for (part, root), c in small.items():
        other = big.get(("d" if part == "x" else "x", root))
        if other is not None:
            acc = acc + c * other
    return acc / 2


@dataclass(frozen=True)
class ComplexBlock:
    """Complex-type block on a 2-element class: parameters b, c with c != 0."""

    b: Q
    c: Q

    kind = "complex"

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", Q(self.b))
        object.__setattr__(self, "c", Q(self.c))
        if self.c == 0:
            raise InvariantViolation("complex block needs c != 0")

    def matrix(self) -> FMatrix:
        b, c = self.b, self.c
        u = (1 + b * b) / c
        return [
            [b, -u, Q(0), Q(0)],
            [c, -b, Q(0), Q(0)],
            [Q(0), Q(0), -b, -c],
            [Q(0), Q(0), u, b],
        ]


@dataclass(frozen=True)
class NonComplexBlock:
    """Noncomplex-type block on a 2-element class: a^2 = xy - 1 with x != 0."""

    a: Q
    x: Q
    y: Q

    kind = "noncomplex"

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "x", Q(self.x))
        object.__setattr__(self, "y", Q(self.y))
        if self.x == 0 or self.a * self.a != self.x * self.y - 1:
            raise InvariantViolation("noncomplex block needs a^2 = xy - 1 with x != 0")

    def matrix(self) -> FMatrix:
        a, x, y = self.a, self.x, self.y
        return [
            [-a, Q(0), Q(0), -x],
            [Q(0), -a, x, Q(0)],
            [Q(0), -y, a, Q(0)],
            [y, Q(0), Q(0), a],
        ]


@dataclass(frozen=True, eq=False)
class GeneralBlock:
    """An explicit 2k x 2k orthogonal complex structure on a k-element class."""

    entries: Tuple[Tuple[Q, ...], ...]

    kind = "general"

    def __post_init__(self) -> None:
        n = len(self.entries)
        if n % 4 != 0 or any(len(row) != n for row in self.entries):
            raise InvariantViolation("general block must be square of size 4k")
        # Clear denominators once and check over the integers: with N = D*J,
        # J^2 = -I  <=>  N^2 = -D^2 I, and J^T Q J = Q  <=>  N^T Q N = D^2 Q.
        den = 1
        for row in self.entries:
            for x in row:
                d = x.denominator
                if den % d:
                    den = den * d // math.gcd(den, d)
        m = [[int(x * den) for x in row] for row in self.entries]
        d2 = den * den
        k = n // 2
        sq = _imul(m, m)
        if any(sq[i][j] != (-d2 if i == j else 0) for i in range(n) for j in range(n)):
            raise InvariantViolation("general block must square to -I")
        # Q-orthogonality against the split form [[0, I], [I, 0]].
        qm = m[k:] + m[:k]
        mt = [list(col) for col in zip(*m)]
        prod = _imul(mt, qm)
        for i in range(n):
            for j in range(n):
                want = d2 if (i + k) % n == j else 0
                if prod[i][j] != want:
                    raise InvariantViolation("general block must preserve the split pairing")

    def matrix(self) -> FMatrix:
        return [list(row) for row in self.entries]


Block = Union[ComplexBlock, NonComplexBlock, GeneralBlock]


def _fmul(a: FMatrix, b: FMatrix) -> FMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def _finv(a: FMatrix) -> FMatrix:
    """Exact inverse of a Fraction matrix; raises ValueError when singular."""
    n = len(a)
    aug = [row[:] + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@dataclass(frozen=True, eq=False)
class InvariantGacs:
    """An invariant generalized almost complex structure in block form."""

    flag: FlagSpec
    classes: Tuple[MClass, ...]
    blocks: Tuple[Block, ...]
    _locate: Dict[Root, Tuple[int, int]] = field(repr=False)

    def block_matrix(self, class_index: int) -> FMatrix:
        return self.blocks[class_index].matrix()

    def apply(self, v: GVector) -> GVector:
        """J v, computed blockwise."""
        if v.flag != self.flag:
            raise InvariantViolation("vector belongs to a different flag")
        out: Dict[BasisKey, GQ] = {}
        mats: Dict[int, FMatrix] = {}
        for (part, root), coeff in v.coeffs.items():
            ci, pos = self._locate[root]
            mat = mats.get(ci)
            if mat is None:
                mat = mats[ci] = self.blocks[ci].matrix()
            roots = self.classes[ci].members
            k = len(roots)
            col = pos if part == "x" else k + pos
            for row in range(2 * k):
                entry = mat[row][col]
                if entry:
                    key = ("x", roots[row]) if row < k else ("d", roots[row - k])
                    s = out.get(key, ZERO) + coeff * entry
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return GVector(self.flag, out)


def assemble(flag: FlagSpec, blocks: Sequence[Block]) -> InvariantGacs:
    """Validate blocks against the M-classes of flag and assemble a structure."""
    classes = compute_classes(flag)
    if len(blocks) != len(classes):
        raise InvariantViolation(f"expected {len(classes)} blocks, got {len(blocks)}")
    for cls, block in zip(classes, blocks):
        if cls.size % 2 == 1:
            raise InvariantViolation(f"class of odd size {cls.size} admits no block")
        if isinstance(block, (ComplexBlock, NonComplexBlock)):
            if cls.size != 2:
                raise InvariantViolation("parametrized blocks require a 2-element class")
        elif isinstance(block, GeneralBlock):
            if len(block.entries) != 2 * cls.size:
                raise InvariantViolation("general block size does not match its class")
        else:
            raise InvariantViolation(f"unknown block {block!r}")
    locate = {
        root: (ci, pos)
        for ci, cls in enumerate(classes)
        for pos, root in enumerate(cls.members)
    }
    return InvariantGacs(flag, classes, tuple(blocks), locate)


def class_eigenvectors(j: InvariantGacs, class_index: int) -> List[GVector]:
    """A basis of the +i eigenspace of the block on one class."""
    cls = j.classes[class_index]
    block = j.blocks[class_index]
    flag = j.flag
    if isinstance(block, ComplexBlock):
        r1, r2 = cls.members
        bi = GQ(block.b, 1)
        c = GQ(block.c)
        return [
            GVector.make(flag, [(("x", r1), bi), (("x", r2), c)]),
            GVector.make(flag, [(("d", r1), -c), (("d", r2), bi)]),
        ]
    if isinstance(block, NonComplexBlock):
        r1, r2 = cls.members
        ai = GQ(block.a, 1)
        x = GQ(block.x)
        return [
            GVector.make(flag, [(("x", r1), x), (("d", r2), -ai)]),
            GVector.make(flag, [(("x", r2), x), (("d", r1), ai)]),
        ]
    k = cls.size
    mat = block.matrix()
    # The +i eigenspace is the column space of I - iJ; extract k pivots.
    cols = [
        [GQ(Q(1) if r == c else Q(0), -mat[r][c]) for r in range(2 * k)]
        for c in range(2 * k)
    ]
    basis: List[List[GQ]] = []
    work: List[List[GQ]] = []
    pivots: List[int] = []
    for col in cols:
        vec = col[:]
        for row, piv in zip(work, pivots):
            if vec[piv]:
                f = vec[piv]
                vec = [x - f * y for x, y in zip(vec, row)]
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is None:
            continue
        inv = ONE / vec[lead]
        work.append([x * inv for x in vec])
        pivots.append(lead)
        basis.append(col)
        if len(basis) == k:
            break
    if len(basis) != k:
        raise InvariantViolation("general block eigenspace has wrong dimension")
    out: List[GVector] = []
    for col in basis:
        items: List[Tuple[BasisKey, GQ]] = []
        for idx, value in enumerate(col):
            if value:
                key: BasisKey = ("x", cls.members[idx]) if idx < k else ("d", cls.members[idx - k])
                items.append((key, value))
        out.append(GVector.make(flag, items))
    return out


def plus_i_eigenspace(j: InvariantGacs) -> List[GVector]:
    """A basis of the full +i eigenspace L, class by class."""
    out: List[GVector] = []
    for ci in range(len(j.classes)):
        out.extend(class_eigenvectors(j, ci))
    return out


def structure_type(j: InvariantGacs) -> int:
    """dim of the pointwise kernel of the induced Dirac projection: d - rank(pi_1 L)."""
    comp = complement_roots(j.flag)
    index = {r: i for i, r in enumerate(comp)}
    rows: List[List[GQ]] = []
    for vec in plus_i_eigenspace(j):
        row = [ZERO] * len(comp)
        for (part, root), c in vec.coeffs.items():
            if part == "x":
                row[index[root]] = c
        rows.append(row)
    return len(comp) - linalg.rank(rows)


def random_fraction(rng: random.Random, span: int = 9, nonzero: bool = False) -> Q:
    """A small random Fraction with |numerator| <= span and denominator <= 3."""
    while True:
        value = Q(rng.randint(-span, span), rng.randint(1, 3))
        if value or not nonzero:
            return value


def random_complex_block(rng: random.Random) -> ComplexBlock:
    return ComplexBlock(random_fraction(rng), random_fraction(rng, nonzero=True))


def random_noncomplex_block(rng: random.Random) -> NonComplexBlock:
    a = random_fraction(rng)
    x = random_fraction(rng, nonzero=True)
    return NonComplexBlock(a, x, (a * a + 1) / x)


def _base_general_matrix(k: int) -> FMatrix:
    """Block sum of symplectic 4x4 cells as a base point for Cayley sampling."""
    n = 2 * k
    m = [[Q(0)] * n for _ in range(n)]
    for p in range(0, k, 2):
        i, jdx = p, p + 1
        m[i][k + jdx] = Q(-1)
        m[jdx][k + i] = Q(1)
        m[k + i][jdx] = Q(-1)
        m[k + jdx][i] = Q(1)
    return m


IMatrix = List[List[int]]


def _imul(a: IMatrix, b: IMatrix) -> IMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def _random_antisym(k: int, rng: random.Random) -> IMatrix:
    m = [[0] * k for _ in range(k)]
    for i in range(k):
        for jdx in range(i + 1, k):
            m[i][jdx] = rng.randint(-1, 1)
            m[jdx][i] = -m[i][jdx]
    return m


def _adjugate(m: IMatrix) -> Tuple[IMatrix, int]:
    """(adj, det) of an integer matrix via fraction-free Gauss-Jordan elimination.

    Satisfies m @ adj = det * I; raises ValueError when m is singular.
    """
    n = len(m)
    a = [row[:] + [1 if i == jdx else 0 for jdx in range(n)] for i, row in enumerate(m)]
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(n):
            if i == k:
                continue
            row_i, row_k = a[i], a[k]
            f = row_i[k]
            a[i] = [(pivot * row_i[jdx] - f * row_k[jdx]) // prev for jdx in range(2 * n)]
        prev = pivot
    det = sign * a[n - 1][n - 1]
    adj = [[sign * a[i][n + jdx] for jdx in range(n)] for i in range(n)]
    return adj, det


def random_general_block(k: int, rng: random.Random) -> GeneralBlock:
    """A random orthogonal complex structure on a k-element class (k even).

    The base symplectic block sum J0 is conjugated by a Cayley transform
    S = (I - A)(I + A)^{-1} of a random Q-antisymmetric integer matrix
    A = [[P, R], [S, -P^T]] with R, S antisymmetric.
    """
    if k % 2 == 1:
        raise InvariantViolation("general blocks require an even class size")
    n = 2 * k
    j0 = [[int(x) for x in row] for row in _base_general_matrix(k)]
    while True:
        p = [[rng.randint(-1, 1) for _ in range(k)] for _ in range(k)]
        r = _random_antisym(k, rng)
        s = _random_antisym(k, rng)
        a = [p[i] + r[i] for i in range(k)] + [
            s[i] + [-p[jdx][i] for jdx in range(k)] for i in range(k)
        ]
        plus = [[(1 if i == jdx else 0) + a[i][jdx] for jdx in range(n)] for i in range(n)]
        minus = [[(1 if i == jdx else 0) - a[i][jdx] for jdx in range(n)] for i in range(n)]
        try:
            adj_plus, det_plus = _adjugate(plus)
            adj_minus, det_minus = _adjugate(minus)
        except ValueError:
            continue
        # S = minus @ adj_plus / det_plus, S^{-1} = plus @ adj_minus / det_minus.
        numerator = _imul(_imul(_imul(minus, adj_plus), j0), _imul(plus, adj_minus))
        denominator = det_plus * det_minus
        return GeneralBlock(
            tuple(tuple(Q(x, denominator) for x in row) for row in numerator)
        )


def random_structure(
    flag: FlagSpec,
    rng: random.Random,
    kinds: Optional[Sequence[str]] = None,
) -> InvariantGacs:
    """A random invariant structure; kinds fixes complex/noncomplex per 2-element class."""
    classes = compute_classes(flag)
    blocks: List[Block] = []
    two_dim = 0
    for cls in classes:
        if cls.size == 2:
            if kinds is not None:
                kind = kinds[two_dim]
            else:
                kind = rng.choice(("complex", "noncomplex"))
            two_dim += 1
            if kind == "complex":
                blocks.append(random_complex_block(rng))
            elif kind == "noncomplex":
                blocks.append(random_noncomplex_block(rng))
            else:
                raise InvariantViolation(f"unknown block kind {kind!r}")
        else:
            blocks.append(random_general_block(cls.size, rng))
    return assemble(flag, blocks)
