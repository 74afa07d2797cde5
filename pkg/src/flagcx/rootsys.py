"""Root systems of types A, B, C, D, G2 in simple-root integer coordinates.

Roots are integer coefficient tuples over the simple roots.  The invariant
bilinear form is normalized so short roots have squared length 2.  Positive
roots are enumerated by root strings and frozen in (height, lex) order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, FrozenSet, List, Tuple

Root = Tuple[int, ...]

_FAMILIES = ("A", "B", "C", "D", "G")

_ROOT_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "G": lambda l: 6,
}


@dataclass(frozen=True)
class LieType:
    """A split simple Lie type: family in {A, B, C, D, G} and rank."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        minimum = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2}[self.family]
        if self.rank < minimum:
            raise ValueError(f"{self.family}_{self.rank}: rank must be >= {minimum}")
        if self.family == "G" and self.rank != 2:
            raise ValueError("G family has rank 2 only")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def root_add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def root_sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def root_neg(a: Root) -> Root:
    return tuple(-x for x in a)


def height(a: Root) -> int:
    """Sum of simple-root coefficients (negative for negative roots)."""
    return sum(a)


def _simple_model(lie_type: LieType) -> tuple[List[Tuple[Q, ...]], Q]:
    """Ambient-coordinate simple roots and the metric weight of the ambient basis."""
    l = lie_type.rank
    fam = lie_type.family

    def e(i: int, n: int) -> List[Q]:
        v = [Q(0)] * n
        v[i] = Q(1)
        return v

    if fam == "A":
        n = l + 1
        vecs = [tuple(x - y for x, y in zip(e(i, n), e(i + 1, n))) for i in range(l)]
        return vecs, Q(1)
    if fam == "B":
        vecs = [tuple(x - y for x, y in zip(e(i, l), e(i + 1, l))) for i in range(l - 1)]
        vecs.append(tuple(e(l - 1, l)))
        return vecs, Q(2)
    if fam == "C":
        vecs = [tuple(x - y for x, y in zip(e(i, l), e(i + 1, l))) for i in range(l - 1)]
        vecs.append(tuple(2 * x for x in e(l - 1, l)))
        return vecs, Q(1)
    if fam == "D":
        vecs = [tuple(x - y for x, y in zip(e(i, l), e(i + 1, l))) for i in range(l - 1)]
        vecs.append(tuple(x + y for x, y in zip(e(l - 2, l), e(l - 1, l))))
        return vecs, Q(1)
    # G2 in the plane x + y + z = 0: alpha_1 long, alpha_2 short.
    return [(Q(-1), Q(2), Q(-1)), (Q(1), Q(-1), Q(0))], Q(1)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """An irreducible root system with frozen positive-root order and exact pairing."""

    lie_type: LieType
    positive_roots: Tuple[Root, ...]
    bilinear: Tuple[Tuple[Q, ...], ...]
    _root_set: FrozenSet[Root] = field(repr=False)
    _metric_images: Dict[Root, Tuple[Q, ...]] = field(repr=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        return tuple(
            tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)
        )

    @property
    def all_roots(self) -> Tuple[Root, ...]:
        return self.positive_roots + tuple(root_neg(a) for a in self.positive_roots)

    def is_root(self, a: Root) -> bool:
        return a in self._root_set or root_neg(a) in self._root_set

    def _metric_image(self, a: Root) -> Tuple[Q, ...]:
        img = self._metric_images.get(a)
        if img is None:
            img = tuple(
                sum(Q(c) * self.bilinear[i][j] for i, c in enumerate(a) if c)
                for j in range(self.rank)
            )
            self._metric_images[a] = img
        return img

    def pairing(self, a: Root, b: Root) -> Q:
        """Invariant bilinear form (short roots have squared length 2)."""
        if len(a) != self.rank or len(b) != self.rank:
            raise ValueError("dimension mismatch")
        img = self._metric_image(a)
        return sum(Q(c) * img[j] for j, c in enumerate(b) if c)

    def coroot_pairing(self, gamma: Root, alpha: Root) -> int:
        """The integer 2<gamma, alpha>/<alpha, alpha>."""
        value = 2 * self.pairing(gamma, alpha) / self.pairing(alpha, alpha)
        if value.denominator != 1:
            raise ValueError("coroot pairing is not integral")
        return int(value)

    def string_down(self, beta: Root, alpha: Root) -> int:
        """Largest k >= 0 with beta - k*alpha a root (p of the alpha-string through beta)."""
        k = 0
        cur = root_sub(beta, alpha)
        while self.is_root(cur):
            k += 1
            cur = root_sub(cur, alpha)
        return k


@lru_cache(maxsize=None)
def build_root_system(lie_type: LieType) -> RootSystem:
    """Enumerate all positive roots of lie_type in (height, lex) order."""
    l = lie_type.rank
    simple: List[Root] = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    model, weight = _simple_model(lie_type)
    dim = len(model[0])
    bilinear = tuple(
        tuple(weight * sum(x * y for x, y in zip(model[i], model[j])) for j in range(l))
        for i in range(l)
    )

    def form(a: Root, b: Root) -> Q:
        return sum(Q(a[i]) * bilinear[i][j] * Q(b[j]) for i in range(l) for j in range(l))

    found: set[Root] = set(simple)
    layers: List[List[Root]] = [sorted(simple)]
    while layers[-1]:
        nxt: set[Root] = set()
        for gamma in layers[-1]:
            for i, alpha in enumerate(simple):
                cand = root_add(gamma, alpha)
                if cand in found:
                    continue
                p = 0
                cur = root_sub(gamma, alpha)
                while cur in found:
                    p += 1
                    cur = root_sub(cur, alpha)
                pairing2 = 2 * form(gamma, alpha) / form(alpha, alpha)
                if p - pairing2 > 0:
                    nxt.add(cand)
        found.update(nxt)
        layers.append(sorted(nxt))
    positive = tuple(r for layer in layers for r in layer)
    expected = _ROOT_COUNTS[lie_type.family](l)
    if len(positive) != expected:
        raise AssertionError(f"{lie_type}: found {len(positive)} positive roots, expected {expected}")
    full = frozenset(positive)
    rs = RootSystem(lie_type, positive, bilinear, full)
    # Sanity: the model dimension matches and every root has the recorded length.
    assert dim >= l
    return rs


def root_to_lambda(rs: RootSystem, root: Root) -> Tuple[Q, ...]:
    """Ambient (lambda) coordinates of a root under the standard model."""
    model, _ = _simple_model(rs.lie_type)
    dim = len(model[0])
    out = [Q(0)] * dim
    for c, vec in zip(root, model):
        if c:
            for j in range(dim):
                out[j] += c * vec[j]
    return tuple(out)


def _format_terms(terms: List[tuple[Q, str]]) -> str:
    parts: List[str] = []
    for coeff, sym in terms:
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else ("+" if parts else "")
        mag = abs(coeff)
        parts.append(f"{sign}{'' if mag == 1 else mag}{sym}")
    return "".join(parts) if parts else "0"


def root_label(rs: RootSystem, root: Root) -> str:
    """Human-readable label: lambda combination for classical types, a/b for G2."""
    if rs.lie_type.family == "G":
        return _format_terms([(Q(root[0]), "a"), (Q(root[1]), "b")])
    lam = root_to_lambda(rs, root)
    return _format_terms([(c, f"l{i + 1}") for i, c in enumerate(lam)])


def parse_root_label(rs: RootSystem, text: str) -> Root:
    """Inverse of root_label; also accepts a 1-based simple root index."""
    token = text.strip().replace(" ", "")
    if token.isdigit():
        idx = int(token)
        if not 1 <= idx <= rs.rank:
            raise ValueError(f"simple root index out of range: {token}")
        return rs.simple_roots[idx - 1]
    for root in rs.all_roots:
        if root_label(rs, root) == token:
            return root
    raise ValueError(f"unrecognized root label: {text!r}")


@dataclass(frozen=True)
class FlagSpec:
    """A real flag manifold F_Theta: a root system plus a subset Theta of simple roots."""

    root_system: RootSystem
    theta: FrozenSet[Root]

    def __post_init__(self) -> None:
        simple = set(self.root_system.simple_roots)
        if not set(self.theta) <= simple:
            raise ValueError("theta must be a subset of the simple roots")

    @property
    def is_maximal(self) -> bool:
        """Maximal flag: Theta empty."""
        return not self.theta

    @property
    def is_trivial(self) -> bool:
        """Trivial flag: Theta = Sigma (a single point)."""
        return len(self.theta) == self.root_system.rank


def complement_roots(flag: FlagSpec) -> Tuple[Root, ...]:
    """Negative roots outside <Theta>, ordered by (height, lex) of their negatives."""
    theta_support = frozenset(
        i for alpha in flag.theta for i, c in enumerate(alpha) if c
    )
    out: List[Root] = []
    for gamma in flag.root_system.positive_roots:
        support = {i for i, c in enumerate(gamma) if c}
        if not support <= theta_support:
            out.append(root_neg(gamma))
    return tuple(out)
