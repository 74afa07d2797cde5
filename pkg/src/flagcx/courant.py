"""Courant bracket, Nijenhuis operator, and the integrability certifier.

At the origin of the flag the Courant bracket reduces to the nilradical
bracket plus coadjoint action:

    [X_a, X_b]   = m_{a,b} X_{a+b}          (when a+b lies in the complement)
    [X_a, X*_b]  = -m_{a,b-a} X*_{b-a}      (when b-a lies in the complement)
    [X*_a, X*_b] = 0

A structure is integrable iff its +i eigenspace L is involutive.  Since L is
maximal isotropic (L equals its own Q-orthogonal), [u, v] lies in span L iff
it pairs to zero with every L-basis vector; the certifier scans pairs in basis
order, confirms the first failure with an exact linear solve, and cross-checks
it with a nonzero Nijenhuis triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from . import linalg
from .chevalley import StructureConstants
from .errors import InvariantViolation
from .gtangent import BasisKey, GVector, InvariantGacs, class_eigenvectors, pairing_q
from .rationals import GQ, ZERO
from .rootsys import FlagSpec, Root, complement_roots, root_add, root_sub


@lru_cache(maxsize=None)
def _complement_set(flag: FlagSpec) -> frozenset[Root]:
    return frozenset(complement_roots(flag))


def courant_bracket(sc: StructureConstants, u: GVector, v: GVector) -> GVector:
    """The Courant bracket [u, v] at the origin."""
    if u.flag != v.flag:
        raise InvariantViolation("vectors belong to different flags")
    comp = _complement_set(u.flag)
    out: Dict[BasisKey, GQ] = {}

    def add(key: BasisKey, value: GQ) -> None:
        s = out.get(key, ZERO) + value
        if s:
            out[key] = s
        else:
            out.pop(key, None)

    for (p1, r1), c1 in u.coeffs.items():
        for (p2, r2), c2 in v.coeffs.items():
            if p1 == "x" and p2 == "x":
                s = root_add(r1, r2)
                if s in comp:
                    add(("x", s), c1 * c2 * sc.m(r1, r2))
            elif p1 == "x" and p2 == "d":
                diff = root_sub(r2, r1)
                if diff in comp:
                    add(("d", diff), -(c1 * c2 * sc.m(r1, diff)))
            elif p1 == "d" and p2 == "x":
                diff = root_sub(r1, r2)
                if diff in comp:
                    add(("d", diff), c1 * c2 * sc.m(r2, diff))
    return GVector(u.flag, out)


def nijenhuis_operator(sc: StructureConstants, a: GVector, b: GVector, c: GVector) -> GQ:
    """Nij(a, b, c) = (1/2) (<a_2, [b_1, c_1]> + cyclic permutations)."""
    comp = _complement_set(a.flag)

    def term(p: GVector, q: GVector, r: GVector) -> GQ:
        acc = ZERO
        for (part1, r1), c1 in q.coeffs.items():
            if part1 != "x":
                continue
            for (part2, r2), c2 in r.coeffs.items():
                if part2 != "x":
                    continue
                s = root_add(r1, r2)
                if s in comp:
                    dual = p.coeffs.get(("d", s))
                    if dual is not None:
                        acc = acc + dual * c1 * c2 * sc.m(r1, r2)
        return acc

    return (term(a, b, c) + term(b, c, a) + term(c, a, b)) / 2


def nijenhuis_tensor(sc: StructureConstants, j: InvariantGacs, a: GVector, b: GVector) -> GVector:
    """N_J(a, b) = [Ja, Jb] - [a, b] - J[a, Jb] - J[Ja, b]."""
    ja, jb = j.apply(a), j.apply(b)
    return (
        courant_bracket(sc, ja, jb)
        - courant_bracket(sc, a, b)
        - j.apply(courant_bracket(sc, a, jb))
        - j.apply(courant_bracket(sc, ja, b))
    )


@dataclass(frozen=True, eq=False)
class Witness:
    """A non-involutivity certificate: a failing pair plus a Nijenhuis triple."""

    u: GVector
    v: GVector
    l: GVector
    value: GQ

    def re_verify(self, sc: StructureConstants) -> bool:
        """Recompute the certificate from scratch: bracket residual and Nij value."""
        if not self.value:
            return False
        if nijenhuis_operator(sc, self.u, self.v, self.l) != self.value:
            return False
        return bool(pairing_q(courant_bracket(sc, self.u, self.v), self.l))


@dataclass(frozen=True)
class Integrable:
    integrable: bool = True
    witness: None = None


@dataclass(frozen=True, eq=False)
class NotIntegrable:
    witness: Witness
    integrable: bool = False


IntegrabilityResult = Union[Integrable, NotIntegrable]


def check_integrability(sc: StructureConstants, j: InvariantGacs) -> IntegrabilityResult:
    """Certify involutivity of L or return the first failing pair as a witness.

    Eigenvectors are materialized lazily class by class: a single L-basis
    vector pairing nonzero against [u, v] already certifies [u, v] not in
    span L because L is maximal isotropic.  The first failure is confirmed
    by an exact linear solve and cross-checked by a Nijenhuis triple.
    """
    classes = list(range(len(j.classes)))
    cached: Dict[int, List[GVector]] = {}

    def eigen(ci: int) -> List[GVector]:
        if ci not in cached:
            cached[ci] = class_eigenvectors(j, ci)
        return cached[ci]

    # Deterministic scan order: pairs from two distinct 2-element classes
    # first (their witnesses stay in small blocks), then same-class pairs,
    # then pairs touching general blocks.
    order = sorted(classes, key=lambda ci: j.classes[ci].size)
    flat: List[Tuple[int, int]] = [(ci, pos) for ci in order for pos in range(j.classes[ci].size)]
    pairs = [
        (flat[ia], flat[ib])
        for ia in range(len(flat))
        for ib in range(ia + 1, len(flat))
    ]
    pairs.sort(
        key=lambda pq: (
            (j.classes[pq[0][0]].size > 2) + (j.classes[pq[1][0]].size > 2),
            pq[0][0] == pq[1][0],
        )
    )

    for (ci_a, pos_a), (ci_b, pos_b) in pairs:
        u = eigen(ci_a)[pos_a]
        v = eigen(ci_b)[pos_b]
        w = courant_bracket(sc, u, v)
        if w.is_zero():
            continue
        hit: Optional[GVector] = None
        for ci in order:
            for l in eigen(ci):
                if pairing_q(w, l):
                    hit = l
                    break
            if hit is not None:
                break
        if hit is None:
            continue
        _confirm_outside_span(j, w, eigen)
        value = nijenhuis_operator(sc, u, v, hit)
        if value != pairing_q(w, hit):
            raise InvariantViolation("Nijenhuis cross-check disagrees with pairing")
        return NotIntegrable(witness=Witness(u=u, v=v, l=hit, value=value))
    return Integrable()


def _confirm_outside_span(j: InvariantGacs, w: GVector, eigen) -> None:
    """Exact linear solve double-check that w is not in span L.

    L splits as a direct sum over classes, so membership factors into one
    small solve per class touched by w.
    """
    locate = {root: ci_pos for root, ci_pos in j._locate.items()}
    touched = sorted({locate[root][0] for (_, root) in w.coeffs})
    for ci in touched:
        cls = j.classes[ci]
        index: Dict[BasisKey, int] = {}
        for pos, root in enumerate(cls.members):
            index[("x", root)] = pos
            index[("d", root)] = cls.size + pos
        dim = 2 * cls.size
        basis = eigen(ci)
        matrix = [[ZERO] * len(basis) for _ in range(dim)]
        for col, vec in enumerate(basis):
            for key, c in vec.coeffs.items():
                matrix[index[key]][col] = c
        rhs = [ZERO] * dim
        for key, c in w.coeffs.items():
            if key[1] in cls.members:
                rhs[index[key]] = c
        if linalg.solve(matrix, rhs) is None:
            return
    raise InvariantViolation("span-membership check disagrees with pairing test")
