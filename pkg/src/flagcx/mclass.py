"""M-equivalence classes and the existence decision for invariant structures.

Two complement roots are M-equivalent when all their coroot pairings against
the simple roots agree mod 2 (equivalently, against every root).  An invariant
generalized almost complex structure exists iff every class has even size; the
GM2 condition additionally requires a maximal flag with some class of size 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from .rootsys import FlagSpec, Root, RootSystem, complement_roots


def parity_signature(rs: RootSystem, root: Root) -> Tuple[int, ...]:
    """Coroot pairings of root against the simple roots, reduced mod 2."""
    return tuple(rs.coroot_pairing(root, alpha) % 2 for alpha in rs.simple_roots)


def m_equivalent(rs: RootSystem, a: Root, b: Root) -> bool:
    """Whether a and b pair congruently mod 2 against every root."""
    return parity_signature(rs, a) == parity_signature(rs, b)


@dataclass(frozen=True)
class MClass:
    """One M-equivalence class of complement roots, in complement order."""

    members: Tuple[Root, ...]

    @property
    def representative(self) -> Root:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)


@lru_cache(maxsize=None)
def compute_classes(flag: FlagSpec) -> Tuple[MClass, ...]:
    """Partition the complement roots into M-classes, ordered by first member."""
    rs = flag.root_system
    groups: Dict[Tuple[int, ...], List[Root]] = {}
    for root in complement_roots(flag):
        groups.setdefault(parity_signature(rs, root), []).append(root)
    return tuple(MClass(tuple(members)) for members in groups.values())


@dataclass(frozen=True)
class ExistenceReport:
    """Outcome of the existence decision for a flag."""

    flag: FlagSpec
    classes: Tuple[MClass, ...]
    admits_gacs: bool
    gm2: bool


def decide_existence(flag: FlagSpec) -> ExistenceReport:
    """Decide whether flag admits an invariant structure, and whether it is GM2.

    The trivial flag (Theta = Sigma) has empty complement and is reported as
    not admitting a structure.
    """
    classes = compute_classes(flag)
    admits = bool(classes) and all(c.size % 2 == 0 for c in classes)
    gm2 = admits and flag.is_maximal and any(c.size == 2 for c in classes)
    return ExistenceReport(flag, classes, admits, gm2)
