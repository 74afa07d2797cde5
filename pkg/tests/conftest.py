"""Shared helpers for the test suite."""

from __future__ import annotations

import time
from contextlib import contextmanager
from typing import Iterator, Sequence, Tuple

from flagcx.rootsys import (
    FlagSpec,
    LieType,
    Root,
    RootSystem,
    build_root_system,
    root_to_lambda,
)


def make_flag(family: str, rank: int, theta: Sequence[int] = ()) -> FlagSpec:
    """A FlagSpec from a family, rank, and 1-based simple root indices."""
    rs = build_root_system(LieType(family, rank))
    return FlagSpec(rs, frozenset(rs.simple_roots[i - 1] for i in theta))


def from_lambda(rs: RootSystem, lam: Sequence[int]) -> Root:
    """The root with the given ambient (lambda) coordinates."""
    target = tuple(lam)
    for root in rs.all_roots:
        if root_to_lambda(rs, root) == target:
            return root
    raise AssertionError(f"no root with lambda coordinates {lam}")


def lam_set(rs: RootSystem, roots: Sequence[Root]) -> frozenset:
    return frozenset(root_to_lambda(rs, r) for r in roots)


@contextmanager
def budget(seconds: float) -> Iterator[None]:
    """Assert that the enclosed block finishes within the stated time budget."""
    start = time.monotonic()
    yield
    elapsed = time.monotonic() - start
    assert elapsed < seconds, f"exceeded time budget: {elapsed:.1f}s >= {seconds}s"


def e_vec(n: int, *signed_indices: Tuple[int, int]) -> Tuple[int, ...]:
    """An ambient integer vector sum of sign * e_i for (i, sign) pairs (1-based)."""
    out = [0] * n
    for idx, sign in signed_indices:
        out[idx - 1] += sign
    return tuple(out)
