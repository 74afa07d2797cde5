"""Property-based checks for the exact scalar and exterior-algebra kernels."""

from __future__ import annotations

from fractions import Fraction as Q

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_flag

from flagcx.btransform import Spinor
from flagcx.rationals import GQ, ONE
from flagcx.rootsys import complement_roots

rationals = st.builds(Q, st.integers(-20, 20), st.integers(1, 6))
scalars = st.builds(GQ, rationals, rationals)


@given(scalars, scalars, scalars)
def test_gq_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a
        assert b.norm2() == (b * b.conjugate()).re


_FLAG = make_flag("B", 3)
_ROOTS = complement_roots(_FLAG)


def _spinors():
    keys = st.lists(
        st.integers(min_value=0, max_value=len(_ROOTS) - 1),
        unique=True,
        max_size=3,
    ).map(lambda ids: tuple(_ROOTS[i] for i in sorted(ids)))
    terms = st.dictionaries(keys, scalars.filter(bool), max_size=3)
    return terms.map(lambda t: Spinor(_FLAG, t))


@settings(max_examples=60)
@given(_spinors(), _spinors(), _spinors())
def test_wedge_is_bilinear_and_associative(a, b, c):
    assert a.wedge(b.wedge(c)) == a.wedge(b).wedge(c)
    assert a.wedge(b + c) == a.wedge(b) + a.wedge(c)
    one = Spinor.scalar(_FLAG, ONE)
    assert one.wedge(a) == a and a.wedge(one) == a


@settings(max_examples=60)
@given(_spinors(), _spinors())
def test_wedge_is_graded_commutative_on_homogeneous_parts(a, b):
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            left = Spinor(_FLAG, {ka: va}).wedge(Spinor(_FLAG, {kb: vb}))
            right = Spinor(_FLAG, {kb: vb}).wedge(Spinor(_FLAG, {ka: va}))
            sign = -1 if (len(ka) % 2 and len(kb) % 2) else 1
            assert left == right.scale(GQ(sign))
