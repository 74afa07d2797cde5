"""Parity signatures, M-classes, and the existence decision."""

from __future__ import annotations

from conftest import from_lambda, make_flag

from flagcx.mclass import (
    compute_classes,
    decide_existence,
    m_equivalent,
    parity_signature,
)
from flagcx.rootsys import complement_roots


def test_parity_signature_examples():
    rs = make_flag("C", 4).root_system
    # The long simple coroot e_4 separates lambda_2 - lambda_1 from
    # lambda_4 - lambda_3 even though both pair evenly against e_i - e_{i+1}.
    a = from_lambda(rs, (-1, 1, 0, 0))
    b = from_lambda(rs, (0, 0, -1, 1))
    assert parity_signature(rs, a) == (0, 1, 0, 0)
    assert parity_signature(rs, b) == (0, 1, 0, 1)
    assert not m_equivalent(rs, a, b)
    assert m_equivalent(rs, a, from_lambda(rs, (-1, -1, 0, 0)))


def test_classes_partition_complement_in_order():
    for family, rank, theta in [("B", 3, ()), ("C", 4, ()), ("D", 5, (2, 3, 4, 5))]:
        flag = make_flag(family, rank, theta)
        classes = compute_classes(flag)
        comp = complement_roots(flag)
        flat = [r for cls in classes for r in cls.members]
        assert sorted(flat) == sorted(comp)
        assert len(set(flat)) == len(comp)
        for cls in classes:
            assert cls.representative == cls.members[0]
            positions = [comp.index(r) for r in cls.members]
            assert positions == sorted(positions)


def test_trivial_flag_has_no_classes_and_does_not_admit():
    flag = make_flag("B", 2, (1, 2))
    assert compute_classes(flag) == ()
    report = decide_existence(flag)
    assert not report.admits_gacs and not report.gm2


def test_odd_classes_block_existence():
    # A2 maximal: three singleton classes.
    flag = make_flag("A", 2)
    report = decide_existence(flag)
    assert [c.size for c in report.classes] == [1, 1, 1]
    assert not report.admits_gacs


def test_partial_flag_existence():
    report = decide_existence(make_flag("B", 3, (1, 2)))
    assert report.admits_gacs
    assert not report.gm2  # GM2 requires a maximal flag
    assert all(c.size % 2 == 0 for c in report.classes)

    report = decide_existence(make_flag("B", 3, (1,)))
    assert not report.admits_gacs


def test_gm2_requires_some_two_element_class():
    assert decide_existence(make_flag("B", 2)).gm2
    assert decide_existence(make_flag("C", 4)).gm2
    d4 = decide_existence(make_flag("D", 4))
    assert d4.admits_gacs and not d4.gm2  # all classes have size 4
    assert {c.size for c in d4.classes} == {4}
