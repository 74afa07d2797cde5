"""Chevalley structure constants m_{x,y} with [X_x, X_y] = m_{x,y} X_{x+y}.

Constants are seeded on extraspecial pairs (the decomposition of each positive
root whose first element is minimal in the frozen root order gets +(p+1)) and
propagated by Jacobi identities; pairs involving negative roots reduce to
positive pairs through the zero-sum rule

    x + y + z = 0  =>  m_{x,y}/<z,z> = m_{y,z}/<x,x> = m_{z,x}/<y,y>

and m_{-x,-y} = -m_{x,y}.  Construction verifies antisymmetry, the negation
rule, |m_{x,y}| = p+1 for every pair, and the full Jacobi identity; any
violation raises AssertionError.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .rootsys import Root, RootSystem, height, root_add, root_neg, root_sub


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """Structure constants of the Weyl basis over a fixed root system."""

    root_system: RootSystem
    _table: Dict[Tuple[Root, Root], Q] = field(repr=False)

    def m(self, x: Root, y: Root) -> Optional[Q]:
        """m_{x,y}, or None if x + y is not a root (the bracket has no X component)."""
        return self._table.get((x, y))

    def bracket(self, x: Root, y: Root) -> Optional[Tuple[Q, Root]]:
        """[X_x, X_y] as (coefficient, root), or None when x + y is not a root."""
        value = self._table.get((x, y))
        if value is None:
            return None
        return value, root_add(x, y)


def _positive_table(rs: RootSystem) -> Dict[Tuple[Root, Root], Q]:
    """Constants on pairs of positive roots, in increasing height of the sum."""
    positive = rs.positive_roots
    pos_set = set(positive)
    order = {r: i for i, r in enumerate(positive)}
    table: Dict[Tuple[Root, Root], Q] = {}

    def n(u: Root, v: Root) -> Q:
        """Resolve a constant for a (possibly mixed-sign) pair, one reduction step."""
        got = table.get((u, v))
        if got is not None:
            return got
        u_pos, v_pos = u in pos_set, v in pos_set
        if not u_pos and not v_pos:
            value = -n(root_neg(u), root_neg(v))
        elif u_pos and v_pos:
            raise AssertionError("positive pair requested out of order")
        else:
            if not u_pos:
                value = -n(v, u)
            else:
                w = root_add(u, v)
                if w in pos_set:
                    ratio = rs.pairing(w, w) / rs.pairing(u, u)
                    value = -ratio * n(root_neg(v), w)
                else:
                    ratio = rs.pairing(w, w) / rs.pairing(v, v)
                    value = ratio * n(root_neg(w), u)
        table[(u, v)] = value
        return value

    for gamma in positive:
        if height(gamma) < 2:
            continue
        decomps = []
        for xi in positive:
            if order[xi] >= order.get(gamma, 1 << 30):
                break
            eta = root_sub(gamma, xi)
            if eta in pos_set and order[xi] < order[eta]:
                decomps.append((xi, eta))
        decomps.sort(key=lambda pair: order[pair[0]])
        alpha, beta = decomps[0]
        p = rs.string_down(beta, alpha)
        table[(alpha, beta)] = Q(p + 1)
        table[(beta, alpha)] = Q(-(p + 1))
        for xi, eta in decomps[1:]:
            acc = Q(0)
            if rs.is_root(root_sub(eta, alpha)):
                acc += n(eta, root_neg(alpha)) * n(root_sub(eta, alpha), xi)
            if rs.is_root(root_sub(xi, alpha)):
                acc += n(root_neg(alpha), xi) * n(root_sub(xi, alpha), eta)
            value = -acc / n(gamma, root_neg(alpha))
            table[(xi, eta)] = value
            table[(eta, xi)] = -value
    return table


@lru_cache(maxsize=None)
def build_structure_constants(rs: RootSystem) -> StructureConstants:
    """Compute and verify the full table of structure constants for rs."""
    table = _positive_table(rs)
    pos_set = set(rs.positive_roots)
    roots = rs.all_roots
    root_set = set(roots)

    # Extend to all sign patterns via the negation and zero-sum rules.
    for x in roots:
        for y in roots:
            if (x, y) in table or root_add(x, y) not in root_set:
                continue
            x_pos, y_pos = x in pos_set, y in pos_set
            if not x_pos and not y_pos:
                value = -table[(root_neg(x), root_neg(y))]
            else:
                if not x_pos:
                    x, y, flip = y, x, True
                else:
                    flip = False
                w = root_add(x, y)
                if w in pos_set:
                    ratio = rs.pairing(w, w) / rs.pairing(x, x)
                    value = -ratio * table[(root_neg(y), w)]
                else:
                    ratio = rs.pairing(w, w) / rs.pairing(y, y)
                    value = ratio * table[(root_neg(w), x)]
                if flip:
                    x, y = y, x
                    value = -value
            table[(x, y)] = value

    _verify(rs, table)
    return StructureConstants(rs, table)


def _verify(rs: RootSystem, table: Dict[Tuple[Root, Root], Q]) -> None:
    root_set = set(rs.all_roots)
    for (x, y), value in table.items():
        p = rs.string_down(y, x)
        if abs(value) != p + 1 or value.denominator != 1:
            raise AssertionError(f"|m| != p+1 at {x}, {y}: {value}")
        if table[(y, x)] != -value:
            raise AssertionError(f"antisymmetry fails at {x}, {y}")
        if table[(root_neg(x), root_neg(y))] != -value:
            raise AssertionError(f"negation rule fails at {x}, {y}")
    # Full Jacobi identity, Cartan terms included.  The basis convention is
    # [X_x, X_{-x}] = h_x (the coroot) and [h_x, X_v] = <v, x^vee> X_v; Cartan
    # contributions are compared through coroot coordinates 2x/<x,x>.
    zero = Q(0)
    get = table.get
    rank_l = rs.rank

    def double_bracket(u: Root, v: Root, w: Root) -> tuple[Dict[Root, Q], list[Q]]:
        """[[X_u, X_v], X_w] as (X-part by root, Cartan part in coroot coordinates)."""
        x_part: Dict[Root, Q] = {}
        h_part = [zero] * rank_l
        if v == root_neg(u):
            # [h_u, X_w]
            x_part[w] = Q(rs.coroot_pairing(w, u))
            return x_part, h_part
        m_uv = get((u, v))
        if m_uv is None:
            return x_part, h_part
        s = root_add(u, v)
        if w == root_neg(s):
            norm = rs.pairing(s, s)
            for i, c in enumerate(s):
                h_part[i] = m_uv * 2 * c / norm
            return x_part, h_part
        m_sw = get((s, w))
        if m_sw is not None:
            x_part[root_add(s, w)] = m_uv * m_sw
        return x_part, h_part

    pairs = [(x, y) for (x, y) in table if x < y]
    for x, y in pairs:
        for z in root_set:
            total_x: Dict[Root, Q] = {}
            total_h = [zero] * rank_l
            for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
                xp, hp = double_bracket(u, v, w)
                for r, c in xp.items():
                    total_x[r] = total_x.get(r, zero) + c
                for i in range(rank_l):
                    total_h[i] += hp[i]
            if any(total_h) or any(total_x.values()):
                raise AssertionError(f"Jacobi fails at {x}, {y}, {z}")
