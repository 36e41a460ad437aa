"""Set calculus over group subsets: products, inverses, square roots,
T(S), the hat set, and both local-maximality tests.

All functions are pure; a set argument must carry the same group order as
the group it is evaluated in.
"""

from __future__ import annotations

from .group_core import ElementSet, Group, GroupError, closure


def _check(g: Group, *sets: ElementSet, nonempty: bool = False):
    for s in sets:
        if s.group_order != g.order:
            raise GroupError("group mismatch")
        if nonempty and not s.members:
            raise GroupError("set must be non-empty")


def product_set(g: Group, a: ElementSet, b: ElementSet) -> ElementSet:
    """AB = {x*y : x in A, y in B}."""
    _check(g, a, b)
    rows = g._rows
    return ElementSet(g.order, frozenset(rows[x][y] for x in a.members for y in b.members))


def inverse_set(g: Group, a: ElementSet) -> ElementSet:
    """A^-1, elementwise inverses."""
    _check(g, a)
    return ElementSet(g.order, frozenset(g.inverses[x] for x in a.members))


def square_set(g: Group, a: ElementSet) -> ElementSet:
    """A^2 = {x^2 : x in A} (elementwise squares, not AA)."""
    _check(g, a)
    return ElementSet(g.order, frozenset(g.squares[x] for x in a.members))


def sqrt_set(g: Group, a: ElementSet) -> ElementSet:
    """All elements of G whose square lies in a."""
    _check(g, a)
    mem = a.members
    return ElementSet(g.order, frozenset(x for x in range(g.order) if g.squares[x] in mem))


def t_set(g: Group, s: ElementSet) -> ElementSet:
    """T(S) = S u SS u SS^-1 u S^-1S."""
    _check(g, s, nonempty=True)
    rows = g._rows
    inv = g.inverses
    out = set(s.members)
    for x in s.members:
        rx = rows[x]
        xi = inv[x]
        for y in s.members:
            out.add(rx[y])          # xy
            out.add(rx[inv[y]])     # xy^-1
            out.add(rows[xi][y])    # x^-1y
    return ElementSet(g.order, frozenset(out))


def is_product_free(g: Group, s: ElementSet) -> bool:
    """True iff x*y is outside s for all x, y in s (x = y included)."""
    _check(g, s, nonempty=True)
    rows = g._rows
    mem = s.members
    return all(rows[x][y] not in mem for x in mem for y in mem)


def is_locally_maximal(g: Group, s: ElementSet) -> bool:
    """Coverage test: s is product-free and T(S) u sqrt(S) = G."""
    _check(g, s, nonempty=True)
    if not is_product_free(g, s):
        return False
    covered = set(t_set(g, s).members)
    mem = s.members
    sq = g.squares
    for x in range(g.order):
        if x not in covered and sq[x] in mem:
            covered.add(x)
    return len(covered) == g.order


def is_locally_maximal_by_extension(g: Group, s: ElementSet) -> bool:
    """Definition test: s is product-free and no strict superset is.

    Independent of the coverage test; kept as its oracle.
    """
    _check(g, s, nonempty=True)
    if not is_product_free(g, s):
        return False
    for x in range(g.order):
        if x in s.members:
            continue
        if is_product_free(g, s.with_member(x)):
            return False
    return True


def hat_set(g: Group, s: ElementSet) -> ElementSet:
    """Members of s having at least one square root in G outside <S>."""
    _check(g, s, nonempty=True)
    cl = closure(g, s).members
    sq = g.squares
    outside_roots = {sq[x] for x in range(g.order) if x not in cl}
    return ElementSet(g.order, frozenset(x for x in s.members if x in outside_roots))
