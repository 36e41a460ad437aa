from itertools import permutations

import pytest

from pfree import catalog_io as cio


def brute_force_automorphisms(g):
    """Oracle: scan all bijections fixing the identity for multiplicativity."""
    n = g.order
    rows = g._rows
    out = []
    for p in permutations(range(1, n)):
        phi = (0,) + p
        ok = True
        for x in range(n):
            rx = rows[x]
            px = phi[x]
            for y in range(n):
                if phi[rx[y]] != rows[px][phi[y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(phi)
    return out


# Built-in groups of order <= 12, used by the exhaustive property suites.
SMALL_GROUP_EXPRS = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
    "C2xC2", "C2xC4", "C2xC6", "C2xC2xC2", "C3xC3", "C2xC2xC3",
    "D6", "D8", "D10", "D12",
    "Q8", "Q12",
    "A4", "S3",
]


@pytest.fixture(scope="session")
def small_groups():
    return [cio.build_group(expr) for expr in SMALL_GROUP_EXPRS]


@pytest.fixture(scope="session")
def table1_groups():
    return {
        entry.expr: cio.build_group(entry.expr)
        for entry in cio.builtin_table1().entries
    }
