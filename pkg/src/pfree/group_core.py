"""Finite groups as validated Cayley tables, with 0-based element indices.

Every group here is a full n x n multiplication table over elements
0..n-1, with the identity pinned at index 0.  Construction always runs the
group-axiom checks (Latin square, identity, inverses, associativity), so a
Group instance is trusted everywhere downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_ORDER = 1024

# Full O(n^3) associativity check is cheap up to here; beyond it we fall
# back to Light's test on a generating set.
_FULL_ASSOC_LIMIT = 128


class GroupError(ValueError):
    """A table fails the group axioms or a constructor argument is invalid."""


class Group:
    """A finite group on elements 0..n-1 with identity at index 0."""

    def __init__(self, table, element_names=None, generators=None, label=None):
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise GroupError("table must be a non-empty square matrix")
        n = int(arr.shape[0])
        if n > MAX_ORDER:
            raise GroupError(f"order {n} exceeds maximum supported order {MAX_ORDER}")
        if arr.min() < 0 or arr.max() >= n:
            raise GroupError("table entry out of range 0..n-1")

        self.order = n
        self.table = arr
        self.table.flags.writeable = False
        self._rows: list[list[int]] = arr.tolist()

        self._check_identity()
        self._check_latin()
        self.inverses = self._compute_inverses()
        self.squares = [self._rows[x][x] for x in range(n)]
        self._check_associativity()

        if element_names is None:
            element_names = [f"e{i}" for i in range(n)]
            element_names[0] = "1"
        if len(element_names) != n:
            raise GroupError("element_names length does not match order")
        self.element_names = list(element_names)
        self.generators = dict(generators or {})
        for name, idx in self.generators.items():
            if not (0 <= idx < n):
                raise GroupError(f"generator {name!r} index out of range")
        self.label = label if label is not None else f"order{n}"
        self._element_orders: Optional[list[int]] = None
        self._is_abelian: Optional[bool] = None

    # -- validation ----------------------------------------------------

    def _check_identity(self):
        n = self.order
        ident = list(range(n))
        if self._rows[0] != ident:
            j = next(j for j in range(n) if self._rows[0][j] != j)
            raise GroupError(f"identity law violated at row 0, column {j}")
        for i in range(n):
            if self._rows[i][0] != i:
                raise GroupError(f"identity law violated at column 0, row {i}")

    def _check_latin(self):
        n = self.order
        full = set(range(n))
        for i in range(n):
            if set(self._rows[i]) != full:
                raise GroupError(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {self._rows[i][j] for i in range(n)} != full:
                raise GroupError(f"column {j} is not a permutation of 0..{n - 1}")

    def _compute_inverses(self) -> list[int]:
        n = self.order
        inv = [self._rows[x].index(0) for x in range(n)]
        for x in range(n):
            if self._rows[inv[x]][x] != 0:
                raise GroupError(f"element {x} has no two-sided inverse")
        return inv

    def _check_associativity(self):
        t = self.table
        n = self.order
        if n <= _FULL_ASSOC_LIMIT:
            for i in range(n):
                # (i*j)*k over all j,k, vs i*(j*k)
                if not np.array_equal(t[t[i, :], :], t[i][t]):
                    bad = np.argwhere(t[t[i, :], :] != t[i][t])[0]
                    j, k = int(bad[0]), int(bad[1])
                    raise GroupError(
                        f"associativity fails at ({i},{j},{k}): "
                        f"({i}*{j})*{k} != {i}*({j}*{k})"
                    )
            return
        # Light's test: checking all triples through a generating set
        # suffices when the set multiplicatively generates the whole table.
        gens = _greedy_generators_from_table(self._rows, n)
        for a in gens:
            # (x*a)*y over all x,y, vs x*(a*y)
            if not np.array_equal(t[t[:, a], :], t[:, t[a, :]]):
                for x in range(n):
                    for y in range(n):
                        if t[t[x, a], y] != t[x, t[a, y]]:
                            raise GroupError(f"associativity fails at ({x},{a},{y})")

    # -- basic queries ---------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        """Product x*y by table lookup."""
        if not (0 <= x < self.order and 0 <= y < self.order):
            raise GroupError(f"element index out of range: ({x}, {y})")
        return self._rows[x][y]

    def inv(self, x: int) -> int:
        """Inverse of x."""
        if not (0 <= x < self.order):
            raise GroupError(f"element index out of range: {x}")
        return self.inverses[x]

    def element_order(self, x: int) -> int:
        """Smallest m >= 1 with x^m = 1."""
        if not (0 <= x < self.order):
            raise GroupError(f"element index out of range: {x}")
        if self._element_orders is None:
            self._element_orders = [None] * self.order  # type: ignore[list-item]
        cached = self._element_orders[x]
        if cached is not None:
            return cached
        m, acc = 1, x
        while acc != 0:
            acc = self._rows[acc][x]
            m += 1
        self._element_orders[x] = m
        return m

    def power(self, x: int, e: int) -> int:
        """x^e for any integer exponent."""
        if e < 0:
            x, e = self.inv(x), -e
        acc = 0
        for _ in range(e):
            acc = self._rows[acc][x]
        return acc

    def conjugate(self, x: int, y: int) -> int:
        """x * y * x^-1."""
        return self.mul(self.mul(x, y), self.inv(x))

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            rows = self._rows
            self._is_abelian = all(
                rows[i][j] == rows[j][i]
                for i in range(self.order)
                for j in range(i + 1, self.order)
            )
        return self._is_abelian

    def name_of(self, x: int) -> str:
        return self.element_names[x]

    def __repr__(self):
        return f"Group({self.label!r}, order={self.order})"


@dataclass(frozen=True)
class ElementSet:
    """A subset of the elements of a group of a specific order.

    Binary set operations only combine sets over the same group order;
    mixing orders is always a caller bug and raises.
    """

    group_order: int
    members: frozenset[int]

    def __post_init__(self):
        if self.group_order < 1:
            raise GroupError("group_order must be positive")
        for m in self.members:
            if not (0 <= m < self.group_order):
                raise GroupError(
                    f"member {m} out of range for group of order {self.group_order}"
                )

    @staticmethod
    def of(g: Group, members: Iterable[int]) -> "ElementSet":
        return ElementSet(g.order, frozenset(members))

    def _require_same(self, other: "ElementSet"):
        if self.group_order != other.group_order:
            raise GroupError(
                f"group mismatch: order {self.group_order} vs {other.group_order}"
            )

    def __len__(self):
        return len(self.members)

    def __contains__(self, x: int):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def sorted_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def union(self, other: "ElementSet") -> "ElementSet":
        self._require_same(other)
        return ElementSet(self.group_order, self.members | other.members)

    def intersection(self, other: "ElementSet") -> "ElementSet":
        self._require_same(other)
        return ElementSet(self.group_order, self.members & other.members)

    def difference(self, other: "ElementSet") -> "ElementSet":
        self._require_same(other)
        return ElementSet(self.group_order, self.members - other.members)

    def issubset(self, other: "ElementSet") -> bool:
        self._require_same(other)
        return self.members <= other.members

    def with_member(self, x: int) -> "ElementSet":
        return ElementSet(self.group_order, self.members | {x})

    def words(self, g: Group) -> list[str]:
        return [g.element_names[x] for x in self.sorted_tuple()]


# -- name generation ---------------------------------------------------


def _words_from_generators(
    rows: list[list[int]], n: int, gen_indices: Sequence[int]
) -> list[Optional[tuple[int, ...]]]:
    """Shortest right-multiplication word (as generator positions) per element."""
    words: list[Optional[tuple[int, ...]]] = [None] * n
    words[0] = ()
    queue = [0]
    while queue:
        nxt = []
        for e in queue:
            w = words[e]
            for pos, gi in enumerate(gen_indices):
                f = rows[e][gi]
                if words[f] is None:
                    words[f] = w + (pos,)
                    nxt.append(f)
        queue = nxt
    return words


def _render_word(word: tuple[int, ...], gen_names: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = gen_names[word[i]]
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def _names_from_generators(rows, n, gens: list[tuple[str, int]]) -> list[str]:
    indices = [idx for _, idx in gens]
    names = [name for name, _ in gens]
    words = _words_from_generators(rows, n, indices)
    out = []
    for i in range(n):
        w = words[i]
        out.append(f"e{i}" if w is None else _render_word(w, names))
    return out


def _finish(table, gens: list[tuple[str, int]], label: str, names=None) -> Group:
    n = len(table)
    if names is None:
        names = _names_from_generators(table, n, gens)
    return Group(table, element_names=names, generators=dict(gens), label=label)


def _normal_form_name(base1: str, a: int, base2: str, b: int) -> str:
    """Render g^a * h^b in compressed power notation."""
    parts = []
    if a == 1:
        parts.append(base1)
    elif a > 1:
        parts.append(f"{base1}^{a}")
    if b == 1:
        parts.append(base2)
    elif b > 1:
        parts.append(f"{base2}^{b}")
    return "*".join(parts) if parts else "1"


# -- constructors ------------------------------------------------------


def build_cyclic(n: int) -> Group:
    """Cyclic group of order n with generator g."""
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    g = 1 % n
    return _finish(table, [("g", g)], f"C{n}")


def build_dihedral(m: int) -> Group:
    """Dihedral group of order 2m: g of order m, h an involution, hgh^-1 = g^-1."""
    if m < 1:
        raise GroupError("dihedral parameter must be >= 1")
    n = 2 * m

    def idx(a, b):
        return a % m + m * (b % 2)

    table = [[0] * n for _ in range(n)]
    for a in range(m):
        for b in range(2):
            for c in range(m):
                for d in range(2):
                    cc = c if b == 0 else -c
                    table[idx(a, b)][idx(c, d)] = idx(a + cc, b + d)
    names = [""] * n
    for a in range(m):
        for b in range(2):
            names[idx(a, b)] = _normal_form_name("g", a, "h", b)
    return _finish(table, [("g", idx(1, 0)), ("h", idx(0, 1))], f"D{n}", names)


def build_dicyclic(n: int) -> Group:
    """Dicyclic group of order 4n: x^{2n} = 1, x^n = y^2, yx = x^-1 y."""
    if n < 1:
        raise GroupError("dicyclic parameter must be >= 1")
    m = 2 * n
    order = 4 * n

    def idx(a, b):
        return a % m + m * (b % 2)

    table = [[0] * order for _ in range(order)]
    for a in range(m):
        for b in range(2):
            for c in range(m):
                for d in range(2):
                    if b == 0:
                        res = (a + c, d)
                    elif d == 0:
                        res = (a - c, 1)
                    else:  # y^2 = x^n
                        res = (a - c + n, 0)
                    table[idx(a, b)][idx(c, d)] = idx(*res)
    names = [""] * order
    for a in range(m):
        for b in range(2):
            names[idx(a, b)] = _normal_form_name("x", a, "y", b)
    return _finish(table, [("x", idx(1, 0)), ("y", idx(0, 1))], f"Q{order}", names)


def _perm_group(perms: list[tuple[int, ...]], gens, label) -> Group:
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = [
        [index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms
    ]
    gen_list = [(name, index[p]) for name, p in gens]
    return _finish(table, gen_list, label)


def _perm_parity(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            clen += 1
        parity ^= (clen - 1) & 1
    return parity


def build_alternating(n: int) -> Group:
    """Alternating group Alt(n) on n points, 3 <= n <= 5."""
    if not (3 <= n <= 5):
        raise GroupError("alternating degree must be between 3 and 5")
    perms = [p for p in permutations(range(n)) if _perm_parity(p) == 0]
    a = tuple([1, 2, 0] + list(range(3, n)))  # 3-cycle (0 1 2)
    gens = [("a", a)]
    if n == 4:
        gens.append(("b", (1, 0, 3, 2)))  # (0 1)(2 3)
    elif n == 5:
        gens.append(("b", (1, 2, 3, 4, 0)))  # 5-cycle
    return _perm_group(perms, gens, f"A{n}")


def build_symmetric(n: int) -> Group:
    """Symmetric group Sym(n) on n points, 1 <= n <= 5."""
    if not (1 <= n <= 5):
        raise GroupError("symmetric degree must be between 1 and 5")
    perms = list(permutations(range(n)))
    gens = []
    if n >= 2:
        gens.append(("a", tuple([1, 0] + list(range(2, n)))))  # (0 1)
    if n >= 3:
        gens.append(("b", tuple(list(range(1, n)) + [0])))  # n-cycle
    return _perm_group(perms, gens, f"S{n}")


def build_metacyclic(m: int, n: int, r: int) -> Group:
    """Metacyclic group <g, h : g^m = h^n = 1, h g h^-1 = g^r> of order m*n."""
    if m < 1 or n < 1:
        raise GroupError("metacyclic parameters must be >= 1")
    if m > 1:
        r = r % m
        if math.gcd(r, m) != 1 or pow(r, n, m) != 1:
            raise GroupError("action does not define automorphism of required order")
    order = m * n

    def idx(a, b):
        return a % m + m * (b % n)

    rpow = [pow(r, b, m) if m > 1 else 0 for b in range(n)]
    table = [[0] * order for _ in range(order)]
    for a in range(m):
        for b in range(n):
            for c in range(m):
                for d in range(n):
                    table[idx(a, b)][idx(c, d)] = idx(a + c * rpow[b], b + d)
    names = [""] * order
    for a in range(m):
        for b in range(n):
            names[idx(a, b)] = _normal_form_name("g", a, "h", b)
    return _finish(
        table, [("g", idx(1, 0)), ("h", idx(0, 1))], f"M({m},{n},{r})", names
    )


def _merge_generator_names(
    gens1: dict[str, int], gens2: dict[str, int], n2: int
) -> list[tuple[str, int]]:
    """Re-expose factor generators on the product, renaming on clashes."""
    merged: list[tuple[str, int]] = []
    taken: set[str] = set()

    def fresh(name: str) -> str:
        if name not in taken:
            return name
        k = 2
        while f"{name}{k}" in taken:
            k += 1
        return f"{name}{k}"

    for name, idx in gens1.items():
        nm = fresh(name)
        taken.add(nm)
        merged.append((nm, idx * n2))
    for name, idx in gens2.items():
        nm = fresh(name)
        taken.add(nm)
        merged.append((nm, idx))
    return merged


def build_direct_product(g1: Group, g2: Group) -> Group:
    """Direct product on pairs, indexed as i*|g2| + j."""
    n1, n2 = g1.order, g2.order
    order = n1 * n2
    if order > MAX_ORDER:
        raise GroupError(f"product order {order} exceeds maximum {MAX_ORDER}")
    t1, t2 = g1._rows, g2._rows
    table = [[0] * order for _ in range(order)]
    for i1 in range(n1):
        for j1 in range(n2):
            row = table[i1 * n2 + j1]
            for i2 in range(n1):
                ri = t1[i1][i2] * n2
                r1 = t1[i1][i2]
                for j2 in range(n2):
                    row[i2 * n2 + j2] = r1 * n2 + t2[j1][j2]
    gens = _merge_generator_names(g1.generators, g2.generators, n2)
    label = f"{g1.label}x{g2.label}"
    names = _names_from_generators(table, order, gens)
    return Group(table, element_names=names, generators=dict(gens), label=label)


# -- subgroup machinery ------------------------------------------------


def _closure_indices(g: Group, seed: Iterable[int]) -> set[int]:
    rows = g._rows
    members = set(seed) | {0}
    members |= {g.inverses[x] for x in members}
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            row = rows[x]
            for y in list(members):
                for z in (row[y], rows[y][x]):
                    if z not in members:
                        members.add(z)
                        members.add(g.inverses[z])
                        new.append(z)
        frontier = new
    return members


def closure(g: Group, s: ElementSet) -> ElementSet:
    """Subgroup generated by s (contains identity, closed under mul and inv)."""
    if s.group_order != g.order:
        raise GroupError("group mismatch")
    if not s.members:
        raise GroupError("closure of the empty set is undefined")
    return ElementSet(g.order, frozenset(_closure_indices(g, s.members)))


def is_subgroup(g: Group, h: ElementSet) -> bool:
    if h.group_order != g.order or not h.members or 0 not in h.members:
        return False
    rows = g._rows
    mem = h.members
    return all(rows[x][y] in mem for x in mem for y in mem)


def is_normal(g: Group, h: ElementSet) -> bool:
    """True iff the subgroup h is normal in g."""
    if h.group_order != g.order:
        raise GroupError("group mismatch")
    if not is_subgroup(g, h):
        raise GroupError("is_normal requires a subgroup")
    mem = h.members
    for x in range(g.order):
        for y in mem:
            if g.conjugate(x, y) not in mem:
                return False
    return True


def quotient_is_elem_abelian_2(g: Group, n: ElementSet) -> bool:
    """True iff G/n is trivial or an elementary abelian 2-group."""
    if not is_normal(g, n):
        raise GroupError("quotient test requires a normal subgroup")
    return all(g.squares[x] in n.members for x in range(g.order))


def is_elem_abelian_2(g: Group, h: ElementSet) -> bool:
    """True iff the subgroup h is trivial or elementary abelian of exponent 2."""
    if not is_subgroup(g, h):
        raise GroupError("test requires a subgroup")
    return all(g.squares[x] == 0 for x in h.members)


def subgroup_as_group(g: Group, h: ElementSet) -> Group:
    """The subgroup h as a standalone Group (renumbered, identity at 0)."""
    if not is_subgroup(g, h):
        raise GroupError("subgroup_as_group requires a subgroup")
    elems = [0] + [x for x in sorted(h.members) if x != 0]
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[g._rows[x][y]] for y in elems] for x in elems]
    names = [g.element_names[x] for x in elems]
    return Group(table, element_names=names, label=f"{g.label}-sub{len(elems)}")


# -- automorphisms and isomorphisms ------------------------------------


def _greedy_generators_from_table(rows: list[list[int]], n: int) -> list[int]:
    """Greedy minimal generating set: repeatedly add the element whose
    addition grows the closure the most (ties broken by smallest index)."""

    def close(seed: set[int]) -> set[int]:
        members = set(seed) | {0}
        changed = True
        while changed:
            changed = False
            for x in list(members):
                for y in list(members):
                    z = rows[x][y]
                    if z not in members:
                        members.add(z)
                        changed = True
        return members

    gens: list[int] = []
    cl = {0}
    while len(cl) < n:
        best, best_cl = None, None
        for x in range(n):
            if x in cl:
                continue
            c = close(cl | {x})
            if best_cl is None or len(c) > len(best_cl):
                best, best_cl = x, c
        gens.append(best)  # type: ignore[arg-type]
        cl = best_cl  # type: ignore[assignment]
    return gens


def generating_set(g: Group) -> list[int]:
    return _greedy_generators_from_table(g._rows, g.order)


def _try_extend(g1: Group, g2: Group, pm: dict[int, int], gen: int, image: int):
    """Extend a partial homomorphism (defined on a subgroup) by gen -> image.

    Returns the extended map on the subgroup generated by dom(pm) + {gen},
    or None on conflict (non-multiplicative or non-injective).
    """
    m = dict(pm)
    used = set(m.values())
    if gen in m:
        return m if m[gen] == image else None
    if image in used:
        return None
    m[gen] = image
    used.add(image)
    frontier = [gen]
    r1, r2 = g1._rows, g2._rows
    while frontier:
        new = []
        for a in frontier:
            fa = m[a]
            for b in list(m.keys()):
                fb = m[b]
                for c, fc in ((r1[a][b], r2[fa][fb]), (r1[b][a], r2[fb][fa])):
                    if c in m:
                        if m[c] != fc:
                            return None
                    else:
                        if fc in used:
                            return None
                        m[c] = fc
                        used.add(fc)
                        new.append(c)
        frontier = new
    return m


def _morphism_search(g1: Group, g2: Group, find_all: bool):
    """Backtracking search for isomorphisms g1 -> g2 over generator images."""
    n = g1.order
    if g2.order != n:
        return []
    gens = generating_set(g1)
    if not gens:
        return [(0,)] if n == 1 else []
    by_order: dict[int, list[int]] = {}
    for y in range(n):
        by_order.setdefault(g2.element_order(y), []).append(y)
    results: list[tuple[int, ...]] = []

    def extend(i: int, pm: dict[int, int]):
        if results and not find_all:
            return
        if i == len(gens):
            if len(pm) == n:
                results.append(tuple(pm[x] for x in range(n)))
            return
        gen = gens[i]
        if gen in pm:
            extend(i + 1, pm)
            return
        for y in by_order.get(g1.element_order(gen), []):
            m = _try_extend(g1, g2, pm, gen, y)
            if m is not None:
                extend(i + 1, m)
                if results and not find_all:
                    return

    extend(0, {0: 0})
    return sorted(results)


def automorphisms(g: Group) -> list[tuple[int, ...]]:
    """All automorphisms of g, sorted lexicographically as permutations."""
    return _morphism_search(g, g, find_all=True)


def find_isomorphism(g1: Group, g2: Group) -> Optional[tuple[int, ...]]:
    """An isomorphism g1 -> g2 as an index map, or None if none exists."""
    if g1.order != g2.order:
        return None
    if g1.is_abelian != g2.is_abelian:
        return None
    orders1 = sorted(g1.element_order(x) for x in range(g1.order))
    orders2 = sorted(g2.element_order(x) for x in range(g2.order))
    if orders1 != orders2:
        return None
    found = _morphism_search(g1, g2, find_all=False)
    return found[0] if found else None
