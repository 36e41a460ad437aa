"""Group-expression parsing, element words, Cayley-table files, the
embedded size-3 reference table, and report serialization."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import group_core as gc
from .group_core import Group, GroupError

TOOL_VERSION = "pfree 0.1.0"


# -- group expressions -------------------------------------------------


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    order: int  # group order 2m


@dataclass(frozen=True)
class Dicyclic:
    order: int  # group order 4n


@dataclass(frozen=True)
class Alternating:
    degree: int


@dataclass(frozen=True)
class Symmetric:
    degree: int


@dataclass(frozen=True)
class Metacyclic:
    m: int
    n: int
    r: int


@dataclass(frozen=True)
class FromFile:
    path: str


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple["GroupExpr", ...]


GroupExpr = Union[
    Cyclic, Dihedral, Dicyclic, Alternating, Symmetric, Metacyclic, FromFile,
    DirectProduct,
]


class ParseError(ValueError):
    """Syntax or constraint error in a group expression or element word."""


def _validate_atom(expr: GroupExpr, pos: int):
    if isinstance(expr, Cyclic) and expr.n < 1:
        raise ParseError(f"cyclic order must be >= 1 (at position {pos})")
    if isinstance(expr, Dihedral):
        if expr.order < 2 or expr.order % 2 != 0:
            raise ParseError(
                f"dihedral order must be even and >= 2 (at position {pos})"
            )
    if isinstance(expr, Dicyclic):
        if expr.order < 8 or expr.order % 4 != 0:
            raise ParseError(
                f"dicyclic order must be divisible by 4 and >= 8 (at position {pos})"
            )
    if isinstance(expr, Alternating) and not (3 <= expr.degree <= 5):
        raise ParseError(f"alternating degree must be 3..5 (at position {pos})")
    if isinstance(expr, Symmetric) and not (1 <= expr.degree <= 5):
        raise ParseError(f"symmetric degree must be 1..5 (at position {pos})")
    if isinstance(expr, Metacyclic):
        m, n, r = expr.m, expr.n, expr.r
        if m < 1 or n < 1:
            raise ParseError(f"metacyclic orders must be >= 1 (at position {pos})")
        if m > 1 and (pow(r % m, n, m) != 1 or __import__("math").gcd(r % m, m) != 1):
            raise ParseError(
                f"metacyclic constraint r^n = 1 mod m fails (at position {pos})"
            )


def parse_group_expr(text: str) -> GroupExpr:
    """Parse expressions like "C3xQ8", "M(8,2,5)", "D8 x file:k4.tbl"."""
    s = text
    i = 0
    n = len(s)

    def skip_ws():
        nonlocal i
        while i < n and s[i].isspace():
            i += 1

    def read_int() -> int:
        nonlocal i
        start = i
        while i < n and s[i].isdigit():
            i += 1
        if i == start:
            raise ParseError(f"expected integer at position {start} in {text!r}")
        return int(s[start:i])

    def read_atom() -> GroupExpr:
        nonlocal i
        skip_ws()
        if i >= n:
            raise ParseError(f"expected group atom at position {i} in {text!r}")
        pos = i
        low = s[i:].lower()
        if low.startswith("file:"):
            i += 5
            start = i
            while i < n and not s[i].isspace():
                i += 1
            if i == start:
                raise ParseError(f"empty file path at position {start}")
            return FromFile(s[start:i])
        if low.startswith("mod16"):
            i += 5
            return Metacyclic(8, 2, 5)
        ch = s[i].lower()
        if ch == "m":
            i += 1
            skip_ws()
            if i >= n or s[i] != "(":
                raise ParseError(f"expected '(' after M at position {i}")
            i += 1
            vals = []
            for which in range(3):
                skip_ws()
                vals.append(read_int())
                skip_ws()
                expect = "," if which < 2 else ")"
                if i >= n or s[i] != expect:
                    raise ParseError(f"expected {expect!r} at position {i}")
                i += 1
            atom: GroupExpr = Metacyclic(*vals)
        elif ch in "cdqas":
            i += 1
            skip_ws()
            k = read_int()
            atom = {
                "c": Cyclic,
                "d": Dihedral,
                "q": Dicyclic,
                "a": Alternating,
                "s": Symmetric,
            }[ch](k)
        else:
            raise ParseError(f"unexpected character {s[i]!r} at position {i}")
        _validate_atom(atom, pos)
        return atom

    factors = [read_atom()]
    skip_ws()
    while i < n:
        if s[i].lower() != "x":
            raise ParseError(f"expected 'x' or end at position {i} in {text!r}")
        i += 1
        factors.append(read_atom())
        skip_ws()
    if len(factors) == 1:
        return factors[0]
    return DirectProduct(tuple(factors))


def format_group_expr(expr: GroupExpr) -> str:
    """Canonical printed form; parse(format(e)) == e."""
    if isinstance(expr, Cyclic):
        return f"C{expr.n}"
    if isinstance(expr, Dihedral):
        return f"D{expr.order}"
    if isinstance(expr, Dicyclic):
        return f"Q{expr.order}"
    if isinstance(expr, Alternating):
        return f"A{expr.degree}"
    if isinstance(expr, Symmetric):
        return f"S{expr.degree}"
    if isinstance(expr, Metacyclic):
        return f"M({expr.m},{expr.n},{expr.r})"
    if isinstance(expr, FromFile):
        return f"file:{expr.path}"
    if isinstance(expr, DirectProduct):
        return "x".join(format_group_expr(f) for f in expr.factors)
    raise TypeError(f"not a group expression: {expr!r}")


def to_group(expr: GroupExpr) -> Group:
    """Evaluate an expression into a validated Group."""
    if isinstance(expr, Cyclic):
        return gc.build_cyclic(expr.n)
    if isinstance(expr, Dihedral):
        return gc.build_dihedral(expr.order // 2)
    if isinstance(expr, Dicyclic):
        return gc.build_dicyclic(expr.order // 4)
    if isinstance(expr, Alternating):
        return gc.build_alternating(expr.degree)
    if isinstance(expr, Symmetric):
        return gc.build_symmetric(expr.degree)
    if isinstance(expr, Metacyclic):
        return gc.build_metacyclic(expr.m, expr.n, expr.r)
    if isinstance(expr, FromFile):
        return load_cayley_file(expr.path)
    if isinstance(expr, DirectProduct):
        groups = [to_group(f) for f in expr.factors]
        acc = groups[0]
        for g in groups[1:]:
            acc = gc.build_direct_product(acc, g)
        acc.label = format_group_expr(expr)
        return acc
    raise TypeError(f"not a group expression: {expr!r}")


def build_group(text: str) -> Group:
    return to_group(parse_group_expr(text))


# -- element words ------------------------------------------------------

_FACTOR_RE = re.compile(r"^(#\d+|1|[A-Za-z][A-Za-z0-9]*)(\^(-?\d+))?$")


def parse_element_word(g: Group, text: str) -> int:
    """Evaluate a word like "g^3", "g*h", "x^-1*y", "#5" to an element index."""
    acc = 0
    for raw in text.split("*"):
        factor = raw.strip()
        m = _FACTOR_RE.match(factor)
        if not m:
            raise ParseError(f"malformed word factor {factor!r} in {text!r}")
        base_txt, exp_txt = m.group(1), m.group(3)
        if base_txt == "1":
            base = 0
        elif base_txt.startswith("#"):
            base = int(base_txt[1:])
            if base >= g.order:
                raise ParseError(f"raw index {base} out of range in {text!r}")
        elif base_txt in g.generators:
            base = g.generators[base_txt]
        else:
            raise ParseError(f"unknown generator {base_txt!r} in {text!r}")
        exp = 1 if exp_txt is None else int(exp_txt)
        acc = g.mul(acc, g.power(base, exp))
    return acc


def parse_element_set(g: Group, words) -> gc.ElementSet:
    return gc.ElementSet.of(g, (parse_element_word(g, w) for w in words))


# -- cayley v1 files ----------------------------------------------------


def load_cayley_file(path) -> Group:
    """Load a "cayley v1" table file and run all group checks."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise GroupError(f"{path}: empty cayley file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "cayley" or header[1] != "1":
        raise GroupError(f"{path}: malformed header {lines[0]!r}")
    try:
        n = int(header[2])
    except ValueError:
        raise GroupError(f"{path}: malformed header {lines[0]!r}") from None
    if n < 1:
        raise GroupError(f"{path}: order must be >= 1")
    body = lines[1:]
    names = None
    if body and body[0].startswith("names"):
        names = body[0].split()[1:]
        if len(names) != n:
            raise GroupError(f"{path}: names line must carry {n} tokens")
        body = body[1:]
    if len(body) != n:
        raise GroupError(f"{path}: expected {n} table rows, found {len(body)}")
    table = []
    for i, line in enumerate(body):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise GroupError(f"{path}: non-integer entry in row {i}") from None
        if len(row) != n:
            raise GroupError(f"{path}: row {i} has {len(row)} entries, expected {n}")
        table.append(row)
    g = Group(table, element_names=names, label=Path(path).stem)
    gen_idx = gc.generating_set(g)
    g.generators = {g.element_names[i]: i for i in gen_idx}
    return g


def save_cayley_file(g: Group, path) -> None:
    out = [f"cayley 1 {g.order}"]
    out.append("names " + " ".join(g.element_names))
    for i in range(g.order):
        out.append(" ".join(str(v) for v in g._rows[i]))
    Path(path).write_text("\n".join(out) + "\n")


# -- embedded reference table -------------------------------------------


@dataclass(frozen=True)
class Table1Entry:
    """One group row: expression, reference sets as generator words (with
    the isomorphism type of <S> for each), and the expected total count."""

    expr: str
    reference_sets: tuple[tuple[str, ...], ...]
    closure_labels: tuple[str, ...]
    expected_count: int


@dataclass(frozen=True)
class Table1Reference:
    entries: tuple[Table1Entry, ...]


_TABLE1 = (
    Table1Entry("C6", (("g", "g^3", "g^5"),), ("C6",), 1),
    Table1Entry("D6", (("h", "g*h", "g^2*h"),), ("D6",), 1),
    Table1Entry("C8", (("g", "g^-1", "g^4"),), ("C8",), 2),
    Table1Entry("D8", (("h", "g*h", "g^2"),), ("D8",), 4),
    Table1Entry("C9", (("g", "g^3", "g^8"), ("g", "g^4", "g^7")), ("C9", "C9"), 8),
    Table1Entry("C3xC3", (("g", "g2", "g^2*g2^2"),), ("C3xC3",), 8),
    Table1Entry("C10", (("g^2", "g^5", "g^8"), ("g", "g^5", "g^8")), ("C10", "C10"), 6),
    Table1Entry("C11", (("g", "g^3", "g^5"),), ("C11",), 10),
    Table1Entry(
        "C12",
        (("g^2", "g^6", "g^10"), ("g", "g^6", "g^10"), ("g", "g^3", "g^8")),
        ("C6", "C12", "C12"),
        9,
    ),
    Table1Entry("Q12", (("x", "x^3", "x^5"),), ("C6",), 1),
    Table1Entry(
        "A4",
        (
            ("b", "a*b*a^-1", "a"),
            ("b", "a", "b*a*b"),
            ("b", "a", "a*b*a"),
        ),
        ("A4", "A4", "A4"),
        48,
    ),
    Table1Entry("C13", (("g", "g^3", "g^9"), ("g", "g^6", "g^10")), ("C13", "C13"), 16),
    Table1Entry("C15", (("g", "g^3", "g^11"),), ("C15",), 4),
    Table1Entry("C4xC4", (("g", "g2", "g^-1*g2^-1"),), ("C4xC4",), 16),
    Table1Entry("Q16", (("x", "x^4", "x^-1"),), ("C8",), 2),
    Table1Entry("M(8,2,5)", (("g", "g^6", "g^3*h"),), ("M(8,2,5)",), 8),
    Table1Entry("Q20", (("x", "x^5", "x^8"), ("x^2", "x^5", "x^8")), ("C10", "C10"), 6),
    # The 42 sets fall in two automorphism orbits swapped by elementwise
    # inversion; the second entry is the inverse image of the first.
    Table1Entry(
        "M(7,3,2)",
        (("h*g", "h*g^-1", "h^-1"), ("g^-1*h^-1", "g*h^-1", "h")),
        ("M(7,3,2)", "M(7,3,2)"),
        42,
    ),
    Table1Entry("C3xQ8", (("x^2", "g*x^2", "g^2*x^2"),), ("C6",), 1),
    Table1Entry(
        "Q24", (("x^2", "x^6", "x^10"), ("x", "x^6", "x^10")), ("C6", "C12"), 5
    ),
)


def builtin_table1() -> Table1Reference:
    """The embedded reference classification of size-3 sets in orders <= 24."""
    return Table1Reference(_TABLE1)


# -- reports -------------------------------------------------------------


@dataclass
class GroupRecord:
    label: str
    order: int
    count: int
    orbit_count: Optional[int]
    sets: list[dict]  # each {"indices": [...], "words": [...]}
    audit_ok: Optional[bool]
    audit_failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "order": self.order,
            "count": self.count,
            "orbit_count": self.orbit_count,
            "sets": self.sets,
            "audit_ok": self.audit_ok,
            "audit_failures": self.audit_failures,
        }

    @staticmethod
    def from_dict(d: dict) -> "GroupRecord":
        return GroupRecord(
            label=d["label"],
            order=d["order"],
            count=d["count"],
            orbit_count=d["orbit_count"],
            sets=d["sets"],
            audit_ok=d["audit_ok"],
            audit_failures=list(d.get("audit_failures", [])),
        )


@dataclass
class ScanReport:
    version: str
    k: int
    records: list[GroupRecord]
    table1_match: Optional[bool] = None
    main_theorem_ok: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "k": self.k,
            "records": [r.to_dict() for r in self.records],
            "table1_match": self.table1_match,
            "main_theorem_ok": self.main_theorem_ok,
        }

    @staticmethod
    def from_dict(d: dict) -> "ScanReport":
        return ScanReport(
            version=d["version"],
            k=d["k"],
            records=[GroupRecord.from_dict(r) for r in d["records"]],
            table1_match=d.get("table1_match"),
            main_theorem_ok=d.get("main_theorem_ok"),
        )


def report_to_json(r: ScanReport) -> str:
    return json.dumps(r.to_dict(), indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> ScanReport:
    return ScanReport.from_dict(json.loads(text))


def report_to_tsv(r: ScanReport) -> str:
    lines = ["group\torder\tcount\torbit_count\taudit_ok"]
    for rec in r.records:
        orbit = "-" if rec.orbit_count is None else str(rec.orbit_count)
        audit = "-" if rec.audit_ok is None else str(rec.audit_ok).lower()
        lines.append(f"{rec.label}\t{rec.order}\t{rec.count}\t{orbit}\t{audit}")
    return "\n".join(lines) + "\n"


def write_report(r: ScanReport, format: str, path) -> None:
    if format == "json":
        text = report_to_json(r)
    elif format == "tsv":
        text = report_to_tsv(r)
    else:
        raise ParseError(f"unknown report format {format!r}")
    Path(path).write_text(text)


def read_report(path) -> ScanReport:
    return report_from_json(Path(path).read_text())


# -- built-in coverage for the scan -------------------------------------

# Number of groups (up to isomorphism) per order, for coverage reporting.
GROUP_COUNTS = {
    25: 2, 26: 2, 27: 5, 28: 4, 29: 1, 30: 4, 31: 1, 32: 51, 33: 1,
    34: 2, 35: 1, 36: 14, 37: 1,
}


def _partitions(k: int):
    if k == 0:
        yield ()
        return
    for first in range(k, 0, -1):
        for rest in _partitions(k - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def abelian_exprs(order: int) -> list[GroupExpr]:
    """All abelian groups of the given order, one expression per iso class,
    written in invariant-factor form (C6 rather than C2xC3)."""
    if order == 1:
        return [Cyclic(1)]
    factors = {}
    n, p = order, 2
    while n > 1:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
        if p * p > n and n > 1:
            factors[n] = factors.get(n, 0) + 1
            n = 1
    per_prime = []
    for p in sorted(factors):
        per_prime.append([(p, part) for part in _partitions(factors[p])])
    out = []

    def combine(i, acc):
        if i == len(per_prime):
            # merge prime-power parts into invariant factors d_1 | d_2 | ...
            width = max(len(part) for _, part in acc)
            divisors = [1] * width
            for p, part in acc:
                for slot, e in enumerate(part):
                    divisors[slot] *= p**e
            parts = [Cyclic(d) for d in sorted(divisors)]
            out.append(parts[0] if len(parts) == 1 else DirectProduct(tuple(parts)))
            return
        for choice in per_prime[i]:
            combine(i + 1, acc + [choice])

    combine(0, [])
    return out


def builtin_exprs_for_order(order: int) -> list[GroupExpr]:
    """Every built-in-constructible expression of a given order: all abelian
    groups, dihedral/dicyclic where applicable, valid nonabelian metacyclic
    parameter sets, and the tiny permutation groups."""
    import math

    exprs: list[GroupExpr] = list(abelian_exprs(order))
    if order % 2 == 0 and order >= 6:
        exprs.append(Dihedral(order))
    if order % 4 == 0 and order >= 8:
        exprs.append(Dicyclic(order))
    for m in range(2, order + 1):
        if order % m != 0:
            continue
        nn = order // m
        if nn < 2:
            continue
        for r in range(2, m):
            if math.gcd(r, m) == 1 and pow(r, nn, m) == 1:
                exprs.append(Metacyclic(m, nn, r))
    if order == 12:
        exprs.append(Alternating(4))
    if order == 60:
        exprs.append(Alternating(5))
    if order == 24:
        exprs.append(Symmetric(4))
    if order == 120:
        exprs.append(Symmetric(5))
    return exprs


_RECOGNITION_ORDER_CAP = 64


def recognize_group(g: Group) -> Optional[str]:
    """A human label for a small group, by isomorphism against built-ins."""
    if g.order > _RECOGNITION_ORDER_CAP:
        return None
    candidates: list[GroupExpr] = [Cyclic(g.order)]
    candidates += builtin_exprs_for_order(g.order)
    seen = set()
    for expr in candidates:
        label = format_group_expr(expr)
        if label in seen:
            continue
        seen.add(label)
        try:
            cand = to_group(expr)
        except GroupError:
            continue
        if gc.find_isomorphism(g, cand) is not None:
            return label
    return None
