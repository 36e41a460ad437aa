"""Finite-group engine for product-free set analysis.

Core objects: Cayley-table groups (`group_core`), the product-free set
calculus (`setcalc`), exhaustive enumeration with automorphism-orbit
deduplication (`enumerator`), structural audits (`theorem_audit`), and
parsing/serialization (`catalog_io`).
"""

from .group_core import (
    ElementSet,
    Group,
    GroupError,
    automorphisms,
    build_alternating,
    build_cyclic,
    build_dicyclic,
    build_dihedral,
    build_direct_product,
    build_metacyclic,
    build_symmetric,
    closure,
    find_isomorphism,
    is_normal,
    quotient_is_elem_abelian_2,
    subgroup_as_group,
)
from .setcalc import (
    hat_set,
    inverse_set,
    is_locally_maximal,
    is_locally_maximal_by_extension,
    is_product_free,
    product_set,
    sqrt_set,
    square_set,
    t_set,
)
from .enumerator import (
    Enumeration,
    enumerate_lmpf,
    enumerate_product_free,
    enumerate_product_free_naive,
    match_against_reference,
    orbit_decompose,
    scan,
)
from .theorem_audit import (
    AuditReport,
    audit_set,
    check_main_theorem,
    check_one_involution_containment,
)
from .catalog_io import (
    ScanReport,
    Table1Reference,
    build_group,
    builtin_table1,
    format_group_expr,
    load_cayley_file,
    parse_element_word,
    parse_group_expr,
    save_cayley_file,
    write_report,
)

__version__ = "0.1.0"
