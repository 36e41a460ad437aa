"""Tour of the set calculus on small groups.

Walks through the basic operations used everywhere else: product sets,
inverses, square roots, the coverage set T(S), and the two local-maximality
tests.
"""

from pfree import setcalc as sc
from pfree.catalog_io import build_group, parse_element_set
from pfree.group_core import ElementSet


def show(title, es, g):
    print(f"  {title:<12} {{{', '.join(es.words(g))}}}")


def main():
    c8 = build_group("C8")
    s = parse_element_set(c8, ("g", "g^-1", "g^4"))
    print("Group C8, S = {g, g^-1, g^4}")
    show("S*S =", sc.product_set(c8, s, s), c8)
    show("S^-1 =", sc.inverse_set(c8, s), c8)
    show("sqrt(S) =", sc.sqrt_set(c8, s), c8)
    show("T(S) =", sc.t_set(c8, s), c8)
    print(f"  product-free:     {sc.is_product_free(c8, s)}")
    print(f"  locally maximal:  {sc.is_locally_maximal(c8, s)}")
    print()

    # The coverage lemma: S is locally maximal iff T(S) and sqrt(S) together
    # cover the whole group.  Drop one element and coverage breaks.
    smaller = ElementSet.of(c8, {1, 7})
    t = sc.t_set(c8, smaller)
    roots = sc.sqrt_set(c8, smaller)
    uncovered = set(range(8)) - t.members - roots.members
    print("Drop g^4: uncovered elements =",
          sorted(c8.name_of(x) for x in uncovered))
    print("extension test agrees:",
          sc.is_locally_maximal_by_extension(c8, smaller) is False)
    print()

    # hat(S): members of S with a square root outside <S>.
    q24 = build_group("Q24")
    s24 = parse_element_set(q24, ("x^2", "x^6", "x^10"))
    show("hat(S) in Q24:", sc.hat_set(q24, s24), q24)
    print("  (y^2 = x^6 and y lies outside <x^2>, so x^6 qualifies)")


if __name__ == "__main__":
    main()
