"""The square of the interval in minimal cubical sets is not contractible.

Without connections, the categorical product □¹×□¹ has a non-trivial
2-cycle and a non-trivial 1-cycle, so collapsing it to a point is not a
homology equivalence.  The simplicial analogue Δ¹×Δ¹ collapses fine.
"""

from ezkit import BoxCategory, SimplexCategory, homology, is_homology_equivalence, product, representable
from ezkit.corpus import collapse


def show(label, A):
    I = representable(A, 1)
    sq = product(I, I)
    print(f"{label}: census {sq.census()}")
    print("  " + str(homology(sq)).replace("\n", "\n  "))
    print(f"  collapse to a point is an equivalence: {is_homology_equivalence(collapse(sq))}")


if __name__ == "__main__":
    show("□¹×□¹ (minimal cubes)", BoxCategory(1))
    show("Δ¹×Δ¹", SimplexCategory(1))
