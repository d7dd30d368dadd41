"""Three ways to turn a bicomplex into an ordinary one.

Builds the external product of two intervals and prints the cell census of
its categorical diagonal, its join diagonal and (over cubes) its geometric
diagonal, along with their homology.
"""

from ezkit import (BoxCategory, SimplexCategory, diagonal, external_product, homology,
                   representable)


def report(label, K):
    print(f"{label:<30} census {K.census()}  homology ranks {homology(K).ranks}")


if __name__ == "__main__":
    D = SimplexCategory(3)
    X = external_product(representable(D, 1), representable(D, 1))
    report("Δ: categorical (Δ¹×Δ¹)", diagonal(X, "cat"))
    report("Δ: join (Δ¹⋆Δ¹ = Δ³)", diagonal(X, "join"))

    for B, name in ((BoxCategory(2), "□"), (BoxCategory(2, True), "□ with connections")):
        Y = external_product(representable(B, 1), representable(B, 1))
        report(f"{name}: geometric", diagonal(Y, "geom"))
