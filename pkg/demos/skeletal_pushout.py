"""Walk up the skeleta of the 3-simplex.

Each step attaches the n-cells along their boundaries; the script checks
that the attaching square is a pushout and prints what changes.
"""

from ezkit import SimplexCategory, homology, representable, skeletal_square, skeleton

if __name__ == "__main__":
    A = SimplexCategory(3)
    K = representable(A, 3)
    for n in range(4):
        sk, _ = skeleton(K, n)
        square = skeletal_square(K, n)
        print(f"sk_{n}: census {sk.census()}, homology ranks {homology(sk).ranks}, "
              f"pushout {square.is_pushout}")
