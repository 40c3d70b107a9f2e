"""Two 4-dimensional algebras on the same basis, side by side."""
from hyperalg.algebra import I, J, K, OMEGA, ONE, QUATERNION, HNum, SingularElement, invert, mul

# The Cayley tables. Same basis 1, i, j, k; different products.
print(QUATERNION.table, "\n")
print(OMEGA.table, "\n")

# i*j is where they first disagree
print("H:     i*j =", mul(QUATERNION, I, J))
print("omega: i*j =", mul(OMEGA, I, J))

# omega is commutative, H is not
x, y = HNum(1, 2, 3, 4), HNum(-2, 1, 0, 5)
print("\nomega x*y - y*x =", mul(OMEGA, x, y) - mul(OMEGA, y, x))
print("H     x*y - y*x =", mul(QUATERNION, x, y) - mul(QUATERNION, y, x))

# The property report collects witnesses for every claim it makes
for alg in (OMEGA, QUATERNION):
    rep = alg.properties
    print(f"\n{alg.name}: commutative={rep.commutative} associative={rep.associative}")
    zd = rep.zero_divisor_witness
    print("  zero divisor:", f"({zd[0]}) * ({zd[1]}) = 0" if zd else "none")
    for cs in rep.complex_structures:
        print("  complex structure on", cs.subset, "unity", cs.unity, "imaginary", cs.imaginary)

# (1 - k) * k = 0, so neither factor can be inverted
print("\n(1 - k) * k =", mul(OMEGA, ONE - K, K))
try:
    invert(OMEGA, K)
except SingularElement as exc:
    print("invert(k):", exc)

# Arithmetic is exact by default
print("1/(1+i) =", invert(OMEGA, ONE + I))
