"""
Exact arithmetic over a prime field
===================================

Row reduction, null spaces and projective points, all mod s.
"""

import numpy as np

from rcfactorial.geometry import canonicalize, enumerate_points, point_histogram
from rcfactorial.gf import FieldMatrix, max_independent_check, nullspace_basis, rref

# a 3 x 3 matrix over GF(3); entries are reduced on construction
m = FieldMatrix([[1, 1, 1], [1, 2, 1], [4, 1, 2]], 3)
print(m)

echelon, r, pivots = rref(m)
print("rank", r, "pivots", pivots)
print(echelon.tolist())

# a wide matrix has a null space; every basis vector starts with a 1
wide = FieldMatrix([[1, 0, 1, 2], [0, 1, 1, 1]], 3)
for v in nullspace_basis(wide):
    print("null vector", v, "->", (wide.data @ np.array(v)) % 3)

# any 2 columns of `wide` independent?  any 3?
print(max_independent_check(wide, 2), max_independent_check(wide, 3))

# points of PG(1, 3): nonzero vectors up to scaling, leading entry 1
print(enumerate_points(2, 3))
print(canonicalize((0, 2, 1), 3))

# how often each point of PG(1, 3) is hit by the columns of `wide`
print(point_histogram(wide))
