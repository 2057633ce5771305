"""
Brute force at desk scale
=========================

Search every two-level design with 4 rows, 4 columns and 5 factors, and a
couple of tiny cases where no design keeps all main effects clean.
"""

import time

from rcfactorial import build, classify
from rcfactorial.oracle import exhaustive_optimum

t0 = time.perf_counter()
res = exhaustive_optimum(2, 2, 2, 5)
print(f"{res.candidates} candidate subspace pairs in {time.perf_counter() - t0:.1f}s")
print("best t_D:", res.max_t, "of phi =", res.phi)
print(res.witness.g.tolist())

# the closed-form construction reaches the same count
print("construction t_D:", classify(build(2, 2, 2, "frac1")).t_D)

for s in (2, 3):
    r = exhaustive_optimum(s, 1, 1, 3)
    print(f"s={s}, p=q=1, n=3: feasible={r.feasible} over {r.candidates} candidates")
