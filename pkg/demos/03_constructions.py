"""
Building 2fi-optimal generator matrices
=======================================

Every supported (s, p, q) and design kind, with the unconfounded count
compared to the upper bound phi.
"""

from rcfactorial import build, check_prop2, check_prop3, classify
from rcfactorial.confounding import format_decimal
from rcfactorial.constructions import star_columns
from rcfactorial.errors import DesignError

rows = []
for s in (2, 3, 5):
    for p, q in [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3)]:
        for kind in ("full", "frac1"):
            try:
                agm = build(s, p, q, kind)
            except DesignError as exc:
                rows.append((s, p, q, kind, "-", "-", "-", type(exc).__name__))
                continue
            r = classify(agm)
            rows.append((s, p, q, kind, agm.branch, r.t_D, r.phi, format_decimal(r.efficiency)))

print(f"{'s':>2} {'p':>2} {'q':>2} {'kind':6} {'branch':18} {'t_D':>4} {'phi':>4}  eff")
for s, p, q, kind, branch, t, phi, eff in rows:
    print(f"{s:>2} {p:>2} {q:>2} {kind:6} {branch:18} {t!s:>4} {phi!s:>4}  {eff}")

# one matrix in full, with its freely chosen (balancing) columns marked
agm = build(5, 2, 5, "frac1")
print()
print(agm.g.tolist())
print("balancing columns:", star_columns(agm))
print("sufficient condition:", check_prop2(agm).verdict)

# p = 1 designs can never carry a clean 2fi, but main effects stay clean
print(check_prop3(build(2, 1, 3, "frac1")))
