"""
Which interactions survive blocking by rows and columns
=======================================================

A 3^(7-2) fraction laid out in 27 rows and 9 columns, analysed from its
generator matrix alone and then checked against the expanded layout.
"""

from rcfactorial import classify, defining_subgroup, expand, resolution, validate_agm, word_to_label
from rcfactorial.confounding import format_decimal

# first three rows generate the row key block, last two the column key block
G = [
    [1, 0, 0, 2, 2, 1, 0],
    [1, 1, 2, 1, 2, 0, 0],
    [2, 2, 2, 2, 0, 0, 1],
    [1, 1, 1, 0, 1, 0, 1],
    [0, 1, 2, 1, 0, 1, 1],
]
agm = validate_agm(3, 3, 2, G)

print("defining words:", [word_to_label(w) for w in defining_subgroup(agm)])
print("resolution:", resolution(agm))

report = classify(agm)
print("main effects clean:", report.main_effects_clean)
print("unconfounded 2fi:", [report.pair_label(p) for p in report.unconfounded_2fi])
print("confounded with rows:", [report.pair_label(p) for p in report.row_confounded_2fi])

# A x E has two components; only one of them falls into the row blocks
for comp in report.interaction(0, 4):
    print(f"  {comp.label:6s} {comp.status:18s} {comp.witness or ''}")

eff = report.efficiency
print(f"t_D = {report.t_D}, phi = {report.phi}, efficiency {eff} = {format_decimal(eff)}")

# the layout itself: cell (i, j) is row key i plus column key j
design = expand(agm)
print("layout", design.shape, "first row:")
print(" ".join("".join(map(str, design.cell(0, j))) for j in range(9)))
