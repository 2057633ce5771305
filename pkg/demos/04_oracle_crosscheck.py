"""
Cross-checking the classifier on the expanded design
====================================================

The oracle never looks at G: it partitions the cells by each effect and asks
whether that partition is orthogonal to the rows, the columns and every other
effect.
"""

from rcfactorial import build, classify, expand
from rcfactorial.oracle import COLUMN, ROW, oracle_classify, orthogonal, partition_of

agm = build(3, 2, 2, "frac1")
design = expand(agm)
print("cells:", design.shape, "factors:", design.n)

# A x E, first component: every class should meet every row equally often
ae = (1, 0, 0, 0, 1)
part = partition_of(design, ae)
print("A+E class sizes", part.sizes, "orthogonal to rows:", orthogonal(part, partition_of(design, ROW)),
      "to columns:", orthogonal(part, partition_of(design, COLUMN)))

oracle = oracle_classify(design)
report = classify(agm)
mismatch = [e.label for e in report.effects() if oracle[e.word].unconfounded != e.unconfounded]
print("effects checked:", len(oracle), "mismatches:", mismatch)

for e in report.effects():
    o = oracle[e.word]
    if not o.unconfounded:
        print(f"  {e.label:5s} classifier: {e.status:18s} oracle: row={o.row} column={o.column} aliased={o.aliased_with}")
