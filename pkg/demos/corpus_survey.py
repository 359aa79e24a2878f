"""Check the structural identities on a seeded random corpus and tabulate the outcomes.

The interesting column is the last one: the two toric fibers give the same
intersection form only when no node on the wall y = 0 joins two facets that
are bent in the same chart.
"""

import sys
from collections import Counter

from tropmut.corpus import corpus
from tropmut.degeneration import (boundary_intersection_matrix, dual_mutation_check,
                                  hilbert_counts, intersection_matrix, isometric_charts)
from tropmut.surface import complexity, toricity

n = int(sys.argv[1]) if len(sys.argv) > 1 else 100
tally = Counter()
for inp in corpus(n, seed=0):
    tally["facets=%d" % inp.P.n] += 1
    tally["complexity ok"] += complexity(inp).cross_check == inp.gamma
    tally["dual mutation"] += dual_mutation_check(inp.P, strict=False).holds
    h = hilbert_counts(inp, 3)
    tally["flat to k=3"] += h[(1, 0)] == h[(0, 1)] == h[(1, 1)]
    tally["toricity agree"] += toricity(inp).agree
    X = boundary_intersection_matrix(inp)
    good = isometric_charts(inp.P)
    tally["charts agree"] += intersection_matrix(inp, 1) == intersection_matrix(inp, 2)
    tally["good charts " + "".join(map(str, good)) if good else "good charts none"] += 1
    tally["prediction ok"] += all((intersection_matrix(inp, k) == X) == (k in good) for k in (1, 2))

for key in sorted(tally):
    print(f"{key:20s} {tally[key]:4d} / {n}")
