"""Walk through the two built-in surfaces.

Run with ``python demos/worked_examples.py``.
"""

from tropmut.corpus import e1, e2
from tropmut.degeneration import (collinear_blowup_model, divisorial_fan_table,
                                  dual_mutation_check, hilbert_counts, intersection_matrix)
from tropmut.polyptych import pl_vertices, sink_source
from tropmut.surface import class_group, complexity, cox_presentation, toricity


def show(name, inp):
    P = inp.P
    print(f"== {name}: s = {P.s}, f = {inp.f}")
    print("chart 1:", P.chart1.vertices)
    print("chart 2:", P.chart2.vertices)
    print("PL vertices:", [v.chart1 for v in pl_vertices(P)])
    sink, source = sink_source(P)
    print("sink:", sink, " source:", source)

    cg = class_group(inp)
    print("Cl =", cg.describe(), " relations:", cg.relations)
    cx = complexity(inp)
    print(f"complexity {cx.complexity}, cross-check 2 + {cx.rho} - {cx.n_boundary} = {cx.cross_check}")
    for rel in cox_presentation(inp).relations:
        print("  Cox relation:", rel)

    # the two toricity certificates are shown side by side, never merged
    v = toricity(inp)
    print("toric by criterion:", v.criterion, " by Cox elimination:", v.oracle)
    if not v.agree:
        print("  disagreement:", v.mismatch_message())

    for chart in (1, 2):
        print(f"intersection matrix via chart {chart}:",
              [[str(x) for x in row] for row in intersection_matrix(inp, chart)])
    for which, model in collinear_blowup_model(inp).items():
        if model.surface is None:
            print(f"{which}: {model.advisory}")
        else:
            print(f"{which}: toric model rays {model.rays}")
    print("dual mutation identity:", dual_mutation_check(P).holds)
    print("Hilbert counts k = 1..4:", hilbert_counts(inp)[(1, 1)])
    for row in divisorial_fan_table(inp):
        print(f"  b = {row.b:2d}: h0 = {row.h0}, hinf = {row.hinf}, h = {row.h}, "
              f"sections = {row.sections}")
    print()


if __name__ == "__main__":
    show("E1", e1())
    show("E2", e2())
