"""Fox calculus of finite presentations and field Betti numbers.

The presentation 2-complex 0 -> P_2 -> P_1 -> P_0 has d1 = (g_i - 1) and
d2 the Fox derivative matrix; with trivial field coefficients its Betti
numbers come from exact elimination on the augmented matrices.
"""

import pathlib

from nilnov import (GF, QQ, betti, euler_check, fox_complex,
                    nilpotent_quotient, parse_presentation)

DATA = pathlib.Path(__file__).parent / "data"

for name in ["torus.fpg", "bs12.fpg", "f2.fpg", "mapping_torus.fpg"]:
    P = parse_presentation((DATA / name).read_text())
    print(f"== {P.name}: gens {P.gen_names}, "
          f"{len(P.relators)} relator(s)")
    q = nilpotent_quotient(P, 1)
    print("   torsion-free abelianisation:", q.target.gen_names or "(trivial)")
    if P.relators:
        cx = fox_complex(P, q, QQ, project=True)
        for j, row in enumerate(cx.d2):
            pretty = ", ".join(f"dr/d{g} -> {e}" for g, e in zip(P.gen_names, row))
            print(f"   projected Fox row {j}: {pretty}")
    for field in (QQ, GF(2)):
        cx = fox_complex(P, None, field)
        report = betti(cx, field)
        euler_check(cx, [report])
        print(f"   betti over {field}: {report.betti} "
              f"(alternating sum {report.alternating_sum()} = chi)")
    print()
