"""Collection in an adapted polycyclic presentation, step by step.

We load the discrete Heisenberg group, push a few words into normal form,
cross-check against its 3x3 unitriangular matrix model, and then compute
the lower central series and the free-abelianisation refinement.
"""

import pathlib

from nilnov import free_abelianization_refine, lower_central_series, parse_pc

DATA = pathlib.Path(__file__).parent / "data"

H3 = parse_pc((DATA / "heis.pcg").read_text())
print("group:", H3)
print("levels:", H3.level_gens)

# The single relation b*a = a*b*c makes c the commutator [b,a].
for text in ["b a", "b^2 a", "a^-1 b^-1 a b", "b^3 a^2"]:
    word = H3.parse_word(text)
    print(f"collect({text!r:14}) = {H3.format_elt(H3.collect(word))}")

# Matrix cross-check: a=(0,1,0), b=(1,0,0), c=(0,0,1) composed by
# (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y') realizes exactly b a = a b c.
def coords(word):
    basis = {H3.index["a"]: (0, 1, 0), H3.index["b"]: (1, 0, 0), H3.index["c"]: (0, 0, 1)}
    acc = (0, 0, 0)
    for g, e in word:
        base = basis[g]
        step = base if e > 0 else (-base[0], -base[1], -base[2] + base[0] * base[1])
        for _ in range(abs(e)):
            acc = (acc[0] + step[0], acc[1] + step[1], acc[2] + step[2] + acc[0] * step[1])
    return acc

w = H3.parse_word("b^2 a")
print("matrix coords of b^2 a:", coords(w), "== coords of its normal form:",
      coords(list(H3.collect(w))))

# Exponents grow quadratically in class 2; arithmetic stays exact.
big = H3.collect(H3.parse_word("b^1000 a^1000"))
print("c-exponent of collect(b^1000 a^1000):", dict(big)[H3.index["c"]])

print()
print("lower central series (gamma_0 = G, gamma_{i+1} = [G, gamma_i]):")
series = lower_central_series(H3, 3)
for i, (gam, iso) in enumerate(zip(series.gammas, series.isolators)):
    print(f"  gamma_{i} = <{', '.join(gam.describe()) or '1'}>"
          f"   isolator <{', '.join(iso.describe()) or '1'}>")
print("requested class exceeded the group's class:", series.class_exceeded)

print()
print("free-abelianisation refinement (kernels of K -> K^ab tensor Q):")
refinement = free_abelianization_refine(H3)
for i, term in enumerate(refinement.terms):
    print(f"  K_{i} = <{', '.join(term.describe()) or '1'}>")
