"""Lexicographic bi-orders and rational character fitting.

A total order on a torsion-free nilpotent group is built level by level:
each successive quotient is ordered by a stack of rational rows (primary
rows first, standard-basis tiebreaks after), and an element is positive
when its shallowest nonzero syllable is.  Characters realizing a given
finite chain are computed exactly by Fourier-Motzkin elimination.
"""

import pathlib
from fractions import Fraction

from nilnov import (GroupRing, LexOrder, QQ, fit_character, fit_multicharacter,
                    is_compatible, parse_pc)
from nilnov.fracparse import parse_fraction_expr

DATA = pathlib.Path(__file__).parent / "data"
H3 = parse_pc((DATA / "heis.pcg").read_text())

order = LexOrder(H3)
pairs = [("c", "a"), ("a", "b"), ("a^-1", "b^5"), ("a b", "a c^9")]
for left, right in pairs:
    g = H3.collect(H3.parse_word(left))
    h = H3.collect(H3.parse_word(right))
    rel = {-1: "<", 0: "=", 1: ">"}[order.compare(g, h)]
    print(f"{left:6} {rel} {right}")

# An "irrational proxy": one rational row with a huge denominator plus the
# tiebreak rows still decides far-out comparisons exactly.
Z2 = parse_pc((DATA / "z2.pcg").read_text())
proxy = LexOrder(Z2, {0: [[1, Fraction(1000000, 999999)]]})
a = Z2.generator(0)
b_big = Z2.pow(Z2.generator(1), 1000000)
print("a vs b^1000000 under (1, 1000000/999999):",
      {-1: "less", 1: "greater"}[proxy.compare(a, b_big)])

print()
print("character fitting: find v with <v, x_k> strictly increasing")
chain = [(0, 1), (1, 0), (1, 1)]
v = fit_character(2, chain)
print("chain (0,1) < (1,0) < (1,1)  ->  v =", v,
      " values:", [sum(c * x for c, x in zip(v, p)) for p in chain])

print()
print("multicharacter fitting against an iterated fraction:")
ring = GroupRing(H3, QQ)
frac = parse_fraction_expr("(1 - a - c)^-1", ring)
chi = fit_multicharacter([frac], H3, order)
print("fitted:", chi)
print("compatible with the fraction:", is_compatible(chi, frac, order))
