"""Iterated fractions: recursive numerator/denominator trees.

A Leaf holds a finite group-ring element and expands to itself.  A Node at
level i holds numerator and denominator lists of (coefficient, group part)
pairs, where group parts are normal forms supported at level i and each
coefficient is an iterated fraction whose levels are strictly deeper.
"""


class Leaf:
    __slots__ = ("elem",)

    def __init__(self, elem):
        self.elem = elem

    def is_leaf(self):
        return True

    def __repr__(self):
        return f"Leaf({self.elem})"


class Node:
    __slots__ = ("alpha", "beta", "level")

    def __init__(self, alpha, beta, level):
        if not beta:
            raise ValueError("fraction denominator must be nonzero")
        self.alpha = list(alpha)
        self.beta = list(beta)
        self.level = level

    def is_leaf(self):
        return False

    def __repr__(self):
        return f"Node(level={self.level}, |alpha|={len(self.alpha)}, |beta|={len(self.beta)})"


def nodes(frac):
    """Iterate all Node instances of a fraction tree, depth-first."""
    if frac.is_leaf():
        return
    yield frac
    for coeff, _ in list(frac.alpha) + list(frac.beta):
        yield from nodes(coeff)


def support_vectors(node, group):
    """Distinct level-`node.level` exponent vectors of supp(alpha) u supp(beta)."""
    seen = []
    for _, g in list(node.alpha) + list(node.beta):
        v = group.level_vector(g, node.level)
        if v not in seen:
            seen.append(v)
    return seen
