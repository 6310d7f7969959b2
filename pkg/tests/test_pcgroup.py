import random

import pytest

from nilnov import Subgroup, free_abelianization_refine, isolator, lower_central_series, parse_pc
from nilnov.errors import AdaptationError, ParseError, UnknownGenerator

from conftest import heisenberg_matrix


def rand_word(rng, gens, length, emax=3):
    return [(rng.choice(gens), rng.choice([e for e in range(-emax, emax + 1) if e]))
            for _ in range(length)]


class TestParse:
    def test_free_abelian_rank2(self):
        G = parse_pc("pcgroup Z2\nlevel 0: a b\n")
        assert G.ngens == 2 and G.nlevels == 1
        assert G.mul(G.generator(0), G.generator(1)) == ((0, 1), (1, 1))

    def test_heisenberg(self, heis):
        assert heis.nlevels == 2
        assert heis.level_gens == [["a", "b"], ["c"]]

    def test_adaptation_violation(self):
        with pytest.raises(AdaptationError):
            parse_pc("pcgroup bad\nlevel 0: a b\nconj b a = b\n")

    def test_unknown_generator(self):
        with pytest.raises(UnknownGenerator):
            parse_pc("pcgroup bad\nlevel 0: a\nconj b a = a\n")

    def test_malformed_line_reports_position(self):
        with pytest.raises(ParseError) as err:
            parse_pc("pcgroup x\nlevel 0: a\nnonsense here\n")
        assert err.value.line == 3

    def test_comments_and_blank_lines(self):
        G = parse_pc("# header\npcgroup g\n\nlevel 0: a  # trailing\n")
        assert G.gen_names == ["a"]


class TestCollection:
    def test_inverse_cancellation(self, heis):
        w = heis.parse_word("a a^-1")
        assert heis.collect(w) == ()

    def test_single_relation(self, heis):
        assert heis.format_elt(heis.collect(heis.parse_word("b a"))) == "a b c"

    def test_b2a_oracle(self, heis):
        # matrix oracle: b^2 a collects to a b^2 c^2
        nf = heis.collect(heis.parse_word("b^2 a"))
        assert heis.format_elt(nf) == "a b^2 c^2"
        assert heisenberg_matrix(heis.parse_word("b^2 a"), heis.index) == \
            heisenberg_matrix(list(nf), heis.index)

    def test_matrix_oracle_random(self, heis):
        rng = random.Random(7)
        gens = list(range(3))
        for _ in range(400):
            w = rand_word(rng, gens, rng.randint(0, 8))
            nf = heis.collect(w)
            assert heisenberg_matrix(w, heis.index) == heisenberg_matrix(list(nf), heis.index)

    def test_associativity_and_inverse_law(self, heis):
        rng = random.Random(11)
        gens = list(range(3))
        for _ in range(200):
            u = heis.collect(rand_word(rng, gens, 4))
            v = heis.collect(rand_word(rng, gens, 4))
            w = heis.collect(rand_word(rng, gens, 4))
            assert heis.mul(heis.mul(u, v), w) == heis.mul(u, heis.mul(v, w))
            assert heis.mul(u, heis.inv(u)) == ()

    def test_unknown_generator_in_word(self, heis):
        with pytest.raises(UnknownGenerator):
            heis.parse_word("a x")

    def test_exponent_growth_is_exact(self, heis):
        # collection in class-2 groups produces quadratic exponents
        big = heis.collect(heis.parse_word("b^1000 a^1000"))
        assert dict(big)[heis.index["c"]] == 1000 * 1000


class TestSeries:
    def test_lcs_heisenberg(self, heis):
        series = lower_central_series(heis, 3)
        assert series.gammas[0].describe() == ["a", "b", "c"]
        assert series.gammas[1].describe() == ["c"]
        assert series.gammas[2].is_trivial()
        assert series.class_exceeded

    def test_lcs_abelian(self, z2group):
        series = lower_central_series(z2group, 2)
        assert series.gammas[1].is_trivial()

    def test_series_levels_are_central(self, heis):
        # [gen, gamma_i] lands in gamma_{i+1} for every generator pair
        series = lower_central_series(heis, 2)
        for i in range(len(series.gammas) - 1):
            nxt = series.gammas[i + 1]
            for p in series.gammas[i].pivot_list():
                for g in range(heis.ngens):
                    assert nxt.contains(heis.comm(heis.generator(g), p))

    def test_isolator_central_sublattice(self, heis):
        c = heis.index["c"]
        sub = Subgroup(heis, [((c, 2),)])
        assert isolator(heis, sub).describe() == ["c"]

    def test_isolator_already_isolated(self, heis):
        sub = Subgroup(heis, [heis.collect(heis.parse_word("a^2 c"))])
        assert isolator(heis, sub).describe() == ["a^2 c"]

    def test_isolator_with_root(self, heis):
        sub = Subgroup(heis, [heis.collect(heis.parse_word("a^2"))])
        assert isolator(heis, sub).describe() == ["a"]

    def test_isolator_diagonal(self, z2group):
        sub = Subgroup(z2group, [z2group.collect(z2group.parse_word("a^2 b^2"))])
        assert isolator(z2group, sub).describe() == ["a b"]


class TestRefine:
    def test_refine_abelian(self, z2group):
        series = free_abelianization_refine(z2group)
        assert [t.describe() for t in series.terms] == [["a", "b"], []]

    def test_refine_heisenberg(self, heis):
        series = free_abelianization_refine(heis)
        assert [t.describe() for t in series.terms] == [["a", "b", "c"], ["c"], []]

    def test_refine_product_with_z(self):
        G = parse_pc("pcgroup H3xZ\nlevel 0: a b t\nlevel 1: c\nconj b a = c\n")
        series = free_abelianization_refine(G)
        assert [t.describe() for t in series.terms] == [["a", "b", "t", "c"], ["c"], []]


class TestSubgroup:
    def test_membership_reduction(self, heis):
        sub = Subgroup(heis, [heis.collect(heis.parse_word("a b"))])
        assert sub.contains(heis.collect(heis.parse_word("a b a b")))
        assert not sub.contains(heis.generator(heis.index["c"]))

    def test_generated_subgroup_closure(self, heis):
        sub = Subgroup(heis, [heis.generator(0), heis.generator(1)])
        # <a, b> = H3, so c must be inside after closure
        assert sub.contains(heis.generator(heis.index["c"]))


class TestClassThree:
    """Free nilpotent group of class 3 on two generators: the pair (b, a)
    has the non-central tail c, exercising the general conjugation path and
    the inverse-table recursion."""

    def test_defining_collections(self, free_class3):
        G = free_class3
        cases = {
            "b a": "a b c",
            "c a": "a c d",
            "b^2 a": "a b^2 c^2 e",
            "b a^2": "a^2 b c^2 d",
        }
        for word, expected in cases.items():
            assert G.format_elt(G.collect(G.parse_word(word))) == expected

    def test_inverse_conjugation(self, free_class3):
        # a b a^-1 = b c^-1 d, checked by multiplying back
        G = free_class3
        x = G.collect(G.parse_word("a b a^-1"))
        assert G.format_elt(x) == "b c^-1 d"
        assert G.mul(x, G.generator(G.index["a"])) == G.collect(G.parse_word("a b"))

    def test_group_axioms_random(self, free_class3):
        G = free_class3
        rng = random.Random(77)
        gens = list(range(G.ngens))
        for _ in range(150):
            u = G.collect(rand_word(rng, gens, 4, emax=2))
            v = G.collect(rand_word(rng, gens, 4, emax=2))
            w = G.collect(rand_word(rng, gens, 4, emax=2))
            assert G.mul(G.mul(u, v), w) == G.mul(u, G.mul(v, w))
            assert G.mul(u, G.inv(u)) == ()

    def test_lower_central_series_witt_ranks(self, free_class3):
        series = lower_central_series(free_class3, 3)
        assert series.gammas[1].describe() == ["c", "d", "e"]
        assert series.gammas[2].describe() == ["d", "e"]
        assert series.gammas[3].is_trivial()
        assert not series.class_exceeded

    def test_isolators_and_refinement(self, free_class3):
        G = free_class3
        assert isolator(G, Subgroup(G, [G.collect(G.parse_word("d^2"))])).describe() == ["d"]
        assert isolator(G, Subgroup(G, [G.collect(G.parse_word("a^2"))])).describe() == ["a"]
        series = free_abelianization_refine(G)
        assert [t.describe() for t in series.terms] == \
            [["a", "b", "c", "d", "e"], ["c", "d", "e"], []]
