import random

import pytest

from fsing.field import FieldSpec
from fsing.frobenius import (CartierMap, PreconditionError, bracket_power,
                             compose, fedder_ideal, frobenius_root,
                             image_ideal)
from fsing.groebner import Ideal
from fsing.poly import RingSpec

F3 = FieldSpec(3)
F7 = FieldSpec(7)


def random_poly(rng, ring, nterms=3, maxdeg=5):
    f = ring.zero()
    for _ in range(nterms):
        mono = tuple(rng.randrange(maxdeg) for _ in range(ring.nvars))
        f = f + ring.monomial(mono, rng.randrange(1, ring.field.p))
    return f


def random_ideal(rng, ring, ngens=2):
    gens = [random_poly(rng, ring) for _ in range(ngens)]
    return Ideal(ring, [g for g in gens if not g.is_zero()])


class TestBracketPower:
    def test_is_generatorwise(self):
        R = RingSpec(F3, ("x", "y"))
        I = Ideal.of(R, "x+y", "y^2")
        got = bracket_power(I, 9)
        assert got.equals(Ideal.of(R, "x^9+y^9", "y^18"))

    def test_rejects_non_p_power(self):
        R = RingSpec(F3, ("x",))
        with pytest.raises(PreconditionError):
            bracket_power(Ideal.of(R, "x"), 4)

    @pytest.mark.parametrize("seed", range(5))
    def test_multiplicative_on_products(self, seed):
        rng = random.Random(seed)
        R = RingSpec(F3, ("x", "y"))
        I = random_ideal(rng, R)
        J = random_ideal(rng, R)
        q = 3
        assert bracket_power(I.times(J), q).equals(
            bracket_power(I, q).times(bracket_power(J, q)))


class TestFrobeniusRoot:
    def test_monomials(self):
        R = RingSpec(F3, ("x", "y"))
        I = Ideal.of(R, "x^7*y^5")
        # floor((7-1)/3)=2, floor((5-2)/3)=1
        assert frobenius_root(I, 3).equals(Ideal.of(R, "x^2*y"))

    def test_root_of_bracket_is_identity(self):
        rng = random.Random(11)
        for _ in range(10):
            R = RingSpec(F3, ("x", "y"))
            I = random_ideal(rng, R)
            for q in (3, 9):
                assert frobenius_root(bracket_power(I, q), q).equals(I)

    @pytest.mark.parametrize("p,seed", [(2, 0), (2, 1), (3, 2), (3, 3),
                                        (5, 4), (5, 5)])
    def test_adjointness(self, p, seed):
        """root_q(I) <= J  iff  I <= J^[q]."""
        rng = random.Random(seed)
        fld = FieldSpec(p)
        R = RingSpec(fld, ("x", "y"))
        for _ in range(10):
            I = random_ideal(rng, R)
            J = random_ideal(rng, R)
            if J.is_zero():
                continue
            q = p ** rng.choice((1, 2))
            lhs = J.contains(frobenius_root(I, q))
            rhs = bracket_power(J, q).contains(I)
            assert lhs == rhs

    def test_root_of_sum_is_sum_of_roots(self):
        rng = random.Random(12)
        R = RingSpec(F3, ("x", "y"))
        I = random_ideal(rng, R)
        J = random_ideal(rng, R)
        got = frobenius_root(I.plus(J), 3)
        want = frobenius_root(I, 3).plus(frobenius_root(J, 3))
        assert got.equals(want)

    def test_relative_divides_base_exponent(self):
        R = RingSpec(F3, ("x",), has_base=True, depth=2)
        I = Ideal.of(R, "t")
        got = frobenius_root(I, 3, "relative")
        assert got.equals(Ideal.of(R, "t^(1/3)"))

    def test_relative_depth_exhaustion(self):
        R = RingSpec(F3, ("x",), has_base=True, depth=1)
        I = Ideal.of(R, "x*t^(1/3)")
        with pytest.raises(PreconditionError):
            frobenius_root(I, 9, "relative")

    def test_relative_vs_absolute_on_pure_x_ideal(self):
        rng = random.Random(13)
        R = RingSpec(F3, ("x",), has_base=True, depth=2)
        Rx = RingSpec(F3, ("x",))
        f = random_poly(rng, Rx)
        lifted = R.parse(str(f))
        rel = frobenius_root(Ideal(R, [lifted]), 3, "relative")
        plain = frobenius_root(Ideal(Rx, [f]), 3)
        assert sorted(str(g) for g in rel.generators) == \
            sorted(str(g) for g in plain.generators)

    def test_extension_field_coefficient_roots(self):
        f9 = FieldSpec(3, 2, (1, 0, 1))
        R = RingSpec(f9, ("x",))
        g = f9.generator
        f = R.monomial((3,), f9.frobenius(g))  # (g x)^3
        got = frobenius_root(Ideal(R, [f]), 3)
        assert got.equals(Ideal(R, [R.monomial((1,), g)]))


class TestCompose:
    def test_multiplier_exponent(self):
        R = RingSpec(F3, ("x",), has_base=True, depth=3)
        u = R.parse("x^9+t")
        phi = CartierMap(R, 1, u, relative=True)
        assert compose(phi, 1).u == u
        assert compose(phi, 2).u == u ** 4      # (9-1)/(3-1)
        assert compose(phi, 3).u == u ** 13     # (27-1)/2

    def test_level_bookkeeping(self):
        R = RingSpec(F3, ("x",))
        phi = CartierMap(R, 1, R.one())
        assert compose(phi, 5).level == 5

    def test_guard(self):
        R = RingSpec(F3, ("x",))
        phi = CartierMap(R, 1, R.parse("x"))
        with pytest.raises(PreconditionError):
            compose(phi, 40)


class TestWellDefined:
    def test_canonical_multiplier_passes(self):
        R = RingSpec(F7, ("x", "y"), has_base=True, depth=1)
        f = R.parse("y^2+x^3+t")
        R.set_relations([f])
        CartierMap(R, 1, f ** 6, relative=True).check_well_defined()

    def test_bad_multiplier_fails(self):
        R = RingSpec(F7, ("x", "y"), has_base=True, depth=1)
        f = R.parse("y^2+x^3+t")
        R.set_relations([f])
        with pytest.raises(PreconditionError):
            CartierMap(R, 1, R.parse("x"), relative=True).check_well_defined()


class TestFedder:
    def brute_force_colon(self, R, f, q):
        """(f^[q] : f) for principal ideals, by scanning small monomials."""
        return bracket_power(Ideal(R, [f]), q).colon(Ideal(R, [f]))

    @pytest.mark.parametrize("src,p", [("x*y", 3), ("y^2+x^3", 5),
                                       ("x^2+y^2", 7)])
    def test_matches_colon(self, src, p):
        R = RingSpec(FieldSpec(p), ("x", "y"))
        f = R.parse(src)
        assert fedder_ideal(Ideal(R, [f]), 1).equals(
            self.brute_force_colon(R, f, p))

    def test_principal_shortcut_value(self):
        # (f^[p] : f) = <f^{p-1}> + (I^[p] : I) for principal I = <f>
        R = RingSpec(F3, ("x", "y"))
        f = R.parse("x*y")
        got = fedder_ideal(Ideal(R, [f]), 1)
        assert got.contains_poly(f ** 2)

    def test_zero_ideal(self):
        R = RingSpec(F3, ("x",))
        assert fedder_ideal(Ideal(R, []), 1).is_unit()


class TestImageIdeal:
    def family(self):
        R = RingSpec(F3, ("x",), has_base=True, depth=3)
        return R, CartierMap(R, 1, R.parse("x^9+t"), relative=True)

    def test_level_zero_reduces_only(self):
        R, phi = self.family()
        J = Ideal.of(R, "x^3+t")
        assert image_ideal(phi, J, 0).equals(J)

    def test_monotone_in_argument(self):
        rng = random.Random(21)
        R, phi = self.family()
        Rx = RingSpec(F3, ("x",))
        for _ in range(5):
            f = R.parse(str(random_poly(rng, Rx, maxdeg=3))) * R.parse("t")
            g = R.parse(str(random_poly(rng, Rx, maxdeg=3))) * R.parse("t")
            J = Ideal(R, [f])
            K = J.plus(Ideal(R, [g]))
            assert image_ideal(phi, K, 1).contains(image_ideal(phi, J, 1))

    def test_iterated_equals_direct(self):
        """Image(phi^n) = one-step image applied n times."""
        R, phi = self.family()
        unit = Ideal.of(R, "1")
        for n in (1, 2, 3):
            direct = image_ideal(phi, unit, n)
            step = unit
            for _ in range(n):
                step = image_ideal(phi, step, 1)
            assert direct.equals(step)

    def test_iterated_equals_direct_with_relations(self):
        R = RingSpec(F7, ("x", "y"), has_base=True, depth=2)
        f = R.parse("y^2+x^3+t")
        R.set_relations([f])
        phi = CartierMap(R, 1, f ** 6, relative=True)
        unit = Ideal.of(R, "1")
        direct = image_ideal(phi, unit, 2)
        step = image_ideal(phi, image_ideal(phi, unit, 1), 1)
        assert direct.equals(step)

    def test_depth_guard(self):
        R, phi = self.family()
        with pytest.raises(PreconditionError):
            image_ideal(phi, Ideal.of(R, "1"), 4)
