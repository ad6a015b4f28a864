import random
import unittest

from sympy.polys.domains import QQ

from confalg.constants import MAX_LAMBDA
from confalg.polyring import D, L, ONE, ZERO, coefficient, degree_in, format_poly, is_d_only, lambda_sum, \
    max_lambda, monomial, parse_poly, poly_mul, random_poly, rational, rational_str, rename_vars, substitute_all, \
    var_index


class TestVariables(unittest.TestCase):

    def test_lambda_generators(self):
        self.assertEqual(var_index(L(1)), 1)
        self.assertEqual(var_index("λ3"), 3)
        self.assertEqual(var_index("D"), 0)

    def test_out_of_range(self):
        with self.assertRaises(ValueError):
            L(0)
        with self.assertRaises(ValueError):
            L(MAX_LAMBDA + 1)

    def test_unknown_name(self):
        with self.assertRaises(ValueError):
            var_index("x")

    def test_lambda_sum(self):
        self.assertEqual(lambda_sum([1, 2]), L(1) + L(2))
        self.assertEqual(lambda_sum([]), ZERO)


class TestRational(unittest.TestCase):

    def test_fraction_string(self):
        self.assertEqual(rational("3/4"), QQ(3, 4))
        self.assertEqual(rational(" -2 "), QQ(-2))

    def test_zero_denominator(self):
        with self.assertRaises(ValueError):
            rational("1/0")

    def test_boolean_rejected(self):
        with self.assertRaises(TypeError):
            rational(True)

    def test_rational_str(self):
        self.assertEqual(rational_str(QQ(-3, 4)), "-3/4")
        self.assertEqual(rational_str(QQ(5)), "5")


class TestParsePoly(unittest.TestCase):

    def test_surface_syntax(self):
        self.assertEqual(parse_poly("D + 2*L1"), D + 2 * L(1))
        self.assertEqual(parse_poly("1/2*L2"), monomial(0, {2: 1}, "1/2"))
        self.assertEqual(parse_poly("  L1 ^ 2-D "), L(1) ** 2 - D)

    def test_unicode_aliases(self):
        self.assertEqual(parse_poly("λ1^2 - ∂"), L(1) ** 2 - D)

    def test_integer_input(self):
        self.assertEqual(parse_poly(3), 3 * ONE)

    def test_unknown_variable(self):
        with self.assertRaises(ValueError):
            parse_poly("x + D")

    def test_not_a_polynomial(self):
        with self.assertRaises(ValueError):
            parse_poly("1/D")

    def test_empty(self):
        with self.assertRaises(ValueError):
            parse_poly("   ")

    def test_float_rejected(self):
        with self.assertRaises(TypeError):
            parse_poly(1.5)


class TestFormatPoly(unittest.TestCase):

    def test_canonical_order(self):
        self.assertEqual(format_poly(D + 2 * L(1)), "2*L1 + D")
        self.assertEqual(format_poly(D ** 2 + 4 * D * L(1) - monomial(0, {2: 1}, "1/2")), "4*D*L1 + D^2 - 1/2*L2")

    def test_signs_and_constants(self):
        self.assertEqual(format_poly(ZERO), "0")
        self.assertEqual(format_poly(-L(1)), "-L1")
        self.assertEqual(format_poly(D - 3), "D - 3")
        self.assertEqual(format_poly(monomial(0, {1: 2}, "1/2")), "1/2*L1^2")

    def test_parse_inverts_format(self):
        rng = random.Random(11)
        for _ in range(20):
            p = random_poly(rng, 2, 2, 3, coeff_range=5)
            self.assertEqual(parse_poly(format_poly(p)), p)


class TestSubstitution(unittest.TestCase):

    def test_simultaneous(self):
        p = L(1) + 2 * L(2)
        self.assertEqual(substitute_all(p, [(1, L(2)), (2, L(1))]), L(2) + 2 * L(1))

    def test_lambda_dagger(self):
        # λ1 -> -λ2 - D
        self.assertEqual(substitute_all(D + 2 * L(1), [("L1", -L(2) - D)]), -D - 2 * L(2))

    def test_rename_vars(self):
        self.assertEqual(rename_vars(D * L(1), {1: 3}), D * L(3))

    def test_rename_not_injective(self):
        with self.assertRaises(ValueError):
            rename_vars(L(1) + L(2), {1: 2})


class TestInspection(unittest.TestCase):

    def test_degrees(self):
        p = D ** 2 * L(1) + D
        self.assertEqual(degree_in(p, "D"), 2)
        self.assertEqual(degree_in(p, 1), 1)
        self.assertEqual(degree_in(ZERO, "D"), 0)

    def test_coefficient(self):
        p = D ** 2 * L(1) + D + 3
        self.assertEqual(coefficient(p, "D", 2), L(1))
        self.assertEqual(coefficient(p, "D", 0), 3 * ONE)
        self.assertEqual(coefficient(p, "D", 5), ZERO)

    def test_product_degrees(self):
        p, q = D * L(1) + 1, D ** 2 - L(2)
        product = poly_mul(p, q)
        self.assertEqual(product, p * q)
        self.assertEqual(degree_in(product, "D"), 3)
        self.assertEqual(degree_in(product, 2), 1)

    def test_max_lambda(self):
        self.assertEqual(max_lambda(L(3) + L(1)), 3)
        self.assertEqual(max_lambda(D), 0)
        self.assertTrue(is_d_only(D ** 2 - 1))
        self.assertFalse(is_d_only(D * L(2)))


class TestRandomPoly(unittest.TestCase):

    def test_seeded(self):
        self.assertEqual(random_poly(random.Random(3), 2, 1, 2), random_poly(random.Random(3), 2, 1, 2))

    def test_bounds(self):
        rng = random.Random(4)
        for _ in range(10):
            p = random_poly(rng, 2, 1, 2)
            self.assertLessEqual(degree_in(p, "D"), 2)
            self.assertLessEqual(degree_in(p, 1), 1)
            self.assertLessEqual(max_lambda(p), 2)


if __name__ == '__main__':
    unittest.main()
