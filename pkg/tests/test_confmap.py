import random
import unittest

from confalg.confmap import IDENTITY, ConfMap, diamond, evaluate, evaluate_at, identity_map, insert, \
    is_symmetric, koszul_sign, multi_insert, permutation_sign, permute, random_confmap, shuffle_compose, shuffles, \
    signed_permute, symmetrize, zero_map, zero_report
from confalg.confmod import GradedModule, ModElement, PolyValue
from confalg.polyring import D, L, ONE


VIR = GradedModule({0: ["l"]})
BRACKET = ConfMap(VIR, VIR, 2, 0, {("l", "l"): {"l": D + 2 * L(1)}})
L1, L2 = L(1), L(2)


def graded_module():
    return GradedModule({0: ["a"], 1: ["c"]})


class TestConfMap(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(ValueError):
            ConfMap(VIR, VIR, 0, 0)
        with self.assertRaises(ValueError):
            ConfMap(VIR, VIR, 2, 1, {("l", "l"): {"l": ONE}})
        with self.assertRaises(ValueError):
            ConfMap(VIR, VIR, 2, 0, {("l", "x"): {"l": ONE}})
        with self.assertRaises(ValueError):
            ConfMap(VIR, VIR, 2, 0, {("l", "l"): {"l": L2}})
        with self.assertRaises(TypeError):
            ConfMap({"l": 0}, VIR, 1, 0)

    def test_zero_entries_dropped(self):
        f = ConfMap(VIR, VIR, 2, 0, {("l", "l"): {"l": D - D}})
        self.assertTrue(f.is_zero)
        self.assertEqual(f, zero_map(VIR, VIR, 2, 0))

    def test_linear_combinations(self):
        self.assertTrue((BRACKET - BRACKET).is_zero)
        self.assertEqual((BRACKET * 2).value(("l", "l")), PolyValue({"l": 2 * D + 4 * L1}))
        with self.assertRaises(ValueError):
            BRACKET + identity_map(VIR)

    def test_to_json(self):
        self.assertEqual(BRACKET.to_json(), [{"args": ["l", "l"], "value": [{"gen": "l", "poly": "2*L1 + D"}]}])

    def test_with_pattern(self):
        M = graded_module()
        f = ConfMap(M, M, 2, 0, {("a", "a"): {"a": ONE}, ("a", "c"): {"c": ONE}})
        self.assertEqual(list(f.with_pattern((0, 1)).table), [("a", "c")])

    def test_shifted_keeps_degree(self):
        M = graded_module()
        g = ConfMap(M, M, 1, -1, {("c",): {"a": ONE}})
        shifted = g.shifted(1)
        self.assertEqual(shifted.degree, -1)
        self.assertEqual(shifted.source.degrees, {"a": 1, "c": 2})


class TestEvaluate(unittest.TestCase):

    def test_sesquilinearity(self):
        l, dl = ModElement.generator("l"), ModElement({"l": D})
        base = D + 2 * L1
        self.assertEqual(evaluate(BRACKET, [dl, l]), PolyValue({"l": -L1 * base}))
        self.assertEqual(evaluate(BRACKET, [l, dl]), PolyValue({"l": (D + L1) * base}))

    def test_slot_expressions(self):
        l = ModElement.generator("l")
        self.assertEqual(evaluate_at(BRACKET, [l, l], [-D]), PolyValue({"l": -D}))

    def test_argument_count(self):
        with self.assertRaises(ValueError):
            evaluate(BRACKET, [ModElement.generator("l")])
        with self.assertRaises(ValueError):
            evaluate_at(BRACKET, [ModElement.generator("l")] * 2, [])


class TestInsert(unittest.TestCase):

    def test_nested_virasoro(self):
        expected = D ** 2 + (3 * L1 + 2 * L2) * D + 2 * L1 ** 2 + 4 * L1 * L2
        self.assertEqual(insert(BRACKET, 2, BRACKET).value(("l", "l", "l")), PolyValue({"l": expected}))

    def test_inner_first_slot(self):
        expected = (L1 - L2) * (D + 2 * L1 + 2 * L2)
        self.assertEqual(insert(BRACKET, 1, BRACKET).value(("l", "l", "l")), PolyValue({"l": expected}))

    def test_identity_is_unit(self):
        self.assertEqual(multi_insert(BRACKET, [IDENTITY, IDENTITY]), BRACKET)
        self.assertEqual(insert(BRACKET, 1, identity_map(VIR)), BRACKET)
        self.assertEqual(insert(identity_map(VIR), 1, BRACKET), BRACKET)

    def test_koszul_sign(self):
        M = graded_module()
        m = ConfMap(M, M, 2, 0, {("c", "a"): {"c": ONE}, ("a", "c"): {"c": ONE}})
        g = ConfMap(M, M, 1, -1, {("c",): {"a": ONE}})
        self.assertEqual(insert(m, 2, g).value(("c", "c")), PolyValue({"c": -ONE}))
        self.assertEqual(insert(m, 1, g).value(("c", "c")), PolyValue({"c": ONE}))
        self.assertEqual(insert(m, 2, g).degree, -1)

    def test_mismatched_modules(self):
        with self.assertRaises(ValueError):
            insert(BRACKET, 1, identity_map(graded_module()))
        with self.assertRaises(ValueError):
            multi_insert(BRACKET, [IDENTITY])
        with self.assertRaises(ValueError):
            insert(BRACKET, 3, BRACKET)

    def test_diamond(self):
        self.assertEqual(diamond(BRACKET, BRACKET), insert(BRACKET, 1, BRACKET) + insert(BRACKET, 2, BRACKET))


class TestOperadIdentities(unittest.TestCase):

    def setUp(self):
        self.module = graded_module()
        self.rng = random.Random(2024)

    def random_map(self, arity):
        degree = self.rng.choice([-1, 0, 1])
        return random_confmap(self.module, self.module, arity, degree, 1, 1, self.rng)

    def test_sequential(self):
        for _ in range(100):
            f, g, h = self.random_map(self.rng.choice([2, 3])), self.random_map(2), self.random_map(2)
            i, j = self.rng.randint(1, f.arity), self.rng.randint(1, g.arity)
            self.assertEqual(insert(insert(f, i, g), i + j - 1, h), insert(f, i, insert(g, j, h)))

    def test_parallel(self):
        for _ in range(100):
            f, g, h = self.random_map(self.rng.choice([2, 3])), self.random_map(2), self.random_map(1)
            i, j = sorted(self.rng.sample(range(1, f.arity + 1), 2))
            sign = -1 if g.degree * h.degree % 2 else 1
            self.assertEqual(insert(insert(f, i, g), j + g.arity - 1, h), insert(insert(f, j, h), i, g) * sign)


class TestPermutations(unittest.TestCase):

    def test_lambda_dagger(self):
        self.assertEqual(permute(BRACKET, (2, 1)).value(("l", "l")), PolyValue({"l": -D - 2 * L1}))

    def test_signs(self):
        self.assertEqual(permutation_sign((2, 1, 3)), -1)
        self.assertEqual(permutation_sign((2, 3, 1)), 1)
        self.assertEqual(koszul_sign((2, 1), [1, 1]), -1)
        self.assertEqual(koszul_sign((2, 1), [0, 1]), 1)

    def test_not_a_permutation(self):
        with self.assertRaises(ValueError):
            permute(BRACKET, (1, 1))

    def test_signed_permute(self):
        self.assertEqual(signed_permute(BRACKET, (2, 1), skew=True), BRACKET)
        self.assertEqual(signed_permute(BRACKET, (2, 1), skew=False), -BRACKET)

    def test_symmetrize(self):
        self.assertEqual(symmetrize(BRACKET, "skew"), BRACKET * 2)
        self.assertTrue(is_symmetric(BRACKET, "skew"))
        self.assertFalse(is_symmetric(BRACKET, "sym"))
        with self.assertRaises(ValueError):
            symmetrize(BRACKET, "other")

    def test_shuffles(self):
        self.assertEqual(shuffles(1, 2), [(1, 2, 3), (2, 1, 3), (3, 1, 2)])
        self.assertEqual(len(shuffles(2, 2)), 6)

    def test_shuffle_compose_jacobi(self):
        self.assertTrue(shuffle_compose(BRACKET, BRACKET, skew=True).is_zero)


class TestZeroReport(unittest.TestCase):

    def test_witness(self):
        report = zero_report("skew-symmetry", BRACKET, arity=2)
        self.assertFalse(report)
        self.assertEqual(report.witness, ("l", "l"))
        self.assertEqual(report.difference, "(2*L1 + D)*l")

    def test_pass(self):
        self.assertTrue(zero_report("zero", zero_map(VIR, VIR, 1, 0)))


class TestRandomConfMap(unittest.TestCase):

    def test_seeded(self):
        M = graded_module()
        first = random_confmap(M, M, 2, 0, 1, 1, random.Random(9))
        second = random_confmap(M, M, 2, 0, 1, 1, random.Random(9))
        self.assertEqual(first, second)
        self.assertEqual(first.degree, 0)


if __name__ == '__main__':
    unittest.main()
