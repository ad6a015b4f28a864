import unittest

from confalg.ainf import AInf1Structure, AInfStructure, check_ainf, check_ainf1, from_assoc, shift
from confalg.assocconf import cur_matrix_algebra
from confalg.confmap import ConfMap, diamond
from confalg.confmod import GradedModule, PolyValue
from confalg.constants import bundled_manifest_paths
from confalg.manifest import parse_manifest
from confalg.polyring import ONE
from confalg.transfer import LEAF, Contraction, PlanarTree, check_contraction, count_trees, enumerate_trees, graft, \
    identity_contraction, lemma_theta3, partial_rho1, rho_tree, shift_contraction, transfer, transfer_ainf
from confalg.utils import ConstructionError


def side_branch():
    """
    V = span(x, b, c, y) with ρ₁c = b, ρ₂(x, x) = b and ρ₂(c, x) = y, contracted onto span(x, y) by h(b) = c.
    """
    V = GradedModule({1: ["x", "b"], 2: ["c", "y"]})
    W = GradedModule({1: ["x"], 2: ["y"]})
    rho1 = ConfMap(V, V, 1, -1, {("c",): {"b": ONE}})
    rho2 = ConfMap(V, V, 2, -1, {("x", "x"): {"b": ONE}, ("c", "x"): {"y": ONE}})
    p = ConfMap(V, W, 1, 0, {("x",): {"x": ONE}, ("y",): {"y": ONE}})
    i = ConfMap(W, V, 1, 0, {("x",): {"x": ONE}, ("y",): {"y": ONE}})
    h = ConfMap(V, V, 1, 1, {("b",): {"c": ONE}})
    contraction = Contraction(V, W, rho1, ConfMap.zero(W, W, 1, -1), p, i, h)
    return contraction, AInf1Structure(V, {1: rho1, 2: rho2})


def acyclic_pair():
    V = GradedModule({0: ["b"], 1: ["c"]})
    W = GradedModule()
    d = ConfMap(V, V, 1, -1, {("c",): {"b": ONE}})
    h = ConfMap(V, V, 1, 1, {("b",): {"c": ONE}})
    contraction = Contraction(V, W, d, ConfMap.zero(W, W, 1, -1), ConfMap.zero(V, W, 1, 0),
                              ConfMap.zero(W, V, 1, 0), h)
    return contraction, AInfStructure(V, {1: d})


def non_formal_dga():
    """
    xy = b, yz = w, xw = t, bz = t, cz = e with dc = b, de = t, contracted onto span(x, y, z, w, t, e) by h(b) = c.
    The induced product is not associative: (xy)z = 0 while x(yz) = t.
    """
    V = GradedModule({0: ["x", "y", "z", "w", "t", "b"], 1: ["c", "e"]})
    W = GradedModule({0: ["x", "y", "z", "w", "t"], 1: ["e"]})
    d = ConfMap(V, V, 1, -1, {("c",): {"b": ONE}, ("e",): {"t": ONE}})
    mult = ConfMap(V, V, 2, 0, {("x", "y"): {"b": ONE}, ("y", "z"): {"w": ONE}, ("x", "w"): {"t": ONE},
                                ("b", "z"): {"t": ONE}, ("c", "z"): {"e": ONE}})
    kept = ["x", "y", "z", "w", "t", "e"]
    p = ConfMap(V, W, 1, 0, {(g,): {g: ONE} for g in kept})
    i = ConfMap(W, V, 1, 0, {(g,): {g: ONE} for g in kept})
    h = ConfMap(V, V, 1, 1, {("b",): {"c": ONE}})
    dW = ConfMap(W, W, 1, -1, {("e",): {"t": ONE}})
    return Contraction(V, W, d, dW, p, i, h), AInfStructure(V, {1: d, 2: mult})


class TestPlanarTrees(unittest.TestCase):

    def test_binary_counts(self):
        self.assertEqual([count_trees(k) for k in range(1, 8)], [1, 1, 2, 5, 14, 42, 132])

    def test_general_counts(self):
        self.assertEqual([count_trees(k, binary=False) for k in range(1, 7)], [1, 1, 3, 11, 45, 197])

    def test_enumeration_matches_count(self):
        for binary in (True, False):
            for k in range(1, 6):
                trees = enumerate_trees(k, binary)
                self.assertEqual(len(trees), count_trees(k, binary))
                self.assertEqual(len(set(trees)), len(trees))
                self.assertTrue(all(tree.leaves == k for tree in trees))

    def test_three_leaves(self):
        self.assertEqual(enumerate_trees(3), [graft(LEAF, graft(LEAF, LEAF)), graft(graft(LEAF, LEAF), LEAF)])
        self.assertEqual(repr(enumerate_trees(3)[0]), "(|,(|,|))")
        self.assertIn(graft(LEAF, LEAF, LEAF), enumerate_trees(3, binary=False))

    def test_shape(self):
        tree = graft(graft(LEAF, LEAF), LEAF, graft(LEAF, LEAF))
        self.assertEqual(tree.internal_vertices, 3)
        self.assertEqual(tree.internal_edges, 2)
        self.assertFalse(tree.is_binary)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            PlanarTree([LEAF])
        with self.assertRaises(ValueError):
            enumerate_trees(0)
        with self.assertRaises(TypeError):
            PlanarTree([LEAF, "leaf"])


class TestContraction(unittest.TestCase):

    def test_valid(self):
        self.assertTrue(check_contraction(side_branch()[0]))
        self.assertTrue(check_contraction(acyclic_pair()[0]))
        self.assertTrue(check_contraction(identity_contraction(GradedModule({0: ["a"]}))))

    def test_broken_homotopy(self):
        C = side_branch()[0]
        broken = Contraction(C.big, C.small, C.rho1, C.theta1, C.p, C.i, C.h * 2)
        report = check_contraction(broken)
        self.assertFalse(report)
        self.assertEqual(report.items[4].check, "homotopy")
        self.assertFalse(report.items[4])

    def test_signature(self):
        C = side_branch()[0]
        with self.assertRaises(ValueError):
            Contraction(C.big, C.small, C.rho1, C.theta1, C.p, C.i, C.rho1)
        with self.assertRaises(TypeError):
            Contraction(C.big, C.small, C.rho1, C.theta1, C.p, C.i, None)

    def test_partial_rho1(self):
        C, structure = side_branch()
        self.assertTrue(partial_rho1(C.rho1, structure.mults[2]).is_zero)
        with self.assertRaises(ValueError):
            partial_rho1(C.rho1, C.rho1)


class TestTransfer(unittest.TestCase):

    def test_side_branch(self):
        C, structure = side_branch()
        result = transfer(C, structure, 4)
        self.assertTrue(result.mults[2].is_zero)
        self.assertEqual(result.mults[3].value(("x", "x", "x")), PolyValue({"y": -ONE}))
        self.assertEqual(result.mults[3], lemma_theta3(C, structure))
        self.assertTrue(result.mults[4].is_zero)
        self.assertTrue(check_ainf1(result, 4))

    def test_all_trees_agree_on_binary_input(self):
        C, structure = side_branch()
        binary = transfer(C, structure, 4, binary=True)
        general = transfer(C, structure, 4, binary=False)
        self.assertEqual(binary.mults, general.mults)

    def test_rho_tree(self):
        C, structure = side_branch()
        value = rho_tree(graft(graft(LEAF, LEAF), LEAF), structure.mults, C.h)
        self.assertEqual(value.value(("x", "x", "x")), PolyValue({"y": ONE}))
        with self.assertRaises(ValueError):
            rho_tree(LEAF, structure.mults, C.h)

    def test_identity_contraction(self):
        algebra = from_assoc(cur_matrix_algebra(2))
        result = transfer_ainf(identity_contraction(algebra.module), algebra, 4)
        self.assertEqual(result.mults[2], algebra.mults[2])
        self.assertTrue(result.mults[3].is_zero)
        self.assertTrue(result.mults[4].is_zero)

    def test_acyclic(self):
        C, structure = acyclic_pair()
        result = transfer_ainf(C, structure, 3)
        self.assertEqual(result.module.rank, 0)
        self.assertTrue(all(f.is_zero for f in result.mults.values()))

    def test_bundled_dga(self):
        manifest = parse_manifest(bundled_manifest_paths()["contraction-rank3"])
        C, dga = manifest.structure("contraction"), manifest.structure("dga")
        self.assertTrue(check_contraction(C))
        result = transfer_ainf(C, dga, 4)
        self.assertEqual(result.module.generators, ["a"])
        self.assertEqual(result.mults[2].value(("a", "a")), PolyValue({"a": ONE}))
        self.assertTrue(result.mults[3].is_zero)
        self.assertTrue(result.mults[4].is_zero)
        self.assertTrue(check_ainf(result, 5))

    def test_non_formal_dga(self):
        C, dga = non_formal_dga()
        self.assertTrue(check_contraction(C))
        self.assertTrue(check_ainf(dga, 4))
        C, structure = shift_contraction(C), shift(dga)
        result = transfer(C, structure, 4)
        theta1, theta2, theta3 = result.mult(1), result.mult(2), result.mult(3)
        self.assertFalse(theta1.is_zero)
        self.assertFalse(theta2.is_zero)
        self.assertFalse(theta3.is_zero)
        self.assertEqual(theta3, lemma_theta3(C, structure))
        self.assertEqual(list(theta3.value(("x", "y", "z")).coords), ["e"])
        self.assertFalse(diamond(theta2, theta2).is_zero)
        self.assertTrue((diamond(theta2, theta2) + partial_rho1(theta1, theta3)).is_zero)
        self.assertTrue(check_ainf1(result, 4))

        unsigned = AInf1Structure(result.module, {1: theta1, 2: theta2, 3: -theta3})
        report = check_ainf1(unsigned, 3)
        self.assertFalse(report)
        self.assertEqual(report.arity, 3)
        self.assertEqual(report.witness, ("x", "y", "z"))

    def test_input_validation(self):
        C, structure = side_branch()
        with self.assertRaises(ValueError):
            transfer(C, structure, 1)
        with self.assertRaises(ValueError):
            transfer(C, AInf1Structure(C.big, {2: structure.mults[2]}), 3)
        broken = Contraction(C.big, C.small, C.rho1, C.theta1, C.p, C.i, C.h * 2)
        with self.assertRaises(ConstructionError):
            transfer(broken, structure, 3)

    def test_structure_on_other_module(self):
        C = side_branch()[0]
        with self.assertRaises(ValueError):
            transfer_ainf(C, from_assoc(cur_matrix_algebra(2)), 3)
        with self.assertRaises(ValueError):
            transfer(C, shift(from_assoc(cur_matrix_algebra(2))), 3)


if __name__ == '__main__':
    unittest.main()
