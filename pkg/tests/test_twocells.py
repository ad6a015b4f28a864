import random
import unittest

from confalg.ainf import AInfStructure, check_ainf, doubled_ainf, kernel_ainf, mutate_sign, phi_extension
from confalg.assocconf import Cochain, adjoint_bimodule, cur_dual_numbers, cur_rationals, hochschild_delta, \
    random_cochain
from confalg.confmap import ConfMap, random_confmap
from confalg.confmod import GradedModule, PolyValue
from confalg.constants import bundled_manifest_paths
from confalg.manifest import parse_manifest
from confalg.polyring import L, ONE
from confalg.twocells import ConfTwoAlgebra, SkeletalData, TwoTermAInf, TwoTermMorphism, apply_equivalence, \
    check_morphism, check_two_alg_morphism, check_two_algebra, check_two_term, cocycle_from_skeletal, \
    compose_morphisms, compose_two_alg_morphisms, from_two_term, functor_S, functor_S_morphism, functor_T, \
    functor_T_morphism, identity_morphism, identity_two_alg_morphism, skeletal_from_cocycle, to_two_term, upsilon
from confalg.utils import ConstructionError


def bundled(name):
    return parse_manifest(bundled_manifest_paths()[name])


def base_phi():
    A = cur_rationals().module
    return Cochain(2, ConfMap(A, A, 2, 0, {("u", "u"): {"u": L(1)}}))


def phi_two_term():
    return TwoTermAInf.from_ainf(phi_extension(adjoint_bimodule(cur_rationals()), base_phi()))


def small_dga():
    M = GradedModule({0: ["a"], 1: ["c"]})
    d = ConfMap(M, M, 1, -1, {("c",): {"a": ONE}})
    mult = ConfMap(M, M, 2, 0, {("a", "a"): {"a": ONE}, ("a", "c"): {"c": ONE}, ("c", "a"): {"c": ONE}})
    return TwoTermAInf.from_ainf(AInfStructure(M, {1: d, 2: mult}))


def kernel_two_term():
    A, B = cur_dual_numbers(), cur_rationals()
    return TwoTermAInf.from_ainf(kernel_ainf(A, B, ConfMap(A.module, B.module, 1, 0, {("u",): {"u": ONE}})))


def two_term_corpus():
    return [
        bundled("two-algebra-roundtrip").structure("doubled"),
        TwoTermAInf.from_ainf(doubled_ainf(cur_dual_numbers())),
        phi_two_term(),
        to_two_term(bundled("skeletal-3cocycle").structure("skeletal")),
        kernel_two_term(),
        small_dga(),
    ]


def trivialising_morphism(f2_poly=-L(1)):
    """From the φ-extension to the trivial extension: f0, f1 identities and f2 = -φ."""
    source = phi_two_term()
    target = TwoTermAInf(source.A0, source.A1, source.beta, source.mu2)
    E = source.module
    f0 = ConfMap(E, E, 1, 0, {("u",): {"u": ONE}})
    f1 = ConfMap(E, E, 1, 0, {("u'",): {"u'": ONE}})
    f2 = ConfMap(E, E, 2, 1, {("u", "u"): {"u'": f2_poly}})
    return TwoTermMorphism(source, target, f0, f1, f2)


class TestTwoTermAInf(unittest.TestCase):

    def test_corpus_is_valid(self):
        for structure in two_term_corpus():
            report = check_two_term(structure)
            self.assertTrue(report, msg=repr(structure))
            self.assertEqual(len(report.items), 9)
            self.assertTrue(check_ainf(structure.to_ainf(), 4), msg=repr(structure))

    def test_item_names_failure(self):
        doubled = doubled_ainf(cur_dual_numbers())
        broken = TwoTermAInf.from_ainf(AInfStructure(doubled.module, {
            1: doubled.mults[1], 2: mutate_sign(doubled.mults[2], ("u", "x'"))}))
        report = check_two_term(broken)
        self.assertFalse(report)
        failing = [item.check for item in report.items if not item]
        self.assertEqual(failing[0], "(ii)")
        self.assertNotIn("(v)", failing)

    def test_degrees(self):
        structure = small_dga()
        with self.assertRaises(ValueError):
            TwoTermAInf(structure.A1, structure.A1, structure.beta, structure.mu2)
        with self.assertRaises(ValueError):
            TwoTermAInf(structure.A0, structure.A1, structure.mu2, structure.mu2)

    def test_from_ainf_arity_bound(self):
        module = GradedModule({0: ["a"]})
        structure = AInfStructure(module, {4: ConfMap.zero(module, module, 4, 2)})
        with self.assertRaises(ValueError):
            TwoTermAInf.from_ainf(structure)


class TestTwoTermMorphisms(unittest.TestCase):

    def test_identity(self):
        for structure in two_term_corpus():
            ident = identity_morphism(structure)
            self.assertTrue(check_morphism(ident))
            self.assertTrue(check_morphism(compose_morphisms(ident, ident)))

    def test_cohomologous_extensions(self):
        f = trivialising_morphism()
        self.assertTrue(check_morphism(f))
        broken = check_morphism(trivialising_morphism(f2_poly=L(1)))
        self.assertFalse(broken)
        self.assertEqual(broken.items[-1].check, "f2-associator")
        self.assertFalse(broken.items[-1])

    def test_composition(self):
        f = trivialising_morphism()
        composite = compose_morphisms(identity_morphism(f.target), f)
        self.assertTrue(check_morphism(composite))
        self.assertEqual(composite.f2, f.f2)
        self.assertEqual(composite.f1, f.f1)

    def test_not_multiplicative(self):
        structure = TwoTermAInf.from_ainf(doubled_ainf(cur_dual_numbers()))
        E = structure.module
        twice = ConfMap(E, E, 1, 0, {(g,): {g: 2 * ONE} for g in E.generators})
        f = TwoTermMorphism(structure, structure, twice.with_pattern((0,)), twice.with_pattern((1,)))
        report = check_morphism(f)
        self.assertFalse(report)
        self.assertFalse(report.items[1])
        self.assertTrue(report.items[0])

    def test_not_composable(self):
        f = trivialising_morphism()
        with self.assertRaises(ValueError):
            compose_morphisms(f, identity_morphism(small_dga()))


class TestSkeletal(unittest.TestCase):

    def setUp(self):
        manifest = bundled("skeletal-3cocycle")
        self.data = manifest.structure("skeletal")
        self.sigma = manifest.structure("sigma")
        self.bimodule = self.data.bimodule

    def test_structure(self):
        structure = skeletal_from_cocycle(self.data)
        self.assertEqual(structure.module.generators, ["u", "u'"])
        self.assertEqual(list(structure.mults), [2, 3])
        self.assertTrue(check_ainf(structure, 4))

    def test_round_trips(self):
        self.assertEqual(cocycle_from_skeletal(skeletal_from_cocycle(self.data), self.bimodule), self.data)
        self.assertEqual(from_two_term(to_two_term(self.data), self.bimodule), self.data)

    def test_equivalence(self):
        moved = apply_equivalence(self.data, self.sigma)
        self.assertEqual(moved.theta - self.data.theta, hochschild_delta(self.bimodule, self.sigma))
        self.assertTrue(check_ainf(skeletal_from_cocycle(moved), 4))
        with self.assertRaises(ValueError):
            apply_equivalence(self.data, self.data.theta)

    def test_not_a_cocycle(self):
        A = self.bimodule.algebra.module
        theta = Cochain(3, ConfMap(A, A, 3, 0, {("u", "u", "u"): {"u": ONE}}))
        with self.assertRaises(ConstructionError):
            skeletal_from_cocycle(SkeletalData(self.bimodule, theta))

    def test_higher_cocycle(self):
        sigma = random_cochain(self.bimodule, 3, 1, 1, random.Random(12))
        data = SkeletalData(self.bimodule, hochschild_delta(self.bimodule, sigma))
        self.assertEqual(data.n, 3)
        structure = skeletal_from_cocycle(data)
        self.assertEqual(structure.module.degree("u'"), 2)
        self.assertTrue(check_ainf(structure, 5))
        self.assertEqual(cocycle_from_skeletal(structure, self.bimodule), data)
        with self.assertRaises(ValueError):
            to_two_term(data)

    def test_degree_bounds(self):
        with self.assertRaises(ValueError):
            SkeletalData(self.bimodule, self.sigma)
        with self.assertRaises(ValueError):
            from_two_term(TwoTermAInf.from_ainf(doubled_ainf(cur_rationals())), self.bimodule)


class TestFunctors(unittest.TestCase):

    def test_round_trip(self):
        for structure in two_term_corpus():
            C = functor_S(structure)
            self.assertTrue(check_two_algebra(C), msg=repr(structure))
            self.assertEqual(functor_T(C), structure)

    def test_upsilon(self):
        for structure in two_term_corpus()[:3]:
            C = functor_S(structure)
            self.assertTrue(check_two_alg_morphism(upsilon(C)))
            self.assertTrue(check_two_alg_morphism(identity_two_alg_morphism(C)))

    def test_bundled_two_algebra(self):
        manifest = bundled("two-algebra-roundtrip")
        C, structure = manifest.structure("S-image"), manifest.structure("doubled")
        self.assertTrue(check_two_algebra(C))
        expected = functor_S(structure)
        for field in ("s", "t", "iota", "pi0", "pi1", "associator"):
            self.assertEqual(getattr(C, field), getattr(expected, field), msg=field)
        self.assertEqual(functor_T(C), structure)

    def test_pentagon_tracks_arity_four_identity(self):
        base = phi_two_term()
        bimodule = adjoint_bimodule(cur_rationals())
        E = base.module
        rng = random.Random(29)
        verdicts = set()
        candidates = [base]
        for _ in range(10):
            extra = random_confmap(E, E, 3, 1, 1, 1, rng).with_pattern((0, 0, 0))
            candidates.append(TwoTermAInf(base.A0, base.A1, base.beta, base.mu2, base.mu3 + extra))
        for _ in range(3):
            phi = Cochain(2, base_phi().body + random_cochain(bimodule, 2, 1, 1, rng).body)
            candidates.append(TwoTermAInf.from_ainf(phi_extension(bimodule, phi)))
        for structure in candidates:
            arity_four = next(item for item in check_two_term(structure).items if item.check == "(ix)")
            report = check_two_algebra(functor_S(structure, check=False))
            pentagon = next(item for item in report.items if item.check == "pentagon")
            self.assertEqual(bool(pentagon), bool(arity_four), msg=repr(structure.mu3))
            verdicts.add(bool(arity_four))
        self.assertEqual(verdicts, {True, False})

    def test_broken_associator(self):
        C = functor_S(TwoTermAInf.from_ainf(doubled_ainf(cur_dual_numbers())))
        broken = ConfTwoAlgebra(C.C0, C.C1, C.s, C.t, C.iota, C.pi0, C.pi1, C.associator * 2)
        report = check_two_algebra(broken)
        self.assertFalse(report)
        self.assertIn("associator-source", [item.check for item in report.items if not item])
        with self.assertRaises(ConstructionError):
            functor_T(broken)

    def test_composition_of_morphisms(self):
        structure = bundled("two-algebra-roundtrip").structure("doubled")
        C = functor_S(structure)
        u, u1 = PolyValue.generator("u"), PolyValue.generator("u'")
        self.assertEqual(C.compose(u1, u), u1)
        with self.assertRaises(ValueError):
            C.compose(u, u1)

    def test_morphisms(self):
        f = trivialising_morphism()
        F = functor_S_morphism(f)
        self.assertTrue(check_two_alg_morphism(F))
        back = functor_T_morphism(F)
        self.assertEqual(back.F.table, f.F.table)
        self.assertEqual(back.f2.table, f.f2.table)
        composite = compose_two_alg_morphisms(F, upsilon(F.source))
        self.assertTrue(check_two_alg_morphism(composite))

    def test_splitting_name_clash(self):
        C0, C1 = GradedModule({0: ["x"]}), GradedModule({0: ["x", "y"]})
        s = ConfMap(C1, C0, 1, 0, {("y",): {"x": ONE}})
        iota = ConfMap(C0, C1, 1, 0, {("x",): {"y": ONE}})
        C = ConfTwoAlgebra(C0, C1, s, s, iota, ConfMap.zero(C0, C0, 2, 0), ConfMap.zero(C1, C1, 2, 0),
                           ConfMap.zero(C0, C1, 3, 0))
        self.assertTrue(check_two_algebra(C))
        with self.assertRaises(ValueError):
            functor_T(C)


if __name__ == '__main__':
    unittest.main()
