"""
2-term A∞-conformal algebras, their morphisms, skeletal structures from Hochschild cocycles, associative
conformal 2-algebras and the functors S and T between the two pictures.
"""
from confalg.ainf import AInfStructure, ainf_identity
from confalg.assocconf import Cochain, ConformalBimodule, extension_map, hochschild_delta
from confalg.confmap import ConfMap, evaluate, identity_map, insert, multi_insert, zero_report
from confalg.confmod import GradedModule, PolyValue
from confalg.polyring import ONE
from confalg.utils import ConstructionError, Report

ITEM_PATTERNS = {
    "(ii)": (0, 1),
    "(iii)": (1, 0),
    "(iv)": (1, 1),
    "(v)": (0, 0, 0),
    "(vi)": (0, 0, 1),
    "(vii)": (0, 1, 0),
    "(viii)": (1, 0, 0),
    "(ix)": (0, 0, 0, 0),
}


def _rehome(f: ConfMap, source: GradedModule, target: GradedModule, degree: int = None) -> ConfMap:
    return ConfMap(source, target, f.arity, f.degree if degree is None else degree, f.table)


def _flat(module: GradedModule) -> GradedModule:
    return GradedModule(degrees={name: 0 for name in module.generators})


class TwoTermAInf:
    """
    2-term A∞-conformal algebra A1 -β-> A0 with μ2 and μ3.

    All maps live on A = A0 ⊕ A1 (A1 in degree 1): β of degree -1, μ2 of degree 0 and μ3: A0^{⊗3} -> A1 of
    degree 1. Degree bookkeeping rules out every other component.
    """

    def __init__(self, A0: GradedModule, A1: GradedModule, beta: ConfMap, mu2: ConfMap, mu3: ConfMap = None):
        if not A0.is_concentrated_in(0) or not A1.is_concentrated_in(1):
            raise ValueError("a 2-term algebra needs A0 in degree 0 and A1 in degree 1")
        self.A0 = A0
        self.A1 = A1
        self.module = A0.direct_sum(A1)
        self.beta = _rehome(beta, self.module, self.module)
        self.mu2 = _rehome(mu2, self.module, self.module)
        self.mu3 = _rehome(mu3, self.module, self.module) if mu3 is not None else \
            ConfMap.zero(self.module, self.module, 3, 1)
        for name, f, arity, degree in (("β", self.beta, 1, -1), ("μ2", self.mu2, 2, 0), ("μ3", self.mu3, 3, 1)):
            if f.arity != arity or f.degree != degree:
                raise ValueError(f"{name} must have arity {arity} and degree {degree}, got {f.signature()}")

    @classmethod
    def from_ainf(cls, structure: AInfStructure):
        module = structure.module
        if not module.is_concentrated_in(0, 1) or any(k > 3 for k in structure.mults):
            raise ValueError("structure is not concentrated in degrees 0, 1 with arities <= 3")
        return cls(module.restrict(module.of_degree(0)), module.restrict(module.of_degree(1)),
                   structure.mult(1), structure.mult(2), structure.mult(3))

    def to_ainf(self) -> AInfStructure:
        return AInfStructure(self.module, self.mults)

    @property
    def mults(self) -> dict:
        return {1: self.beta, 2: self.mu2, 3: self.mu3}

    def __eq__(self, other):
        return isinstance(other, TwoTermAInf) and self.module == other.module and self.mults == other.mults

    def __hash__(self):
        return hash(self.module)

    def __repr__(self):
        return f"TwoTermAInf({self.A1.generators} -> {self.A0.generators})"


def check_two_term(structure: TwoTermAInf) -> Report:
    """
    Items (i)-(ix): the A∞ identities of arity 1..4 split by the degrees of their arguments.
    Item (i), β∘β = 0, holds for degree reasons.
    """
    items = [Report("(i)", True, arity=1)]
    identities = {n: ainf_identity(structure.mults, n) for n in (2, 3, 4)}
    for name, pattern in ITEM_PATTERNS.items():
        items.append(zero_report(name, identities[len(pattern)].with_pattern(pattern), arity=len(pattern)))
    return Report.combine("two-term", items)


class TwoTermMorphism:
    """
    Homomorphism (f0, f1, f2) of 2-term A∞-conformal algebras.

    Attributes:
        source (TwoTermAInf), target (TwoTermAInf)
        F (ConfMap): f0 ⊕ f1 as one degree-0 linear map A -> A'.
        f2 (ConfMap): A0 ⊗ A0 -> A1' of degree 1.
    """

    def __init__(self, source: TwoTermAInf, target: TwoTermAInf, f0: ConfMap, f1: ConfMap, f2: ConfMap = None):
        self.source = source
        self.target = target
        A, B = source.module, target.module
        table = dict(f0.table)
        table.update(f1.table)
        self.F = ConfMap(A, B, 1, 0, table)
        self.f2 = _rehome(f2, A, B, 1) if f2 is not None else ConfMap.zero(A, B, 2, 1)

    @property
    def f0(self) -> ConfMap:
        return self.F.with_pattern((0,))

    @property
    def f1(self) -> ConfMap:
        return self.F.with_pattern((1,))

    def __repr__(self):
        return f"TwoTermMorphism({self.source!r} -> {self.target!r})"


def identity_morphism(structure: TwoTermAInf) -> TwoTermMorphism:
    ident = identity_map(structure.module)
    return TwoTermMorphism(structure, structure, ident, ConfMap.zero(structure.module, structure.module, 1, 0))


def check_morphism(f: TwoTermMorphism) -> Report:
    """
    β'f1 = f0β and
        β'(f2(a, b)) = f0(a_λ b) - f0(a)_λ f0(b)
        f2(a, βm) = f1(a_λ m) - f0(a)_λ f1(m)
        f2(βm, a) = f1(m_λ a) - f1(m)_λ f0(a)
        f2(a, b_μ c) - f2(a_λ b, c) + f0(a)_λ f2(b, c) - f2(a, b)_{λ+μ} f0(c)
            = μ3'(f0 a, f0 b, f0 c) - f1 μ3(a, b, c)
    """
    S, T = f.source, f.target
    F, f2 = f.F, f.f2
    image = insert(F, 1, S.mu2) - multi_insert(T.mu2, [F, F])
    items = [
        zero_report("chain", insert(T.beta, 1, F) - insert(F, 1, S.beta), arity=1),
        zero_report("f2-beta", (insert(T.beta, 1, f2) - image).with_pattern((0, 0)), arity=2),
        zero_report("f2-right", (insert(f2, 2, S.beta) - image).with_pattern((0, 1)), arity=2),
        zero_report("f2-left", (insert(f2, 1, S.beta) - image).with_pattern((1, 0)), arity=2),
    ]
    cubic = (insert(f2, 2, S.mu2) - insert(f2, 1, S.mu2) + multi_insert(T.mu2, [F, f2])
             - multi_insert(T.mu2, [f2, F]) - multi_insert(T.mu3, [F, F, F]) + insert(F, 1, S.mu3))
    items.append(zero_report("f2-associator", cubic.with_pattern((0, 0, 0)), arity=3))
    return Report.combine("two-term-morphism", items)


def compose_morphisms(g: TwoTermMorphism, f: TwoTermMorphism) -> TwoTermMorphism:
    """
    g∘f = (g0 f0, g1 f1, (g∘f)2) with (g∘f)2(a, b) = g2(f0 a, f0 b) + g1(f2(a, b)).
    """
    if f.target.module != g.source.module:
        raise ValueError("morphisms are not composable: target of f differs from source of g")
    F = insert(g.F, 1, f.F)
    f2 = multi_insert(g.f2, [f.F, f.F]) + insert(g.F, 1, f.f2)
    return TwoTermMorphism(f.source, g.target, F.with_pattern((0,)), F.with_pattern((1,)), f2)


class SkeletalData:
    """
    A cocycle Θ ∈ C^{n+1}(A, M) describing the skeletal n-term structure M -> 0 -> ... -> A.
    """

    def __init__(self, bimodule: ConformalBimodule, theta: Cochain):
        if theta.n < 3:
            raise ValueError(f"Θ must have degree n + 1 >= 3, got {theta.n}")
        body = theta.body
        if body.source != bimodule.algebra.module or body.target != bimodule.module:
            raise ValueError("Θ does not map the algebra into the bimodule")
        self.bimodule = bimodule
        self.theta = theta
        self.n = theta.n - 1

    def __eq__(self, other):
        return isinstance(other, SkeletalData) and self.theta == other.theta

    def __hash__(self):
        return hash(self.theta)

    def __repr__(self):
        return f"SkeletalData(n={self.n}, {self.bimodule!r})"


def skeletal_from_cocycle(data: SkeletalData, check: bool = True) -> AInfStructure:
    """
    A ⊕ M[n-1] with μ2 the algebra and bimodule products and μ_{n+1} = Θ.
    @raise ConstructionError: Θ is not a cocycle
    """
    if check:
        report = zero_report("cocycle", hochschild_delta(data.bimodule, data.theta).body, arity=data.n + 2)
        if not report:
            raise ConstructionError("Θ is not a cocycle", report)
    E, mu2, m_map = extension_map(data.bimodule, shift=data.n - 1)
    top = ConfMap(E, E, data.n + 1, data.n - 1,
                  {args: value.rename_generators(m_map) for args, value in data.theta.body.table.items()})
    return AInfStructure(E, {2: mu2, data.n + 1: top})


def cocycle_from_skeletal(structure: AInfStructure, bimodule: ConformalBimodule) -> SkeletalData:
    """
    Reads Θ back from a skeletal structure built over the given bimodule.
    @raise ValueError: the structure is not skeletal over this bimodule
    """
    arities = [k for k, f in structure.mults.items() if k != 2 and not f.is_zero]
    top = max([k for k in structure.mults if k > 2], default=None)
    if top is None or any(k != top for k in arities):
        raise ValueError("a skeletal structure has only μ2 and one higher product")
    n = top - 1
    E, mu2, m_map = extension_map(bimodule, shift=n - 1)
    if structure.module != E or structure.mult(2) != mu2:
        raise ValueError("μ2 is not the product of A ⊕ M for this bimodule")
    back = {v: k for k, v in m_map.items()}
    table = {args: value.rename_generators(back) for args, value in structure.mults[top].table.items()}
    return SkeletalData(bimodule, Cochain(top, ConfMap(bimodule.algebra.module, bimodule.module, top, 0, table)))


def apply_equivalence(data: SkeletalData, sigma: Cochain) -> SkeletalData:
    """
    μ'_{n+1} = μ_{n+1} + δσ for an n-cochain σ; the cohomology class is unchanged.
    """
    if sigma.n != data.n:
        raise ValueError(f"σ must be an {data.n}-cochain, got degree {sigma.n}")
    return SkeletalData(data.bimodule, data.theta + hochschild_delta(data.bimodule, sigma))


def to_two_term(data: SkeletalData, check: bool = True) -> TwoTermAInf:
    if data.n != 2:
        raise ValueError(f"only 3-cocycles give 2-term algebras, got n={data.n}")
    return TwoTermAInf.from_ainf(skeletal_from_cocycle(data, check))


def from_two_term(structure: TwoTermAInf, bimodule: ConformalBimodule) -> SkeletalData:
    if not structure.beta.is_zero:
        raise ValueError("a skeletal 2-term algebra has β = 0")
    return cocycle_from_skeletal(AInfStructure(structure.module, {2: structure.mu2, 3: structure.mu3}), bimodule)


class ConfTwoAlgebra:
    """
    Associative conformal 2-algebra: a linear category C1 ⇉ C0 over ℚ[∂] with a conformal product and an
    associator.

    Attributes:
        C0, C1 (GradedModule): objects and morphisms, degree 0.
        s, t (ConfMap): source and target, C1 -> C0.
        iota (ConfMap): identity morphisms, C0 -> C1.
        pi0 (ConfMap): product of objects, C0 ⊗ C0 -> C0[λ].
        pi1 (ConfMap): product of morphisms, C1 ⊗ C1 -> C1[λ].
        associator (ConfMap): 𝔸_{a,b,c}: a_λ(b_μ c) -> (a_λ b)_{λ+μ} c, C0^{⊗3} -> C1[λ, μ].

    Composition of f: x -> y and g: y -> z is f + g - ι(y).
    """

    def __init__(self, C0: GradedModule, C1: GradedModule, s: ConfMap, t: ConfMap, iota: ConfMap, pi0: ConfMap,
                 pi1: ConfMap, associator: ConfMap):
        if not C0.is_concentrated_in(0) or not C1.is_concentrated_in(0):
            raise ValueError("objects and morphisms of a conformal 2-algebra live in degree 0")
        self.C0 = C0
        self.C1 = C1
        self.s = _rehome(s, C1, C0)
        self.t = _rehome(t, C1, C0)
        self.iota = _rehome(iota, C0, C1)
        self.pi0 = _rehome(pi0, C0, C0)
        self.pi1 = _rehome(pi1, C1, C1)
        self.associator = _rehome(associator, C0, C1)
        for name, f, arity in (("s", self.s, 1), ("t", self.t, 1), ("iota", self.iota, 1), ("pi0", self.pi0, 2),
                               ("pi1", self.pi1, 2), ("associator", self.associator, 3)):
            if f.arity != arity or f.degree != 0:
                raise ValueError(f"{name} must have arity {arity} and degree 0, got {f.signature()}")

    def compose(self, first: PolyValue, second: PolyValue) -> PolyValue:
        """
        second ∘ first.
        @raise ValueError: t(first) differs from s(second)
        """
        middle = evaluate(self.t, [first])
        if middle != evaluate(self.s, [second]):
            raise ValueError("morphisms are not composable")
        return first + second - evaluate(self.iota, [middle])

    def __repr__(self):
        return f"ConfTwoAlgebra({self.C1.generators} => {self.C0.generators})"


def _chain(maps: list, t: ConfMap, iota: ConfMap) -> ConfMap:
    """Composite X_r ∘ ... ∘ X_1 of composable families of morphisms."""
    total = maps[0]
    for f in maps[1:]:
        total = total + f
    for f in maps[:-1]:
        total = total - insert(iota, 1, insert(t, 1, f))
    return total


def check_two_algebra(C: ConfTwoAlgebra) -> Report:
    """
    Category and functor axioms, interchange with composition, associator ends, naturality and the pentagon.
    """
    id0, id1 = identity_map(C.C0), identity_map(C.C1)
    unit_s = id1 - insert(C.iota, 1, C.s)
    unit_t = id1 - insert(C.iota, 1, C.t)
    A = C.associator
    items = [
        zero_report("unit-source", insert(C.s, 1, C.iota) - id0, arity=1),
        zero_report("unit-target", insert(C.t, 1, C.iota) - id0, arity=1),
        zero_report("functor-source", insert(C.s, 1, C.pi1) - multi_insert(C.pi0, [C.s, C.s]), arity=2),
        zero_report("functor-target", insert(C.t, 1, C.pi1) - multi_insert(C.pi0, [C.t, C.t]), arity=2),
        zero_report("functor-unit", multi_insert(C.pi1, [C.iota, C.iota]) - insert(C.iota, 1, C.pi0), arity=2),
        zero_report("interchange-left", multi_insert(C.pi1, [unit_s, unit_t]), arity=2),
        zero_report("interchange-right", multi_insert(C.pi1, [unit_t, unit_s]), arity=2),
        zero_report("associator-source", insert(C.s, 1, A) - insert(C.pi0, 2, C.pi0), arity=3),
        zero_report("associator-target", insert(C.t, 1, A) - insert(C.pi0, 1, C.pi0), arity=3),
    ]
    natural = (_chain([insert(C.pi1, 2, C.pi1), multi_insert(A, [C.t, C.t, C.t])], C.t, C.iota)
               - _chain([multi_insert(A, [C.s, C.s, C.s]), insert(C.pi1, 1, C.pi1)], C.t, C.iota))
    items.append(zero_report("naturality", natural, arity=3))
    pentagon = (_chain([insert(A, 3, C.pi0), insert(A, 1, C.pi0)], C.t, C.iota)
                - _chain([multi_insert(C.pi1, [C.iota, A]), insert(A, 2, C.pi0), multi_insert(C.pi1, [A, C.iota])],
                         C.t, C.iota))
    items.append(zero_report("pentagon", pentagon, arity=4))
    return Report.combine("two-algebra", items)


class TwoAlgebraMorphism:
    """
    Homomorphism (F, 𝔽): a linear functor F = (F0, F1) and 𝔽_{a,b}: F0(a)'_λ F0(b) -> F0(a_λ b).
    """

    def __init__(self, source: ConfTwoAlgebra, target: ConfTwoAlgebra, F0: ConfMap, F1: ConfMap, FF: ConfMap):
        self.source = source
        self.target = target
        self.F0 = _rehome(F0, source.C0, target.C0)
        self.F1 = _rehome(F1, source.C1, target.C1)
        self.FF = _rehome(FF, source.C0, target.C1)
        if (self.F0.arity, self.F1.arity, self.FF.arity) != (1, 1, 2):
            raise ValueError("F0 and F1 are linear and 𝔽 is binary")

    def __repr__(self):
        return f"TwoAlgebraMorphism({self.source!r} -> {self.target!r})"


def identity_two_alg_morphism(C: ConfTwoAlgebra) -> TwoAlgebraMorphism:
    return TwoAlgebraMorphism(C, C, identity_map(C.C0), identity_map(C.C1), insert(C.iota, 1, C.pi0))


def check_two_alg_morphism(morphism: TwoAlgebraMorphism) -> Report:
    """
    Functor axioms, ends and naturality of 𝔽, and the hexagon relating 𝔽 to both associators.
    """
    C, D = morphism.source, morphism.target
    F0, F1, FF = morphism.F0, morphism.F1, morphism.FF
    iota_F0 = insert(D.iota, 1, F0)
    items = [
        zero_report("functor-source", insert(D.s, 1, F1) - insert(F0, 1, C.s), arity=1),
        zero_report("functor-target", insert(D.t, 1, F1) - insert(F0, 1, C.t), arity=1),
        zero_report("functor-unit", insert(F1, 1, C.iota) - iota_F0, arity=1),
        zero_report("structure-source", insert(D.s, 1, FF) - multi_insert(D.pi0, [F0, F0]), arity=2),
        zero_report("structure-target", insert(D.t, 1, FF) - insert(F0, 1, C.pi0), arity=2),
    ]
    natural = (_chain([multi_insert(D.pi1, [F1, F1]), multi_insert(FF, [C.t, C.t])], D.t, D.iota)
               - _chain([multi_insert(FF, [C.s, C.s]), insert(F1, 1, C.pi1)], D.t, D.iota))
    items.append(zero_report("naturality", natural, arity=2))
    hexagon = (_chain([multi_insert(D.associator, [F0, F0, F0]), multi_insert(D.pi1, [FF, iota_F0]),
                       insert(FF, 1, C.pi0)], D.t, D.iota)
               - _chain([multi_insert(D.pi1, [iota_F0, FF]), insert(FF, 2, C.pi0), insert(F1, 1, C.associator)],
                        D.t, D.iota))
    items.append(zero_report("hexagon", hexagon, arity=3))
    return Report.combine("two-algebra-morphism", items)


def compose_two_alg_morphisms(G: TwoAlgebraMorphism, F: TwoAlgebraMorphism) -> TwoAlgebraMorphism:
    """
    (G∘F, 𝔾 ⋄ 𝔽) with (𝔾 ⋄ 𝔽)_{a,b} = G1(𝔽_{a,b}) ∘ 𝔾_{F0 a, F0 b}.
    """
    if F.target.C0 != G.source.C0 or F.target.C1 != G.source.C1:
        raise ValueError("homomorphisms are not composable")
    E = G.target
    FF = _chain([multi_insert(G.FF, [F.F0, F.F0]), insert(G.F1, 1, F.FF)], E.t, E.iota)
    return TwoAlgebraMorphism(F.source, E, insert(G.F0, 1, F.F0), insert(G.F1, 1, F.F1), FF)


def functor_S(structure: TwoTermAInf, check: bool = True) -> ConfTwoAlgebra:
    """
    C1 = A0 ⊕ A1 ⇉ A0 with s(a, h) = a, t(a, h) = a + βh,
    (a, h)_λ(b, k) = (a_λ b, a_λ k + h_λ b + (βh)_λ k) and 𝔸_{a,b,c} = (a_λ(b_μ c), μ3(a, b, c)).
    @raise ConstructionError: the input fails check_two_term
    """
    if check:
        report = check_two_term(structure)
        if not report:
            raise ConstructionError("input is not a 2-term A∞-conformal algebra", report)
    A0 = structure.A0
    C1 = _flat(structure.module)
    s = ConfMap(C1, A0, 1, 0, {(a,): {a: ONE} for a in A0.generators})
    t = ConfMap(C1, A0, 1, 0, {**s.table, **structure.beta.table})
    iota = ConfMap(A0, C1, 1, 0, {(a,): {a: ONE} for a in A0.generators})
    mu2 = structure.mu2
    pi0 = ConfMap(A0, A0, 2, 0, mu2.with_pattern((0, 0)).table)
    pi1 = _rehome(mu2, C1, C1) + _rehome(insert(mu2, 1, structure.beta).with_pattern((1, 1)), C1, C1, 0)
    associator = (_rehome(insert(mu2, 2, mu2).with_pattern((0, 0, 0)), A0, C1)
                  + _rehome(structure.mu3, A0, C1, 0))
    return ConfTwoAlgebra(A0, C1, s, t, iota, pi0, pi1, associator)


class _Splitting:
    """
    C1 ≅ ι(C0) ⊕ ker(s): the generators outside the image of ι, each g read as g - ιs(g).
    """

    def __init__(self, C: ConfTwoAlgebra):
        image = {}
        for a in C.C0.generators:
            value = C.iota.value((a,))
            items = list(value.items())
            if len(items) != 1 or items[0][1] != ONE:
                raise ValueError(f"ι must send the generator {a!r} to a single generator of C1")
            image[a] = items[0][0]
        if len(set(image.values())) != len(image):
            raise ValueError("ι must send distinct generators to distinct generators")
        rest = [g for g in C.C1.generators if g not in set(image.values())]
        clash = set(rest) & set(C.C0.generators)
        if clash:
            raise ValueError(f"generator names {sorted(clash)} are used both for objects and for ker(s)")
        self.A0 = C.C0
        self.A1 = GradedModule({1: rest})
        self.module = self.A0.direct_sum(self.A1)
        X = _flat(self.module)
        iota_s = insert(C.iota, 1, C.s)
        table = {(a,): C.iota.value((a,)) for a in C.C0.generators}
        for g in rest:
            table[(g,)] = PolyValue.generator(g) - iota_s.value((g,))
        self.embed = ConfMap(X, C.C1, 1, 0, table)
        self.project = ConfMap(C.C1, X, 1, 0, {(g,): {g: ONE} for g in rest})
        self.rest = set(rest)


def functor_T(C: ConfTwoAlgebra, check: bool = True) -> TwoTermAInf:
    """
    A0 = C0, A1 = ker(s), β = t restricted to ker(s), μ2(a, h) = pr(1_a λ h), μ2(h, a) = pr(h λ 1_a) and
    μ3 = pr(𝔸), pr the projection onto ker(s) along ι(C0).
    @raise ConstructionError: C fails check_two_algebra
    @raise ValueError: ι does not split C1 on generators
    """
    if check:
        report = check_two_algebra(C)
        if not report:
            raise ConstructionError("input is not a conformal 2-algebra", report)
    split = _Splitting(C)
    A = split.module
    beta = ConfMap(A, A, 1, -1, {(g,): evaluate(C.t, [PolyValue.generator(g)]) - evaluate(C.s, [
        PolyValue.generator(g)]) for g in split.rest})
    mixed = insert(split.project, 1, multi_insert(C.pi1, [split.embed, split.embed]))
    mixed = mixed.restricted(lambda args: sum(a in split.rest for a in args) == 1)
    mu2 = ConfMap(A, A, 2, 0, {**C.pi0.table, **mixed.table})
    mu3 = _rehome(insert(split.project, 1, C.associator), A, A, 1)
    return TwoTermAInf(split.A0, split.A1, beta, mu2, mu3)


def upsilon(C: ConfTwoAlgebra, check: bool = True) -> TwoAlgebraMorphism:
    """
    Υ_C: S(T(C)) -> C with (Υ_C)_0 = id, (Υ_C)_1(a, m) = 1_a + m and identity structure morphisms.
    """
    source = functor_S(functor_T(C, check), check)
    split = _Splitting(C)
    return TwoAlgebraMorphism(source, C, identity_map(C.C0), split.embed, insert(C.iota, 1, C.pi0))


def functor_S_morphism(f: TwoTermMorphism, check: bool = True) -> TwoAlgebraMorphism:
    """
    F = (f0, f0 ⊕ f1), 𝔽_{a,b} = (f0(a)_λ f0(b), f2(a, b)).
    """
    C, D = functor_S(f.source, check), functor_S(f.target, check)
    F0 = _rehome(f.f0, C.C0, D.C0)
    F1 = _rehome(f.F, C.C1, D.C1)
    FF = insert(D.iota, 1, multi_insert(D.pi0, [F0, F0])) + _rehome(f.f2.with_pattern((0, 0)), C.C0, D.C1, 0)
    return TwoAlgebraMorphism(C, D, F0, F1, FF)


def functor_T_morphism(morphism: TwoAlgebraMorphism, check: bool = True) -> TwoTermMorphism:
    """
    f0 = F0, f1 = pr F1 on ker(s), f2 = pr(𝔽) = 𝔽 - 1_{s(𝔽)}.
    """
    source, target = functor_T(morphism.source, check), functor_T(morphism.target, check)
    split, split_t = _Splitting(morphism.source), _Splitting(morphism.target)
    F1 = insert(split_t.project, 1, insert(morphism.F1, 1, split.embed))
    f1 = F1.restricted(lambda args: args[0] in split.rest)
    f2 = insert(split_t.project, 1, morphism.FF)
    return TwoTermMorphism(source, target, morphism.F0, f1, f2)


__all__ = [
    "TwoTermAInf", "TwoTermMorphism", "SkeletalData", "ConfTwoAlgebra", "TwoAlgebraMorphism", "check_two_term",
    "identity_morphism", "check_morphism", "compose_morphisms", "skeletal_from_cocycle", "cocycle_from_skeletal",
    "apply_equivalence", "to_two_term", "from_two_term", "check_two_algebra", "identity_two_alg_morphism",
    "check_two_alg_morphism", "compose_two_alg_morphisms", "functor_S", "functor_T", "upsilon",
    "functor_S_morphism", "functor_T_morphism",
]
