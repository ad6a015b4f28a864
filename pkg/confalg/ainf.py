"""
A∞-conformal and A∞[1]-conformal structures.

Cochains of the graded Lie algebra are families: dictionaries arity -> ConfMap, all of one map degree.
"""
import itertools
import math

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from confalg.assocconf import AssocConfAlgebra, ConformalBimodule, Cochain, adjoint_bimodule, extension_map, \
    hochschild_delta
from confalg.confmap import ConfMap, diamond, evaluate, insert, multi_insert, zero_report
from confalg.confmod import GradedModule, ModElement, PolyValue
from confalg.polyring import RING, degree_in, is_d_only
from confalg.utils import ConstructionError, Report, log_message


def _check_family(module: GradedModule, mults: dict, degree_of) -> dict:
    family = {}
    for k, f in mults.items():
        k = int(k)
        if f.arity != k:
            raise ValueError(f"map stored under arity {k} has arity {f.arity}")
        if f.source != module or f.target != module:
            raise ValueError(f"map of arity {k} does not act on the structure module")
        if f.degree != degree_of(k):
            raise ValueError(f"map of arity {k} has degree {f.degree}, expected {degree_of(k)}")
        family[k] = f
    return dict(sorted(family.items()))


class AInfStructure:
    """
    A∞-conformal algebra: μ_k of degree k-2 for finitely many k.
    """

    def __init__(self, module: GradedModule, mults: dict):
        self.module = module
        self.mults = _check_family(module, mults, lambda k: k - 2)

    def mult(self, k: int) -> ConfMap:
        return self.mults.get(k) or ConfMap.zero(self.module, self.module, k, k - 2)

    def __repr__(self):
        return f"AInfStructure({self.module}, arities {list(self.mults)})"


class AInf1Structure:
    """
    A∞[1]-conformal algebra: ρ_k of degree -1 for finitely many k.
    """

    def __init__(self, module: GradedModule, mults: dict):
        self.module = module
        self.mults = _check_family(module, mults, lambda k: -1)

    def mult(self, k: int) -> ConfMap:
        return self.mults.get(k) or ConfMap.zero(self.module, self.module, k, -1)

    def __repr__(self):
        return f"AInf1Structure({self.module}, arities {list(self.mults)})"


def ainf_identity(mults: dict, n: int):
    """
    Σ_{k+l=n+1} Σ_i (-1)^{i(l+1)} μ_k ∘_i μ_l; the Koszul part (-1)^{l(|a1|+...)} comes from insert.
    @return: the ConfMap of arity n, or None when no term exists
    """
    total = None
    for k in range(1, n + 1):
        l = n + 1 - k
        if k not in mults or l not in mults:
            continue
        for i in range(1, k + 1):
            term = insert(mults[k], i, mults[l])
            if i * (l + 1) % 2:
                term = -term
            total = term if total is None else total + term
    return total


def ainf1_identity(mults: dict, n: int):
    total = None
    for k in range(1, n + 1):
        l = n + 1 - k
        if k in mults and l in mults:
            term = diamond(mults[k], mults[l])
            total = term if total is None else total + term
    return total


def _graded_report(check: str, identity, up_to_n: int, verbose: int = 0, predicate=None) -> Report:
    if up_to_n < 1:
        raise ValueError(f"up_to_n must be at least 1, got {up_to_n}")
    for n in range(1, up_to_n + 1):
        value = identity(n)
        log_message(f"{check}: identity n={n} expanded", verbose)
        if value is None:
            continue
        if predicate is not None:
            value = value.restricted(predicate)
        report = zero_report(check, value, arity=n)
        if not report:
            return report
    return Report(check, True)


def check_ainf(structure: AInfStructure, up_to_n: int, verbose: int = 0) -> Report:
    return _graded_report("ainf", lambda n: ainf_identity(structure.mults, n), up_to_n, verbose)


def check_ainf1(structure: AInf1Structure, up_to_n: int, verbose: int = 0) -> Report:
    return _graded_report("ainf1", lambda n: ainf1_identity(structure.mults, n), up_to_n, verbose)


def j_products_ainf(f: ConfMap) -> dict:
    """
    J-products: f = Σ_J λ^J / J! f_(J).
    @return: J (tuple of k-1 exponents) -> {generator tuple -> ModElement}
    """
    k = f.arity
    result = {}
    for args, value in f.table.items():
        for gen, poly in value.items():
            for monom, c in poly.items():
                J = tuple(monom[1:k])
                weight = math.prod(math.factorial(j) for j in J)
                exps = [0] * RING.ngens
                exps[0] = monom[0]
                term = RING.from_dict({tuple(exps): c * weight})
                entries = result.setdefault(J, {})
                current = entries.get(args, ModElement())
                entries[args] = current + ModElement({gen: term})
    return {J: {args: e for args, e in entries.items() if not e.is_zero} for J, entries in sorted(result.items())}


def from_j_products_ainf(products: dict, source: GradedModule, target: GradedModule, arity: int,
                         degree: int) -> ConfMap:
    table = {}
    for J, entries in products.items():
        exps = [0] * RING.ngens
        for i, j in enumerate(J):
            exps[i + 1] = j
        weight = RING.from_dict({tuple(exps): QQ(1, math.prod(math.factorial(j) for j in J))})
        for args, element in entries.items():
            value = PolyValue(element.coords) * weight
            table[args] = table[args] + value if args in table else value
    return ConfMap(source, target, arity, degree, table)


def check_ainf_j(structure: AInfStructure, up_to_n: int) -> Report:
    """
    The A∞ identities read J-product by J-product; the witness names the first nonzero multi-index.
    """
    for n in range(1, up_to_n + 1):
        value = ainf_identity(structure.mults, n)
        if value is None:
            continue
        products = j_products_ainf(value)
        index = {name: i for i, name in enumerate(structure.module.generators)}
        for J, entries in products.items():
            if entries:
                args = min(entries, key=lambda a: tuple(index[x] for x in a))
                return Report("ainf-j", False, arity=n, witness=args,
                              difference=f"J={J}: {entries[args].to_text()}")
    return Report("ainf-j", True)


def from_assoc(algebra: AssocConfAlgebra) -> AInfStructure:
    return AInfStructure(algebra.module, {2: algebra.mult})


def dga_to_ainf(module: GradedModule, d: ConfMap, mult: ConfMap) -> AInfStructure:
    """
    μ1 = d, μ2 = mult; d² = 0, the Leibniz rule and associativity are verified.
    @raise ConstructionError: with the failing identity's report
    """
    structure = AInfStructure(module, {1: d, 2: mult})
    report = check_ainf(structure, 3)
    if not report:
        raise ConstructionError("not a differential graded associative conformal algebra", report)
    return structure


def doubled_ainf(algebra: AssocConfAlgebra) -> AInfStructure:
    """
    A ⊕ A' with A' a degree-1 copy, μ1 = id: A' -> A, μ2 the multiplication on every degree-compatible pair.
    """
    E, mu2, m_map = extension_map(adjoint_bimodule(algebra), shift=1)
    mu1 = ConfMap(E, E, 1, -1, {(m_map[a],): {a: RING.one} for a in algebra.module.generators})
    return AInfStructure(E, {1: mu1, 2: mu2})


def _algebra_morphism_report(A: AssocConfAlgebra, B: AssocConfAlgebra, f: ConfMap) -> Report:
    return zero_report("morphism", insert(f, 1, A.mult) - multi_insert(B.mult, [f, f]), arity=2)


def kernel_ainf(A: AssocConfAlgebra, B: AssocConfAlgebra, f: ConfMap, prefix: str = "k") -> AInfStructure:
    """
    A ⊕ ker f with ker f in degree 1, μ1 the inclusion and μ2 the multiplication.

    f must send generators to ℚ-linear combinations of generators; ker f then has a basis of ℚ-combinations
    k1, k2, ... read off the reduced row echelon form of the kernel.
    """
    if f.arity != 1 or f.degree != 0 or f.source != A.module or f.target != B.module:
        raise ValueError("f must be a degree-0 linear map A -> B")
    for args, value in f.table.items():
        if any(degree_in(p, 0) > 0 or not is_d_only(p) for _, p in value.items()):
            raise ValueError(f"f({args[0]}) must be a constant combination of generators")
    report = _algebra_morphism_report(A, B, f)
    if not report:
        raise ConstructionError("f is not a morphism of associative conformal algebras", report)
    names = A.module.generators
    targets = B.module.generators
    entries = [[_constant(f.value((a,)).get(b)) for a in names] for b in targets]
    if entries:
        kernel = DomainMatrix(entries, (len(targets), len(names)), QQ).nullspace()
        rows = kernel.rref()[0].to_list() if kernel.shape[0] else []
    else:
        rows = [[QQ(1) if i == j else QQ(0) for i in range(len(names))] for j in range(len(names))]
    pivots = [next(i for i, c in enumerate(row) if c) for row in rows]
    k_names = [f"{prefix}{j + 1}" for j in range(len(rows))]
    E = A.module.direct_sum(GradedModule({1: k_names}))

    def embed(j):
        return {names[i]: RING(c) for i, c in enumerate(rows[j]) if c}

    def to_kernel(value: PolyValue) -> PolyValue:
        coords = {k_names[j]: value.get(names[pivots[j]]) for j in range(len(rows))}
        rebuilt = PolyValue()
        for j, poly in enumerate(coords.values()):
            rebuilt = rebuilt + PolyValue(embed(j)) * poly
        if rebuilt != value:
            raise RuntimeError(f"{value.to_text()} does not lie in ker f")
        return PolyValue(coords)

    kernel_elements = {k_names[j]: PolyValue(embed(j)) for j in range(len(rows))}
    mult = A.mult
    table = dict(mult.table)
    for a in names:
        x = PolyValue.generator(a)
        for k, element in kernel_elements.items():
            table[(a, k)] = to_kernel(_bilinear(mult, x, element))
            table[(k, a)] = to_kernel(_bilinear(mult, element, x))
    mu1 = ConfMap(E, E, 1, -1, {(k,): element for k, element in kernel_elements.items()})
    mu2 = ConfMap(E, E, 2, 0, table)
    return AInfStructure(E, {1: mu1, 2: mu2})


def _constant(poly):
    return dict(poly).get((0,) * RING.ngens, QQ(0))


def _bilinear(f: ConfMap, x: PolyValue, y: PolyValue) -> PolyValue:
    return evaluate(f, [x, y])


def phi_extension(bimodule: ConformalBimodule, phi: Cochain) -> AInfStructure:
    """
    A ⊕ M (M in degree 1) with μ2 the algebra and bimodule products and μ3 = δφ for a 2-cochain φ:
    μ3(a, b, c) = a_λ φ_μ(b, c) - φ_{λ+μ}(a_λ b, c) + φ_λ(a, b_μ c) - φ_λ(a, b)_{λ+μ} c.
    """
    if phi.n != 2:
        raise ValueError(f"φ must be a 2-cochain, got degree {phi.n}")
    E, mu2, m_map = extension_map(bimodule, shift=1)
    delta = hochschild_delta(bimodule, phi).body
    mu3 = ConfMap(E, E, 3, 1, {args: value.rename_generators(m_map) for args, value in delta.table.items()})
    return AInfStructure(E, {2: mu2, 3: mu3})


def shift_sign(degrees) -> int:
    """
    (-1)^{k(k-1)/2 + Σ_j (k-j)|a_j|} for unshifted degrees |a_1|..|a_k|.
    """
    k = len(degrees)
    exponent = k * (k - 1) // 2 + sum((k - j) * d for j, d in enumerate(degrees, start=1))
    return -1 if exponent % 2 else 1


def shift_map(f: ConfMap) -> ConfMap:
    """
    s ∘ f ∘ (s⁻¹)^{⊗k} with the sign of shift_sign; the map degree becomes degree + 1 - k.
    """
    table = {args: value * shift_sign([f.source.degree(a) for a in args]) for args, value in f.table.items()}
    return ConfMap(f.source.degree_shift(1), f.target.degree_shift(1), f.arity, f.degree + 1 - f.arity, table)


def unshift_map(f: ConfMap) -> ConfMap:
    table = {args: value * shift_sign([f.source.degree(a) - 1 for a in args]) for args, value in f.table.items()}
    return ConfMap(f.source.degree_shift(-1), f.target.degree_shift(-1), f.arity, f.degree + f.arity - 1, table)


def shift(structure: AInfStructure) -> AInf1Structure:
    return AInf1Structure(structure.module.degree_shift(1),
                          {k: shift_map(f) for k, f in structure.mults.items()})


def unshift(structure: AInf1Structure) -> AInfStructure:
    return AInfStructure(structure.module.degree_shift(-1),
                         {k: unshift_map(f) for k, f in structure.mults.items()})


def as_family(value) -> dict:
    if isinstance(value, ConfMap):
        return {value.arity: value}
    if isinstance(value, (AInfStructure, AInf1Structure)):
        return dict(value.mults)
    return {int(k): f for k, f in value.items()}


def family_degree(family: dict):
    """
    @return: the common map degree, None for an empty family
    @raise ValueError: the family is not homogeneous
    """
    degrees = {f.degree for f in family.values()}
    if len(degrees) > 1:
        raise ValueError(f"family is not homogeneous, map degrees {sorted(degrees)}")
    return degrees.pop() if degrees else None


def family_add(*families, signs=None) -> dict:
    total = {}
    for idx, family in enumerate(families):
        sign = signs[idx] if signs else 1
        for k, f in as_family(family).items():
            term = f * sign if sign != 1 else f
            total[k] = total[k] + term if k in total else term
    return {k: f for k, f in sorted(total.items()) if not f.is_zero}


def family_is_zero(family: dict) -> bool:
    return all(f.is_zero for f in as_family(family).values())


def family_equal(first, second) -> bool:
    return family_is_zero(family_add(first, second, signs=[1, -1]))


def gla_bracket(phi, psi, up_to: int = None) -> dict:
    """
    ⟦φ, ψ⟧_p = Σ_{k+l=p+1} (φ_k ⋄ ψ_l - (-1)^{mn} ψ_l ⋄ φ_k) for homogeneous families of degrees m, n.
    @param up_to: skip output arities above this bound
    """
    phi, psi = as_family(phi), as_family(psi)
    m, n = family_degree(phi), family_degree(psi)
    if m is None or n is None:
        return {}
    sign = -1 if m * n % 2 else 1
    result = {}
    for (k, f), (l, g) in itertools.product(phi.items(), psi.items()):
        p = k + l - 1
        if up_to is not None and p > up_to:
            continue
        term = diamond(f, g) - diamond(g, f) * sign
        result[p] = result[p] + term if p in result else term
    return {p: f for p, f in sorted(result.items()) if not f.is_zero}


def maurer_cartan_report(structure: AInf1Structure, up_to_n: int) -> Report:
    bracket = gla_bracket(structure.mults, structure.mults, up_to=up_to_n)
    for n in range(1, up_to_n + 1):
        if n in bracket:
            report = zero_report("maurer-cartan", bracket[n], arity=n)
            if not report:
                return report
    return Report("maurer-cartan", True)


def is_maurer_cartan(structure: AInf1Structure, up_to_n: int) -> bool:
    """
    ⟦ρ, ρ⟧ = 2 Σ ρ_k ⋄ ρ_l vanishes in every arity up to up_to_n.
    """
    return bool(maurer_cartan_report(structure, up_to_n))


def cohomology_delta(structure: AInf1Structure, phi) -> dict:
    """
    δ_ρ(φ) = (-1)^{n-1} ⟦ρ, φ⟧ for φ of cochain degree n, i.e. of map degree 1 - n.
    """
    phi = as_family(phi)
    degree = family_degree(phi)
    if degree is None:
        return {}
    bracket = gla_bracket(structure.mults, phi)
    return family_add(bracket, signs=[-1]) if degree % 2 else bracket


def hochschild_sign(arity: int) -> int:
    """
    δ_ρ(shift φ) = hochschild_sign(l) · shift(δφ) for an l-cochain φ of an associative conformal algebra.
    """
    return 1 if arity % 2 else -1


class AInfRepresentation:
    """
    Representation ℳ of an A∞-conformal algebra 𝒜: maps η_k on 𝒜 ⊕ ℳ -> ℳ of degree k-2, each entry having
    exactly one ℳ argument.
    """

    def __init__(self, base: AInfStructure, module: GradedModule, actions: dict):
        self.base = base
        self.module = module
        self.total_module = base.module.direct_sum(module)
        m_names = set(module.generators)
        family = {}
        for k, eta in actions.items():
            k = int(k)
            if eta.arity != k or eta.degree != k - 2:
                raise ValueError(f"action of arity {k} must have arity {k} and degree {k - 2}")
            if eta.source != self.total_module or eta.target != module:
                raise ValueError(f"action of arity {k} must map 𝒜 ⊕ ℳ to ℳ")
            for args in eta.table:
                if sum(a in m_names for a in args) != 1:
                    raise ValueError(f"action entry {args} must have exactly one ℳ argument")
            family[k] = eta
        self.actions = dict(sorted(family.items()))

    def __repr__(self):
        return f"AInfRepresentation({self.module.generators}, arities {list(self.actions)})"


def _theta(representation: AInfRepresentation) -> dict:
    E = representation.total_module
    theta = {}
    for k in set(representation.base.mults) | set(representation.actions):
        total = ConfMap.zero(E, E, k, k - 2)
        if k in representation.base.mults:
            total = total + representation.base.mults[k].with_modules(E, E)
        if k in representation.actions:
            total = total + representation.actions[k].with_modules(target=E)
        theta[k] = total
    return theta


def check_representation(representation: AInfRepresentation, up_to_n: int = 4, verbose: int = 0) -> Report:
    """
    The A∞ identities of 𝒜 ⊕ ℳ on tuples with exactly one ℳ argument.
    """
    theta = _theta(representation)
    m_names = set(representation.module.generators)
    return _graded_report("representation", lambda n: ainf_identity(theta, n), up_to_n, verbose,
                          predicate=lambda args: sum(a in m_names for a in args) == 1)


def semidirect(structure: AInfStructure, representation: AInfRepresentation, up_to_n: int = 4) -> AInfStructure:
    """
    θ_k = μ_k + η_k on 𝒜 ⊕ ℳ.
    @raise ConstructionError: the representation identities fail up to up_to_n
    """
    if representation.base is not structure and representation.base.module != structure.module:
        raise ValueError("representation is over a different structure")
    report = check_representation(representation, up_to_n)
    if not report:
        raise ConstructionError("representation axioms fail", report)
    return AInfStructure(representation.total_module, _theta(representation))


def adjoint_representation(structure: AInfStructure, suffix: str = "'") -> AInfRepresentation:
    """
    ℳ = renamed copy of 𝒜, η_k(..., m, ...) = μ_k(..., m, ...) with the output renamed.
    """
    rename = {g: f"{g}{suffix}" for g in structure.module.generators}
    module = structure.module.rename(rename)
    E = structure.module.direct_sum(module)
    actions = {}
    for k, mu in structure.mults.items():
        table = {}
        for args, value in mu.table.items():
            out = value.rename_generators(rename)
            for p in range(k):
                key = args[:p] + (rename[args[p]],) + args[p + 1:]
                table[key] = table[key] + out if key in table else out
        actions[k] = ConfMap(E, module, k, k - 2, table)
    return AInfRepresentation(structure, module, actions)


def representation_from_bimodule(bimodule: ConformalBimodule) -> AInfRepresentation:
    """
    A conformal bimodule as a representation of from_assoc(A) with η2 = both actions.
    """
    base = from_assoc(bimodule.algebra)
    E, total, m_map = extension_map(bimodule)
    module = E.restrict([m_map[g] for g in bimodule.module.generators])
    m_names = set(module.generators)
    eta = total.restricted(lambda args: sum(a in m_names for a in args) == 1).with_modules(target=module)
    return AInfRepresentation(base, module, {2: eta})


def restrict_to_coefficients(structure: AInfStructure, representation: AInfRepresentation, phi) -> dict:
    """
    δ of the semidirect product on a cochain with values in ℳ.

    φ is a family of maps 𝒜[-1]^{⊗l} -> ℳ[-1] (shifted modules); it is extended by zero to 𝒜 ⊕ ℳ, hit with
    δ_Θ of shift(semidirect) and restricted back to 𝒜-tuples.
    @raise ValueError: φ is not a family of maps 𝒜[-1] -> ℳ[-1]
    @raise RuntimeError: the image leaves ℳ[-1]
    """
    A1 = structure.module.degree_shift(1)
    M1 = representation.module.degree_shift(1)
    phi = as_family(phi)
    for k, f in phi.items():
        if f.source != A1 or f.target != M1:
            raise ValueError(f"cochain component of arity {k} does not map 𝒜[-1] into ℳ[-1]")
    if family_is_zero(phi):
        return {}
    big = shift(semidirect(structure, representation))
    E1 = big.module
    extended = {k: f.with_modules(E1, E1) for k, f in phi.items()}
    image = cohomology_delta(big, extended)
    a_names = set(A1.generators)
    result = {}
    for k, f in image.items():
        part = f.restricted(lambda args: all(a in a_names for a in args))
        for args, value in part.table.items():
            stray = [g for g in value.coords if g not in M1]
            if stray:
                raise RuntimeError(f"δ leaves the coefficient subspace at {args}: {stray}")
        if not part.is_zero:
            result[k] = part.with_modules(A1, M1)
    return result


def cochain_to_family(cochain: Cochain, bimodule: ConformalBimodule) -> dict:
    """
    An l-cochain of A with values in M as a shifted family A[-1] -> M'[-1] (M' renamed as in extension_map).
    """
    _, _, m_map = extension_map(bimodule)
    body = cochain.body
    A = bimodule.algebra.module
    M = bimodule.module.rename(m_map)
    renamed = ConfMap(A, M, body.arity, 0, {args: v.rename_generators(m_map) for args, v in body.table.items()})
    return {body.arity: shift_map(renamed)}


def mutate_sign(f: ConfMap, args) -> ConfMap:
    """
    f with the sign of one table entry flipped; used to build failing corpora.
    """
    args = tuple(args)
    if args not in f.table:
        raise ValueError(f"no entry {args} to mutate")
    table = dict(f.table)
    table[args] = -table[args]
    return ConfMap(f.source, f.target, f.arity, f.degree, table)
