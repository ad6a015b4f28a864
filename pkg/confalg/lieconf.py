"""
Lie conformal algebras, conformal modules, the CNR bracket, the Lie conformal differential and
L∞ / L∞[1]-conformal structures.
"""
import itertools

from confalg.ainf import AInfStructure, family_add, family_degree
from confalg.assocconf import AssocConfAlgebra, Cochain, coordinate_matrix, cochain_coordinates, combine_basis, \
    kernel_vectors
from confalg.confmap import ConfMap, evaluate_at, insert, is_symmetric, permute, shuffle_compose, signed_permute, \
    symmetrize, zero_report
from confalg.confmod import GradedModule, ModElement, PolyValue
from confalg.polyring import D, L, ZERO, monomial, rational
from confalg.utils import ConstructionError, Report, log_message


class LieConfAlgebra:
    """
    Lie conformal algebra: a free module in degree 0 with a λ-bracket [x_λ y].
    """

    def __init__(self, module: GradedModule, bracket: ConfMap):
        if not module.is_concentrated_in(0):
            raise ValueError(f"Lie conformal algebra must live in degree 0, got {module}")
        if bracket.arity != 2 or bracket.degree != 0 or bracket.source != module or bracket.target != module:
            raise ValueError(f"bracket must be a binary degree-0 map on the module, got {bracket.signature()}")
        self.module = module
        self.bracket = bracket

    def __repr__(self):
        return f"LieConfAlgebra({self.module.generators})"


def jacobi_defect(bracket: ConfMap) -> ConfMap:
    """
    [x_λ[y_μ z]] - [[x_λ y]_{λ+μ} z] - [y_μ[x_λ z]].
    """
    nested = insert(bracket, 2, bracket)
    return nested - insert(bracket, 1, bracket) - permute(nested, (2, 1, 3))


def check_lie(algebra: LieConfAlgebra) -> Report:
    """
    Skew-symmetry [x_λ y] = -[y_{-λ-∂} x] and the conformal Jacobi identity on generators.
    """
    bracket = algebra.bracket
    skew = zero_report("skew-symmetry", bracket + permute(bracket, (2, 1)), arity=2)
    jacobi = zero_report("jacobi", jacobi_defect(bracket), arity=3)
    return Report.combine("lie", [skew, jacobi])


def virasoro() -> LieConfAlgebra:
    """[l_λ l] = (∂ + 2λ) l."""
    module = GradedModule({0: ["l"]})
    return LieConfAlgebra(module, ConfMap(module, module, 2, 0, {("l", "l"): {"l": D + 2 * L(1)}}))


def cur_lie(generators: list, constants: dict) -> LieConfAlgebra:
    """
    Current Lie conformal algebra [x_λ y] = [x, y] of a finite-dimensional Lie algebra.
    @raise ConstructionError: the constants violate antisymmetry or Jacobi
    """
    module = GradedModule({0: list(generators)})
    table = {tuple(pair): PolyValue({c: rational(v) for c, v in product.items()})
             for pair, product in constants.items()}
    algebra = LieConfAlgebra(module, ConfMap(module, module, 2, 0, table))
    report = check_lie(algebra)
    if not report:
        raise ConstructionError("structure constants do not define a Lie algebra", report)
    return algebra


def sl2_constants() -> tuple:
    return ["e", "h", "f"], {
        ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
        ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
        ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
    }


def cur_sl2() -> LieConfAlgebra:
    return cur_lie(*sl2_constants())


def skew_symmetrize_assoc(algebra: AssocConfAlgebra) -> LieConfAlgebra:
    """[a_λ b] = a_λ b - b_{-∂-λ} a."""
    return LieConfAlgebra(algebra.module, symmetrize(algebra.mult, "skew"))


class ConformalLModule:
    """
    Conformal module M over a Lie conformal algebra; the action x_λ v maps L ⊕ M to M with entries on (x, v).
    A module equal to the algebra module is the adjoint one and its action must be the bracket.
    """

    def __init__(self, algebra: LieConfAlgebra, module: GradedModule, action: ConfMap):
        self.algebra = algebra
        self.module = module
        self.adjoint = module == algebra.module
        if self.adjoint:
            if action != algebra.bracket:
                raise ValueError("a module on the algebra module itself must be the adjoint one; rename M otherwise")
        else:
            total = algebra.module.direct_sum(module)
            if action.source != total or action.target != module or action.arity != 2 or action.degree != 0:
                raise ValueError("action must be a binary degree-0 map L ⊕ M -> M")
            l_names = set(algebra.module.generators)
            for args in action.table:
                if not (args[0] in l_names and args[1] not in l_names):
                    raise ValueError(f"action has an entry on {args}")
        self.action = action

    def __repr__(self):
        return f"ConformalLModule({self.algebra.module.generators} | {self.module.generators})"


def adjoint_module(algebra: LieConfAlgebra) -> ConformalLModule:
    return ConformalLModule(algebra, algebra.module, algebra.bracket)


def lie_extension(lmodule: ConformalLModule, shift: int = 0, suffix: str = None) -> tuple:
    """
    L ⊕ M' with M' the renamed (default "'" for the adjoint module) copy of M moved to degree `shift`.

    @return: (L ⊕ M', bracket + action, semidirect bracket π⋉, renaming M -> M')
    """
    lie = lmodule.algebra.module
    if suffix is None and lmodule.adjoint:
        suffix = "'"
    m_map = {g: f"{g}{suffix}" if suffix else g for g in lmodule.module.generators}
    E = lie.direct_sum(lmodule.module.rename(m_map).degree_shift(shift))
    bracket = lmodule.algebra.bracket.with_modules(E, E)
    act = ConfMap(E, E, 2, 0, {(x, m_map[v]): value.rename_generators(m_map)
                               for (x, v), value in lmodule.action.table.items()})
    return E, bracket + act, bracket + act + signed_permute(act, (2, 1), skew=True), m_map


def check_module(lmodule: ConformalLModule) -> Report:
    """
    x_λ(y_μ v) - y_μ(x_λ v) = [x_λ y]_{λ+μ} v on generators.
    """
    if lmodule.adjoint:
        return zero_report("module", jacobi_defect(lmodule.algebra.bracket), arity=3)
    E, total, _, m_map = lie_extension(lmodule)
    m_names = set(m_map.values())
    defect = jacobi_defect(total).restricted(
        lambda args: args[0] not in m_names and args[1] not in m_names and args[2] in m_names)
    return zero_report("module", defect, arity=3)


def cnr_product(f: ConfMap, g: ConfMap) -> ConfMap:
    """
    f ⋄ g = Σ_{σ ∈ Sh(m, n-1)} sgn(σ) f(g(x_σ(1), ..., x_σ(m)), x_σ(m+1), ...).
    """
    return shuffle_compose(f, g, skew=True, koszul=False)


def cnr_bracket(f: ConfMap, g: ConfMap, check: bool = True) -> ConfMap:
    """
    [f, g] = f ⋄ g - (-1)^{(m-1)(n-1)} g ⋄ f for skew maps of arities n, m.
    @raise ValueError: an argument is not skew-symmetric
    """
    if check:
        for name, h in (("first", f), ("second", g)):
            if not is_symmetric(h, "skew"):
                raise ValueError(f"{name} argument of the CNR bracket is not skew-symmetric")
    n, m = f.arity, g.arity
    swapped = cnr_product(g, f)
    if (m - 1) * (n - 1) % 2 == 0:
        swapped = -swapped
    return cnr_product(f, g) + swapped


def _as_lmodule(coefficients) -> ConformalLModule:
    if isinstance(coefficients, LieConfAlgebra):
        return adjoint_module(coefficients)
    if isinstance(coefficients, ConformalLModule):
        return coefficients
    raise TypeError(f"coefficients must be a LieConfAlgebra or ConformalLModule, got {type(coefficients).__name__}")


def _explicit_lie_delta(generators: list, total: ConfMap, phi: ConfMap, n: int) -> dict:
    lam = [L(i) for i in range(1, n + 1)]
    lam_total = sum(lam, ZERO)
    table = {}
    for args in itertools.product(generators, repeat=n + 1):
        X = [PolyValue.generator(a) for a in args]
        value = PolyValue()
        for i in range(n):
            inner = evaluate_at(phi, X[:i] + X[i + 1:], lam[:i] + lam[i + 1:])
            term = evaluate_at(total, [X[i], inner], [lam[i]])
            value = value + term if i % 2 == 0 else value - term
        inner = evaluate_at(phi, X[:n], lam[:n - 1])
        term = evaluate_at(total, [X[n], inner], [-D - lam_total])
        value = value + term if n % 2 == 0 else value - term
        for i, j in itertools.combinations(range(n), 2):
            bracket = evaluate_at(total, [X[i], X[j]], [lam[i]])
            others = [X[t] for t in range(n + 1) if t not in (i, j)]
            slots = [lam[i] + lam[j]] + [lam[t] for t in range(n) if t not in (i, j)]
            term = evaluate_at(phi, [bracket] + others, slots)
            value = value + term if (i + j) % 2 == 0 else value - term
        for i in range(n):
            bracket = evaluate_at(total, [X[i], X[n]], [lam[i]])
            others = [X[t] for t in range(n) if t != i]
            rest = [lam[t] for t in range(n) if t != i]
            slots = [-D - sum(rest, ZERO)] + rest[:-1] if n > 1 else []
            term = evaluate_at(phi, [bracket] + others, slots)
            value = value + term if (i + n) % 2 == 0 else value - term
        if not value.is_zero:
            table[args] = value
    return table


def lie_delta(coefficients, cochain: Cochain, verify: bool = True) -> Cochain:
    """
    Lie conformal differential with coefficients in the adjoint module (pass the algebra) or a module.

    For n >= 1 both the explicit formula and the CNR route (-1)^{n-1} [π⋉, φ] are evaluated and compared.
    @raise ValueError: φ is not skew-symmetric or does not map L into M
    @raise RuntimeError: the two routes disagree
    """
    lmodule = _as_lmodule(coefficients)
    lie, M = lmodule.algebra.module, lmodule.module
    E, total, pi, m_map = lie_extension(lmodule)
    back = {v: k for k, v in m_map.items()}
    M_renamed = E.restrict(list(m_map.values()))
    if cochain.n == 0:
        v = cochain.body.rename_generators(m_map)
        table = {}
        for x in lie.generators:
            table[(x,)] = evaluate_at(total, [PolyValue.generator(x), v], [-D]).rename_generators(back)
        return Cochain(1, ConfMap(lie, M, 1, 0, table))

    phi = cochain.body
    n = cochain.n
    if phi.source != lie or phi.target != M:
        raise ValueError("cochain does not map the Lie algebra into the module")
    if not is_symmetric(phi, "skew"):
        raise ValueError("Lie cochains must be skew-symmetric")
    phi_e = ConfMap(E, E, n, 0, {args: value.rename_generators(m_map) for args, value in phi.table.items()})
    explicit = ConfMap(lie, M_renamed, n + 1, 0, _explicit_lie_delta(lie.generators, total, phi_e, n))
    if verify:
        routed = cnr_bracket(pi, phi_e, check=False)
        if n % 2 == 0:
            routed = -routed
        l_names = set(lie.generators)
        routed = routed.restricted(lambda args: all(a in l_names for a in args))
        if routed.with_modules(lie, M_renamed) != explicit:
            raise RuntimeError(f"explicit and CNR Lie differentials disagree in degree {n}")
    return Cochain(n + 1, explicit.rename_generators(lie, M, target_map=back))


def lie_cochain_basis(coefficients, n: int, dmax: int, lmax: int) -> list:
    """
    Skew-symmetrizations of the truncated cochain basis, zero and repeated ones dropped.
    """
    lmodule = _as_lmodule(coefficients)
    lie, M = lmodule.algebra.module, lmodule.module
    if n == 0:
        return [Cochain(0, ModElement({g: monomial(a)})) for g in M.generators for a in range(dmax + 1)]
    seen = []
    for args in itertools.product(lie.generators, repeat=n):
        if list(args) != sorted(args, key=lie.generators.index):
            continue
        for g in M.generators:
            for a in range(dmax + 1):
                for lpows in itertools.product(range(lmax + 1), repeat=n - 1):
                    poly = monomial(a, {i + 1: e for i, e in enumerate(lpows)})
                    body = symmetrize(ConfMap(lie, M, n, 0, {args: {g: poly}}), "skew")
                    if not body.is_zero and all(body != s.body and -body != s.body for s in seen):
                        seen.append(Cochain(n, body))
    return seen


def truncated_lie_cocycles(coefficients, n: int, dmax: int, lmax: int, verbose: int = 0) -> list:
    """
    Nonzero skew cocycles spanning the kernel of δ on lie_cochain_basis.
    """
    basis = lie_cochain_basis(coefficients, n, dmax, lmax)
    if not basis:
        raise ValueError(f"empty truncation for n={n}, dmax={dmax}, lmax={lmax}")
    log_message(f"Lie δ_{n}: {len(basis)} skew basis cochains", verbose)
    columns = [cochain_coordinates(lie_delta(coefficients, c, verify=False)) for c in basis]
    matrix, _ = coordinate_matrix(columns)
    result = []
    for vector in kernel_vectors(matrix, len(basis)):
        cocycle = combine_basis(basis, vector)
        if not cocycle.is_zero:
            result.append(cocycle)
    return result


def _check_brackets(module: GradedModule, brackets: dict, degree_of, mode: str) -> dict:
    family = {}
    for k, f in brackets.items():
        k = int(k)
        if f.arity != k or f.degree != degree_of(k) or f.source != module or f.target != module:
            raise ValueError(f"bracket of arity {k} must be a degree-{degree_of(k)} map on the module")
        if not is_symmetric(f, mode):
            raise ValueError(f"bracket of arity {k} is not graded {'skew-' if mode == 'skew' else ''}symmetric")
        family[k] = f
    return dict(sorted(family.items()))


class LInfStructure:
    """
    L∞-conformal algebra: graded skew-symmetric l_k of degree k-2.
    """

    def __init__(self, module: GradedModule, brackets: dict):
        self.module = module
        self.brackets = _check_brackets(module, brackets, lambda k: k - 2, "skew")

    def __repr__(self):
        return f"LInfStructure({self.module}, arities {list(self.brackets)})"


class LInf1Structure:
    """
    L∞[1]-conformal algebra: graded symmetric ϱ_k of degree -1.
    """

    def __init__(self, module: GradedModule, brackets: dict):
        self.module = module
        self.brackets = _check_brackets(module, brackets, lambda k: -1, "sym")

    def __repr__(self):
        return f"LInf1Structure({self.module}, arities {list(self.brackets)})"


def lie_to_linf(algebra: LieConfAlgebra) -> LInfStructure:
    return LInfStructure(algebra.module, {2: algebra.bracket})


def linf_identity(brackets: dict, n: int):
    """
    Σ_{p+q=n+1} (-1)^{q(p-1)} Σ_{σ ∈ Sh(q, n-q)} sgn(σ) ε(σ) l_p(l_q(x_σ(1..q)), ...).
    """
    total = None
    for p in range(1, n + 1):
        q = n + 1 - p
        if p in brackets and q in brackets:
            term = shuffle_compose(brackets[p], brackets[q], skew=True)
            if q * (p - 1) % 2:
                term = -term
            total = term if total is None else total + term
    return total


def linf1_identity(brackets: dict, n: int):
    total = None
    for p in range(1, n + 1):
        q = n + 1 - p
        if p in brackets and q in brackets:
            term = shuffle_compose(brackets[p], brackets[q], skew=False)
            total = term if total is None else total + term
    return total


def _linf_report(check: str, identity, up_to_n: int, verbose: int) -> Report:
    if up_to_n < 1:
        raise ValueError(f"up_to_n must be at least 1, got {up_to_n}")
    for n in range(1, up_to_n + 1):
        value = identity(n)
        log_message(f"{check}: identity n={n} expanded", verbose)
        if value is not None:
            report = zero_report(check, value, arity=n)
            if not report:
                return report
    return Report(check, True)


def check_linf(structure: LInfStructure, up_to_n: int, verbose: int = 0) -> Report:
    return _linf_report("linf", lambda n: linf_identity(structure.brackets, n), up_to_n, verbose)


def check_linf1(structure: LInf1Structure, up_to_n: int, verbose: int = 0) -> Report:
    return _linf_report("linf1", lambda n: linf1_identity(structure.brackets, n), up_to_n, verbose)


def linf_shift_sign(degrees) -> int:
    """(-1)^{Σ_j (k-j)|x_j|} for unshifted degrees."""
    k = len(degrees)
    return -1 if sum((k - j) * d for j, d in enumerate(degrees, start=1)) % 2 else 1


def shift_linf(structure: LInfStructure) -> LInf1Structure:
    brackets = {}
    for k, f in structure.brackets.items():
        table = {args: value * linf_shift_sign([f.source.degree(a) for a in args]) for args, value in f.table.items()}
        brackets[k] = ConfMap(f.source.degree_shift(1), f.target.degree_shift(1), k, -1, table)
    return LInf1Structure(structure.module.degree_shift(1), brackets)


def unshift_linf(structure: LInf1Structure) -> LInfStructure:
    brackets = {}
    for k, f in structure.brackets.items():
        table = {args: value * linf_shift_sign([f.source.degree(a) - 1 for a in args])
                 for args, value in f.table.items()}
        brackets[k] = ConfMap(f.source.degree_shift(-1), f.target.degree_shift(-1), k, k - 2, table)
    return LInfStructure(structure.module.degree_shift(-1), brackets)


def _sym_family(value) -> dict:
    if isinstance(value, ConfMap):
        return {value.arity: value}
    if isinstance(value, LInf1Structure):
        return dict(value.brackets)
    return {int(k): f for k, f in value.items()}


def sym_gla_bracket(first, second, up_to: int = None, check: bool = True) -> dict:
    """
    {[ϱ, τ]}_p = Σ_{k+l=p+1} (ϱ_k ⋄̄ τ_l - (-1)^{mn} τ_l ⋄̄ ϱ_k),
    ⋄̄ the Sh(l, k-1) insertion with Koszul signs.
    @raise ValueError: an argument is not graded symmetric
    """
    first, second = _sym_family(first), _sym_family(second)
    if check:
        for f in list(first.values()) + list(second.values()):
            if not is_symmetric(f, "sym"):
                raise ValueError(f"map of arity {f.arity} is not graded symmetric")
    m, n = family_degree(first), family_degree(second)
    if m is None or n is None:
        return {}
    sign = -1 if m * n % 2 else 1
    result = {}
    for (k, f), (l, g) in itertools.product(first.items(), second.items()):
        p = k + l - 1
        if up_to is not None and p > up_to:
            continue
        term = shuffle_compose(f, g, skew=False) - shuffle_compose(g, f, skew=False) * sign
        result[p] = result[p] + term if p in result else term
    return family_add(result)


def sym_maurer_cartan_report(structure: LInf1Structure, up_to_n: int) -> Report:
    bracket = sym_gla_bracket(structure.brackets, structure.brackets, up_to=up_to_n, check=False)
    for n in range(1, up_to_n + 1):
        if n in bracket:
            report = zero_report("sym-maurer-cartan", bracket[n], arity=n)
            if not report:
                return report
    return Report("sym-maurer-cartan", True)


def skew_symmetrize_ainf(structure: AInfStructure) -> LInfStructure:
    """
    l_k = Σ_{σ ∈ S_k} sgn(σ) ε(σ) μ_k(x_σ(1), ..., x_σ(k)) with λ_k ↦ λ_k†.
    """
    return LInfStructure(structure.module, {k: symmetrize(mu, "skew") for k, mu in structure.mults.items()})


def skeletal_linf(coefficients, theta: Cochain) -> LInfStructure:
    """
    2-term L∞-conformal algebra L ⊕ M[-1]: l2 = the semidirect bracket, l3 = Θ for a skew 3-cochain Θ.
    The n = 4 identity equals -δΘ, so the structure is L∞ exactly when Θ is a cocycle.
    """
    if theta.n != 3:
        raise ValueError(f"Θ must be a 3-cochain, got degree {theta.n}")
    lmodule = _as_lmodule(coefficients)
    if not is_symmetric(theta.body, "skew"):
        raise ValueError("Θ must be skew-symmetric")
    E, _, pi, m_map = lie_extension(lmodule, shift=1)
    l3 = ConfMap(E, E, 3, 1, {args: value.rename_generators(m_map) for args, value in theta.body.table.items()})
    return LInfStructure(E, {2: pi, 3: l3})


def lie_coboundary(coefficients, sigma: Cochain) -> Cochain:
    """δσ, a cocycle for any skew cochain σ."""
    return lie_delta(coefficients, sigma)


__all__ = [
    "LieConfAlgebra", "ConformalLModule", "LInfStructure", "LInf1Structure", "check_lie", "virasoro", "cur_lie",
    "cur_sl2", "skew_symmetrize_assoc", "check_module", "adjoint_module", "cnr_bracket", "lie_delta",
    "lie_cochain_basis", "truncated_lie_cocycles", "check_linf", "check_linf1", "shift_linf", "unshift_linf",
    "sym_gla_bracket", "skew_symmetrize_ainf", "skeletal_linf", "lie_to_linf",
]
