"""
Associative conformal algebras, conformal bimodules and the Hochschild complex.
"""
import itertools
import math

import pandas as pd
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from confalg.confmap import ConfMap, evaluate, evaluate_at, insert, random_confmap, zero_report
from confalg.confmod import GradedModule, ModElement, PolyValue
from confalg.polyring import D, L, ZERO, coefficient, degree_in, monomial, random_poly, rational
from confalg.utils import ConstructionError, Report, log_message


class AssocConfAlgebra:
    """
    Associative conformal algebra: a free module in degree 0 with a λ-multiplication a_λ b.

    Parameters:
    module (GradedModule): generators, all of degree 0.
    mult (ConfMap): binary map module ⊗ module -> module[λ] of degree 0.
    """

    def __init__(self, module: GradedModule, mult: ConfMap):
        if not module.is_concentrated_in(0):
            raise ValueError(f"associative conformal algebra must live in degree 0, got {module}")
        if mult.arity != 2 or mult.degree != 0:
            raise ValueError(f"multiplication must be binary of degree 0, got {mult.signature()}")
        if mult.source != module or mult.target != module:
            raise ValueError("multiplication must map the algebra module to itself")
        self.module = module
        self.mult = mult

    def __repr__(self):
        return f"AssocConfAlgebra({self.module.generators})"


class ConformalBimodule:
    """
    Conformal bimodule M over A, given by a_λ m and m_λ a.

    Both actions are binary maps out of A ⊕ M into M (tables on (a, m) resp. (m, a) only).
    When M is the algebra module itself, the bimodule is the adjoint one and both actions must equal the
    multiplication.
    """

    def __init__(self, algebra: AssocConfAlgebra, module: GradedModule, left: ConfMap, right: ConfMap):
        if not module.is_concentrated_in(0):
            raise ValueError(f"bimodule must live in degree 0, got {module}")
        self.algebra = algebra
        self.module = module
        self.adjoint = module == algebra.module
        if self.adjoint:
            if left != algebra.mult or right != algebra.mult:
                raise ValueError("a bimodule on the algebra module itself must be the adjoint one; rename M otherwise")
            self.total_module = module
            self.total = algebra.mult
        else:
            self.total_module = algebra.module.direct_sum(module)
            a_names = set(algebra.module.generators)
            for name, action, pattern in (("left", left, (True, False)), ("right", right, (False, True))):
                if action.source != self.total_module or action.target != module:
                    raise ValueError(f"{name} action must map A ⊕ M to M")
                if action.arity != 2 or action.degree != 0:
                    raise ValueError(f"{name} action must be binary of degree 0")
                for args in action.table:
                    if tuple(a in a_names for a in args) != pattern:
                        raise ValueError(f"{name} action has an entry on {args}")
            E = self.total_module
            self.total = (algebra.mult.with_modules(E, E) + left.with_modules(target=E)
                          + right.with_modules(target=E))
        self.left = left
        self.right = right

    def __repr__(self):
        return f"ConformalBimodule({self.algebra.module.generators} | {self.module.generators})"


def adjoint_bimodule(algebra: AssocConfAlgebra) -> ConformalBimodule:
    return ConformalBimodule(algebra, algebra.module, algebra.mult, algebra.mult)


def extension_map(bimodule: ConformalBimodule, shift: int = 0, suffix: str = None) -> tuple:
    """
    The multiplication of A ⊕ M' where M' is M renamed by suffix (default "'" for the adjoint bimodule)
    and moved to degree `shift`.

    @return: (A ⊕ M', binary degree-0 map on it, renaming M -> M')
    """
    A, M = bimodule.algebra.module, bimodule.module
    if suffix is None and bimodule.adjoint:
        suffix = "'"
    m_map = {g: f"{g}{suffix}" if suffix else g for g in M.generators}
    E = A.direct_sum(M.rename(m_map).degree_shift(shift))
    table = dict(bimodule.algebra.mult.table)
    for (a, m), value in bimodule.left.table.items():
        table[(a, m_map[m])] = value.rename_generators(m_map)
    for (m, a), value in bimodule.right.table.items():
        table[(m_map[m], a)] = value.rename_generators(m_map)
    return E, ConfMap(E, E, 2, 0, table), m_map


def associativity_defect(mult: ConfMap) -> ConfMap:
    """
    a_λ(b_μ c) - (a_λ b)_{λ+μ} c as a ternary map.
    """
    return insert(mult, 2, mult) - insert(mult, 1, mult)


def check_associativity(algebra: AssocConfAlgebra) -> Report:
    return zero_report("associativity", associativity_defect(algebra.mult), arity=3)


def check_bimodule(bimodule: ConformalBimodule) -> Report:
    """
    The three bimodule identities, i.e. associativity of A ⊕ M on triples with exactly one M argument.
    """
    defect = associativity_defect(bimodule.total)
    if not bimodule.adjoint:
        m_names = set(bimodule.module.generators)
        defect = defect.restricted(lambda args: sum(a in m_names for a in args) == 1)
    return zero_report("bimodule", defect, arity=3)


def cur_algebra(generators: list, constants: dict) -> AssocConfAlgebra:
    """
    Cur A: the λ-constant multiplication a_λ b = ab of a finite-dimensional associative algebra.

    @param generators: basis names of A
    @param constants: (a, b) -> {c: rational} structure constants of ab
    @raise ConstructionError: the constants are not associative
    """
    module = GradedModule({0: list(generators)})
    table = {}
    for (a, b), product in constants.items():
        table[(a, b)] = PolyValue({c: rational(v) for c, v in product.items()})
    algebra = AssocConfAlgebra(module, ConfMap(module, module, 2, 0, table))
    report = check_associativity(algebra)
    if not report:
        raise ConstructionError("structure constants are not associative", report)
    return algebra


def matrix_unit_constants(n: int) -> tuple:
    names = [f"e{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    constants = {}
    for i, j, k in itertools.product(range(1, n + 1), repeat=3):
        constants[(f"e{i}{j}", f"e{j}{k}")] = {f"e{i}{k}": 1}
    return names, constants


def cur_matrix_algebra(n: int = 2) -> AssocConfAlgebra:
    """Cur Mat_n(ℚ) on the matrix units e_ij."""
    return cur_algebra(*matrix_unit_constants(n))


def cur_dual_numbers() -> AssocConfAlgebra:
    """Cur ℚ[x]/(x²) with unit u."""
    return cur_algebra(["u", "x"], {("u", "u"): {"u": 1}, ("u", "x"): {"x": 1}, ("x", "u"): {"x": 1}})


def cur_rationals() -> AssocConfAlgebra:
    return cur_algebra(["u"], {("u", "u"): {"u": 1}})


def j_products(f: ConfMap) -> dict:
    """
    Taylor coefficients of a binary map: a_λ b = Σ_j λ^j / j! a_(j) b.

    @return: j -> {generator pair -> ModElement}, only nonzero products
    """
    if f.arity != 2:
        raise ValueError(f"j-products need a binary map, got arity {f.arity}")
    result = {}
    for args, value in f.table.items():
        top = max(degree_in(poly, 1) for _, poly in value.items())
        for j in range(top + 1):
            coords = {gen: coefficient(poly, 1, j) * math.factorial(j) for gen, poly in value.items()}
            element = ModElement(coords)
            if not element.is_zero:
                result.setdefault(j, {})[args] = element
    return result


def from_j_products(products: dict, source: GradedModule, target: GradedModule, degree: int = 0) -> ConfMap:
    table = {}
    for j, entries in products.items():
        weight = L(1) ** j * QQ(1, math.factorial(j))
        for args, element in entries.items():
            value = PolyValue(element.coords) * weight
            table[args] = table[args] + value if args in table else value
    return ConfMap(source, target, 2, degree, table)


def _j_product(f: ConfMap, x: PolyValue, y: PolyValue, j: int) -> ModElement:
    value = evaluate(f, [x, y])
    return ModElement({gen: coefficient(poly, 1, j) * math.factorial(j) for gen, poly in value.items()})


def check_j_associativity(algebra: AssocConfAlgebra) -> Report:
    """
    a_(j)(b_(k) c) = Σ_{p<=j} C(j, p) (a_(p) b)_(j+k-p) c on generator triples, for all j, k that can
    give nonzero terms.
    """
    mult = algebra.mult
    lam = max((degree_in(p, 1) for v in mult.table.values() for _, p in v.items()), default=0)
    dee = max((degree_in(p, 0) for v in mult.table.values() for _, p in v.items()), default=0)
    bound = 2 * lam + dee + 1
    names = algebra.module.generators
    for a, b, c in itertools.product(names, repeat=3):
        x, y, z = (PolyValue.generator(n) for n in (a, b, c))
        inner = {k: _j_product(mult, y, z, k) for k in range(bound + 1)}
        outer = {p: _j_product(mult, x, y, p) for p in range(bound + 1)}
        for j, k in itertools.product(range(bound + 1), repeat=2):
            lhs = _j_product(mult, x, inner[k], j)
            rhs = PolyValue()
            for p in range(j + 1):
                if not outer[p].is_zero:
                    rhs = rhs + _j_product(mult, outer[p], z, j + k - p) * math.comb(j, p)
            diff = lhs - rhs
            if not diff.is_zero:
                return Report("j-associativity", False, arity=3, witness=(a, b, c),
                              difference=f"j={j}, k={k}: {diff.to_text()}")
    return Report("j-associativity", True, arity=3)


class Cochain:
    """
    Hochschild n-cochain: a ModElement of M (read modulo ∂M) for n = 0, a ConfMap A^{⊗n} -> M[λ] otherwise.
    """

    def __init__(self, n: int, body):
        if n < 0:
            raise ValueError(f"cochain degree must be nonnegative, got {n}")
        if n == 0:
            if not isinstance(body, PolyValue):
                raise TypeError("a 0-cochain is a module element")
            body = ModElement(body.coords)
        else:
            if not isinstance(body, ConfMap):
                raise TypeError(f"a {n}-cochain is a ConfMap")
            if body.arity != n:
                raise ValueError(f"{n}-cochain needs arity {n}, got {body.arity}")
        self.n = n
        self.body = body

    @classmethod
    def zero(cls, bimodule: ConformalBimodule, n: int):
        if n == 0:
            return cls(0, ModElement())
        return cls(n, ConfMap.zero(bimodule.algebra.module, bimodule.module, n, 0))

    def _check(self, other):
        if not isinstance(other, Cochain) or other.n != self.n:
            raise ValueError("cochains of different degrees cannot be combined")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.n, self.body + other.body)

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.n, self.body - other.body)

    def __neg__(self):
        return Cochain(self.n, -self.body)

    def __mul__(self, factor):
        return Cochain(self.n, self.body * factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.n == other.n and self.body == other.body

    def __hash__(self):
        return hash((self.n, hash(self.body)))

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero

    def __repr__(self):
        return f"Cochain({self.n}, {self.body!r})"


def hochschild_delta(bimodule: ConformalBimodule, cochain: Cochain) -> Cochain:
    """
    Hochschild differential.

    n = 0: δm(a) = (a_{-λ-∂} m)|_{λ=0} - (m_λ a)|_{λ=0}.
    n >= 1: a1_{λ1} φ(a2, ...) + Σ_i (-1)^i φ(..., a_i λi a_{i+1}, ...)
            + (-1)^{n+1} φ(a1, ..., an)_{λ1+...+λn} a_{n+1}.
    """
    A, M = bimodule.algebra.module, bimodule.module
    T = bimodule.total
    if cochain.n == 0:
        m = cochain.body
        for gen in m.coords:
            if gen not in M:
                raise ValueError(f"0-cochain uses {gen!r}, which is not a generator of M")
        table = {}
        for a in A.generators:
            x = PolyValue.generator(a)
            table[(a,)] = evaluate_at(T, [x, m], [-D]) - evaluate_at(T, [m, x], [ZERO])
        return Cochain(1, ConfMap(A, M, 1, 0, table))

    phi = cochain.body
    if phi.source != A or phi.target != M:
        raise ValueError("cochain does not map the algebra into the bimodule")
    n = cochain.n
    E = bimodule.total_module
    phi_e = phi.with_modules(E, E)
    result = insert(T, 2, phi_e)
    for i in range(1, n + 1):
        term = insert(phi_e, i, T)
        result = result + term if i % 2 == 0 else result - term
    last = insert(T, 1, phi_e)
    result = result - last if n % 2 == 0 else result + last
    a_names = set(A.generators)
    result = result.restricted(lambda args: all(a in a_names for a in args))
    return Cochain(n + 1, result.with_modules(A, M))


def is_cocycle(bimodule: ConformalBimodule, cochain: Cochain) -> bool:
    return hochschild_delta(bimodule, cochain).is_zero


def is_coboundary_of(bimodule: ConformalBimodule, cochain: Cochain, primitive: Cochain) -> bool:
    """True iff cochain = δ(primitive)."""
    return hochschild_delta(bimodule, primitive) == cochain


def random_cochain(bimodule: ConformalBimodule, n: int, dmax: int, lmax: int, rng, density: float = 0.5) -> Cochain:
    if n == 0:
        return Cochain(0, ModElement({g: random_poly(rng, dmax, 0, 0, density=density)
                                     for g in bimodule.module.generators}))
    return Cochain(n, random_confmap(bimodule.algebra.module, bimodule.module, n, 0, dmax, lmax, rng, density))


def cochain_basis(bimodule: ConformalBimodule, n: int, dmax: int, lmax: int) -> list:
    """
    Basis of the cochains whose values have D-degree <= dmax and every λ-degree <= lmax.
    """
    if dmax < 0 or lmax < 0:
        raise ValueError(f"truncation bounds must be nonnegative, got dmax={dmax}, lmax={lmax}")
    A, M = bimodule.algebra.module, bimodule.module
    if n == 0:
        return [Cochain(0, ModElement({g: monomial(a)})) for g in M.generators for a in range(dmax + 1)]
    basis = []
    for args in itertools.product(A.generators, repeat=n):
        for g in M.generators:
            for a in range(dmax + 1):
                for lpows in itertools.product(range(lmax + 1), repeat=n - 1):
                    poly = monomial(a, {i + 1: e for i, e in enumerate(lpows)})
                    basis.append(Cochain(n, ConfMap(A, M, n, 0, {args: {g: poly}})))
    return basis


def cochain_coordinates(cochain: Cochain) -> dict:
    """
    @return: (generator tuple, target generator, exponent vector) -> rational coefficient
    """
    body = cochain.body
    items = [((), body)] if cochain.n == 0 else body.table.items()
    coords = {}
    for args, value in items:
        for gen, poly in value.items():
            for monom, c in poly.items():
                coords[(tuple(args), gen, monom)] = c
    return coords


def coordinate_matrix(columns: list) -> tuple:
    """
    @param columns: list of coordinate dictionaries
    @return: (DomainMatrix over QQ or None when every column vanishes, sorted row keys)
    """
    keys = sorted(set().union(*columns)) if columns else []
    if not keys:
        return None, keys
    rows = [[col.get(key, QQ(0)) for col in columns] for key in keys]
    return DomainMatrix(rows, (len(keys), len(columns)), QQ), keys


def truncated_delta_matrix(bimodule: ConformalBimodule, n: int, dmax: int, lmax: int, verbose: int = 0) -> tuple:
    """
    δ_n on the truncated cochain space as an exact rational matrix; the codomain is spanned by whatever
    coordinates the images use.

    @return: (matrix or None, basis, row keys)
    """
    basis = cochain_basis(bimodule, n, dmax, lmax)
    if not basis:
        raise ValueError(f"empty truncation for n={n}, dmax={dmax}, lmax={lmax}")
    log_message(f"δ_{n}: {len(basis)} basis cochains", verbose)
    columns = [cochain_coordinates(hochschild_delta(bimodule, c)) for c in basis]
    matrix, keys = coordinate_matrix(columns)
    return matrix, basis, keys


def truncated_delta_ranks(bimodule: ConformalBimodule, n: int, dmax: int, lmax: int, verbose: int = 0) -> tuple:
    """
    Ranks of δ restricted to a truncation. This is a finite slice, not the cohomology Hⁿ itself.

    @return: (dim domain, rank δ_n, dim kernel)
    """
    matrix, basis, _ = truncated_delta_matrix(bimodule, n, dmax, lmax, verbose)
    rank = 0 if matrix is None else matrix.rank()
    return len(basis), rank, len(basis) - rank


def combine_basis(basis: list, vector) -> Cochain:
    total = None
    for c, element in zip(vector, basis):
        if c:
            term = element * c
            total = term if total is None else total + term
    return total if total is not None else basis[0] * 0


def kernel_vectors(matrix, size: int) -> list:
    if matrix is None:
        return [[QQ(1) if i == j else QQ(0) for i in range(size)] for j in range(size)]
    return matrix.nullspace().to_list()


def truncated_cocycles(bimodule: ConformalBimodule, n: int, dmax: int, lmax: int, verbose: int = 0) -> list:
    """
    A basis of the cocycles inside the truncation, as explicit cochains.
    """
    matrix, basis, _ = truncated_delta_matrix(bimodule, n, dmax, lmax, verbose)
    return [combine_basis(basis, vector) for vector in kernel_vectors(matrix, len(basis))]


def truncated_rank_table(bimodule: ConformalBimodule, degrees, dmax: int, lmax: int, verbose: int = 0) -> pd.DataFrame:
    rows = []
    for n in degrees:
        dim, rank, kernel = truncated_delta_ranks(bimodule, n, dmax, lmax, verbose)
        rows.append({"n": n, "dim": dim, "rank": rank, "kernel": kernel})
    return pd.DataFrame(rows, columns=["n", "dim", "rank", "kernel"])
