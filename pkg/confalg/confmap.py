"""
Conformal sesquilinear maps stored by structure constants on generator tuples.

A k-ary map f sends (x1..xk) to a polynomial in D, L1..L_{k-1} with coefficients in the target.
Values on non-generators are never stored: coefficients p(D) on slot j < k become p(-L_j), and a
coefficient on the last slot acts as p(D + L1 + ... + L_{k-1}) on the output.
"""
import itertools

from confalg.confmod import GradedModule, PolyValue
from confalg.constants import MAX_LAMBDA
from confalg.polyring import D, L, ONE, RING, ZERO, format_poly, lambda_sum, max_lambda, random_poly, \
    rational, substitute_all
from confalg.utils import Report


class _IdentityMarker:
    """Leaf convention for insertions: the unit of multi_insert."""
    arity = 1
    degree = 0

    def __repr__(self):
        return "IDENTITY"


IDENTITY = _IdentityMarker()


class ConfMap:
    """
    k-ary graded conformal sesquilinear map source^{⊗k} -> target[λ1..λ_{k-1}].

    Attributes:
        source (GradedModule): module of the arguments.
        target (GradedModule): module of the values.
        arity (int): k >= 1.
        degree (int): g; a generator tuple of degrees d1..dk lands in degree d1+...+dk+g.
        table (dict): generator tuple -> PolyValue, nonzero entries only.
    """

    def __init__(self, source: GradedModule, target: GradedModule, arity: int, degree: int, table: dict = None):
        if not isinstance(source, GradedModule) or not isinstance(target, GradedModule):
            raise TypeError("source and target must be GradedModule instances")
        if not 1 <= arity <= MAX_LAMBDA + 1:
            raise ValueError(f"arity {arity} outside 1..{MAX_LAMBDA + 1}")
        self.source = source
        self.target = target
        self.arity = arity
        self.degree = degree
        self.table = {}
        for args, value in (table or {}).items():
            args = tuple(args)
            if not isinstance(value, PolyValue):
                value = PolyValue({gen: RING(poly) for gen, poly in dict(value).items()})
            if value.is_zero:
                continue
            self._validate_entry(args, value)
            self.table[args] = PolyValue(value.coords)

    def _validate_entry(self, args, value):
        if len(args) != self.arity:
            raise ValueError(f"entry {args} has {len(args)} arguments, expected {self.arity}")
        for name in args:
            if name not in self.source:
                raise ValueError(f"unknown source generator {name!r} in entry {args}")
        expected = sum(self.source.degree(name) for name in args) + self.degree
        for gen, poly in value.items():
            if gen not in self.target:
                raise ValueError(f"unknown target generator {gen!r} in entry {args}")
            if self.target.degree(gen) != expected:
                raise ValueError(f"entry {args} -> {gen} has degree {self.target.degree(gen)}, expected {expected}")
            if max_lambda(poly) > self.arity - 1:
                raise ValueError(f"entry {args} uses λ beyond L{self.arity - 1}: {format_poly(poly)}")

    @classmethod
    def zero(cls, source, target, arity, degree):
        return cls(source, target, arity, degree)

    @classmethod
    def identity(cls, module):
        return cls(module, module, 1, 0, {(name,): {name: ONE} for name in module.generators})

    def value(self, args) -> PolyValue:
        return self.table.get(tuple(args), PolyValue())

    def _check_compatible(self, other):
        if not isinstance(other, ConfMap):
            raise TypeError(f"cannot combine ConfMap with {type(other).__name__}")
        if (self.source, self.target, self.arity, self.degree) != (other.source, other.target, other.arity,
                                                                  other.degree):
            raise ValueError(f"incompatible maps: {self.signature()} vs {other.signature()}")

    def signature(self) -> str:
        return f"arity {self.arity}, degree {self.degree}, {self.source} -> {self.target}"

    def _new(self, table):
        return ConfMap(self.source, self.target, self.arity, self.degree, table)

    def __add__(self, other):
        self._check_compatible(other)
        table = dict(self.table)
        for args, value in other.table.items():
            table[args] = table[args] + value if args in table else value
        return self._new(table)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({args: -value for args, value in self.table.items()})

    def __mul__(self, factor):
        return self._new({args: value * rational(factor) for args, value in self.table.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ConfMap):
            return NotImplemented
        return (self.source, self.target, self.arity, self.degree) == (other.source, other.target, other.arity,
                                                                      other.degree) and self.table == other.table

    def __hash__(self):
        return hash((self.arity, self.degree, len(self.table)))

    @property
    def is_zero(self) -> bool:
        return not self.table

    def scale_entries(self, sign_of):
        """
        @param sign_of: generator tuple -> rational factor
        """
        return self._new({args: value * sign_of(args) for args, value in self.table.items()})

    def restricted(self, predicate):
        """
        Sub-table of the entries whose generator tuple satisfies predicate.
        """
        return self._new({args: value for args, value in self.table.items() if predicate(args)})

    def with_pattern(self, degrees):
        """
        Sub-table of the entries whose argument degrees equal the given pattern.
        """
        pattern = tuple(degrees)
        return self.restricted(lambda args: tuple(self.source.degree(a) for a in args) == pattern)

    def with_modules(self, source: GradedModule = None, target: GradedModule = None):
        """
        The same structure constants viewed between other modules (e.g. a submodule inside a direct sum).
        """
        return ConfMap(source or self.source, target or self.target, self.arity, self.degree, self.table)

    def rename_generators(self, source: GradedModule, target: GradedModule, source_map: dict = None,
                          target_map: dict = None):
        source_map = source_map or {}
        target_map = target_map or {}
        table = {}
        for args, value in self.table.items():
            key = tuple(source_map.get(a, a) for a in args)
            value = value.rename_generators(target_map)
            table[key] = table[key] + value if key in table else value
        return ConfMap(source, target, self.arity, self.degree, table)

    def shifted(self, s: int, sign_of=None):
        """
        The same table on both modules shifted by s; the map degree is unchanged.
        """
        table = self.table if sign_of is None else {args: value * sign_of(args) for args, value in self.table.items()}
        return ConfMap(self.source.degree_shift(s), self.target.degree_shift(s), self.arity, self.degree, table)

    def sorted_items(self):
        index = {name: i for i, name in enumerate(self.source.generators)}
        return sorted(self.table.items(), key=lambda item: tuple(index[a] for a in item[0]))

    def first_nonzero(self):
        """
        @return: (generator tuple, value) of the first nonzero entry in product order, or None
        """
        items = self.sorted_items()
        return items[0] if items else None

    def to_json(self) -> list:
        return [{"args": list(args), "value": value.to_json()} for args, value in self.sorted_items()]

    def __repr__(self):
        return f"ConfMap({self.signature()}, {len(self.table)} entries)"


def identity_map(module: GradedModule) -> ConfMap:
    return ConfMap.identity(module)


def zero_map(source, target, arity, degree) -> ConfMap:
    return ConfMap.zero(source, target, arity, degree)


def zero_report(check: str, f: ConfMap, arity: int = None) -> Report:
    """
    Passes iff f vanishes; otherwise the first nonzero generator tuple is the witness.
    """
    first = f.first_nonzero()
    if first is None:
        return Report(check, True, arity=arity)
    args, value = first
    return Report(check, False, arity=arity, witness=args, difference=value.to_text())


def evaluate_at(f: ConfMap, args: list, slots: list) -> PolyValue:
    """
    Sesquilinear evaluation with arbitrary λ-slot expressions.

    @param args: k PolyValues (coordinates may involve D and outer λ variables)
    @param slots: k-1 polynomials substituted for the map's own L1..L_{k-1}
    @return: the value; D in a slot stands for the ∂ of the output
    """
    k = f.arity
    if len(args) != k:
        raise ValueError(f"map of arity {k} evaluated on {len(args)} arguments")
    if len(slots) != k - 1:
        raise ValueError(f"map of arity {k} needs {k - 1} λ slots, got {len(slots)}")
    slots = [RING(s) for s in slots]
    total = sum(slots, ZERO)
    local = [(L(t), slots[t - 1]) for t in range(1, k)]
    result = {}
    for combo in itertools.product(*(list(a.coords.items()) for a in args)):
        value = f.table.get(tuple(gen for gen, _ in combo))
        if value is None:
            continue
        coeff = ONE
        for j, (_, poly) in enumerate(combo[:-1]):
            coeff *= poly.compose(D, -slots[j])
        coeff *= combo[-1][1].compose(D, D + total)
        for gen, poly in value.items():
            result[gen] = result.get(gen, ZERO) + substitute_all(poly, local) * coeff
    return PolyValue(result)


def evaluate(f: ConfMap, args: list) -> PolyValue:
    """
    Value of f on homogeneous module elements with the standard slots L1..L_{k-1}.
    """
    if len(args) != f.arity:
        raise ValueError(f"map of arity {f.arity} evaluated on {len(args)} arguments")
    for arg in args:
        arg.degree(f.source)
    return evaluate_at(f, args, [L(t) for t in range(1, f.arity)])


def multi_insert(outer: ConfMap, inners: list) -> ConfMap:
    """
    Simultaneous insertion outer(g1(...), g2(...), ..., gk(...)); IDENTITY marks a bare argument.

    Block j occupies consecutive positions starting at s_j. For j < k the outer slot j carries
    Λ_j = L_{s_j} + ... + L_{s_j+l_j-1} and the block output's D becomes -Λ_j; the last block's D becomes
    D + L1 + ... + L_{s_k-1}. Koszul sign: prod_j (-1)^{|g_j| (degrees of all inputs before block j)}.
    """
    k = outer.arity
    if len(inners) != k:
        raise ValueError(f"outer map of arity {k} needs {k} inner maps, got {len(inners)}")
    real = [g for g in inners if g is not IDENTITY]
    for g in real:
        if not isinstance(g, ConfMap):
            raise TypeError(f"inner maps must be ConfMap or IDENTITY, got {type(g).__name__}")
        if g.target != outer.source:
            raise ValueError(f"inner target {g.target} does not match outer source {outer.source}")
    source = real[0].source if real else outer.source
    if any(g.source != source for g in real):
        raise ValueError("inner maps must share one source module")
    if len(real) < k and source != outer.source:
        raise ValueError("bare arguments need the inner source to equal the outer source")

    arities = [g.arity for g in inners]
    n = sum(arities)
    starts = [1 + sum(arities[:j]) for j in range(k)]
    block_sums = [lambda_sum(range(starts[j], starts[j] + arities[j])) for j in range(k)]

    blocks = []
    for j, g in enumerate(inners):
        renames = [(L(t), L(starts[j] + t - 1)) for t in range(1, arities[j])]
        if j < k - 1:
            repl = renames + [(D, -block_sums[j])]
        else:
            repl = renames + [(D, D + lambda_sum(range(1, starts[j])))]
        if g is IDENTITY:
            entries = [((name,), [(name, substitute_all(ONE, repl))]) for name in source.generators]
        else:
            entries = [(args, [(gen, substitute_all(poly, repl)) for gen, poly in value.items()])
                       for args, value in g.table.items()]
        blocks.append(entries)

    outer_repl = [(L(j + 1), block_sums[j]) for j in range(k - 1)]
    outer_values = {args: value.substitute(outer_repl) for args, value in outer.table.items()}
    inner_degrees = [g.degree for g in inners]

    table = {}
    for combo in itertools.product(*blocks):
        inputs = tuple(name for args, _ in combo for name in args)
        sign = 1
        before = 0
        for j, (args, _) in enumerate(combo):
            if inner_degrees[j] % 2 and before % 2:
                sign = -sign
            before += sum(source.degree(a) for a in args)
        acc = {}
        for outs in itertools.product(*(outputs for _, outputs in combo)):
            value = outer_values.get(tuple(gen for gen, _ in outs))
            if value is None:
                continue
            coeff = ONE
            for _, poly in outs:
                coeff *= poly
            for gen, poly in value.items():
                acc[gen] = acc.get(gen, ZERO) + poly * coeff
        if acc:
            contribution = PolyValue(acc) * sign
            table[inputs] = table[inputs] + contribution if inputs in table else contribution
    return ConfMap(source, outer.target, n, outer.degree + sum(inner_degrees), table)


def insert(outer: ConfMap, i: int, inner: ConfMap) -> ConfMap:
    """
    Partial composition outer ∘_i inner, sign (-1)^{|inner| (|v1|+...+|v_{i-1}|)}.
    """
    if not 1 <= i <= outer.arity:
        raise ValueError(f"slot {i} out of range 1..{outer.arity}")
    inners = [IDENTITY] * outer.arity
    inners[i - 1] = inner
    return multi_insert(outer, inners)


def diamond(f: ConfMap, g: ConfMap) -> ConfMap:
    """
    f ⋄ g = sum over slots i of insert(f, i, g).
    """
    total = None
    for i in range(1, f.arity + 1):
        term = insert(f, i, g)
        total = term if total is None else total + term
    return total


def _check_permutation(sigma, k):
    if sorted(sigma) != list(range(1, k + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{k}")


def permute(f: ConfMap, sigma) -> ConfMap:
    """
    The map x -> f(x_σ(1), ..., x_σ(k)) where f's j-th λ slot receives L_σ(j) (or λ† = -L1-...-L_{k-1}-D
    when σ(j) = k). No sign is applied.

    @param sigma: images (σ(1), ..., σ(k)), 1-based
    """
    sigma = tuple(sigma)
    k = f.arity
    _check_permutation(sigma, k)
    dagger = -lambda_sum(range(1, k)) - D

    def assign(p):
        return L(p) if p < k else dagger

    repl = [(L(j), assign(sigma[j - 1])) for j in range(1, k)]
    table = {}
    for args, value in f.table.items():
        new = [None] * k
        for j, name in enumerate(args):
            new[sigma[j] - 1] = name
        table[tuple(new)] = value.substitute(repl)
    return ConfMap(f.source, f.target, k, f.degree, table)


def permutation_sign(sigma) -> int:
    inversions = sum(1 for a, b in itertools.combinations(range(len(sigma)), 2) if sigma[a] > sigma[b])
    return -1 if inversions % 2 else 1


def koszul_sign(sigma, degrees) -> int:
    """
    ε(σ; x) for the reordering of x1..xk into x_σ(1)..x_σ(k).
    @param degrees: degrees of x1..xk
    """
    sign = 1
    for a, b in itertools.combinations(range(len(sigma)), 2):
        if sigma[a] > sigma[b] and degrees[sigma[a] - 1] % 2 and degrees[sigma[b] - 1] % 2:
            sign = -sign
    return sign


def signed_permute(f: ConfMap, sigma, skew: bool, koszul: bool = True) -> ConfMap:
    """
    [sgn(σ)] ε(σ) permute(f, σ), with the Koszul sign evaluated per generator tuple.
    """
    permuted = permute(f, sigma)
    sgn = permutation_sign(sigma) if skew else 1

    def sign_of(args):
        eps = koszul_sign(sigma, [f.source.degree(a) for a in args]) if koszul else 1
        return sgn * eps

    return permuted.scale_entries(sign_of)


def _check_mode(mode):
    if mode not in ("skew", "sym"):
        raise ValueError(f"mode must be 'skew' or 'sym', got {mode!r}")
    return mode == "skew"


def symmetrize(f: ConfMap, mode: str) -> ConfMap:
    """
    Sum over all σ in S_k of [sgn(σ)] ε(σ) permute(f, σ); no 1/k! normalization.
    """
    skew = _check_mode(mode)
    total = ConfMap.zero(f.source, f.target, f.arity, f.degree)
    for sigma in itertools.permutations(range(1, f.arity + 1)):
        total = total + signed_permute(f, sigma, skew)
    return total


def is_symmetric(f: ConfMap, mode: str) -> bool:
    """
    Checks f = [sgn(σ)] ε(σ) permute(f, σ) on the adjacent transpositions, which generate S_k.
    """
    skew = _check_mode(mode)
    for i in range(1, f.arity):
        sigma = list(range(1, f.arity + 1))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        if signed_permute(f, sigma, skew) != f:
            return False
    return True


def shuffles(p: int, q: int) -> list:
    """
    (p, q)-shuffles as image tuples: σ(1) < ... < σ(p) and σ(p+1) < ... < σ(p+q).
    """
    result = []
    universe = range(1, p + q + 1)
    for first in itertools.combinations(universe, p):
        chosen = set(first)
        result.append(tuple(first) + tuple(x for x in universe if x not in chosen))
    return result


def shuffle_compose(outer: ConfMap, inner: ConfMap, skew: bool, koszul: bool = True) -> ConfMap:
    """
    Sum over σ in Sh(l, k-1) of [sgn(σ)] ε(σ) outer(inner(x_σ(1..l)), x_σ(l+1), ...), with the λ† rule
    applied through permute.
    """
    composite = insert(outer, 1, inner)
    total = ConfMap.zero(composite.source, composite.target, composite.arity, composite.degree)
    for sigma in shuffles(inner.arity, outer.arity - 1):
        total = total + signed_permute(composite, sigma, skew, koszul)
    return total


def random_confmap(source, target, arity, degree, dmax, lmax, rng, density: float = 0.5) -> ConfMap:
    """
    Random structure constants on every generator tuple with a degree-compatible target generator.
    @param rng: random.Random instance, seeded by the caller
    """
    table = {}
    for args in itertools.product(source.generators, repeat=arity):
        expected = sum(source.degree(a) for a in args) + degree
        coords = {}
        for gen in target.of_degree(expected):
            poly = random_poly(rng, dmax, lmax, arity - 1, density=density)
            if not poly.is_zero:
                coords[gen] = poly
        if coords:
            table[args] = PolyValue(coords)
    return ConfMap(source, target, arity, degree, table)
