"""
Exact polynomial arithmetic over the rationals in D (the derivation ∂) and L1..LN (the λ variables).

Every polynomial is an element of one shared sympy ring, so values produced anywhere in the package
can be added, multiplied and compared without conversion. D commutes with every L_i: all modules are
free over ℚ[∂], and moving ∂ to the left is ordinary commutative substitution.
"""
import itertools
import re

from sympy import Symbol
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from confalg.constants import MAX_LAMBDA

SYMBOL_NAMES = ["D"] + [f"L{i}" for i in range(1, MAX_LAMBDA + 1)]
RING, *GENS = ring(",".join(SYMBOL_NAMES), QQ, grlex)
D = GENS[0]
ZERO = RING.zero
ONE = RING.one

_PARSE_SYMBOLS = {name: Symbol(name) for name in SYMBOL_NAMES}
_VARIABLE_RE = re.compile(r"^(D|L([1-9]\d*))$")


def L(i: int):
    """
    @param i: 1-based index of the λ variable
    @return: the generator L_i of the polynomial ring
    """
    if not 1 <= i <= MAX_LAMBDA:
        raise ValueError(f"λ index {i} outside 1..{MAX_LAMBDA} (raise CONFALG_MAX_LAMBDA for larger arities)")
    return GENS[i]


def lambda_sum(indices) -> object:
    """
    @param indices: iterable of 1-based λ indices
    @return: L_i1 + L_i2 + ... (zero for an empty iterable)
    """
    total = ZERO
    for i in indices:
        total += L(i)
    return total


def var_index(var) -> int:
    """
    Position of a variable in the ring: 0 for D, i for L_i.
    @param var: "D", "L3", "λ3", an integer position, or a ring generator
    """
    if isinstance(var, int):
        if not 0 <= var <= MAX_LAMBDA:
            raise ValueError(f"variable position {var} outside 0..{MAX_LAMBDA}")
        return var
    if isinstance(var, str):
        match = _VARIABLE_RE.match(var.replace("λ", "L").strip())
        if not match:
            raise ValueError(f"unknown variable {var!r}")
        return 0 if match.group(1) == "D" else _checked_lambda(int(match.group(2)))
    if getattr(var, "ring", None) == RING and var.is_generator:
        return GENS.index(var)
    raise TypeError(f"cannot interpret {var!r} as a variable")


def _checked_lambda(i):
    L(i)
    return i


def rational(value):
    """
    Converts integers, "p/q" strings and QQ elements to an exact rational.
    """
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return QQ(int(num), int(den))
        return QQ(int(text))
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def rational_str(c) -> str:
    num, den = int(QQ.numer(c)), int(QQ.denom(c))
    return str(num) if den == 1 else f"{num}/{den}"


def poly_mul(p, q):
    return p * q


def substitute(p, var, expr):
    """
    Replaces every occurrence of var in p by expr.
    """
    return p.compose(GENS[var_index(var)], RING(expr))


def substitute_all(p, replacements):
    """
    Simultaneous substitution.
    @param replacements: iterable of (variable, expression) pairs; later pairs never see earlier results
    """
    pairs = [(GENS[var_index(var)], RING(expr)) for var, expr in replacements]
    if not pairs or p.is_zero:
        return p
    return p.compose(pairs)


def rename_vars(p, mapping: dict):
    """
    Relabels λ variables, e.g. {1: 3} or {"L1": "L3"}.
    The mapping must stay injective on the variables occurring in p.
    """
    pairs = {var_index(k): var_index(v) for k, v in mapping.items()}
    occurring = set(lambda_vars(p)) | ({0} if degree_in(p, 0) > 0 else set())
    images = [pairs.get(i, i) for i in occurring]
    if len(set(images)) != len(images):
        raise ValueError(f"renaming {mapping} is not injective on the variables of {format_poly(p)}")
    return substitute_all(p, [(i, GENS[j]) for i, j in pairs.items() if i != j])


def degree_in(p, var) -> int:
    """
    @return: the highest exponent of var in p (0 for the zero polynomial)
    """
    k = var_index(var)
    return max((monom[k] for monom in p.keys()), default=0)


def lambda_vars(p) -> list:
    """
    @return: sorted indices i such that L_i occurs in p
    """
    return sorted({i for monom in p.keys() for i in range(1, len(monom)) if monom[i]})


def max_lambda(p) -> int:
    used = lambda_vars(p)
    return used[-1] if used else 0


def is_d_only(p) -> bool:
    return not lambda_vars(p)


def coefficient(p, var, j: int):
    """
    The coefficient of var^j in p, as a polynomial in the remaining variables.
    """
    k = var_index(var)
    terms = {}
    for monom, coeff in p.items():
        if monom[k] == j:
            reduced = list(monom)
            reduced[k] = 0
            terms[tuple(reduced)] = coeff
    return RING.from_dict(terms) if terms else ZERO


def monomial(dpow: int = 0, lpows: dict = None, coeff=1):
    """
    @param dpow: exponent of D
    @param lpows: λ index -> exponent
    """
    exps = [0] * RING.ngens
    exps[0] = dpow
    for i, e in (lpows or {}).items():
        exps[var_index(i) if not isinstance(i, int) else _checked_lambda(i)] = e
    return RING.from_dict({tuple(exps): rational(coeff)})


def _term_key(term):
    monom, _ = term
    return sum(monom), monom[::-1]


def format_poly(p) -> str:
    """
    Canonical text form, e.g. "4*D*L1 + D^2 - 1/2*L2". Terms in graded lexicographic order with D < L1 < L2 < ...
    """
    if p.is_zero:
        return "0"
    pieces = []
    for monom, coeff in sorted(p.items(), key=_term_key, reverse=True):
        factors = []
        for k, e in enumerate(monom):
            if e:
                factors.append(SYMBOL_NAMES[k] if e == 1 else f"{SYMBOL_NAMES[k]}^{e}")
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if not factors:
            body = rational_str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([rational_str(magnitude)] + factors)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def parse_poly(text) -> object:
    """
    Reads the surface syntax: sums of terms c*D^a*L1^b..., rationals as p/q, arbitrary whitespace,
    λ1 accepted for L1 and ∂ for D.
    """
    if not isinstance(text, (str, int)):
        raise TypeError(f"polynomial must be given as text, got {type(text).__name__}")
    source = str(text).replace("λ", "L").replace("∂", "D").replace("^", "**")
    if not source.strip():
        raise ValueError("empty polynomial")
    try:
        expr = parse_expr(source, local_dict=dict(_PARSE_SYMBOLS))
    except Exception as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from exc
    unknown = {str(s) for s in getattr(expr, "free_symbols", set())} - set(SYMBOL_NAMES)
    if unknown:
        raise ValueError(f"unknown variable(s) {sorted(unknown)} in {text!r}")
    try:
        return RING.from_expr(expr)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"{text!r} is not a polynomial in D, L1..L{MAX_LAMBDA}: {exc}") from exc


def random_poly(rng, dmax: int, lmax: int, nvars: int, coeff_range: int = 2, density: float = 0.5):
    """
    Random polynomial with D-degree <= dmax and each L_i-degree <= lmax for i <= nvars.
    @param rng: random.Random instance
    """
    terms = {}
    for dpow in range(dmax + 1):
        for lpows in itertools.product(range(lmax + 1), repeat=nvars):
            if rng.random() >= density:
                continue
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                exps = [0] * RING.ngens
                exps[0] = dpow
                exps[1:1 + nvars] = lpows
                terms[tuple(exps)] = QQ(c)
    return RING.from_dict(terms) if terms else ZERO
