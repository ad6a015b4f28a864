"""
Finite-rank free graded ℚ[∂]-modules, their elements, and λ-polynomial-valued elements.
"""
from confalg.polyring import D, ONE, ZERO, RING, format_poly, max_lambda, is_d_only, rational, substitute_all


class GradedModule:
    """
    Free graded ℚ[∂]-module of finite rank, given by named generators with integer degrees.

    Attributes:
        components (dict): degree -> list of generator names, sorted by degree.
        generators (list): all generator names, degree by degree, in declaration order.

    Methods:
        degree(name): degree of a generator.
        degree_shift(s): same generators with every degree raised by s.
        direct_sum(other): disjoint union of generators.
        rename(mapping or suffix): relabelled copy.
        restrict(names): submodule spanned by the given generators.
    """

    def __init__(self, components: dict = None, degrees: dict = None):
        if components is not None and degrees is not None:
            raise ValueError("give either components or degrees, not both")
        pairs = []
        if components is not None:
            for deg in sorted(components, key=int):
                names = components[deg]
                if isinstance(names, str):
                    raise TypeError(f"component {deg} must be a list of generator names")
                pairs.extend((name, int(deg)) for name in names)
        elif degrees is not None:
            pairs = [(name, int(deg)) for name, deg in degrees.items()]
        self._degrees = {}
        for name, deg in pairs:
            if not isinstance(name, str) or not name.strip() or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid generator name {name!r}")
            if name in self._degrees:
                raise ValueError(f"generator {name!r} declared twice")
            self._degrees[name] = deg
        # degree-major order, stable within a degree
        ordered = sorted(self._degrees.items(), key=lambda item: item[1])
        self._degrees = dict(ordered)

    @property
    def generators(self) -> list:
        return list(self._degrees)

    @property
    def degrees(self) -> dict:
        return dict(self._degrees)

    @property
    def components(self) -> dict:
        result = {}
        for name, deg in self._degrees.items():
            result.setdefault(deg, []).append(name)
        return result

    @property
    def rank(self) -> int:
        return len(self._degrees)

    def degree(self, name: str) -> int:
        try:
            return self._degrees[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def of_degree(self, deg: int) -> list:
        return [name for name, d in self._degrees.items() if d == deg]

    def is_concentrated_in(self, *degrees) -> bool:
        return all(d in degrees for d in self._degrees.values())

    def degree_shift(self, s: int):
        return GradedModule(degrees={name: deg + s for name, deg in self._degrees.items()})

    def direct_sum(self, other):
        clash = set(self._degrees) & set(other._degrees)
        if clash:
            raise ValueError(f"direct sum needs disjoint generator names, shared: {sorted(clash)}")
        return GradedModule(degrees={**self._degrees, **other._degrees})

    def rename(self, mapping=None, suffix: str = None):
        """
        @param mapping: old name -> new name (unlisted names are kept)
        @param suffix: appended to every name when no mapping is given
        """
        if mapping is None:
            tag = suffix or "'"
            mapping = {name: f"{name}{tag}" for name in self._degrees}
        return GradedModule(degrees={mapping.get(name, name): deg for name, deg in self._degrees.items()})

    def restrict(self, names):
        missing = [n for n in names if n not in self._degrees]
        if missing:
            raise ValueError(f"unknown generator(s) {missing}")
        return GradedModule(degrees={n: self._degrees[n] for n in self._degrees if n in set(names)})

    def __contains__(self, name):
        return name in self._degrees

    def __iter__(self):
        return iter(self._degrees)

    def __len__(self):
        return len(self._degrees)

    def __eq__(self, other):
        return isinstance(other, GradedModule) and self._degrees == other._degrees

    def __hash__(self):
        return hash(frozenset(self._degrees.items()))

    def __repr__(self):
        return f"GradedModule({self.components})"


def degree_shift(module: GradedModule, s: int) -> GradedModule:
    return module.degree_shift(s)


class PolyValue:
    """
    Element of M[λ1..λ_{k-1}]: generator -> polynomial in D and the λ slots.

    @param coords: generator name -> polynomial (zero entries are dropped)
    @param slots: number of λ variables allowed (k-1), or None to skip the check
    """
    __slots__ = ("coords", "slots")

    def __init__(self, coords: dict = None, slots: int = None):
        cleaned = {}
        for gen, poly in (coords or {}).items():
            poly = RING(poly)
            if not poly.is_zero:
                cleaned[gen] = poly
        if slots is not None:
            for gen, poly in cleaned.items():
                if max_lambda(poly) > slots:
                    raise ValueError(f"coordinate of {gen} uses λ beyond L{slots}: {format_poly(poly)}")
        self.coords = cleaned
        self.slots = slots

    @classmethod
    def generator(cls, name: str, coeff=ONE):
        return cls({name: RING(coeff)})

    def _new(self, coords):
        return type(self)(coords) if type(self) is not PolyValue else PolyValue(coords, self.slots)

    def __add__(self, other):
        coords = dict(self.coords)
        for gen, poly in other.coords.items():
            coords[gen] = coords.get(gen, ZERO) + poly
        return self._new(coords)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({gen: -poly for gen, poly in self.coords.items()})

    def __mul__(self, factor):
        factor = RING(rational(factor)) if isinstance(factor, (int, str)) else RING(factor)
        return self._new({gen: poly * factor for gen, poly in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero
        return isinstance(other, PolyValue) and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset((gen, str(poly)) for gen, poly in self.coords.items()))

    def __bool__(self):
        return bool(self.coords)

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def items(self):
        return self.coords.items()

    def get(self, gen):
        return self.coords.get(gen, ZERO)

    def substitute(self, replacements):
        return PolyValue({gen: substitute_all(poly, replacements) for gen, poly in self.coords.items()})

    def rename_generators(self, mapping: dict):
        coords = {}
        for gen, poly in self.coords.items():
            new = mapping.get(gen, gen)
            coords[new] = coords.get(new, ZERO) + poly
        return self._new(coords)

    def restrict(self, names):
        keep = set(names)
        return self._new({gen: poly for gen, poly in self.coords.items() if gen in keep})

    def degree(self, module: GradedModule):
        """
        @return: the common degree of the occurring generators, None for zero
        @raise ValueError: inhomogeneous element
        """
        degrees = {module.degree(gen) for gen in self.coords}
        if len(degrees) > 1:
            raise ValueError(f"element {self} is not homogeneous (degrees {sorted(degrees)})")
        return degrees.pop() if degrees else None

    def to_text(self) -> str:
        if not self.coords:
            return "0"
        return " + ".join(f"({format_poly(poly)})*{gen}" for gen, poly in sorted(self.coords.items()))

    def to_json(self) -> list:
        return [{"gen": gen, "poly": format_poly(poly)} for gen, poly in sorted(self.coords.items())]

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"


class ModElement(PolyValue):
    """
    Element of a free ℚ[∂]-module: coordinates are polynomials in D only.
    """
    __slots__ = ()

    def __init__(self, coords: dict = None, slots: int = None):
        super().__init__(coords, 0)
        for gen, poly in self.coords.items():
            if not is_d_only(poly):
                raise ValueError(f"module element coordinate of {gen} must only involve D: {format_poly(poly)}")


def apply_partial(m: PolyValue) -> PolyValue:
    """
    The ∂-action: every coordinate multiplied by D.
    """
    return m * D
