"""
JSON manifests: named modules, ConfMap tables and structures built from them.

    {
      "metadata": {...},
      "modules": {"L": {"components": {"0": ["l"]}}, "E": {"direct_sum": ["A", "M"]}},
      "maps": [{"name": "bracket", "source": "L", "target": "L", "arity": 2, "degree": 0,
                "table": [{"args": ["l", "l"], "value": [{"gen": "l", "poly": "D + 2*L1"}]}]}],
      "structures": {"virasoro": {"kind": "lie", "module": "L", "bracket": "bracket"}}
    }
"""
import json

from confalg.ainf import AInf1Structure, AInfRepresentation, AInfStructure, adjoint_representation
from confalg.assocconf import AssocConfAlgebra, Cochain, ConformalBimodule, adjoint_bimodule
from confalg.confmap import ConfMap
from confalg.confmod import GradedModule, ModElement
from confalg.lieconf import ConformalLModule, LieConfAlgebra, LInfStructure, adjoint_module
from confalg.polyring import parse_poly
from confalg.transfer import Contraction
from confalg.twocells import ConfTwoAlgebra, SkeletalData, TwoTermAInf
from confalg.utils import read_dict

# field -> reference kind; a trailing "?" marks an optional field
STRUCTURE_FIELDS = {
    "assoc": {"module": "module", "mult": "map"},
    "lie": {"module": "module", "bracket": "map"},
    "bimodule": {"algebra": "structure", "module": "module", "left": "map?", "right": "map?"},
    "lie_module": {"algebra": "structure", "module": "module", "action": "map?"},
    "ainf": {"module": "module", "mults": "maps"},
    "ainf1": {"module": "module", "mults": "maps"},
    "linf": {"module": "module", "brackets": "maps"},
    "representation": {"base": "structure", "module": "module?", "actions": "maps?"},
    "two_term": {"A0": "module", "A1": "module", "beta": "map", "mu2": "map", "mu3": "map?"},
    "two_algebra": {"C0": "module", "C1": "module", "s": "map", "t": "map", "iota": "map", "pi0": "map",
                    "pi1": "map", "associator": "map"},
    "contraction": {"big": "module", "small": "module", "rho1": "map", "theta1": "map", "p": "map", "i": "map",
                    "h": "map"},
    "cochain": {"coefficients": "structure", "n": "int", "body": "map?", "element": "element?"},
    "skeletal": {"bimodule": "structure", "theta": "structure"},
}


class ManifestError(ValueError):
    """
    Invalid manifest input; `path` locates the offending field, e.g. "maps[2].table[0].args".
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class Manifest:
    """
    Parsed manifest. Structures are built on first access and cached.

    Attributes:
        modules (dict): name -> GradedModule.
        maps (dict): name -> ConfMap.
        specs (dict): structure name -> raw structure description.
        metadata (dict): free-form.
    """

    def __init__(self, metadata: dict = None):
        self.metadata = dict(metadata or {})
        self.modules = {}
        self.maps = {}
        self.map_modules = {}
        self.specs = {}
        self._built = {}

    def register_module(self, module: GradedModule, name: str) -> str:
        """
        @return: the name of an equal module already registered, or the given name
        """
        for existing, m in self.modules.items():
            if m == module:
                return existing
        if name in self.modules:
            raise ValueError(f"module name {name!r} already used")
        self.modules[name] = module
        return name

    def register_map(self, f: ConfMap, name: str) -> str:
        if name in self.maps:
            raise ValueError(f"map name {name!r} already used")
        source = self.register_module(f.source, f"{name}.source")
        target = self.register_module(f.target, f"{name}.target")
        self.maps[name] = f
        self.map_modules[name] = (source, target)
        return name

    def structure(self, name: str):
        if name not in self.specs:
            raise ManifestError(f"structures.{name}", f"unknown structure {name!r}")
        if name not in self._built:
            self._built[name] = _build_structure(self, name, [])
        return self._built[name]

    def structures_of_kind(self, *kinds) -> list:
        return [name for name, spec in self.specs.items() if spec.get("kind") in kinds]

    def coefficients_of(self, name: str):
        """Coefficient object (bimodule, Lie module or algebra) of a cochain structure."""
        spec = self.specs[name]
        if spec.get("kind") != "cochain":
            raise ManifestError(f"structures.{name}", "not a cochain")
        return self.structure(spec["coefficients"])

    def add_structure(self, name: str, obj, coefficients: str = None) -> str:
        """
        Registers a computed structure together with its modules and maps.
        @param coefficients: name of the coefficient structure, required for cochains
        """
        if name in self.specs:
            raise ValueError(f"structure name {name!r} already used")
        spec = _describe(self, name, obj, coefficients)
        self.specs[name] = spec
        self._built[name] = obj
        return name

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "modules": {name: {"components": {str(deg): names for deg, names in m.components.items()}}
                        for name, m in self.modules.items()},
            "maps": [{"name": name, "source": self.map_modules[name][0], "target": self.map_modules[name][1],
                      "arity": f.arity, "degree": f.degree, "table": f.to_json()} for name, f in self.maps.items()],
            "structures": self.specs,
        }

    def __repr__(self):
        return f"Manifest({len(self.modules)} modules, {len(self.maps)} maps, structures {list(self.specs)})"


def _require(spec: dict, key: str, path: str, kind=None):
    if not isinstance(spec, dict) or key not in spec:
        raise ManifestError(path, f"missing field {key!r}")
    value = spec[key]
    if kind is not None and not isinstance(value, kind):
        raise ManifestError(f"{path}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _parse_modules(manifest: Manifest, modules):
    if isinstance(modules, list):
        entries = []
        for idx, entry in enumerate(modules):
            entries.append((_require(entry, "name", f"modules[{idx}]", str), entry, f"modules[{idx}]"))
    elif isinstance(modules, dict):
        entries = [(name, entry, f"modules.{name}") for name, entry in modules.items()]
    else:
        raise ManifestError("modules", "expected an object or a list")
    pending = {name: (entry, path) for name, entry, path in entries}

    def build(name, stack):
        if name in manifest.modules:
            return manifest.modules[name]
        if name not in pending:
            raise ManifestError(stack[-1][1] if stack else "modules", f"unknown module {name!r}")
        if name in [n for n, _ in stack]:
            raise ManifestError(pending[name][1], f"module {name!r} refers to itself")
        entry, path = pending[name]
        if "components" in entry:
            components = _require(entry, "components", path, dict)
            try:
                module = GradedModule({int(deg): names for deg, names in components.items()})
            except (ValueError, TypeError) as exc:
                raise ManifestError(f"{path}.components", str(exc)) from exc
        elif "direct_sum" in entry:
            parts = _require(entry, "direct_sum", path, list)
            module = GradedModule()
            for part in parts:
                try:
                    module = module.direct_sum(build(part, stack + [(name, f"{path}.direct_sum")]))
                except ValueError as exc:
                    if isinstance(exc, ManifestError):
                        raise
                    raise ManifestError(f"{path}.direct_sum", str(exc)) from exc
        else:
            raise ManifestError(path, "a module needs 'components' or 'direct_sum'")
        manifest.modules[name] = module
        return module

    for name in pending:
        build(name, [])


def _parse_value(value, path: str) -> dict:
    if not isinstance(value, list):
        raise ManifestError(path, "expected a list of {gen, poly} terms")
    coords = {}
    for idx, term in enumerate(value):
        gen = _require(term, "gen", f"{path}[{idx}]", str)
        text = _require(term, "poly", f"{path}[{idx}]")
        try:
            poly = parse_poly(text)
        except (ValueError, TypeError) as exc:
            raise ManifestError(f"{path}[{idx}].poly", str(exc)) from exc
        coords[gen] = coords[gen] + poly if gen in coords else poly
    return coords


def _module_ref(manifest: Manifest, name, path: str) -> GradedModule:
    if not isinstance(name, str) or name not in manifest.modules:
        raise ManifestError(path, f"unknown module {name!r}")
    return manifest.modules[name]


def _parse_map(manifest: Manifest, idx: int, spec: dict):
    path = f"maps[{idx}]"
    name = _require(spec, "name", path, str)
    if name in manifest.maps:
        raise ManifestError(f"{path}.name", f"map {name!r} defined twice")
    source = _module_ref(manifest, _require(spec, "source", path), f"{path}.source")
    target = _module_ref(manifest, _require(spec, "target", path), f"{path}.target")
    arity = _require(spec, "arity", path, int)
    degree = spec.get("degree", 0)
    if not isinstance(degree, int):
        raise ManifestError(f"{path}.degree", "expected an integer")
    table = {}
    for j, entry in enumerate(spec.get("table", [])):
        entry_path = f"{path}.table[{j}]"
        args = _require(entry, "args", entry_path, list)
        if len(args) != arity:
            raise ManifestError(f"{entry_path}.args", f"{len(args)} arguments for a map of arity {arity}")
        for arg in args:
            if arg not in source:
                raise ManifestError(f"{entry_path}.args", f"unknown generator {arg!r} of module {spec['source']!r}")
        coords = _parse_value(_require(entry, "value", entry_path), f"{entry_path}.value")
        for gen in coords:
            if gen not in target:
                raise ManifestError(f"{entry_path}.value", f"unknown generator {gen!r} of module {spec['target']!r}")
        key = tuple(args)
        if key in table:
            raise ManifestError(f"{entry_path}.args", f"duplicate entry {args}")
        table[key] = coords
    try:
        f = ConfMap(source, target, arity, degree, table)
    except (ValueError, TypeError) as exc:
        raise ManifestError(path, str(exc)) from exc
    manifest.maps[name] = f
    manifest.map_modules[name] = (spec["source"], spec["target"])


def _field(manifest: Manifest, name: str, spec: dict, field: str, ref: str, stack: list):
    path = f"structures.{name}.{field}"
    optional = ref.endswith("?")
    ref = ref.rstrip("?")
    if field not in spec:
        if optional:
            return None
        raise ManifestError(f"structures.{name}", f"missing field {field!r}")
    value = spec[field]
    if ref == "module":
        return _module_ref(manifest, value, path)
    if ref == "map":
        if not isinstance(value, str) or value not in manifest.maps:
            raise ManifestError(path, f"unknown map {value!r}")
        return manifest.maps[value]
    if ref == "maps":
        if not isinstance(value, dict):
            raise ManifestError(path, "expected an object arity -> map name")
        family = {}
        for k, map_name in value.items():
            if map_name not in manifest.maps:
                raise ManifestError(f"{path}.{k}", f"unknown map {map_name!r}")
            try:
                family[int(k)] = manifest.maps[map_name]
            except ValueError as exc:
                raise ManifestError(f"{path}.{k}", "arity keys must be integers") from exc
        return family
    if ref == "structure":
        if value not in manifest.specs:
            raise ManifestError(path, f"unknown structure {value!r}")
        if value in manifest._built:
            return manifest._built[value]
        if value in stack:
            raise ManifestError(path, f"structure {value!r} refers to itself")
        manifest._built[value] = _build_structure(manifest, value, stack + [name])
        return manifest._built[value]
    if ref == "int":
        if not isinstance(value, int):
            raise ManifestError(path, "expected an integer")
        return value
    if ref == "element":
        return ModElement(_parse_value(value, path))
    raise ManifestError(path, f"unsupported reference kind {ref!r}")


def _build_structure(manifest: Manifest, name: str, stack: list):
    spec = manifest.specs[name]
    path = f"structures.{name}"
    kind = _require(spec, "kind", path, str)
    if kind not in STRUCTURE_FIELDS:
        raise ManifestError(f"{path}.kind", f"unknown kind {kind!r}, expected one of {sorted(STRUCTURE_FIELDS)}")
    try:
        fields = {field: _field(manifest, name, spec, field, ref, stack)
                  for field, ref in STRUCTURE_FIELDS[kind].items()}
        return _construct(kind, fields)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ManifestError):
            raise
        raise ManifestError(path, str(exc)) from exc


def _construct(kind: str, f: dict):
    if kind == "assoc":
        return AssocConfAlgebra(f["module"], f["mult"])
    if kind == "lie":
        return LieConfAlgebra(f["module"], f["bracket"])
    if kind == "bimodule":
        algebra = f["algebra"]
        if f["left"] is None and f["right"] is None and f["module"] == algebra.module:
            return adjoint_bimodule(algebra)
        return ConformalBimodule(algebra, f["module"], f["left"], f["right"])
    if kind == "lie_module":
        if f["action"] is None and f["module"] == f["algebra"].module:
            return adjoint_module(f["algebra"])
        return ConformalLModule(f["algebra"], f["module"], f["action"])
    if kind == "ainf":
        return AInfStructure(f["module"], f["mults"])
    if kind == "ainf1":
        return AInf1Structure(f["module"], f["mults"])
    if kind == "linf":
        return LInfStructure(f["module"], f["brackets"])
    if kind == "representation":
        if f["module"] is None:
            return adjoint_representation(f["base"])
        return AInfRepresentation(f["base"], f["module"], f["actions"] or {})
    if kind == "two_term":
        return TwoTermAInf(f["A0"], f["A1"], f["beta"], f["mu2"], f["mu3"])
    if kind == "two_algebra":
        return ConfTwoAlgebra(f["C0"], f["C1"], f["s"], f["t"], f["iota"], f["pi0"], f["pi1"], f["associator"])
    if kind == "contraction":
        return Contraction(f["big"], f["small"], f["rho1"], f["theta1"], f["p"], f["i"], f["h"])
    if kind == "cochain":
        if f["n"] == 0:
            return Cochain(0, f["element"] if f["element"] is not None else ModElement())
        if f["body"] is None:
            raise ValueError("a cochain of positive degree needs 'body'")
        return Cochain(f["n"], f["body"])
    if kind == "skeletal":
        return SkeletalData(f["bimodule"], f["theta"])
    raise ValueError(f"unknown kind {kind!r}")


def _describe(manifest: Manifest, name: str, obj, coefficients: str = None) -> dict:
    def mod(module, suffix):
        return manifest.register_module(module, f"{name}.{suffix}")

    def fmap(f, suffix):
        return manifest.register_map(f, f"{name}.{suffix}")

    def sub(part, suffix, **kwargs):
        for existing, built in manifest._built.items():
            if built is part:
                return existing
        return manifest.add_structure(f"{name}.{suffix}", part, **kwargs)

    if isinstance(obj, ConformalBimodule):
        spec = {"kind": "bimodule", "algebra": sub(obj.algebra, "algebra"), "module": mod(obj.module, "module")}
        if not obj.adjoint:
            spec.update(left=fmap(obj.left, "left"), right=fmap(obj.right, "right"))
        return spec
    if isinstance(obj, ConformalLModule):
        spec = {"kind": "lie_module", "algebra": sub(obj.algebra, "algebra"), "module": mod(obj.module, "module")}
        if not obj.adjoint:
            spec["action"] = fmap(obj.action, "action")
        return spec
    if isinstance(obj, SkeletalData):
        bimodule = sub(obj.bimodule, "bimodule")
        return {"kind": "skeletal", "bimodule": bimodule, "theta": sub(obj.theta, "theta", coefficients=bimodule)}
    if isinstance(obj, Contraction):
        spec = {"kind": "contraction", "big": mod(obj.big, "big"), "small": mod(obj.small, "small")}
        for field in ("rho1", "theta1", "p", "i", "h"):
            spec[field] = fmap(getattr(obj, field), field)
        return spec
    if isinstance(obj, AInfStructure):
        return {"kind": "ainf", "module": mod(obj.module, "module"),
                "mults": {str(k): fmap(f, f"mu{k}") for k, f in obj.mults.items()}}
    if isinstance(obj, AInf1Structure):
        return {"kind": "ainf1", "module": mod(obj.module, "module"),
                "mults": {str(k): fmap(f, f"rho{k}") for k, f in obj.mults.items()}}
    if isinstance(obj, LInfStructure):
        return {"kind": "linf", "module": mod(obj.module, "module"),
                "brackets": {str(k): fmap(f, f"l{k}") for k, f in obj.brackets.items()}}
    if isinstance(obj, LieConfAlgebra):
        return {"kind": "lie", "module": mod(obj.module, "module"), "bracket": fmap(obj.bracket, "bracket")}
    if isinstance(obj, AssocConfAlgebra):
        return {"kind": "assoc", "module": mod(obj.module, "module"), "mult": fmap(obj.mult, "mult")}
    if isinstance(obj, TwoTermAInf):
        return {"kind": "two_term", "A0": mod(obj.A0, "A0"), "A1": mod(obj.A1, "A1"), "beta": fmap(obj.beta, "beta"),
                "mu2": fmap(obj.mu2, "mu2"), "mu3": fmap(obj.mu3, "mu3")}
    if isinstance(obj, ConfTwoAlgebra):
        spec = {"kind": "two_algebra", "C0": mod(obj.C0, "C0"), "C1": mod(obj.C1, "C1")}
        for field in ("s", "t", "iota", "pi0", "pi1", "associator"):
            spec[field] = fmap(getattr(obj, field), field)
        return spec
    if isinstance(obj, Cochain):
        if coefficients is None or coefficients not in manifest.specs:
            raise ValueError("a cochain needs the name of its coefficient structure")
        spec = {"kind": "cochain", "coefficients": coefficients, "n": obj.n}
        if obj.n == 0:
            spec["element"] = obj.body.to_json()
        else:
            spec["body"] = fmap(obj.body, "body")
        return spec
    raise TypeError(f"cannot export {type(obj).__name__}")


def parse_manifest(source) -> Manifest:
    """
    Parses a manifest from a file path, a JSON string or a dictionary.

    @raise ManifestError: unreadable input, dangling reference, arity or degree mismatch
    """
    data = read_dict(source)
    if data is None:
        raise ManifestError("$", f"cannot read a JSON object from {source!r}")
    manifest = Manifest(data.get("metadata"))
    _parse_modules(manifest, data.get("modules", {}))
    maps = data.get("maps", [])
    if not isinstance(maps, list):
        raise ManifestError("maps", "expected a list")
    for idx, spec in enumerate(maps):
        _parse_map(manifest, idx, spec)
    structures = data.get("structures", {})
    if not isinstance(structures, dict):
        raise ManifestError("structures", "expected an object name -> structure")
    manifest.specs = {name: dict(spec) if isinstance(spec, dict) else spec for name, spec in structures.items()}
    for name in manifest.specs:
        manifest.structure(name)
    return manifest


def serialize(manifest: Manifest) -> str:
    """Deterministic JSON text: modules as components, tables in generator order, canonical polynomials."""
    return json.dumps(manifest.to_dict(), indent=2, ensure_ascii=False) + "\n"


__all__ = ["Manifest", "ManifestError", "STRUCTURE_FIELDS", "parse_manifest", "serialize"]
