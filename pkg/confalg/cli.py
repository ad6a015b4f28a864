"""
Command-line front end.

    confalg check-lie virasoro
    confalg check-ainf phi-extension --up-to 4
    confalg transfer contraction-rank3 --up-to 4 --out transferred.json

The manifest argument is a file path or the name of a bundled manifest (see `confalg list`). Exit status is 0 when
every check passes, 1 on a mathematical failure and 2 on an input error.
"""
import argparse
import json
import logging
import random
import sys

from confalg.ainf import (AInf1Structure, AInfStructure, check_ainf, check_ainf1, check_representation,
                          cochain_to_family, family_equal, hochschild_sign, maurer_cartan_report,
                          representation_from_bimodule, restrict_to_coefficients, semidirect, shift)
from confalg.assocconf import (AssocConfAlgebra, Cochain, ConformalBimodule, adjoint_bimodule, check_associativity,
                               check_bimodule, extension_map, hochschild_delta, random_cochain,
                               truncated_rank_table)
from confalg.confmap import symmetrize, zero_report
from confalg.constants import DEFAULT_DMAX, DEFAULT_LMAX, DEFAULT_UP_TO, bundled_manifest_paths
from confalg.lieconf import (ConformalLModule, LieConfAlgebra, adjoint_module, check_lie, check_linf,
                             check_module, lie_delta, lie_extension, skew_symmetrize_ainf, skew_symmetrize_assoc)
from confalg.manifest import Manifest, ManifestError, parse_manifest, serialize
from confalg.transfer import check_contraction, transfer, transfer_ainf
from confalg.twocells import (SkeletalData, TwoTermAInf, check_two_algebra, check_two_term, cocycle_from_skeletal,
                              functor_S, functor_T, skeletal_from_cocycle, to_two_term)
from confalg.utils import ConstructionError, Report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(ValueError):
    """Bad command-line input: missing flag, wrong structure kind."""


def _select(manifest: Manifest, name: str, kinds: tuple) -> str:
    if name is not None:
        kind = manifest.specs.get(name, {}).get("kind")
        if name not in manifest.specs:
            raise InputError(f"no structure named {name!r}")
        if kind not in kinds:
            raise InputError(f"structure {name!r} has kind {kind!r}, expected one of {list(kinds)}")
        return name
    candidates = manifest.structures_of_kind(*kinds)
    if not candidates:
        raise InputError(f"the manifest has no structure of kind {list(kinds)}")
    return candidates[0]


def _up_to(args) -> int:
    if args.up_to is None:
        raise InputError(f"{args.command} needs --up-to")
    if args.up_to < 1:
        raise InputError("--up-to must be positive")
    return args.up_to


def _as_bimodule(obj) -> ConformalBimodule:
    if isinstance(obj, AssocConfAlgebra):
        return adjoint_bimodule(obj)
    if isinstance(obj, ConformalBimodule):
        return obj
    raise InputError(f"{type(obj).__name__} is not an associative coefficient structure")


def _as_lie_coefficients(obj) -> ConformalLModule:
    if isinstance(obj, LieConfAlgebra):
        return adjoint_module(obj)
    if isinstance(obj, ConformalLModule):
        return obj
    raise InputError(f"{type(obj).__name__} is not a Lie coefficient structure")


def cmd_check_assoc(manifest, args):
    name = _select(manifest, args.structure, ("assoc", "bimodule"))
    obj = manifest.structure(name)
    report = check_associativity(obj) if isinstance(obj, AssocConfAlgebra) else check_bimodule(obj)
    return name, report, None


def cmd_check_lie(manifest, args):
    name = _select(manifest, args.structure, ("lie", "lie_module"))
    obj = manifest.structure(name)
    report = check_lie(obj) if isinstance(obj, LieConfAlgebra) else check_module(obj)
    return name, report, None


def cmd_check_ainf(manifest, args):
    n = _up_to(args)
    name = _select(manifest, args.structure, ("ainf", "ainf1", "representation"))
    obj = manifest.structure(name)
    if isinstance(obj, AInfStructure):
        report = check_ainf(obj, n, args.verbose)
    elif isinstance(obj, AInf1Structure):
        report = check_ainf1(obj, n, args.verbose)
    else:
        report = check_representation(obj, n, args.verbose)
    return name, report, None


def cmd_check_linf(manifest, args):
    n = _up_to(args)
    name = _select(manifest, args.structure, ("linf",))
    return name, check_linf(manifest.structure(name), n, args.verbose), None


def cmd_check_2term(manifest, args):
    name = _select(manifest, args.structure, ("two_term", "two_algebra"))
    obj = manifest.structure(name)
    report = check_two_term(obj) if isinstance(obj, TwoTermAInf) else check_two_algebra(obj)
    return name, report, None


def cmd_mc_check(manifest, args):
    n = _up_to(args)
    name = _select(manifest, args.structure, ("ainf", "ainf1"))
    obj = manifest.structure(name)
    shifted = shift(obj) if isinstance(obj, AInfStructure) else obj
    return name, maurer_cartan_report(shifted, n), None


def _cochains(manifest, args, kinds):
    """Named cochain or, with --seed, a random cochain of degree --degree over the selected coefficients."""
    if args.seed is None:
        name = _select(manifest, args.structure, ("cochain",))
        return name, manifest.coefficients_of(name), manifest.structure(name)
    name = _select(manifest, args.structure, kinds)
    coefficients = manifest.structure(name)
    if args.degree is None:
        raise InputError("a random cochain needs --degree")
    rng = random.Random(args.seed)
    if "assoc" in kinds:
        return name, coefficients, random_cochain(_as_bimodule(coefficients), args.degree, args.dmax, args.lmax, rng)
    cochain = random_cochain(_as_lie_coefficients(coefficients), args.degree, args.dmax, args.lmax, rng)
    if cochain.n > 1:
        cochain = Cochain(cochain.n, symmetrize(cochain.body, "skew"))
    return name, coefficients, cochain


def _cochain_out(name, cochain, coefficients) -> Manifest:
    out = Manifest({"source": name})
    out.add_structure("coefficients", coefficients)
    out.add_structure("delta", cochain, coefficients="coefficients")
    return out


def cmd_delta(manifest, args):
    name, coefficients, cochain = _cochains(manifest, args, ("assoc", "bimodule"))
    bimodule = _as_bimodule(coefficients)
    image = hochschild_delta(bimodule, cochain)
    report = zero_report("delta-squared", hochschild_delta(bimodule, image).body)
    return name, report, _cochain_out(name, image, bimodule)


def cmd_ainf_delta(manifest, args):
    name, coefficients, cochain = _cochains(manifest, args, ("assoc", "bimodule"))
    bimodule = _as_bimodule(coefficients)
    if cochain.n < 1:
        raise InputError("the A∞ route needs a cochain of positive degree")
    representation = representation_from_bimodule(bimodule)
    image = restrict_to_coefficients(representation.base, representation, cochain_to_family(cochain, bimodule))
    expected = cochain_to_family(hochschild_delta(bimodule, cochain), bimodule)
    sign = hochschild_sign(cochain.n)
    agree = family_equal(image, {k: f * sign for k, f in expected.items()})
    return name, Report("ainf-delta", agree, arity=None if agree else cochain.n + 1), None


def cmd_lie_delta(manifest, args):
    name, coefficients, cochain = _cochains(manifest, args, ("lie", "lie_module"))
    lmodule = _as_lie_coefficients(coefficients)
    image = lie_delta(lmodule, cochain, verify=True)
    report = zero_report("delta-squared", lie_delta(lmodule, image, verify=False).body)
    return name, report, _cochain_out(name, image, lmodule)


def cmd_cocycle(manifest, args):
    name = _select(manifest, args.structure, ("cochain",))
    coefficients = manifest.coefficients_of(name)
    cochain = manifest.structure(name)
    if isinstance(coefficients, (LieConfAlgebra, ConformalLModule)):
        image = lie_delta(_as_lie_coefficients(coefficients), cochain)
    else:
        image = hochschild_delta(_as_bimodule(coefficients), cochain)
    if image.n == 0:
        return name, Report("cocycle", image.is_zero), None
    return name, zero_report("cocycle", image.body, arity=image.n), None


def cmd_hh_ranks(manifest, args):
    name = _select(manifest, args.structure, ("assoc", "bimodule"))
    bimodule = _as_bimodule(manifest.structure(name))
    top = args.up_to if args.up_to is not None else DEFAULT_UP_TO
    frame = truncated_rank_table(bimodule, range(0, top + 1), args.dmax, args.lmax, args.verbose)
    return name, Report("hh-ranks", True), frame.to_dict(orient="records")


def cmd_skeletal(manifest, args):
    name = _select(manifest, args.structure, ("skeletal",))
    data = manifest.structure(name)
    structure = skeletal_from_cocycle(data)
    if data.n == 2:
        report = check_two_term(to_two_term(data, check=False))
    else:
        report = check_ainf(structure, data.n + 2, args.verbose)
    out = Manifest({"source": name})
    out.add_structure("skeletal", structure)
    return name, report, out


def cmd_functor_s(manifest, args):
    name = _select(manifest, args.structure, ("two_term",))
    C = functor_S(manifest.structure(name))
    out = Manifest({"source": name})
    out.add_structure("S", C)
    return name, check_two_algebra(C), out


def cmd_functor_t(manifest, args):
    name = _select(manifest, args.structure, ("two_algebra",))
    structure = functor_T(manifest.structure(name))
    out = Manifest({"source": name})
    out.add_structure("T", structure)
    return name, check_two_term(structure), out


def cmd_roundtrip(manifest, args):
    """T∘S on a 2-term structure, cocycle -> skeletal -> cocycle on skeletal data."""
    name = _select(manifest, args.structure, ("two_term", "skeletal"))
    obj = manifest.structure(name)
    if isinstance(obj, SkeletalData):
        back = cocycle_from_skeletal(skeletal_from_cocycle(obj), obj.bimodule)
        return name, Report("roundtrip", back == obj), None
    back = functor_T(functor_S(obj))
    return name, Report("roundtrip", back == obj), None


def cmd_transfer(manifest, args):
    n = _up_to(args)
    if n < 2:
        raise InputError("transfer needs --up-to >= 2")
    name = _select(manifest, args.structure, ("contraction",))
    contraction = manifest.structure(name)
    report = check_contraction(contraction)
    if not report:
        return name, report, None
    for candidate in manifest.structures_of_kind("ainf", "ainf1"):
        structure = manifest.structure(candidate)
        module = structure.module
        if isinstance(structure, AInf1Structure) and module == contraction.big:
            result = transfer(contraction, structure, n, args.binary, verbose=args.verbose)
            final = check_ainf1(result, n + 1, args.verbose)
            break
        if isinstance(structure, AInfStructure) and contraction.big in (module, module.degree_shift(1)):
            result = transfer_ainf(contraction, structure, n, args.binary, verbose=args.verbose)
            final = check_ainf(result, n + 1, args.verbose)
            break
    else:
        raise InputError(f"no A∞ structure on the big complex of {name!r}")
    out = Manifest({"source": name, "transferred_from": candidate, "up_to": n})
    out.add_structure("transferred", result)
    return name, final, out


def cmd_skew(manifest, args):
    kinds = ("assoc", "ainf")
    if args.structure is None and args.up_to is not None and manifest.structures_of_kind("ainf"):
        # --up-to only bounds an A∞ check
        kinds = ("ainf",)
    name = _select(manifest, args.structure, kinds)
    obj = manifest.structure(name)
    out = Manifest({"source": name})
    if isinstance(obj, AssocConfAlgebra):
        lie = skew_symmetrize_assoc(obj)
        out.add_structure("skew", lie)
        return name, check_lie(lie), out
    linf = skew_symmetrize_ainf(obj)
    out.add_structure("skew", linf)
    return name, check_linf(linf, args.up_to if args.up_to is not None else DEFAULT_UP_TO, args.verbose), out


def cmd_semidirect(manifest, args):
    name = _select(manifest, args.structure, ("representation", "bimodule", "lie_module"))
    obj = manifest.structure(name)
    top = args.up_to if args.up_to is not None else DEFAULT_UP_TO
    out = Manifest({"source": name})
    if isinstance(obj, ConformalBimodule):
        E, mult, _ = extension_map(obj)
        algebra = AssocConfAlgebra(E, mult)
        out.add_structure("semidirect", algebra)
        return name, check_associativity(algebra), out
    if isinstance(obj, ConformalLModule):
        E, bracket, _, _ = lie_extension(obj)
        algebra = LieConfAlgebra(E, bracket)
        out.add_structure("semidirect", algebra)
        return name, check_lie(algebra), out
    structure = semidirect(obj.base, obj, top)
    out.add_structure("semidirect", structure)
    return name, check_ainf(structure, top, args.verbose), out


COMMANDS = {
    "check-assoc": (cmd_check_assoc, "associativity of an algebra or the bimodule axioms"),
    "check-lie": (cmd_check_lie, "skew-symmetry and Jacobi, or the module axioms"),
    "check-ainf": (cmd_check_ainf, "A∞ or A∞[1] identities up to --up-to"),
    "check-linf": (cmd_check_linf, "L∞ identities up to --up-to"),
    "check-2term": (cmd_check_2term, "2-term A∞ items or conformal 2-algebra axioms"),
    "mc-check": (cmd_mc_check, "Maurer-Cartan equation of the shifted structure up to --up-to"),
    "delta": (cmd_delta, "Hochschild differential of a cochain"),
    "ainf-delta": (cmd_ainf_delta, "Hochschild differential through the semidirect A∞ structure"),
    "lie-delta": (cmd_lie_delta, "Lie conformal differential, both routes"),
    "cocycle": (cmd_cocycle, "whether a cochain is closed"),
    "hh-ranks": (cmd_hh_ranks, "ranks of the truncated Hochschild complex"),
    "skeletal": (cmd_skeletal, "skeletal structure of a cocycle"),
    "functor-s": (cmd_functor_s, "conformal 2-algebra of a 2-term structure"),
    "functor-t": (cmd_functor_t, "2-term structure of a conformal 2-algebra"),
    "roundtrip": (cmd_roundtrip, "T∘S or cocycle/skeletal round trip"),
    "transfer": (cmd_transfer, "homotopy transfer along a contraction up to --up-to"),
    "skew": (cmd_skew, "skew-symmetrization"),
    "semidirect": (cmd_semidirect, "semidirect product with a representation or bimodule"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confalg", description="Exact computations with conformal algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="bundled manifests")
    for command, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(command, help=help_text)
        p.add_argument("manifest", help="manifest path or bundled manifest name")
        p.add_argument("--structure", help="structure name; defaults to the first one of a fitting kind")
        p.add_argument("--up-to", dest="up_to", type=int, help="arity bound")
        p.add_argument("--dmax", type=int, default=DEFAULT_DMAX, help="D-degree truncation")
        p.add_argument("--lmax", type=int, default=DEFAULT_LMAX, help="λ-degree truncation")
        p.add_argument("--degree", type=int, help="degree of a random cochain")
        p.add_argument("--seed", type=int, help="seed for a random cochain")
        trees = p.add_mutually_exclusive_group()
        trees.add_argument("--binary", dest="binary", action="store_true", default=None, help="binary trees")
        trees.add_argument("--general", dest="binary", action="store_false", help="all planar trees")
        p.add_argument("--out", help="write the resulting structure to this manifest file")
        p.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def resolve_manifest(value: str) -> str:
    return bundled_manifest_paths().get(value, value)


def run(args) -> tuple:
    """
    @return: (exit code, output document)
    """
    if args.command == "list":
        return EXIT_PASS, {"manifests": bundled_manifest_paths()}
    handler, _ = COMMANDS[args.command]
    document = {"command": args.command, "manifest": args.manifest}
    try:
        manifest = parse_manifest(resolve_manifest(args.manifest))
        name, report, result = handler(manifest, args)
    except ConstructionError as exc:
        document["error"] = str(exc)
        if exc.report is not None:
            document["report"] = exc.report.to_dict()
        return EXIT_FAIL, document
    except ManifestError as exc:
        document["error"] = str(exc)
        document["path"] = exc.path
        return EXIT_INPUT, document
    except (ValueError, TypeError) as exc:
        document["error"] = str(exc)
        return EXIT_INPUT, document
    document["structure"] = name
    document["report"] = report.to_dict()
    if isinstance(result, Manifest):
        if args.out:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(serialize(result))
            document["out"] = args.out
        document["structures"] = list(result.specs)
    elif result is not None:
        document["result"] = result
    return (EXIT_PASS if report.passed else EXIT_FAIL), document


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    verbose = getattr(args, "verbose", 0)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")
    code, document = run(args)
    print(json.dumps(document, indent=2, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
