"""
Contraction data, the ∂_{ρ₁} operator, planar trees and homotopy transfer of A∞[1]- and A∞-conformal structures.

All maps of a contraction are arity-1 ConfMaps, i.e. graded ℚ[∂]-linear maps.
"""
import functools
import itertools

from confalg.ainf import AInf1Structure, AInfStructure, check_ainf1, shift, unshift
from confalg.confmap import IDENTITY, ConfMap, diamond, identity_map, insert, multi_insert, zero_report
from confalg.confmod import GradedModule
from confalg.utils import ConstructionError, Report, log_message


class Contraction:
    """
    Contraction of (V, ρ₁) onto (W, θ₁).

    Attributes:
        big (GradedModule): V.
        small (GradedModule): W.
        rho1 (ConfMap): differential of V, degree -1.
        theta1 (ConfMap): differential of W, degree -1.
        p (ConfMap): V -> W, degree 0.
        i (ConfMap): W -> V, degree 0.
        h (ConfMap): V -> V, degree +1, with id_V - ip = ρ₁h + hρ₁.
    """

    def __init__(self, big: GradedModule, small: GradedModule, rho1: ConfMap, theta1: ConfMap, p: ConfMap,
                 i: ConfMap, h: ConfMap):
        expected = {
            "rho1": (rho1, big, big, -1),
            "theta1": (theta1, small, small, -1),
            "p": (p, big, small, 0),
            "i": (i, small, big, 0),
            "h": (h, big, big, 1),
        }
        for name, (f, source, target, degree) in expected.items():
            if not isinstance(f, ConfMap):
                raise TypeError(f"{name} must be a ConfMap, got {type(f).__name__}")
            if f.arity != 1 or f.degree != degree or f.source != source or f.target != target:
                raise ValueError(f"{name} must be a degree-{degree} linear map {source} -> {target}, "
                                 f"got {f.signature()}")
        self.big = big
        self.small = small
        self.rho1 = rho1
        self.theta1 = theta1
        self.p = p
        self.i = i
        self.h = h

    def __repr__(self):
        return f"Contraction({self.big.generators} -> {self.small.generators})"


def identity_contraction(module: GradedModule, rho1: ConfMap = None) -> Contraction:
    """V = W, i = p = id, h = 0."""
    if rho1 is None:
        rho1 = ConfMap.zero(module, module, 1, -1)
    ident = identity_map(module)
    return Contraction(module, module, rho1, rho1, ident, ident, ConfMap.zero(module, module, 1, 1))


def shift_contraction(contraction: Contraction, s: int = 1) -> Contraction:
    """
    The same contraction on complexes shifted by s; linear maps pick up no sign.
    """
    C = contraction
    return Contraction(C.big.degree_shift(s), C.small.degree_shift(s), C.rho1.shifted(s), C.theta1.shifted(s),
                       C.p.shifted(s), C.i.shifted(s), C.h.shifted(s))


def check_contraction(contraction: Contraction) -> Report:
    """
    ρ₁² = 0, θ₁² = 0, p and i chain maps, id_V - ip = ρ₁h + hρ₁ and pi = id_W, on generators.
    """
    C = contraction
    items = [
        zero_report("rho1-square", insert(C.rho1, 1, C.rho1), arity=1),
        zero_report("theta1-square", insert(C.theta1, 1, C.theta1), arity=1),
        zero_report("p-chain", insert(C.p, 1, C.rho1) - insert(C.theta1, 1, C.p), arity=1),
        zero_report("i-chain", insert(C.i, 1, C.theta1) - insert(C.rho1, 1, C.i), arity=1),
        zero_report("homotopy", identity_map(C.big) - insert(C.i, 1, C.p) - insert(C.rho1, 1, C.h)
                    - insert(C.h, 1, C.rho1), arity=1),
        zero_report("retract", insert(C.p, 1, C.i) - identity_map(C.small), arity=1),
    ]
    return Report.combine("contraction", items)


def partial_rho1(rho1: ConfMap, f: ConfMap) -> ConfMap:
    """
    ∂_{ρ₁}(f) = ρ₁ ⋄ f - (-1)^p f ⋄ ρ₁ for f of map degree p.
    """
    if f.arity < 2:
        raise ValueError(f"∂_ρ₁ is applied to maps of arity >= 2, got {f.arity}")
    right = diamond(f, rho1)
    return diamond(rho1, f) + right if f.degree % 2 else diamond(rho1, f) - right


class PlanarTree:
    """
    Planar rooted tree: a leaf, or an ordered list of at least two subtrees.
    """

    def __init__(self, children=()):
        self.children = tuple(children)
        if len(self.children) == 1:
            raise ValueError("an internal vertex needs at least two subtrees")
        for child in self.children:
            if not isinstance(child, PlanarTree):
                raise TypeError(f"subtrees must be PlanarTree instances, got {type(child).__name__}")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @functools.cached_property
    def leaves(self) -> int:
        return 1 if self.is_leaf else sum(child.leaves for child in self.children)

    @functools.cached_property
    def internal_vertices(self) -> int:
        return 0 if self.is_leaf else 1 + sum(child.internal_vertices for child in self.children)

    @property
    def internal_edges(self) -> int:
        return max(self.internal_vertices - 1, 0)

    @property
    def is_binary(self) -> bool:
        return self.is_leaf or (len(self.children) == 2 and all(child.is_binary for child in self.children))

    def __eq__(self, other):
        return isinstance(other, PlanarTree) and self.children == other.children

    def __hash__(self):
        return hash(self.children)

    def __repr__(self):
        if self.is_leaf:
            return "|"
        return "(" + ",".join(repr(child) for child in self.children) + ")"


LEAF = PlanarTree()


def graft(*subtrees) -> PlanarTree:
    """T₁ ∨ ... ∨ T_l."""
    return PlanarTree(subtrees)


def _compositions(k: int, binary: bool):
    if binary:
        for j in range(1, k):
            yield j, k - j
        return
    for parts in range(2, k + 1):
        for cuts in itertools.combinations(range(1, k), parts - 1):
            bounds = (0,) + cuts + (k,)
            yield tuple(bounds[t + 1] - bounds[t] for t in range(parts))


@functools.lru_cache(maxsize=None)
def _trees(k: int, binary: bool) -> tuple:
    if k == 1:
        return (LEAF,)
    result = []
    for parts in _compositions(k, binary):
        for subtrees in itertools.product(*(_trees(part, binary) for part in parts)):
            result.append(PlanarTree(subtrees))
    return tuple(result)


def enumerate_trees(k: int, binary: bool = True) -> list:
    """
    Planar trees with k leaves; binary ones only, or all trees whose internal vertices have arity >= 2.
    """
    if k < 1:
        raise ValueError(f"a tree has at least one leaf, got k={k}")
    return list(_trees(k, binary))


@functools.lru_cache(maxsize=None)
def count_trees(k: int, binary: bool = True) -> int:
    """Catalan(k-1) for binary trees, the small Schröder numbers otherwise."""
    if k < 1:
        raise ValueError(f"a tree has at least one leaf, got k={k}")
    if k == 1:
        return 1
    total = 0
    for parts in _compositions(k, binary):
        count = 1
        for part in parts:
            count *= count_trees(part, binary)
        total += count
    return total


def rho_tree(tree: PlanarTree, mults: dict, h: ConfMap) -> ConfMap:
    """
    ρ_T = ρ_l((h∘ρ_{T₁}) ⊗ ... ⊗ (h∘ρ_{T_l})), with h∘ρ_| the identity.

    @param mults: arity -> ConfMap of degree -1
    @raise ValueError: T is a leaf or an internal vertex has an arity missing from mults
    """
    if tree.is_leaf:
        raise ValueError("the leaf has no ρ_T; it enters as the identity")
    arity = len(tree.children)
    if arity not in mults:
        raise ValueError(f"no map of arity {arity} for tree {tree!r}")
    inners = []
    for child in tree.children:
        if child.is_leaf:
            inners.append(IDENTITY)
            continue
        branch = insert(h, 1, rho_tree(child, mults, h))
        if branch.degree != 0:
            raise RuntimeError(f"h∘ρ_T has degree {branch.degree}, expected 0")
        inners.append(branch)
    return multi_insert(mults[arity], inners)


def tree_sum(k: int, mults: dict, h: ConfMap, binary: bool = True):
    """
    ρ_k = Σ_T (-1)^{internal edges} ρ_T over the trees with k leaves whose vertex arities all occur in mults.
    @return: the sum, or None when no tree qualifies
    """
    total = None
    for tree in enumerate_trees(k, binary):
        try:
            term = rho_tree(tree, mults, h)
        except ValueError:
            continue
        if tree.internal_edges % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _conjugate(contraction: Contraction, f: ConfMap) -> ConfMap:
    """p ∘ f ∘ i^{⊗k}."""
    return insert(contraction.p, 1, multi_insert(f, [contraction.i] * f.arity))


def transfer(contraction: Contraction, structure: AInf1Structure, up_to_k: int, binary: bool = None,
             check: bool = True, verbose: int = 0) -> AInf1Structure:
    """
    Transfers an A∞[1]-conformal structure on V to W along a contraction.

    Parameters:
    contraction (Contraction): V -> W, with contraction.rho1 equal to ρ₁ of the structure.
    structure (AInf1Structure): the structure on V.
    up_to_k (int): largest transferred arity, at least 2.
    binary (bool): sum over binary trees only; defaults to True when the structure has no map of arity > 2.
    check (bool): verify the contraction and the input relations up to up_to_k first.

    Returns:
    AInf1Structure: θ₁ from the contraction and θ_k = p ∘ ρ_k ∘ i^{⊗k} for 2 <= k <= up_to_k.

    Raises:
    ValueError: bound below 2 or mismatched modules.
    ConstructionError: the contraction or the input structure fails its identities.
    """
    if up_to_k < 2:
        raise ValueError(f"transfer bound must be at least 2, got {up_to_k}")
    C = contraction
    if structure.module != C.big:
        raise ValueError(f"structure lives on {structure.module}, contraction starts at {C.big}")
    if C.rho1 != structure.mult(1):
        raise ValueError("the contraction differential differs from ρ₁ of the structure")
    if binary is None:
        binary = all(k <= 2 for k in structure.mults)
    if check:
        report = check_contraction(C)
        if not report:
            raise ConstructionError("invalid contraction", report)
        report = check_ainf1(structure, up_to_k, verbose)
        if not report:
            raise ConstructionError("input is not an A∞[1]-conformal algebra", report)
    mults = {k: f for k, f in structure.mults.items() if k >= 2}
    if binary:
        mults = {k: f for k, f in mults.items() if k == 2}
    transferred = {1: C.theta1}
    for k in range(2, up_to_k + 1):
        rho_k = tree_sum(k, mults, C.h, binary)
        if rho_k is None:
            transferred[k] = ConfMap.zero(C.small, C.small, k, -1)
        else:
            transferred[k] = _conjugate(C, rho_k)
        log_message(f"transfer: θ_{k} with {len(transferred[k].table)} entries", verbose)
    return AInf1Structure(C.small, transferred)


def transfer_ainf(contraction: Contraction, structure: AInfStructure, up_to_k: int, binary: bool = None,
                  check: bool = True, verbose: int = 0) -> AInfStructure:
    """
    shift, transfer, unshift. The contraction may be given on the unshifted or on the shifted complexes.
    """
    shifted = shift(structure)
    if contraction.big == structure.module:
        contraction = shift_contraction(contraction)
    elif contraction.big != shifted.module:
        raise ValueError(f"contraction starts at {contraction.big}, which is neither {structure.module} "
                         f"nor its shift")
    return unshift(transfer(contraction, shifted, up_to_k, binary, check, verbose))


def lemma_theta3(contraction: Contraction, structure: AInf1Structure) -> ConfMap:
    """
    θ₃ = -p ρ₂(hρ₂(ix, iy), iz) - p ρ₂(ix, hρ₂(iy, iz)), composed with i before the trees are formed.
    """
    C = contraction
    rho2 = structure.mult(2)
    pair = multi_insert(rho2, [C.i, C.i])
    h_pair = insert(C.h, 1, pair)
    left = multi_insert(rho2, [h_pair, C.i])
    right = multi_insert(rho2, [C.i, h_pair])
    return -insert(C.p, 1, left) - insert(C.p, 1, right)


__all__ = [
    "Contraction", "PlanarTree", "LEAF", "identity_contraction", "shift_contraction", "check_contraction",
    "partial_rho1", "graft", "enumerate_trees", "count_trees", "rho_tree", "tree_sum", "transfer", "transfer_ainf",
    "lemma_theta3",
]
