"""add-closures, minimal add M-approximations, M-coresolutions and (co)tilting checks"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .config import settings
from .errors import ApproximationError, PreconditionError
from .exactlin import span_rank
from .homology import (
    DimValue,
    ResolutionSeq,
    ext,
    injective_dimension,
    projective_dimension,
)
from .models import Condition
from .repmod import (
    Rep,
    RepMap,
    cokernel,
    decompose,
    direct_sum,
    dual_regular_module,
    hom,
    indecomposable_iso,
    kernel,
    map_from_sum,
    map_into_sum,
    radical_endomorphisms,
    regular_module,
    zero_module,
)

logger = logging.getLogger(__name__)


# ============================================================================
# ADD-CLOSURES
# ============================================================================

class AddClosure:
    """add M, held as the canonical list of indecomposable summands of M"""

    def __init__(self, generator: Rep, name: Optional[str] = None):
        self.generator = generator
        self.alg = generator.alg
        self.name = name or generator.label()
        self.indecomposables: List[Rep] = decompose(generator).indecomposables()

    @classmethod
    def of(cls, modules: Sequence[Rep], name: Optional[str] = None) -> "AddClosure":
        modules = [M for M in modules if not M.is_zero()]
        if not modules:
            raise PreconditionError("add-closure of at least one nonzero module")
        return cls(direct_sum(modules, modules[0].alg), name)

    def __len__(self) -> int:
        return len(self.indecomposables)

    def index_of(self, R: Rep) -> Optional[int]:
        """Position of the summand isomorphic to the indecomposable R"""
        for k, N in enumerate(self.indecomposables):
            if N.dims == R.dims and indecomposable_iso(N, R) is not None:
                return k
        return None

    def contains(self, X: Rep) -> bool:
        return in_add(X, self)

    def __repr__(self) -> str:
        return f"AddClosure({self.name}, {len(self)} indecomposables)"


def in_add(X: Rep, C: AddClosure) -> bool:
    """Every indecomposable summand of X is isomorphic to one of C's"""
    if X.alg is not C.alg:
        raise PreconditionError("module and add-closure over the same algebra")
    if X.is_zero():
        return True
    return all(C.index_of(R) is not None for R, _ in decompose(X).summands)


def add_equal(X: Rep, Y: Rep) -> bool:
    """add X = add Y, compared as sets of indecomposables"""
    if X.is_zero() or Y.is_zero():
        return X.is_zero() and Y.is_zero()
    return in_add(X, AddClosure(Y)) and in_add(Y, AddClosure(X))


# ============================================================================
# APPROXIMATIONS
# ============================================================================

@dataclass
class Approximation:
    """A minimal approximation with its summand bookkeeping

    ``parts[k]`` is (index into the closure, component map). For a left
    approximation the components are X → N; for a right one N → X.
    """

    map: RepMap
    parts: List[Tuple[int, RepMap]]
    closure: AddClosure
    left: bool

    @property
    def module(self) -> Rep:
        return self.map.dst if self.left else self.map.src


def _rad_maps(src: Rep, dst: Rep, same: bool) -> List[RepMap]:
    if same:
        return radical_endomorphisms(src)
    return hom(src, dst).maps


def _greedy_independent(candidates: List[RepMap], base: List[tuple], n: int, field) -> List[RepMap]:
    vectors = list(base)
    current = span_rank(field, vectors, n)
    chosen = []
    for h in candidates:
        trial = vectors + [h.flatten()]
        r = span_rank(field, trial, n)
        if r > current:
            vectors, current = trial, r
            chosen.append(h)
    return chosen


def left_approximation(X: Rep, C: AddClosure) -> Approximation:
    """Minimal left add C-approximation X → M'

    The multiplicity of N in M' is the dimension of Hom(X, N) modulo maps
    that factor through radical maps N' → N; components are chosen greedily
    from the Hom basis in canonical order.
    """
    parts: List[Tuple[int, RepMap]] = []
    homs = [hom(X, N).maps for N in C.indecomposables]
    for idx, N in enumerate(C.indecomposables):
        if not homs[idx]:
            continue
        base = []
        for idx2, N2 in enumerate(C.indecomposables):
            for psi in _rad_maps(N2, N, idx2 == idx):
                for g in homs[idx2]:
                    base.append((psi @ g).flatten())
        n = len(homs[idx][0].flatten())
        for h in _greedy_independent(homs[idx], base, n, X.field):
            parts.append((idx, h))
    if not parts:
        Z = zero_module(X.alg)
        return Approximation(RepMap.zero(X, Z), [], C, left=True)
    target = direct_sum([C.indecomposables[idx] for idx, _ in parts], X.alg)
    f = map_into_sum([h for _, h in parts], target)
    return Approximation(f, parts, C, left=True)


def right_approximation(X: Rep, C: AddClosure) -> Approximation:
    """Minimal right add C-approximation M' → X"""
    parts: List[Tuple[int, RepMap]] = []
    homs = [hom(N, X).maps for N in C.indecomposables]
    for idx, N in enumerate(C.indecomposables):
        if not homs[idx]:
            continue
        base = []
        for idx2, N2 in enumerate(C.indecomposables):
            for psi in _rad_maps(N, N2, idx2 == idx):
                for g in homs[idx2]:
                    base.append((g @ psi).flatten())
        n = len(homs[idx][0].flatten())
        for h in _greedy_independent(homs[idx], base, n, X.field):
            parts.append((idx, h))
    if not parts:
        Z = zero_module(X.alg)
        return Approximation(RepMap.zero(Z, X), [], C, left=False)
    source = direct_sum([C.indecomposables[idx] for idx, _ in parts], X.alg)
    g = map_from_sum([h for _, h in parts], source)
    return Approximation(g, parts, C, left=False)


def minimal_left_approx(X: Rep, C: AddClosure) -> RepMap:
    return left_approximation(X, C).map


def minimal_right_approx(X: Rep, C: AddClosure) -> RepMap:
    return right_approximation(X, C).map


def has_left_property(f: RepMap, C: AddClosure) -> bool:
    """Hom(M', N) → Hom(X, N) is onto for every N in C (rank test)"""
    X, Mp = f.src, f.dst
    for N in C.indecomposables:
        target = hom(X, N).maps
        if not target:
            continue
        vecs = [(phi @ f).flatten() for phi in hom(Mp, N).maps]
        if span_rank(X.field, vecs, len(target[0].flatten())) != len(target):
            return False
    return True


def has_right_property(g: RepMap, C: AddClosure) -> bool:
    """Hom(N, M') → Hom(N, X) is onto for every N in C"""
    Mp, X = g.src, g.dst
    for N in C.indecomposables:
        target = hom(N, X).maps
        if not target:
            continue
        vecs = [(g @ phi).flatten() for phi in hom(N, Mp).maps]
        if span_rank(X.field, vecs, len(target[0].flatten())) != len(target):
            return False
    return True


def is_minimal(approx: Approximation) -> bool:
    """Deleting any single summand destroys the approximation property"""
    parts = approx.parts
    C = approx.closure
    for k in range(len(parts)):
        rest = parts[:k] + parts[k + 1:]
        if not rest:
            continue
        M = direct_sum([C.indecomposables[i] for i, _ in rest], C.alg)
        if approx.left:
            f = map_into_sum([h for _, h in rest], M)
            if has_left_property(f, C):
                return False
        else:
            g = map_from_sum([h for _, h in rest], M)
            if has_right_property(g, C):
                return False
    return True


# ============================================================================
# CORESOLUTIONS
# ============================================================================

StageCheck = Callable[[int, RepMap, RepMap], None]


def coresolution(
    X: Rep,
    C: AddClosure,
    cap: Optional[int] = None,
    stage_check: Optional[StageCheck] = None,
) -> ResolutionSeq:
    """0 → X → M_0 → M_1 → ... by minimal left approximations of cokernels

    ``stage_check(k, i, p)`` sees every short exact piece 0 → K → M_k → Z → 0
    and may raise to reject it.
    """
    cap = settings.CAP_CODIM if cap is None else cap
    approx = left_approximation(X, C)
    if not approx.map.is_injective():
        raise ApproximationError("left approximation is not injective at stage 0")
    terms = [approx.module]
    diffs: List[RepMap] = []
    cosyz: List[Rep] = []
    prev = approx.map
    truncated = None
    while True:
        Z, pi = cokernel(prev)
        if stage_check is not None:
            stage_check(len(terms) - 1, prev, pi)
        if Z.is_zero():
            break
        cosyz.append(Z)
        if len(terms) - 1 >= cap:
            truncated = cap
            break
        step = left_approximation(Z, C)
        if not step.map.is_injective():
            raise ApproximationError(f"left approximation is not injective at stage {len(terms)}")
        diffs.append(step.map @ pi)
        terms.append(step.module)
        prev = step.map
    if truncated is not None:
        logger.warning(f"{C.name}-coresolution of {X.label()} truncated at cap {cap}")
    return ResolutionSeq(
        kind="M-coresolution",
        module=X,
        terms=terms,
        diffs=diffs,
        augmentation=approx.map,
        coresolution=True,
        truncated_at=truncated,
        syzygies=cosyz,
    )


def right_resolution(
    X: Rep,
    C: AddClosure,
    cap: Optional[int] = None,
    stage_check: Optional[StageCheck] = None,
) -> ResolutionSeq:
    """... → M_1 → M_0 → X → 0 by minimal right approximations of kernels"""
    cap = settings.CAP_CODIM if cap is None else cap
    approx = right_approximation(X, C)
    if not approx.map.is_surjective():
        raise ApproximationError("right approximation is not surjective at stage 0")
    terms = [approx.module]
    diffs: List[RepMap] = []
    syz: List[Rep] = []
    prev = approx.map
    truncated = None
    while True:
        K, inc = kernel(prev)
        if stage_check is not None:
            stage_check(len(terms) - 1, inc, prev)
        if K.is_zero():
            break
        syz.append(K)
        if len(terms) - 1 >= cap:
            truncated = cap
            break
        step = right_approximation(K, C)
        if not step.map.is_surjective():
            raise ApproximationError(f"right approximation is not surjective at stage {len(terms)}")
        diffs.append(inc @ step.map)
        terms.append(step.module)
        prev = step.map
    if truncated is not None:
        logger.warning(f"{C.name}-resolution of {X.label()} truncated at cap {cap}")
    return ResolutionSeq(
        kind="M-resolution",
        module=X,
        terms=terms,
        diffs=diffs,
        augmentation=approx.map,
        coresolution=False,
        truncated_at=truncated,
        syzygies=syz,
    )


def m_codim(X: Rep, C: AddClosure, cap: Optional[int] = None) -> DimValue:
    return coresolution(X, C, cap).dimension()


# ============================================================================
# DUALIZING SUMMANDS AND (CO)TILTING
# ============================================================================

def is_dualizing_summand(X: Rep, Y: Rep) -> bool:
    """Y embeds by a left add X-approximation whose cokernel embeds the same way"""
    if not in_add(X, AddClosure(Y)):
        raise PreconditionError("X is a direct summand of Y")
    C = AddClosure(X)
    first = left_approximation(Y, C)
    if not first.map.is_injective():
        return False
    Z, _ = cokernel(first.map)
    if Z.is_zero():
        return True
    return left_approximation(Z, C).map.is_injective()


def tilting_conditions(T: Rep, which: str = "cotilting", cap: Optional[int] = None) -> List[Condition]:
    """Classical (co)tilting conditions with a certificate (co)resolution"""
    if which not in ("tilting", "cotilting"):
        raise PreconditionError("which is tilting or cotilting", which)
    alg = T.alg
    conditions: List[Condition] = []
    d = projective_dimension(T, cap) if which == "tilting" else injective_dimension(T, cap)
    label = "pd" if which == "tilting" else "id"
    conditions.append(Condition(label=f"finite-{label}", ok=not d.is_infinite, detail=f"{label} T = {d}"))
    if d.is_infinite:
        return conditions
    nonzero = [i for i in range(1, d.value + 1) if ext(T, T, i)]
    conditions.append(Condition(
        label="self-orthogonal",
        ok=not nonzero,
        detail=f"Ext^i(T,T) = 0 for 1 <= i <= {d.value}" if not nonzero else f"Ext^{nonzero[0]}(T,T) != 0",
    ))
    count = len(decompose(T).summands)
    conditions.append(Condition(
        label="summand-count",
        ok=count == alg.num_vertices,
        detail=f"|T| = {count}, vertices = {alg.num_vertices}",
    ))
    if count == alg.num_vertices and not nonzero:
        C = AddClosure(T)
        try:
            if which == "tilting":
                cert = coresolution(regular_module(alg), C, cap)
                what = "A has a finite add T-coresolution"
            else:
                cert = right_resolution(dual_regular_module(alg), C, cap)
                what = "DA has a finite add T-resolution"
            ok = cert.terminated and cert.verify()
            detail = f"{what} of length {cert.length}" if ok else f"{what}: not within cap"
        except ApproximationError as e:
            ok, detail = False, str(e)
        conditions.append(Condition(label="certificate", ok=ok, detail=detail))
    return conditions


def is_tilting_cotilting(T: Rep, which: str = "cotilting", cap: Optional[int] = None) -> bool:
    return all(c.ok for c in tilting_conditions(T, which, cap))
