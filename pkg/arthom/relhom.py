"""Relative homological algebra for the sub-bifunctors F^M and F_M of Ext^1

A short exact sequence 0 → X → Y → Z → 0 is F^M-exact when every map
X → N with N ∈ add M extends to Y, and F_M-exact when every map N → Z
lifts to Y. Both functors have enough relative projectives and injectives,
so relative resolutions are iterated minimal approximations whose short
exact pieces are certified relatively exact as they are built.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Tuple

from .approx import (
    AddClosure,
    coresolution,
    has_left_property,
    has_right_property,
    in_add,
    right_approximation,
    right_resolution,
    tilting_conditions,
)
from .config import settings
from .errors import (
    ApproximationError,
    DefectError,
    EnumerationUnavailableError,
    PreconditionError,
)
from .homology import (
    DimValue,
    ResolutionSeq,
    contravariant_cohomology,
    covariant_cohomology,
    dim_max,
    exact_chain,
    injective_dimension,
    tau,
    tau_inverse,
)
from .models import Condition, FunctorSide
from .repmod import (
    Rep,
    RepMap,
    direct_sum,
    dual_regular_module,
    kernel,
    regular_module,
)

logger = logging.getLogger(__name__)


def _cap(cap: Optional[int]) -> int:
    return settings.CAP_CODIM if cap is None else cap


# ============================================================================
# SUB-BIFUNCTORS AND F-EXACT SEQUENCES
# ============================================================================

@dataclass(frozen=True)
class SubBifunctor:
    """F^M (``upper``) or F_M (``lower``) for a nonzero module M"""

    kind: FunctorSide
    m: Rep

    def __post_init__(self):
        object.__setattr__(self, "kind", FunctorSide(self.kind))
        if self.m.is_zero():
            raise PreconditionError("M is nonzero")

    @classmethod
    def upper(cls, M: Rep) -> "SubBifunctor":
        return cls(FunctorSide.UPPER, M)

    @classmethod
    def lower(cls, M: Rep) -> "SubBifunctor":
        return cls(FunctorSide.LOWER, M)

    @property
    def alg(self):
        return self.m.alg

    @cached_property
    def closure(self) -> AddClosure:
        return AddClosure(self.m)

    @cached_property
    def projectives(self) -> AddClosure:
        A = regular_module(self.alg)
        if self.kind == FunctorSide.UPPER:
            return AddClosure.of([A, tau_inverse(self.m)], name="P(F)")
        return AddClosure.of([A, self.m], name="P(F)")

    @cached_property
    def injectives(self) -> AddClosure:
        DA = dual_regular_module(self.alg)
        if self.kind == FunctorSide.UPPER:
            return AddClosure.of([DA, self.m], name="I(F)")
        return AddClosure.of([DA, tau(self.m)], name="I(F)")

    def label(self) -> str:
        return f"F^{self.m.label()}" if self.kind == FunctorSide.UPPER else f"F_{self.m.label()}"

    def __repr__(self) -> str:
        return f"SubBifunctor({self.label()})"


@dataclass(frozen=True)
class FExactSeq:
    """0 → X --i--> Y --p--> Z → 0"""

    i: RepMap
    p: RepMap

    def __post_init__(self):
        if self.i.dst is not self.p.src:
            raise PreconditionError("the maps are composable", "i.dst is not p.src")

    @property
    def left(self) -> Rep:
        return self.i.src

    @property
    def middle(self) -> Rep:
        return self.i.dst

    @property
    def right(self) -> Rep:
        return self.p.dst

    def is_exact(self) -> bool:
        return exact_chain([self.i, self.p], True, True)

    def is_split(self) -> bool:
        if self.right.is_zero():
            return True
        return has_right_property(self.p, AddClosure(self.right))


def F_proj_inj(F: SubBifunctor) -> Tuple[AddClosure, AddClosure]:
    """(𝒫(F), ℐ(F))"""
    return F.projectives, F.injectives


def is_F_exact(seq: FExactSeq, F: SubBifunctor) -> bool:
    """Rank test of the F-condition against every indecomposable summand of M

    Raises:
        PreconditionError: the sequence is not short exact
    """
    if not seq.is_exact():
        raise PreconditionError("the sequence is exact")
    if F.kind == FunctorSide.UPPER:
        return has_left_property(seq.i, F.closure)
    return has_right_property(seq.p, F.closure)


def _certifier(F: SubBifunctor, what: str, error=DefectError):
    def check(k: int, i: RepMap, p: RepMap) -> None:
        if not is_F_exact(FExactSeq(i, p), F):
            raise error(f"{what} stage {k} is not {F.label()}-exact")
    return check


# ============================================================================
# RELATIVE RESOLUTIONS AND EXT
# ============================================================================

def F_resolution(X: Rep, F: SubBifunctor, kind: str = "projective", cap: Optional[int] = None) -> ResolutionSeq:
    """Minimal F-projective resolution or F-injective coresolution of X

    Every short exact piece is checked F-exact; a failure is a defect,
    since F^M and F_M have enough relative projectives and injectives.
    """
    if X.alg is not F.alg:
        raise PreconditionError("X and M live over the same algebra")
    cap = _cap(cap)
    key = ("F-resolution", F.kind.value, id(F.m), kind, cap)
    hit = X._cache.get(key)
    if hit is not None and hit[0] is F.m:
        return hit[1]
    if kind == "projective":
        res = right_resolution(X, F.projectives, cap, stage_check=_certifier(F, "F-projective resolution"))
        res.kind = "F-projective"
    elif kind == "injective":
        res = coresolution(X, F.injectives, cap, stage_check=_certifier(F, "F-injective coresolution"))
        res.kind = "F-injective"
    else:
        raise PreconditionError("resolution kind is projective or injective", kind)
    logger.debug(f"{res.kind} resolution of {X.label()} for {F.label()}: length {res.length}")
    X._cache[key] = (F.m, res)
    return res


def ext_F(X: Rep, Y: Rep, i: int, F: SubBifunctor, cap: Optional[int] = None) -> int:
    """dim Ext^i_F(X, Y) from the F-projective resolution of X"""
    if i < 0:
        raise PreconditionError("Ext degree is nonnegative")
    res = F_resolution(X, F, "projective", max(_cap(cap), i + 1))
    return contravariant_cohomology(res.terms, res.diffs, Y, i)


def ext_F_via_injective(X: Rep, Y: Rep, i: int, F: SubBifunctor, cap: Optional[int] = None) -> int:
    """dim Ext^i_F(X, Y) from the F-injective coresolution of Y"""
    if i < 0:
        raise PreconditionError("Ext degree is nonnegative")
    res = F_resolution(Y, F, "injective", max(_cap(cap), i + 1))
    return covariant_cohomology(X, res.terms, res.diffs, i)


def pd_id_F(X: Rep, F: SubBifunctor, which: str = "pd", cap: Optional[int] = None) -> DimValue:
    kind = {"pd": "projective", "id": "injective"}.get(which)
    if kind is None:
        raise PreconditionError("which is pd or id", which)
    return F_resolution(X, F, kind, cap).dimension()


def _universe_items(universe) -> List[Rep]:
    if hasattr(universe, "complete"):
        if not universe.complete:
            raise EnumerationUnavailableError("indecomposable enumeration is incomplete")
        return list(universe.items)
    return list(universe)


def gld_F(F: SubBifunctor, cap: Optional[int] = None, universe=None) -> DimValue:
    """sup of pd_F over all indecomposables; needs a complete enumeration"""
    if universe is None:
        from .classify import enumerate_indecomposables
        universe = enumerate_indecomposables(F.alg)
    return dim_max([pd_id_F(X, F, "pd", cap) for X in _universe_items(universe)])


# ============================================================================
# RELATIVE (CO)TILTING
# ============================================================================

def F_tilting_conditions(T: Rep, F: SubBifunctor, which: str = "cotilting", cap: Optional[int] = None) -> List[Condition]:
    """Relative (co)tilting checks

    cotilting: id_F T finite, Ext^i_F(T, T) = 0 for i ≥ 1, and every
    indecomposable of ℐ(F) has a finite F-exact add T-resolution.
    tilting: the dual statements with pd_F and 𝒫(F).
    """
    if which not in ("tilting", "cotilting"):
        raise PreconditionError("which is tilting or cotilting", which)
    cotilting = which == "cotilting"
    label = "id_F" if cotilting else "pd_F"
    d = pd_id_F(T, F, "id" if cotilting else "pd", cap)
    conditions = [Condition(label=f"finite-{label}", ok=not d.is_infinite, detail=f"{label} T = {d}")]
    if d.is_infinite:
        return conditions
    if cotilting:
        nonzero = [i for i in range(1, d.value + 1) if ext_F_via_injective(T, T, i, F, cap)]
    else:
        nonzero = [i for i in range(1, d.value + 1) if ext_F(T, T, i, F, cap)]
    conditions.append(Condition(
        label="self-orthogonal",
        ok=not nonzero,
        detail=f"Ext^i_F(T,T) = 0 for 1 <= i <= {d.value}" if not nonzero else f"Ext^{nonzero[0]}_F(T,T) != 0",
    ))
    C = AddClosure(T)
    targets = F.injectives if cotilting else F.projectives
    failures = []
    lengths = []
    for N in targets.indecomposables:
        try:
            if cotilting:
                res = right_resolution(N, C, cap, stage_check=_certifier(F, "add T-resolution", ApproximationError))
            else:
                res = coresolution(N, C, cap, stage_check=_certifier(F, "add T-coresolution", ApproximationError))
        except ApproximationError as e:
            failures.append(f"{N.label()}: {e}")
            continue
        if not res.terminated:
            failures.append(f"{N.label()}: not within cap")
        lengths.append(res.length)
    what = "I(F)" if cotilting else "P(F)"
    conditions.append(Condition(
        label="resolves-F-injectives" if cotilting else "coresolves-F-projectives",
        ok=not failures,
        detail=f"every indecomposable of {what} has a finite F-exact add T-(co)resolution, max length {max(lengths, default=0)}"
        if not failures else "; ".join(failures),
    ))
    return conditions


def is_F_cotilting(T: Rep, F: SubBifunctor, cap: Optional[int] = None) -> bool:
    return all(c.ok for c in F_tilting_conditions(T, F, "cotilting", cap))


def is_F_tilting(T: Rep, F: SubBifunctor, cap: Optional[int] = None) -> bool:
    return all(c.ok for c in F_tilting_conditions(T, F, "tilting", cap))


# ============================================================================
# PERPENDICULAR CATEGORIES AND FROBENIUS COVERS
# ============================================================================

def in_perp_F(M: Rep, X: Rep, F: SubBifunctor, cap: Optional[int] = None) -> bool:
    """Ext^i_F(M, X) = 0 for 1 ≤ i ≤ pd_F M"""
    d = pd_id_F(M, F, "pd", cap)
    if d.is_infinite:
        raise PreconditionError("pd_F M is finite", f"pd_F M = {d}")
    return all(ext_F(M, X, i, F, cap) == 0 for i in range(1, d.value + 1))


def perp_F(M: Rep, F: SubBifunctor, universe, cap: Optional[int] = None) -> List[Rep]:
    """The indecomposables X of the universe with Ext^{>0}_F(M, X) = 0"""
    return [X for X in _universe_items(universe) if in_perp_F(M, X, F, cap)]


def frobenius_cover(X: Rep, M: Rep, cap: Optional[int] = None, check: bool = True) -> FExactSeq:
    """0 → Y → M_X → X → 0 with M_X ∈ add M, F^M-exact, for X ∈ M^{⊥_F}

    Built from the minimal right add M-approximation of X. M must be a
    cogenerator.
    """
    F = SubBifunctor.upper(M)
    if not in_add(dual_regular_module(M.alg), F.closure):
        raise PreconditionError("M is a cogenerator", M.label())
    if check and not in_perp_F(M, X, F, cap):
        raise PreconditionError("X ∈ M^⊥F", X.label())
    g = right_approximation(X, F.closure).map
    if not g.is_surjective():
        raise ApproximationError(f"right add {M.label()}-approximation of {X.label()} is not onto")
    _, inc = kernel(g)
    seq = FExactSeq(inc, g)
    if not is_F_exact(seq, F):
        raise DefectError(f"cover of {X.label()} is not {F.label()}-exact")
    return seq


def cotilting_transport(T: Rep, F: SubBifunctor, cap: Optional[int] = None) -> Tuple[Rep, List[Condition]]:
    """U = Hom_A(𝒫(F), T) over End_A(T), with its cotilting certificate

    Conditions: F-cotilting of T, classical cotilting of U, and
    id_F T ≤ id U ≤ id_F T + 2.
    """
    from .endocat import endo_algebra, hom_transport

    pres = endo_algebra(T)
    P = direct_sum(F.projectives.indecomposables, F.alg)
    U = hom_transport(P, pres)
    conditions = [Condition(
        label="F-cotilting",
        ok=is_F_cotilting(T, F, cap),
        detail=f"T is {F.label()}-cotilting",
    )]
    cot = tilting_conditions(U, "cotilting", cap)
    conditions.append(Condition(
        label="U-cotilting",
        ok=all(c.ok for c in cot),
        detail="; ".join(f"{c.label}: {c.detail}" for c in cot),
    ))
    dF = pd_id_F(T, F, "id", cap)
    dU = injective_dimension(U, cap)
    ok = not dF.is_infinite and not dU.is_infinite and dF.value <= dU.value <= dF.value + 2
    conditions.append(Condition(
        label="id-bounds",
        ok=ok,
        detail=f"id_F T = {dF}, id U = {dU}",
    ))
    return U, conditions
