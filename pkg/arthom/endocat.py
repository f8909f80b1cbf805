"""Endomorphism algebras as bound quiver algebras and the Hom-transport functors

Λ = End_A(M) is presented on the basic part B = N_1 ⊕ ... ⊕ N_r of M with
multiplication f·g = f∘g. Vertex k stands for N_k, an arrow s → t for a
radical map N_s → N_t, and a path for the composite of its arrows, so the
paths from s to t span Hom_A(N_s, N_t). With this convention Hom_A(X, M)
is a left Λ-module by post-composition and Hom_A(M, M) is the regular module.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .approx import AddClosure, in_add
from .config import settings
from .errors import AlgebraMismatchError, DefectError, PreconditionError
from .exactlin import Mat, kernel_basis, span_rank
from .homology import is_injective, rel_domdim
from .models import EvalDirection
from .pathalg import (
    Arrow,
    BoundQuiverAlgebra,
    GroebnerBasis,
    Path,
    Quiver,
    Relation,
    to_text as algebra_to_text,
    trivial_path,
)
from .repmod import (
    Rep,
    RepMap,
    decompose,
    dual_regular_module,
    hom,
    radical_endomorphisms,
    regular_module,
)

logger = logging.getLogger(__name__)


@dataclass
class EndoPresentation:
    """End_A(M) as a bound quiver algebra with its summand bookkeeping

    Attributes:
        module: the module M as given
        summands: canonical indecomposable summands; vertex k is summands[k]
        algebra: the presented algebra Λ
        arrow_maps: arrow k of Λ as a radical map between summands
        path_maps: basis path k of Λ as a map between summands
        hom_dims: dim Hom_A(N_s, N_t) keyed by (s, t)
    """

    module: Rep
    summands: List[Rep]
    algebra: BoundQuiverAlgebra
    arrow_maps: List[RepMap]
    path_maps: List[RepMap]
    hom_dims: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def base(self) -> BoundQuiverAlgebra:
        return self.module.alg

    @property
    def dimension(self) -> int:
        return sum(self.hom_dims.values())

    def vertex_of(self, N: Rep) -> Optional[int]:
        """Vertex of the summand isomorphic to the indecomposable N"""
        return AddClosure(self.module).index_of(N)


# ============================================================================
# PRESENTATION
# ============================================================================

def _radical_maps(summands: List[Rep], s: int, t: int) -> List[RepMap]:
    if s == t:
        return radical_endomorphisms(summands[s])
    return hom(summands[s], summands[t]).maps


def _choose_arrows(summands: List[Rep]) -> List[Tuple[int, int, RepMap]]:
    """Radical maps whose classes form a basis of rad/rad² between each pair"""
    r = len(summands)
    rad = {(s, t): _radical_maps(summands, s, t) for s in range(r) for t in range(r)}
    arrows = []
    for s in range(r):
        for t in range(r):
            if not rad[(s, t)]:
                continue
            fld = summands[s].field
            n = len(rad[(s, t)][0].flatten())
            vectors = [
                (g @ f).flatten()
                for k in range(r)
                for f in rad[(s, k)]
                for g in rad[(k, t)]
            ]
            current = span_rank(fld, vectors, n)
            for h in rad[(s, t)]:
                trial = vectors + [h.flatten()]
                rk = span_rank(fld, trial, n)
                if rk > current:
                    vectors, current = trial, rk
                    arrows.append((s, t, h))
    return arrows


def _word_map(summands: List[Rep], arrow_maps: List[RepMap], p: Path) -> RepMap:
    if not p.arrows:
        return RepMap.identity(summands[p.source])
    out = arrow_maps[p.arrows[-1]]
    for k in reversed(p.arrows[:-1]):
        out = arrow_maps[k] @ out
    return out


def _normal_paths(quiver: Quiver, gb: GroebnerBasis, max_length: int) -> List[List[Path]]:
    tips = [t.arrows for t in gb.tips]
    level = [trivial_path(v) for v in range(quiver.num_vertices)]
    levels = [level]
    for _ in range(max_length):
        nxt = []
        for w in level:
            for k in quiver.out_arrows(w.target):
                cand = Path(w.source, quiver.arrows[k].target, (k,) + w.arrows)
                if not any(cand.arrows[:len(t)] == t for t in tips):
                    nxt.append(cand)
        nxt.sort(key=lambda p: p.key)
        levels.append(nxt)
        level = nxt
        if not level:
            break
    return levels


def endo_algebra(M: Rep, path_cap: Optional[int] = None) -> EndoPresentation:
    """Quiver and relations of End_A(M), certified by dimension count

    Relations are found degree by degree: at degree d the kernel of
    (normal paths of length ≤ d) → Hom between summands is added to the
    Gröbner basis, until no normal path of the current length survives.

    Raises:
        PreconditionError: M is zero
        DefectError: the presentation does not reproduce dim End_A(M)
    """
    cached = M._cache.get("endo")
    if cached is not None:
        return cached
    if M.is_zero():
        raise PreconditionError("M is nonzero")
    path_cap = settings.CAP_PATH_LENGTH if path_cap is None else path_cap
    fld = M.field
    summands = decompose(M).indecomposables()
    r = len(summands)
    hom_dims = {(s, t): len(hom(summands[s], summands[t])) for s in range(r) for t in range(r)}
    total = sum(hom_dims.values())

    chosen = _choose_arrows(summands)
    arrows = tuple(Arrow(f"a{k + 1}", s, t) for k, (s, t, _) in enumerate(chosen))
    arrow_maps = [h for _, _, h in chosen]
    quiver = Quiver(tuple(str(k + 1) for k in range(r)), arrows)
    logger.debug(f"End({M.label()}): {r} vertices, {len(arrows)} arrows, dim {total}")

    gb = GroebnerBasis(fld, quiver, path_cap)
    relations: List[Relation] = []
    d = 1
    while True:
        d += 1
        if d > total + 1:
            raise DefectError(f"relation search for End({M.label()}) passed the nilpotency bound")
        levels = _normal_paths(quiver, gb, d)
        if len(levels) <= d or not levels[d]:
            break
        by_pair: Dict[Tuple[int, int], List[Path]] = {}
        for lv in levels:
            for p in lv:
                by_pair.setdefault((p.source, p.target), []).append(p)
        new = []
        for (s, t), paths in sorted(by_pair.items()):
            if all(p.length < d for p in paths):
                continue
            n = sum(summands[s].dims[v] * summands[t].dims[v] for v in range(len(M.dims)))
            cols = [_word_map(summands, arrow_maps, p).flatten() for p in paths]
            K = kernel_basis(Mat.from_columns(fld, cols, n))
            for j in range(K.cols):
                vec = K.column(j)
                elem = {p: c for p, c in zip(paths, vec) if c}
                tip = max(elem, key=lambda p: p.key)
                inv = fld.inv(elem[tip])
                elem = {p: fld.mul(c, inv) for p, c in elem.items()}
                terms = tuple((elem[p], p) for p in sorted(elem, key=lambda p: p.key, reverse=True))
                relations.append(Relation(terms))
                new.append(elem)
        if new:
            gb.complete(new)
            levels = _normal_paths(quiver, gb, d)
            if len(levels) <= d or not levels[d]:
                break

    lam = BoundQuiverAlgebra(fld, quiver, relations, path_cap)
    if lam.dim != total:
        raise DefectError(f"End({M.label()}) presentation has dim {lam.dim}, expected {total}")
    path_maps = [_word_map(summands, arrow_maps, p) for p in lam.basis]
    for (s, t), dim_st in hom_dims.items():
        vecs = [path_maps[k].flatten() for k in lam.between(s, t)]
        n = sum(summands[s].dims[v] * summands[t].dims[v] for v in range(len(M.dims)))
        if span_rank(fld, vecs, n) != dim_st:
            raise DefectError(f"paths {s + 1} -> {t + 1} do not span Hom between the summands")
    pres = EndoPresentation(
        module=M,
        summands=summands,
        algebra=lam,
        arrow_maps=arrow_maps,
        path_maps=path_maps,
        hom_dims=hom_dims,
    )
    M._cache["endo"] = pres
    logger.info(f"✅ End({M.label()}) presented: {r} vertices, {len(arrows)} arrows, {len(relations)} relations")
    return pres


def to_text(pres: EndoPresentation) -> str:
    """Algebra file text of Λ, with the summand of each vertex as a comment"""
    header = [f"# End of {pres.module.label()}"]
    for k, N in enumerate(pres.summands):
        header.append(f"# vertex {k + 1}: dims {list(N.dims)}")
    return "\n".join(header) + "\n" + algebra_to_text(pres.algebra)


# ============================================================================
# TRANSPORT
# ============================================================================

def _check_base(X: Rep, pres: EndoPresentation) -> None:
    if X.alg is not pres.base:
        raise AlgebraMismatchError("module and endomorphism presentation over different algebras")


def hom_transport(X: Rep, pres: EndoPresentation) -> Rep:
    """Hom_A(X, M) as a left Λ-module; vertex v carries Hom_A(X, N_v)"""
    _check_base(X, pres)
    store = X._cache.setdefault("transport", {})
    hit = store.get(id(pres))
    if hit is not None:
        return hit[1]
    lam = pres.algebra
    spaces = [hom(X, N) for N in pres.summands]
    action = []
    for k, a in enumerate(lam.quiver.arrows):
        f = pres.arrow_maps[k]
        cols = [spaces[a.target].coords(f @ phi) for phi in spaces[a.source].maps]
        action.append(Mat.from_columns(X.field, cols, len(spaces[a.target])))
    T = Rep(lam, [len(sp) for sp in spaces], action, name=f"Hom({X.label()},{pres.module.label()})")
    store[id(pres)] = (pres, T)
    return T


def transport_map(f: RepMap, pres: EndoPresentation) -> RepMap:
    """Hom_A(f, M): Hom_A(Y, M) → Hom_A(X, M) for f: X → Y"""
    X, Y = f.src, f.dst
    TX, TY = hom_transport(X, pres), hom_transport(Y, pres)
    comps = []
    for N in pres.summands:
        hx, hy = hom(X, N), hom(Y, N)
        cols = [hx.coords(psi @ f) for psi in hy.maps]
        comps.append(Mat.from_columns(X.field, cols, len(hx)))
    return RepMap(TY, TX, comps, check=False)


def contravariant_transport(Y: Rep, pres: EndoPresentation) -> Rep:
    """Hom_A(M, Y) as a right Λ-module, i.e. over the opposite of Λ"""
    _check_base(Y, pres)
    opp = pres.algebra.opposite()
    spaces = [hom(N, Y) for N in pres.summands]
    action = []
    for k, a in enumerate(opp.quiver.arrows):
        # a runs t -> s in the opposite quiver; it precomposes with N_s -> N_t
        f = pres.arrow_maps[k]
        cols = [spaces[a.target].coords(psi @ f) for psi in spaces[a.source].maps]
        action.append(Mat.from_columns(Y.field, cols, len(spaces[a.target])))
    return Rep(opp, [len(sp) for sp in spaces], action, name=f"Hom({pres.module.label()},{Y.label()})")


# ============================================================================
# EVALUATION ISOMORPHISMS
# ============================================================================

@dataclass
class EvalCertificate:
    """Hom(X, X) → End(Hom(X, M)) with the rank that decides bijectivity"""

    ok: bool
    source_dim: int
    target_dim: int
    rank: int
    witness: List[RepMap]


def evaluation_iso(X: Rep, pres: EndoPresentation) -> EvalCertificate:
    """Certify that f ↦ Hom_A(f, M) is bijective on End_A(X)"""
    TX = hom_transport(X, pres)
    images = [transport_map(f, pres) for f in hom(X, X).maps]
    target = len(hom(TX, TX))
    n = sum(d * d for d in TX.dims)
    rk = span_rank(X.field, [g.flatten() for g in images], n) if images else 0
    ok = rk == len(images) == target
    return EvalCertificate(ok=ok, source_dim=len(images), target_dim=target, rank=rk, witness=images)


def natural_eval_iso(pres: EndoPresentation, direction, cap: Optional[int] = None) -> EvalCertificate:
    """Evaluation from the base algebra to End of the transported regular module

    ``algebra``: pres is End_A(M) and the map is A → End_Λ(Hom_A(A, M));
    needs DA ∈ add M.
    ``endomorphism``: pres is End_Λ(I) for an injective I and the map is
    Λ → End_A(Hom_Λ(Λ, I)); needs I-domdim Λ ≥ 2.
    """
    direction = EvalDirection(direction)
    base = pres.base
    M = pres.module
    if direction == EvalDirection.ALGEBRA:
        if not in_add(dual_regular_module(base), AddClosure(M)):
            raise PreconditionError("DA ∈ add M", M.label())
    else:
        if not is_injective(M):
            raise PreconditionError("I is injective", M.label())
        d = rel_domdim(regular_module(base), M, cap)
        if not d.at_least(2):
            raise PreconditionError("I-domdim ≥ 2", f"I-domdim = {d}")
    cert = evaluation_iso(regular_module(base), pres)
    if cert.ok:
        logger.info(f"✅ Evaluation {direction.value} bijective (dim {cert.source_dim})")
    else:
        logger.info(f"❌ Evaluation {direction.value} not bijective: rank {cert.rank}, dims {cert.source_dim}/{cert.target_dim}")
    return cert
