"""Finite-dimensional left modules as quiver representations

Hom spaces are computed from projective presentations: a map out of X is
fixed by the images of the top generators of X, subject to the relations
that generate the syzygy. Decomposition lifts idempotents through primary
decomposition of minimal polynomials of endomorphisms, and every summand it
returns has a local endomorphism ring, checked against the trace-form radical.
"""
from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import Poly, QQ, Rational, symbols

from .errors import (
    AlgebraMismatchError,
    ArthomError,
    DefectError,
    PreconditionError,
    RelationViolationError,
    ShapeError,
    UnknownModuleError,
    UnknownVertexError,
)
from .exactlin import (
    FieldSpec,
    Mat,
    Scalar,
    column_basis,
    complement_columns,
    hstack,
    inverse,
    is_invertible,
    kernel_basis,
    min_poly_blocks,
    poly_eval_blocks,
    rank,
    solve,
    vstack,
)
from .pathalg import AlgebraDocument, BoundQuiverAlgebra, ModuleDecl

logger = logging.getLogger(__name__)

_X = symbols("x")


# ============================================================================
# REPRESENTATIONS AND MAPS
# ============================================================================

class Rep:
    """A representation: one space per vertex, one matrix per arrow

    ``action[k]`` is the matrix of arrow ``k`` with shape
    ``dims[target] x dims[source]``. Relations are checked on construction.
    """

    def __init__(
        self,
        alg: BoundQuiverAlgebra,
        dims: Sequence[int],
        action: Sequence[Mat],
        name: Optional[str] = None,
        check: bool = True,
    ):
        self.alg = alg
        self.field = alg.field
        self.dims = tuple(int(d) for d in dims)
        self.action = tuple(action)
        self.name = name
        self._cache: Dict = {}
        q = alg.quiver
        if len(self.dims) != q.num_vertices:
            raise ShapeError(f"expected {q.num_vertices} vertex dimensions, got {len(self.dims)}")
        if any(d < 0 for d in self.dims):
            raise ShapeError("dimensions must be nonnegative")
        if len(self.action) != len(q.arrows):
            raise ShapeError(f"expected {len(q.arrows)} arrow matrices, got {len(self.action)}")
        for k, (a, m) in enumerate(zip(q.arrows, self.action)):
            if m.field != self.field:
                raise ShapeError(f"arrow {a.name} matrix is over {m.field.label}")
            if m.shape != (self.dims[a.target], self.dims[a.source]):
                raise ShapeError(
                    f"arrow {a.name} needs a {self.dims[a.target]}x{self.dims[a.source]} matrix, got {m.rows}x{m.cols}"
                )
        if check:
            self._check_relations()

    def _check_relations(self) -> None:
        for rel in self.alg.relations:
            total = Mat.zeros(self.field, self.dims[rel.target], self.dims[rel.source])
            for c, p in rel.terms:
                total = total + self._word_matrix(p.arrows, p.source).scale(c)
            if not total.is_zero():
                raise RelationViolationError(rel.label(self.alg.quiver))

    def _word_matrix(self, arrows: Sequence[int], source: int) -> Mat:
        if not arrows:
            return Mat.identity(self.field, self.dims[source])
        out = self.action[arrows[-1]]
        for k in reversed(arrows[:-1]):
            out = self.action[k] @ out
        return out

    def path_matrix(self, k: int) -> Mat:
        """Action of basis path ``alg.basis[k]``"""
        key = ("path", k)
        m = self._cache.get(key)
        if m is None:
            p = self.alg.basis[k]
            m = self._word_matrix(p.arrows, p.source)
            self._cache[key] = m
        return m

    def element_matrix(self, element: Mapping[int, Scalar], source: int, target: int) -> Mat:
        """Action of a combination of basis paths from ``source`` to ``target``"""
        out = Mat.zeros(self.field, self.dims[target], self.dims[source])
        for k, c in element.items():
            if c:
                out = out + self.path_matrix(k).scale(c)
        return out

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def sort_key(self) -> Tuple:
        """Canonical order: dimension vector, then serialized action"""
        return (self.dims, tuple(str(x) for m in self.action for x in m.entries))

    def label(self) -> str:
        return self.name or "(" + ",".join(str(d) for d in self.dims) + ")"

    def __repr__(self) -> str:
        tag = f"{self.name} " if self.name else ""
        return f"Rep({tag}dims={self.dims})"


class RepMap:
    """A module homomorphism; ``comps[v]`` maps ``src`` at v to ``dst`` at v"""

    def __init__(self, src: Rep, dst: Rep, comps: Sequence[Mat], check: bool = True):
        if src.alg is not dst.alg:
            raise AlgebraMismatchError("map between modules over different algebras")
        self.src = src
        self.dst = dst
        self.comps = tuple(comps)
        if len(self.comps) != len(src.dims):
            raise ShapeError("one component per vertex required")
        for v, m in enumerate(self.comps):
            if m.shape != (dst.dims[v], src.dims[v]):
                raise ShapeError(f"component at vertex {v} has shape {m.shape}")
        if check:
            for k, a in enumerate(src.alg.quiver.arrows):
                left = self.comps[a.target] @ src.action[k]
                right = dst.action[k] @ self.comps[a.source]
                if left != right:
                    raise ArthomError(f"components do not commute with arrow {a.name}")

    @classmethod
    def identity(cls, X: Rep) -> "RepMap":
        return cls(X, X, [Mat.identity(X.field, d) for d in X.dims], check=False)

    @classmethod
    def zero(cls, X: Rep, Y: Rep) -> "RepMap":
        return cls(X, Y, [Mat.zeros(X.field, Y.dims[v], X.dims[v]) for v in range(len(X.dims))], check=False)

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """self ∘ other"""
        if other.dst.dims != self.src.dims:
            raise ShapeError("maps are not composable")
        return RepMap(other.src, self.dst, [a @ b for a, b in zip(self.comps, other.comps)], check=False)

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.src, self.dst, [a + b for a, b in zip(self.comps, other.comps)], check=False)

    def scale(self, c: Scalar) -> "RepMap":
        return RepMap(self.src, self.dst, [a.scale(c) for a in self.comps], check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps)

    def is_iso(self) -> bool:
        return all(is_invertible(m) for m in self.comps)

    def is_injective(self) -> bool:
        return all(rank(m) == m.cols for m in self.comps)

    def is_surjective(self) -> bool:
        return all(rank(m) == m.rows for m in self.comps)

    def inverse(self) -> "RepMap":
        return RepMap(self.dst, self.src, [inverse(m) for m in self.comps], check=False)

    def rank(self) -> int:
        return sum(rank(m) for m in self.comps)

    def flatten(self) -> Tuple[Scalar, ...]:
        return tuple(x for m in self.comps for x in m.entries)

    def __repr__(self) -> str:
        return f"RepMap({self.src.label()} -> {self.dst.label()})"


def linear_combination(maps: Sequence[RepMap], coeffs: Sequence[Scalar], src: Rep, dst: Rep) -> RepMap:
    field = src.field
    comps = []
    for v in range(len(src.dims)):
        acc = Mat.zeros(field, dst.dims[v], src.dims[v])
        for f, c in zip(maps, coeffs):
            if c:
                acc = acc + f.comps[v].scale(c)
        comps.append(acc)
    return RepMap(src, dst, comps, check=False)


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def zero_module(alg: BoundQuiverAlgebra) -> Rep:
    n = alg.num_vertices
    return Rep(alg, [0] * n, [Mat.zeros(alg.field, 0, 0) for _ in alg.quiver.arrows], name="0", check=False)


def simple_module(alg: BoundQuiverAlgebra, i: int) -> Rep:
    dims = [1 if v == i else 0 for v in range(alg.num_vertices)]
    action = [Mat.zeros(alg.field, dims[a.target], dims[a.source]) for a in alg.quiver.arrows]
    return Rep(alg, dims, action, name=f"S({alg.quiver.vertices[i]})", check=False)


def projective_module(alg: BoundQuiverAlgebra, i: int) -> Rep:
    """P(i) = alg·e_i; vertex v carries the paths from i to v"""
    key = ("P", i)
    if key in alg.cache:
        return alg.cache[key]
    fld = alg.field
    spaces = [alg.between(i, v) for v in range(alg.num_vertices)]
    pos = [{k: r for r, k in enumerate(sp)} for sp in spaces]
    action = []
    for x, a in enumerate(alg.quiver.arrows):
        ax = alg.arrow_element(x)
        rows = [[0] * len(spaces[a.source]) for _ in spaces[a.target]]
        for col, p in enumerate(spaces[a.source]):
            for q, c in alg.mult(ax, p).items():
                rows[pos[a.target][q]][col] = c
        action.append(Mat.from_rows(fld, rows, len(spaces[a.source])))
    P = Rep(alg, [len(sp) for sp in spaces], action, name=f"P({alg.quiver.vertices[i]})", check=False)
    alg.cache[key] = P
    return P


def injective_module(alg: BoundQuiverAlgebra, i: int) -> Rep:
    """I(i) = D(e_i·alg); vertex v carries the dual of the paths from v to i"""
    key = ("I", i)
    if key in alg.cache:
        return alg.cache[key]
    fld = alg.field
    spaces = [alg.between(v, i) for v in range(alg.num_vertices)]
    pos = [{k: r for r, k in enumerate(sp)} for sp in spaces]
    action = []
    for x, a in enumerate(alg.quiver.arrows):
        ax = alg.arrow_element(x)
        rows = [[0] * len(spaces[a.source]) for _ in spaces[a.target]]
        for row, q in enumerate(spaces[a.target]):
            for p, c in alg.mult(q, ax).items():
                rows[row][pos[a.source][p]] = c
        action.append(Mat.from_rows(fld, rows, len(spaces[a.source])))
    Inj = Rep(alg, [len(sp) for sp in spaces], action, name=f"I({alg.quiver.vertices[i]})", check=False)
    alg.cache[key] = Inj
    return Inj


def regular_module(alg: BoundQuiverAlgebra) -> Rep:
    X = direct_sum([projective_module(alg, i) for i in range(alg.num_vertices)], alg)
    X.name = "A"
    return X


def dual_regular_module(alg: BoundQuiverAlgebra) -> Rep:
    X = direct_sum([injective_module(alg, i) for i in range(alg.num_vertices)], alg)
    X.name = "DA"
    return X


_STANDARD = re.compile(r"^\s*(?P<kind>[SPI])\(\s*(?P<vertex>[^()\s]+)\s*\)\s*$")


def standard_module(alg: BoundQuiverAlgebra, spec: str) -> Rep:
    """One of ``S(i)``, ``P(i)``, ``I(i)``, ``A``, ``DA``"""
    spec = spec.strip()
    if spec == "A":
        return regular_module(alg)
    if spec == "DA":
        return dual_regular_module(alg)
    m = _STANDARD.match(spec)
    if not m:
        raise UnknownModuleError(f"not a standard module: {spec}")
    i = alg.quiver.vertex_index(m.group("vertex"))
    build = {"S": simple_module, "P": projective_module, "I": injective_module}[m.group("kind")]
    return build(alg, i)


def explicit_module(
    alg: BoundQuiverAlgebra,
    dims: Sequence[int],
    action: Mapping[str, object],
    name: Optional[str] = None,
) -> Rep:
    """Validated module from dimensions and arrow matrices; omitted arrows are zero

    Matrices may be :class:`Mat` or nested row lists of ints, Fractions or
    number strings.
    """
    fld = alg.field
    dims = list(dims)
    if len(dims) != alg.num_vertices:
        raise ShapeError(f"expected {alg.num_vertices} vertex dimensions, got {len(dims)}")
    known = {a.name for a in alg.quiver.arrows}
    for arrow_name in action:
        if arrow_name not in known:
            raise ShapeError(f"unknown arrow in module: {arrow_name}")
    mats = []
    for a in alg.quiver.arrows:
        rows, cols = dims[a.target], dims[a.source]
        given = action.get(a.name)
        if given is None:
            mats.append(Mat.zeros(fld, rows, cols))
            continue
        if isinstance(given, Mat):
            mats.append(given)
            continue
        data = [[fld.parse(x) if isinstance(x, str) else fld.norm(x) for x in r] for r in given]
        if not data and (rows == 0 or cols == 0):
            mats.append(Mat.zeros(fld, rows, cols))
            continue
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeError(f"arrow {a.name} needs a {rows}x{cols} matrix")
        mats.append(Mat.from_rows(fld, data, cols))
    return Rep(alg, dims, mats, name=name)


def load_modules(doc: AlgebraDocument) -> Dict[str, Rep]:
    """Resolve every module declaration of an algebra file"""
    decls = {d.name: d for d in doc.modules}
    resolved: Dict[str, Rep] = {}

    def build(name: str, stack: Tuple[str, ...]) -> Rep:
        if name in resolved:
            return resolved[name]
        if name in stack:
            raise UnknownModuleError(f"module {name} is defined in terms of itself")
        decl = decls.get(name)
        if decl is None:
            raise UnknownModuleError(f"unknown module: {name}")
        resolved[name] = _build_decl(doc.algebra, decl, lambda n: build(n, stack + (name,)))
        return resolved[name]

    for d in doc.modules:
        build(d.name, ())
    return resolved


def _build_decl(alg: BoundQuiverAlgebra, decl: ModuleDecl, lookup) -> Rep:
    if decl.explicit:
        return explicit_module(alg, decl.dims, dict(decl.maps), name=decl.name)
    parts = []
    for kind, arg in decl.terms:
        try:
            if kind == "name":
                parts.append(lookup(arg))
            elif arg is None:
                parts.append(standard_module(alg, kind))
            else:
                parts.append(standard_module(alg, f"{kind}({arg})"))
        except UnknownVertexError as e:
            raise UnknownVertexError(f"module {decl.name} (line {decl.line}): {e}")
    X = parts[0] if len(parts) == 1 else direct_sum(parts, alg)
    if len(parts) == 1:
        X = Rep(alg, X.dims, X.action, name=decl.name, check=False)
    else:
        X.name = decl.name
    return X


# ============================================================================
# DIRECT SUMS, SUBMODULES, KERNELS, COKERNELS
# ============================================================================

def direct_sum_with_maps(mods: Sequence[Rep], alg: Optional[BoundQuiverAlgebra] = None) -> Tuple[Rep, List[RepMap], List[RepMap]]:
    """Direct sum with its canonical injections and projections"""
    mods = list(mods)
    if alg is None:
        if not mods:
            raise ArthomError("direct sum of nothing needs the algebra")
        alg = mods[0].alg
    for X in mods:
        if X.alg is not alg:
            raise AlgebraMismatchError("direct sum of modules over different algebras")
    fld = alg.field
    n = alg.num_vertices
    dims = [sum(X.dims[v] for X in mods) for v in range(n)]
    action = []
    for k, a in enumerate(alg.quiver.arrows):
        rows = []
        col_off = 0
        total_cols = dims[a.source]
        for X in mods:
            m = X.action[k]
            for r in m.data:
                rows.append((0,) * col_off + r + (0,) * (total_cols - col_off - m.cols))
            col_off += m.cols
        action.append(Mat(fld, dims[a.target], total_cols, tuple(rows)))
    S = Rep(alg, dims, action, check=False)
    injections, projections = [], []
    offsets = [0] * n
    for X in mods:
        inj, proj = [], []
        for v in range(n):
            d, o = X.dims[v], offsets[v]
            inj.append(Mat(fld, dims[v], d, tuple(
                tuple(1 if (i - o) == j else 0 for j in range(d)) for i in range(dims[v]))))
            proj.append(Mat(fld, d, dims[v], tuple(
                tuple(1 if (j - o) == i else 0 for j in range(dims[v])) for i in range(d))))
            offsets[v] += d
        injections.append(RepMap(X, S, inj, check=False))
        projections.append(RepMap(S, X, proj, check=False))
    return S, injections, projections


def direct_sum(mods: Sequence[Rep], alg: Optional[BoundQuiverAlgebra] = None) -> Rep:
    mods = list(mods)
    if len(mods) == 1:
        return mods[0]
    return direct_sum_with_maps(mods, alg)[0]


def map_into_sum(maps: Sequence[RepMap], target: Rep) -> RepMap:
    """[f_1; f_2; ...]: X → ⊕ Y_k, stacked in the order of ``maps``"""
    X = maps[0].src
    comps = [vstack(X.field, [f.comps[v] for f in maps], X.dims[v]) for v in range(len(X.dims))]
    return RepMap(X, target, comps, check=False)


def map_from_sum(maps: Sequence[RepMap], source: Rep) -> RepMap:
    """[f_1 f_2 ...]: ⊕ X_k → Y, concatenated in the order of ``maps``"""
    Y = maps[0].dst
    comps = [hstack(Y.field, [f.comps[v] for f in maps], Y.dims[v]) for v in range(len(Y.dims))]
    return RepMap(source, Y, comps, check=False)


def submodule(X: Rep, bases: Sequence[Mat]) -> Tuple[Rep, RepMap]:
    """Submodule spanned vertexwise by the columns of ``bases`` (must be closed)"""
    action = []
    for k, a in enumerate(X.alg.quiver.arrows):
        image = X.action[k] @ bases[a.source]
        coords = solve(bases[a.target], image)
        if coords is None:
            raise DefectError(f"subspace is not closed under arrow {a.name}")
        action.append(coords)
    K = Rep(X.alg, [b.cols for b in bases], action, check=False)
    return K, RepMap(K, X, bases, check=False)


def kernel(f: RepMap) -> Tuple[Rep, RepMap]:
    return submodule(f.src, [kernel_basis(m) for m in f.comps])


def image(f: RepMap) -> Tuple[Rep, RepMap, RepMap]:
    """Image with its inclusion into the target and the corestriction from the source"""
    bases = [column_basis(m) if m.rows else Mat.zeros(f.src.field, 0, 0) for m in f.comps]
    bases = [b if b.rows == m.rows else Mat.zeros(f.src.field, m.rows, 0) for b, m in zip(bases, f.comps)]
    Im, inc = submodule(f.dst, bases)
    coreg = [solve(b, m) for b, m in zip(bases, f.comps)]
    return Im, inc, RepMap(f.src, Im, coreg, check=False)


def quotient(Y: Rep, bases: Sequence[Mat]) -> Tuple[Rep, RepMap]:
    """Y modulo the submodule spanned vertexwise by ``bases``, with the projection"""
    fld = Y.field
    n = len(Y.dims)
    keep, proj = [], []
    for v in range(n):
        span = bases[v]
        extra = complement_columns(fld, span, Y.dims[v])
        E = Mat.from_columns(fld, [[1 if i == k else 0 for i in range(Y.dims[v])] for k in extra], Y.dims[v])
        full = hstack(fld, [span, E], Y.dims[v])
        inv = inverse(full) if full.rows else full
        proj.append(inv.select_rows(range(span.cols, full.rows)))
        keep.append(E)
    action = []
    for k, a in enumerate(Y.alg.quiver.arrows):
        action.append(proj[a.target] @ Y.action[k] @ keep[a.source])
    C = Rep(Y.alg, [e.cols for e in keep], action, check=False)
    return C, RepMap(Y, C, proj, check=False)


def cokernel(f: RepMap) -> Tuple[Rep, RepMap]:
    bases = []
    for m in f.comps:
        b = column_basis(m) if m.rows else Mat.zeros(m.field, 0, 0)
        bases.append(b if b.rows == m.rows else Mat.zeros(m.field, m.rows, 0))
    return quotient(f.dst, bases)


# ============================================================================
# RADICAL, SOCLE, TOP AND PRESENTATIONS
# ============================================================================

def _radical_span(X: Rep, v: int) -> Mat:
    ins = [X.action[k] for k in X.alg.quiver.in_arrows(v)]
    if not ins:
        return Mat.zeros(X.field, X.dims[v], 0)
    return hstack(X.field, ins, X.dims[v])


def top_generators(X: Rep) -> List[Tuple[int, int]]:
    """(vertex, coordinate) of standard vectors whose classes form a basis of top X"""
    gens = []
    for v in range(len(X.dims)):
        for k in complement_columns(X.field, _radical_span(X, v), X.dims[v]):
            gens.append((v, k))
    return gens


def radical(X: Rep) -> Tuple[Rep, RepMap]:
    bases = []
    for v in range(len(X.dims)):
        span = _radical_span(X, v)
        bases.append(column_basis(span) if span.cols and span.rows else Mat.zeros(X.field, X.dims[v], 0))
    return submodule(X, bases)


def socle(X: Rep) -> Tuple[Rep, RepMap]:
    bases = []
    for v in range(len(X.dims)):
        outs = [X.action[k] for k in X.alg.quiver.out_arrows(v)]
        if not outs:
            bases.append(Mat.identity(X.field, X.dims[v]))
        else:
            bases.append(kernel_basis(vstack(X.field, outs, X.dims[v])))
    return submodule(X, bases)


def top(X: Rep) -> Tuple[Rep, RepMap]:
    _, inc = radical(X)
    return quotient(X, inc.comps)


def radical_socle_top(X: Rep) -> Tuple[Tuple[Rep, RepMap], Tuple[Rep, RepMap], Tuple[Rep, RepMap]]:
    return radical(X), socle(X), top(X)


def socle_vertices(X: Rep) -> List[int]:
    """Vertices of soc X with multiplicity"""
    S, _ = socle(X)
    return [v for v in range(len(S.dims)) for _ in range(S.dims[v])]


class ProjectiveSum:
    """⊕_k P(tops[k]) with block offsets, built from the standard projectives"""

    def __init__(self, alg: BoundQuiverAlgebra, tops: Sequence[int]):
        self.alg = alg
        self.tops = tuple(tops)
        parts = [projective_module(alg, v) for v in self.tops]
        self.rep, self.injections, self.projections = direct_sum_with_maps(parts, alg)
        self.offsets: List[List[int]] = []
        running = [0] * alg.num_vertices
        for P in parts:
            self.offsets.append(list(running))
            for v in range(alg.num_vertices):
                running[v] += P.dims[v]

    def paths(self, k: int, v: int) -> Tuple[int, ...]:
        return self.alg.between(self.tops[k], v)

    def generator(self, k: int) -> Tuple[int, int]:
        """Vertex and coordinate of the k-th generator e_{tops[k]}"""
        return self.tops[k], self.offsets[k][self.tops[k]]

    def components(self, v: int, vector: Sequence[Scalar]) -> List[Dict[int, Scalar]]:
        """Split a vector at vertex v into per-block path combinations"""
        out = []
        for k in range(len(self.tops)):
            paths = self.paths(k, v)
            o = self.offsets[k][v]
            out.append({p: vector[o + r] for r, p in enumerate(paths) if vector[o + r]})
        return out

    def map_to(self, Y: Rep, images: Sequence[Sequence[Scalar]]) -> RepMap:
        """The map sending generator k to ``images[k]`` in Y at tops[k]"""
        fld = Y.field
        comps = []
        for v in range(self.alg.num_vertices):
            cols = []
            for k, top_v in enumerate(self.tops):
                y = Mat.from_columns(fld, [images[k]], Y.dims[top_v])
                for p in self.paths(k, v):
                    cols.append((Y.path_matrix(p) @ y).column(0))
            comps.append(Mat.from_columns(fld, cols, Y.dims[v]))
        return RepMap(self.rep, Y, comps, check=False)


@dataclass
class Presentation:
    """Projective cover P0 → X with its syzygy and vertexwise sections"""

    module: Rep
    generators: List[Tuple[int, int]]
    proj: ProjectiveSum
    cover: RepMap
    sections: List[Mat]
    syzygy: Rep
    inclusion: RepMap
    _relations: Optional[list] = None

    @property
    def tops(self) -> Tuple[int, ...]:
        return self.proj.tops

    def relations(self) -> List[Tuple[int, List[Dict[int, Scalar]]]]:
        """Generators of the syzygy as (vertex, per-block path combinations)"""
        if self._relations is None:
            self._relations = []
            for v, k in top_generators(self.syzygy):
                vec = self.inclusion.comps[v].column(k)
                self._relations.append((v, self.proj.components(v, vec)))
        return self._relations


def presentation(X: Rep) -> Presentation:
    pres = X._cache.get("presentation")
    if pres is not None:
        return pres
    fld = X.field
    gens = top_generators(X)
    proj = ProjectiveSum(X.alg, [v for v, _ in gens])
    images = [[1 if i == k else 0 for i in range(X.dims[v])] for v, k in gens]
    cover = proj.map_to(X, images)
    sections = []
    for v in range(len(X.dims)):
        s = solve(cover.comps[v], Mat.identity(fld, X.dims[v]))
        if s is None:
            raise DefectError("top generators do not generate the module")
        sections.append(s)
    K, inc = kernel(cover)
    pres = Presentation(X, gens, proj, cover, sections, K, inc)
    X._cache["presentation"] = pres
    return pres


def projective_cover(X: Rep) -> RepMap:
    return presentation(X).cover


def dual(X: Rep) -> Rep:
    """D X over the opposite algebra; dual(dual(X)) is X"""
    D = X._cache.get("dual")
    if D is None:
        opp = X.alg.opposite()
        D = Rep(opp, X.dims, [m.T for m in X.action], name=f"D{X.name}" if X.name else None, check=False)
        D._cache["dual"] = X
        X._cache["dual"] = D
    return D


def dual_map(f: RepMap) -> RepMap:
    return RepMap(dual(f.dst), dual(f.src), [m.T for m in f.comps], check=False)


def injective_envelope(X: Rep) -> RepMap:
    """X ↪ I(soc X), the dual of the projective cover of D X"""
    env = X._cache.get("envelope")
    if env is None:
        env = dual_map(projective_cover(dual(X)))
        X._cache["envelope"] = env
    return env


# ============================================================================
# HOM SPACES
# ============================================================================

class HomSpace:
    """Basis of Hom(X, Y) with coordinates given by generator images"""

    def __init__(self, X: Rep, Y: Rep):
        if X.alg is not Y.alg:
            raise AlgebraMismatchError("Hom between modules over different algebras")
        self.src = X
        self.dst = Y
        fld = X.field
        pres = presentation(X)
        self.presentation = pres
        tops = pres.tops
        sizes = [Y.dims[v] for v in tops]
        self.offsets = [sum(sizes[:k]) for k in range(len(sizes))]
        total = sum(sizes)
        blocks = []
        for v, comps in pres.relations():
            row_blocks = []
            for k, combo in enumerate(comps):
                row_blocks.append(Y.element_matrix(combo, tops[k], v))
            blocks.append(hstack(fld, row_blocks, Y.dims[v]))
        constraint = vstack(fld, blocks, total) if blocks else Mat.zeros(fld, 0, total)
        self.coordinates = kernel_basis(constraint)
        self.maps: List[RepMap] = [self._from_vector(self.coordinates.column(j)) for j in range(self.coordinates.cols)]

    def _from_vector(self, y: Sequence[Scalar]) -> RepMap:
        pres = self.presentation
        images = []
        for k, v in enumerate(pres.tops):
            o = self.offsets[k]
            images.append(y[o:o + self.dst.dims[v]])
        G = pres.proj.map_to(self.dst, images)
        comps = [G.comps[v] @ pres.sections[v] for v in range(len(self.src.dims))]
        return RepMap(self.src, self.dst, comps, check=False)

    def __len__(self) -> int:
        return len(self.maps)

    def vector(self, f: RepMap) -> Tuple[Scalar, ...]:
        """Generator images of f, the coordinates used for the basis"""
        out = []
        for v, k in self.presentation.generators:
            out.extend(f.comps[v].column(k))
        return tuple(out)

    def coords(self, f: RepMap) -> Tuple[Scalar, ...]:
        y = Mat.from_columns(self.src.field, [self.vector(f)], self.coordinates.rows)
        c = solve(self.coordinates, y)
        if c is None:
            raise DefectError("map is not a module homomorphism")
        return c.column(0)

    def combine(self, coeffs: Sequence[Scalar]) -> RepMap:
        return linear_combination(self.maps, coeffs, self.src, self.dst)


def hom(X: Rep, Y: Rep) -> HomSpace:
    """Cached Hom space; the cache lives on X and holds Y alive"""
    store = X._cache.setdefault("hom", {})
    hit = store.get(id(Y))
    if hit is not None and hit[0] is Y:
        return hit[1]
    hs = HomSpace(X, Y)
    store[id(Y)] = (Y, hs)
    return hs


def hom_space(X: Rep, Y: Rep) -> List[RepMap]:
    return list(hom(X, Y).maps)


def hom_dim(X: Rep, Y: Rep) -> int:
    return len(hom(X, Y))


# ============================================================================
# DECOMPOSITION AND ISOMORPHISM
# ============================================================================

@dataclass
class DecompositionCert:
    """Summands up to isomorphism with multiplicities and an invertible witness

    ``witness`` maps the direct sum of the summands (each repeated by its
    multiplicity, in list order) isomorphically onto the decomposed module.
    ``residues`` holds dim End/rad for each summand.
    """

    summands: List[Tuple[Rep, int]]
    witness: RepMap
    pieces: List[Tuple[Rep, RepMap, RepMap]]
    residues: List[int]

    @property
    def count(self) -> int:
        """Number of pairwise non-isomorphic indecomposable summands"""
        return len(self.summands)

    def indecomposables(self) -> List[Rep]:
        return [R for R, _ in self.summands]


def check_characteristic(X: Rep) -> None:
    p = X.field.p
    if p and p <= X.dim + X.alg.dim:
        raise PreconditionError(
            "characteristic exceeds module and algebra dimension",
            f"p={p}, dim X + dim A = {X.dim + X.alg.dim}",
        )


def _to_fraction(c) -> Fraction:
    r = Rational(c)
    return Fraction(int(r.p), int(r.q))


def _sympy_poly(field: FieldSpec, coeffs: Sequence[Scalar]) -> Poly:
    hi = list(reversed(coeffs))
    if field.p:
        return Poly([int(c) for c in hi], _X, modulus=field.p)
    return Poly([Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c for c in hi], _X, domain=QQ)


def _coeffs(field: FieldSpec, poly: Poly) -> List[Scalar]:
    return [field.norm(_to_fraction(c)) for c in reversed(poly.all_coeffs())]


def _factored_min_poly(f: RepMap):
    """Minimal polynomial of f with its irreducible factors over the ground field"""
    poly = _sympy_poly(f.src.field, min_poly_blocks(list(f.comps)))
    return poly, poly.factor_list()[1]


def _primary_split(X: Rep, f: RepMap, poly: Poly, factors):
    """Split X along two coprime factors of the minimal polynomial of f"""
    fld = X.field
    blocks = list(f.comps)
    g = factors[0][0] ** factors[0][1]
    h = poly.quo(g)
    g_map = RepMap(X, X, poly_eval_blocks(_coeffs(fld, g), blocks), check=False)
    h_map = RepMap(X, X, poly_eval_blocks(_coeffs(fld, h), blocks), check=False)
    U, iu = kernel(g_map)
    V, iv = kernel(h_map)
    pu, pv = [], []
    for v in range(len(X.dims)):
        B = hstack(fld, [iu.comps[v], iv.comps[v]], X.dims[v])
        if B.cols != X.dims[v]:
            raise DefectError("primary components do not span the module")
        inv = inverse(B) if B.rows else B
        pu.append(inv.select_rows(range(U.dims[v])))
        pv.append(inv.select_rows(range(U.dims[v], X.dims[v])))
    return (U, iu, RepMap(X, U, pu, check=False)), (V, iv, RepMap(X, V, pv, check=False))


def _candidates(X: Rep, ends: HomSpace, residue: int, tries: int = 24):
    """Basis endomorphisms, seeded small combinations, then the moment curve

    On the moment curve sum_j c^j e_j, a pair of distinct embeddings of a
    commutative residue ring agrees for fewer than len(ends) values of c,
    so the last stretch reaches a generator when End/rad is a field.
    """
    yield from ends.maps
    fld = X.field
    n = len(ends)
    rng = random.Random(0)
    for _ in range(tries):
        yield ends.combine([fld.norm(rng.randrange(fld.p) if fld.p else rng.randint(-2, 2)) for _ in range(n)])
    bound = (n - 1) * residue * (residue - 1) // 2 + 1
    if fld.p:
        bound = min(bound, fld.p - 1)
    for c in range(1, bound + 1):
        yield ends.combine([fld.norm(c ** j) for j in range(n)])


def residue_dim(X: Rep) -> int:
    """dim End(X)/rad End(X); 1 exactly when X is indecomposable with split residue ring"""
    return len(hom(X, X)) - len(radical_endomorphisms(X))


def _split(X: Rep) -> List[Tuple[Rep, RepMap, RepMap]]:
    """Pieces with certified local endomorphism rings

    A piece is kept when End/rad is one-dimensional, or when a single
    endomorphism generates all of End/rad as a field. Otherwise an
    endomorphism with coprime minimal-polynomial factors lifts an
    idempotent and the piece splits.
    """
    if X.dim == 0:
        return []
    ident = RepMap.identity(X)
    residue = residue_dim(X)
    if residue == 1:
        return [(X, ident, ident)]
    for f in _candidates(X, hom(X, X), residue):
        poly, factors = _factored_min_poly(f)
        if len(factors) >= 2:
            out = []
            for W, inc, proj in _primary_split(X, f, poly, factors):
                for Z, i2, p2 in _split(W):
                    out.append((Z, inc @ i2, p2 @ proj))
            return out
        # k[f] modulo rad is a field of degree deg g inside End/rad
        if factors and factors[0][0].degree() == residue:
            return [(X, ident, ident)]
    raise DefectError(
        f"End({X.label()})/rad has dimension {residue} but neither splits nor is generated as a field"
    )


def indecomposable_iso(X: Rep, Y: Rep) -> Optional[RepMap]:
    """Isomorphism between indecomposables, or None

    Non-invertible maps form a proper subspace of Hom(X, Y) when X ≅ Y, so
    some basis element is invertible.
    """
    if X.dims != Y.dims:
        return None
    for f in hom(X, Y).maps:
        if f.is_iso():
            return f
    return None


def decompose(X: Rep) -> DecompositionCert:
    """Krull-Schmidt decomposition with canonical summand order and witness"""
    cert = X._cache.get("decomposition")
    if cert is not None:
        return cert
    check_characteristic(X)
    pieces = sorted(_split(X), key=lambda t: t[0].sort_key)
    classes: List[List] = []  # [representative, [(piece index, iso rep→piece)]]
    for idx, (Y, _, _) in enumerate(pieces):
        for cls in classes:
            phi = indecomposable_iso(cls[0], Y)
            if phi is not None:
                cls[1].append((idx, phi))
                break
        else:
            classes.append([Y, [(idx, RepMap.identity(Y))]])
    classes.sort(key=lambda c: c[0].sort_key)
    summands = [(c[0], len(c[1])) for c in classes]
    parts = [c[0] for c in classes for _ in c[1]]
    total = direct_sum(parts, X.alg) if parts else zero_module(X.alg)
    column_maps = [pieces[idx][1] @ phi for c in classes for idx, phi in c[1]]
    if column_maps:
        witness = map_from_sum(column_maps, total)
    else:
        witness = RepMap.zero(total, X)
    if not witness.is_iso():
        raise DefectError("decomposition witness is not invertible")
    residues = [residue_dim(R) for R, _ in summands]
    cert = DecompositionCert(summands=summands, witness=witness, pieces=pieces, residues=residues)
    X._cache["decomposition"] = cert
    logger.debug(f"Decomposed {X.label()} into {sum(m for _, m in summands)} summands ({len(summands)} classes)")
    return cert


def is_indecomposable(X: Rep) -> bool:
    cert = decompose(X)
    return len(cert.summands) == 1 and cert.summands[0][1] == 1


def is_isomorphic(X: Rep, Y: Rep) -> Tuple[bool, Optional[RepMap]]:
    """Decomposition-based isomorphism test with a witness X → Y"""
    if X.alg is not Y.alg:
        raise AlgebraMismatchError("isomorphism test across algebras")
    if X.dims != Y.dims:
        return False, None
    if X.dim == 0:
        return True, RepMap.zero(X, Y)
    cx, cy = decompose(X), decompose(Y)
    if len(cx.summands) != len(cy.summands):
        return False, None
    used = set()
    matches = []
    for R, mult in cx.summands:
        for j, (S, mult_s) in enumerate(cy.summands):
            if j in used or mult_s != mult:
                continue
            phi = indecomposable_iso(R, S)
            if phi is not None:
                used.add(j)
                matches.append((j, phi, mult))
                break
        else:
            return False, None
    # block map from the X-side sum to the Y-side sum
    y_offsets = []
    running = 0
    for S, mult_s in cy.summands:
        y_offsets.append(running)
        running += mult_s
    y_parts = [S for S, m in cy.summands for _ in range(m)]
    x_parts = [R for R, m in cx.summands for _ in range(m)]
    sum_y, inj_y, _ = direct_sum_with_maps(y_parts, X.alg)
    sum_x, _, proj_x = direct_sum_with_maps(x_parts, X.alg)
    pieces = []
    pos = 0
    for j, phi, mult in matches:
        for c in range(mult):
            pieces.append(inj_y[y_offsets[j] + c] @ phi @ proj_x[pos])
            pos += 1
    block = pieces[0]
    for p in pieces[1:]:
        block = block + p
    block = RepMap(cx.witness.src, cy.witness.src, block.comps, check=False)
    witness = cy.witness @ block @ cx.witness.inverse()
    return True, witness


def isomorphic(X: Rep, Y: Rep) -> bool:
    return is_isomorphic(X, Y)[0]


def summand_multiset(X: Rep) -> List[Tuple[Tuple, int]]:
    """Dimension vectors and multiplicities of the indecomposable summands"""
    return [(R.dims, m) for R, m in decompose(X).summands]


def basic_part(X: Rep) -> Rep:
    """Direct sum of one copy of each indecomposable summand"""
    reps = decompose(X).indecomposables()
    if not reps:
        return zero_module(X.alg)
    B = direct_sum(reps, X.alg)
    return B


def radical_endomorphisms(N: Rep) -> List[RepMap]:
    """Basis of rad End(N): the kernel of the trace form tr(f∘g)

    Valid in characteristic zero or above dim N, which decompose enforces.
    """
    cached = N._cache.get("radical_endomorphisms")
    if cached is not None:
        return cached
    check_characteristic(N)
    fld = N.field
    ends = hom(N, N).maps
    gram = []
    for f in ends:
        row = []
        for g in ends:
            t = 0
            for a, b in zip(f.comps, g.comps):
                t = fld.add(t, a.trace_product(b))
            row.append(t)
        gram.append(row)
    K = kernel_basis(Mat.from_rows(fld, gram, len(ends)))
    rad = [linear_combination(ends, K.column(j), N, N) for j in range(K.cols)]
    N._cache["radical_endomorphisms"] = rad
    return rad
