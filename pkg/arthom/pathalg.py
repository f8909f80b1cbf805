"""Bound quiver algebras kQ/I: parsing, Gröbner normal forms, basis and multiplication

Paths are written the way relations are printed: ``g*b*a`` applies ``a``
first, then ``b``, then ``g``. A :class:`Path` stores arrow indices in that
written order, so ``arrows[-1]`` is applied first.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    ArthomError,
    CapExceededError,
    NonAdmissibleError,
    ParseError,
    UnknownVertexError,
)
from .exactlin import FieldSpec, Scalar, echelon_basis

logger = logging.getLogger(__name__)

DEFAULT_PATH_CAP = 64


# ============================================================================
# QUIVERS AND PATHS
# ============================================================================

@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ArthomError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ArthomError("arrow names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise UnknownVertexError(f"arrow {a.name} has an undeclared endpoint")

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise UnknownVertexError(f"unknown vertex: {label}")

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise ArthomError(f"unknown arrow: {name}")

    def in_arrows(self, v: int) -> List[int]:
        return [k for k, a in enumerate(self.arrows) if a.target == v]

    def out_arrows(self, v: int) -> List[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Path:
    """A path; ``arrows`` in written order, trivial paths have no arrows"""

    source: int
    target: int
    arrows: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def key(self) -> Tuple:
        """Length-lexicographic order with arrows in declaration order"""
        return (len(self.arrows), self.arrows, self.source)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def label(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e{quiver.vertices[self.source]}"
        return "*".join(quiver.arrows[k].name for k in self.arrows)


def make_path(quiver: Quiver, arrows: Sequence[int]) -> Path:
    """Build a path from written-order arrow indices, checking composability"""
    arrows = tuple(arrows)
    if not arrows:
        raise ArthomError("use trivial_path for paths of length zero")
    for later, earlier in zip(arrows, arrows[1:]):
        if quiver.arrows[earlier].target != quiver.arrows[later].source:
            raise ArthomError(
                f"path {'*'.join(quiver.arrows[k].name for k in arrows)} is not composable"
            )
    return Path(quiver.arrows[arrows[-1]].source, quiver.arrows[arrows[0]].target, arrows)


def trivial_path(v: int) -> Path:
    return Path(v, v, ())


def compose(p: Path, q: Path) -> Optional[Path]:
    """p*q (q first), or None when q does not end where p starts"""
    if q.target != p.source:
        return None
    if not p.arrows:
        return q
    if not q.arrows:
        return p
    return Path(q.source, p.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths of length at least two"""

    terms: Tuple[Tuple[Scalar, Path], ...]

    def __post_init__(self):
        if not self.terms:
            raise ArthomError("relation has no terms")
        ends = {(p.source, p.target) for _, p in self.terms}
        if len(ends) != 1:
            raise ArthomError("non-parallel relation term")
        for _, p in self.terms:
            if p.length < 2:
                raise NonAdmissibleError("relation paths must have length at least 2")

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    def label(self, quiver: Quiver) -> str:
        return format_combination([(c, p.label(quiver)) for c, p in self.terms])

    def reversed(self) -> "Relation":
        return Relation(tuple((c, p.reversed()) for c, p in self.terms))


def format_combination(terms: Sequence[Tuple[Scalar, str]]) -> str:
    out = []
    for k, (c, word) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = word if mag == 1 else f"{mag}*{word}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


# ============================================================================
# GRÖBNER COMPLETION
# ============================================================================

Element = Dict[Path, Scalar]


def _tip(elem: Element) -> Path:
    return max(elem, key=lambda p: p.key)


def _find(word: Tuple[int, ...], sub: Tuple[int, ...]) -> int:
    n, k = len(word), len(sub)
    for i in range(n - k + 1):
        if word[i:i + k] == sub:
            return i
    return -1


class GroebnerBasis:
    """Noncommutative Buchberger completion in the path algebra"""

    def __init__(self, fld: FieldSpec, quiver: Quiver, cap: int):
        self.field = fld
        self.quiver = quiver
        self.cap = cap
        self.elements: List[Tuple[Path, Element]] = []

    def _wrap(self, left: Tuple[int, ...], p: Path, right: Tuple[int, ...]) -> Path:
        arrows = left + p.arrows + right
        src = self.quiver.arrows[right[-1]].source if right else p.source
        tgt = self.quiver.arrows[left[0]].target if left else p.target
        return Path(src, tgt, arrows)

    def _monic(self, elem: Element) -> Element:
        lead = elem[_tip(elem)]
        if lead == 1:
            return elem
        inv = self.field.inv(lead)
        return {p: self.field.mul(c, inv) for p, c in elem.items()}

    def reduce(self, elem: Element) -> Element:
        fld = self.field
        work = {p: c for p, c in elem.items() if c}
        result: Element = {}
        while work:
            t = _tip(work)
            c = work.pop(t)
            hit = None
            for tip, g in self.elements:
                pos = _find(t.arrows, tip.arrows)
                if pos >= 0:
                    hit = (tip, g, pos)
                    break
            if hit is None:
                result[t] = c
                continue
            tip, g, pos = hit
            left = t.arrows[:pos]
            right = t.arrows[pos + tip.length:]
            for p, gc in g.items():
                if p == tip:
                    continue
                w = self._wrap(left, p, right)
                val = fld.sub(work.get(w, 0), fld.mul(c, gc))
                if val:
                    work[w] = val
                else:
                    work.pop(w, None)
        return result

    def _overlaps(self, f: Element, g: Element) -> List[Element]:
        fld = self.field
        s, t = _tip(f).arrows, _tip(g).arrows
        out = []
        for k in range(1, min(len(s), len(t))):
            if s[-k:] != t[:k]:
                continue
            x, z = s[:-k], t[k:]
            spoly: Element = {}
            for p, c in f.items():
                w = self._wrap((), p, z)
                spoly[w] = fld.add(spoly.get(w, 0), c)
            for p, c in g.items():
                w = self._wrap(x, p, ())
                spoly[w] = fld.sub(spoly.get(w, 0), c)
            spoly = {p: c for p, c in spoly.items() if c}
            if spoly:
                out.append(spoly)
        return out

    def complete(self, generators: Iterable[Element]) -> None:
        pending = [g for g in generators if g]
        steps = 0
        while pending:
            pending.sort(key=lambda e: _tip(e).key)
            f = self.reduce(pending.pop(0))
            if not f:
                continue
            f = self._monic(f)
            tip = _tip(f)
            steps += 1
            if tip.length > self.cap or steps > 100 * self.cap * self.cap:
                raise CapExceededError("Gröbner completion did not finish within path-length cap", self.cap)
            kept = []
            for other_tip, g in self.elements:
                if _find(other_tip.arrows, tip.arrows) >= 0:
                    pending.append(g)
                else:
                    kept.append((other_tip, g))
            self.elements = kept + [(tip, f)]
            for _, g in self.elements:
                pending.extend(self._overlaps(f, g))
                if g is not f:
                    pending.extend(self._overlaps(g, f))
        self._interreduce()
        logger.debug(f"Gröbner basis completed with {len(self.elements)} elements")

    def _interreduce(self) -> None:
        done = []
        for k, (tip, g) in enumerate(self.elements):
            others = self.elements[:k] + self.elements[k + 1:]
            saved = self.elements
            self.elements = others
            tail = self.reduce({p: c for p, c in g.items() if p != tip})
            self.elements = saved
            reduced = dict(tail)
            reduced[tip] = 1
            done.append((tip, reduced))
        self.elements = sorted(done, key=lambda tg: tg[0].key)

    @property
    def tips(self) -> List[Path]:
        return [t for t, _ in self.elements]


# ============================================================================
# BOUND QUIVER ALGEBRA
# ============================================================================

class BoundQuiverAlgebra:
    """Finite-dimensional basic algebra kQ/I with a normal-form path basis"""

    def __init__(
        self,
        field: FieldSpec,
        quiver: Quiver,
        relations: Sequence[Relation] = (),
        path_cap: int = DEFAULT_PATH_CAP,
    ):
        self.field = field
        self.quiver = quiver
        self.relations = tuple(relations)
        self.path_cap = path_cap
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self._mult_cache: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        self.cache: Dict = {}

        self._gb = GroebnerBasis(field, quiver, path_cap)
        self._gb.complete(
            {p: field.norm(c) for c, p in rel.terms} for rel in self.relations
        )
        self.basis: Tuple[Path, ...] = self._enumerate_basis()
        self.index: Dict[Path, int] = {p: k for k, p in enumerate(self.basis)}
        self._between: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        for k, p in enumerate(self.basis):
            self._between.setdefault((p.source, p.target), ())
            self._between[(p.source, p.target)] += (k,)
        self.loewy_length = self._check_admissible()
        logger.debug(f"Algebra ready: {self.num_vertices} vertices, dim {self.dim}")

    # --- structure ------------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def groebner_tips(self) -> List[Path]:
        return self._gb.tips

    @property
    def is_monomial(self) -> bool:
        return all(len(g) == 1 for _, g in self._gb.elements)

    def between(self, source: int, target: int) -> Tuple[int, ...]:
        """Basis indices of paths from ``source`` to ``target`` (= e_target A e_source)"""
        return self._between.get((source, target), ())

    def arrow_element(self, k: int) -> int:
        a = self.quiver.arrows[k]
        return self.index[Path(a.source, a.target, (k,))]

    def vertex_element(self, v: int) -> int:
        return self.index[trivial_path(v)]

    def _enumerate_basis(self) -> Tuple[Path, ...]:
        tips = [t.arrows for t in self._gb.tips]
        level = [trivial_path(v) for v in range(self.num_vertices)]
        basis = list(level)
        length = 0
        while level:
            length += 1
            nxt = []
            for w in level:
                for k in self.quiver.out_arrows(w.target):
                    cand = Path(w.source, self.quiver.arrows[k].target, (k,) + w.arrows)
                    if not any(cand.arrows[:len(t)] == t for t in tips):
                        nxt.append(cand)
            if nxt and length > self.path_cap:
                raise CapExceededError("basis not finite within path-length cap", self.path_cap)
            nxt.sort(key=lambda p: p.key)
            basis.extend(nxt)
            level = nxt
        return tuple(basis)

    def _check_admissible(self) -> int:
        """Loewy length; raises unless the arrow ideal is nilpotent modulo I"""
        dim = self.dim
        current = []
        for k, p in enumerate(self.basis):
            if p.length:
                v = [0] * dim
                v[k] = 1
                current.append(v)
        current = echelon_basis(self.field, current, dim)
        level = 1
        arrows = [self.arrow_element(k) for k in range(len(self.quiver.arrows))]
        while current:
            products = []
            for a in arrows:
                for r in current:
                    prod = self.multiply({a: 1}, {j: c for j, c in enumerate(r) if c})
                    if prod:
                        v = [0] * dim
                        for j, c in prod.items():
                            v[j] = c
                        products.append(v)
            nxt = echelon_basis(self.field, products, dim)
            if len(nxt) == len(current):
                raise NonAdmissibleError("relation ideal does not contain a power of the arrow ideal")
            level += 1
            if level > self.path_cap + 1:
                raise CapExceededError("arrow ideal not nilpotent within path-length cap", self.path_cap)
            current = nxt
        return level

    # --- arithmetic -----------------------------------------------------------

    def reduce(self, element: Element) -> Element:
        return self._gb.reduce(element)

    def mult(self, i: int, j: int) -> Dict[int, Scalar]:
        """basis[i] * basis[j] (apply basis[j] first) as a coefficient map"""
        key = (i, j)
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        p = compose(self.basis[i], self.basis[j])
        if p is None:
            out: Dict[int, Scalar] = {}
        elif p in self.index:
            out = {self.index[p]: 1}
        else:
            out = {self.index[q]: c for q, c in self._gb.reduce({p: 1}).items()}
        self._mult_cache[key] = out
        return out

    def multiply(self, u: Dict[int, Scalar], v: Dict[int, Scalar]) -> Dict[int, Scalar]:
        fld = self.field
        out: Dict[int, Scalar] = {}
        for i, a in u.items():
            if not a:
                continue
            for j, b in v.items():
                if not b:
                    continue
                for k, c in self.mult(i, j).items():
                    out[k] = fld.add(out.get(k, 0), fld.mul(fld.mul(a, b), c))
        return {k: c for k, c in out.items() if c}

    # --- opposite -------------------------------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            opp = BoundQuiverAlgebra(
                self.field,
                self.quiver.opposite(),
                [r.reversed() for r in self.relations],
                self.path_cap,
            )
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def opposite_element(self, element: Dict[int, Scalar]) -> Dict[int, Scalar]:
        """The same combination read in the opposite algebra, in its basis"""
        opp = self.opposite()
        combo: Element = {}
        for k, c in element.items():
            p = self.basis[k].reversed()
            combo[p] = opp.field.add(combo.get(p, 0), c)
        reduced = opp.reduce({p: c for p, c in combo.items() if c})
        return {opp.index[p]: c for p, c in reduced.items()}

    def path_label(self, k: int) -> str:
        return self.basis[k].label(self.quiver)

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra(vertices={list(self.quiver.vertices)}, dim={self.dim}, field={self.field.label})"


def normal_form(alg: BoundQuiverAlgebra, element: Dict[Tuple[str, ...], Scalar]) -> Dict[Path, Scalar]:
    """Canonical representative of a combination of paths given by arrow names

    Args:
        alg: the algebra
        element: map from a tuple of arrow names (written order) or a vertex
            label wrapped as ``("e", label)`` to a coefficient

    Returns:
        dict: basis paths with nonzero coefficients
    """
    combo: Element = {}
    for word, c in element.items():
        if len(word) == 2 and word[0] == "e":
            p = trivial_path(alg.quiver.vertex_index(word[1]))
        else:
            p = make_path(alg.quiver, [alg.quiver.arrow_index(n) for n in word])
        combo[p] = alg.field.add(combo.get(p, 0), alg.field.norm(c))
    combo = {p: c for p, c in combo.items() if c}
    return alg.reduce(combo)


# ============================================================================
# FILE FORMAT
# ============================================================================

_NUMBER = r"-?\d+(?:/\d+)?"
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<star>\*)|(?P<sign>[+-]))")
_ARROW = re.compile(r"^arrow\s+(?P<name>[A-Za-z_][A-Za-z0-9_']*)\s*:\s*(?P<src>\S+)\s*->\s*(?P<tgt>\S+)\s*$")
_SIMPLE_EXPR = re.compile(r"^(?P<kind>[SPI])\((?P<vertex>[^()\s]+)\)$")
_ROW = re.compile(r"\[([^\[\]]*)\]")


@dataclass(frozen=True)
class ModuleDecl:
    """A module declaration; resolved against the algebra by repmod"""

    name: str
    line: int
    column: int
    terms: Tuple[Tuple[str, Optional[str]], ...] = ()
    dims: Optional[Tuple[int, ...]] = None
    maps: Tuple[Tuple[str, Tuple[Tuple[str, ...], ...]], ...] = ()

    @property
    def explicit(self) -> bool:
        return self.dims is not None


@dataclass
class AlgebraDocument:
    algebra: BoundQuiverAlgebra
    modules: List[ModuleDecl] = dc_field(default_factory=list)


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _parse_relation(body: str, line: int, offset: int, quiver: Quiver, fld: FieldSpec) -> Relation:
    tokens = []
    pos = 0
    while pos < len(body):
        if body[pos:].strip() == "":
            break
        m = _TOKEN.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {body[pos:].strip()[:1]!r}", line, offset + pos + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty relation", line, offset + 1)

    terms: List[Tuple[Scalar, Path]] = []
    i = 0
    expect_term = True
    sign = 1
    while i < len(tokens):
        kind, text, col = tokens[i]
        if expect_term:
            if kind == "sign":
                sign = -1 if text == "-" else 1
                i += 1
                if i == len(tokens):
                    raise ParseError("dangling sign", line, col)
                kind, text, col = tokens[i]
            coeff: Scalar = 1
            if kind == "num":
                coeff = Fraction(text)
                if i + 1 >= len(tokens) or tokens[i + 1][0] != "star":
                    raise ParseError("expected '*' after coefficient", line, col)
                i += 2
                if i >= len(tokens):
                    raise ParseError("expected arrow after coefficient", line, col)
                kind, text, col = tokens[i]
            if kind != "name":
                raise ParseError(f"expected arrow name, found {text!r}", line, col)
            names = [(text, col)]
            i += 1
            while i + 1 < len(tokens) and tokens[i][0] == "star" and tokens[i + 1][0] == "name":
                names.append((tokens[i + 1][1], tokens[i + 1][2]))
                i += 2
            if i < len(tokens) and tokens[i][0] == "star":
                raise ParseError("expected arrow after '*'", line, tokens[i][2])
            try:
                idx = [quiver.arrow_index(n) for n, _ in names]
                path = make_path(quiver, idx)
            except ArthomError as e:
                raise ParseError(str(e), line, names[0][1])
            terms.append((fld.norm(coeff * sign), path))
            sign = 1
            expect_term = False
        else:
            if kind != "sign":
                raise ParseError(f"expected '+' or '-', found {text!r}", line, col)
            expect_term = True
    if expect_term:
        raise ParseError("relation ends with a sign", line, tokens[-1][2])

    combined: Dict[Path, Scalar] = {}
    for c, p in terms:
        combined[p] = fld.add(combined.get(p, 0), c)
    nonzero = tuple((c, p) for p, c in combined.items() if c)
    ends = {(p.source, p.target) for _, p in terms}
    if len(ends) != 1:
        raise ParseError("non-parallel relation term", line, offset + 1)
    if not nonzero:
        raise ParseError("relation has no nonzero terms", line, offset + 1)
    return Relation(nonzero)


def _parse_module_expr(name: str, expr: str, line: int, col: int) -> ModuleDecl:
    terms: List[Tuple[str, Optional[str]]] = []
    for part in expr.split("+"):
        part = part.strip()
        if not part:
            raise ParseError("empty term in module expression", line, col)
        m = _SIMPLE_EXPR.match(part)
        if m:
            terms.append((m.group("kind"), m.group("vertex")))
        elif part in ("A", "DA"):
            terms.append((part, None))
        elif re.match(r"^[A-Za-z_][A-Za-z0-9_']*$", part):
            terms.append(("name", part))
        else:
            raise ParseError(f"bad module term {part!r}", line, col)
    return ModuleDecl(name=name, line=line, column=col, terms=tuple(terms))


def _parse_matrix(text: str, line: int, col: int) -> Tuple[Tuple[str, ...], ...]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("matrix must be written as [[..],[..]]", line, col)
    inner = text[1:-1].strip()
    if not inner:
        return ()
    rows = []
    for row in _ROW.findall(inner):
        entries = tuple(e.strip() for e in row.split(",") if e.strip())
        for e in entries:
            if not re.fullmatch(_NUMBER, e):
                raise ParseError(f"bad matrix entry {e!r}", line, col)
        rows.append(entries)
    if not rows:
        raise ParseError("matrix has no rows", line, col)
    return tuple(rows)


def _parse_module_block(name: str, body: str, line: int, col: int) -> ModuleDecl:
    dims: Optional[Tuple[int, ...]] = None
    maps = []
    for stmt in body.split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        if stmt.startswith("dim"):
            parts = stmt.split()[1:]
            if not all(re.fullmatch(r"\d+", p) for p in parts):
                raise ParseError("dim expects nonnegative integers", line, col)
            dims = tuple(int(p) for p in parts)
        elif stmt.startswith("map"):
            m = re.match(r"^map\s+(?P<arrow>[A-Za-z_][A-Za-z0-9_']*)\s*=\s*(?P<mat>.+)$", stmt, re.S)
            if not m:
                raise ParseError(f"bad map statement {stmt!r}", line, col)
            maps.append((m.group("arrow"), _parse_matrix(m.group("mat"), line, col)))
        else:
            raise ParseError(f"unknown module statement {stmt.split()[0]!r}", line, col)
    if dims is None:
        raise ParseError(f"module {name} has no dim statement", line, col)
    return ModuleDecl(name=name, line=line, column=col, dims=dims, maps=tuple(maps))


def parse_document(text: str, path_cap: int = DEFAULT_PATH_CAP) -> AlgebraDocument:
    """Parse an algebra file with its module declarations

    Args:
        text: file contents
        path_cap: path-length cap for basis enumeration and Gröbner completion

    Returns:
        AlgebraDocument: the algebra plus unresolved module declarations

    Raises:
        ParseError: syntax errors, with line and column
    """
    fld = FieldSpec.rationals()
    vertices: Optional[List[str]] = None
    arrow_lines: List[Tuple[str, str, str, int]] = []
    relation_lines: List[Tuple[str, int, int]] = []
    modules: List[ModuleDecl] = []

    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        raw = _strip_comment(lines[i])
        stripped = raw.strip()
        indent = len(raw) - len(raw.lstrip()) + 1
        i += 1
        if not stripped:
            continue
        keyword = stripped.split()[0]
        if keyword == "field":
            parts = stripped.replace("(", " ").replace(")", " ").split()
            if parts[1:] == ["Q"]:
                fld = FieldSpec.rationals()
            elif len(parts) == 3 and parts[1] == "GF" and parts[2].isdigit():
                try:
                    fld = FieldSpec.prime(int(parts[2]))
                except ArthomError as e:
                    raise ParseError(str(e), lineno, indent)
            else:
                raise ParseError("expected 'field Q' or 'field GF <p>'", lineno, indent)
        elif keyword == "vertices":
            vertices = stripped.split()[1:]
            if not vertices:
                raise ParseError("no vertices declared", lineno, indent)
        elif keyword == "arrow":
            m = _ARROW.match(stripped)
            if not m:
                raise ParseError("expected 'arrow <name> : <src> -> <tgt>'", lineno, indent)
            arrow_lines.append((m.group("name"), m.group("src"), m.group("tgt"), lineno))
        elif keyword == "relation":
            start = raw.index("relation") + len("relation")
            relation_lines.append((raw[start:], lineno, start))
        elif keyword == "module":
            rest = stripped[len("module"):].strip()
            m = re.match(r"^(?P<name>[A-Za-z_][A-Za-z0-9_']*)\s*(?P<rest>.*)$", rest, re.S)
            if not m:
                raise ParseError("expected module name", lineno, indent)
            name, tail = m.group("name"), m.group("rest").strip()
            if tail.startswith("="):
                modules.append(_parse_module_expr(name, tail[1:], lineno, indent))
            elif tail.startswith("{"):
                block = tail[1:]
                while "}" not in block:
                    if i >= len(lines):
                        raise ParseError(f"module {name} block is not closed", lineno, indent)
                    block += "\n" + _strip_comment(lines[i])
                    i += 1
                body, after = block.split("}", 1)
                if after.strip():
                    raise ParseError("unexpected text after '}'", lineno, indent)
                modules.append(_parse_module_block(name, body, lineno, indent))
            else:
                raise ParseError("expected '=' or '{' after module name", lineno, indent)
        else:
            raise ParseError(f"unknown declaration {keyword!r}", lineno, indent)

    if vertices is None:
        raise ParseError("missing 'vertices' declaration", len(lines) or 1, 1)
    arrows = []
    for name, src, tgt, lineno in arrow_lines:
        if src not in vertices or tgt not in vertices:
            raise ParseError(f"arrow {name} uses an undeclared vertex", lineno, 1)
        arrows.append(Arrow(name, vertices.index(src), vertices.index(tgt)))
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except ArthomError as e:
        raise ParseError(str(e), 1, 1)
    relations = [_parse_relation(body, lineno, start, quiver, fld) for body, lineno, start in relation_lines]
    seen = set()
    for decl in modules:
        if decl.name in seen:
            raise ParseError(f"module {decl.name} declared twice", decl.line, decl.column)
        seen.add(decl.name)
    algebra = BoundQuiverAlgebra(fld, quiver, relations, path_cap)
    return AlgebraDocument(algebra=algebra, modules=modules)


def parse_algebra(text: str, path_cap: int = DEFAULT_PATH_CAP) -> BoundQuiverAlgebra:
    return parse_document(text, path_cap).algebra


def to_text(alg: BoundQuiverAlgebra) -> str:
    """Serialize in the algebra file format (round-trips through parse_algebra)"""
    q = alg.quiver
    lines = [f"field {alg.field.label}", "vertices " + " ".join(q.vertices)]
    for a in q.arrows:
        lines.append(f"arrow {a.name} : {q.vertices[a.source]} -> {q.vertices[a.target]}")
    for rel in alg.relations:
        lines.append(f"relation {rel.label(q)}")
    return "\n".join(lines) + "\n"
