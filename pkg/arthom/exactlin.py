"""Exact dense linear algebra over the rationals and prime fields GF(p)

Rational entries are kept as ``int`` whenever they are integral and as
``Fraction`` otherwise; prime-field entries are residues ``0..p-1``.
Every public operation returns canonical entries, so equal inputs give
bit-identical outputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import ArthomError, FieldMismatchError, ShapeError

Scalar = Union[int, Fraction]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _q(x: Scalar) -> Scalar:
    if type(x) is int:
        return x
    if x.denominator == 1:
        return x.numerator
    return x


# ============================================================================
# FIELDS
# ============================================================================

@dataclass(frozen=True)
class FieldSpec:
    """A base field: ``rationals`` or ``prime`` with characteristic ``p``"""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p != 0:
                raise ArthomError("the rationals carry no modulus")
        elif self.kind == "prime":
            if not _is_prime(self.p):
                raise ArthomError(f"GF({self.p}) requires a prime modulus")
        else:
            raise ArthomError(f"unknown field kind: {self.kind}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def label(self) -> str:
        return "Q" if self.p == 0 else f"GF {self.p}"

    def norm(self, x) -> Scalar:
        """Reduce ``x`` (int or Fraction) to canonical form"""
        if self.p == 0:
            return _q(x if isinstance(x, (int, Fraction)) else Fraction(x))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ArthomError(f"{x} is not defined in GF({self.p})")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def parse(self, token: str) -> Scalar:
        return self.norm(Fraction(token))

    def inv(self, x: Scalar) -> Scalar:
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return _q(Fraction(1) / x)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else _q(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else _q(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p else _q(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p else -a

    def fmt(self, x: Scalar) -> str:
        return str(x)


# ============================================================================
# MATRICES
# ============================================================================

@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix; ``data`` is a tuple of row tuples"""

    field: FieldSpec
    rows: int
    cols: int
    data: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeError(f"matrix data does not match shape {self.rows}x{self.cols}")

    # --- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Mat":
        rows = [tuple(field.norm(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> "Mat":
        columns = list(columns)
        data = tuple(tuple(field.norm(c[i]) for c in columns) for i in range(rows))
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        return cls(field, n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def unit_column(cls, field: FieldSpec, n: int, k: int) -> "Mat":
        return cls(field, n, 1, tuple((1 if i == k else 0,) for i in range(n)))

    # --- access -------------------------------------------------------------

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self.data[i][j]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> Tuple[Scalar, ...]:
        """Row-major entries"""
        return tuple(x for r in self.data for x in r)

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> List[Tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat(self.field, len(rows), len(cols),
                   tuple(tuple(self.data[i][j] for j in cols) for i in rows))

    def select_columns(self, cols: Sequence[int]) -> "Mat":
        return self.submatrix(range(self.rows), cols)

    def select_rows(self, rows: Sequence[int]) -> "Mat":
        return self.submatrix(rows, range(self.cols))

    # --- arithmetic ---------------------------------------------------------

    def _check(self, other: "Mat") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.label} vs {other.field.label}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        out = []
        odata = other.data
        for row in self.data:
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    orow = odata[k]
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            if p:
                out.append(tuple(x % p for x in acc))
            else:
                out.append(tuple(_q(x) for x in acc))
        return Mat(self.field, self.rows, other.cols, tuple(out))

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        f = self.field.add
        return Mat(self.field, self.rows, self.cols,
                   tuple(tuple(f(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(-1)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "Mat":
        c = self.field.norm(c)
        f = self.field.mul
        return Mat(self.field, self.rows, self.cols, tuple(tuple(f(c, x) for x in r) for r in self.data))

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def trace_product(self, other: "Mat") -> Scalar:
        """tr(self · other) without forming the product"""
        total = 0
        for i, row in enumerate(self.data):
            for k, a in enumerate(row):
                if a:
                    total += a * other.data[k][i]
        return self.field.norm(total)


def hstack(field: FieldSpec, mats: Sequence[Mat], rows: int) -> Mat:
    """Concatenate side by side; ``rows`` fixes the height when ``mats`` is empty"""
    for m in mats:
        if m.rows != rows:
            raise ShapeError("hstack height mismatch")
    data = tuple(tuple(x for m in mats for x in m.data[i]) for i in range(rows))
    return Mat(field, rows, sum(m.cols for m in mats), data)


def vstack(field: FieldSpec, mats: Sequence[Mat], cols: int) -> Mat:
    for m in mats:
        if m.cols != cols:
            raise ShapeError("vstack width mismatch")
    data = tuple(r for m in mats for r in m.data)
    return Mat(field, len(data), cols, data)


def block_diag(field: FieldSpec, mats: Sequence[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = []
    offset = 0
    for m in mats:
        for r in m.data:
            data.append((0,) * offset + r + (0,) * (cols - offset - m.cols))
        offset += m.cols
    return Mat(field, rows, cols, tuple(data))


# ============================================================================
# ELIMINATION
# ============================================================================

def _rref(field: FieldSpec, rows: Iterable[Sequence[Scalar]], ncols: int) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form; pivots scanned top-to-bottom, left-to-right"""
    p = field.p
    work = [list(r) for r in rows]
    nrows = len(work)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        if lead != 1:
            inv = field.inv(lead)
            if p:
                work[r] = [(x * inv) % p for x in work[r]]
            else:
                work[r] = [_q(x * inv) for x in work[r]]
        prow = work[r]
        tail = prow[c:]
        for i in range(nrows):
            if i == r:
                continue
            f = work[i][c]
            if not f:
                continue
            row = work[i]
            if p:
                row[c:] = [(x - f * y) % p for x, y in zip(row[c:], tail)]
            else:
                row[c:] = [_q(x - f * y) for x, y in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(m: Mat) -> Tuple[Mat, List[int]]:
    """Nonzero rows of the reduced row echelon form and the pivot columns"""
    rows, pivots = _rref(m.field, m.data, m.cols)
    return Mat(m.field, len(rows), m.cols, tuple(tuple(r) for r in rows)), pivots


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m.field, m.data, m.cols)[1])


def kernel_basis(m: Mat) -> Mat:
    """Right null space basis as columns, one per free column in order"""
    rows, pivots = _rref(m.field, m.data, m.cols)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    columns = []
    neg = m.field.neg
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, pc in enumerate(pivots):
            if rows[r][f]:
                v[pc] = neg(rows[r][f])
        columns.append(v)
    return Mat.from_columns(m.field, columns, m.cols)


def solve(m: Mat, b: Mat) -> Optional[Mat]:
    """Some x with m·x = b (free variables zero), or None when inconsistent"""
    if m.field != b.field:
        raise FieldMismatchError(f"{m.field.label} vs {b.field.label}")
    if b.rows != m.rows:
        raise ShapeError(f"right-hand side has {b.rows} rows, expected {m.rows}")
    n = m.cols
    augmented = [tuple(mr) + tuple(br) for mr, br in zip(m.data, b.data)]
    rows, pivots = _rref(m.field, augmented, n + b.cols)
    if pivots and pivots[-1] >= n:
        return None
    x = [[0] * b.cols for _ in range(n)]
    for r, pc in enumerate(pivots):
        x[pc] = list(rows[r][n:])
    return Mat(m.field, n, b.cols, tuple(tuple(r) for r in x))


def column_basis(m: Mat) -> Mat:
    """The pivot columns of m: a basis of its column space"""
    if m.rows == 0:
        return Mat.zeros(m.field, 0, 0)
    pivots = _rref(m.field, m.data, m.cols)[1]
    return m.select_columns(pivots)


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise ShapeError("only square matrices are invertible")
    x = solve(m, Mat.identity(m.field, m.rows))
    if x is None or rank(m) != m.rows:
        raise ArthomError("matrix is singular")
    return x


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def in_span(columns: Mat, v: Mat) -> bool:
    return solve(columns, v) is not None


def complement_columns(field: FieldSpec, span: Mat, n: int) -> List[int]:
    """Indices k of standard vectors e_k extending the column span of ``span`` to k^n"""
    base = [list(r) for r in span.T.data] if span.cols else []
    chosen: List[int] = []
    current = len(_rref(field, base, n)[1]) if base else 0
    for k in range(n):
        if current == n:
            break
        e = [0] * n
        e[k] = 1
        trial = base + [e]
        r = len(_rref(field, trial, n)[1])
        if r > current:
            base = trial
            chosen.append(k)
            current = r
    return chosen


def row_space_complement(field: FieldSpec, vectors: Sequence[Sequence[Scalar]],
                         candidates: Sequence[Sequence[Scalar]], n: int) -> List[int]:
    """Greedy indices of ``candidates`` independent modulo the span of ``vectors``"""
    base = [list(v) for v in vectors]
    current = len(_rref(field, base, n)[1]) if base else 0
    chosen = []
    for idx, cand in enumerate(candidates):
        trial = base + [list(cand)]
        r = len(_rref(field, trial, n)[1])
        if r > current:
            base = trial
            current = r
            chosen.append(idx)
    return chosen


def span_rank(field: FieldSpec, vectors: Sequence[Sequence[Scalar]], n: int) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors or n == 0:
        return 0
    return len(_rref(field, vectors, n)[1])


def echelon_basis(field: FieldSpec, vectors: Sequence[Sequence[Scalar]], n: int) -> List[Tuple[Scalar, ...]]:
    """Reduced echelon basis of the span of ``vectors``"""
    if not vectors or n == 0:
        return []
    rows, _ = _rref(field, vectors, n)
    return [tuple(r) for r in rows]


# ============================================================================
# POLYNOMIALS OF MATRICES
# ============================================================================

def min_poly_blocks(blocks: Sequence[Mat]) -> List[Scalar]:
    """Monic minimal polynomial (low to high) of a block-diagonal operator

    Args:
        blocks: square diagonal blocks over one field

    Returns:
        list: coefficients c_0..c_d with c_d = 1
    """
    if not blocks:
        raise ArthomError("minimal polynomial of an empty operator")
    field = blocks[0].field
    size = sum(b.rows * b.rows for b in blocks)
    if size == 0:
        return [1]
    powers = [[Mat.identity(field, b.rows) for b in blocks]]
    flat = [tuple(x for m in powers[0] for x in m.entries)]
    while True:
        nxt = [cur @ b for cur, b in zip(powers[-1], blocks)]
        v = tuple(x for m in nxt for x in m.entries)
        basis = Mat.from_columns(field, flat, size)
        x = solve(basis, Mat.from_columns(field, [v], size))
        if x is not None:
            coeffs = [field.neg(c) for c in x.column(0)]
            return coeffs + [1]
        powers.append(nxt)
        flat.append(v)


def poly_eval_blocks(coeffs: Sequence[Scalar], blocks: Sequence[Mat]) -> List[Mat]:
    """Evaluate a polynomial (low to high coefficients) on each block via Horner"""
    out = []
    for b in blocks:
        field = b.field
        acc = Mat.zeros(field, b.rows, b.rows)
        ident = Mat.identity(field, b.rows)
        for c in reversed(list(coeffs)):
            acc = acc @ b + ident.scale(c)
        out.append(acc)
    return out
