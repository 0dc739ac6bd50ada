"""Exact rational scalars, sparse vectors and matrices, and row reduction.

Vectors are plain dicts mapping a hashable label (an int index or any
structured label) to a nonzero Fraction.  Matrices are ``SparseMatrix``
objects with integer row/column indices.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import heapq


def Q(x):
    """Coerce ints, Fractions and strings like '3/2' to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        try:
            return Fraction(s)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in rational {s!r}") from None
    raise TypeError(f"cannot convert {x!r} to a rational")


# ---------------------------------------------------------------- vectors

def vadd(target, src, coef=1):
    """target += coef*src, in place; drops zeros."""
    if not coef:
        return target
    for k, c in src.items():
        v = target.get(k, 0) + coef * c
        if v:
            target[k] = v
        else:
            target.pop(k, None)
    return target


def vsum(*vecs):
    out = {}
    for v in vecs:
        vadd(out, v)
    return out


def vscale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vsub(a, b):
    return vadd(dict(a), b, -1)


def vclean(v):
    return {k: Fraction(c) for k, c in v.items() if c}


def vmap(v, f):
    """Linear extension of f (label -> vector) applied to v."""
    out = {}
    for k, c in v.items():
        vadd(out, f(k), c)
    return out


def vfmt(v, name=str):
    if not v:
        return "0"
    parts = []
    for k in sorted(v, key=repr):
        parts.append(f"{v[k]}*{name(k)}")
    return " + ".join(parts)


# ---------------------------------------------------------------- basis interning

class Basis:
    """Interned symbol table: label <-> index, in insertion order."""

    def __init__(self, labels=()):
        self.labels = []
        self._index = {}
        for lab in labels:
            self.add(lab)

    def add(self, label):
        i = self._index.get(label)
        if i is None:
            i = len(self.labels)
            self._index[label] = i
            self.labels.append(label)
        return i

    def index(self, label):
        return self._index[label]

    def __contains__(self, label):
        return label in self._index

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    def to_indices(self, v):
        return {self._index[k]: c for k, c in v.items()}

    def to_labels(self, v):
        return {self.labels[i]: c for i, c in v.items()}


# ---------------------------------------------------------------- matrices

class SparseMatrix:
    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (i, j), c in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
            c = Q(c)
            if c:
                self.entries[(i, j)] = c

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        ent = {(i, j): c for i, r in enumerate(rows) for j, c in enumerate(r) if c}
        return cls(len(rows), ncols, ent)

    @classmethod
    def from_columns(cls, columns, nrows):
        """Build from a list of sparse column vectors {row: value}."""
        ent = {(i, j): c for j, col in enumerate(columns) for i, c in col.items()}
        return cls(nrows, len(columns), ent)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), c in self.entries.items():
            out[i][j] = c
        return out

    def row_dicts(self):
        rows = [{} for _ in range(self.rows)]
        for (i, j), c in self.entries.items():
            rows[i][j] = c
        return rows

    def col_dicts(self):
        cols = [{} for _ in range(self.cols)]
        for (i, j), c in self.entries.items():
            cols[j][i] = c
        return cols

    def transpose(self):
        return SparseMatrix(self.cols, self.rows, {(j, i): c for (i, j), c in self.entries.items()})

    def apply(self, v):
        """Matrix times a sparse column vector {col: value}."""
        out = {}
        cols = self.col_dicts() if len(v) * 4 < self.cols else None
        if cols is not None:
            for j, x in v.items():
                vadd(out, cols[j], x)
            return out
        for (i, j), c in self.entries.items():
            x = v.get(j)
            if x:
                out[i] = out.get(i, 0) + c * x
        return {i: c for i, c in out.items() if c}

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        orows = other.row_dicts()
        ent = {}
        for (i, k), c in self.entries.items():
            for j, d in orows[k].items():
                ent[(i, j)] = ent.get((i, j), 0) + c * d
        return SparseMatrix(self.rows, other.cols, ent)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def is_zero(self):
        return not self.entries


# ---------------------------------------------------------------- elimination

class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each stored row has leading coefficient 1 at its pivot, the pivot being
    the smallest index present.  Rows are inserted in order, so among rows
    sharing a leading column the earliest one becomes the pivot.
    """

    def __init__(self):
        self.pivots = {}  # pivot column -> row dict

    def reduce(self, v):
        """Residual of v modulo the span, reduced at every pivot column."""
        r = dict(v)
        piv = self.pivots
        heap = [c for c in r if c in piv]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            x = r.get(c)
            if not x:
                continue
            for k, val in piv[c].items():
                y = r.get(k, 0) - x * val
                if y:
                    r[k] = y
                    if k != c and k in piv:
                        heapq.heappush(heap, k)
                else:
                    r.pop(k, None)
        return r

    def add(self, v):
        """Insert v; returns True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        self.pivots[p] = {k: c * inv for k, c in r.items()}
        return True

    def contains(self, v):
        return not self.reduce(v)

    @property
    def rank(self):
        return len(self.pivots)

    def reduced_rows(self):
        """Rows in fully reduced echelon form, sorted by pivot."""
        piv = sorted(self.pivots)
        rows = {p: dict(self.pivots[p]) for p in piv}
        for p in reversed(piv):
            row = rows[p]
            for q in [k for k in row if k != p and k in rows]:
                x = row.get(q)
                if x:
                    vadd(row, rows[q], -x)
        return [(p, rows[p]) for p in piv]


def rref(m):
    """Reduced row echelon form and pivot columns of a SparseMatrix."""
    ech = Echelon()
    for row in m.row_dicts():
        ech.add(row)
    rows = ech.reduced_rows()
    ent = {(i, j): c for i, (_, row) in enumerate(rows) for j, c in row.items()}
    return SparseMatrix(m.rows, m.cols, ent), [p for p, _ in rows]


def rank(m):
    ech = Echelon()
    # eliminate along the shorter side
    for v in (m.row_dicts() if m.rows <= m.cols else m.col_dicts()):
        ech.add(v)
    return ech.rank


def kernel_basis(m):
    """Basis of {x : m x = 0} as sparse vectors indexed by column."""
    _, prow = _rref_rows(m)
    pivset = {p for p, _ in prow}
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        x = {f: Fraction(1)}
        for p, row in prow:
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


def _rref_rows(m):
    ech = Echelon()
    for row in m.row_dicts():
        ech.add(row)
    rows = ech.reduced_rows()
    return ech, rows


def image_basis(m):
    """Echelon basis of the column space, as sparse vectors indexed by row."""
    ech = Echelon()
    for col in m.col_dicts():
        ech.add(col)
    return [row for _, row in ech.reduced_rows()]


def span_echelon(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech


@dataclass
class SolutionSpace:
    particular: list
    basis: list = field(default_factory=list)
    params: list = field(default_factory=list)

    @property
    def dimension(self):
        return len(self.basis)

    def point(self, values):
        """particular + sum values[i]*basis[i]."""
        out = list(self.particular)
        for t, b in zip(values, self.basis):
            t = Q(t)
            for i, c in enumerate(b):
                out[i] += t * c
        return out


class Inconsistent(Exception):
    """The affine system has no solution."""


def solve_affine(m, rhs, param_prefix="t"):
    """Solve m x = rhs exactly; raises Inconsistent when rank grows on augmentation."""
    rhs = [Q(c) for c in rhs]
    if len(rhs) != m.rows:
        raise ValueError("rhs length must equal number of rows")
    rows = m.row_dicts()
    for i, c in enumerate(rhs):
        if c:
            rows[i][m.cols] = c
    ech = Echelon()
    for row in rows:
        ech.add(row)
    red = ech.reduced_rows()
    if any(p == m.cols for p, _ in red):
        raise Inconsistent("rank([m|rhs]) > rank(m)")
    x = [Fraction(0)] * m.cols
    pivset = set()
    for p, row in red:
        x[p] = row.get(m.cols, Fraction(0))
        pivset.add(p)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        b = [Fraction(0)] * m.cols
        b[f] = Fraction(1)
        for p, row in red:
            c = row.get(f)
            if c:
                b[p] = -c
        basis.append(b)
    return SolutionSpace(x, basis, [f"{param_prefix}{i}" for i in range(len(basis))])


# ---------------------------------------------------------------- dense helpers

def mat(rows):
    return [[Q(c) for c in r] for r in rows]


def zeros(n, m=None):
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k) if a[i][t]), Fraction(0)) for j in range(m)]
            for i in range(n)]


def madd(a, b, coef=1):
    return [[x + coef * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mscale(a, c):
    return [[c * x for x in r] for r in a]


def mcomm(a, b):
    return madd(mmul(a, b), mmul(b, a), -1)


def miszero(a):
    return not any(x for r in a for x in r)


def mkron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def mtranspose(a):
    return [list(r) for r in zip(*a)] if a else []


def minverse(a):
    n = len(a)
    sol = []
    m = SparseMatrix.from_dense(a)
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        sol.append(solve_affine(m, e).particular)
    if rank(m) != n:
        raise ValueError("singular matrix")
    return mtranspose(sol)



# ---------------------------------------------------------------- reports

@dataclass
class Report:
    """Outcome of a checker: ok plus a list of failure records."""
    name: str = ""
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def fail(self, what, **data):
        self.failures.append({"what": what, **{k: fmt_json(v) for k, v in data.items()}})
        return self

    def __bool__(self):
        return self.ok

    def merge(self, other):
        self.failures.extend(other.failures)
        return self

    def to_json(self):
        return {"check": self.name, "ok": self.ok, "failures": self.failures,
                **({"info": fmt_json(self.info)} if self.info else {})}


def fmt_json(x):
    """Render nested data with Fractions as JSON-friendly strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): fmt_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [fmt_json(v) for v in x]
    return x
