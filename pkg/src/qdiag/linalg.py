"""Exact sparse linear algebra over Q(q).

Vectors are dicts {column index: nonzero QScalar}.  Subspaces are kept in
reduced row echelon form with pivot entries 1; since scalar canonical forms
are unique, two subspaces are equal iff their RREF data are identical, and
that comparison is used everywhere downstream.

Pivoting is deterministic: leftmost column first, no magnitude pivoting.
Every arithmetic step re-canonicalizes, which keeps entries reduced; at the
block sizes this package works with, no extra denominator-clearing pass is
needed (the relation rows are short and the full suite runs in seconds).
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .scalars import ONE, ZERO, QScalar

__all__ = ["QMatrix", "SubspaceBasis", "kernel"]


def _vec_sub_scaled(vec: dict, row: dict, c: QScalar):
    """In place vec -= c * row."""
    for col, val in row.items():
        s = vec.get(col, ZERO) - c * val
        if s:
            vec[col] = s
        else:
            vec.pop(col, None)


class QMatrix:
    """Sparse matrix over Q(q); entries map (row, col) -> nonzero scalar."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for key, val in entries.items():
                if val:
                    self.entries[key] = val

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix(n, n, {(i, i): ONE for i in range(n)})

    def get(self, i: int, j: int) -> QScalar:
        return self.entries.get((i, j), ZERO)

    def _check_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch(
                f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.entries == other.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other):
        self._check_shape(other)
        data = dict(self.entries)
        for key, val in other.entries.items():
            s = data.get(key, ZERO) + val
            if s:
                data[key] = s
            else:
                data.pop(key, None)
        return QMatrix(self.nrows, self.ncols, data)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c: QScalar) -> "QMatrix":
        if not c:
            return QMatrix(self.nrows, self.ncols)
        return QMatrix(self.nrows, self.ncols,
                       {key: c * val for key, val in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"{self.nrows}x{self.ncols} times {other.nrows}x{other.ncols}")
        by_row: dict = {}
        for (k, j), val in other.entries.items():
            by_row.setdefault(k, []).append((j, val))
        data: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                s = data.get(key, ZERO) + a * b
                if s:
                    data[key] = s
                else:
                    data.pop(key, None)
        return QMatrix(self.nrows, other.ncols, data)

    def transpose(self) -> "QMatrix":
        return QMatrix(self.ncols, self.nrows,
                       {(j, i): val for (i, j), val in self.entries.items()})

    def row(self, i: int) -> dict:
        return {j: val for (r, j), val in self.entries.items() if r == i}

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector."""
        out: dict = {}
        for (i, j), val in self.entries.items():
            c = vec.get(j)
            if c is None:
                continue
            s = out.get(i, ZERO) + val * c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return out

    def to_json(self):
        return {
            "nrows": self.nrows,
            "ncols": self.ncols,
            "entries": [[i, j, str(val)]
                        for (i, j), val in sorted(self.entries.items())],
        }

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols}, {len(self.entries)} entries)"


class SubspaceBasis:
    """Canonical RREF basis of a subspace of Q(q)^ambient.

    ``rows`` are sparse vectors sorted by pivot column; each pivot entry is 1
    and pivot columns are cleared from every other row.
    """

    __slots__ = ("ambient", "rows", "pivots", "labels")

    def __init__(self, ambient: int, rows, pivots, labels=None):
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots
        self.labels = labels

    @staticmethod
    def from_vectors(vectors, ambient: int, labels=None) -> "SubspaceBasis":
        pivot_rows: dict = {}
        for vec in vectors:
            row = dict(vec)
            _reduce_by(row, pivot_rows)
            if not row:
                continue
            p = min(row)
            inv = row[p].inv()
            row = {c: v * inv for c, v in row.items()}
            # clear the new pivot column from the existing rows
            for other in pivot_rows.values():
                c = other.get(p)
                if c is not None:
                    _vec_sub_scaled(other, row, c)
            pivot_rows[p] = row
        pivots = sorted(pivot_rows)
        rows = [pivot_rows[p] for p in pivots]
        return SubspaceBasis(ambient, rows, pivots, labels)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Canonical residual of vec modulo this subspace."""
        out = dict(vec)
        for p, row in zip(self.pivots, self.rows):
            c = out.get(p)
            if c is not None:
                _vec_sub_scaled(out, row, c)
        return out

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def __eq__(self, other):
        return (isinstance(other, SubspaceBasis)
                and self.ambient == other.ambient
                and self.pivots == other.pivots
                and self.rows == other.rows)

    def sum_with(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._check_ambient(other)
        return SubspaceBasis.from_vectors(self.rows + other.rows,
                                          self.ambient, self.labels)

    def intersect(self, other: "SubspaceBasis") -> "SubspaceBasis":
        """Intersection via the kernel of the stacked coefficient map."""
        self._check_ambient(other)
        gens = self.rows + other.rows
        k = len(self.rows)
        m = QMatrix(self.ambient, len(gens),
                    {(c, j): val for j, g in enumerate(gens)
                     for c, val in g.items()})
        inter = []
        for combo in kernel(m).rows:
            vec: dict = {}
            for j, c in combo.items():
                if j < k:
                    _vec_sub_scaled(vec, self.rows[j], -c)
            inter.append(vec)
        return SubspaceBasis.from_vectors(inter, self.ambient, self.labels)

    def _check_ambient(self, other):
        if self.ambient != other.ambient:
            raise DimensionMismatch(
                f"ambient {self.ambient} vs {other.ambient}")

    def to_json(self):
        labels = self.labels
        name = (lambda c: labels[c]) if labels else (lambda c: c)
        return {
            "ambient": self.ambient,
            "dim": self.dim,
            "rows": [{str(name(c)): str(v) for c, v in sorted(r.items())}
                     for r in self.rows],
        }

    def __repr__(self):
        return f"SubspaceBasis(dim {self.dim} of {self.ambient})"


def _reduce_by(row: dict, pivot_rows: dict):
    """In place reduction of row against rows keyed by pivot column."""
    while True:
        hit = None
        for c in row:
            if c in pivot_rows and (hit is None or c < hit):
                hit = c
        if hit is None:
            return
        _vec_sub_scaled(row, pivot_rows[hit], row[hit])


def kernel(m: QMatrix) -> SubspaceBasis:
    """Right kernel {v : m v = 0} as a canonical subspace of Q(q)^ncols."""
    row_space = SubspaceBasis.from_vectors(
        (m.row(i) for i in range(m.nrows)), m.ncols)
    pivot_set = set(row_space.pivots)
    free_cols = [c for c in range(m.ncols) if c not in pivot_set]
    vectors = []
    for f in free_cols:
        vec = {f: ONE}
        for p, row in zip(row_space.pivots, row_space.rows):
            c = row.get(f)
            if c is not None:
                vec[p] = -c
        vectors.append(vec)
    basis = SubspaceBasis.from_vectors(vectors, m.ncols)
    # rank-nullity, and each basis vector really is annihilated
    assert row_space.dim + basis.dim == m.ncols
    for vec in basis.rows:
        assert not m.apply(vec)
    return basis
