"""Sparse exact linear algebra over any scalar backend.

Everything reduces to one canonical reduced-row-echelon routine, so ranks,
kernels, solutions and coset representatives are deterministic and unique.
Pivot columns are visited left to right; among candidate pivot rows the
sparsest one wins (ties broken by index) to keep fill-in down on the large
band matrices this package produces.
"""

from __future__ import annotations


class NotContainedError(ValueError):
    """Claimed subspace inclusion does not hold."""


def _rref(rows, ncols):
    """Reduced row echelon form of a list of sparse rows (dicts col -> scalar).

    Mutates nothing; returns (pivot_columns, pivot_rows) with unit pivots and
    all pivot columns cleared from every other row.  The result is the unique
    RREF of the row space, independent of the pivot-row selection order.
    """
    remaining = [dict(r) for r in rows if r]
    pivots = []
    pivot_rows = []
    for col in range(ncols):
        best = None
        for idx, row in enumerate(remaining):
            if col in row:
                key = (len(row), idx)
                if best is None or key < best:
                    best = key
        if best is None:
            continue
        row = remaining.pop(best[1])
        inv = row[col] ** 0 / row[col]
        row = {c: v * inv for c, v in row.items()}
        for other in remaining:
            factor = other.get(col)
            if factor is not None:
                for c, v in row.items():
                    nv = other.get(c)
                    nv = -factor * v if nv is None else nv - factor * v
                    if nv:
                        other[c] = nv
                    else:
                        del other[c]
        for other in pivot_rows:
            factor = other.get(col)
            if factor is not None:
                for c, v in row.items():
                    nv = other.get(c)
                    nv = -factor * v if nv is None else nv - factor * v
                    if nv:
                        other[c] = nv
                    else:
                        del other[c]
        remaining = [r for r in remaining if r]
        pivots.append(col)
        pivot_rows.append(row)
    return pivots, pivot_rows


def _reduce_vector(vec, pivots, pivot_rows):
    """Residue of a sparse vector modulo the span of RREF rows."""
    vec = dict(vec)
    for col, row in zip(pivots, pivot_rows):
        factor = vec.get(col)
        if factor is not None:
            for c, v in row.items():
                nv = vec.get(c)
                nv = -factor * v if nv is None else nv - factor * v
                if nv:
                    vec[c] = nv
                else:
                    del vec[c]
    return vec


class Subspace:
    """Subspace of k^n held in canonical reduced echelon form."""

    def __init__(self, ambient, vectors, field):
        self.ambient = ambient
        self.field = field
        self.pivots, self.basis = _rref(vectors, ambient)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vector) -> bool:
        return not _reduce_vector(vector, self.pivots, self.basis)

    def contains_subspace(self, other) -> bool:
        return all(self.contains(row) for row in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


class SparseMatrix:
    """Immutable sparse matrix; entries is a dict (row, col) -> nonzero scalar."""

    def __init__(self, rows, cols, entries, field):
        self.rows = rows
        self.cols = cols
        self.entries = {k: v for k, v in entries.items() if v}
        self.field = field
        self._rref_cache = None

    @classmethod
    def from_dense(cls, data, field):
        entries = {}
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(len(data), len(data[0]) if data else 0, entries, field)

    @classmethod
    def identity(cls, n, field):
        one = field.one()
        return cls(n, n, {(i, i): one for i in range(n)}, field)

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_dicts(self):
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def _rref(self):
        if self._rref_cache is None:
            self._rref_cache = _rref(self.row_dicts(), self.cols)
        return self._rref_cache

    def rank(self) -> int:
        pivots, rows = self._rref()
        r = len(pivots)
        assert r + (self.cols - r) == self.cols  # rank-nullity bookkeeping
        return r

    def kernel_basis(self) -> Subspace:
        """Canonical basis of the right null space; dim = cols - rank."""
        pivots, rows = self._rref()
        pivot_set = set(pivots)
        vectors = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = {free: self.field.one()}
            for col, row in zip(pivots, rows):
                v = row.get(free)
                if v:
                    vec[col] = -v
            vectors.append(vec)
        return Subspace(self.cols, vectors, self.field)

    def column_space(self) -> Subspace:
        """Image of the matrix as a subspace of k^rows."""
        return Subspace(self.rows, self.column_dicts(), self.field)

    def apply(self, vec):
        """Matrix-vector product on sparse dict vectors."""
        out = {}
        for j, x in vec.items():
            if not x:
                continue
            for (i, jj), v in self._columns_of(j):
                nv = out.get(i)
                nv = v * x if nv is None else nv + v * x
                if nv:
                    out[i] = nv
                else:
                    del out[i]
        return out

    def _columns_of(self, j):
        cache = getattr(self, "_col_cache", None)
        if cache is None:
            cache = [[] for _ in range(self.cols)]
            for (i, jj), v in self.entries.items():
                cache[jj].append(((i, jj), v))
            self._col_cache = cache
        return cache[j]

    def solve(self, b):
        """Some x with M x = b (free variables zero), or None if inconsistent."""
        aug = self.row_dicts()
        bcol = self.cols
        for i, v in b.items():
            if v:
                aug[i][bcol] = v
        pivots, rows = _rref(aug, self.cols + 1)
        x = {}
        for col, row in zip(pivots, rows):
            if col == bcol:
                return None
            v = row.get(bcol)
            if v:
                x[col] = v
        return x

    def transpose(self):
        return SparseMatrix(
            self.cols,
            self.rows,
            {(j, i): v for (i, j), v in self.entries.items()},
            self.field,
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def coset_basis(inner: Subspace, outer: Subspace) -> list:
    """Vectors of outer completing a basis of inner to a basis of outer.

    Deterministic: walks outer's canonical basis in order and greedily keeps
    the vectors that are independent of inner plus everything kept so far.
    """
    if inner.ambient != outer.ambient:
        raise NotContainedError("ambient dimensions differ")
    if not outer.contains_subspace(inner):
        raise NotContainedError("inner subspace is not contained in outer")
    pivots = list(inner.pivots)
    rows = [dict(r) for r in inner.basis]
    chosen = []
    for vec in outer.basis:
        residue = _reduce_vector(vec, pivots, rows)
        if residue:
            lead = min(residue)
            inv = residue[lead] ** 0 / residue[lead]
            pivots.append(lead)
            rows.append({c: v * inv for c, v in residue.items()})
            chosen.append(dict(vec))
    return chosen


def stack_rank(subspace: Subspace, vectors, field) -> int:
    """Rank of subspace basis stacked with extra vectors."""
    rows = [dict(r) for r in subspace.basis] + [dict(v) for v in vectors]
    pivots, _ = _rref(rows, subspace.ambient)
    return len(pivots)
