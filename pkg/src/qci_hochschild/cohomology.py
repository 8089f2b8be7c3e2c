"""Cohomology of A by two independent routes.

Route one applies Hom(-, A) to the minimal resolution: a degree-n cochain is
the list of its values on the generators f^n_i, so Hom(P_n, A) = A^(n+1) and
the transpose differentials become k-linear matrices assembled from the
bimodule action.

Route two computes the homology of the twisted chain complex obtained by
tensoring the resolution with A twisted by the graded automorphism on one
side; its differentials collapse to the explicit monomial rules implemented
in delta_matrix.  Both routes must produce the same dimensions, which is one
of the package's standing cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, QuantumCompleteIntersection, element_to_text
from .linalg import SparseMatrix, Subspace, coset_basis, stack_rank
from .resolution import differential, preferred_variant
from .scalars import k_sum


class BasisError(RuntimeError):
    """A claimed cohomology basis failed its verification."""


class NotCocycleError(ValueError):
    """Cochain is not killed by the next transpose differential."""


class Cochain:
    """Map P_n -> A stored by its values (p_0, ..., p_n) on the generators."""

    __slots__ = ("algebra", "degree", "values")

    def __init__(self, algebra, degree, values):
        if len(values) != degree + 1:
            raise ValueError("a degree-n cochain carries n+1 values")
        self.algebra = algebra
        self.degree = degree
        self.values = list(values)

    def to_vector(self):
        A = self.algebra
        vec = {}
        for i, value in enumerate(self.values):
            for m, c in value.terms.items():
                vec[i * A.dim + A.mono_index(m)] = c
        return vec

    @classmethod
    def from_vector(cls, algebra, degree, vec):
        values = [dict() for _ in range(degree + 1)]
        for idx, c in vec.items():
            if not c:
                continue
            i, m = divmod(idx, algebra.dim)
            values[i][algebra.mono_from_index(m)] = c
        return cls(
            algebra, degree, [AlgebraElement(algebra, terms) for terms in values]
        )

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.values == other.values
        )

    def __repr__(self):
        inside = ", ".join(element_to_text(v) for v in self.values)
        return f"Cochain(deg={self.degree}; {inside})"


@dataclass
class CohomologyClass:
    """A cocycle together with its coordinates in the canonical coset basis."""

    degree: int
    representative: Cochain
    coordinates: list
    label: str = ""

    def __repr__(self):
        return f"CohomologyClass({self.label or 'deg ' + str(self.degree)})"


def hom_differential(A: QuantumCompleteIntersection, n: int) -> SparseMatrix:
    """Matrix of composing with d_n, from A^n to A^(n+1), on monomial bases."""
    if n < 1:
        raise ValueError("transpose differentials start in degree 1")
    key = ("homdiff", n)
    cached = A._cache.get(key)
    if cached is not None:
        return cached
    d = differential(A, n, preferred_variant(A))
    a2 = A.dim
    entries = {}
    for j in range(n):
        for m in A.monomials():
            col = j * a2 + A.mono_index(m)
            for i in (j, j + 1):
                env = d.entry(j, i)
                if env is None:
                    continue
                for tensor, c in env.terms.items():
                    hit = A.act_mono(tensor, m)
                    if hit is None:
                        continue
                    scale, mono = hit
                    row = i * a2 + A.mono_index(mono)
                    value = c * scale
                    prev = entries.get((row, col))
                    value = value if prev is None else prev + value
                    if value:
                        entries[(row, col)] = value
                    else:
                        del entries[(row, col)]
    matrix = SparseMatrix((n + 1) * a2, n * a2, entries, A.field)
    A._cache[key] = matrix
    return matrix


def _hom_rank(A, n) -> int:
    key = ("homrank", n)
    cached = A._cache.get(key)
    if cached is None:
        cached = hom_differential(A, n).rank()
        A._cache[key] = cached
    return cached


def hh_dimension_ext(A: QuantumCompleteIntersection, n: int) -> int:
    """dim of degree-n cohomology via the Hom route."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    kernel_dim = (n + 1) * A.dim - _hom_rank(A, n + 1)
    image_dim = 0 if n == 0 else _hom_rank(A, n)
    return kernel_dim - image_dim


@dataclass
class DeltaMatrix:
    """k-linear matrix of the twisted-complex differential in one degree."""

    degree: int
    matrix: SparseMatrix


def delta_matrix(A: QuantumCompleteIntersection, n: int) -> DeltaMatrix:
    """Differential of the twisted chain complex on the basis y^u x^v e^n_i.

    Monomials whose exponents overflow a vanish; generator indices outside
    0..n-1 on the target side are dropped.  The scalar weights are geometric
    sums in q and differences of q powers, read off from the one-sided twist.
    """
    if n < 1:
        raise ValueError("delta differentials start in degree 1")
    key = ("delta", n)
    cached = A._cache.get(key)
    if cached is not None:
        return cached
    a = A.a
    a2 = A.dim
    qp = A.q_power
    one = A.field.one()

    def K(m):
        return k_sum(a, qp(m))

    entries = {}

    def put(row_i, mono, col, scalar):
        if not scalar:
            return
        row = row_i * a2 + A.mono_index(mono)
        prev = entries.get((row, col))
        scalar = scalar if prev is None else prev + scalar
        if scalar:
            entries[(row, col)] = scalar
        else:
            del entries[(row, col)]

    even = n % 2 == 0
    for i in range(n + 1):
        for u in range(a):
            for v in range(a):
                col = i * a2 + A.mono_index((u, v))
                if even:
                    if i % 2 == 0:
                        if i <= n - 1 and u == 0:
                            put(i, (a - 1, v), col, qp(1) * K(v + 1))
                        if i >= 1 and v == 0:
                            put(i - 1, (u, a - 1), col, K(u + 1))
                    else:
                        if i <= n - 1 and u + 1 < a:
                            put(i, (u + 1, v), col, qp(v + 1) - qp(a - 1))
                        if i >= 1 and v + 1 < a:
                            put(i - 1, (u, v + 1), col, qp(u + 2) - one)
                else:
                    if i % 2 == 0:
                        if i <= n - 1 and u + 1 < a:
                            put(i, (u + 1, v), col, qp(a - 1) - qp(v))
                        if i >= 1 and v == 0:
                            put(i - 1, (u, a - 1), col, K(u + 2))
                    else:
                        if i <= n - 1 and u == 0:
                            put(i, (a - 1, v), col, qp(1) * K(v + 2))
                        if i >= 1 and v + 1 < a:
                            put(i - 1, (u, v + 1), col, qp(u + 1) - one)
    dm = DeltaMatrix(n, SparseMatrix(n * a2, (n + 1) * a2, entries, A.field))
    A._cache[key] = dm
    return dm


def _delta_rank(A, n) -> int:
    key = ("deltarank", n)
    cached = A._cache.get(key)
    if cached is None:
        cached = delta_matrix(A, n).matrix.rank()
        A._cache[key] = cached
    return cached


def hh_dimension_tor(A: QuantumCompleteIntersection, n: int) -> int:
    """dim of degree-n cohomology via the twisted-complex route."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        kernel_dim = A.dim
    else:
        kernel_dim = (n + 1) * A.dim - _delta_rank(A, n)
    return kernel_dim - _delta_rank(A, n + 1)


# ---------------------------------------------------------------------------
# named cocycle bases in even degrees


def _kernel_subspace(A, degree) -> Subspace:
    key = ("cocycles", degree)
    cached = A._cache.get(key)
    if cached is None:
        cached = hom_differential(A, degree + 1).kernel_basis()
        A._cache[key] = cached
    return cached


def _image_subspace(A, degree) -> Subspace:
    """Column space of the transpose differential into degree `degree`."""
    key = ("coboundaries", degree)
    cached = A._cache.get(key)
    if cached is None:
        if degree == 0:
            cached = Subspace(A.dim, [], A.field)
        else:
            cached = hom_differential(A, degree).column_space()
        A._cache[key] = cached
    return cached


def _standard_values(A, degree):
    """(label, generator index, value) triples for the even-degree basis."""
    a = A.a
    out = []
    if a == 2:
        for r in range(degree + 1):
            out.append((f"xi_{r}", r, A.one()))
        for r in range(degree + 1):
            out.append((f"eta_{r}", r, A.x() * A.y()))
    else:
        for j in range(degree + 1):
            out.append((f"zeta_{j}", j, A.one()))
        for j in range(0, degree + 1, 2):
            out.append((f"eta+_{j}", j, A.xpow(a - 1) * A.ypow(a - 1)))
        for j in range(1, degree + 1, 2):
            out.append((f"eta-_{j}", j, A.x() * A.y()))
    return out


def standard_basis(A: QuantumCompleteIntersection, degree: int) -> list:
    """The 2*degree + 2 named classes in an even degree, fully verified.

    Every candidate is checked to be a cocycle, and the family is checked to
    be independent modulo coboundaries; BasisError carries the first witness.
    Returns CohomologyClass objects with coordinates over the canonical coset
    basis supplied by the linear algebra layer.
    """
    if degree % 2 != 0 or degree < 0:
        raise ValueError("named bases exist in even degrees")
    key = ("stdbasis", degree)
    cached = A._cache.get(key)
    if cached is not None:
        return cached

    hom_next = hom_differential(A, degree + 1)
    image = _image_subspace(A, degree)
    cocycles = _kernel_subspace(A, degree)

    candidates = []
    for label, index, value in _standard_values(A, degree):
        values = [A.zero()] * (degree + 1)
        values[index] = value
        cochain = Cochain(A, degree, values)
        vec = cochain.to_vector()
        if hom_next.apply(vec):
            raise BasisError(f"{label} in degree {degree} is not a cocycle")
        candidates.append((label, cochain, vec))

    expected = 2 * degree + 2
    rank = stack_rank(image, [vec for _, _, vec in candidates], A.field)
    if rank != image.dim + expected:
        raise BasisError(
            f"degree {degree}: classes span {rank - image.dim} directions "
            f"modulo coboundaries, expected {expected}"
        )

    canonical = coset_basis(image, cocycles)
    columns = {}
    ncols = len(canonical) + image.dim
    for jcol, vec in enumerate(canonical + list(image.basis)):
        for row, c in vec.items():
            columns[(row, jcol)] = c
    solver = SparseMatrix((degree + 1) * A.dim, ncols, columns, A.field)

    classes = []
    for label, cochain, vec in candidates:
        solution = solver.solve(vec)
        if solution is None:
            raise BasisError(f"{label} could not be written in the coset basis")
        coords = [
            solution.get(j, A.field.zero()) for j in range(len(canonical))
        ]
        classes.append(
            CohomologyClass(
                degree=degree,
                representative=cochain,
                coordinates=coords,
                label=label,
            )
        )
    A._cache[key] = classes
    return classes


@dataclass
class ExpressedCocycle:
    """Coordinates over the named basis plus an explicit coboundary witness."""

    coordinates: list
    certificate: Cochain | None

    def is_zero_class(self) -> bool:
        return not any(self.coordinates)


def express(A: QuantumCompleteIntersection, cochain: Cochain) -> ExpressedCocycle:
    """Write an even-degree cocycle over the named basis, with certificate.

    The certificate is a cochain one degree down whose transpose differential
    accounts for the part of the input not visible in the basis coordinates;
    free variables are set to zero so the output is deterministic.
    """
    degree = cochain.degree
    if degree % 2 != 0:
        raise ValueError("only even degrees carry a named basis")
    vec = cochain.to_vector()
    if hom_differential(A, degree + 1).apply(vec):
        raise NotCocycleError(f"cochain of degree {degree} is not a cocycle")
    basis = standard_basis(A, degree)
    nbasis = len(basis)
    entries = {}
    for jcol, cls in enumerate(basis):
        for row, c in cls.representative.to_vector().items():
            entries[(row, jcol)] = c
    ncols = nbasis
    if degree >= 2:
        hom_prev = hom_differential(A, degree)
        for (row, col), c in hom_prev.entries.items():
            entries[(row, nbasis + col)] = c
        ncols += hom_prev.cols
    solver = SparseMatrix((degree + 1) * A.dim, ncols, entries, A.field)
    solution = solver.solve(vec)
    if solution is None:
        raise NotCocycleError("cocycle failed to decompose over basis + coboundaries")
    coords = [solution.get(j, A.field.zero()) for j in range(nbasis)]
    certificate = None
    if degree >= 2:
        cert_vec = {
            col - nbasis: c for col, c in solution.items() if col >= nbasis and c
        }
        certificate = Cochain.from_vector(A, degree - 1, cert_vec)
    return ExpressedCocycle(coordinates=coords, certificate=certificate)


# ---------------------------------------------------------------------------
# dimension tables


@dataclass
class DimensionTable:
    a: int
    backend: str
    rows: list

    def consistent(self) -> bool:
        out = True
        for row in self.rows:
            dims = [row[k] for k in ("ext", "tor", "bar") if k in row]
            out = out and all(d == dims[0] for d in dims)
        return out

    def to_json_obj(self):
        return {
            "schema": "qci-hochschild/1",
            "a": self.a,
            "backend": self.backend,
            "rows": self.rows,
        }

    def to_csv_text(self) -> str:
        keys = ["n"] + [k for k in ("ext", "tor", "bar") if k in self.rows[0]]
        lines = [",".join(keys)]
        for row in self.rows:
            lines.append(",".join(str(row[k]) for k in keys))
        return "\n".join(lines) + "\n"


def dimension_table(
    A: QuantumCompleteIntersection, max_degree: int, routes=("ext", "tor")
) -> DimensionTable:
    rows = []
    for n in range(max_degree + 1):
        row = {"n": n}
        if "ext" in routes:
            row["ext"] = hh_dimension_ext(A, n)
        if "tor" in routes:
            row["tor"] = hh_dimension_tor(A, n)
        rows.append(row)
    return DimensionTable(a=A.a, backend=A.field.describe(), rows=rows)
