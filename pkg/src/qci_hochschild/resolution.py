"""Minimal free bimodule resolution of A over its enveloping algebra.

Degree n is free of rank n+1 on generators f^n_0 ... f^n_n.  A differential
is stored column by column: column i holds the coefficients of d(f^n_i) on
f^(n-1)_i (the diagonal band) and f^(n-1)_(i-1) (the sub band); out-of-range
generator indices are simply dropped.

Three variants are available: the general closed form valid for any nonzero
q, and the two rewritten forms (one for a = 2 with its sign pattern, one for
a >= 3 with arguments reduced to 0 or 1) that apply when q has order a.  The
variants agree entry-wise, and verify_resolution checks this along with
d . d = 0, minimality and exactness.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .algebra import EnvElement, QuantumCompleteIntersection
from .linalg import SparseMatrix


class OrderError(ValueError):
    """Operation needs a different nilpotency order a."""


class VariantError(ValueError):
    """Differential variant incompatible with the algebra order."""


GENERAL = "general"
SIMPLIFIED_A2 = "simplified-a2"
SIMPLIFIED_A3 = "simplified-a3plus"

TAU_X = "tau_x"
TAU_Y = "tau_y"
GAMMA_X = "gamma_x"
GAMMA_Y = "gamma_y"


def structure_element(A: QuantumCompleteIntersection, kind: str, s: int) -> EnvElement:
    """The four tensor families feeding every differential.

    tau_x(s) = q^s (1 (x) x) - (x (x) 1)
    tau_y(s) = (1 (x) y) - q^s (y (x) 1)
    gamma_x(s) = sum_j q^(js) (x^(a-1-j) (x) x^j)
    gamma_y(s) = sum_j q^(js) (y^j (x) y^(a-1-j))
    """
    a = A.a
    one = A.field.one()
    if kind == TAU_X:
        return A.env({((0, 0), (0, 1)): A.q_power(s), ((0, 1), (0, 0)): -one})
    if kind == TAU_Y:
        return A.env({((0, 0), (1, 0)): one, ((1, 0), (0, 0)): -A.q_power(s)})
    if kind == GAMMA_X:
        terms = {}
        for j in range(a):
            terms[((0, a - 1 - j), (0, j))] = A.q_power(j * s)
        return A.env(terms)
    if kind == GAMMA_Y:
        terms = {}
        for j in range(a):
            terms[((j, 0), (a - 1 - j, 0))] = A.q_power(j * s)
        return A.env(terms)
    raise ValueError(f"unknown structure element kind {kind!r}")


def beta_element(A: QuantumCompleteIntersection, axis: str, s: int) -> EnvElement:
    """Weighted halves of gamma, defined for a >= 3:

    beta_x(s) = sum_i c_i q^(si) (x^(a-2-i) (x) x^i)
    beta_y(s) = sum_i c_i q^(si) (y^i (x) y^(a-2-i))
    """
    from .scalars import c_sequence

    a = A.a
    if a < 3:
        raise OrderError("beta elements need a >= 3; for a = 2 use the alpha/beta pair")
    c = c_sequence(a, A.q)
    terms = {}
    for i in range(a - 1):
        coeff = c[i] * A.q_power(s * i)
        if axis == "x":
            terms[((0, a - 2 - i), (0, i))] = coeff
        elif axis == "y":
            terms[((i, 0), (a - 2 - i, 0))] = coeff
        else:
            raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return A.env(terms)


def a2_band_elements(A: QuantumCompleteIntersection):
    """The a = 2 rewrite: beta_y, beta_x, alpha_y, alpha_x."""
    if A.a != 2:
        raise OrderError("the alpha/beta rewrite is specific to a = 2")
    one = A.field.one()
    beta_y = A.env({((0, 0), (1, 0)): one, ((1, 0), (0, 0)): one})
    beta_x = A.env({((0, 0), (0, 1)): one, ((0, 1), (0, 0)): one})
    alpha_y = A.env({((0, 0), (1, 0)): one, ((1, 0), (0, 0)): -one})
    alpha_x = A.env({((0, 0), (0, 1)): one, ((0, 1), (0, 0)): -one})
    return beta_y, beta_x, alpha_y, alpha_x


class FreeModuleElement:
    """Element of the rank-(n+1) free module: one tensor coefficient per generator."""

    __slots__ = ("algebra", "degree", "coords")

    def __init__(self, algebra, degree, coords):
        if len(coords) != degree + 1:
            raise ValueError("a degree-n element carries n+1 coordinates")
        self.algebra = algebra
        self.degree = degree
        self.coords = list(coords)

    @classmethod
    def generator(cls, algebra, degree, index):
        coords = [algebra.env_zero() for _ in range(degree + 1)]
        coords[index] = algebra.env_one()
        return cls(algebra, degree, coords)

    def __add__(self, other):
        return FreeModuleElement(
            self.algebra,
            self.degree,
            [a + b for a, b in zip(self.coords, other.coords)],
        )

    def __eq__(self, other):
        return (
            isinstance(other, FreeModuleElement)
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def is_zero(self) -> bool:
        return not any(self.coords)


class DifferentialMatrix:
    """Columns of d_n: P_n -> P_(n-1) over the enveloping algebra."""

    def __init__(self, algebra, degree, variant, entries):
        self.algebra = algebra
        self.degree = degree
        self.variant = variant
        self.entries = {k: v for k, v in entries.items() if v}

    def entry(self, j, i):
        return self.entries.get((j, i))

    def column(self, i):
        out = []
        for j in (i - 1, i):
            env = self.entries.get((j, i))
            if env is not None:
                out.append((j, env))
        return out

    def two_band_ok(self) -> bool:
        return all(j in (i - 1, i) for (j, i) in self.entries)

    def is_minimal(self) -> bool:
        return all(env.in_radical() for env in self.entries.values())

    def apply(self, element: FreeModuleElement) -> FreeModuleElement:
        """Image of a free-module element one degree down."""
        n = self.degree
        if element.degree != n:
            raise ValueError(f"element of degree {element.degree} fed to d_{n}")
        out = [self.algebra.env_zero() for _ in range(n)]
        for i, coeff in enumerate(element.coords):
            if not coeff:
                continue
            for j, env in self.column(i):
                out[j] = out[j] + coeff * env
        return FreeModuleElement(self.algebra, n - 1, out)

    def as_linear_matrix(self) -> SparseMatrix:
        """The same map as a k-linear matrix of size (n a^4) x ((n+1) a^4)."""
        A = self.algebra
        dim = A.dim * A.dim
        entries = {}
        for i in range(self.degree + 1):
            cols = self.column(i)
            for w_index in range(dim):
                w = A.env_from_index(w_index)
                col = i * dim + w_index
                for j, env in cols:
                    for tensor, c in env.terms.items():
                        hit = A.env_mono_mul(w, tensor)
                        if hit is None:
                            continue
                        scale, target = hit
                        row = j * dim + A.env_index(target)
                        value = c * scale
                        prev = entries.get((row, col))
                        value = value if prev is None else prev + value
                        if value:
                            entries[(row, col)] = value
                        else:
                            del entries[(row, col)]
        return SparseMatrix(
            self.degree * dim, (self.degree + 1) * dim, entries, A.field
        )

    def __repr__(self):
        return f"DifferentialMatrix(n={self.degree}, variant={self.variant})"


def _half(n: int) -> int:
    q, r = divmod(n, 2)
    if r:
        raise ArithmeticError(f"structure argument {n}/2 is not an integer")
    return q


def _general_column(A, n, i):
    a = A.a
    if n % 2 == 0:
        t = n // 2
        if i % 2 == 0:
            diag = structure_element(A, GAMMA_Y, _half(a * i))
            sub = structure_element(A, GAMMA_X, _half(2 * a * t - a * i))
        else:
            diag = -structure_element(A, TAU_Y, _half(a * i - a + 2))
            sub = structure_element(A, TAU_X, _half(2 * a * t - a * i - a + 2))
    else:
        t = (n - 1) // 2
        if i % 2 == 0:
            diag = structure_element(A, TAU_Y, _half(a * i))
            sub = structure_element(A, GAMMA_X, _half(2 * a * t - a * i + 2))
        else:
            diag = -structure_element(A, GAMMA_Y, _half(a * i - a + 2))
            sub = structure_element(A, TAU_X, _half(2 * a * t - a * i + a))
    return diag, sub


def _simplified_a2_column(A, n, i):
    beta_y, beta_x, alpha_y, alpha_x = a2_band_elements(A)
    sign = A.field.one() if i % 2 == 0 else -A.field.one()
    if n % 2 == 0:
        return beta_y.scale(sign), beta_x.scale(sign)
    return alpha_y.scale(sign), alpha_x.scale(-sign)


def _simplified_a3_column(A, n, i):
    if n % 2 == 0:
        if i % 2 == 0:
            return (
                structure_element(A, GAMMA_Y, 0),
                structure_element(A, GAMMA_X, 0),
            )
        return (
            -structure_element(A, TAU_Y, 1),
            structure_element(A, TAU_X, 1),
        )
    if i % 2 == 0:
        return (
            structure_element(A, TAU_Y, 0),
            structure_element(A, GAMMA_X, 1),
        )
    return (
        -structure_element(A, GAMMA_Y, 1),
        structure_element(A, TAU_X, 0),
    )


def differential(A: QuantumCompleteIntersection, n: int, variant: str = GENERAL):
    """d_n in the requested variant, cached on the algebra context."""
    if n < 1:
        raise ValueError("differentials start in degree 1")
    if variant == SIMPLIFIED_A2 and A.a != 2:
        raise VariantError("simplified-a2 requires a = 2")
    if variant == SIMPLIFIED_A3 and A.a < 3:
        raise VariantError("simplified-a3plus requires a >= 3")
    if variant not in (GENERAL, SIMPLIFIED_A2, SIMPLIFIED_A3):
        raise VariantError(f"unknown variant {variant!r}")
    key = ("diff", n, variant)
    cached = A._cache.get(key)
    if cached is not None:
        return cached
    build = {
        GENERAL: _general_column,
        SIMPLIFIED_A2: _simplified_a2_column,
        SIMPLIFIED_A3: _simplified_a3_column,
    }[variant]
    entries = {}
    for i in range(n + 1):
        diag, sub = build(A, n, i)
        if i <= n - 1 and diag:
            entries[(i, i)] = diag
        if i - 1 >= 0 and sub:
            entries[(i - 1, i)] = sub
    dm = DifferentialMatrix(A, n, variant, entries)
    A._cache[key] = dm
    return dm


def preferred_variant(A: QuantumCompleteIntersection) -> str:
    if not A.is_root_of_unity:
        return GENERAL
    return SIMPLIFIED_A2 if A.a == 2 else SIMPLIFIED_A3


class Augmentation:
    """P_0 -> A, sending e f^0_0 to e . 1."""

    def __init__(self, algebra):
        self.algebra = algebra

    def __call__(self, coefficient):
        if isinstance(coefficient, FreeModuleElement):
            coefficient = coefficient.coords[0]
        return coefficient.act(self.algebra.one())

    def as_linear_matrix(self) -> SparseMatrix:
        A = self.algebra
        dim = A.dim * A.dim
        entries = {}
        for w_index in range(dim):
            w = A.env_from_index(w_index)
            hit = A.act_mono(w, (0, 0))
            if hit is None:
                continue
            scale, mono = hit
            entries[(A.mono_index(mono), w_index)] = scale
        return SparseMatrix(A.dim, dim, entries, A.field)


def augmentation(A: QuantumCompleteIntersection) -> Augmentation:
    return Augmentation(A)


def compose(outer: DifferentialMatrix, inner: DifferentialMatrix):
    """Entries of d_(n-1) . d_n, as a dict (k, i) -> EnvElement.

    Module-map composition: the coefficient picked up in degree n multiplies
    the outer differential's coefficient from the left.
    """
    A = outer.algebra
    out = {}
    for i in range(inner.degree + 1):
        for j, e_inner in inner.column(i):
            for k, e_outer in outer.column(j):
                prod = e_inner * e_outer
                if not prod:
                    continue
                key = (k, i)
                prev = out.get(key)
                total = prod if prev is None else prev + prod
                if total:
                    out[key] = total
                else:
                    del out[key]
    return out


@dataclass
class ResolutionReport:
    """Outcome of the self-consistency checks, with the first witness kept."""

    algebra: str
    n_max: int
    checks: list = dataclass_field(default_factory=list)

    def record(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(name, detail) for name, ok, detail in self.checks if not ok]


def verify_resolution(
    A: QuantumCompleteIntersection,
    n_max: int,
    exactness_max: int | None = None,
    variant: str | None = None,
) -> ResolutionReport:
    """Machine verification of the resolution up to degree n_max.

    Checks, in order: the two-band shape, d . d = 0 (including the
    augmentation), minimality, entry-wise agreement of the simplified variant
    with the general one, and exactness at the k-linear level for degrees up
    to exactness_max (defaults to n_max; exactness needs the ranks of k-linear
    matrices of size about (n+1) a^4, which dominate the cost).
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if exactness_max is None:
        exactness_max = n_max
    report = ResolutionReport(algebra=A.describe(), n_max=n_max)
    variant = variant or preferred_variant(A)

    diffs = {n: differential(A, n, GENERAL) for n in range(1, n_max + 2)}

    shape_ok = all(d.two_band_ok() for d in diffs.values())
    report.record("two-band shape", shape_ok)

    mu = augmentation(A)
    mu_d1 = [mu(env) for _, env in diffs[1].column(0)] + [
        mu(env) for _, env in diffs[1].column(1)
    ]
    report.record(
        "augmentation composes to zero",
        all(not v for v in mu_d1),
        "mu . d_1 != 0" if any(mu_d1) else "",
    )

    for n in range(2, n_max + 1):
        leftover = compose(diffs[n - 1], diffs[n])
        if leftover:
            key = sorted(leftover)[0]
            report.record(
                f"d.d = 0 at degree {n}", False, f"nonzero entry at {key}"
            )
            break
    else:
        report.record(f"d.d = 0 up to degree {n_max}", True)

    minimal_ok = all(diffs[n].is_minimal() for n in range(1, n_max + 1))
    report.record("minimality (entries in the radical)", minimal_ok)

    if variant != GENERAL:
        agree = True
        witness = ""
        for n in range(1, n_max + 1):
            simp = differential(A, n, variant)
            if simp.entries != diffs[n].entries:
                agree = False
                witness = f"degree {n}"
                break
        report.record("simplified variant agrees with general form", agree, witness)

    if exactness_max >= 1:
        mu_matrix = mu.as_linear_matrix()
        mu_rank = mu_matrix.rank()
        ker_mu = A.dim * A.dim - mu_rank
        ranks = {}
        for n in range(1, min(exactness_max + 1, n_max) + 1):
            ranks[n] = diffs[n].as_linear_matrix().rank()
        report.record(
            "exactness at P_0 (im d_1 = ker mu)",
            mu_rank == A.dim and ranks[1] == ker_mu,
            f"rank mu = {mu_rank}, rank d_1 = {ranks[1]}, dim ker mu = {ker_mu}",
        )
        for n in range(1, min(exactness_max, n_max - 1) + 1):
            dim_source = (n + 1) * A.dim * A.dim
            ker = dim_source - ranks[n]
            im = ranks[n + 1]
            report.record(
                f"exactness at P_{n}",
                ker == im,
                f"dim ker d_{n} = {ker}, dim im d_{n+1} = {im}",
            )
    return report
