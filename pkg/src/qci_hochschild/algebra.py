"""The algebra A = k<X,Y>/(X^a, XY - qYX, Y^a) and its enveloping algebra.

Elements are kept in the normal form y^u x^v (0 <= u, v < a), with the
commutation x*y = q*(y*x) applied during multiplication.  Tensors m1 (x) m2
live in A (x) A^op: left components multiply in A, right components in the
opposite order.  A acts as a left module over the enveloping algebra by
(m1 (x) m2) . m = m1 * m * m2.

All element values are immutable once built; operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass


class MixedContextError(ValueError):
    """Operands belong to different algebras or scalar backends."""


class ConventionError(RuntimeError):
    """No compatibility identity between the trace form and the twist holds."""


class QuantumCompleteIntersection:
    """Context object: order a, ground field, deformation parameter q.

    q defaults to the field's distinguished primitive a-th root of unity but
    may be overridden with any nonzero scalar (the resolution differentials
    make sense for arbitrary q; the cohomology statements need a primitive
    root).
    """

    def __init__(self, a: int, field, q=None):
        if a < 2:
            raise ValueError("a must be at least 2")
        self.a = a
        self.field = field
        self.q = field.root if q is None else q
        if not self.q:
            raise ValueError("q must be nonzero")
        self.dim = a * a
        one = field.one()
        self.is_root_of_unity = self.q ** a == one
        if self.is_root_of_unity:
            table = [one]
            for _ in range(a - 1):
                table.append(table[-1] * self.q)
            self._qpow = table
        else:
            self._qpow = None
        self._cache = {}

    # -- scalars ------------------------------------------------------------

    def q_power(self, s: int):
        if self._qpow is not None:
            return self._qpow[s % self.a]
        return self.q ** s

    # -- element constructors -------------------------------------------------

    def element(self, terms) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {(0, 0): self.field.one()})

    def monomial(self, u: int, v: int, coeff=None) -> AlgebraElement:
        if not (0 <= u < self.a and 0 <= v < self.a):
            raise ValueError("exponents out of range")
        c = self.field.one() if coeff is None else coeff
        return AlgebraElement(self, {(u, v): c})

    def x(self) -> AlgebraElement:
        return self.monomial(0, 1)

    def y(self) -> AlgebraElement:
        return self.monomial(1, 0)

    def xpow(self, k: int) -> AlgebraElement:
        return self.one() if k == 0 else self.monomial(0, k)

    def ypow(self, k: int) -> AlgebraElement:
        return self.one() if k == 0 else self.monomial(k, 0)

    def env(self, terms) -> EnvElement:
        return EnvElement(self, terms)

    def env_zero(self) -> EnvElement:
        return EnvElement(self, {})

    def env_one(self) -> EnvElement:
        return EnvElement(self, {((0, 0), (0, 0)): self.field.one()})

    def env_tensor(self, m1, m2, coeff=None) -> EnvElement:
        c = self.field.one() if coeff is None else coeff
        return EnvElement(self, {(m1, m2): c})

    # -- monomial arithmetic --------------------------------------------------

    def mono_mul(self, m1, m2):
        """(scalar, monomial) for y^u1 x^v1 * y^u2 x^v2, or None when it dies."""
        u1, v1 = m1
        u2, v2 = m2
        if u1 + u2 >= self.a or v1 + v2 >= self.a:
            return None
        return (self.q_power(v1 * u2), (u1 + u2, v1 + v2))

    def env_mono_mul(self, t1, t2):
        """Product of basis tensors in A (x) A^op, or None."""
        left = self.mono_mul(t1[0], t2[0])
        if left is None:
            return None
        right = self.mono_mul(t2[1], t1[1])  # opposite order on the right leg
        if right is None:
            return None
        return (left[0] * right[0], (left[1], right[1]))

    def act_mono(self, tensor, m):
        """(scalar, monomial) for (m1 (x) m2) . m = m1 * m * m2, or None."""
        first = self.mono_mul(tensor[0], m)
        if first is None:
            return None
        second = self.mono_mul(first[1], tensor[1])
        if second is None:
            return None
        return (first[0] * second[0], second[1])

    # -- identity and bookkeeping ----------------------------------------------

    def same_context(self, other) -> bool:
        return (
            self.a == other.a and self.field == other.field and self.q == other.q
        )

    def mono_index(self, m) -> int:
        return m[0] * self.a + m[1]

    def mono_from_index(self, i):
        return divmod(i, self.a)

    def monomials(self):
        for u in range(self.a):
            for v in range(self.a):
                yield (u, v)

    def env_index(self, t) -> int:
        return self.mono_index(t[0]) * self.dim + self.mono_index(t[1])

    def env_from_index(self, i):
        hi, lo = divmod(i, self.dim)
        return (self.mono_from_index(hi), self.mono_from_index(lo))

    def describe(self) -> str:
        return f"a={self.a}, {self.field.describe()}"

    def __repr__(self):
        return f"QuantumCompleteIntersection({self.describe()})"


def _require_same(lhs, rhs):
    if lhs.algebra is not rhs.algebra and not lhs.algebra.same_context(rhs.algebra):
        raise MixedContextError("operands live in different algebras")


class AlgebraElement:
    """Finite linear combination of normal-form monomials y^u x^v."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    def __add__(self, other):
        _require_same(self, other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            nc = terms.get(m)
            nc = c if nc is None else nc + c
            if nc:
                terms[m] = nc
            else:
                del terms[m]
        return AlgebraElement(self.algebra, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _require_same(self, other)
        A = self.algebra
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                hit = A.mono_mul(m1, m2)
                if hit is None:
                    continue
                scale, mono = hit
                c = c1 * c2 * scale
                nc = terms.get(mono)
                nc = c if nc is None else nc + c
                if nc:
                    terms[mono] = nc
                else:
                    del terms[mono]
        return AlgebraElement(A, terms)

    def scale(self, scalar):
        if not scalar:
            return AlgebraElement(self.algebra, {})
        return AlgebraElement(
            self.algebra, {m: c * scalar for m, c in self.terms.items()}
        )

    def coefficient(self, u, v):
        c = self.terms.get((u, v))
        return self.algebra.field.zero() if c is None else c

    def in_radical(self) -> bool:
        """True when there is no constant term; A is local, so this is rad(A)."""
        return (0, 0) not in self.terms

    def is_scalar(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def to_vector(self):
        A = self.algebra
        return {A.mono_index(m): c for m, c in self.terms.items()}

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"<{element_to_text(self)}>"


class EnvElement:
    """Finite linear combination of basis tensors in A (x) A^op."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {t: c for t, c in terms.items() if c}

    def __add__(self, other):
        _require_same(self, other)
        terms = dict(self.terms)
        for t, c in other.terms.items():
            nc = terms.get(t)
            nc = c if nc is None else nc + c
            if nc:
                terms[t] = nc
            else:
                del terms[t]
        return EnvElement(self.algebra, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return EnvElement(self.algebra, {t: -c for t, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        _require_same(self, other)
        A = self.algebra
        terms = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                hit = A.env_mono_mul(t1, t2)
                if hit is None:
                    continue
                scale, tensor = hit
                c = c1 * c2 * scale
                nc = terms.get(tensor)
                nc = c if nc is None else nc + c
                if nc:
                    terms[tensor] = nc
                else:
                    del terms[tensor]
        return EnvElement(A, terms)

    def scale(self, scalar):
        if not scalar:
            return EnvElement(self.algebra, {})
        return EnvElement(self.algebra, {t: c * scalar for t, c in self.terms.items()})

    def act(self, element: AlgebraElement) -> AlgebraElement:
        """Bimodule action on A: (m1 (x) m2) . m = m1 * m * m2, extended linearly."""
        _require_same(self, element)
        A = self.algebra
        terms = {}
        for tensor, c1 in self.terms.items():
            for m, c2 in element.terms.items():
                hit = A.act_mono(tensor, m)
                if hit is None:
                    continue
                scale, mono = hit
                c = c1 * c2 * scale
                nc = terms.get(mono)
                nc = c if nc is None else nc + c
                if nc:
                    terms[mono] = nc
                else:
                    del terms[mono]
        return AlgebraElement(A, terms)

    def in_radical(self) -> bool:
        """No term is the unit tensor 1 (x) 1."""
        return ((0, 0), (0, 0)) not in self.terms

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"<{env_to_text(self)}>"


# ---------------------------------------------------------------------------
# centre, radical, Frobenius structure


def center_basis(A: QuantumCompleteIntersection) -> list:
    """Canonical basis of the centre, by solving zg = gz for g in {x, y}."""
    from .linalg import SparseMatrix

    a2 = A.dim
    entries = {}
    for block, gen in enumerate((A.x(), A.y())):
        for m in A.monomials():
            col = A.mono_index(m)
            z = A.monomial(*m)
            diff = z * gen - gen * z
            for mono, c in diff.terms.items():
                entries[(block * a2 + A.mono_index(mono), col)] = c
    matrix = SparseMatrix(2 * a2, a2, entries, A.field)
    kernel = matrix.kernel_basis()
    out = []
    for vec in kernel.basis:
        out.append(A.element({A.mono_from_index(i): c for i, c in vec.items()}))
    return out


def radical_membership(element: AlgebraElement) -> bool:
    return element.in_radical()


@dataclass
class FrobeniusData:
    """Twist images, trace form and the compatibility convention that held."""

    nu_x: AlgebraElement
    nu_y: AlgebraElement
    first_identity_holds: bool   # eps(ab) == eps(b nu(a))
    second_identity_holds: bool  # eps(ab) == eps(nu(b) a)

    @property
    def convention(self) -> str:
        return "first" if self.first_identity_holds else "second"

    def trace(self, element: AlgebraElement):
        """The form the conventions are stated for: the top socle coefficient."""
        A = element.algebra
        return element.coefficient(A.a - 1, A.a - 1)

    def twist(self, element: AlgebraElement) -> AlgebraElement:
        return nakayama_twist(element.algebra, element)


def nakayama_twist(A: QuantumCompleteIntersection, element: AlgebraElement):
    """Apply the graded twist x -> q^(1-a) x, y -> q^(a-1) y."""
    a = A.a
    terms = {}
    for (u, v), c in element.terms.items():
        terms[(u, v)] = c * A.q_power((a - 1) * (u - v))
    return AlgebraElement(A, terms)


def trace_form(A: QuantumCompleteIntersection, element: AlgebraElement):
    """Coefficient of the socle monomial y^(a-1) x^(a-1)."""
    return element.coefficient(A.a - 1, A.a - 1)


def frobenius_verify(A: QuantumCompleteIntersection) -> FrobeniusData:
    """Build the twist, confirm it is an automorphism, and pin the convention.

    Checks both candidate compatibilities between the trace form and the
    twist on every pair of basis monomials; raises ConventionError when
    neither holds uniformly.
    """
    monos = [A.monomial(*m) for m in A.monomials()]
    for m1 in monos:
        for m2 in monos:
            if nakayama_twist(A, m1 * m2) != nakayama_twist(A, m1) * nakayama_twist(A, m2):
                raise ConventionError("twist failed to respect the product")
    first = True
    second = True
    for m1 in monos:
        for m2 in monos:
            lhs = trace_form(A, m1 * m2)
            if lhs != trace_form(A, m2 * nakayama_twist(A, m1)):
                first = False
            if lhs != trace_form(A, nakayama_twist(A, m2) * m1):
                second = False
        if not (first or second):
            break
    if not (first or second):
        raise ConventionError("no trace-form compatibility identity holds")
    return FrobeniusData(
        nu_x=nakayama_twist(A, A.x()),
        nu_y=nakayama_twist(A, A.y()),
        first_identity_holds=first,
        second_identity_holds=second,
    )


# ---------------------------------------------------------------------------
# plain-text round-trip format


def _scalar_text(field, c) -> str:
    text = field.scalar_to_text(c)
    return f"({text})" if " + " in text else text


def _split_top_level(text: str, sep: str):
    parts = []
    depth = 0
    current = []
    i = 0
    while i < len(text):
        if depth == 0 and text.startswith(sep, i):
            parts.append("".join(current))
            current = []
            i += len(sep)
            continue
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        current.append(ch)
        i += 1
    parts.append("".join(current))
    return parts


def _parse_scalar(field, text: str):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return field.scalar_from_text(text)


def element_to_text(element: AlgebraElement) -> str:
    A = element.algebra
    parts = []
    for (u, v) in sorted(element.terms):
        c = element.terms[(u, v)]
        parts.append(f"{_scalar_text(A.field, c)} * y^{u} x^{v}")
    return " + ".join(parts) if parts else "0"


def element_from_text(A: QuantumCompleteIntersection, text: str) -> AlgebraElement:
    text = text.strip()
    if text == "0":
        return A.zero()
    terms = {}
    for part in _split_top_level(text, " + "):
        scalar_text, _, mono_text = part.rpartition(" * ")
        ypart, xpart = mono_text.split()
        u = int(ypart[2:])
        v = int(xpart[2:])
        terms[(u, v)] = _parse_scalar(A.field, scalar_text)
    return A.element(terms)


def env_to_text(element: EnvElement) -> str:
    A = element.algebra
    parts = []
    for ((u1, v1), (u2, v2)) in sorted(element.terms):
        c = element.terms[((u1, v1), (u2, v2))]
        parts.append(
            f"{_scalar_text(A.field, c)} * y^{u1} x^{v1} (x) y^{u2} x^{v2}"
        )
    return " + ".join(parts) if parts else "0"


def env_from_text(A: QuantumCompleteIntersection, text: str) -> EnvElement:
    text = text.strip()
    if text == "0":
        return A.env_zero()
    terms = {}
    for part in _split_top_level(text, " + "):
        scalar_text, _, mono_text = part.rpartition(" * ")
        left, _, right = mono_text.partition(" (x) ")
        y1, x1 = left.split()
        y2, x2 = right.split()
        tensor = ((int(y1[2:]), int(x1[2:])), (int(y2[2:]), int(x2[2:])))
        terms[tensor] = _parse_scalar(A.field, scalar_text)
    return A.env(terms)
