"""Exact ground fields carrying a primitive a-th root of unity.

Three interchangeable backends: the rationals (only orders 1 and 2), the
cyclotomic field Q(zeta_a), and a prime field F_p with p = 1 (mod a).  Field
elements support ordinary Python arithmetic (+, -, *, /, **) and are
immutable, so they are safe to share freely.  No floating point is used
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class NoRootError(ValueError):
    """The backend does not contain a primitive root of the requested order."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _poly_divexact(num, den):
    """Quotient num/den in Z[t] for monic den; raises if not exact."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dn]
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(a: int) -> tuple[int, ...]:
    """Integer coefficients of the a-th cyclotomic polynomial, low degree first.

    Computed by dividing t^a - 1 exactly by the product of all lower
    cyclotomic polynomials at divisors of a.
    """
    if a < 1:
        raise ValueError("order must be a positive integer")
    poly = [-1] + [0] * (a - 1) + [1]
    for d in range(1, a):
        if a % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


# ---------------------------------------------------------------------------
# scalar types


class CyclotomicScalar:
    """Element of Q(zeta_a), stored as a polynomial in zeta reduced mod Phi_a."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, CyclotomicScalar) and other.field == self.field:
            return other
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return CyclotomicScalar(
            self.field, [x + y for x, y in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return CyclotomicScalar(
            self.field, [x - y for x, y in zip(self.coeffs, other.coeffs)]
        )

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CyclotomicScalar(self.field, [-x for x in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return CyclotomicScalar(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero")
        return CyclotomicScalar(self.field, self.field._inverse(self.coeffs))

    def __eq__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CyclotomicScalar({self.field.order}, {self.field.scalar_to_text(self)!r})"


class PrimeFieldScalar:
    """Element of F_p, stored as an integer in [0, p)."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value % field.modulus

    def _check(self, other):
        if isinstance(other, int):
            return PrimeFieldScalar(self.field, other)
        if isinstance(other, PrimeFieldScalar) and other.field == self.field:
            return other
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return PrimeFieldScalar(self.field, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return PrimeFieldScalar(self.field, self.value - other.value)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return PrimeFieldScalar(self.field, -self.value)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return PrimeFieldScalar(self.field, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        return PrimeFieldScalar(self.field, pow(self.value, e, self.field.modulus))

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return PrimeFieldScalar(self.field, pow(self.value, -1, self.field.modulus))

    def __eq__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((self.field.modulus, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PrimeFieldScalar({self.value} mod {self.field.modulus})"


# ---------------------------------------------------------------------------
# field handles


class RationalField:
    """The rationals; primitive roots exist only for orders 1 and 2."""

    tag = "rational"

    def __init__(self, root_order: int = 2):
        if root_order not in (1, 2):
            raise NoRootError(
                f"the rationals contain no primitive root of order {root_order}"
            )
        self.root_order = root_order

    @property
    def root(self):
        return Fraction(1) if self.root_order == 1 else Fraction(-1)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def scalar_to_text(self, s) -> str:
        return str(s)

    def scalar_from_text(self, text: str):
        return Fraction(text)

    def describe(self) -> str:
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField) and other.root_order == self.root_order

    def __hash__(self):
        return hash(("rational", self.root_order))

    def __repr__(self):
        return f"RationalField(root_order={self.root_order})"


class CyclotomicField:
    """Q(zeta_a): polynomials in zeta over Q, reduced modulo Phi_a."""

    tag = "cyclotomic"

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.root_order = order
        phi = cyclotomic_polynomial(order)
        self.degree = len(phi) - 1
        self._phi = [Fraction(c) for c in phi]
        # t^(degree+k) mod Phi for k = 0 .. degree-2, used to fold products back
        self._reduction = []
        if self.degree > 1:
            current = [-c for c in self._phi[:-1]]
            self._reduction.append(list(current))
            for _ in range(self.degree - 2):
                shifted = [Fraction(0)] + current[:-1]
                top = current[-1]
                current = [s + top * r for s, r in zip(shifted, self._reduction[0])]
                self._reduction.append(list(current))

    def _mul(self, xs, ys):
        d = self.degree
        if d == 1:
            return (xs[0] * ys[0],)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(xs):
            if x:
                for j, y in enumerate(ys):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for k in range(d - 1):
            c = conv[d + k]
            if c:
                red = self._reduction[k]
                for j in range(d):
                    out[j] += c * red[j]
        return tuple(out)

    def _inverse(self, xs):
        # extended Euclid in Q[t] against Phi
        r0, r1 = list(self._phi), list(xs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                out = [c * inv for c in s1]
                out += [Fraction(0)] * (self.degree - len(out))
                return tuple(out[: self.degree])
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            for k in range(len(q) - 1, -1, -1):
                c = rem[k + len(r1) - 1] / r1[-1]
                q[k] = c
                if c:
                    for j, d in enumerate(r1):
                        rem[k + j] -= c * d
            while rem and not rem[-1]:
                rem.pop()
            qs1 = [Fraction(0)] * (len(q) + len(s1) - 1)
            for i, a in enumerate(q):
                if a:
                    for j, b in enumerate(s1):
                        qs1[i + j] += a * b
            news = [x - y for x, y in zip(s0 + [Fraction(0)] * len(qs1), qs1 + [Fraction(0)] * len(s0))]
            r0, r1 = r1, rem if rem else [Fraction(0)]
            s0, s1 = s1, news

    @property
    def root(self):
        if self.degree == 1:
            # Phi linear: zeta = -phi[0] (orders 1 and 2)
            return CyclotomicScalar(self, (-self._phi[0],))
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return CyclotomicScalar(self, coeffs)

    def zero(self):
        return CyclotomicScalar(self, (Fraction(0),) * self.degree)

    def one(self):
        return CyclotomicScalar(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    def from_int(self, n: int):
        return CyclotomicScalar(
            self, (Fraction(n),) + (Fraction(0),) * (self.degree - 1)
        )

    def scalar_to_text(self, s) -> str:
        parts = []
        for k, c in enumerate(s.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{k}")
        return " + ".join(parts) if parts else "0"

    def scalar_from_text(self, text: str):
        coeffs = [Fraction(0)] * self.degree
        text = text.strip()
        if text != "0":
            for part in text.split(" + "):
                if "*z" in part:
                    c, _, zpart = part.partition("*z")
                    k = int(zpart[1:]) if zpart.startswith("^") else 1
                else:
                    c, k = part, 0
                coeffs[k] += Fraction(c)
        return CyclotomicScalar(self, coeffs)

    def describe(self) -> str:
        return f"cyclotomic({self.order})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("cyclotomic", self.order))

    def __repr__(self):
        return f"CyclotomicField({self.order})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_prime_modulus(a: int) -> int:
    """Smallest prime p with p = 1 (mod a)."""
    p = a + 1
    while not (_is_prime(p) and p % a == 1):
        p += a
    return p


class PrimeField:
    """F_p with a distinguished primitive root of order root_order."""

    tag = "prime"

    def __init__(self, modulus: int, root_order: int):
        if not _is_prime(modulus):
            raise ValueError(f"{modulus} is not prime")
        if (modulus - 1) % root_order != 0:
            raise NoRootError(
                f"F_{modulus} has no element of multiplicative order {root_order}"
            )
        self.modulus = modulus
        self.root_order = root_order

    @property
    def root(self):
        a = self.root_order
        if a == 1:
            return PrimeFieldScalar(self, 1)
        factors = _prime_factors(a)
        for g in range(2, self.modulus):
            if pow(g, a, self.modulus) != 1:
                continue
            if all(pow(g, a // f, self.modulus) != 1 for f in factors):
                return PrimeFieldScalar(self, g)
        raise NoRootError(f"no element of order {a} in F_{self.modulus}")

    def zero(self):
        return PrimeFieldScalar(self, 0)

    def one(self):
        return PrimeFieldScalar(self, 1)

    def from_int(self, n: int):
        return PrimeFieldScalar(self, n)

    def scalar_to_text(self, s) -> str:
        return str(s.value)

    def scalar_from_text(self, text: str):
        return PrimeFieldScalar(self, int(text))

    def describe(self) -> str:
        return f"prime({self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, PrimeField)
            and other.modulus == self.modulus
            and other.root_order == self.root_order
        )

    def __hash__(self):
        return hash(("prime", self.modulus, self.root_order))

    def __repr__(self):
        return f"PrimeField({self.modulus}, root_order={self.root_order})"


# ---------------------------------------------------------------------------
# constructors and the scalar sequences used by the differentials


def rational_field(root_order: int = 2) -> RationalField:
    return RationalField(root_order)


def cyclotomic_field(order: int) -> CyclotomicField:
    return CyclotomicField(order)


def prime_field(modulus: int, root_order: int) -> PrimeField:
    return PrimeField(modulus, root_order)


def prime_field_for(root_order: int) -> PrimeField:
    """Prime backend with the smallest admissible modulus for this order."""
    return PrimeField(smallest_prime_modulus(root_order), root_order)


def primitive_root(field):
    """The field's distinguished primitive root of unity (deterministic)."""
    return field.root


def k_sum(t: int, alpha):
    """Geometric sum 1 + alpha + ... + alpha^(t-1)."""
    if t < 1:
        raise ValueError("t must be positive")
    total = alpha ** 0
    power = alpha ** 0
    for _ in range(t - 1):
        power = power * alpha
        total = total + power
    return total


def c_sequence(a: int, q) -> list:
    """Partial geometric sums (c_0, ..., c_(a-2)) with c_i = 1 + q + ... + q^i."""
    if a < 2:
        raise ValueError("a must be at least 2")
    out = []
    total = q ** 0
    out.append(total)
    power = q ** 0
    for _ in range(a - 2):
        power = power * q
        total = total + power
        out.append(total)
    return out
