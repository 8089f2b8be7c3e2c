"""Products on even cohomology via explicit chain-map liftings.

A scalar-valued even cocycle lifts to a family of module maps h_s one row up
the resolution; composing the other factor with h_(2m) realizes the product.
For a = 2 the lifting is the bare convolution with an alternating sign in odd
levels.  For a >= 3 odd-indexed columns pick up correction factors built from
the beta elements:

    omega_plus(j) = beta_x(-1) beta_y(1)   (j odd; 1 for j even)
    eps_x(j) = -beta_x(0) for j odd, 1 for j even
    eps_y(j) = -beta_y(0) for j even, 1 for j odd

Note on eps_x: the commuting-square conditions pin it to -beta_x(0); with
-beta_x(1) in its place the odd-level squares fail, which verify_lifting
demonstrates directly.  The thirteen product identities in relations_check
are exactly what make all four parity cases of the squares close up.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .algebra import QuantumCompleteIntersection, env_to_text
from .cohomology import (
    Cochain,
    CohomologyClass,
    express,
    standard_basis,
)
from .resolution import (
    GAMMA_X,
    GAMMA_Y,
    TAU_X,
    TAU_Y,
    OrderError,
    beta_element,
    differential,
    preferred_variant,
    structure_element,
)
from .scalars import c_sequence


class NonScalarError(ValueError):
    """Lifting requested for a cochain whose values are not scalars."""


class TableMismatchError(RuntimeError):
    """A product table cell disagrees with the closed form."""


class LiftingFamily:
    """Maps h_s: P_(2t+s) -> P_s for s = 0..s_max lifting a scalar cochain."""

    def __init__(self, algebra, degree, values, s_max, maps):
        self.algebra = algebra
        self.degree = degree
        self.values = list(values)
        self.s_max = s_max
        self.maps = maps  # s -> dict (j, i) -> EnvElement

    def entry(self, s, j, i):
        return self.maps[s].get((j, i))


def _scalar_values(cochain: Cochain):
    """Extract field scalars from a cochain of scalar multiples of 1."""
    out = []
    for value in cochain.values:
        if not value.is_scalar():
            raise NonScalarError(
                "lifting needs scalar values; got a non-unit monomial"
            )
        out.append(value.coefficient(0, 0))
    return out


def build_lifting(
    A: QuantumCompleteIntersection,
    values,
    s_max: int,
    _omega_plus=None,
    _eps_x=None,
    _eps_y=None,
) -> LiftingFamily:
    """Assemble h_0..h_(s_max) for a degree-2t cochain given by its values.

    values may be field scalars or scalar AlgebraElements.  The private
    keyword hooks substitute the odd-column correction factors; tests use
    them as negative controls.
    """
    vals = []
    for p in values:
        if hasattr(p, "is_scalar"):
            if not p.is_scalar():
                raise NonScalarError("lifting needs scalar values")
            vals.append(p.coefficient(0, 0))
        else:
            vals.append(p)
    degree = len(vals) - 1
    if degree % 2 != 0:
        raise ValueError("liftings are built for even-degree cochains")

    one_env = A.env_one()
    if A.a >= 3:
        omega_plus = _omega_plus if _omega_plus is not None else (
            beta_element(A, "x", -1) * beta_element(A, "y", 1)
        )
        eps_x = _eps_x if _eps_x is not None else -beta_element(A, "x", 0)
        eps_y = _eps_y if _eps_y is not None else -beta_element(A, "y", 0)

    maps = {}
    for s in range(s_max + 1):
        entries = {}
        for i in range(degree + s + 1):
            lo = max(0, i - degree)
            for j in range(lo, min(s, i) + 1):
                p = vals[i - j]
                if not p:
                    continue
                if A.a == 2:
                    factor = one_env
                    if s % 2 == 1 and (i + j) % 2 == 1:
                        entries[(j, i)] = factor.scale(-p)
                        continue
                    entries[(j, i)] = factor.scale(p)
                else:
                    if s % 2 == 0:
                        factor = omega_plus if (i % 2 == 0 and j % 2 == 1) else one_env
                    else:
                        if i % 2 == 0:
                            factor = eps_x if j % 2 == 1 else one_env
                        else:
                            factor = eps_y if j % 2 == 0 else one_env
                    entries[(j, i)] = factor.scale(p)
        maps[s] = entries
    return LiftingFamily(A, degree, vals, s_max, maps)


@dataclass
class LiftingReport:
    degree: int
    s_max: int
    checks: list = dataclass_field(default_factory=list)

    def record(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(name, detail) for name, ok, detail in self.checks if not ok]


def verify_lifting(family: LiftingFamily) -> LiftingReport:
    """Check every square d_s h_s = h_(s-1) d_(2t+s) and the base triangle."""
    A = family.algebra
    variant = preferred_variant(A)
    report = LiftingReport(degree=family.degree, s_max=family.s_max)

    base_ok = True
    for i in range(family.degree + 1):
        env = family.entry(0, 0, i)
        got = env.act(A.one()) if env is not None else A.zero()
        want = A.one().scale(family.values[i])
        if got != want:
            base_ok = False
            break
    report.record("h_0 recovers the cochain through the augmentation", base_ok)

    for s in range(1, family.s_max + 1):
        d_s = differential(A, s, variant)
        d_top = differential(A, family.degree + s, variant)
        ok = True
        witness = ""
        for i in range(family.degree + s + 1):
            for k in range(s):
                lhs = A.env_zero()
                for j in (k, k + 1):
                    h = family.entry(s, j, i)
                    d = d_s.entry(k, j)
                    if h is not None and d is not None:
                        lhs = lhs + h * d
                rhs = A.env_zero()
                for m in (i - 1, i):
                    d = d_top.entry(m, i)
                    h = family.entry(s - 1, k, m)
                    if d is not None and h is not None:
                        rhs = rhs + d * h
                if lhs != rhs:
                    ok = False
                    witness = (
                        f"s={s}, column {i}, target {k}: "
                        f"{env_to_text(lhs)} versus {env_to_text(rhs)}"
                    )
                    break
            if not ok:
                break
        report.record(f"square at s={s}", ok, witness)
    return report


def yoneda_product(
    chi: CohomologyClass, xi: CohomologyClass
) -> tuple[CohomologyClass, list]:
    """Compose chi with the top lifting map of xi.

    Returns the product class together with its coordinates over the named
    basis of the target degree.  xi must be scalar-valued; chi may be any
    even class.
    """
    A = chi.representative.algebra
    two_m = chi.degree
    two_t = xi.degree
    values = _scalar_values(xi.representative)
    family = build_lifting(A, values, two_m)
    top = family.maps[two_m]
    out_values = [A.zero() for _ in range(two_t + two_m + 1)]
    chi_values = chi.representative.values
    for (j, i), env in top.items():
        out_values[i] = out_values[i] + env.act(chi_values[j])
    product = Cochain(A, two_t + two_m, out_values)
    expressed = express(A, product)
    basis = standard_basis(A, two_t + two_m)
    coords = expressed.coordinates
    # name the result when it lands exactly on one basis class
    label = ""
    hits = [k for k, c in enumerate(coords) if c]
    if len(hits) == 1 and coords[hits[0]] == A.field.one():
        label = basis[hits[0]].label
    elif not hits:
        label = "0"
    cls = CohomologyClass(
        degree=two_t + two_m,
        representative=product,
        coordinates=[],
        label=label,
    )
    return cls, coords


def relations_check(A: QuantumCompleteIntersection):
    """Expand the thirteen two-sided identities between the band elements."""
    if A.a < 3:
        raise OrderError("the beta-element identities need a >= 3")

    def bx(s):
        return beta_element(A, "x", s)

    def by(s):
        return beta_element(A, "y", s)

    def tx(s):
        return structure_element(A, TAU_X, s)

    def ty(s):
        return structure_element(A, TAU_Y, s)

    def gx(s):
        return structure_element(A, GAMMA_X, s)

    def gy(s):
        return structure_element(A, GAMMA_Y, s)

    identities = [
        ("a", lambda: by(1) * ty(1), lambda: gy(2)),
        ("b", lambda: bx(-1) * gy(2), lambda: gy(0) * bx(0)),
        ("c", lambda: bx(-1) * by(1), lambda: by(-1) * bx(1)),
        ("d", lambda: bx(1) * tx(1), lambda: -gx(2)),
        ("e", lambda: by(-1) * gx(2), lambda: gx(0) * by(0)),
        ("f", lambda: by(0) * ty(0), lambda: gy(1)),
        ("g", lambda: bx(0) * tx(0), lambda: -gx(1)),
        ("h", lambda: ty(1) * by(0), lambda: gy(0)),
        ("i", lambda: tx(0) * bx(-1), lambda: -gx(-1)),
        ("j", lambda: gx(-1) * by(1), lambda: by(0) * gx(1)),
        ("k", lambda: ty(0) * by(-1), lambda: gy(-1)),
        ("l", lambda: tx(1) * bx(0), lambda: -gx(0)),
        ("m", lambda: bx(0) * gy(1), lambda: gy(-1) * bx(1)),
    ]
    report = RelationsReport(algebra=A.describe())
    for name, lhs_fn, rhs_fn in identities:
        lhs = lhs_fn()
        rhs = rhs_fn()
        ok = lhs == rhs
        witness = "" if ok else f"difference: {env_to_text(lhs - rhs)}"
        report.record(name, ok, witness)
    return report


@dataclass
class RelationsReport:
    algebra: str
    checks: list = dataclass_field(default_factory=list)

    def record(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(name, detail) for name, ok, detail in self.checks if not ok]

    def status(self, name) -> bool:
        for n, ok, _ in self.checks:
            if n == name:
                return ok
        raise KeyError(name)


def sum_identity_check(A: QuantumCompleteIntersection) -> bool:
    """Whether the c-weighted geometric sum sum_i c_i q^i vanishes."""
    if A.a < 3:
        raise OrderError("the weighted sum is considered for a >= 3 only")
    total = A.field.zero()
    for i, c in enumerate(c_sequence(A.a, A.q)):
        total = total + c * A.q_power(i)
    return not total


def nilpotency_witness(cls: CohomologyClass):
    """Radical certificate: every representative value misses the unit."""
    flags = [value.in_radical() for value in cls.representative.values]
    return NilpotencyCertificate(label=cls.label, flags=flags)


@dataclass
class NilpotencyCertificate:
    label: str
    flags: list

    @property
    def valid(self) -> bool:
        return all(self.flags)


# ---------------------------------------------------------------------------
# the reduced even ring


def _scalar_class(A, degree, index) -> CohomologyClass:
    basis = standard_basis(A, degree)
    return basis[index]  # scalar classes come first, index 0..degree


@dataclass
class ProductTable:
    """All pairwise products of the scalar classes up to a degree bound."""

    a: int
    backend: str
    max_degree: int
    cells: dict
    checked: list

    def to_json_obj(self):
        cells = []
        for (dm, l, dt, r), result in sorted(self.cells.items()):
            cells.append(
                {
                    "left": {"degree": dm, "index": l},
                    "right": {"degree": dt, "index": r},
                    "product": result,
                }
            )
        return {
            "schema": "qci-hochschild/1",
            "a": self.a,
            "backend": self.backend,
            "max_degree": self.max_degree,
            "cells": cells,
            "checks": self.checked,
        }


def reduced_ring_table(A: QuantumCompleteIntersection, max_degree: int) -> ProductTable:
    """Multiply every pair of scalar basis classes and pin the closed form.

    For a = 2 the product of the r-indexed and l-indexed scalar classes is
    the (r+l)-indexed one in the sum degree, without exception; for a >= 3 it
    is zero when both indices are odd and additive otherwise.  On top of the
    table itself this routine checks commutativity, associativity on basis
    triples, the index-parity grading, the polynomial-ring structure
    constants of the even-index part, and for a = 2 that every odd-index
    class is an even-index class times the middle degree-2 generator.
    """
    if max_degree % 2 != 0 or max_degree < 0:
        raise ValueError("max_degree must be even")
    one = A.field.one()
    cells = {}
    checked = []

    def closed_form(dm, l, dt, r):
        if A.a >= 3 and l % 2 == 1 and r % 2 == 1:
            return None
        return (dm + dt, l + r)

    for dm in range(0, max_degree + 1, 2):
        for dt in range(0, max_degree - dm + 1, 2):
            for l in range(dm + 1):
                for r in range(dt + 1):
                    chi = _scalar_class(A, dm, l)
                    xi = _scalar_class(A, dt, r)
                    _, coords = yoneda_product(chi, xi)
                    target = standard_basis(A, dm + dt)
                    expected = closed_form(dm, l, dt, r)
                    hits = {
                        target[k].label: c for k, c in enumerate(coords) if c
                    }
                    if expected is None:
                        if hits:
                            raise TableMismatchError(
                                f"({dm},{l}) x ({dt},{r}) expected 0, got {hits}"
                            )
                        cells[(dm, l, dt, r)] = None
                    else:
                        want_label = target[expected[1]].label
                        if list(hits) != [want_label] or hits[want_label] != one:
                            raise TableMismatchError(
                                f"({dm},{l}) x ({dt},{r}) expected {want_label}, "
                                f"got {hits}"
                            )
                        cells[(dm, l, dt, r)] = {
                            "degree": expected[0],
                            "index": expected[1],
                        }
    checked.append("closed form")

    for (dm, l, dt, r), result in cells.items():
        if cells[(dt, r, dm, l)] != result:
            raise TableMismatchError(f"commutativity fails at ({dm},{l}),({dt},{r})")
    checked.append("commutativity")

    # index parity is additive on nonzero products
    for (dm, l, dt, r), result in cells.items():
        if result is not None and (l + r) % 2 != result["index"] % 2:
            raise TableMismatchError("parity grading violated")
    checked.append("parity grading")

    # associativity over basis triples within the degree bound
    def cell(dm, l, dt, r):
        return cells[(dm, l, dt, r)]

    for d1 in range(0, max_degree + 1, 2):
        for d2 in range(0, max_degree - d1 + 1, 2):
            for d3 in range(0, max_degree - d1 - d2 + 1, 2):
                for i in range(d1 + 1):
                    for j in range(d2 + 1):
                        for k in range(d3 + 1):
                            left = cell(d1, i, d2, j)
                            lhs = (
                                None
                                if left is None
                                else cell(left["degree"], left["index"], d3, k)
                            )
                            right = cell(d2, j, d3, k)
                            rhs = (
                                None
                                if right is None
                                else cell(d1, i, right["degree"], right["index"])
                            )
                            if lhs != rhs:
                                raise TableMismatchError(
                                    f"associativity fails at degrees "
                                    f"({d1},{i}),({d2},{j}),({d3},{k})"
                                )
    checked.append("associativity")

    # even-index part is the bigraded monomial ring on two degree-2 classes:
    # (2t, i) with i even corresponds to the pair of exponents ((2t-i)/2, i/2)
    for (dm, l, dt, r), result in cells.items():
        if l % 2 == 0 and r % 2 == 0:
            e_left = ((dm - l) // 2, l // 2)
            e_right = ((dt - r) // 2, r // 2)
            total = (e_left[0] + e_right[0], e_left[1] + e_right[1])
            want = (2 * (total[0] + total[1]), 2 * total[1])
            got = (result["degree"], result["index"])
            if got != want:
                raise TableMismatchError(
                    f"polynomial structure constants fail at ({dm},{l}),({dt},{r})"
                )
    checked.append("polynomial ring structure constants on the even-index part")

    if A.a == 2 and max_degree >= 2:
        for dm in range(2, max_degree + 1, 2):
            for l in range(1, dm + 1, 2):
                via = cells[(dm - 2, l - 1, 2, 1)]
                if via != {"degree": dm, "index": l}:
                    raise TableMismatchError(
                        f"odd part is not (even part) * xi_1^2 at ({dm},{l})"
                    )
        checked.append("odd-index part equals even-index part times xi_1^2")

    return ProductTable(
        a=A.a,
        backend=A.field.describe(),
        max_degree=max_degree,
        cells=cells,
        checked=checked,
    )
