"""The relation module in its embedded form.

Module elements live as width-2n coordinate vectors over the group ring:
their images inside the chain group C1 under the (injective) chain-level
inclusion.  That makes equality decidable coordinate-wise, which an
abstract quotient presentation would not give us.

The conjugation action of the group corresponds, in these coordinates, to
entry-wise right multiplication (see the convention note in foxcomplex).
That fact carries the whole embedding, so the test suite checks it
directly against freshly conjugated relators rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .freewords import PresentationParams, commutator_relator, power_relator
from .foxcomplex import RingVector, starred_fox_row
from .groupring import (
    RingElement,
    free_term,
    group_term,
    norm_element,
    one,
    ramp_element,
    ring_mul,
    torsion_term,
)
from .normalform import IDENTITY


class RelElement:
    """A relation-module element, held as its C1 coordinate vector."""

    __slots__ = ("coords",)
    __hash__ = None

    def __init__(self, coords: RingVector):
        self.coords = coords

    @property
    def is_zero(self) -> bool:
        return self.coords.is_zero

    def __eq__(self, other) -> bool:
        return isinstance(other, RelElement) and self.coords == other.coords

    def __add__(self, other: "RelElement") -> "RelElement":
        return RelElement(self.coords + other.coords)

    def __sub__(self, other: "RelElement") -> "RelElement":
        return RelElement(self.coords - other.coords)

    def act(self, coeff: RingElement, params: PresentationParams) -> "RelElement":
        """Right action of a ring element."""
        return RelElement(self.coords.act(coeff, params))

    def __repr__(self) -> str:
        return f"RelElement({self.coords!r})"


class C2Element:
    """A coordinate vector over the free basis D1..Dn, E1..En of C2."""

    __slots__ = ("coords",)
    __hash__ = None

    def __init__(self, coords: RingVector):
        self.coords = coords

    @property
    def is_zero(self) -> bool:
        return self.coords.is_zero

    def __eq__(self, other) -> bool:
        return isinstance(other, C2Element) and self.coords == other.coords

    def __add__(self, other: "C2Element") -> "C2Element":
        return C2Element(self.coords + other.coords)

    def __sub__(self, other: "C2Element") -> "C2Element":
        return C2Element(self.coords - other.coords)

    def act(self, coeff: RingElement, params: PresentationParams) -> "C2Element":
        return C2Element(self.coords.act(coeff, params))

    def __repr__(self) -> str:
        return f"C2Element({self.coords!r})"


def commutator_image(i: int, params: PresentationParams) -> RelElement:
    """Module class of the commutator relator [a_i, b_i]: a_i-coordinate
    1 - b_i^-1, b_i-coordinate a_i^-1 - 1, all others zero."""
    params.check_index(i)
    return RelElement(starred_fox_row(commutator_relator(i), params))


def power_image(i: int, params: PresentationParams) -> RelElement:
    """Module class of the torsion relator a_i^{r_i}: a_i-coordinate is the
    norm element, all others zero."""
    params.check_index(i)
    return RelElement(starred_fox_row(power_relator(i, params), params))


def module_generator(k: int, params: PresentationParams) -> RelElement:
    """The k-th of the n+1 distinguished generators: for k <= n the power
    class plus the commutator class times (1 - a_k); for k = n+1 the sum
    of all commutator classes."""
    n = params.n
    if not 1 <= k <= n + 1:
        raise ParameterError(f"generator index {k} out of range 1..{n + 1}")
    if k <= n:
        shear = one() - torsion_term(k, 1, params)
        return power_image(k, params) + commutator_image(k, params).act(shear, params)
    total = commutator_image(1, params)
    for i in range(2, n + 1):
        total = total + commutator_image(i, params)
    return total


def reduction_multiplier(i: int, params: PresentationParams) -> RingElement:
    """The ring element w_i = (1 - b_i^-1) N_i + (N_i - r_i) T_i that
    contracts the i-th distinguished generator onto r_i^2 times the
    commutator class (N = norm element, T = ramp element)."""
    params.check_index(i)
    ri = params.r[i - 1]
    norm = norm_element(i, params)
    ramp = ramp_element(i, params)
    left = ring_mul(one() - free_term(i, -1, params), norm, params)
    right = ring_mul(norm - ri * one(), ramp, params)
    return left + right


@dataclass(frozen=True)
class ModuleIdentityReport:
    """The two defining identities of the relator classes in the module."""

    power_annihilated: bool  # E_i (1 - a_i) = 0
    norm_transfer: bool  # D_i N_i = E_i (1 - b_i^-1)

    @property
    def ok(self) -> bool:
        return self.power_annihilated and self.norm_transfer


def check_module_identities(i: int, params: PresentationParams) -> ModuleIdentityReport:
    d = commutator_image(i, params)
    e = power_image(i, params)
    ann = e.act(one() - torsion_term(i, 1, params), params)
    lhs = d.act(norm_element(i, params), params)
    rhs = e.act(one() - free_term(i, -1, params), params)
    return ModuleIdentityReport(
        power_annihilated=ann.is_zero,
        norm_transfer=lhs == rhs,
    )


@dataclass(frozen=True)
class ReductionReport:
    """X_i w_i = D_i r_i^2, together with its four expansion terms."""

    total: bool  # X_i w_i = D_i r_i^2
    power_norm_term: bool  # E_i (1 - b^-1) N = D_i N r
    power_ramp_term: bool  # E_i (N - r) T = 0
    commutator_norm_term: bool  # D_i (1 - a)(1 - b^-1) N = 0
    commutator_ramp_term: bool  # D_i (1 - a)(N - r) T = D_i r^2 - D_i N r

    @property
    def ok(self) -> bool:
        return (
            self.total
            and self.power_norm_term
            and self.power_ramp_term
            and self.commutator_norm_term
            and self.commutator_ramp_term
        )


def check_reduction(i: int, params: PresentationParams) -> ReductionReport:
    ri = params.order(i)
    d = commutator_image(i, params)
    e = power_image(i, params)
    x = module_generator(i, params)
    w = reduction_multiplier(i, params)
    norm = norm_element(i, params)
    ramp = ramp_element(i, params)
    one_minus_a = one() - torsion_term(i, 1, params)
    one_minus_binv = one() - free_term(i, -1, params)
    norm_minus_r = norm - ri * one()

    square = group_term(IDENTITY, ri * ri)
    total = x.act(w, params) == d.act(square, params)

    t1_coeff = ring_mul(one_minus_binv, norm, params)
    term1 = e.act(t1_coeff, params) == d.act(ri * norm, params)

    t2_coeff = ring_mul(norm_minus_r, ramp, params)
    term2 = e.act(t2_coeff, params).is_zero

    t3_coeff = ring_mul(one_minus_a, t1_coeff, params)
    term3 = d.act(t3_coeff, params).is_zero

    t4_coeff = ring_mul(one_minus_a, t2_coeff, params)
    term4 = d.act(t4_coeff, params) == d.act(square, params) - d.act(ri * norm, params)

    return ReductionReport(total, term1, term2, term3, term4)


def lifted_generator(k: int, params: PresentationParams) -> C2Element:
    """The k-th distinguished generator lifted to C2 coordinates over the
    free basis D1..Dn, E1..En."""
    n = params.n
    if not 1 <= k <= n + 1:
        raise ParameterError(f"generator index {k} out of range 1..{n + 1}")
    entries = [RingElement({}) for _ in range(2 * n)]
    if k <= n:
        entries[k - 1] = one() - torsion_term(k, 1, params)
        entries[n + k - 1] = one()
    else:
        for j in range(n):
            entries[j] = one()
    return C2Element(RingVector(tuple(entries)))
