"""Unique syllable normal forms for the free product of C_{r_i} x Z factors.

An element is an alternating product of nontrivial one-factor syllables
a_i^k b_i^m with 0 <= k < r_i and m unbounded; a_i and b_i commute inside
their factor.  Adjacent syllables always come from distinct factors, which
makes the form unique: two elements are equal iff their syllable tuples are.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import ParameterError
from .freewords import KIND_TORSION, FreeWord, PresentationParams


class Syllable(NamedTuple):
    factor: int
    k: int  # torsion exponent, reduced into [0, r_factor)
    m: int  # free exponent


class GroupElement:
    """Normal form; the empty syllable tuple is the group identity."""

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: tuple[Syllable, ...] = ()):
        self.syllables = syllables
        self._hash = hash(syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.syllables == other.syllables

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GroupElement({element_to_text(self)!r})"

    def __str__(self) -> str:
        return element_to_text(self)


IDENTITY = GroupElement()


def _append_syllable(stack: list[Syllable], factor: int, k: int, m: int, r_factor: int):
    # Incoming k must already lie in [0, r_factor); cancellations cascade
    # because each incoming syllable is compared against the exposed top.
    if stack and stack[-1][0] == factor:
        prev = stack.pop()
        k = (prev[1] + k) % r_factor
        m = prev[2] + m
    if k or m:
        stack.append(Syllable(factor, k, m))


def project(w: FreeWord, params: PresentationParams) -> GroupElement:
    """Image of a free word in the quotient; kills both relator families."""
    r = params.r
    n = params.n
    stack: list[Syllable] = []
    for gen, exp in w.letters:
        i = gen.index
        if i > n:
            raise ParameterError(f"generator index {i} exceeds n={n}")
        ri = r[i - 1]
        if gen.kind == KIND_TORSION:
            _append_syllable(stack, i, exp % ri, 0, ri)
        else:
            _append_syllable(stack, i, 0, exp, ri)
    return GroupElement(tuple(stack))


def gmul(x: GroupElement, y: GroupElement, params: PresentationParams) -> GroupElement:
    """Normal-form product: boundary syllables of equal factor merge
    (k mod r, m additively) and vanishing syllables cascade away."""
    r = params.r
    stack = list(x.syllables)
    for factor, k, m in y.syllables:
        rf = r[factor - 1]
        if not 0 <= k < rf:
            raise ParameterError(
                f"torsion exponent {k} out of range for r[{factor - 1}]={rf}; "
                "operands built with different parameters?"
            )
        _append_syllable(stack, factor, k, m, rf)
    return GroupElement(tuple(stack))


def ginv(x: GroupElement, params: PresentationParams) -> GroupElement:
    r = params.r
    out = []
    for factor, k, m in reversed(x.syllables):
        rf = r[factor - 1]
        if not 0 <= k < rf:
            raise ParameterError(
                f"torsion exponent {k} out of range for r[{factor - 1}]={rf}; "
                "operand built with different parameters?"
            )
        out.append(Syllable(factor, (rf - k) % rf, -m))
    return GroupElement(tuple(out))


def torsion_power(i: int, j: int, params: PresentationParams) -> GroupElement:
    """a_i^j in normal form."""
    params.check_index(i)
    k = j % params.r[i - 1]
    return GroupElement((Syllable(i, k, 0),)) if k else IDENTITY


def free_power(i: int, m: int, params: PresentationParams) -> GroupElement:
    """b_i^m in normal form."""
    params.check_index(i)
    return GroupElement((Syllable(i, 0, m),)) if m else IDENTITY


def canonical_key(x: GroupElement):
    """Sort key for the canonical total order: syllable count first, then
    lexicographic on (factor, k, m) tuples with integer order on m."""
    return (len(x.syllables), x.syllables)


def canonical_order(x: GroupElement, y: GroupElement) -> int:
    """-1, 0, or 1 comparing x to y in the canonical total order."""
    kx, ky = canonical_key(x), canonical_key(y)
    if kx < ky:
        return -1
    return 0 if kx == ky else 1


def element_to_text(x: GroupElement) -> str:
    """Per syllable "a<i>^k b<i>^m", omitting zero parts and exponent 1;
    the identity prints as "e"."""
    if not x.syllables:
        return "e"
    parts = []
    for factor, k, m in x.syllables:
        if k:
            parts.append(f"a{factor}" if k == 1 else f"a{factor}^{k}")
        if m:
            parts.append(f"b{factor}" if m == 1 else f"b{factor}^{m}")
    return " ".join(parts)
