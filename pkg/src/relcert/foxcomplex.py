"""Free differential calculus into the group ring, and the chain-level
boundary data built from it.

Convention used throughout: modules are RIGHT modules over the group ring.
A matrix row holds the image of one basis element written over the target
basis, and a coefficient vector acts by right multiplication,

    apply(M, v) = sum_k row_k * v_k.

Fox derivative rows are passed through the star involution entry-wise,
which turns their natural left-module behaviour into this right action:
for a word w with trivial image and any g,

    d(g^-1 w g)/dx = g^-1 * dw/dx,

because d(g^-1)/dx + g^-1 w dg/dx collapses to zero once w maps to the
identity, and star moves the left factor g^-1 to a right factor g.  Right
multiplying a starred row therefore realizes conjugation of the underlying
relator.  The edge boundary entries are starred the same way (x^-1 - 1),
so the chain condition holds verbatim.
"""

from __future__ import annotations

from .errors import ParameterError
from .freewords import (
    KIND_TORSION,
    FreeWord,
    Generator,
    PresentationParams,
    commutator_relator,
    generators,
    power_relator,
)
from .groupring import RingElement, group_term, one, ring_mul, star, zero
from .normalform import IDENTITY, GroupElement, ginv, gmul, project, torsion_power, free_power


class RingVector:
    """A fixed-width tuple of ring elements (one chain-group coordinate each)."""

    __slots__ = ("entries",)
    __hash__ = None

    def __init__(self, entries: tuple[RingElement, ...]):
        self.entries = entries

    @staticmethod
    def zeros(width: int) -> "RingVector":
        return RingVector(tuple(zero() for _ in range(width)))

    @staticmethod
    def unit(width: int, position: int) -> "RingVector":
        if not 0 <= position < width:
            raise ParameterError(f"unit position {position} out of range 0..{width - 1}")
        return RingVector(
            tuple(one() if j == position else zero() for j in range(width))
        )

    @property
    def width(self) -> int:
        return len(self.entries)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def __getitem__(self, j: int) -> RingElement:
        return self.entries[j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RingVector) and self.entries == other.entries

    def __add__(self, other: "RingVector") -> "RingVector":
        if self.width != other.width:
            raise ParameterError(f"width mismatch {self.width} != {other.width}")
        return RingVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RingVector") -> "RingVector":
        if self.width != other.width:
            raise ParameterError(f"width mismatch {self.width} != {other.width}")
        return RingVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def act(self, coeff: RingElement, params: PresentationParams) -> "RingVector":
        """Entry-wise right multiplication by a ring element."""
        return RingVector(tuple(ring_mul(e, coeff, params) for e in self.entries))

    def __repr__(self) -> str:
        return f"RingVector([{', '.join(str(e) for e in self.entries)}])"


class RingMatrix:
    """A rectangular tuple of equal-width rows."""

    __slots__ = ("rows",)
    __hash__ = None

    def __init__(self, rows: tuple[RingVector, ...]):
        widths = {row.width for row in rows}
        if len(widths) > 1:
            raise ParameterError(f"ragged matrix: row widths {sorted(widths)}")
        self.rows = rows

    @staticmethod
    def identity(size: int) -> "RingMatrix":
        return RingMatrix(tuple(RingVector.unit(size, i) for i in range(size)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self.rows[0].width if self.rows else 0

    def __getitem__(self, i: int) -> RingVector:
        return self.rows[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, RingMatrix) and self.rows == other.rows


def apply(m: RingMatrix, v: RingVector, params: PresentationParams) -> RingVector:
    """Image of the element with coordinates v: sum_k row_k * v_k."""
    if v.width != m.nrows:
        raise ParameterError(
            f"coefficient vector width {v.width} != row count {m.nrows}"
        )
    cols = []
    for c in range(m.ncols):
        acc = zero()
        for k in range(m.nrows):
            vk = v.entries[k]
            entry = m.rows[k].entries[c]
            if vk.terms and entry.terms:
                acc = acc + ring_mul(entry, vk, params)
        cols.append(acc)
    return RingVector(tuple(cols))


def compose(first: RingMatrix, second: RingMatrix, params: PresentationParams) -> RingMatrix:
    """Matrix of "first, then second" in the rows-are-images convention.

    Row i of the result is second applied to row i of first, so
    apply(compose(A, B), v) = apply(B, apply(A, v)) for every v."""
    if first.ncols != second.nrows:
        raise ParameterError(
            f"inner dimensions differ: {first.ncols} != {second.nrows}"
        )
    return RingMatrix(tuple(apply(second, row, params) for row in first.rows))


def _letter_power(gen: Generator, e: int, params: PresentationParams) -> GroupElement:
    if gen.kind == KIND_TORSION:
        return torsion_power(gen.index, e, params)
    return free_power(gen.index, e, params)


def fox_derivative(w: FreeWord, gen: Generator, params: PresentationParams) -> RingElement:
    """Fox partial derivative of a word, evaluated in the group ring.

    Axioms: dx/dx = 1, dx^-1/dx = -x^-1, d(uv)/dx = du/dx + u * dv/dx,
    with words evaluated through the quotient projection."""
    acc: dict[GroupElement, int] = {}
    prefix = IDENTITY
    for g, e in w.letters:
        if g == gen:
            # d(x^e)/dx = sum_{j=0}^{e-1} x^j   (e > 0)
            #           = -sum_{j=1}^{|e|} x^-j (e < 0)
            if e > 0:
                exponents, c = range(e), 1
            else:
                exponents, c = range(-1, e - 1, -1), -1
            for j in exponents:
                key = gmul(prefix, _letter_power(g, j, params), params)
                v = acc.get(key, 0) + c
                if v:
                    acc[key] = v
                elif key in acc:
                    del acc[key]
        prefix = gmul(prefix, _letter_power(g, e, params), params)
    return RingElement(acc)


def starred_fox_row(w: FreeWord, params: PresentationParams) -> RingVector:
    """Width-2n vector of starred Fox derivatives over columns a1, b1, ..., an, bn."""
    return RingVector(
        tuple(
            star(fox_derivative(w, g, params), params) for g in generators(params.n)
        )
    )


def d2_matrix(params: PresentationParams) -> RingMatrix:
    """Second boundary map: 2n x 2n, rows D1..Dn then E1..En (relator classes),
    columns a1, b1, ..., an, bn (edge classes)."""
    n = params.n
    rows = [starred_fox_row(commutator_relator(i), params) for i in range(1, n + 1)]
    rows += [starred_fox_row(power_relator(i, params), params) for i in range(1, n + 1)]
    return RingMatrix(tuple(rows))


def d1_vector(params: PresentationParams) -> RingVector:
    """First boundary map: entry x^-1 - 1 per edge column."""
    entries = []
    for g in generators(params.n):
        entries.append(group_term(_letter_power(g, -1, params)) - one())
    return RingVector(tuple(entries))


def d1_contract(v: RingVector, params: PresentationParams) -> RingElement:
    """First boundary applied to a C1 coordinate vector: sum_x (x^-1 - 1) * v_x."""
    d1 = d1_vector(params)
    if v.width != d1.width:
        raise ParameterError(f"vector width {v.width} != 2n = {d1.width}")
    acc = zero()
    for entry, vx in zip(d1.entries, v.entries):
        if vx.terms:
            acc = acc + ring_mul(entry, vx, params)
    return acc


def fundamental_identity_holds(w: FreeWord, params: PresentationParams) -> bool:
    """Starred form of the fundamental Fox identity:
    sum_x (x^-1 - 1) * star(dw/dx) = star(pi(w)) - 1."""
    lhs = d1_contract(starred_fox_row(w, params), params)
    rhs = group_term(ginv(project(w, params), params)) - one()
    return lhs == rhs


def column_index(gen: Generator) -> int:
    """Column of a generator in the a1, b1, ..., an, bn edge order."""
    return 2 * (gen.index - 1) + (0 if gen.kind == KIND_TORSION else 1)


def c1_labels(n: int) -> list[str]:
    return [str(g) for g in generators(n)]


def c2_labels(n: int) -> list[str]:
    return [f"D{i}" for i in range(1, n + 1)] + [f"E{i}" for i in range(1, n + 1)]
