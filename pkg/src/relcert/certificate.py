"""Constructive generation certificates and their chain-level consequences.

A certificate packages plain integers (the Chinese-remainder data) with
group-ring coefficient matrices expressing both relator-class families
over the n+1 distinguished generators, the kernel elements attached as
3-cells, and an elementary-operation trace exhibiting those data as part
of a free basis of C2.  Everything a certificate claims is re-checkable
from its fields alone by ring arithmetic; the checker shares only that
arithmetic with the builder, so a construction bug cannot vouch for
itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ParameterError, ParseError, VerificationError
from .freewords import PresentationParams
from .foxcomplex import (
    RingMatrix,
    RingVector,
    apply,
    c1_labels,
    c2_labels,
    compose,
    d1_vector,
    d2_matrix,
)
from .groupring import RingElement, one, parse_ring, ring_mul, ring_to_text, torsion_term, zero
from .relmodule import (
    C2Element,
    RelElement,
    commutator_image,
    lifted_generator,
    module_generator,
    power_image,
    reduction_multiplier,
)

CERTIFICATE_VERSION = 1


@dataclass(frozen=True)
class CrtData:
    """Integers t_i congruent to 1 mod r_i^2 and to 0 mod r_j^2 (j != i),
    canonical in [0, prod r_j^2), with the exact cofactors
    s_ij = (delta_ij - t_i) / r_j^2."""

    t: tuple[int, ...]
    s: tuple[tuple[int, ...], ...]


def crt_coefficients(params: PresentationParams) -> CrtData:
    """Solve the simultaneous congruences by modular inversion of the
    complementary products; exactness of each s_ij division is rechecked."""
    moduli = [ri * ri for ri in params.r]
    big = math.prod(moduli)
    t: list[int] = []
    s: list[tuple[int, ...]] = []
    for i, mi in enumerate(moduli):
        rest = big // mi
        ti = rest * pow(rest, -1, mi) % big
        row = []
        for j, mj in enumerate(moduli):
            delta = 1 if i == j else 0
            num = delta - ti
            if num % mj:
                raise VerificationError(
                    f"t[{i}]={ti} is not congruent to {delta} mod {mj}"
                )
            row.append(num // mj)
        t.append(ti)
        s.append(tuple(row))
    return CrtData(tuple(t), tuple(s))


@dataclass(frozen=True)
class AddRightMultiple:
    """Elementary basis operation: row dst += row src * coeff.

    Inverse: subtract the same right multiple; requires src != dst."""

    src: int
    dst: int
    coeff: RingElement

    def __post_init__(self):
        if self.src == self.dst:
            raise ParameterError("elementary operation needs distinct rows")
        if self.src < 0 or self.dst < 0:
            raise ParameterError("row indices must be nonnegative")

    def inverted(self) -> "AddRightMultiple":
        return AddRightMultiple(self.src, self.dst, -self.coeff)


@dataclass(frozen=True)
class Certificate:
    """All data needed to re-verify generation and the basis change.

    lam[k][i] and mu[k][i] are the coefficients of generator k+1 in the
    expansions of the commutator class i+1 and the power class i+1."""

    params: PresentationParams
    crt: CrtData
    lam: tuple[tuple[RingElement, ...], ...]  # (n+1) x n
    mu: tuple[tuple[RingElement, ...], ...]  # (n+1) x n
    alpha: tuple[C2Element, ...]  # n-1 kernel elements
    basis_ops: tuple[AddRightMultiple, ...]
    version: int = CERTIFICATE_VERSION


def _reconstruct(
    gens: list[RelElement],
    coeffs: list[RingElement],
    params: PresentationParams,
) -> RelElement:
    total = gens[0].act(coeffs[0], params)
    for g, c in zip(gens[1:], coeffs[1:]):
        total = total + g.act(c, params)
    return total


def _alpha_coords(
    i: int,
    lam: tuple[tuple[RingElement, ...], ...],
    params: PresentationParams,
) -> RingVector:
    # alpha_i = D_i - sum_k Xhat_k * lam[k][i], written over D1..Dn, E1..En.
    n = params.n
    entries = [zero() for _ in range(2 * n)]
    top = lam[n][i - 1]
    for j in range(1, n + 1):
        shear = one() - torsion_term(j, 1, params)
        d_coord = -ring_mul(shear, lam[j - 1][i - 1], params) - top
        if j == i:
            d_coord = one() + d_coord
        entries[j - 1] = d_coord
        entries[n + j - 1] = -lam[j - 1][i - 1]
    return RingVector(tuple(entries))


def _basis_ops(
    lam: tuple[tuple[RingElement, ...], ...], params: PresentationParams
) -> tuple[AddRightMultiple, ...]:
    # Rows 0..n-2 hold alpha_1..alpha_{n-1}; rows n-1..2n-1 hold the lifted
    # generators 1..n+1.  Three stages: (a) cancel each alpha row back to a
    # D row, (b) peel the last lifted generator down to the remaining D row,
    # (c) shear each lifted generator down to its E row.
    n = params.n
    ops: list[AddRightMultiple] = []
    for i in range(1, n):
        for k in range(1, n + 2):
            coeff = lam[k - 1][i - 1]
            if not coeff.is_zero:
                ops.append(AddRightMultiple(src=n + k - 2, dst=i - 1, coeff=coeff))
    minus_one = -one()
    for j in range(1, n):
        ops.append(AddRightMultiple(src=j - 1, dst=2 * n - 1, coeff=minus_one))
    for i in range(1, n + 1):
        src = i - 1 if i < n else 2 * n - 1
        coeff = torsion_term(i, 1, params) - one()
        ops.append(AddRightMultiple(src=src, dst=n + i - 2, coeff=coeff))
    return tuple(ops)


def build_certificate(params: PresentationParams) -> Certificate:
    """Construct and internally verify a certificate for the given orders.

    A verification failure here is a hard fault: it means the construction
    itself is wrong, never the input."""
    n = params.n
    crt = crt_coefficients(params)
    w = [reduction_multiplier(j, params) for j in range(1, n + 1)]

    lam_rows: list[tuple[RingElement, ...]] = []
    for j in range(1, n + 1):
        lam_rows.append(tuple(crt.s[i - 1][j - 1] * w[j - 1] for i in range(1, n + 1)))
    lam_rows.append(tuple(crt.t[i - 1] * one() for i in range(1, n + 1)))
    lam = tuple(lam_rows)

    mu_rows: list[tuple[RingElement, ...]] = []
    for j in range(1, n + 2):
        row = []
        for i in range(1, n + 1):
            shear = one() - torsion_term(i, 1, params)
            entry = -ring_mul(lam[j - 1][i - 1], shear, params)
            if j == i:
                entry = one() + entry
            row.append(entry)
        mu_rows.append(tuple(row))
    mu = tuple(mu_rows)

    gens = [module_generator(k, params) for k in range(1, n + 2)]
    for i in range(1, n + 1):
        got = _reconstruct(gens, [lam[k][i - 1] for k in range(n + 1)], params)
        if got != commutator_image(i, params):
            raise VerificationError(f"commutator class {i} not reconstructed")
        got = _reconstruct(gens, [mu[k][i - 1] for k in range(n + 1)], params)
        if got != power_image(i, params):
            raise VerificationError(f"power class {i} not reconstructed")

    d2 = d2_matrix(params)
    alphas = []
    for i in range(1, n):
        coords = _alpha_coords(i, lam, params)
        if not apply(d2, coords, params).is_zero:
            raise VerificationError(f"kernel element {i} has nonzero boundary")
        alphas.append(C2Element(coords))

    ops = _basis_ops(lam, params) if n >= 2 else ()
    return Certificate(params, crt, lam, mu, tuple(alphas), ops)


def kernel_element(i: int, cert: Certificate) -> C2Element:
    """The i-th 3-cell attaching element (1 <= i <= n-1); needs n >= 2."""
    n = cert.params.n
    if n < 2:
        raise ParameterError("no 3-cells to attach when n < 2")
    if not 1 <= i <= n - 1:
        raise ParameterError(f"kernel element index {i} out of range 1..{n - 1}")
    return cert.alpha[i - 1]


def replay(
    ops: tuple[AddRightMultiple, ...],
    matrix: RingMatrix,
    params: PresentationParams,
) -> RingMatrix:
    """Apply an elementary-operation trace to the rows of a matrix."""
    rows = list(matrix.rows)
    size = len(rows)
    for op in ops:
        if not (0 <= op.src < size and 0 <= op.dst < size):
            raise ParameterError(f"operation rows ({op.src}, {op.dst}) out of range 0..{size - 1}")
        rows[op.dst] = rows[op.dst] + rows[op.src].act(op.coeff, params)
    return RingMatrix(tuple(rows))


def permutation_of_identity(m: RingMatrix) -> list[int] | None:
    """If each row is a distinct standard unit vector, the map row -> unit
    position; otherwise None."""
    unit = one()
    positions = []
    for row in m.rows:
        pos = -1
        for j, entry in enumerate(row.entries):
            if entry.is_zero:
                continue
            if pos >= 0 or entry != unit:
                return None
            pos = j
        if pos < 0:
            return None
        positions.append(pos)
    if len(set(positions)) != len(positions) or m.nrows != m.ncols:
        return None
    return positions


def basis_matrix(cert: Certificate) -> RingMatrix:
    """2n x 2n matrix whose rows are the kernel elements followed by the
    lifted generators, in C2 coordinates."""
    params = cert.params
    n = params.n
    rows = [a.coords for a in cert.alpha]
    rows += [lifted_generator(k, params).coords for k in range(1, n + 2)]
    return RingMatrix(tuple(rows))


def _inverse_from_replay(
    cert: Certificate, reduced_positions: list[int], params: PresentationParams
) -> RingMatrix:
    # The trace sends the basis matrix P to a row permutation Pi of the
    # identity, so "Pi^-1 first, then the trace on the identity" inverts P.
    size = len(reduced_positions)
    trace = replay(cert.basis_ops, RingMatrix.identity(size), params)
    inverse_rows = [None] * size
    for row_index, position in enumerate(reduced_positions):
        inverse_rows[position] = trace.rows[row_index]
    return RingMatrix(tuple(inverse_rows))


def basis_change(cert: Certificate) -> tuple[RingMatrix, RingMatrix, tuple[AddRightMultiple, ...]]:
    """The basis matrix P, its explicit two-sided inverse Q, and the trace.

    Verifies that the trace reduces P to a permutation of the standard
    basis and that compose(P, Q) = compose(Q, P) = identity; any failure
    is a hard fault."""
    params = cert.params
    if params.n < 2:
        raise ParameterError("basis change requires n >= 2")
    p = basis_matrix(cert)
    reduced = replay(cert.basis_ops, p, params)
    positions = permutation_of_identity(reduced)
    if positions is None:
        raise VerificationError("operation trace does not reduce to a basis permutation")
    q = _inverse_from_replay(cert, positions, params)
    size = p.nrows
    ident = RingMatrix.identity(size)
    if compose(p, q, params) != ident or compose(q, p, params) != ident:
        raise VerificationError("basis matrix and its claimed inverse do not cancel")
    return p, q, cert.basis_ops


@dataclass(frozen=True)
class SplittingReport:
    """How the 3-cell boundary sits inside C2 after the basis change."""

    boundary_composite_zero: bool  # d2 after the 3-cell boundary vanishes
    inclusion_normalized: bool  # 3-cell rows become the first unit vectors
    three_cells: int  # n - 1
    lifted_generators: int  # n + 1
    total_rank: int  # 2n

    @property
    def ok(self) -> bool:
        return (
            self.boundary_composite_zero
            and self.inclusion_normalized
            and self.three_cells + self.lifted_generators == self.total_rank
        )


def splitting_report(
    cert: Certificate,
    basis: tuple[RingMatrix, RingMatrix] | None = None,
) -> SplittingReport:
    """Check that the 3-cell boundary rows die under d2 and, in the new
    basis read off from (P, Q), form the coordinate inclusion onto the
    first n-1 basis vectors.  Pass basis=(P, Q) to reuse a computed pair."""
    params = cert.params
    n = params.n
    if n < 2:
        raise ParameterError("splitting needs n >= 2 (no 3-cells otherwise)")
    if basis is None:
        p, q, _ = basis_change(cert)
    else:
        p, q = basis
    d2 = d2_matrix(params)
    composite_zero = all(
        apply(d2, a.coords, params).is_zero for a in cert.alpha
    )
    size = 2 * n
    normalized = all(
        apply(q, cert.alpha[i].coords, params) == RingVector.unit(size, i)
        for i in range(n - 1)
    )
    return SplittingReport(
        boundary_composite_zero=composite_zero,
        inclusion_normalized=normalized,
        three_cells=n - 1,
        lifted_generators=n + 1,
        total_rank=size,
    )


def euler_characteristic(n: int) -> int:
    """Alternating cell count of the 3-complex: one 0-cell, 2n 1-cells,
    2n 2-cells, and n-1 attached 3-cells."""
    if n < 1:
        raise ParameterError(f"n={n} must be >= 1")
    return 1 - 2 * n + 2 * n - (n - 1)


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    accepted: bool
    items: tuple[CheckItem, ...]

    @property
    def failures(self) -> tuple[str, ...]:
        return tuple(item.name for item in self.items if not item.passed)


def check_certificate(cert: Certificate) -> CheckReport:
    """Independently re-check every identity a certificate claims.

    Re-derives nothing: the stored integers are tested by modular
    arithmetic, the stored coefficient matrices by reconstructing both
    relator-class families, the stored kernel elements by boundary
    application, and the stored trace by replay.  Shares only the ring
    kernel with the builder."""
    params = cert.params
    n = params.n
    items: list[CheckItem] = []

    moduli = [ri * ri for ri in params.r]
    big = math.prod(moduli)

    ok = all(0 <= ti < big for ti in cert.crt.t)
    items.append(CheckItem("t range", ok, f"0 <= t_i < {big}"))

    ok = all(
        cert.crt.t[i] % moduli[j] == (1 if i == j else 0)
        for i in range(n)
        for j in range(n)
    )
    items.append(CheckItem("t congruences", ok, "t_i = delta_ij mod r_j^2"))

    ok = all(
        cert.crt.t[i] + moduli[j] * cert.crt.s[i][j] == (1 if i == j else 0)
        for i in range(n)
        for j in range(n)
    )
    items.append(CheckItem("s cofactors", ok, "t_i + r_j^2 s_ij = delta_ij"))

    ok = sum(cert.crt.t) % big == 1 % big
    items.append(CheckItem("t sum", ok, "sum of t_i = 1 mod prod r_j^2"))

    gens = [module_generator(k, params) for k in range(1, n + 2)]
    for i in range(1, n + 1):
        got = _reconstruct(gens, [cert.lam[k][i - 1] for k in range(n + 1)], params)
        items.append(
            CheckItem(
                f"D_{i} reconstruction",
                got == commutator_image(i, params),
                "sum_k X_k lambda_ki equals the commutator class",
            )
        )
    for i in range(1, n + 1):
        got = _reconstruct(gens, [cert.mu[k][i - 1] for k in range(n + 1)], params)
        items.append(
            CheckItem(
                f"E_{i} reconstruction",
                got == power_image(i, params),
                "sum_k X_k mu_ki equals the power class",
            )
        )

    if n >= 2:
        d2 = d2_matrix(params)
        for i, a in enumerate(cert.alpha, start=1):
            items.append(
                CheckItem(
                    f"alpha_{i} kernel",
                    apply(d2, a.coords, params).is_zero,
                    "boundary of the 3-cell attaching element vanishes",
                )
            )
        p = basis_matrix(cert)
        reduced = replay(cert.basis_ops, p, params)
        positions = permutation_of_identity(reduced)
        items.append(
            CheckItem(
                "basis reduction",
                positions is not None,
                "operation trace reaches a permutation of the standard basis",
            )
        )
        if positions is not None:
            q = _inverse_from_replay(cert, positions, params)
            ident = RingMatrix.identity(p.nrows)
            ok = compose(p, q, params) == ident and compose(q, p, params) == ident
            items.append(CheckItem("basis inverse", ok, "P Q = Q P = identity"))
        else:
            items.append(CheckItem("basis inverse", False, "no permutation to invert"))

    accepted = all(item.passed for item in items)
    return CheckReport(accepted, tuple(items))


# ---------------------------------------------------------------------------
# serialization

def certificate_to_json(cert: Certificate) -> dict:
    return {
        "version": cert.version,
        "r": list(cert.params.r),
        "t": list(cert.crt.t),
        "s": [list(row) for row in cert.crt.s],
        "lambda": [[ring_to_text(e) for e in row] for row in cert.lam],
        "mu": [[ring_to_text(e) for e in row] for row in cert.mu],
        "alpha": [[ring_to_text(e) for e in a.coords.entries] for a in cert.alpha],
        "basis_ops": [
            {
                "op": "add_right_multiple",
                "src": op.src,
                "dst": op.dst,
                "coeff": ring_to_text(op.coeff),
            }
            for op in cert.basis_ops
        ],
    }


def certificate_bytes(cert: Certificate) -> bytes:
    """Deterministic file encoding: same certificate, same bytes."""
    text = json.dumps(certificate_to_json(cert), indent=2, sort_keys=True)
    return (text + "\n").encode("utf-8")


def _require(condition: bool, message: str):
    if not condition:
        raise ParseError(message)


def _parse_ring_field(text, params: PresentationParams, where: str) -> RingElement:
    _require(isinstance(text, str), f"{where}: expected a ring-element string")
    try:
        return parse_ring(text, params)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc.raw_message}", exc.column) from None


def _validated_r(obj) -> list[int]:
    _require(isinstance(obj, dict), "certificate must be a JSON object")
    r = obj.get("r")
    _require(
        isinstance(r, list) and r and all(isinstance(v, int) for v in r),
        "field 'r' must be a nonempty list of integers",
    )
    return r


def certificate_from_json(obj: dict) -> Certificate:
    """Rebuild a certificate from its JSON tree.  Structural problems and
    malformed ring text raise ParseError; the mathematical content is NOT
    checked here (that is check_certificate's job)."""
    r = _validated_r(obj)
    params = PresentationParams(tuple(r))  # ParameterError on bad orders
    n = params.n
    version = obj.get("version")
    _require(version == CERTIFICATE_VERSION, f"unsupported certificate version {version!r}")

    t = obj.get("t")
    _require(
        isinstance(t, list) and len(t) == n and all(isinstance(v, int) for v in t),
        f"field 't' must be a list of {n} integers",
    )
    s = obj.get("s")
    _require(
        isinstance(s, list)
        and len(s) == n
        and all(
            isinstance(row, list) and len(row) == n and all(isinstance(v, int) for v in row)
            for row in s
        ),
        f"field 's' must be a {n}x{n} integer matrix",
    )
    crt = CrtData(tuple(t), tuple(tuple(row) for row in s))

    def coeff_matrix(name: str) -> tuple[tuple[RingElement, ...], ...]:
        raw = obj.get(name)
        _require(
            isinstance(raw, list) and len(raw) == n + 1
            and all(isinstance(row, list) and len(row) == n for row in raw),
            f"field '{name}' must be a {n + 1}x{n} matrix of ring-element strings",
        )
        return tuple(
            tuple(
                _parse_ring_field(raw[k][i], params, f"{name}[{k}][{i}]")
                for i in range(n)
            )
            for k in range(n + 1)
        )

    lam = coeff_matrix("lambda")
    mu = coeff_matrix("mu")

    raw_alpha = obj.get("alpha")
    _require(
        isinstance(raw_alpha, list) and len(raw_alpha) == n - 1
        and all(isinstance(row, list) and len(row) == 2 * n for row in raw_alpha),
        f"field 'alpha' must be a {n - 1}x{2 * n} matrix of ring-element strings",
    )
    alpha = tuple(
        C2Element(
            RingVector(
                tuple(
                    _parse_ring_field(raw_alpha[i][j], params, f"alpha[{i}][{j}]")
                    for j in range(2 * n)
                )
            )
        )
        for i in range(n - 1)
    )

    raw_ops = obj.get("basis_ops")
    _require(isinstance(raw_ops, list), "field 'basis_ops' must be a list")
    ops = []
    for idx, raw in enumerate(raw_ops):
        where = f"basis_ops[{idx}]"
        _require(isinstance(raw, dict), f"{where}: expected an object")
        _require(raw.get("op") == "add_right_multiple", f"{where}: unknown op kind")
        src, dst = raw.get("src"), raw.get("dst")
        _require(
            isinstance(src, int) and isinstance(dst, int) and 0 <= src < 2 * n
            and 0 <= dst < 2 * n and src != dst,
            f"{where}: 'src' and 'dst' must be distinct row indices below {2 * n}",
        )
        ops.append(
            AddRightMultiple(src, dst, _parse_ring_field(raw.get("coeff"), params, where))
        )
    return Certificate(params, crt, lam, mu, alpha, tuple(ops))


def check_certificate_json(obj) -> CheckReport:
    """Validate a raw JSON tree: bad presentation parameters give a
    rejection at the params stage, everything else defers to
    certificate_from_json + check_certificate."""
    r = _validated_r(obj)
    try:
        PresentationParams(tuple(r))
    except ParameterError as exc:
        return CheckReport(False, (CheckItem("params", False, str(exc)),))
    cert = certificate_from_json(obj)
    report = check_certificate(cert)
    items = (CheckItem("params", True, "orders valid and pairwise coprime"),) + report.items
    return CheckReport(report.accepted, items)


# ---------------------------------------------------------------------------
# chain-level export

@dataclass(frozen=True)
class ChainExport:
    """The boundary data of the 3-complex, with the basis change when n >= 2."""

    params: PresentationParams
    d1: RingVector
    d2: RingMatrix
    d3: tuple[C2Element, ...]
    p: RingMatrix | None
    q: RingMatrix | None

    @property
    def euler(self) -> int:
        return euler_characteristic(self.params.n)


def build_chain_export(params: PresentationParams) -> ChainExport:
    cert = build_certificate(params)
    if params.n >= 2:
        p, q, _ = basis_change(cert)
    else:
        p = q = None
    return ChainExport(params, d1_vector(params), d2_matrix(params), cert.alpha, p, q)


def _matrix_texts(m: RingMatrix) -> list[list[str]]:
    return [[ring_to_text(e) for e in row.entries] for row in m.rows]


def chain_export_to_json(export: ChainExport) -> dict:
    n = export.params.n
    obj = {
        "version": CERTIFICATE_VERSION,
        "r": list(export.params.r),
        "euler_characteristic": export.euler,
        "c1_labels": c1_labels(n),
        "c2_labels": c2_labels(n),
        "d3_labels": [f"alpha{i}" for i in range(1, n)],
        "d1": [ring_to_text(e) for e in export.d1.entries],
        "d2": _matrix_texts(export.d2),
        "d3": [[ring_to_text(e) for e in a.coords.entries] for a in export.d3],
        "P": _matrix_texts(export.p) if export.p is not None else None,
        "Q": _matrix_texts(export.q) if export.q is not None else None,
    }
    return obj


def chain_export_from_json(obj: dict) -> ChainExport:
    """Inverse of chain_export_to_json (labels are regenerated, not read)."""
    r = _validated_r(obj)
    params = PresentationParams(tuple(r))
    n = params.n
    _require(obj.get("version") == CERTIFICATE_VERSION, "unsupported version")

    def vector(raw, width: int, where: str) -> RingVector:
        _require(
            isinstance(raw, list) and len(raw) == width,
            f"{where}: expected {width} ring-element strings",
        )
        return RingVector(
            tuple(
                _parse_ring_field(raw[j], params, f"{where}[{j}]") for j in range(width)
            )
        )

    def matrix(raw, nrows: int, width: int, where: str) -> RingMatrix:
        _require(
            isinstance(raw, list) and len(raw) == nrows,
            f"{where}: expected {nrows} rows",
        )
        return RingMatrix(
            tuple(vector(raw[i], width, f"{where}[{i}]") for i in range(nrows))
        )

    d1 = vector(obj.get("d1"), 2 * n, "d1")
    d2 = matrix(obj.get("d2"), 2 * n, 2 * n, "d2")
    d3 = tuple(
        C2Element(vector(row, 2 * n, f"d3[{i}]"))
        for i, row in enumerate(obj.get("d3") or [])
    )
    _require(len(d3) == n - 1, f"d3 must have {n - 1} rows")
    raw_p, raw_q = obj.get("P"), obj.get("Q")
    if n >= 2:
        p = matrix(raw_p, 2 * n, 2 * n, "P")
        q = matrix(raw_q, 2 * n, 2 * n, "Q")
    else:
        _require(raw_p is None and raw_q is None, "P and Q must be null when n = 1")
        p = q = None
    return ChainExport(params, d1, d2, d3, p, q)
