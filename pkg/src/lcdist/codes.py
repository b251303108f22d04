"""Stabilizer and CSS code models, predicates, and generators."""

from __future__ import annotations

import functools
import random
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from lcdist.algebra import BinaryMatrix, Echelon, PauliVector, kernel_words, parity, rank_gf2


class CodeError(ValueError):
    """Invalid code data (non-commuting rows, bad CSS pair, ...)."""


class GenerationError(RuntimeError):
    """A random generator ran out of attempts for the requested parameters."""


@dataclass(frozen=True)
class SparsityProfile:
    """Column weight bound ``j`` and row weight bound ``l``."""

    j: int
    l: int

    def __post_init__(self) -> None:
        if self.j < 0 or self.l < 0:
            raise ValueError("sparsity bounds must be non-negative")


def matrix_profile(m: BinaryMatrix) -> SparsityProfile:
    cols = m.column_weights()
    rows = m.row_weights()
    return SparsityProfile(max(cols, default=0), max(rows, default=0))


class StabilizerCode:
    """Stabilizer code given by (possibly redundant) generator rows.

    Rows are kept as given; ``k`` is computed from the GF(2) rank of the
    binary ``r x 2n`` row matrix.
    """

    def __init__(self, n: int, rows: Sequence[PauliVector] = (), name: str | None = None):
        rows = tuple(rows)
        for i, row in enumerate(rows):
            if row.n != n:
                raise CodeError(f"row {i} has length {row.n}, expected {n}")
        self.n = n
        self.rows = rows
        self.name = name

    @classmethod
    def from_labels(cls, labels: Sequence[str], name: str | None = None) -> StabilizerCode:
        if not labels:
            raise CodeError("at least one row is needed to infer n")
        rows = [PauliVector.from_label(s) for s in labels]
        return cls(rows[0].n, rows, name=name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StabilizerCode):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<StabilizerCode{tag} n={self.n} rows={len(self.rows)} k={self.k}>"

    @functools.cached_property
    def stabilizer_echelon(self) -> Echelon:
        """Echelon cache of the degeneracy group, rows in packed ``u | v << n`` form."""
        return Echelon(r.packed for r in self.rows)

    @functools.cached_property
    def check_words(self) -> tuple[int, ...]:
        """Rows in swapped form ``v | u << n``: ``parity(check & e.packed)`` is the syndrome bit."""
        n = self.n
        return tuple(r.v | (r.u << n) for r in self.rows)

    @property
    def r_eff(self) -> int:
        return self.stabilizer_echelon.rank

    @property
    def k(self) -> int:
        return self.n - self.r_eff

    @functools.cached_property
    def profile(self) -> SparsityProfile:
        return matrix_profile(BinaryMatrix(tuple(r.support for r in self.rows), self.n))

    def supports(self) -> list[int]:
        return [r.support for r in self.rows]


@dataclass(frozen=True)
class CssCode:
    """CSS code: X-type checks ``gx`` and Z-type checks ``gz`` with ``gx gz^T = 0``."""

    gx: BinaryMatrix
    gz: BinaryMatrix
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.gx.ncols != self.gz.ncols:
            raise CodeError(f"gx has {self.gx.ncols} columns but gz has {self.gz.ncols}")

    @property
    def n(self) -> int:
        return self.gx.ncols

    @property
    def k(self) -> int:
        return self.n - rank_gf2(self.gx) - rank_gf2(self.gz)

    def orthogonality_violations(self) -> list[tuple[int, int]]:
        return [
            (a, b)
            for a, rx in enumerate(self.gx.rows)
            for b, rz in enumerate(self.gz.rows)
            if parity(rx & rz)
        ]


@dataclass
class ValidationReport:
    valid: bool
    violations: list[tuple[int, int]]
    r_eff: int
    k: int
    profile: SparsityProfile

    def summary(self) -> str:
        status = "valid" if self.valid else "invalid"
        text = f"{status} r_eff={self.r_eff} k={self.k} j={self.profile.j} l={self.profile.l}"
        if self.violations:
            pairs = " ".join(f"({a},{b})" for a, b in self.violations)
            text += f" violations={pairs}"
        return text


def validate(code: StabilizerCode) -> ValidationReport:
    """Check pairwise commutation of the rows and report rank data."""
    checks = code.check_words
    packed = [r.packed for r in code.rows]
    violations = [
        (a, b)
        for a in range(len(packed))
        for b in range(a + 1, len(packed))
        if parity(checks[a] & packed[b])
    ]
    return ValidationReport(
        valid=not violations,
        violations=violations,
        r_eff=code.r_eff,
        k=code.k,
        profile=code.profile,
    )


def require_valid(code: StabilizerCode) -> None:
    report = validate(code)
    if not report.valid:
        raise CodeError(f"stabilizer rows do not commute: {report.violations[:10]}")


def _check_length(code: StabilizerCode, e: PauliVector) -> None:
    if e.n != code.n:
        raise ValueError(f"length mismatch: vector has n={e.n}, code has n={code.n}")


def syndrome(code: StabilizerCode, e: PauliVector) -> int:
    """Syndrome word; bit ``i`` is the trace inner product of row ``i`` with ``e``."""
    _check_length(code, e)
    x = e.packed
    out = 0
    for i, c in enumerate(code.check_words):
        out |= parity(c & x) << i
    return out


def is_logical(code: StabilizerCode, e: PauliVector) -> bool:
    """Zero syndrome and not in the degeneracy group."""
    _check_length(code, e)
    x = e.packed
    if any(parity(c & x) for c in code.check_words):
        return False
    return x not in code.stabilizer_echelon


@dataclass(frozen=True)
class NormalizerBasis:
    code: StabilizerCode
    gens: tuple[PauliVector, ...]

    @property
    def dimension(self) -> int:
        return len(self.gens)


def normalizer_basis(code: StabilizerCode) -> NormalizerBasis:
    """Basis of all Pauli vectors commuting with every row (dimension ``n + k``)."""
    words = kernel_words(code.check_words, 2 * code.n)
    return NormalizerBasis(code, tuple(PauliVector.from_packed(code.n, w) for w in words))


def from_css(css: CssCode) -> StabilizerCode:
    """Generic embedding: X rows from ``gx`` followed by Z rows from ``gz``."""
    bad = css.orthogonality_violations()
    if bad:
        raise CodeError(f"gx gz^T != 0; first offending row pairs {bad[:10]}")
    n = css.n
    rows = [PauliVector(n, 0, r) for r in css.gx.rows]
    rows += [PauliVector(n, r, 0) for r in css.gz.rows]
    return StabilizerCode(n, rows, name=css.name)


def hypergraph_product(h1: BinaryMatrix, h2: BinaryMatrix, name: str | None = None) -> CssCode:
    """Hypergraph product of two classical check matrices.

    ``gx = [h1 (x) I_n2 | I_m1 (x) h2^T]`` and ``gz = [I_n1 (x) h2 | h1^T (x) I_m2]``,
    on ``n1 n2 + m1 m2`` qubits.
    """
    a1, a2 = h1.to_array().astype(np.int64), h2.to_array().astype(np.int64)
    m1, n1 = a1.shape
    m2, n2 = a2.shape
    gx = np.hstack([np.kron(a1, np.eye(n2, dtype=np.int64)), np.kron(np.eye(m1, dtype=np.int64), a2.T)])
    gz = np.hstack([np.kron(np.eye(n1, dtype=np.int64), a2), np.kron(a1.T, np.eye(m2, dtype=np.int64))])
    css = CssCode(BinaryMatrix.from_array(gx % 2), BinaryMatrix.from_array(gz % 2), name=name)
    bad = css.orthogonality_violations()
    if bad:  # pragma: no cover - construction identity
        raise CodeError(f"hypergraph product is not orthogonal: {bad[:10]}")
    return css


def circulant_check(n: int, h: int) -> BinaryMatrix:
    """``n x n`` circulant whose row ``i`` is the check polynomial ``h`` shifted by ``i``.

    ``h`` is a coefficient bitmask: bit ``t`` is the coefficient of ``x**t``.
    """
    if h <= 0:
        raise ValueError("check polynomial must be nonzero")
    if h.bit_length() > n:
        raise ValueError(f"check polynomial degree {h.bit_length() - 1} must be < n={n}")
    mask = (1 << n) - 1
    rows = tuple(((h << i) | (h >> (n - i))) & mask for i in range(n))
    return BinaryMatrix(rows, n)


def poly_from_string(coeffs: str) -> int:
    """``"110"`` -> ``1 + x`` (coefficients listed from the constant term up)."""
    h = 0
    for i, ch in enumerate(coeffs):
        if ch not in "01":
            raise ValueError(f"invalid polynomial coefficient {ch!r}")
        if ch == "1":
            h |= 1 << i
    return h


def toric_code(L: int) -> CssCode:
    """``[[2L^2, 2, L]]`` toric code as the hypergraph product of two full ``1 + x`` circulants."""
    h = circulant_check(L, 0b11)
    return hypergraph_product(h, h, name=f"toric-{L}")


def steane_code() -> StabilizerCode:
    h = ["0001111", "0110011", "1010101"]
    labels = [s.replace("1", "X").replace("0", "I") for s in h]
    labels += [s.replace("1", "Z").replace("0", "I") for s in h]
    return StabilizerCode.from_labels(labels, name="steane")


def five_qubit_code() -> StabilizerCode:
    return StabilizerCode.from_labels(["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], name="five-qubit")


def random_stabilizer_code(
    n: int,
    r: int,
    profile: SparsityProfile | None = None,
    seed: int = 0,
    max_restarts: int = 200,
    max_attempts: int = 2000,
) -> StabilizerCode:
    """Random ``r``-row stabilizer code honouring the sparsity ``profile``.

    Each new row gets a random support that respects the remaining column
    capacity; the Pauli symbols on that support are then drawn from the
    solution space of the commutation constraints with all earlier rows, so
    commutation holds by construction.  Rows are kept only if they raise the
    rank.  Deterministic in ``seed``.
    """
    if r > n:
        raise ValueError(f"r={r} exceeds n={n}")
    if profile is None:
        profile = SparsityProfile(n, n)
    if r > 0 and (profile.j == 0 or profile.l == 0):
        raise GenerationError("profile admits no non-empty rows")
    rng = random.Random(seed)
    lo_weight = min(2, profile.l)
    for _ in range(max_restarts):
        rows = _try_generate(n, r, profile, rng, lo_weight, max_attempts)
        if rows is not None:
            return StabilizerCode(n, rows, name=f"random-n{n}-r{r}-s{seed}")
    raise GenerationError(
        f"no code with n={n}, r={r}, j={profile.j}, l={profile.l} after {max_restarts} restarts"
    )


def _try_generate(n, r, profile, rng, lo_weight, max_attempts):
    capacity = [profile.j] * n
    rows: list[PauliVector] = []
    echelon_rows: list[int] = []
    for _ in range(r):
        for _ in range(max_attempts):
            open_cols = [q for q in range(n) if capacity[q] > 0]
            if len(open_cols) < lo_weight:
                return None
            size = rng.randint(lo_weight, min(profile.l, len(open_cols)))
            supp = _weighted_support(open_cols, capacity, size, rng)
            cand = _random_commuting_on_support(n, supp, rows, rng)
            if cand is None:
                continue
            if Echelon(echelon_rows + [cand.packed]).rank == len(echelon_rows):
                continue
            rows.append(cand)
            echelon_rows.append(cand.packed)
            for q in supp:
                capacity[q] -= 1
            break
        else:
            return None
    return rows


def _weighted_support(open_cols, capacity, size, rng):
    # favour columns with more remaining capacity so column weights even out
    pool = list(open_cols)
    chosen = []
    for _ in range(size):
        q = rng.choices(pool, weights=[capacity[c] ** 2 for c in pool])[0]
        pool.remove(q)
        chosen.append(q)
    return sorted(chosen)


def _random_commuting_on_support(n, supp, rows, rng, tries=16):
    # variables: (u_q, v_q) for q in supp -> bit 2i (u), 2i+1 (v)
    constraints = []
    for row in rows:
        c = 0
        for i, q in enumerate(supp):
            if (row.v >> q) & 1:
                c |= 1 << (2 * i)
            if (row.u >> q) & 1:
                c |= 1 << (2 * i + 1)
        if c:
            constraints.append(c)
    basis = kernel_words(constraints, 2 * len(supp))
    if not basis:
        return None
    for _ in range(tries):
        x = 0
        for b in basis:
            if rng.getrandbits(1):
                x ^= b
        if all((x >> (2 * i)) & 3 for i in range(len(supp))):
            u = v = 0
            for i, q in enumerate(supp):
                u |= ((x >> (2 * i)) & 1) << q
                v |= ((x >> (2 * i + 1)) & 1) << q
            return PauliVector(n, u, v)
    return None


__all__ = [
    "CodeError",
    "CssCode",
    "GenerationError",
    "NormalizerBasis",
    "SparsityProfile",
    "StabilizerCode",
    "ValidationReport",
    "circulant_check",
    "five_qubit_code",
    "from_css",
    "hypergraph_product",
    "is_logical",
    "matrix_profile",
    "normalizer_basis",
    "poly_from_string",
    "random_stabilizer_code",
    "require_valid",
    "steane_code",
    "syndrome",
    "toric_code",
    "validate",
]
