"""Bit-packed GF(2) and Pauli (binary symplectic) arithmetic.

Binary words are Python ints: bit ``i`` holds coordinate ``i``.  A Pauli
operator on ``n`` qubits is stored as two such words,

    u  (Z part),  v  (X part),

with the single-qubit map I=(0,0), X=(0,1), Z=(1,0), Y=(1,1) for ``(u_i, v_i)``.
Where a single word is more convenient the *packed* form ``u | v << n`` is used.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

_SYMBOL_BITS = {"I": (0, 0), "X": (0, 1), "Z": (1, 0), "Y": (1, 1)}
_BITS_SYMBOL = {bits: sym for sym, bits in _SYMBOL_BITS.items()}


def popcount(x: int) -> int:
    return x.bit_count()


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits_of(x: int) -> Iterable[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def word_from_string(bits: str) -> int:
    """``"110"`` -> 0b011 (the first character is coordinate 0)."""
    word = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            word |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid binary character {ch!r} at position {i}")
    return word


def word_to_string(word: int, length: int) -> str:
    return "".join("1" if (word >> i) & 1 else "0" for i in range(length))


@dataclass(frozen=True)
class PauliVector:
    """A Pauli operator up to phase, as the pair of binary words ``(u, v)``."""

    n: int
    u: int = 0
    v: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        limit = 1 << self.n
        if not (0 <= self.u < limit and 0 <= self.v < limit):
            raise ValueError(f"u and v must be binary words of length {self.n}")

    @classmethod
    def from_label(cls, label: str) -> PauliVector:
        u = v = 0
        for i, ch in enumerate(label.upper()):
            try:
                zu, xv = _SYMBOL_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli character {ch!r} at position {i}") from None
            u |= zu << i
            v |= xv << i
        return cls(len(label), u, v)

    @classmethod
    def from_packed(cls, n: int, packed: int) -> PauliVector:
        mask = (1 << n) - 1
        return cls(n, packed & mask, packed >> n)

    @classmethod
    def single(cls, n: int, qubit: int, symbol: str) -> PauliVector:
        zu, xv = _SYMBOL_BITS[symbol.upper()]
        return cls(n, zu << qubit, xv << qubit)

    @property
    def packed(self) -> int:
        return self.u | (self.v << self.n)

    @property
    def support(self) -> int:
        return self.u | self.v

    def label(self) -> str:
        return "".join(
            _BITS_SYMBOL[((self.u >> i) & 1, (self.v >> i) & 1)] for i in range(self.n)
        )

    def sort_key(self) -> str:
        """Key for the lexicographic order of the binary ``(u, v)`` form."""
        return word_to_string(self.u, self.n) + word_to_string(self.v, self.n)

    def __add__(self, other: PauliVector) -> PauliVector:
        _check_same_length(self, other)
        return PauliVector(self.n, self.u ^ other.u, self.v ^ other.v)

    def __str__(self) -> str:
        return self.label()


def _check_same_length(a: PauliVector, b: PauliVector) -> None:
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} != {b.n}")


def trace_inner_product(a: PauliVector, b: PauliVector) -> int:
    """Symplectic product ``u_a.v_b + v_a.u_b (mod 2)``; zero iff the operators commute."""
    _check_same_length(a, b)
    return parity((a.u & b.v) ^ (a.v & b.u))


def weight(e: PauliVector) -> int:
    """Number of qubits on which ``e`` acts non-trivially."""
    return popcount(e.u | e.v)


@dataclass(frozen=True)
class BinaryMatrix:
    """Dense binary matrix with each row packed into an int."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.ncols
        for i, r in enumerate(self.rows):
            if not 0 <= r < limit:
                raise ValueError(f"row {i} does not fit in {self.ncols} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @classmethod
    def from_strings(cls, lines: Sequence[str], ncols: int | None = None) -> BinaryMatrix:
        if ncols is None:
            ncols = len(lines[0]) if lines else 0
        for line in lines:
            if len(line) != ncols:
                raise ValueError(f"row {line!r} has length {len(line)}, expected {ncols}")
        return cls(tuple(word_from_string(line) for line in lines), ncols)

    @classmethod
    def from_array(cls, array) -> BinaryMatrix:
        a = np.asarray(array, dtype=np.uint8) % 2
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        weights = 1 << np.arange(a.shape[1], dtype=object)
        rows = tuple(int(np.dot(row.astype(object), weights)) for row in a)
        return cls(rows, int(a.shape[1]))

    @classmethod
    def identity(cls, n: int) -> BinaryMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BinaryMatrix:
        return cls((0,) * nrows, ncols)

    def to_array(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in bits_of(r):
                out[i, j] = 1
        return out

    def to_strings(self) -> list[str]:
        return [word_to_string(r, self.ncols) for r in self.rows]

    def transpose(self) -> BinaryMatrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits_of(r):
                cols[j] |= 1 << i
        return BinaryMatrix(tuple(cols), len(self.rows))

    def column_weights(self) -> list[int]:
        weights = [0] * self.ncols
        for r in self.rows:
            for j in bits_of(r):
                weights[j] += 1
        return weights

    def row_weights(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def mul_vec(self, x: int) -> int:
        """``M x`` over GF(2), returned as a word over the rows."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= parity(r & x) << i
        return out


class Echelon:
    """Immutable GF(2) basis of a row space, keyed by leading (highest) bit.

    Reduction against the basis never mutates it, so a single instance can be
    shared between workers.
    """

    __slots__ = ("_lead", "_rank")

    def __init__(self, rows: Iterable[int]) -> None:
        lead: dict[int, int] = {}
        for x in rows:
            while x:
                top = x.bit_length() - 1
                pivot = lead.get(top)
                if pivot is None:
                    lead[top] = x
                    break
                x ^= pivot
        self._lead = lead
        self._rank = len(lead)

    @property
    def rank(self) -> int:
        return self._rank

    def reduce(self, x: int) -> int:
        lead = self._lead
        while x:
            pivot = lead.get(x.bit_length() - 1)
            if pivot is None:
                return x
            x ^= pivot
        return 0

    def __contains__(self, x: int) -> bool:
        return self.reduce(x) == 0


def echelon(m: BinaryMatrix) -> Echelon:
    return Echelon(m.rows)


def rank_gf2(m: BinaryMatrix) -> int:
    return Echelon(m.rows).rank


def in_row_span(m: BinaryMatrix, x: int) -> bool:
    """True iff ``x`` is a GF(2) combination of the rows of ``m``."""
    if not 0 <= x < (1 << m.ncols):
        raise ValueError(f"word does not fit in {m.ncols} columns")
    return x in Echelon(m.rows)


def rref(rows: Iterable[int], ncols: int, order: Sequence[int] | None = None) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Pivots are searched over the columns in ``order`` (all columns, ascending,
    by default).  Returns ``(rows, pivot_columns)`` with ``rows[i]`` the unique
    basis row having a 1 in ``pivot_columns[i]``.
    """
    work = [r for r in rows if r]
    if order is None:
        order = range(ncols)
    pivots: list[int] = []
    top = 0
    for col in order:
        bit = 1 << col
        for i in range(top, len(work)):
            if work[i] & bit:
                break
        else:
            continue
        work[top], work[i] = work[i], work[top]
        p = work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= p
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def kernel_words(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{x : r.x = 0 for all r in rows}`` as packed words."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = 1 << free
        fbit = 1 << free
        for r, p in zip(reduced, pivots):
            if r & fbit:
                x |= 1 << p
        basis.append(x)
    return basis


def kernel_basis(m: BinaryMatrix) -> list[int]:
    """GF(2) basis of the null space ``{x : M x = 0}``; size ``ncols - rank``."""
    return kernel_words(m.rows, m.ncols)


def span(basis: Sequence[int]) -> Iterable[int]:
    """All 2**len(basis) combinations, in Gray-code order starting from 0."""
    x = 0
    yield x
    for i in range(1, 1 << len(basis)):
        x ^= basis[(i & -i).bit_length() - 1]
        yield x
