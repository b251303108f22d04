"""Text formats for codes: Pauli rows, CSS 0/1 matrix pairs, and alist."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

from lcdist.algebra import BinaryMatrix, PauliVector, bits_of
from lcdist.codes import CssCode, StabilizerCode

_PAULI_CHARS = frozenset("IXYZ")


class FormatError(ValueError):
    """Malformed input file; carries the 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _header(comments: Sequence[str]) -> str:
    return "".join(f"# {c}\n" for c in comments)


def parse_pauli(text: str, name: str | None = None) -> StabilizerCode:
    """Parse ``n <int>`` followed by one ``{I,X,Y,Z}`` string per generator."""
    lines = _content_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise FormatError("empty code file") from None
    parts = first.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise FormatError(f"expected 'n <int>', got {first!r}", lineno, 1)
    n = int(parts[1])
    rows = []
    for lineno, line in lines:
        if len(line) != n:
            raise FormatError(f"row has length {len(line)}, expected {n}", lineno)
        for col, ch in enumerate(line, start=1):
            if ch not in _PAULI_CHARS:
                raise FormatError(f"invalid Pauli character {ch!r}", lineno, col)
        rows.append(PauliVector.from_label(line))
    return StabilizerCode(n, rows, name=name)


def format_pauli(code: StabilizerCode, comments: Sequence[str] = ()) -> str:
    body = "".join(r.label() + "\n" for r in code.rows)
    return _header(comments) + f"n {code.n}\n" + body


def read_pauli(path: str | Path) -> StabilizerCode:
    path = Path(path)
    return parse_pauli(path.read_text(encoding="utf-8"), name=path.stem)


def write_pauli(code: StabilizerCode, path: str | Path, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_pauli(code, comments), encoding="utf-8")


def parse_matrix(text: str, ncols: int | None = None) -> BinaryMatrix:
    """Dense 0/1 rows, one per line, no separators ('#' lines are skipped)."""
    rows = []
    for lineno, line in _content_lines(text):
        if ncols is None:
            ncols = len(line)
        if len(line) != ncols:
            raise FormatError(f"row has length {len(line)}, expected {ncols}", lineno)
        word = 0
        for col, ch in enumerate(line):
            if ch == "1":
                word |= 1 << col
            elif ch != "0":
                raise FormatError(f"invalid binary character {ch!r}", lineno, col + 1)
        rows.append(word)
    return BinaryMatrix(tuple(rows), ncols or 0)


def format_matrix(m: BinaryMatrix, comments: Sequence[str] = ()) -> str:
    return _header(comments) + "".join(s + "\n" for s in m.to_strings())


def read_css(gx_path: str | Path, gz_path: str | Path) -> CssCode:
    gx = parse_matrix(Path(gx_path).read_text(encoding="utf-8"))
    gz = parse_matrix(Path(gz_path).read_text(encoding="utf-8"))
    if gx.nrows and gz.nrows and gx.ncols != gz.ncols:
        raise FormatError(f"gx has {gx.ncols} columns but gz has {gz.ncols}")
    n = max(gx.ncols, gz.ncols)
    gx = BinaryMatrix(gx.rows, n)
    gz = BinaryMatrix(gz.rows, n)
    return CssCode(gx, gz, name=Path(gx_path).stem)


def write_css(css: CssCode, gx_path: str | Path, gz_path: str | Path, comments: Sequence[str] = ()) -> None:
    Path(gx_path).write_text(format_matrix(css.gx, comments), encoding="utf-8")
    Path(gz_path).write_text(format_matrix(css.gz, comments), encoding="utf-8")


def parse_alist(text: str) -> BinaryMatrix:
    """MacKay alist: ``N M``, max weights, weight lists, then column and row index lists.

    Indices are 1-based; zero entries pad short lists.
    """
    nums = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            try:
                nums.append(int(tok))
            except ValueError:
                raise FormatError(f"non-integer token {tok!r}", lineno) from None
    try:
        ncols, nrows = nums[0], nums[1]
        max_col_w, max_row_w = nums[2], nums[3]
        pos = 4
        col_w = nums[pos : pos + ncols]
        pos += ncols
        row_w = nums[pos : pos + nrows]
        pos += nrows
        if len(col_w) != ncols or len(row_w) != nrows:
            raise IndexError
        rows = [0] * nrows
        for c in range(ncols):
            entries = nums[pos : pos + max_col_w]
            pos += max_col_w
            if len(entries) != max_col_w:
                raise IndexError
            real = [e for e in entries if e != 0]
            if len(real) != col_w[c]:
                raise FormatError(f"column {c + 1} lists {len(real)} entries, weight says {col_w[c]}")
            for r in real:
                if not 1 <= r <= nrows:
                    raise FormatError(f"row index {r} out of range in column {c + 1}")
                rows[r - 1] |= 1 << c
    except IndexError:
        raise FormatError("truncated alist data") from None
    m = BinaryMatrix(tuple(rows), ncols)
    # the row section is redundant; cross-check it when present
    if len(nums) >= pos + nrows * max_row_w:
        for r in range(nrows):
            entries = [e for e in nums[pos : pos + max_row_w] if e != 0]
            pos += max_row_w
            if sorted(e - 1 for e in entries) != list(bits_of(rows[r])):
                raise FormatError(f"row {r + 1} disagrees with the column lists")
            if len(entries) != row_w[r]:
                raise FormatError(f"row {r + 1} lists {len(entries)} entries, weight says {row_w[r]}")
    return m


def format_alist(m: BinaryMatrix) -> str:
    cols = m.transpose()
    col_lists = [[i + 1 for i in bits_of(c)] for c in cols.rows]
    row_lists = [[j + 1 for j in bits_of(r)] for r in m.rows]
    max_c = max((len(c) for c in col_lists), default=0)
    max_r = max((len(r) for r in row_lists), default=0)

    def padded(entries, width):
        return " ".join(str(e) for e in entries + [0] * (width - len(entries)))

    lines = [
        f"{m.ncols} {m.nrows}",
        f"{max_c} {max_r}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    lines += [padded(c, max_c) for c in col_lists]
    lines += [padded(r, max_r) for r in row_lists]
    return "\n".join(lines) + "\n"


def read_alist(path: str | Path) -> BinaryMatrix:
    return parse_alist(Path(path).read_text(encoding="utf-8"))


def write_alist(m: BinaryMatrix, path: str | Path) -> None:
    Path(path).write_text(format_alist(m), encoding="utf-8")


def load_code(paths: Sequence[str | Path]) -> StabilizerCode | CssCode:
    """One path: Pauli text format.  Two paths: CSS pair ``(gx, gz)``."""
    if len(paths) == 1:
        return read_pauli(paths[0])
    if len(paths) == 2:
        return read_css(paths[0], paths[1])
    raise FormatError(f"expected one Pauli file or a gx/gz pair, got {len(paths)} paths")
