"""Code definitions, validation, and the ``.cpc`` text format.

A split CPC code keeps two species of parity check qubit: bit checks (CNOT
targets, measured in the computational basis) and phase checks (CNOT
controls, measured in the conjugate basis).  A general CPC code has a single
species of check qubit that gathers bit information through CNOTs and phase
information through conjugate-basis controlled-Z gates.

Qubit ordering is fixed globally: data qubits first (0..k-1), then bit
checks, then phase checks; general codes order data first, then checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import Gf2Matrix

__all__ = [
    "CpcCode",
    "GeneralCpcCode",
    "ClassicalCode",
    "CpcFormatError",
    "InvalidCodeError",
    "validate",
    "require_valid",
    "parse",
    "serialize",
    "from_classical",
    "generalize",
]


class CpcFormatError(ValueError):
    """Raised for malformed ``.cpc`` input; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidCodeError(ValueError):
    """Raised when an operation is handed a code that fails validation."""


@dataclass(frozen=True)
class CpcCode:
    """Split CPC code defined by three adjacency matrices.

    ``mb`` (k x n_b) holds CNOTs from data qubits to bit checks, ``mp``
    (k x n_p) CNOTs from phase checks to data qubits, and ``mc`` (n_b x n_p)
    the cross checks between the two parity species.
    """

    mb: Gf2Matrix
    mp: Gf2Matrix
    mc: Gf2Matrix

    @property
    def k(self) -> int:
        return self.mb.rows

    @property
    def n_b(self) -> int:
        return self.mb.cols

    @property
    def n_p(self) -> int:
        return self.mp.cols

    @property
    def qubit_count(self) -> int:
        return self.k + self.n_b + self.n_p

    def data_index(self, j: int) -> int:
        return j

    def bit_index(self, i: int) -> int:
        return self.k + i

    def phase_index(self, i: int) -> int:
        return self.k + self.n_b + i

    def qubit_label(self, q: int) -> str:
        """1-based role label, e.g. 'd1', 'b2', 'p4'."""
        if q < self.k:
            return f"d{q + 1}"
        if q < self.k + self.n_b:
            return f"b{q - self.k + 1}"
        return f"p{q - self.k - self.n_b + 1}"


@dataclass(frozen=True)
class GeneralCpcCode:
    """Generalized CPC code with a single species of parity check qubit.

    ``mbs`` (k x n_c) holds CNOT edges, ``mps`` (k x n_c) conjugate-CZ edges
    between data and checks, and ``mcs`` (n_c x n_c, strictly upper
    triangular) conjugate-CZ edges between pairs of checks.
    """

    mbs: Gf2Matrix
    mps: Gf2Matrix
    mcs: Gf2Matrix

    @property
    def k(self) -> int:
        return self.mbs.rows

    @property
    def n_c(self) -> int:
        return self.mbs.cols

    @property
    def qubit_count(self) -> int:
        return self.k + self.n_c

    def check_index(self, i: int) -> int:
        return self.k + i

    def qubit_label(self, q: int) -> str:
        if q < self.k:
            return f"d{q + 1}"
        return f"c{q - self.k + 1}"


@dataclass(frozen=True)
class ClassicalCode:
    """Plain parity-check code: bits, checks over bit subsets, harmless bits.

    ``harmless`` flags bits derived from parity qubits that share no gate
    with any data qubit; errors there never reach the data and need no
    correction.
    """

    bit_count: int
    checks: tuple[tuple[int, frozenset[int]], ...]
    harmless: frozenset[int] = frozenset()

    def __post_init__(self):
        for check_id, members in self.checks:
            for b in members:
                if not 0 <= b < self.bit_count:
                    raise ValueError(
                        f"check {check_id} references bit {b} outside 0..{self.bit_count - 1}"
                    )


def validate(code: CpcCode | GeneralCpcCode) -> list[str]:
    """Return every invariant violation; an empty list means the code is well formed."""
    violations: list[str] = []
    if isinstance(code, CpcCode):
        if code.mp.rows != code.mb.rows:
            violations.append(
                f"mp has {code.mp.rows} rows but mb has {code.mb.rows} (both must equal k)"
            )
        if code.mc.rows != code.mb.cols:
            violations.append(
                f"mc has {code.mc.rows} rows but mb has {code.mb.cols} columns"
            )
        if code.mc.cols != code.mp.cols:
            violations.append(
                f"mc has {code.mc.cols} columns but mp has {code.mp.cols} columns"
            )
    elif isinstance(code, GeneralCpcCode):
        if code.mps.rows != code.mbs.rows:
            violations.append(
                f"mps has {code.mps.rows} rows but mbs has {code.mbs.rows}"
            )
        if code.mps.cols != code.mbs.cols:
            violations.append(
                f"mps has {code.mps.cols} columns but mbs has {code.mbs.cols}"
            )
        if code.mcs.rows != code.mcs.cols:
            violations.append(f"mcs is {code.mcs.rows}x{code.mcs.cols}, not square")
        elif code.mcs.rows != code.mbs.cols:
            violations.append(
                f"mcs is {code.mcs.rows}x{code.mcs.cols} but there are {code.mbs.cols} checks"
            )
        else:
            for i in range(code.mcs.rows):
                for j in range(i + 1):
                    if code.mcs[i, j]:
                        violations.append(
                            f"mcs not strictly upper triangular: entry ({i},{j}) is 1"
                        )
    else:
        violations.append(f"not a code object: {type(code).__name__}")
    return violations


def require_valid(code: CpcCode | GeneralCpcCode) -> None:
    violations = validate(code)
    if violations:
        raise InvalidCodeError("; ".join(violations))


def from_classical(h_bit: Gf2Matrix, h_phase: Gf2Matrix, mc: Gf2Matrix) -> CpcCode:
    """Assemble a split code from two classical parity-check matrices plus cross checks.

    ``h_bit`` and ``h_phase`` are bits-x-checks matrices for the bit-flip and
    phase codes respectively; both must have one row per data qubit.
    """
    if h_bit.rows != h_phase.rows:
        raise ValueError(
            f"row-count mismatch: h_bit has {h_bit.rows} rows, h_phase has {h_phase.rows}"
        )
    if mc.rows != h_bit.cols or mc.cols != h_phase.cols:
        raise ValueError(
            f"cross-check matrix must be {h_bit.cols}x{h_phase.cols}, got {mc.rows}x{mc.cols}"
        )
    return CpcCode(mb=h_bit, mp=h_phase, mc=mc)


def generalize(code: CpcCode) -> GeneralCpcCode:
    """Embed a split code into the generalized form.

    Bit checks become checks 0..n_b-1 and phase checks become checks
    n_b..n_b+n_p-1; CNOTs from phase checks to data become conjugate-CZ edges
    (the two gates agree once the phase checks are re-expressed in the
    computational basis), and cross checks land in the upper-triangular
    bit-by-phase block.
    """
    require_valid(code)
    k, n_b, n_p = code.k, code.n_b, code.n_p
    n_c = n_b + n_p
    mbs = Gf2Matrix.zeros(k, n_c).data.copy()
    mbs[:, :n_b] = code.mb.data
    mps = Gf2Matrix.zeros(k, n_c).data.copy()
    mps[:, n_b:] = code.mp.data
    mcs = Gf2Matrix.zeros(n_c, n_c).data.copy()
    mcs[:n_b, n_b:] = code.mc.data
    return GeneralCpcCode(mbs=Gf2Matrix(mbs), mps=Gf2Matrix(mps), mcs=Gf2Matrix(mcs))


# --- .cpc text format ------------------------------------------------------
#
#   CPC split            |  CPC general
#   data <k>             |  data <k>
#   bit <n_b>            |  checks <n_c>
#   phase <n_p>          |
#   B                    |  B            (k x n_c CNOT edges)
#   <k rows of n_b bits> |  ...
#   P                    |  P            (k x n_c conjugate-CZ edges)
#   ...                  |  ...
#   C                    |  C            (n_c x n_c cross conjugate-CZ edges)
#   ...                  |  ...
#
# Blank lines are ignored; '#' starts a comment line.


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_count(line: str, lineno: int, keyword: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise CpcFormatError(f"expected '{keyword} <count>', got {line!r}", lineno)
    try:
        value = int(parts[1])
    except ValueError:
        raise CpcFormatError(f"bad count in {line!r}", lineno) from None
    if value < 0:
        raise CpcFormatError(f"negative count in {line!r}", lineno)
    return value


def _parse_matrix(lines, rows: int, cols: int, section: str) -> Gf2Matrix:
    if cols == 0:
        # zero-width rows carry no text; the header fixes the shape
        return Gf2Matrix.zeros(rows, 0)
    collected = []
    for _ in range(rows):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise CpcFormatError(
                f"section {section}: expected {rows} rows, file ended early"
            ) from None
        if len(line) != cols:
            raise CpcFormatError(
                f"section {section}: expected {cols} columns, got {len(line)}", lineno
            )
        for col, ch in enumerate(line, start=1):
            if ch not in "01":
                raise CpcFormatError(
                    f"section {section}: non-binary character {ch!r} at column {col}",
                    lineno,
                )
        collected.append([int(ch) for ch in line])
    return Gf2Matrix.from_rows(collected, cols=cols)


def _expect_section(lines, name: str) -> None:
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise CpcFormatError(f"expected section header {name!r}, file ended") from None
    if line != name:
        raise CpcFormatError(f"expected section header {name!r}, got {line!r}", lineno)


def parse(text: str) -> CpcCode | GeneralCpcCode:
    """Parse the ``.cpc`` text format."""
    lines = _meaningful_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise CpcFormatError("empty input") from None
    if header == "CPC split":
        kind = "split"
    elif header == "CPC general":
        kind = "general"
    else:
        raise CpcFormatError(
            f"expected 'CPC split' or 'CPC general', got {header!r}", lineno
        )

    lineno, line = next(lines, (None, None))
    if line is None:
        raise CpcFormatError("missing 'data <k>' line")
    k = _parse_count(line, lineno, "data")

    if kind == "split":
        lineno, line = next(lines, (None, None))
        if line is None:
            raise CpcFormatError("missing 'bit <n_b>' line")
        n_b = _parse_count(line, lineno, "bit")
        lineno, line = next(lines, (None, None))
        if line is None:
            raise CpcFormatError("missing 'phase <n_p>' line")
        n_p = _parse_count(line, lineno, "phase")
        _expect_section(lines, "B")
        mb = _parse_matrix(lines, k, n_b, "B")
        _expect_section(lines, "P")
        mp = _parse_matrix(lines, k, n_p, "P")
        _expect_section(lines, "C")
        mc = _parse_matrix(lines, n_b, n_p, "C")
        code: CpcCode | GeneralCpcCode = CpcCode(mb=mb, mp=mp, mc=mc)
    else:
        lineno, line = next(lines, (None, None))
        if line is None:
            raise CpcFormatError("missing 'checks <n_c>' line")
        n_c = _parse_count(line, lineno, "checks")
        _expect_section(lines, "B")
        mbs = _parse_matrix(lines, k, n_c, "B")
        _expect_section(lines, "P")
        mps = _parse_matrix(lines, k, n_c, "P")
        _expect_section(lines, "C")
        mcs = _parse_matrix(lines, n_c, n_c, "C")
        code = GeneralCpcCode(mbs=mbs, mps=mps, mcs=mcs)
    extra = next(lines, None)
    if extra is not None:
        raise CpcFormatError(f"unexpected content after the C section: {extra[1]!r}", extra[0])
    return code


def serialize(code: CpcCode | GeneralCpcCode) -> str:
    """Serialize to the ``.cpc`` format; matrices are stored exactly as given."""
    out: list[str] = []
    if isinstance(code, CpcCode):
        out.append("CPC split")
        out.append(f"data {code.k}")
        out.append(f"bit {code.n_b}")
        out.append(f"phase {code.n_p}")
        for name, mat in (("B", code.mb), ("P", code.mp), ("C", code.mc)):
            out.append(name)
            if mat.cols:
                out.extend(mat.to_lines())
    elif isinstance(code, GeneralCpcCode):
        out.append("CPC general")
        out.append(f"data {code.k}")
        out.append(f"checks {code.n_c}")
        for name, mat in (("B", code.mbs), ("P", code.mps), ("C", code.mcs)):
            out.append(name)
            if mat.cols:
                out.extend(mat.to_lines())
    else:
        raise TypeError(f"not a code object: {type(code).__name__}")
    return "\n".join(out) + "\n"
