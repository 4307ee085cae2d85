"""Stabilizer generators, symplectic form, CSS conversion, logicals, distance.

Each bit check contributes one Z-type generator and each phase check one
X-type generator; the Z-type generators pick up extra support on phase checks
through the cross-propagation correction, which is exactly what makes the set
mutually commuting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .circuits import PauliString, conjugate_pauli, encode_circuit
from .gf2 import Gf2Matrix, multiply, row_space_equal, rref
from .model import CpcCode, GeneralCpcCode, require_valid
from .propagation import cross_propagation

__all__ = [
    "stabilizers_split",
    "stabilizers_general",
    "symplectic_matrix",
    "cpc_to_css",
    "css_to_cpc",
    "CssConversionError",
    "CssToCpcResult",
    "logical_operators",
    "code_distance",
    "stabilizer_to_text",
]


def stabilizers_split(code: CpcCode) -> list[PauliString]:
    """Measured stabilizer generators of a split code.

    Bit check i yields a Z-type generator supported on itself, the data
    qubits in column i of the bit matrix, and the phase checks in row i of
    the cross-propagation matrix.  Phase check i yields an X-type generator
    supported on itself, column i of the phase matrix, and column i of the
    cross-check matrix.
    """
    require_valid(code)
    n = code.qubit_count
    cross = cross_propagation(code)
    gens: list[PauliString] = []
    for i in range(code.n_b):
        z = 1 << code.bit_index(i)
        for j in range(code.k):
            if code.mb[j, i]:
                z |= 1 << j
        for p in range(code.n_p):
            if cross[i, p]:
                z |= 1 << code.phase_index(p)
        gens.append(PauliString(n, z_bits=z))
    for i in range(code.n_p):
        x = 1 << code.phase_index(i)
        for j in range(code.k):
            if code.mp[j, i]:
                x |= 1 << j
        for b in range(code.n_b):
            if code.mc[b, i]:
                x |= 1 << code.bit_index(b)
        gens.append(PauliString(n, x_bits=x))
    return gens


def stabilizers_general(gcode: GeneralCpcCode) -> list[PauliString]:
    """Measured stabilizer generators of a generalized code.

    Check i yields Z on itself and on its CNOT data neighbours, X on its
    conjugate-CZ data neighbours, and X on every check j with
    mcs[j,i] + mcs[i,j] + sum_k mps[k,j]*mbs[k,i] odd.  A self loop puts both
    Z and X on the check itself.  Signs match conjugation of the initial
    Z through the encoder: each data qubit wired to check i by both edge
    types contributes a factor -1 (reordering X past Z once per loop).
    """
    require_valid(gcode)
    n = gcode.qubit_count
    paths = multiply(gcode.mps.transpose(), gcode.mbs).data
    sym = gcode.mcs.data | gcode.mcs.data.T
    xfactor = (paths ^ sym).astype(np.uint8)
    loops = (gcode.mbs.data & gcode.mps.data).sum(axis=0)
    gens: list[PauliString] = []
    for i in range(gcode.n_c):
        z_bits = 1 << gcode.check_index(i)
        x_bits = 0
        for j in range(gcode.k):
            if gcode.mbs[j, i]:
                z_bits |= 1 << j
            if gcode.mps[j, i]:
                x_bits |= 1 << j
        for j in range(gcode.n_c):
            if xfactor[j, i]:
                x_bits |= 1 << gcode.check_index(j)
        gens.append(PauliString(n, x_bits, z_bits, phase=2 * (int(loops[i]) & 1)))
    return gens


def symplectic_matrix(code: CpcCode) -> tuple[Gf2Matrix, Gf2Matrix]:
    """Binary (Z | X) presentation of the split-code generators.

    Returns ``(g_z, g_x)`` where row i of ``g_z`` is the Z support of the
    i-th bit-check generator and row i of ``g_x`` the X support of the i-th
    phase-check generator, over the global qubit ordering.
    """
    gens = stabilizers_split(code)
    n = code.qubit_count
    z_rows = [[(g.z_bits >> q) & 1 for q in range(n)] for g in gens[: code.n_b]]
    x_rows = [[(g.x_bits >> q) & 1 for q in range(n)] for g in gens[code.n_b:]]
    return (
        Gf2Matrix.from_rows(z_rows, cols=n),
        Gf2Matrix.from_rows(x_rows, cols=n),
    )


def cpc_to_css(code: CpcCode) -> tuple[Gf2Matrix, Gf2Matrix]:
    """Present the stabilizer group as a CSS pair (Z-type rows, X-type rows)."""
    return symplectic_matrix(code)


class CssConversionError(ValueError):
    """Raised when a CSS presentation cannot be rewritten as a CPC code."""


@dataclass(frozen=True)
class CssToCpcResult:
    """Converted code plus the column permutation that was applied.

    ``permutation[new_qubit] = original_column``: the first k entries are the
    data columns, then the bit-check columns, then the phase-check columns.
    """

    code: CpcCode
    permutation: tuple[int, ...]


def _independent_pivot_sets(matrix: Gf2Matrix):
    """Yield column sets that index an invertible submatrix, in lex order."""
    rank = rref(matrix).rank
    cols = matrix.cols
    for combo in itertools.combinations(range(cols), rank):
        sub = Gf2Matrix(matrix.data[:, list(combo)])
        if rref(sub).rank == rank:
            yield combo


def _rank_on_columns(matrix: Gf2Matrix, columns: list[int]) -> int:
    if not columns:
        return 0
    return rref(Gf2Matrix(matrix.data[:, columns])).rank


def _reduce_with_pivots(matrix: Gf2Matrix, pivots: tuple[int, ...]) -> Gf2Matrix:
    """Row-reduce so the pivot columns become an identity; drop zero rows."""
    order = list(pivots) + [c for c in range(matrix.cols) if c not in pivots]
    reduced = rref(matrix, column_order=order).reduced
    keep = reduced.data.any(axis=1)
    return Gf2Matrix(reduced.data[keep])


def css_to_cpc(g_z: Gf2Matrix, g_x: Gf2Matrix) -> CssToCpcResult:
    """Rewrite a CSS stabilizer presentation as a split CPC code.

    Row-reduces both blocks, picks the lexicographically first pair of
    disjoint pivot-column sets (Z pivots become bit checks, X pivots phase
    checks, everything else data), and reads the code matrices off the
    reduced blocks.  The stabilizer group is preserved exactly; the result
    records the column permutation used.
    """
    if g_z.cols != g_x.cols:
        raise CssConversionError(
            f"column-count mismatch: {g_z.cols} vs {g_x.cols}"
        )
    n = g_z.cols
    commute = multiply(g_z, g_x.transpose())
    if not commute.is_zero():
        raise CssConversionError("Z and X generators do not commute")

    rank_x = rref(g_x).rank
    chosen = None
    for z_pivots in _independent_pivot_sets(g_z):
        rest = [c for c in range(n) if c not in z_pivots]
        if _rank_on_columns(g_x, rest) == rank_x:
            # lex-first X pivot set avoiding the Z pivots
            x_pivots: list[int] = []
            current: list[int] = []
            for c in rest:
                if _rank_on_columns(g_x, current + [c]) > len(x_pivots):
                    x_pivots.append(c)
                    current.append(c)
            chosen = (z_pivots, tuple(x_pivots))
            break
    if chosen is None:
        raise CssConversionError(
            "no disjoint pivot assignment exists for the Z and X blocks"
        )
    z_pivots, x_pivots = chosen

    rz = _reduce_with_pivots(g_z, z_pivots)
    rx = _reduce_with_pivots(g_x, x_pivots)
    data_cols = [c for c in range(n) if c not in z_pivots and c not in x_pivots]
    bit_cols = list(z_pivots)
    phase_cols = list(x_pivots)

    mb = Gf2Matrix(rz.data[:, data_cols].T) if rz.rows else Gf2Matrix.zeros(len(data_cols), 0)
    mp = Gf2Matrix(rx.data[:, data_cols].T) if rx.rows else Gf2Matrix.zeros(len(data_cols), 0)
    mc = (
        Gf2Matrix(rx.data[:, bit_cols].T)
        if rx.rows
        else Gf2Matrix.zeros(len(bit_cols), 0)
    )
    if mc.rows != len(bit_cols) or mc.cols != len(phase_cols):
        mc = Gf2Matrix.zeros(len(bit_cols), len(phase_cols))

    code = CpcCode(mb=mb, mp=mp, mc=mc)
    permutation = tuple(data_cols + bit_cols + phase_cols)

    # The conversion must reproduce the input group under the permutation.
    new_gz, new_gx = symplectic_matrix(code)
    inverse = [0] * n
    for new_q, orig in enumerate(permutation):
        inverse[orig] = new_q
    original_order = [inverse[c] for c in range(n)]
    got = np.vstack(
        [
            np.hstack([new_gz.data[:, original_order], np.zeros_like(new_gz.data)]),
            np.hstack([np.zeros_like(new_gx.data), new_gx.data[:, original_order]]),
        ]
    )
    want = np.vstack(
        [
            np.hstack([g_z.data, np.zeros_like(g_z.data)]),
            np.hstack([np.zeros_like(g_x.data), g_x.data]),
        ]
    )
    if not row_space_equal(Gf2Matrix(got), Gf2Matrix(want)):
        raise CssConversionError("converted code does not span the input group")
    return CssToCpcResult(code=code, permutation=permutation)


def logical_operators(code: CpcCode) -> tuple[list[PauliString], list[PauliString]]:
    """Logical X and Z operators, one pair per data qubit.

    Conjugating the bare data-qubit Paulis through the encoder yields
    operators that commute with every stabilizer and act as X/Z on the
    corresponding encoded qubit.
    """
    require_valid(code)
    enc = encode_circuit(code)
    n = code.qubit_count
    logical_x = [conjugate_pauli(enc, PauliString.single(n, j, "X")) for j in range(code.k)]
    logical_z = [conjugate_pauli(enc, PauliString.single(n, j, "Z")) for j in range(code.k)]
    return logical_x, logical_z


def _mask_basis_reduce(basis: list[int], vec: int) -> int:
    """Reduce ``vec`` against a list of leading-bit-sorted basis masks."""
    for b in basis:
        if vec & (1 << (b.bit_length() - 1)):
            vec ^= b
    return vec


def _build_mask_basis(vectors: list[int]) -> list[int]:
    basis: list[int] = []
    for v in vectors:
        v = _mask_basis_reduce(basis, v)
        if v:
            basis.append(v)
            basis.sort(key=int.bit_length, reverse=True)
    return basis


def code_distance(code: CpcCode | GeneralCpcCode, w_max: int = 4) -> int | None:
    """Minimum weight of a Pauli that commutes with all stabilizers but is not one.

    Exhaustive over all Pauli strings of weight 1..w_max; returns None when
    none exists in that range (distance greater than w_max).
    """
    require_valid(code)
    if isinstance(code, CpcCode):
        gens = stabilizers_split(code)
    else:
        gens = stabilizers_general(code)
    n = code.qubit_count
    # Symplectic masks (x | z<<n) for commutation tests and group membership.
    gen_masks = [(g.x_bits, g.z_bits) for g in gens]
    basis = _build_mask_basis([x | (z << n) for x, z in gen_masks])
    letters = (("X", 1, 0), ("Z", 0, 1), ("Y", 1, 1))
    for weight in range(1, w_max + 1):
        for qubits in itertools.combinations(range(n), weight):
            for assignment in itertools.product(letters, repeat=weight):
                x = z = 0
                for q, (_, has_x, has_z) in zip(qubits, assignment):
                    x |= has_x << q
                    z |= has_z << q
                commutes = all(
                    ((x & gz).bit_count() + (z & gx).bit_count()) % 2 == 0
                    for gx, gz in gen_masks
                )
                if not commutes:
                    continue
                if _mask_basis_reduce(basis, x | (z << n)) != 0:
                    return weight
    return None


def stabilizer_to_text(p: PauliString, namer) -> str:
    """Paper-style line: 'Z d1 d2 b1 p2 p4' for uniform generators.

    Mixed-type generators (possible for generalized codes) fall back to
    per-factor tokens like 'Z_d1 X_c3'.
    """
    letters = {p.letter(q) for q in range(p.qubit_count)} - {"I"}
    if not letters:
        return "I"
    if len(letters) == 1:
        letter = letters.pop()
        names = [namer(q) for q in range(p.qubit_count) if p.letter(q) != "I"]
        return " ".join([letter] + names)
    return p.label(namer)
