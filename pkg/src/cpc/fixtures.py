"""Canonical small codes used throughout the tests and shipped as .cpc files.

Names follow the [[N, K, D]] convention: total qubits, data qubits, distance.
"""

from __future__ import annotations

from .gf2 import Gf2Matrix
from .model import CpcCode, GeneralCpcCode, from_classical

__all__ = [
    "three_bit_parity_check",
    "hamming_74_data_checks",
    "hamming_74_parity_check",
    "code_631",
    "code_1131_flawed",
    "code_1133",
    "code_1243",
    "code_1033_general",
    "code_1333_augmented",
    "code_1133_cnot_ready",
    "code_1243_cnot_ready",
    "steane_css_pair",
]


def three_bit_parity_check() -> Gf2Matrix:
    """Three bits, three pairwise parity checks; corrects one bit error."""
    return Gf2Matrix([[1, 0, 1], [1, 1, 0], [0, 1, 1]])


def hamming_74_data_checks() -> Gf2Matrix:
    """The four data bits of the [7,4] Hamming code against its three checks."""
    return Gf2Matrix([[1, 0, 1], [1, 1, 0], [1, 1, 1], [0, 1, 1]])


def hamming_74_parity_check() -> Gf2Matrix:
    """Full 3x7 parity-check matrix of the [7,4,3] Hamming code."""
    return Gf2Matrix(
        [
            [1, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ]
    )


_CROSS_3Q = [[0, 0, 1, 1], [1, 0, 0, 1], [0, 1, 0, 1], [1, 1, 1, 1]]


def code_631() -> CpcCode:
    """Bit-flip-only code: three data qubits, three bit checks, no phase side."""
    return CpcCode(
        mb=three_bit_parity_check(),
        mp=Gf2Matrix.zeros(3, 0),
        mc=Gf2Matrix.zeros(3, 0),
    )


def code_1131_flawed() -> CpcCode:
    """Eleven-qubit code whose cross checks all route through one qubit.

    Phase errors on three of the bit checks share a signature, so it cannot
    correct arbitrary single-qubit errors.
    """
    pad = Gf2Matrix([[1, 0, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0]])
    mc = Gf2Matrix([[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 1]])
    return CpcCode(mb=pad, mp=pad, mc=mc)


def code_1133() -> CpcCode:
    """Working [[11,3,3]] code: three data, four bit checks, four phase checks."""
    pad = Gf2Matrix([[1, 0, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0]])
    return from_classical(pad, pad, Gf2Matrix(_CROSS_3Q))


def code_1243() -> CpcCode:
    """[[12,4,3]] code built on the [7,4] Hamming data/check structure."""
    pad = Gf2Matrix(
        [[1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 0]]
    )
    return from_classical(pad, pad, Gf2Matrix(_CROSS_3Q))


def code_1033_general() -> GeneralCpcCode:
    """[[10,3,3]]: the [[11,3,3]] code with all check-phase checking merged
    into a single extra qubit (only expressible in the generalized form)."""
    mbs = Gf2Matrix(
        [
            [1, 0, 1, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0, 0],
            [0, 1, 1, 0, 0, 0, 0],
        ]
    )
    mps = Gf2Matrix(
        [
            [0, 0, 0, 1, 0, 1, 0],
            [0, 0, 0, 1, 1, 0, 0],
            [0, 0, 0, 0, 1, 1, 0],
        ]
    )
    mcs = Gf2Matrix(
        [
            [0, 0, 0, 0, 0, 1, 1],
            [0, 0, 0, 1, 0, 0, 1],
            [0, 0, 0, 0, 1, 0, 1],
            [0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0, 0],
        ]
    )
    return GeneralCpcCode(mbs=mbs, mps=mps, mcs=mcs)


def code_1333_augmented() -> CpcCode:
    """[[13,3,3]]: the [[11,3,3]] code plus the check pair that makes an
    in-cycle CNOT(d1, d2) decodable."""
    mb = Gf2Matrix([[1, 0, 1, 0, 1], [1, 1, 0, 0, 0], [0, 1, 1, 0, 0]])
    mp = Gf2Matrix([[1, 0, 1, 0, 0], [1, 1, 0, 0, 1], [0, 1, 1, 0, 0]])
    mc = Gf2Matrix(
        [
            [0, 0, 1, 1, 0],
            [1, 0, 0, 1, 0],
            [0, 1, 0, 1, 0],
            [1, 1, 1, 1, 1],
            [0, 0, 0, 1, 1],
        ]
    )
    return CpcCode(mb=mb, mp=mp, mc=mc)


def code_1133_cnot_ready() -> CpcCode:
    """Search-found [[11,3,3]] that tolerates an in-cycle CNOT(d1, d2)."""
    mirror = Gf2Matrix([[0, 0, 1, 1], [1, 0, 0, 1], [1, 1, 0, 0]])
    mc = Gf2Matrix([[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]])
    return CpcCode(mb=mirror, mp=mirror, mc=mc)


def code_1243_cnot_ready() -> CpcCode:
    """Search-found [[12,4,3]] that tolerates an in-cycle CNOT(d1, d2)."""
    mirror = Gf2Matrix([[0, 0, 1, 1], [0, 1, 0, 1], [1, 0, 0, 1], [1, 1, 0, 1]])
    mc = Gf2Matrix([[1, 0, 1, 0], [1, 0, 1, 1], [1, 1, 1, 0], [0, 1, 1, 1]])
    return CpcCode(mb=mirror, mp=mirror, mc=mc)


def steane_css_pair() -> tuple[Gf2Matrix, Gf2Matrix]:
    """CSS presentation of the [[7,1,3]] code: Z and X blocks are both the
    [7,4,3] Hamming parity-check matrix."""
    h = hamming_74_parity_check()
    return h, h
