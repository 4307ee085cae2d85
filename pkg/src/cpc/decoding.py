"""Syndrome tables, decode tables, correctability verdicts, and ML decoding.

A syndrome is the tuple of parity-check measurement flips after one cycle:
for split codes the n_b bit-check outcomes followed by the n_p phase-check
outcomes, for generalized codes the n_c check outcomes.  Error propagation is
linear, so the syndrome (and the residual Pauli left on the data register) of
any error pattern is the XOR of single-qubit contributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .circuits import PauliString, conjugate_pauli, decode_circuit
from .gf2 import Gf2Matrix, multiply
from .model import (
    ClassicalCode,
    CpcCode,
    GeneralCpcCode,
    InvalidCodeError,
    require_valid,
)

__all__ = [
    "Syndrome",
    "ErrorRecord",
    "error_table",
    "single_error_records",
    "CollisionGroup",
    "CorrectabilityReport",
    "is_single_error_correcting",
    "DecodeTable",
    "DecodingObstruction",
    "decode_table",
    "decode",
    "CnotCompatibilityReport",
    "cnot_compatible",
    "augment_for_cnot",
    "IsingTerm",
    "IsingProblem",
    "IsingSolution",
    "ising_problem",
    "solve_ising",
    "MlDecodeResult",
    "ml_decode_exhaustive",
    "infer_check_errors",
]

Syndrome = tuple[int, ...]

_KINDS = ("X", "Y", "Z")


def _mask_to_tuple(mask: int, width: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(width))


@dataclass(frozen=True)
class ErrorRecord:
    """One single-qubit error: where it lands and what it leaves behind.

    ``sx``/``sz`` are masks of fired bit/phase checks (for generalized codes
    everything is in ``sx``); ``rx``/``rz`` are the residual X/Z masks left on
    the data register after the decode step.
    """

    qubit: int
    kind: str
    label: str
    sx: int
    sz: int
    rx: int
    rz: int
    harmful: bool

    def syndrome(self, n_first: int, n_second: int) -> Syndrome:
        return _mask_to_tuple(self.sx, n_first) + _mask_to_tuple(self.sz, n_second)


def _syndrome_widths(code: CpcCode | GeneralCpcCode) -> tuple[int, int]:
    if isinstance(code, CpcCode):
        return code.n_b, code.n_p
    return code.n_c, 0


def single_error_records(code: CpcCode | GeneralCpcCode) -> list[ErrorRecord]:
    """Syndrome and data residual of every single-qubit X, Y, Z error.

    Derived directly from the code matrices under the canonical gate order:
    data errors fire the checks wired to them; an X (bit-flip) on a phase
    check travels through its data neighbours onto bit checks and leaves X on
    those data qubits; a Z on a bit check does the mirror image.  Errors on a
    check in the basis it is protected by only flip its own measurement.
    """
    require_valid(code)
    records: list[ErrorRecord] = []
    if isinstance(code, CpcCode):
        mb_rows = code.mb.row_masks()
        mp_rows = code.mp.row_masks()
        mb_cols = code.mb.col_masks()
        mp_cols = code.mp.col_masks()
        mc_rows = code.mc.row_masks()
        mediated = multiply(code.mb.transpose(), code.mp)
        cross_cols = code.mc.add(mediated).col_masks()

        def add(qubit, label, x_part, z_part, harmful):
            # x_part/z_part: (syndrome, residual) of the pure X / pure Z error
            combos = {
                "X": (x_part[0], 0, x_part[1], 0),
                "Z": (0, z_part[0], 0, z_part[1]),
                "Y": (x_part[0], z_part[0], x_part[1], z_part[1]),
            }
            for kind in _KINDS:
                sx, sz, rx, rz = combos[kind]
                records.append(
                    ErrorRecord(qubit, kind, f"{kind}_{label}", sx, sz, rx, rz, harmful)
                )

        for j in range(code.k):
            add(j, f"d{j + 1}", (mb_rows[j], 1 << j), (mp_rows[j], 1 << j), True)
        for b in range(code.n_b):
            add(
                code.bit_index(b),
                f"b{b + 1}",
                (1 << b, 0),
                (mc_rows[b], mb_cols[b]),
                mb_cols[b] != 0,
            )
        for p in range(code.n_p):
            add(
                code.phase_index(p),
                f"p{p + 1}",
                (cross_cols[p], mp_cols[p]),
                (1 << p, 0),
                mp_cols[p] != 0,
            )
        return records

    mbs_rows = code.mbs.row_masks()
    mps_rows = code.mps.row_masks()
    mbs_cols = code.mbs.col_masks()
    mps_cols = code.mps.col_masks()
    paths = multiply(code.mps.transpose(), code.mbs).data
    sym = code.mcs.data | code.mcs.data.T
    net = paths ^ sym
    net_rows = [
        sum(int(net[c, d]) << d for d in range(code.n_c)) for c in range(code.n_c)
    ]
    for j in range(code.k):
        parts = {
            "X": (mbs_rows[j], 1 << j, 0),
            "Z": (mps_rows[j], 0, 1 << j),
            "Y": (mbs_rows[j] ^ mps_rows[j], 1 << j, 1 << j),
        }
        for kind in _KINDS:
            s, rx, rz = parts[kind]
            records.append(ErrorRecord(j, kind, f"{kind}_d{j + 1}", s, 0, rx, rz, True))
    for c in range(code.n_c):
        harmful = (mbs_cols[c] | mps_cols[c]) != 0
        z_synd = net_rows[c]
        parts = {
            "X": (1 << c, 0, 0),
            "Z": (z_synd, mps_cols[c], mbs_cols[c]),
            "Y": ((1 << c) ^ z_synd, mps_cols[c], mbs_cols[c]),
        }
        for kind in _KINDS:
            s, rx, rz = parts[kind]
            records.append(
                ErrorRecord(
                    code.check_index(c), kind, f"{kind}_c{c + 1}", s, 0, rx, rz, harmful
                )
            )
    return records


def _propagate_through_decode(code, error: PauliString) -> tuple[Syndrome, PauliString]:
    """Circuit route: conjugate the error through the decode circuit."""
    prop = conjugate_pauli(decode_circuit(code), error)
    k = code.k
    if isinstance(code, CpcCode):
        sx = (prop.x_bits >> k) & ((1 << code.n_b) - 1)
        sz = (prop.z_bits >> (k + code.n_b)) & ((1 << code.n_p) - 1)
        syndrome = _mask_to_tuple(sx, code.n_b) + _mask_to_tuple(sz, code.n_p)
    else:
        s = (prop.x_bits >> k) & ((1 << code.n_c) - 1)
        syndrome = _mask_to_tuple(s, code.n_c)
    residual = prop.restrict(list(range(k)))
    return syndrome, residual


def error_table(code: CpcCode | GeneralCpcCode) -> dict[PauliString, Syndrome]:
    """Map every single-qubit X, Y, Z error to its measured syndrome.

    Errors are inserted in the window between encode and decode and pushed
    through the decode circuit; bit checks are read in the computational
    basis (X flips) and phase checks in the conjugate basis (Z flips).
    """
    require_valid(code)
    n = code.qubit_count
    table: dict[PauliString, Syndrome] = {}
    for q in range(n):
        for kind in _KINDS:
            err = PauliString.single(n, q, kind)
            syndrome, _ = _propagate_through_decode(code, err)
            table[err] = syndrome
    return table


@dataclass(frozen=True)
class CollisionGroup:
    syndrome: Syndrome
    labels: tuple[str, ...]

    def __str__(self) -> str:
        bits = "".join(str(b) for b in self.syndrome)
        return f"syndrome {bits} shared by: {', '.join(self.labels)}"


@dataclass(frozen=True)
class CorrectabilityReport:
    ok: bool
    collisions: tuple[CollisionGroup, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_single_error_correcting(
    code: CpcCode | GeneralCpcCode,
) -> CorrectabilityReport:
    """Check that every harmful single-qubit error is uniquely identifiable.

    Harmful means: any error on a data qubit, or any error on a parity qubit
    that shares a gate with a data qubit.  Every such error needs a syndrome
    that is nonzero and distinct from every other single-error syndrome;
    harmless errors may share syndromes only with each other (and with the
    no-error outcome).
    """
    records = single_error_records(code)
    groups: dict[tuple[int, int], list[ErrorRecord]] = {}
    for rec in records:
        groups.setdefault((rec.sx, rec.sz), []).append(rec)
    n1, n2 = _syndrome_widths(code)
    collisions = []
    for (sx, sz), members in sorted(groups.items()):
        harmful = [m for m in members if m.harmful]
        if not harmful:
            continue
        if len(members) > 1 or (sx == 0 and sz == 0):
            labels = tuple(m.label for m in members)
            if sx == 0 and sz == 0:
                labels = ("no error",) + labels
            collisions.append(CollisionGroup(members[0].syndrome(n1, n2), labels))
    return CorrectabilityReport(ok=not collisions, collisions=tuple(collisions))


class DecodingObstruction(ValueError):
    """Raised when a decode table is requested for an ambiguous code."""

    def __init__(self, report: CorrectabilityReport):
        self.report = report
        detail = "; ".join(str(c) for c in report.collisions)
        super().__init__(f"code is not single-error correcting: {detail}")


@dataclass(frozen=True)
class TableEntry:
    correction: PauliString  # on the k data qubits
    category: str  # no_error | harmless | corrected | uncorrectable


@dataclass(frozen=True)
class DecodeTable:
    """Inversion of the single-error syndrome map.

    For split codes the bit-check and phase-check halves of a syndrome are
    decoded independently against the X-type and Z-type error tables, so
    mixed X/Z multi-qubit events (including Y errors) decompose cleanly.
    Syndromes with no single-error explanation decode as uncorrectable.
    """

    kind: str  # "split" | "general"
    k: int
    n_first: int
    n_second: int
    entries: dict[Syndrome, TableEntry] = field(repr=False)
    _x_side: dict[int, int] = field(repr=False)
    _z_side: dict[int, int] = field(repr=False)
    _general: dict[int, tuple[int, int]] = field(repr=False)

    def split_sides(self, syndrome: Syndrome) -> tuple[int, int]:
        if len(syndrome) != self.n_first + self.n_second:
            raise ValueError(
                f"syndrome length {len(syndrome)}, expected {self.n_first + self.n_second}"
            )
        first = sum(b << i for i, b in enumerate(syndrome[: self.n_first]))
        second = sum(b << i for i, b in enumerate(syndrome[self.n_first:]))
        return first, second

    def decode(self, syndrome: Syndrome) -> TableEntry:
        first, second = self.split_sides(syndrome)
        if first == 0 and second == 0:
            return TableEntry(PauliString.identity(self.k), "no_error")
        if self.kind == "split":
            rx, rz = 0, 0
            known = True
            if first:
                if first in self._x_side:
                    rx = self._x_side[first]
                else:
                    known = False
            if second:
                if second in self._z_side:
                    rz = self._z_side[second]
                else:
                    known = False
        else:
            if first in self._general:
                rx, rz = self._general[first]
                known = True
            else:
                rx, rz, known = 0, 0, False
        correction = PauliString(self.k, rx, rz)
        if not known:
            return TableEntry(correction, "uncorrectable")
        category = "harmless" if (rx == 0 and rz == 0) else "corrected"
        return TableEntry(correction, category)


def _resolve_group(members: list[ErrorRecord]) -> tuple[int, int]:
    """Pick the correction for a syndrome class, preferring the harmless reading."""
    residuals = {(m.rx, m.rz) for m in members}
    if (0, 0) in residuals:
        return (0, 0)
    first = min(members, key=lambda m: (m.qubit, _KINDS.index(m.kind)))
    return (first.rx, first.rz)


def decode_table(
    code: CpcCode | GeneralCpcCode, *, require_correcting: bool = True
) -> DecodeTable:
    """Build the syndrome -> correction table from the single-error model.

    With ``require_correcting`` (the default) an ambiguity between harmful
    errors raises :class:`DecodingObstruction` carrying the certificate.
    Otherwise colliding syndromes resolve to the harmless explanation when
    one exists, matching maximum likelihood under independent rare errors.
    """
    report = is_single_error_correcting(code)
    if require_correcting and not report.ok:
        raise DecodingObstruction(report)
    records = single_error_records(code)
    n1, n2 = _syndrome_widths(code)
    k = code.k

    entries: dict[Syndrome, TableEntry] = {}
    x_side: dict[int, int] = {}
    z_side: dict[int, int] = {}
    general: dict[int, tuple[int, int]] = {}

    groups: dict[tuple[int, int], list[ErrorRecord]] = {}
    for rec in records:
        groups.setdefault((rec.sx, rec.sz), []).append(rec)
    for (sx, sz), members in sorted(groups.items()):
        rx, rz = _resolve_group(members)
        syndrome = members[0].syndrome(n1, n2)
        if sx == 0 and sz == 0:
            entries[syndrome] = TableEntry(PauliString.identity(k), "no_error")
            continue
        category = "harmless" if (rx == 0 and rz == 0) else "corrected"
        entries[syndrome] = TableEntry(PauliString(k, rx, rz), category)
        if isinstance(code, CpcCode):
            if sz == 0 and sx:
                x_side[sx] = rx
            if sx == 0 and sz:
                z_side[sz] = rz
        else:
            general[sx] = (rx, rz)

    zero = tuple([0] * (n1 + n2))
    entries.setdefault(zero, TableEntry(PauliString.identity(k), "no_error"))
    return DecodeTable(
        kind="split" if isinstance(code, CpcCode) else "general",
        k=k,
        n_first=n1,
        n_second=n2,
        entries=entries,
        _x_side=x_side,
        _z_side=z_side,
        _general=general,
    )


def decode(table: DecodeTable, syndrome: Syndrome) -> TableEntry:
    """Look up the correction for a measured syndrome."""
    return table.decode(syndrome)


@dataclass(frozen=True)
class CnotCompatibilityReport:
    ok: bool
    collisions: tuple[CollisionGroup, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def cnot_compatible(code: CpcCode, control: int, target: int) -> CnotCompatibilityReport:
    """Can the code absorb the error pairs an in-cycle CNOT propagates?

    A bit-flip before the control becomes X on control and target together; a
    phase error before the target becomes Z on both.  Both propagated pairs
    must have syndromes distinct from every single-error syndrome, from each
    other, and from the no-error outcome.
    """
    require_valid(code)
    if control == target:
        raise ValueError("control and target must differ")
    if not (0 <= control < code.k and 0 <= target < code.k):
        raise ValueError(f"data indices must lie in 0..{code.k - 1}")
    base = is_single_error_correcting(code)
    if not base.ok:
        return CnotCompatibilityReport(ok=False, collisions=base.collisions)

    records = single_error_records(code)
    by_syndrome: dict[tuple[int, int], list[str]] = {}
    for rec in records:
        by_syndrome.setdefault((rec.sx, rec.sz), []).append(rec.label)
    rec_of = {(r.qubit, r.kind): r for r in records}
    pairs = [
        (
            (rec_of[(control, "X")].sx ^ rec_of[(target, "X")].sx, 0),
            f"X_d{control + 1} X_d{target + 1}",
        ),
        (
            (0, rec_of[(control, "Z")].sz ^ rec_of[(target, "Z")].sz),
            f"Z_d{control + 1} Z_d{target + 1}",
        ),
    ]
    n1, n2 = _syndrome_widths(code)
    collisions = []
    for idx, (synd, label) in enumerate(pairs):
        clash = list(by_syndrome.get(synd, []))
        if synd == (0, 0):
            clash.append("no error")
        if idx == 0 and synd == pairs[1][0]:
            clash.append(pairs[1][1])
        if clash:
            tup = _mask_to_tuple(synd[0], n1) + _mask_to_tuple(synd[1], n2)
            collisions.append(CollisionGroup(tup, tuple([label] + clash)))
    return CnotCompatibilityReport(ok=not collisions, collisions=tuple(collisions))


def augment_for_cnot(code: CpcCode, control: int, target: int) -> CpcCode:
    """Add a dedicated check pair so the code can host a CNOT(control, target).

    One new bit check watches only the control, one new phase check watches
    only the target, and the pair is tied by cross checks to each other and
    to the existing check-checking qubits (a bit check and a phase check that
    touch no data), so that errors on the new qubits stay distinguishable.
    """
    require_valid(code)
    if control == target:
        raise ValueError("control and target must differ")
    harmless_bits = [b for b, col in enumerate(code.mb.data.T) if not col.any()]
    harmless_phases = [p for p, col in enumerate(code.mp.data.T) if not col.any()]
    if not harmless_bits or not harmless_phases:
        raise InvalidCodeError(
            "augmentation needs a bit check and a phase check that touch no data"
        )
    b_star, p_star = harmless_bits[0], harmless_phases[0]

    k, n_b, n_p = code.k, code.n_b, code.n_p
    mb = [[code.mb[j, i] for i in range(n_b)] + [1 if j == control else 0] for j in range(k)]
    mp = [[code.mp[j, i] for i in range(n_p)] + [1 if j == target else 0] for j in range(k)]
    mc = []
    for b in range(n_b):
        mc.append([code.mc[b, i] for i in range(n_p)] + [1 if b == b_star else 0])
    mc.append([1 if i == p_star else 0 for i in range(n_p)] + [1])
    return CpcCode(
        mb=Gf2Matrix.from_rows(mb, cols=n_b + 1),
        mp=Gf2Matrix.from_rows(mp, cols=n_p + 1),
        mc=Gf2Matrix.from_rows(mc, cols=n_p + 1),
    )


# --- maximum-likelihood decoding of classical codes -------------------------


@dataclass(frozen=True)
class IsingTerm:
    spins: tuple[int, ...]
    coefficient: float


@dataclass(frozen=True)
class IsingProblem:
    """Spin-glass form of the decode problem: one spin per classical bit.

    Energy of a configuration s in {+1,-1}^n is
    ``sum_i fields[i]*s_i + sum_t coeff_t * prod(s_j for j in t.spins)``;
    spin -1 marks an errored bit.  Check errors are implicit: a check whose
    measured parity disagrees with the inferred bit errors was itself errored.
    """

    spin_count: int
    fields: tuple[float, ...]
    terms: tuple[IsingTerm, ...]


@dataclass(frozen=True)
class IsingSolution:
    spins: tuple[int, ...]
    energy: float
    bit_errors: frozenset[int]


def _check_priors(values, count, name) -> list[float]:
    values = list(values)
    if len(values) != count:
        raise ValueError(f"{name}: expected {count} probabilities, got {len(values)}")
    for p in values:
        if not 0.0 < p < 0.5:
            raise ValueError(f"{name}: probability {p} outside (0, 0.5)")
    return values


def ising_problem(
    cc: ClassicalCode,
    bit_priors,
    check_priors,
    measurements,
) -> IsingProblem:
    """Spin Hamiltonian whose ground state is the most likely error set.

    Field coefficients are log(p/(1-p)) per bit; each check contributes
    (-1)^measurement * log(p/(1-p)) on the product of its member spins.
    """
    bit_priors = _check_priors(bit_priors, cc.bit_count, "bit_priors")
    check_priors = _check_priors(check_priors, len(cc.checks), "check_priors")
    measurements = list(measurements)
    if len(measurements) != len(cc.checks):
        raise ValueError(
            f"expected {len(cc.checks)} measurements, got {len(measurements)}"
        )
    fields = tuple(math.log(p / (1.0 - p)) for p in bit_priors)
    terms = []
    for (check_id, members), p, m in zip(cc.checks, check_priors, measurements):
        coeff = (-1) ** (m & 1) * math.log(p / (1.0 - p))
        terms.append(IsingTerm(spins=tuple(sorted(members)), coefficient=coeff))
    return IsingProblem(spin_count=cc.bit_count, fields=fields, terms=tuple(terms))


def solve_ising(problem: IsingProblem) -> IsingSolution:
    """Exhaustive ground-state search; ties break to the smallest error set.

    Error sets are compared as sorted index tuples, so fewer/earlier flipped
    spins win deterministically.
    """
    n = problem.spin_count
    if n > 24:
        raise ValueError(f"instance too large for exhaustive search: {n} spins")
    best = None
    for bits in range(1 << n):
        spins = [1 - 2 * ((bits >> i) & 1) for i in range(n)]
        energy = sum(f * s for f, s in zip(problem.fields, spins))
        for term in problem.terms:
            prod = term.coefficient
            for j in term.spins:
                prod *= spins[j]
            energy += prod
        errors = tuple(i for i in range(n) if spins[i] == -1)
        key = (energy, errors)
        if best is None or key[0] < best[0][0] - 1e-12 or (
            abs(key[0] - best[0][0]) <= 1e-12 and errors < best[0][1]
        ):
            best = (key, spins)
    (energy, errors), spins = best
    return IsingSolution(
        spins=tuple(spins), energy=energy, bit_errors=frozenset(errors)
    )


@dataclass(frozen=True)
class MlDecodeResult:
    bit_errors: frozenset[int]
    check_errors: frozenset[int]
    log_likelihood: float


def infer_check_errors(cc: ClassicalCode, syndrome, bit_errors) -> frozenset[int]:
    """Checks whose measured parity disagrees with the inferred bit errors."""
    flipped = set(bit_errors)
    errored = set()
    for (check_id, members), m in zip(cc.checks, syndrome):
        parity = len(members & flipped) % 2
        if parity != (m & 1):
            errored.add(check_id)
    return frozenset(errored)


def ml_decode_exhaustive(
    cc: ClassicalCode,
    syndrome,
    bit_priors,
    check_priors,
) -> MlDecodeResult:
    """Most likely error set explaining the syndrome, by direct enumeration.

    Maximizes ``sum log(p/(1-p))`` over bit and check errors subject to the
    measured parities; the check errors are determined by the bit choices, so
    the search space is the 2^bit_count bit-error patterns.  Ties break to
    the lexicographically smallest bit-error set.
    """
    bit_priors = _check_priors(bit_priors, cc.bit_count, "bit_priors")
    check_priors = _check_priors(check_priors, len(cc.checks), "check_priors")
    syndrome = list(syndrome)
    if len(syndrome) != len(cc.checks):
        raise ValueError(f"expected {len(cc.checks)} syndrome bits")
    n = cc.bit_count
    if n > 24:
        raise ValueError(f"instance too large for exhaustive search: {n} bits")
    bit_weight = [math.log(p / (1.0 - p)) for p in bit_priors]
    check_weight = [math.log(p / (1.0 - p)) for p in check_priors]
    member_masks = [
        sum(1 << b for b in members) for _, members in cc.checks
    ]
    best = None
    for pattern in range(1 << n):
        score = 0.0
        for i in range(n):
            if (pattern >> i) & 1:
                score += bit_weight[i]
        check_errs = []
        for idx, mask in enumerate(member_masks):
            parity = (pattern & mask).bit_count() & 1
            if parity != (syndrome[idx] & 1):
                check_errs.append(idx)
                score += check_weight[idx]
        errors = tuple(i for i in range(n) if (pattern >> i) & 1)
        key = (-score, errors)
        if best is None or key[0] < best[0] - 1e-12 or (
            abs(key[0] - best[0]) <= 1e-12 and errors < best[1]
        ):
            best = (-score, errors, frozenset(check_errs), score)
    _, errors, check_errs, score = best
    return MlDecodeResult(
        bit_errors=frozenset(errors),
        check_errors=check_errs,
        log_likelihood=score,
    )
