"""Clifford circuits for code cycles, and Pauli propagation through them.

Gates are limited to what a parity-check cycle needs: CNOT, CZ, the
conjugate-basis controlled-Z (``CCZX``, i.e. CZ conjugated by Hadamards on
both qubits), and Hadamard.  A circuit is an ordered gate list applied left
to right; ``a + b`` runs ``a`` first and then ``b``.

Pauli operators are represented as X/Z bitmask pairs with a global phase
that is a power of i; the operator is ``i**phase * prod_q X_q^x Z_q^z`` with
X written before Z on each qubit (so Y carries phase exponent 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import CpcCode, GeneralCpcCode, require_valid

__all__ = [
    "Gate",
    "Circuit",
    "PauliString",
    "OPAQUE",
    "cnot",
    "cz",
    "cczx",
    "hadamard",
    "encode_circuit",
    "decode_circuit",
    "conjugate_pauli",
    "cnot_commutator",
    "circuits_equal",
    "circuit_to_text",
    "circuit_from_text",
]

_TWO_QUBIT_KINDS = ("CNOT", "CZ", "CCZX")
_GATE_KINDS = _TWO_QUBIT_KINDS + ("H",)


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        expected = 1 if self.kind == "H" else 2
        if len(self.qubits) != expected:
            raise ValueError(f"{self.kind} takes {expected} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubits must be distinct: {self.qubits}")


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def cz(a: int, b: int) -> Gate:
    return Gate("CZ", (a, b))


def cczx(a: int, b: int) -> Gate:
    """Conjugate-basis controlled-Z; symmetric in its two qubits."""
    return Gate("CCZX", (a, b))


def hadamard(q: int) -> Gate:
    return Gate("H", (q,))


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        for g in self.gates:
            if any(q < 0 or q >= self.qubit_count for q in g.qubits):
                raise ValueError(f"gate {g} outside 0..{self.qubit_count - 1}")

    def __add__(self, other: Circuit) -> Circuit:
        if self.qubit_count != other.qubit_count:
            raise ValueError("cannot concatenate circuits with different qubit counts")
        return Circuit(self.qubit_count, self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def reversed(self) -> Circuit:
        return Circuit(self.qubit_count, tuple(reversed(self.gates)))


@dataclass(frozen=True)
class PauliString:
    """N-qubit Pauli with bitmask support and an i-power phase."""

    qubit_count: int
    x_bits: int = 0
    z_bits: int = 0
    phase: int = 0

    def __post_init__(self):
        limit = 1 << self.qubit_count
        if not (0 <= self.x_bits < limit and 0 <= self.z_bits < limit):
            raise ValueError("mask exceeds qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> PauliString:
        bit = 1 << qubit
        if kind == "X":
            return cls(n, x_bits=bit)
        if kind == "Z":
            return cls(n, z_bits=bit)
        if kind == "Y":
            return cls(n, x_bits=bit, z_bits=bit, phase=1)
        raise ValueError(f"kind must be X, Y or Z, got {kind!r}")

    def __mul__(self, other: PauliString) -> PauliString:
        if self.qubit_count != other.qubit_count:
            raise ValueError("qubit-count mismatch")
        extra = 2 * (self.z_bits & other.x_bits).bit_count()
        return PauliString(
            self.qubit_count,
            self.x_bits ^ other.x_bits,
            self.z_bits ^ other.z_bits,
            self.phase + other.phase + extra,
        )

    def commutes_with(self, other: PauliString) -> bool:
        anti = (self.x_bits & other.z_bits).bit_count() + (
            self.z_bits & other.x_bits
        ).bit_count()
        return anti % 2 == 0

    def letter(self, q: int) -> str:
        x = (self.x_bits >> q) & 1
        z = (self.z_bits >> q) & 1
        return "IXZY"[x + 2 * z]

    @property
    def support(self) -> int:
        return self.x_bits | self.z_bits

    def weight(self) -> int:
        return self.support.bit_count()

    def restrict(self, qubits: list[int]) -> PauliString:
        """Project onto the named qubits, reindexed 0..len-1; drops the phase."""
        x = z = 0
        for new_q, q in enumerate(qubits):
            x |= ((self.x_bits >> q) & 1) << new_q
            z |= ((self.z_bits >> q) & 1) << new_q
        return PauliString(len(qubits), x, z)

    def label(self, namer=None) -> str:
        """Human-readable form like 'X_d1 X_b2'; identity reads '-'."""
        if namer is None:
            namer = lambda q: f"q{q + 1}"
        parts = []
        for q in range(self.qubit_count):
            letter = self.letter(q)
            if letter != "I":
                parts.append(f"{letter}_{namer(q)}")
        return " ".join(parts) if parts else "-"


class _Opaque:
    """Marker for the CNOT commutator case that is not itself a CNOT circuit."""

    def __repr__(self) -> str:  # pragma: no cover
        return "OPAQUE"


OPAQUE = _Opaque()


# Conjugation images U g U^dagger of single-qubit X/Z generators for each
# gate, as (x_mask, z_mask) pairs over the gate's own qubits.  All images
# carry phase 0; phases only appear when products are reordered.
def _gate_images(gate: Gate) -> dict[tuple[str, int], tuple[int, int]]:
    if gate.kind == "H":
        (q,) = gate.qubits
        bit = 1 << q
        return {("X", q): (0, bit), ("Z", q): (bit, 0)}
    a, b = gate.qubits
    abit, bbit = 1 << a, 1 << b
    if gate.kind == "CNOT":
        return {
            ("X", a): (abit | bbit, 0),
            ("Z", a): (0, abit),
            ("X", b): (bbit, 0),
            ("Z", b): (0, abit | bbit),
        }
    if gate.kind == "CZ":
        return {
            ("X", a): (abit, bbit),
            ("Z", a): (0, abit),
            ("X", b): (bbit, abit),
            ("Z", b): (0, bbit),
        }
    # CCZX: Z on either qubit picks up X on the other; X components are fixed.
    return {
        ("X", a): (abit, 0),
        ("Z", a): (bbit, abit),
        ("X", b): (bbit, 0),
        ("Z", b): (abit, bbit),
    }


def _conjugate_gate(gate: Gate, p: PauliString) -> PauliString:
    touched = 0
    for q in gate.qubits:
        touched |= 1 << q
    if not (p.support & touched):
        return p
    images = _gate_images(gate)
    # Factor out the touched part (qubit-disjoint factors commute freely),
    # conjugate it as an ordered product of generator images, and recombine.
    acc_x = acc_z = 0
    phase = p.phase
    for q in sorted(gate.qubits):
        for kind, mask in (("X", p.x_bits), ("Z", p.z_bits)):
            if (mask >> q) & 1:
                gx, gz = images[(kind, q)]
                phase += 2 * (acc_z & gx).bit_count()
                acc_x ^= gx
                acc_z ^= gz
    return PauliString(
        p.qubit_count,
        (p.x_bits & ~touched) | acc_x,
        (p.z_bits & ~touched) | acc_z,
        phase,
    )


def conjugate_pauli(circuit: Circuit, p: PauliString) -> PauliString:
    """Return U p U^dagger for the circuit unitary U (gates applied in list order)."""
    if p.qubit_count != circuit.qubit_count:
        raise ValueError(
            f"pauli is on {p.qubit_count} qubits, circuit on {circuit.qubit_count}"
        )
    for gate in circuit.gates:
        p = _conjugate_gate(gate, p)
    return p


def cnot_commutator(g1: Gate, g2: Gate, qubit_count: int | None = None):
    """Operational commutator g1 g2 g1 g2 of two CNOTs, resolved as a circuit.

    Sharing the target of one with the control of the other yields a single
    CNOT; disjoint gates or gates sharing same-role qubits commute (empty
    circuit); the doubly-shared case returns the OPAQUE marker.
    """
    if g1.kind != "CNOT" or g2.kind != "CNOT":
        raise ValueError("cnot_commutator requires two CNOT gates")
    i, j = g1.qubits
    k, l = g2.qubits
    if qubit_count is None:
        qubit_count = max(i, j, k, l) + 1
    if j == k and i == l:
        return OPAQUE
    if j == k and i != l:
        return Circuit(qubit_count, (cnot(i, l),))
    if i == l and j != k:
        return Circuit(qubit_count, (cnot(k, j),))
    return Circuit(qubit_count, ())


def circuits_equal(c1: Circuit, c2: Circuit) -> bool:
    """True iff the circuits implement the same unitary up to global phase.

    Conjugating the 2N single-qubit generators determines a Clifford up to
    global phase, so exact agreement of all images (signs included) is the
    right test.
    """
    if c1.qubit_count != c2.qubit_count:
        raise ValueError("qubit-count mismatch")
    n = c1.qubit_count
    for q in range(n):
        for kind in ("X", "Z"):
            gen = PauliString.single(n, q, kind)
            if conjugate_pauli(c1, gen) != conjugate_pauli(c2, gen):
                return False
    return True


def encode_circuit(code: CpcCode | GeneralCpcCode) -> Circuit:
    """Parity-gathering circuit in canonical block order B, P, C.

    Within a block, gates are ordered by check index and then data index.
    Blocks commute internally, so only the block order affects semantics.
    """
    require_valid(code)
    gates: list[Gate] = []
    if isinstance(code, CpcCode):
        for i in range(code.n_b):
            for j in range(code.k):
                if code.mb[j, i]:
                    gates.append(cnot(j, code.bit_index(i)))
        for i in range(code.n_p):
            for j in range(code.k):
                if code.mp[j, i]:
                    gates.append(cnot(code.phase_index(i), j))
        for i in range(code.n_p):
            for b in range(code.n_b):
                if code.mc[b, i]:
                    gates.append(cnot(code.phase_index(i), code.bit_index(b)))
    else:
        for i in range(code.n_c):
            for j in range(code.k):
                if code.mbs[j, i]:
                    gates.append(cnot(j, code.check_index(i)))
        for i in range(code.n_c):
            for j in range(code.k):
                if code.mps[j, i]:
                    gates.append(cczx(j, code.check_index(i)))
        for a in range(code.n_c):
            for b in range(code.n_c):
                if code.mcs[a, b]:
                    gates.append(cczx(code.check_index(a), code.check_index(b)))
    return Circuit(code.qubit_count, tuple(gates))


def decode_circuit(code: CpcCode | GeneralCpcCode) -> Circuit:
    """Exact reverse of the encode sequence (every gate is self-inverse)."""
    return encode_circuit(code).reversed()


def circuit_to_text(circuit: Circuit) -> str:
    """One gate per line, e.g. 'CNOT 0 4'."""
    lines = [f"qubits {circuit.qubit_count}"]
    for g in circuit.gates:
        lines.append(" ".join([g.kind] + [str(q) for q in g.qubits]))
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    qubit_count = None
    gates: list[Gate] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "qubits":
            qubit_count = int(parts[1])
            continue
        kind, qubits = parts[0], tuple(int(t) for t in parts[1:])
        gates.append(Gate(kind, qubits))
    if qubit_count is None:
        qubit_count = 1 + max((q for g in gates for q in g.qubits), default=-1)
    return Circuit(qubit_count, tuple(gates))
