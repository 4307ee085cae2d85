"""Code-cycle simulation under stochastic and coherent error models.

The stochastic model follows the cycle protocol exactly: encode, sample
independent X/Z Pauli errors mid-window, decode, read the checks, apply the
decode-table correction, reset, repeat.  Because every gate is Clifford and
every error is a Pauli, a cycle maps the product state (data) x (reference
checks) to another such product state with deterministic check outcomes, so
the default backend tracks the accumulated data-register Pauli frame and is
exactly equivalent to the full statevector evolution (the ``statevector``
backend, kept as the cross-checking oracle and for coherent errors).

Error-free cycles are the identity and are skipped by sampling the cycles on
which at least one error fires; the per-cycle error law is unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from .circuits import Circuit
from .decoding import DecodeTable, decode_table, single_error_records
from .model import CpcCode, GeneralCpcCode, require_valid

__all__ = [
    "ErrorModel",
    "SimConfig",
    "SimResult",
    "simulate",
    "HalfLifeFit",
    "fit_half_life",
    "CoherentFidelity",
    "coherent_fidelity_631",
    "haar_state",
    "apply_gate",
    "apply_circuit",
    "apply_pauli_masks",
    "measure_qubit",
]


# --- small dense statevector engine -----------------------------------------
#
# Little-endian convention: basis index i assigns qubit q the bit (i >> q) & 1.


def zero_state(n: int) -> np.ndarray:
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


def _parity(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> shift
    return v & 1


def apply_1q(state: np.ndarray, q: int, matrix: np.ndarray) -> np.ndarray:
    idx = np.arange(state.size)
    low = idx[(idx >> q) & 1 == 0]
    high = low | (1 << q)
    a, b = state[low], state[high]
    out = state.copy()
    out[low] = matrix[0, 0] * a + matrix[0, 1] * b
    out[high] = matrix[1, 0] * a + matrix[1, 1] * b
    return out


_H_MATRIX = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)


def apply_gate(state: np.ndarray, gate) -> np.ndarray:
    idx = np.arange(state.size)
    if gate.kind == "H":
        return apply_1q(state, gate.qubits[0], _H_MATRIX)
    a, b = gate.qubits
    if gate.kind == "CNOT":
        sel = (idx >> a) & 1 == 1
        out = state.copy()
        out[idx[sel]] = state[(idx ^ (1 << b))[sel]]
        return out
    if gate.kind == "CZ":
        out = state.copy()
        both = (((idx >> a) & 1) & ((idx >> b) & 1)) == 1
        out[both] = -out[both]
        return out
    if gate.kind == "CCZX":
        for q in (a, b):
            state = apply_1q(state, q, _H_MATRIX)
        state = apply_gate(state, type(gate)("CZ", (a, b)))
        for q in (a, b):
            state = apply_1q(state, q, _H_MATRIX)
        return state
    raise ValueError(f"unknown gate kind {gate.kind!r}")


def apply_circuit(state: np.ndarray, circuit: Circuit) -> np.ndarray:
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state


def apply_pauli_masks(state: np.ndarray, x_mask: int, z_mask: int) -> np.ndarray:
    """Apply prod X^x Z^z (phase-exact up to the operator's own convention)."""
    idx = np.arange(state.size)
    signs = 1.0 - 2.0 * _parity(idx & z_mask)
    out = np.empty_like(state)
    out[idx ^ x_mask] = signs * state
    return out


def measure_qubit(
    state: np.ndarray, q: int, basis: str, rng: np.random.Generator
) -> tuple[int, np.ndarray]:
    """Projective measurement with Born-rule sampling; returns (outcome, state)."""
    if basis == "X":
        state = apply_1q(state, q, _H_MATRIX)
    idx = np.arange(state.size)
    mask_one = (idx >> q) & 1 == 1
    p_one = float(np.sum(np.abs(state[mask_one]) ** 2))
    if p_one < 1e-12:
        outcome = 0
    elif p_one > 1.0 - 1e-12:
        outcome = 1
    else:
        outcome = int(rng.random() < p_one)
    keep = mask_one if outcome else ~mask_one
    out = np.zeros_like(state)
    out[idx[keep]] = state[idx[keep]]
    out /= np.linalg.norm(out)
    if basis == "X":
        out = apply_1q(out, q, _H_MATRIX)
    return outcome, out


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random pure state: normalized i.i.d. complex Gaussians."""
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


# --- stochastic cycle simulation ---------------------------------------------


@dataclass(frozen=True)
class ErrorModel:
    """Independent X and Z error rates per qubit, in events per second."""

    eps_bit: float
    eps_phase: float

    def __post_init__(self):
        if self.eps_bit < 0 or self.eps_phase < 0:
            raise ValueError("error rates must be non-negative")


@dataclass(frozen=True)
class SimConfig:
    cycle_rate: float
    t_max: float
    trials: int
    haar_states: int = 20
    rng_seed: int = 0
    samples: int = 40
    metrics: tuple[str, ...] = ("F0", "Fplus", "Frand")

    def __post_init__(self):
        if self.cycle_rate <= 0:
            raise ValueError("cycle_rate must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for m in self.metrics:
            if m not in ("F0", "Fplus", "Frand"):
                raise ValueError(f"unknown metric {m!r}")


@dataclass
class SimResult:
    times: np.ndarray
    means: dict[str, np.ndarray]
    errors: dict[str, np.ndarray]
    uncorrectable_cycles: int
    trials: int
    backend: str

    def column(self, metric: str) -> tuple[np.ndarray, np.ndarray]:
        return self.means[metric], self.errors[metric]


def _trial_rng(seed: int, trial: int, stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial, stream))
    return np.random.Generator(np.random.Philox(ss))


def _distinct_cycles(rng: np.random.Generator, n_cycles: int, count: int) -> list[int]:
    """First ``count`` distinct draws from Uniform{0..n_cycles-1}."""
    chosen: dict[int, None] = {}
    while len(chosen) < count:
        draws = rng.integers(0, n_cycles, size=count - len(chosen))
        for d in draws:
            chosen.setdefault(int(d), None)
    return list(chosen)


def _sample_error_cycles(
    rng: np.random.Generator, n_qubits: int, n_cycles: int, p_x: float, p_z: float
) -> dict[int, list[int]]:
    """Cycle -> [x_mask, z_mask] for every cycle with at least one error.

    Each qubit suffers an X (Z) error in each cycle independently with
    probability p_x (p_z); sampling the binomial count and then a uniform
    subset of cycles per qubit reproduces that law exactly.
    """
    events: dict[int, list[int]] = {}
    for q in range(n_qubits):
        for prob, part in ((p_x, 0), (p_z, 1)):
            if prob <= 0.0:
                continue
            count = int(rng.binomial(n_cycles, prob))
            if not count:
                continue
            for c in _distinct_cycles(rng, n_cycles, count):
                events.setdefault(c, [0, 0])[part] ^= 1 << q
    return events


@dataclass(frozen=True)
class _ErrorChannels:
    """Per-qubit syndrome/residual masks for sampled X and Z errors."""

    sx_x: list[int]
    sz_x: list[int]
    rx_x: list[int]
    rz_x: list[int]
    sx_z: list[int]
    sz_z: list[int]
    rx_z: list[int]
    rz_z: list[int]


def _error_channels(code) -> _ErrorChannels:
    recs = {(r.qubit, r.kind): r for r in single_error_records(code)}
    n = code.qubit_count
    chan = _ErrorChannels([], [], [], [], [], [], [], [])
    for q in range(n):
        rx_rec = recs[(q, "X")]
        rz_rec = recs[(q, "Z")]
        chan.sx_x.append(rx_rec.sx)
        chan.sz_x.append(rx_rec.sz)
        chan.rx_x.append(rx_rec.rx)
        chan.rz_x.append(rx_rec.rz)
        chan.sx_z.append(rz_rec.sx)
        chan.sz_z.append(rz_rec.sz)
        chan.rx_z.append(rz_rec.rx)
        chan.rz_z.append(rz_rec.rz)
    return chan


def _cycle_effect(
    chan: _ErrorChannels, x_mask: int, z_mask: int
) -> tuple[int, int, int, int]:
    """Syndrome and residual masks of one cycle's sampled error pattern."""
    sx = sz = rx = rz = 0
    m = x_mask
    while m:
        q = (m & -m).bit_length() - 1
        m &= m - 1
        sx ^= chan.sx_x[q]
        sz ^= chan.sz_x[q]
        rx ^= chan.rx_x[q]
        rz ^= chan.rz_x[q]
    m = z_mask
    while m:
        q = (m & -m).bit_length() - 1
        m &= m - 1
        sx ^= chan.sx_z[q]
        sz ^= chan.sz_z[q]
        rx ^= chan.rx_z[q]
        rz ^= chan.rz_z[q]
    return sx, sz, rx, rz


def _correction_lookup(table: DecodeTable, sx: int, sz: int) -> tuple[int, int, bool]:
    """(corr_x, corr_z, fully_known) for a syndrome given as side masks."""
    cx = cz = 0
    known = True
    if table.kind == "split":
        if sx:
            if sx in table._x_side:
                cx = table._x_side[sx]
            else:
                known = False
        if sz:
            if sz in table._z_side:
                cz = table._z_side[sz]
            else:
                known = False
    else:
        if sx:
            if sx in table._general:
                cx, cz = table._general[sx]
            else:
                known = False
    return cx, cz, known


def _frame_overlaps(
    frame_x: int, frame_z: int, states: np.ndarray
) -> np.ndarray:
    """|<psi| X^fx Z^fz |psi>|^2 for each row of ``states`` (dim 2^k each).

    The sign convention here differs from apply_pauli_masks by a global
    factor (-1)^{popcount(fx & fz)}, which the modulus squared removes.
    """
    dim = states.shape[1]
    idx = np.arange(dim)
    signs = 1.0 - 2.0 * _parity(idx & frame_z)
    permuted = states[:, idx ^ frame_x] * signs[np.newaxis, :]
    amps = np.einsum("ij,ij->i", states.conj(), permuted)
    return np.abs(amps) ** 2


def simulate(
    code: CpcCode | GeneralCpcCode,
    model: ErrorModel,
    cfg: SimConfig,
    backend: str = "pauli_frame",
) -> SimResult:
    """Monte Carlo fidelity curves over repeated correction cycles.

    Returns per-sample-time means and standard errors (over trials) of the
    requested metrics: ``F0`` is the probability that data qubit 0 still
    reads 0 from the all-zeros start, ``Fplus`` the conjugate-basis analogue,
    and ``Frand`` the state fidelity averaged over Haar-random data states.
    Syndromes with no single-error explanation are left uncorrected on the
    unknown side and counted in ``uncorrectable_cycles``.
    """
    require_valid(code)
    if backend not in ("pauli_frame", "statevector"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "statevector" and code.qubit_count > 14:
        raise ValueError("statevector backend is limited to 14 qubits")
    table = decode_table(code, require_correcting=False)
    chan = _error_channels(code)
    n = code.qubit_count
    k = code.k
    r = cfg.cycle_rate
    n_cycles = max(1, int(round(cfg.t_max * r)))
    p_x = 1.0 - math.exp(-model.eps_bit / r)
    p_z = 1.0 - math.exp(-model.eps_phase / r)
    times = np.linspace(0.0, cfg.t_max, cfg.samples + 1)
    sample_cycles = np.minimum(
        np.floor(times * r + 1e-9).astype(int), n_cycles
    )

    sums = {m: np.zeros(times.size) for m in cfg.metrics}
    sumsq = {m: np.zeros(times.size) for m in cfg.metrics}
    uncorrectable = 0

    for trial in range(cfg.trials):
        rng_events = _trial_rng(cfg.rng_seed, trial, 0)
        rng_haar = _trial_rng(cfg.rng_seed, trial, 1)
        haar = (
            np.array([haar_state(1 << k, rng_haar) for _ in range(cfg.haar_states)])
            if "Frand" in cfg.metrics
            else np.zeros((0, 1 << k), dtype=np.complex128)
        )
        events = _sample_error_cycles(rng_events, n, n_cycles, p_x, p_z)
        ordered = sorted(events.items())

        # The frame pass is exact and cheap; it supplies the uncorrectable
        # count for both backends so the two report identical statistics.
        frame_values, bad = _run_frame_trial(
            table, chan, ordered, sample_cycles, k, haar, cfg.metrics
        )
        if backend == "pauli_frame":
            values = frame_values
        else:
            values = _run_statevector_trial(
                code, table, ordered, sample_cycles, haar, cfg.metrics, rng_events
            )
        uncorrectable += bad
        for m in cfg.metrics:
            sums[m] += values[m]
            sumsq[m] += values[m] ** 2

    means = {m: sums[m] / cfg.trials for m in cfg.metrics}
    errors = {}
    for m in cfg.metrics:
        if cfg.trials > 1:
            var = (sumsq[m] - cfg.trials * means[m] ** 2) / (cfg.trials - 1)
            errors[m] = np.sqrt(np.maximum(var, 0.0) / cfg.trials)
        else:
            errors[m] = np.zeros_like(means[m])
    return SimResult(
        times=times,
        means=means,
        errors=errors,
        uncorrectable_cycles=uncorrectable,
        trials=cfg.trials,
        backend=backend,
    )


def _run_frame_trial(table, chan, ordered_events, sample_cycles, k, haar, metrics):
    frame_x = frame_z = 0
    bad = 0
    values = {m: np.zeros(len(sample_cycles)) for m in metrics}
    ev_idx = 0
    for s_idx, limit in enumerate(sample_cycles):
        while ev_idx < len(ordered_events) and ordered_events[ev_idx][0] < limit:
            _, (x_mask, z_mask) = ordered_events[ev_idx]
            ev_idx += 1
            sx, sz, rx, rz = _cycle_effect(chan, x_mask, z_mask)
            cx, cz, known = _correction_lookup(table, sx, sz)
            if not known:
                bad += 1
            frame_x ^= rx ^ cx
            frame_z ^= rz ^ cz
        if "F0" in metrics:
            values["F0"][s_idx] = 0.0 if frame_x & 1 else 1.0
        if "Fplus" in metrics:
            values["Fplus"][s_idx] = 0.0 if frame_z & 1 else 1.0
        if "Frand" in metrics and haar.shape[0]:
            values["Frand"][s_idx] = float(
                np.mean(_frame_overlaps(frame_x, frame_z, haar))
            )
    return values, bad


def _run_statevector_trial(code, table, ordered_events, sample_cycles, haar, metrics, rng):
    from .circuits import decode_circuit, encode_circuit

    n = code.qubit_count
    k = code.k
    enc = encode_circuit(code)
    dec = decode_circuit(code)
    if isinstance(code, CpcCode):
        check_plan = [(code.bit_index(i), "Z") for i in range(code.n_b)] + [
            (code.phase_index(i), "X") for i in range(code.n_p)
        ]
    else:
        check_plan = [(code.check_index(i), "Z") for i in range(code.n_c)]

    def prepare(data_state: np.ndarray) -> np.ndarray:
        state = np.zeros(1 << n, dtype=np.complex128)
        state[: 1 << k] = data_state
        for q, basis in check_plan:
            if basis == "X":
                state = apply_1q(state, q, _H_MATRIX)
        return state

    def run(data_state: np.ndarray, probe: str) -> np.ndarray:
        """Full cycle evolution; probe is 'overlap', 'zero0' or 'plus0'."""
        state = prepare(data_state)
        reference = state.copy()
        idx = np.arange(state.size)
        out = np.zeros(len(sample_cycles))
        ev_idx = 0
        for s_idx, limit in enumerate(sample_cycles):
            while ev_idx < len(ordered_events) and ordered_events[ev_idx][0] < limit:
                _, (x_mask, z_mask) = ordered_events[ev_idx]
                ev_idx += 1
                state = apply_circuit(state, enc)
                state = apply_pauli_masks(state, x_mask, z_mask)
                state = apply_circuit(state, dec)
                outcomes = []
                for q, basis in check_plan:
                    o, state = measure_qubit(state, q, basis, rng)
                    outcomes.append(o)
                    if o:  # unitary reset back to the reference check state
                        flip_x = basis == "Z"
                        state = apply_pauli_masks(
                            state, (1 << q) if flip_x else 0, 0 if flip_x else (1 << q)
                        )
                if isinstance(code, CpcCode):
                    sx = sum(b << i for i, b in enumerate(outcomes[: code.n_b]))
                    sz = sum(b << i for i, b in enumerate(outcomes[code.n_b :]))
                else:
                    sx = sum(b << i for i, b in enumerate(outcomes))
                    sz = 0
                cx, cz, _ = _correction_lookup(table, sx, sz)
                state = apply_pauli_masks(state, cx, cz)
            if probe == "overlap":
                out[s_idx] = float(np.abs(np.vdot(reference, state)) ** 2)
            else:
                view = state if probe == "zero0" else apply_1q(state, 0, _H_MATRIX)
                out[s_idx] = float(np.sum(np.abs(view[idx[(idx & 1) == 0]]) ** 2))
        return out

    values = {m: np.zeros(len(sample_cycles)) for m in metrics}
    if "F0" in metrics:
        values["F0"] = run(zero_state(k), "zero0")
    if "Fplus" in metrics:
        plus = np.full(1 << k, 1.0 / math.sqrt(1 << k), dtype=np.complex128)
        values["Fplus"] = run(plus, "plus0")
    if "Frand" in metrics and haar.shape[0]:
        acc = np.zeros(len(sample_cycles))
        for h in haar:
            acc += run(h, "overlap")
        values["Frand"] = acc / haar.shape[0]
    return values


# --- half-life fitting --------------------------------------------------------


@dataclass(frozen=True)
class HalfLifeFit:
    lambda_half: float
    f_inf: float
    residual_rms: float
    degenerate: bool = False


def fit_half_life(times, values) -> HalfLifeFit:
    """Least-squares fit of F(t) = F_inf + (1 - F_inf) * 2^(-t / lambda_half).

    ``F_inf`` is constrained to [0, 1].  A constant series cannot pin the
    half-life down and is returned flagged as degenerate.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size < 4:
        raise ValueError("need at least 4 time points")
    if float(np.ptp(values)) < 1e-12:
        return HalfLifeFit(
            lambda_half=math.inf,
            f_inf=float(np.clip(values.mean(), 0.0, 1.0)),
            residual_rms=0.0,
            degenerate=True,
        )

    def model(t, lam, f_inf):
        return f_inf + (1.0 - f_inf) * np.exp(-math.log(2.0) * t / lam)

    f0 = float(np.clip(values.min(), 0.0, 1.0))
    half_level = (1.0 + f0) / 2.0
    below = np.nonzero(values < half_level)[0]
    lam0 = float(times[below[0]]) if below.size and times[below[0]] > 0 else float(times[-1])
    popt, _ = curve_fit(
        model,
        times,
        values,
        p0=[max(lam0, 1e-6), f0],
        bounds=([1e-9, 0.0], [np.inf, 1.0]),
        maxfev=20000,
    )
    lam, f_inf = float(popt[0]), float(popt[1])
    residual = float(np.sqrt(np.mean((model(times, lam, f_inf) - values) ** 2)))
    return HalfLifeFit(lambda_half=lam, f_inf=f_inf, residual_rms=residual)


# --- coherent error analytics -------------------------------------------------


@dataclass(frozen=True)
class CoherentFidelity:
    fidelity: float
    syndrome_probs: dict[str, float]


def coherent_fidelity_631(
    epsilon: float, data_state: np.ndarray | None = None
) -> CoherentFidelity:
    """Exact 6-qubit treatment of the three-data-qubit bit-flip code under a
    coherent rotation error cos(e)*I + i*sin(e)*X on every qubit.

    One full encode/error/decode round is computed on the statevector; each
    of the eight check outcomes is then handled with the standard policy (no
    fired checks or a single fired check or all three: do nothing; two fired
    checks: flip the data qubit they share) and the resulting fidelity
    contributions are summed.  The data register defaults to |000>, for which
    interference terms between distinct error patterns vanish.
    """
    if not 0.0 <= epsilon < math.pi / 4:
        raise ValueError("epsilon must lie in [0, pi/4)")
    from .fixtures import code_631

    code = code_631()
    from .circuits import decode_circuit, encode_circuit

    k, n = code.k, code.qubit_count
    if data_state is None:
        data_state = zero_state(k)
    data_state = np.asarray(data_state, dtype=np.complex128)
    state = np.zeros(1 << n, dtype=np.complex128)
    state[np.arange(1 << k)] = data_state

    state = apply_circuit(state, encode_circuit(code))
    c, s = math.cos(epsilon), math.sin(epsilon)
    err = np.array([[c, 1j * s], [1j * s, c]], dtype=np.complex128)
    for q in range(n):
        state = apply_1q(state, q, err)
    state = apply_circuit(state, decode_circuit(code))

    # data qubit covered by both checks of each two-check syndrome
    pair_to_qubit = {}
    for q in range(k):
        fired = tuple(i for i in range(code.n_b) if code.mb[q, i])
        pair_to_qubit[frozenset(fired)] = q

    fidelity = 0.0
    probs: dict[str, float] = {}
    dim_k = 1 << k
    for synd in range(1 << code.n_b):
        branch = state[synd * dim_k : (synd + 1) * dim_k]
        p = float(np.sum(np.abs(branch) ** 2))
        fired = frozenset(i for i in range(code.n_b) if (synd >> i) & 1)
        x_mask = 0
        if len(fired) == 2:
            x_mask = 1 << pair_to_qubit[fired]
        corrected = branch[np.arange(dim_k) ^ x_mask]
        amp = np.vdot(data_state, corrected)
        fidelity += float(np.abs(amp) ** 2)
        key = "".join(str((synd >> i) & 1) for i in range(code.n_b))
        probs[key] = p
    return CoherentFidelity(fidelity=fidelity, syndrome_probs=probs)
