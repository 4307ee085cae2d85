"""Command-line front end.

Exit codes: 0 on success, 1 when a verification or predicate fails, 2 on
input errors (bad files, bad flags).  All output is deterministic given the
inputs and --seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .circuits import circuit_to_text, decode_circuit, encode_circuit
from .decoding import (
    DecodingObstruction,
    decode_table,
    error_table,
    is_single_error_correcting,
    ising_problem,
)
from .dynamics import ErrorModel, SimConfig, fit_half_life, simulate
from .gf2 import Gf2Matrix
from .logical_ops import logical_cnot_circuit, logical_hadamard_circuit
from .model import (
    CpcCode,
    CpcFormatError,
    GeneralCpcCode,
    InvalidCodeError,
    parse,
    serialize,
    validate,
)
from .propagation import effective_codes, general_to_classical
from .search import (
    cnot_compatible_predicate,
    search,
    single_error_correcting_predicate,
)
from .stabilizers import (
    CssConversionError,
    code_distance,
    cpc_to_css,
    css_to_cpc,
    logical_operators,
    stabilizer_to_text,
    stabilizers_general,
    stabilizers_split,
)

__all__ = ["main"]


def _load_code(path: str) -> CpcCode | GeneralCpcCode:
    text = Path(path).read_text(encoding="utf-8")
    code = parse(text)
    violations = validate(code)
    if violations:
        raise InvalidCodeError("; ".join(violations))
    return code


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_css_file(path: str) -> tuple[Gf2Matrix, Gf2Matrix]:
    rows: dict[str, list[str]] = {"GZ": [], "GX": []}
    section = None
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "CSS":
            continue
        if line in rows:
            section = line
            continue
        if section is None:
            raise CpcFormatError(f"unexpected content before a GZ/GX section: {line!r}", lineno)
        if any(ch not in "01" for ch in line):
            raise CpcFormatError(f"non-binary row {line!r}", lineno)
        rows[section].append(line)
    widths = {len(r) for section_rows in rows.values() for r in section_rows}
    if len(widths) > 1:
        raise CpcFormatError(f"inconsistent row widths: {sorted(widths)}")
    cols = widths.pop() if widths else 0
    return (
        Gf2Matrix.from_lines(rows["GZ"], cols=cols),
        Gf2Matrix.from_lines(rows["GX"], cols=cols),
    )


def _serialize_css(g_z: Gf2Matrix, g_x: Gf2Matrix) -> str:
    lines = ["CSS", "GZ", *g_z.to_lines(), "GX", *g_x.to_lines()]
    return "\n".join(lines) + "\n"


def _syndrome_str(syndrome) -> str:
    return "".join(str(b) for b in syndrome)


def _require_split(code, command: str) -> CpcCode:
    if not isinstance(code, CpcCode):
        raise InvalidCodeError(f"{command} requires a split code")
    return code


# --- subcommand handlers -----------------------------------------------------


def _cmd_verify(args) -> int:
    code = _load_code(args.code)
    report = is_single_error_correcting(code)
    if not report.ok:
        print("single-error correcting: no")
        for group in report.collisions:
            print(f"  {group}")
        return 1
    distance = code_distance(code, w_max=args.w_max)
    dist_text = str(distance) if distance is not None else f"> {args.w_max}"
    print(f"single-error correcting: yes, distance: {dist_text}")
    return 0


def _cmd_stabilizers(args) -> int:
    code = _load_code(args.code)
    gens = stabilizers_split(code) if isinstance(code, CpcCode) else stabilizers_general(code)
    lines = [stabilizer_to_text(g, code.qubit_label) for g in gens]
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_logicals(args) -> int:
    code = _require_split(_load_code(args.code), "logicals")
    logical_x, logical_z = logical_operators(code)
    lines = [stabilizer_to_text(g, code.qubit_label) for g in logical_x]
    lines += [stabilizer_to_text(g, code.qubit_label) for g in logical_z]
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_distance(args) -> int:
    code = _load_code(args.code)
    distance = code_distance(code, w_max=args.w_max)
    print(f"distance: {distance if distance is not None else f'> {args.w_max}'}")
    return 0


def _cmd_error_table(args) -> int:
    code = _load_code(args.code)
    table = decode_table(code, require_correcting=False)
    rows = ["error\tsyndrome\tclass"]
    for pauli, syndrome in error_table(code).items():
        label = pauli.label(code.qubit_label)
        entry = table.decode(syndrome)
        rows.append(f"{label}\t{_syndrome_str(syndrome)}\t{entry.category}")
    _write_output("\n".join(rows) + "\n", args.out)
    return 0


def _cmd_decode_table(args) -> int:
    code = _load_code(args.code)
    try:
        table = decode_table(code)
    except DecodingObstruction as exc:
        print(f"decode table unavailable: {exc}", file=sys.stderr)
        return 1
    rows = ["syndrome\tclass\tcorrection"]
    for syndrome in sorted(table.entries):
        entry = table.entries[syndrome]
        corr = entry.correction.label(lambda q: f"d{q + 1}")
        rows.append(f"{_syndrome_str(syndrome)}\t{entry.category}\t{corr}")
    _write_output("\n".join(rows) + "\n", args.out)
    return 0


def _cmd_css_to_cpc(args) -> int:
    g_z, g_x = _parse_css_file(args.css)
    try:
        result = css_to_cpc(g_z, g_x)
    except CssConversionError as exc:
        print(f"conversion failed: {exc}", file=sys.stderr)
        return 1
    text = serialize(result.code)
    perm = " ".join(str(c) for c in result.permutation)
    _write_output(text + f"# column permutation: {perm}\n", args.out)
    return 0


def _cmd_cpc_to_css(args) -> int:
    code = _require_split(_load_code(args.code), "cpc-to-css")
    g_z, g_x = cpc_to_css(code)
    _write_output(_serialize_css(g_z, g_x), args.out)
    return 0


def _format_classical(cc, title: str, bit_namer) -> list[str]:
    lines = [title]
    for check_id, members in cc.checks:
        names = " ".join(bit_namer(b) for b in sorted(members))
        lines.append(f"  check {check_id + 1}: {names}")
    if cc.harmless:
        lines.append(
            "  harmless: " + " ".join(bit_namer(b) for b in sorted(cc.harmless))
        )
    return lines


def _cmd_effective(args) -> int:
    code = _load_code(args.code)
    lines: list[str] = []
    if isinstance(code, CpcCode):
        bit_code, phase_code = effective_codes(code)
        k = code.k

        def bit_namer(b):
            return f"d{b + 1}" if b < k else f"p{b - k + 1}"

        def phase_namer(b):
            return f"d{b + 1}" if b < k else f"b{b - k + 1}"

        lines += _format_classical(bit_code, "bit-flip code:", bit_namer)
        lines += _format_classical(phase_code, "phase code:", phase_namer)
    else:
        cc = general_to_classical(code)
        k = code.k

        def namer(b):
            if b < k:
                return f"d{b + 1}.bit"
            if b < 2 * k:
                return f"d{b - k + 1}.phase"
            return f"c{b - 2 * k + 1}.phase"

        lines += _format_classical(cc, "combined code:", namer)
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_ising(args) -> int:
    code = _load_code(args.code)
    if isinstance(code, CpcCode):
        bit_code, phase_code = effective_codes(code)
        if args.side == "bit":
            cc = bit_code
        elif args.side == "phase":
            cc = phase_code
        else:
            raise InvalidCodeError("side 'general' needs a generalized code")
    else:
        if args.side != "general":
            raise InvalidCodeError("generalized codes only support --side general")
        cc = general_to_classical(code)
    syndrome = [int(ch) for ch in args.syndrome]
    if len(syndrome) != len(cc.checks):
        raise InvalidCodeError(
            f"syndrome must have {len(cc.checks)} bits, got {len(syndrome)}"
        )
    problem = ising_problem(
        cc,
        [args.p_bit] * cc.bit_count,
        [args.p_check] * len(cc.checks),
        syndrome,
    )
    lines = []
    for spin, coeff in enumerate(problem.fields):
        lines.append(f"field {spin} {coeff:.10g}")
    for term in problem.terms:
        spins = " ".join(str(s) for s in term.spins)
        lines.append(f"check {spins} {term.coefficient:.10g}")
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_simulate(args) -> int:
    code = _load_code(args.code)
    model = ErrorModel(eps_bit=args.eps_bit, eps_phase=args.eps_phase)
    cfg = SimConfig(
        cycle_rate=args.rate,
        t_max=args.t_max,
        trials=args.trials,
        haar_states=args.haar_states,
        rng_seed=args.seed,
        samples=args.samples,
    )
    result = simulate(code, model, cfg, backend=args.backend)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["time_s", "F0", "F0_err", "Fplus", "Fplus_err", "Frand", "Frand_err"]
    )
    for i, t in enumerate(result.times):
        row = [f"{t:.6g}"]
        for metric in ("F0", "Fplus", "Frand"):
            mean, err = result.column(metric)
            row += [f"{mean[i]:.8g}", f"{err[i]:.8g}"]
        writer.writerow(row)
    _write_output(buf.getvalue(), args.out)
    return 0


def _cmd_fit(args) -> int:
    with open(args.csv, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        times, values = [], []
        for row in reader:
            times.append(float(row["time_s"]))
            values.append(float(row[args.metric]))
    fit = fit_half_life(np.array(times), np.array(values))
    if fit.degenerate:
        print("degenerate series: no decay to fit")
        return 1
    print(f"lambda_half: {fit.lambda_half:.6g} s")
    print(f"F_inf: {fit.f_inf:.6g}")
    print(f"residual_rms: {fit.residual_rms:.3g}")
    return 0


def _cmd_search(args) -> int:
    if args.require:
        if not args.require.startswith("cnot:"):
            raise ValueError("--require supports only 'cnot:<control>,<target>'")
        c, t = (int(x) for x in args.require[len("cnot:"):].split(","))
        predicate = cnot_compatible_predicate(c, t)
        predicate_name = f"cnot-compatible({c},{t})"
    else:
        predicate = single_error_correcting_predicate()
        predicate_name = "single-error-correcting"
    result = search(
        dims=(args.data, args.bit, args.phase),
        predicate=predicate,
        budget=args.budget,
        seed=args.seed,
        constraint="mirror_bp" if args.mirror_bp else None,
        cap=args.cap,
        threads=args.threads,
    )
    out_dir = Path(args.out) if args.out else Path("found-codes")
    out_dir.mkdir(parents=True, exist_ok=True)
    for trial, code in result.found:
        (out_dir / f"trial-{trial:06d}.cpc").write_text(
            serialize(code), encoding="utf-8"
        )
    print(
        f"predicate={predicate_name} trials={result.trials} "
        f"successes={result.successes} rate={result.success_rate:.3g} "
        f"written={len(result.found)} dir={out_dir}"
    )
    return 0


def _cmd_logical_h(args) -> int:
    code = _require_split(_load_code(args.code), "logical-h")
    circuit = logical_hadamard_circuit(code, args.qubit)
    _write_output(circuit_to_text(circuit), args.out)
    return 0


def _cmd_logical_cnot(args) -> int:
    code = _require_split(_load_code(args.code), "logical-cnot")
    circuit = logical_cnot_circuit(code, args.control, args.target)
    _write_output(circuit_to_text(circuit), args.out)
    return 0


def _cmd_emit_circuit(args) -> int:
    code = _load_code(args.code)
    circuit = decode_circuit(code) if args.decode else encode_circuit(code)
    _write_output(circuit_to_text(circuit), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpc",
        description="Build, verify and simulate coherent parity check codes.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed")
    common.add_argument("--threads", type=int, default=1, help="worker count")
    common.add_argument("--out", help="output file (or directory for search)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="validate + correctability + distance")
    p.add_argument("code")
    p.add_argument("--w-max", type=int, default=4)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stabilizers", parents=[common], help="print stabilizer generators")
    p.add_argument("code")
    p.set_defaults(func=_cmd_stabilizers)

    p = sub.add_parser("logicals", parents=[common], help="print logical X/Z operators")
    p.add_argument("code")
    p.set_defaults(func=_cmd_logicals)

    p = sub.add_parser("distance", parents=[common], help="exhaustive code distance")
    p.add_argument("code")
    p.add_argument("--w-max", type=int, default=4)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("error-table", parents=[common], help="single-error syndrome table")
    p.add_argument("code")
    p.set_defaults(func=_cmd_error_table)

    p = sub.add_parser("decode-table", parents=[common], help="syndrome -> correction table")
    p.add_argument("code")
    p.set_defaults(func=_cmd_decode_table)

    p = sub.add_parser("css-to-cpc", parents=[common], help="rewrite a CSS pair as a code")
    p.add_argument("css")
    p.set_defaults(func=_cmd_css_to_cpc)

    p = sub.add_parser("cpc-to-css", parents=[common], help="emit the CSS presentation")
    p.add_argument("code")
    p.set_defaults(func=_cmd_cpc_to_css)

    p = sub.add_parser("effective", parents=[common], help="effective classical codes")
    p.add_argument("code")
    p.set_defaults(func=_cmd_effective)

    p = sub.add_parser("ising", parents=[common], help="emit the decode Hamiltonian")
    p.add_argument("code")
    p.add_argument("--side", choices=["bit", "phase", "general"], default="bit")
    p.add_argument("--syndrome", required=True, help="measured parity bits, e.g. 011")
    p.add_argument("--p-bit", type=float, default=0.1)
    p.add_argument("--p-check", type=float, default=0.1)
    p.set_defaults(func=_cmd_ising)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo fidelity curves")
    p.add_argument("code")
    p.add_argument("--eps-bit", type=float, required=True)
    p.add_argument("--eps-phase", type=float, default=0.0)
    p.add_argument("--rate", type=float, default=100.0)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--haar-states", type=int, default=20)
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("--backend", choices=["pauli_frame", "statevector"], default="pauli_frame")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("fit", parents=[common], help="half-life fit of a simulate CSV")
    p.add_argument("csv")
    p.add_argument("--metric", choices=["F0", "Fplus", "Frand"], default="Frand")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("search", parents=[common], help="random code search")
    p.add_argument("--data", type=int, required=True)
    p.add_argument("--bit", type=int, required=True)
    p.add_argument("--phase", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--mirror-bp", action="store_true")
    p.add_argument("--require", help="extra predicate, e.g. cnot:0,1")
    p.add_argument("--cap", type=int, default=100)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("logical-h", parents=[common], help="encoder realising a logical H")
    p.add_argument("code")
    p.add_argument("--qubit", type=int, required=True)
    p.set_defaults(func=_cmd_logical_h)

    p = sub.add_parser("logical-cnot", parents=[common], help="encoder realising a logical CNOT")
    p.add_argument("code")
    p.add_argument("--control", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.set_defaults(func=_cmd_logical_cnot)

    p = sub.add_parser("emit-circuit", parents=[common], help="encode/decode circuit text")
    p.add_argument("code")
    p.add_argument("--decode", action="store_true")
    p.set_defaults(func=_cmd_emit_circuit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CpcFormatError, InvalidCodeError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
