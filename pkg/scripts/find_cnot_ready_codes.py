#!/usr/bin/env python3
"""Random search for codes that can host an in-cycle CNOT between two data
qubits, mirroring the bit and phase check matrices (which empirically raises
the hit rate).

Example:
    python scripts/find_cnot_ready_codes.py --data 3 --checks 4 \
        --budget 200000 --seed 1 --out cnot-codes/
"""

from __future__ import annotations

import argparse
from pathlib import Path

from cpc.model import serialize
from cpc.search import cnot_compatible_predicate, search


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", type=int, default=3)
    ap.add_argument("--checks", type=int, default=4)
    ap.add_argument("--control", type=int, default=0)
    ap.add_argument("--target", type=int, default=1)
    ap.add_argument("--budget", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--no-mirror", action="store_true",
                    help="draw independent bit and phase matrices")
    ap.add_argument("--out", type=Path, default=Path("cnot-codes"))
    args = ap.parse_args()

    result = search(
        dims=(args.data, args.checks, args.checks),
        predicate=cnot_compatible_predicate(args.control, args.target),
        budget=args.budget,
        seed=args.seed,
        constraint=None if args.no_mirror else "mirror_bp",
        threads=args.threads,
    )
    args.out.mkdir(parents=True, exist_ok=True)
    for trial, code in result.found:
        (args.out / f"trial-{trial:06d}.cpc").write_text(
            serialize(code), encoding="utf-8"
        )
    print(
        f"{result.successes} hit(s) in {result.trials} trials "
        f"(rate {result.success_rate:.2e}); wrote {len(result.found)} file(s) to {args.out}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
