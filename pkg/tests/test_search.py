from __future__ import annotations

import numpy as np
import pytest

from cpc.decoding import cnot_compatible, is_single_error_correcting
from cpc.search import (
    cnot_compatible_predicate,
    random_code,
    search,
    single_error_correcting_predicate,
)


def _rng(seed=0):
    return np.random.Generator(np.random.Philox(seed))


def test_random_code_shapes():
    code = random_code(3, 4, 4, _rng())
    assert (code.k, code.n_b, code.n_p) == (3, 4, 4)
    assert code.qubit_count == 11


def test_random_code_deterministic():
    assert random_code(3, 4, 4, _rng(5)) == random_code(3, 4, 4, _rng(5))


def test_random_code_mirror_constraint():
    for seed in range(10):
        code = random_code(3, 4, 4, _rng(seed), constraint="mirror_bp")
        assert code.mb == code.mp
    with pytest.raises(ValueError):
        random_code(3, 4, 3, _rng(), constraint="mirror_bp")
    with pytest.raises(ValueError):
        random_code(3, 4, 4, _rng(), constraint="nope")


def test_search_zero_budget():
    result = search((3, 4, 4), single_error_correcting_predicate(), 0, seed=1)
    assert result.found == () and result.trials == 0 and result.successes == 0
    assert result.success_rate == 0.0


def _circuit_route_correcting(code) -> bool:
    """Independent re-verification through the decode-circuit error table."""
    from cpc.decoding import error_table, single_error_records

    table = error_table(code)
    harmful = {
        (r.qubit, r.kind) for r in single_error_records(code) if r.harmful
    }
    seen = {}
    for err, syndrome in table.items():
        (qubit,) = [q for q in range(code.qubit_count) if err.letter(q) != "I"]
        key = (qubit, err.letter(qubit))
        seen.setdefault(syndrome, []).append(key)
    for syndrome, keys in seen.items():
        bad = [k for k in keys if k in harmful]
        if bad and (len(keys) > 1 or not any(syndrome)):
            return False
    return True


def test_search_finds_correcting_codes():
    # success rate is ~3e-5; seed 2 hits at trial 2950
    result = search((3, 4, 4), single_error_correcting_predicate(), 4000, seed=2)
    assert result.successes >= 1
    for trial, code in result.found:
        assert is_single_error_correcting(code).ok
        assert _circuit_route_correcting(code)


def test_search_deterministic_across_runs_and_threads():
    args = ((3, 4, 4), single_error_correcting_predicate(), 3200)
    a = search(*args, seed=2, threads=1)
    b = search(*args, seed=2, threads=1)
    c = search(*args, seed=2, threads=4)
    d = search(*args, seed=2, threads=3)
    assert a.successes >= 1
    assert a == b == c == d


def test_search_cnot_predicate_with_mirror():
    result = search(
        (3, 4, 4),
        cnot_compatible_predicate(0, 1),
        budget=3000,
        seed=4,
        constraint="mirror_bp",
    )
    assert result.successes >= 1
    for trial, code in result.found:
        assert code.mb == code.mp
        assert cnot_compatible(code, 0, 1).ok


def test_search_cap_limits_found_list():
    result = search((3, 4, 4), single_error_correcting_predicate(), 4000, seed=2, cap=2)
    assert len(result.found) <= 2
    full = search((3, 4, 4), single_error_correcting_predicate(), 4000, seed=2)
    assert result.successes == full.successes
    assert result.found == full.found[:2]
