from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpc import fixtures as fx
from cpc.gf2 import Gf2Matrix
from cpc.model import (
    CpcCode,
    CpcFormatError,
    GeneralCpcCode,
    from_classical,
    generalize,
    parse,
    serialize,
    validate,
)


def test_fixture_files_match_definitions(fixture_dir):
    pairs = {
        "6-3-1.cpc": fx.code_631(),
        "11-3-1.cpc": fx.code_1131_flawed(),
        "11-3-3.cpc": fx.code_1133(),
        "12-4-3.cpc": fx.code_1243(),
        "10-3-3.cpc": fx.code_1033_general(),
        "13-3-3.cpc": fx.code_1333_augmented(),
        "11-3-3-cnot.cpc": fx.code_1133_cnot_ready(),
        "12-4-3-cnot.cpc": fx.code_1243_cnot_ready(),
    }
    for name, code in pairs.items():
        text = (fixture_dir / name).read_text(encoding="utf-8")
        assert parse(text) == code, name


def test_validate_good_fixture():
    assert validate(fx.code_1133()) == []
    assert validate(fx.code_1033_general()) == []


def test_validate_dimension_violation():
    code = CpcCode(
        mb=Gf2Matrix.zeros(2, 4), mp=Gf2Matrix.zeros(3, 4), mc=Gf2Matrix.zeros(4, 4)
    )
    assert any("rows" in v for v in validate(code))


def test_validate_triangularity():
    g = fx.code_1033_general()
    bad = np.array(g.mcs.data, copy=True)
    bad[2, 2] = 1
    code = GeneralCpcCode(mbs=g.mbs, mps=g.mps, mcs=Gf2Matrix(bad))
    assert any("triangular" in v for v in validate(code))


def test_parse_serialized_1133(fixture_dir):
    code = parse((fixture_dir / "11-3-3.cpc").read_text(encoding="utf-8"))
    assert isinstance(code, CpcCode)
    assert (code.k, code.n_b, code.n_p) == (3, 4, 4)


def test_parse_empty_code():
    text = "CPC split\ndata 0\nbit 0\nphase 0\nB\nP\nC\n"
    code = parse(text)
    assert code.qubit_count == 0
    assert validate(code) == []


def test_parse_reports_bad_character():
    text = "CPC split\ndata 1\nbit 4\nphase 0\nB\n10a0\nP\nC\n"
    with pytest.raises(CpcFormatError) as err:
        parse(text)
    assert "column 3" in str(err.value)
    assert err.value.line == 6


def test_parse_comments_and_blank_lines():
    text = "# a comment\nCPC split\n\ndata 1\nbit 1\nphase 0\nB\n1\nP\nC\n\n"
    code = parse(text)
    assert code.k == 1 and code.n_b == 1


def test_parse_bad_header():
    with pytest.raises(CpcFormatError):
        parse("CPC nonsense\n")


def test_from_classical_builds_1133():
    m = fx.three_bit_parity_check()
    pad = Gf2Matrix(np.hstack([m.data, np.zeros((3, 1), dtype=np.uint8)]))
    code = from_classical(pad, pad, fx.code_1133().mc)
    assert code == fx.code_1133()


def test_from_classical_hamming_1243():
    h = fx.hamming_74_data_checks()
    pad = Gf2Matrix(np.hstack([h.data, np.zeros((4, 1), dtype=np.uint8)]))
    code = from_classical(pad, pad, fx.code_1243().mc)
    assert code == fx.code_1243()


def test_from_classical_zero_cross_is_constructible():
    m = fx.three_bit_parity_check()
    code = from_classical(m, m, Gf2Matrix.zeros(3, 3))
    assert validate(code) == []


def test_from_classical_rejects_mismatch():
    with pytest.raises(ValueError):
        from_classical(Gf2Matrix.zeros(3, 2), Gf2Matrix.zeros(2, 2), Gf2Matrix.zeros(2, 2))


def test_generalize_1133_block_layout():
    code = fx.code_1133()
    g = generalize(code)
    assert g.k == 3 and g.n_c == 8
    assert g.mbs.data[:, :4].tolist() == code.mb.data.tolist()
    assert not g.mbs.data[:, 4:].any()
    assert g.mps.data[:, 4:].tolist() == code.mp.data.tolist()
    assert not g.mps.data[:, :4].any()
    assert g.mcs.data[:4, 4:].tolist() == code.mc.data.tolist()
    assert not g.mcs.data[4:, :].any()
    assert not g.mcs.data[:, :4].any()
    assert validate(g) == []


def test_generalize_preserves_qubit_count():
    for code in (fx.code_1133(), fx.code_1243(), fx.code_631()):
        assert generalize(code).qubit_count == code.qubit_count


def test_generalize_empty_checks():
    code = CpcCode(mb=Gf2Matrix.zeros(2, 0), mp=Gf2Matrix.zeros(2, 0), mc=Gf2Matrix.zeros(0, 0))
    g = generalize(code)
    assert g.n_c == 0 and g.k == 2


@st.composite
def random_codes(draw):
    k = draw(st.integers(0, 4))
    n_b = draw(st.integers(0, 4))
    n_p = draw(st.integers(0, 4))
    seed = draw(st.integers(0, 2**30))
    rng = np.random.Generator(np.random.Philox(seed))
    mb = Gf2Matrix(rng.integers(0, 2, size=(k, n_b), dtype=np.uint8))
    mp = Gf2Matrix(rng.integers(0, 2, size=(k, n_p), dtype=np.uint8))
    mc = Gf2Matrix(rng.integers(0, 2, size=(n_b, n_p), dtype=np.uint8))
    return CpcCode(mb=mb, mp=mp, mc=mc)


@given(random_codes())
@settings(max_examples=60, deadline=None)
def test_round_trip_identity(code):
    assert parse(serialize(code)) == code


@given(random_codes())
@settings(max_examples=30, deadline=None)
def test_generalize_valid_whenever_input_valid(code):
    assert validate(code) == []
    assert validate(generalize(code)) == []


def test_round_trip_general(fixture_dir):
    g = fx.code_1033_general()
    assert parse(serialize(g)) == g
    on_disk = parse((fixture_dir / "10-3-3.cpc").read_text(encoding="utf-8"))
    assert on_disk == g


def test_parse_rejects_trailing_content():
    text = "CPC split\ndata 1\nbit 1\nphase 0\nB\n1\nP\nC\n1\n"
    with pytest.raises(CpcFormatError) as err:
        parse(text)
    assert "after the C section" in str(err.value)
