import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffdesign import io
from ffdesign.errors import DesignError
from ffdesign.gf2 import Design
from ffdesign.iso import are_isomorphic
from ffdesign.wlp import defining_relation, word_columns

designs = st.integers(2, 5).flatmap(
    lambda m: st.lists(st.integers(1, (1 << m) - 1), unique=True, min_size=1, max_size=12).map(
        lambda cs: Design(m, tuple(cs))
    )
)


def test_matrix_shape_and_balance(d1):
    x = io.design_matrix(d1)
    assert x.shape == (16, 9)
    assert (x[0] == 1).all()
    assert (x.sum(axis=0) == 0).all()


@pytest.mark.parametrize("name", ["d1", "k12"])
def test_matrix_orthogonal_and_words_realized(name, request):
    d = request.getfixturevalue(name)
    x = io.design_matrix(d).astype(int)
    assert (x.T @ x == d.n * np.eye(d.k, dtype=int)).all()
    for word in defining_relation(d):
        idx = [d.columns.index(c) for c in word_columns(d, word)]
        assert (np.prod(x[:, idx], axis=1) == 1).all()


@settings(max_examples=60, deadline=None)
@given(designs)
def test_roundtrip_columns_matrix_json(d):
    assert io.parse(io.render(d, "columns"), "columns", d.m) == d
    assert io.parse(io.render(d, "matrix-csv"), "matrix-csv") == d
    assert io.parse(io.render(d, "json"), "json") == d


@settings(max_examples=60, deadline=None)
@given(designs)
def test_roundtrip_generators(d):
    if d.rank < d.m or d.k == d.m:
        with pytest.raises(DesignError):
            io.parse(io.render(d, "generators"), "generators")
        return
    back = io.parse(io.render(d, "generators"), "generators")
    assert are_isomorphic(back, d)
    basics = tuple(1 << j for j in range(d.m))
    if d.columns[: d.m] == basics:
        assert back == d


def test_json_record_fields(d1):
    rec = json.loads(io.render(d1, "json"))
    assert set(rec) == {"runs", "factors", "columns", "generators", "wlp", "resolution", "certificate"}
    assert rec["wlp"] == [0, 0, 4, 14, 8, 0, 4, 1, 0] and rec["resolution"] == 3


def test_matrix_csv_header():
    text = io.render_matrix_csv(Design.parse("A,B,AB"))
    assert text.splitlines() == ["A,B,AB", "+1,+1,+1", "-1,+1,-1", "+1,-1,-1", "-1,-1,+1"]


@pytest.mark.parametrize("bad", ["A,B\n+1,+1\n+1,+2\n", "A\n+1\n-1\n+1\n", "B,A\n+1,+1\n-1,+1\n+1,-1\n-1,-1\n"])
def test_matrix_csv_rejects(bad):
    with pytest.raises(DesignError):
        io.parse_matrix_csv(bad)


def test_sniff_and_read(tmp_path, d1):
    assert io.sniff_format("I=ABC") == "generators"
    assert io.sniff_format("A,B") == "columns"
    path = tmp_path / "d.csv"
    path.write_text(io.render_matrix_csv(d1))
    assert io.read_design(f"@{path}") == d1
    with pytest.raises(DesignError):
        io.read_design(f"@{tmp_path / 'missing'}")
