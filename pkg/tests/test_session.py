import random

import pytest
from hypothesis import given, settings, strategies as st

from mldegree import parse_session
from mldegree.golden import CORPUS, _session_text, session, session_path
from mldegree.session import SessionError, format_value, load_session, tokenize


def _values(s):
    return {k: format_value(v) for k, v in s.bindings.items()}


def test_tokenize_skips_comments():
    kinds = [t.kind for t in tokenize("ring x; # a comment\nF = x^2;")]
    assert "comment" not in kinds
    assert len(kinds) >= 8


def test_plain_ring_session():
    s = parse_session("ring x y z dual u v w;\nF = x*y - z^2;\nG = 1/(u*v);\n")
    assert s.space.primal.names == ("x", "y", "z")
    assert s.space.dual.names == ("u", "v", "w")
    assert _values(s) == {"F": "x*y - z^2", "G": "(1)/(u*v)"}
    assert s.get("F", "function").degree() == 2
    assert s.get("G", "function").ring is s.space.dual


def test_symmetric_session_builtins():
    s = parse_session("ring sym 2; M = matrix[[1,2],[2,3]]; v = [1,2,3]; d = det(M); F = det; "
                      "G = trace(M*K); H = adj(K);")
    v = _values(s)
    assert v["K"] == "matrix[[k11, k12], [k12, k22]]"
    assert v["d"] == "-1"
    assert v["F"] == "-k12^2 + k11*k22"
    assert v["G"] == "k11 + 4*k12 + 3*k22"
    assert v["H"] == "matrix[[k22, -k12], [-k12, k11]]"


def test_ideal_binding():
    s = parse_session("ring sym 2; X = ideal(det - k11^2);")
    assert [str(g) for g in s.get("X", "ideal").gens] == ["-k11^2 - k12^2 + k11*k22"]
    with pytest.raises(SessionError, match="ideal"):
        parse_session("ring sym 2; X = ideal(det); F = X + 1;")


@pytest.mark.parametrize("text, line, col, fragment", [
    ("ring x; F = x +;", 1, 16, "unexpected ';'"),
    ("F = x;", 1, 1, "ring declaration"),
    ("ring x y; F = x + z;", 1, 19, "unbound name 'z'"),
    ("ring x y; F = x^999;", 1, 17, "exponent"),
    ("ring x y; X = ideal(x^2 + y);", 1, 21, "not homogeneous"),
    ("ring x y dual u v; F = x*u;", 1, 20, "mixes primal and dual"),
    ("ring x y; F = (((x);", 1, 20, "expected ')'"),
    ("ring x y; F = x/0;", 1, 16, "division by zero"),
    ("ring x;\nF = x @ 2;", 2, 7, "unexpected character"),
])
def test_error_positions(text, line, col, fragment):
    with pytest.raises(SessionError) as info:
        parse_session(text)
    err = info.value
    assert (err.line, err.col) == (line, col)
    assert fragment in str(err)


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(SessionError):
        parse_session("ring x; F = " + "(" * 5000 + "x" + ")" * 5000 + ";")


def test_digest_is_stable(tmp_path):
    text = "ring x y; F = x*y;"
    path = tmp_path / "s.txt"
    path.write_text(text)
    assert load_session(path).digest == parse_session(text).digest
    assert parse_session("ring x y; F = y*x;").digest != parse_session(text).digest


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip(name):
    s = session(name)
    again = parse_session(_session_text(s))
    assert _values(again) == _values(s)


def test_shipped_sessions_load():
    for name in CORPUS:
        assert load_session(session_path(name)).bindings


ALPHABET = list("xyz+-*/^()[],;=0123456789 ") + ["ring ", "ideal(", "det", "matrix[[", "trace(", "\n", "#"]


@settings(max_examples=500, deadline=None)
@given(st.lists(st.sampled_from(ALPHABET), max_size=40))
def test_fuzz_raises_only_session_errors(pieces):
    text = "ring x y z; F = " + "".join(pieces)
    try:
        parse_session(text)
    except SessionError:
        pass


def test_random_byte_strings():
    rng = random.Random(0)
    for _ in range(300):
        text = "".join(chr(rng.randrange(32, 127)) for _ in range(rng.randrange(60)))
        try:
            parse_session(text)
        except SessionError:
            pass
