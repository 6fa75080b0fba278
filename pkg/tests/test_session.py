import pytest

from linkagelab.errors import SessionError
from linkagelab.session import parse_session

E3_TEXT = """\
format 1
char 2
vars x y
order grevlex
quotient x*y
module R free 1
module M rank 1 relations [x]
ideal a x
ideal b y
ideal I
task link module=R a=a b=b i=I
"""


def test_parse_e3():
    s = parse_session(E3_TEXT)
    assert s.char == 2 and s.variables == ("x", "y") and s.order == "grevlex"
    assert len(s.quotient) == 1
    assert set(s.modules) == {"R", "M"}
    assert s.modules["M"].relations and s.modules["M"].rank == 1
    assert [str(g) for g in s.ideals["a"]] == ["x"]
    assert s.ideals["I"] == []
    assert s.tasks == [{"op": "link", "args": {"module": "R", "a": "a", "b": "b", "i": "I"}}]
    ring, modules, ideals = s.build()
    assert repr(ring).endswith("(x*y)")
    assert modules["M"].relations


def test_round_trip():
    s = parse_session(E3_TEXT)
    assert parse_session(s.pretty()) == s
    # a second pass through pretty is stable
    assert parse_session(s.pretty()).pretty() == s.pretty()


def test_empty_tasks_is_valid():
    text = "format 1\nchar 3\nvars x\nmodule M free 1\n"
    s = parse_session(text)
    assert s.tasks == []


def test_rank_with_multiple_rows():
    text = (
        "format 1\nchar 2\nvars x y\n"
        "module M rank 2 relations [x, 0]; [0, y]\n"
    )
    s = parse_session(text)
    assert len(s.modules["M"].relations) == 2


def errors(text):
    with pytest.raises(SessionError) as err:
        parse_session(text)
    return err.value


def test_non_prime_char():
    e = errors("format 1\nchar 4\nvars x\n")
    assert "prime" in str(e) and e.line == 2


def test_undefined_name_in_task():
    e = errors("format 1\nchar 2\nvars x\nideal a x\ntask link a=zz\n")
    assert "undefined ideal" in str(e)


def test_non_graded_generator_rejected():
    e = errors("format 1\nchar 2\nvars x y\nquotient x - 1\n")
    assert "non-graded" in str(e)
    e2 = errors("format 1\nchar 2\nvars x y\nideal a x + 1\n")
    assert "non-graded" in str(e2)


def test_unknown_directive_and_missing_format():
    assert "unknown directive" in str(errors("format 1\nchar 2\nvars x\nfrobnicate\n"))
    assert "format" in str(errors("char 2\nvars x\n"))
    assert "unsupported format" in str(errors("format 2\nchar 2\nvars x\n"))


def test_wrong_row_length():
    e = errors("format 1\nchar 2\nvars x y\nmodule M rank 2 relations [x]\n")
    assert "components" in str(e)


def test_duplicate_names():
    e = errors("format 1\nchar 2\nvars x\nideal a x\nideal a x\n")
    assert "already defined" in str(e)
    e2 = errors("format 1\nchar 2\nvars x x\n")
    assert "duplicate" in str(e2)


def test_shipped_sessions_parse():
    import pathlib

    root = pathlib.Path(__file__).resolve().parents[1] / "sessions"
    for path in sorted(root.glob("*.session")):
        s = parse_session(path.read_text())
        s.build()
        assert parse_session(s.pretty()) == s
