import json

import pytest
from src.cli.main import EXIT_ERROR, EXIT_INEQUIVALENT, EXIT_OK, main
from tests.helpers import DATA, read_data

# --- Constants ---
EVEN_B_CANONICAL = "nu v1. [1](v1, nu v2. [0](v2, v1))"
DFA_OPTIONS = ["--functor", "dfa", "--alphabet", "a,b"]


# --- Fixtures ---
@pytest.fixture
def write(tmp_path):
    """Return a helper that writes text to a file under tmp_path."""
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def data(name):
    """Return the path of a file under tests/data as a string."""
    return str(DATA / name)


# --- Tests: parse ---
def test_parse_prints_canonical_form(capsys):
    """Bound variables are renamed to the canonical scheme."""
    assert main(["parse", data("even_b.nu")]) == EXIT_OK
    assert capsys.readouterr().out == EVEN_B_CANONICAL + "\n"


def test_parse_flat(capsys):
    """The flat system follows the canonical form."""
    assert main(["parse", data("even_b.nu"), "--flat"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        EVEN_B_CANONICAL,
        "x1 = [1](x1, x2)",
        "x2 = [0](x2, x1)",
    ]


def test_parse_closure(capsys):
    """The closure lists one member per line after the canonical form."""
    assert main(["parse", data("even_b.nu"), "--closure"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 5
    assert lines[0] == lines[1] == EVEN_B_CANONICAL


def test_parse_with_functor_options(write, capsys):
    """Command line options replace a missing header."""
    path = write("loop.nu", "nu y. [0](y, y)")
    assert main(["parse", path] + DFA_OPTIONS) == EXIT_OK
    assert capsys.readouterr().out == "nu v1. [0](v1, v1)\n"


def test_parse_rejects_unguarded(write, capsys):
    """Well-formedness violations point at the offending variable."""
    path = write("bad.nu", "nu x. x")
    assert main(["parse", path] + DFA_OPTIONS) == EXIT_ERROR
    err = capsys.readouterr().err
    assert err == f"{path}:1:7: unguarded variable x at root.0\n"


def test_synthesize_rejects_free_variable(write, capsys):
    """A free variable on a later line is located on that line."""
    path = write("open.nu", "nu x.\n  [1](x, y)")
    assert main(["synthesize", path] + DFA_OPTIONS) == EXIT_ERROR
    err = capsys.readouterr().err
    assert err == f"{path}:2:10: free variable y at root.0.1\n"


# --- Tests: eval ---
def test_eval(capsys):
    """The even-b expression holds only at the even-b state."""
    code = main(["eval", data("even_b.nu"), data("even_b.json")])
    assert code == EXIT_OK
    assert capsys.readouterr().out == "x1\n"


def test_eval_flat(capsys):
    """Every variable of the flat system gets its own line."""
    args = ["eval", data("even_b.nu"), data("even_b.json"), "--flat", "--oracle"]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["x1", "x1: x1", "x2: x2"]


def test_eval_rejects_other_functor(capsys):
    """The expression header must match the coalgebra."""
    code = main(["eval", data("lts_example.nu"), data("even_b.json")])
    assert code == EXIT_ERROR
    assert "Expression is for lts, coalgebra is for dfa." in capsys.readouterr().err


# --- Tests: synthesize ---
def test_synthesize_to_stdout(capsys):
    """The Markov expression synthesizes the golden chain."""
    assert main(["synthesize", data("markov.nu")]) == EXIT_OK
    assert capsys.readouterr().out == read_data("markov.json")


def test_synthesize_to_file(tmp_path, capsys):
    """With -o the model is written to the given path."""
    target = tmp_path / "model.json"
    code = main(["synthesize", data("markov.nu"), "-o", str(target)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8") == read_data("markov.json")


# --- Tests: extract ---
def test_extract(capsys):
    """The characteristic expression is printed as an expression file."""
    assert main(["extract", data("even_b.json"), "x1"]) == EXIT_OK
    assert capsys.readouterr().out == read_data("even_b.nu")


def test_extract_markov_chain(capsys):
    """The chain's initial state yields its expression file."""
    assert main(["extract", data("markov.json"), "x"]) == EXIT_OK
    assert capsys.readouterr().out == read_data("markov.nu")


def test_extract_unknown_state(capsys):
    """A state outside the file is reported."""
    assert main(["extract", data("even_b.json"), "x9"]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error: ")


# --- Tests: equiv ---
def test_equiv_same_language(capsys):
    """An expression is equivalent to itself."""
    args = ["equiv", data("even_b.nu"), data("even_b.nu"), "--oracle"]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out == "equivalent\n"


def test_equiv_different_languages(capsys):
    """The empty and the full language differ."""
    args = ["equiv", data("empty_language.nu"), data("all_words.nu"), "--oracle"]
    assert main(args) == EXIT_INEQUIVALENT
    assert capsys.readouterr().out == "inequivalent\n"


def test_equiv_rejects_mixed_headers(capsys):
    """Both files must declare the same functor."""
    code = main(["equiv", data("even_b.nu"), data("lts_example.nu")])
    assert code == EXIT_ERROR
    assert "declare different functors" in capsys.readouterr().err


# --- Tests: minimize ---
def test_minimize(capsys):
    """The two deadlocks of the example system are merged."""
    assert main(["minimize", data("lts_example.json")]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document["states"]) == 3
    assert document["initial"] == "x"


def test_minimize_minimal_input(tmp_path, capsys):
    """A minimal automaton is written back unchanged."""
    target = tmp_path / "even_b.json"
    assert main(["minimize", data("even_b.json"), "-o", str(target)]) == EXIT_OK
    assert target.read_text(encoding="utf-8") == read_data("even_b.json")


# --- Tests: Errors ---
def test_syntax_error_is_located(write, capsys):
    """Syntax errors are reported as FILE:line:column: message."""
    path = write("broken.nu", "nu x. [1](x, @)")
    assert main(["parse", path] + DFA_OPTIONS) == EXIT_ERROR
    err = capsys.readouterr().err
    assert err == f"{path}:1:14: unexpected character '@'\n"


def test_missing_functor(write, capsys):
    """Without header or options there is no functor to parse against."""
    path = write("plain.nu", "nu x. [1](x, x)")
    assert main(["parse", path]) == EXIT_ERROR
    assert capsys.readouterr().err == (
        "error: No functor given; pass --functor or add a '# functor:' header.\n"
    )


def test_missing_file(tmp_path, capsys):
    """Unreadable inputs are reported, not raised."""
    missing = str(tmp_path / "missing.json")
    assert main(["minimize", missing]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error: ")


def test_malformed_coalgebra_file(write, capsys):
    """Invalid coalgebra documents are reported."""
    path = write("bad.json", "{")
    assert main(["minimize", path]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error: Invalid JSON")
