import pytest

from idealcalc.corpus import Corpus, IdealFile, check_expectations, flat_invariants, invariants, resolve_ideal_file
from idealcalc.errors import IdealCalcError, ParseError
from idealcalc.ideal import Ideal

HEAVY = {"conic_line_p4", "skew_planes_p4_cone"}

SKEW_LINES = """\
# two skew lines
name skew
ring x0 x1 x2 x3
expect nu=4 quasiBuchsbaum=true
x0*x2
x0*x3   # trailing comment
x1*x2
x1*x3
"""


def test_parse_ideal_file():
    parsed = IdealFile.parse(SKEW_LINES)
    assert parsed.name == "skew"
    assert parsed.variables == ["x0", "x1", "x2", "x3"]
    assert parsed.generators == ["x0*x2", "x0*x3", "x1*x2", "x1*x3"]
    assert parsed.expect == {"nu": 4, "quasiBuchsbaum": True}
    assert IdealFile.parse(parsed.to_text()) == parsed


@pytest.mark.parametrize("text", [
    "x0\n",
    "name a\n",
    "ring x0\nring x1\n",
    "ring x0\nexpect nu\nx0\n",
])
def test_malformed_files(text):
    with pytest.raises(ParseError):
        IdealFile.parse(text)


def test_generator_with_unknown_variable():
    with pytest.raises(ParseError):
        IdealFile.parse("ring x0 x1\nx0*y\n").to_ideal()


def test_from_ideal(load):
    I = load("twisted_cubic_p3")
    parsed = IdealFile.from_ideal(I)
    assert parsed.name == "twisted_cubic_p3"
    assert parsed.to_ideal() == I


def test_load_from_path(tmp_path):
    path = tmp_path / "mine.ideal"
    path.write_text("ring x0 x1\nx0^2\nx0*x1\n", encoding="utf-8")
    parsed = resolve_ideal_file(str(path))
    assert parsed.name == "mine"
    assert parsed.to_ideal().krull_dim() == 1


def test_corpus_entries(corpus):
    names = corpus.names()
    assert {"conic_line_p4", "skew_lines_p3", "twisted_cubic_p3", "rational_quartic_p3"} <= set(names)
    assert len(corpus.pairs("serre_pairs")) == 4
    assert corpus.pairs("meeting_pairs") == [("line_x0x1_p3", "line_x0x2_p3")]
    assert corpus.provenance("conic_line_p4") == "published"
    with pytest.raises(IdealCalcError):
        corpus.entry("no_such_ideal")
    with pytest.raises(IdealCalcError):
        corpus.pairs("no_such_set")


def test_every_corpus_file_parses_homogeneous(corpus):
    for name in corpus.names():
        I = corpus.ideal(name)
        assert I.name == name
        assert all(g.is_homogeneous() for g in I.generators)


def test_invariants_of_skew_lines(load):
    inv = invariants(load("skew_lines_p3"))
    assert inv["deficiency"]["1"]["degrees"] == {"0": 1}
    assert inv["betti"] == {"0": {"0": 1}, "1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}}
    flat = flat_invariants(inv)
    assert flat["h1"] == 1
    assert "betti" not in flat


def test_invariants_of_unit_ideal(S3):
    inv = invariants(Ideal.unit(S3))
    assert inv["krullDim"] == -1
    assert "nu" not in inv


@pytest.mark.parametrize("name", [
    pytest.param(n, marks=pytest.mark.slow) if n in HEAVY else n for n in Corpus().names()
])
def test_corpus_expectations(corpus, name):
    result = check_expectations(corpus.file(name))
    assert result["checked"]
    assert result["mismatches"] == {}


def test_mismatch_reported(corpus):
    parsed = corpus.file("twisted_cubic_p3")
    parsed.expect = {"nu": 4, "h1": 0}
    result = check_expectations(parsed)
    assert result["mismatches"] == {"nu": {"expected": 4, "computed": 3}}


def test_top_level_helpers():
    import idealcalc

    I = idealcalc.load_ideal("skew_lines_p3", prime=31991)
    assert I.ring.field.characteristic == 31991
    assert idealcalc.verify("amasaki", I).verdict.value == "holds"
