import pytest

from hopfgalois.fixtures import builtin_fixtures, builtin_text, dump_hopf, load_text
from hopfgalois.hopf import verify_hopf
from hopfgalois.presentation import ParseError, UndeclaredLabel, parse_presentation, parse_presentations, parse_scalar_expr
from hopfgalois.scalars import ONE, zeta

KZ2 = """\
hopf kZ2
basis 1 g
unit 1
mult(g,g) = 1
coproduct(g) = g@g
counit(g) = 1
antipode(g) = g
"""


def test_kZ2_block():
    p = parse_presentation(KZ2)
    assert p.kind == "hopf" and p.name == "kZ2"
    assert p.basis == ("1", "g")
    assert p.unit == "1"
    assert len(p.section("coproduct")) == 1


def test_builtin_kZ2_matches_builder(kZ2):
    blocks = parse_presentations(builtin_text())
    assert [b.basis for b in blocks if b.name == "kZ2"] == [("1", "g")]
    fs = builtin_fixtures()
    assert fs.get("kZ2").hopf.alg.table == kZ2.alg.table


def test_dump_round_trip(H4, dS3):
    for H in (H4, dS3):
        fs, names = load_text(dump_hopf(H, "copy"))
        assert names == ["copy"]
        H2 = fs.get("copy").hopf
        assert H2.alg.table == H.alg.table
        assert H2.coproduct.cols == H.coproduct.cols
        assert H2.antipode.cols == H.antipode.cols


def test_loaded_cocycle(fs):
    fs2, names = load_text("cocycle my-sigma measuring=Q-triv-kZ2\nsigma(g,g) = -1\n", builtin_fixtures())
    fx = fs2.get(names[0])
    assert fx.kind == "crossed"
    assert fx.crossed.A.mul({1: ONE}, {1: ONE}) == {0: -ONE}


def test_scalar_expressions():
    assert parse_scalar_expr("zeta(4)^2") == -ONE
    assert parse_scalar_expr("(1/2)*(2)") == ONE
    assert parse_scalar_expr("zeta(3) + zeta(3)^2 + 1") == 0 * ONE
    assert parse_scalar_expr("zeta(8)") == zeta(8)


def test_undeclared_label_position():
    text = KZ2.replace("mult(g,g) = 1", "mult(g,g) = q")
    with pytest.raises(UndeclaredLabel) as e:
        parse_presentation(text)
    assert (e.value.label, e.value.line, e.value.col) == ("q", 4, 13)


@pytest.mark.parametrize("bad", [
    KZ2.replace("mult(g,g) = 1", "mult(g,g) 1"),
    KZ2.replace("mult(g,g) = 1", "mult(g,g = 1"),
    KZ2.replace("hopf kZ2", "group kZ2"),
    KZ2.replace("mult(g,g) = 1", "mult(g,g) = zeta(x)"),
    KZ2.replace("mult(g,g) = 1", "mult(g,g) = 1 +"),
])
def test_parse_errors(bad):
    with pytest.raises(ParseError) as e:
        parse_presentation(bad)
    assert e.value.line >= 1 and e.value.col >= 1


def test_combination_unit():
    text = """\
hopf dual-kZ2
basis e0 e1
unit e0 + e1
mult(e0,e0) = e0
mult(e1,e1) = e1
coproduct(e0) = e0@e0 + e1@e1
coproduct(e1) = e0@e1 + e1@e0
counit(e0) = 1
antipode(e0) = e0
antipode(e1) = e1
"""
    p = parse_presentation(text)
    assert p.unit is None and len(p.unit_terms) == 2
    fs, (name,) = load_text(text)
    H = fs.get(name).hopf
    assert H.unit == {0: ONE, 1: ONE}
    assert verify_hopf(H).ok


def test_conductor_env(monkeypatch):
    text = "cocycle c4 measuring=Q-triv-kZ2\nsigma(g,g) = zeta(4)\n"
    monkeypatch.setenv("HOPFGALOIS_CONDUCTOR", "2")
    with pytest.raises(ParseError):
        load_text(text, builtin_fixtures())
    monkeypatch.setenv("HOPFGALOIS_CONDUCTOR", "4")
    load_text(text, builtin_fixtures())
    monkeypatch.setenv("HOPFGALOIS_CONDUCTOR", "zero")
    with pytest.raises(ValueError):
        load_text(text, builtin_fixtures())
