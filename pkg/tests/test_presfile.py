import pytest

from hopfore import catalog, presfile
from hopfore.expr import ExprSyntaxError, parse_element, parse_tensor
from hopfore.ghoe import attach_and_verify
from hopfore.hopfstruct import InvariantViolation
from hopfore.isowit import identity_witness, verify_witness
from hopfore.presfile import PresentationSyntaxError

HA = """\
[field]
kind = "Q"

[[generator]]
name = "a"

[hopf]
delta.a = "a (x) 1 + 1 (x) a"
counit.a = "0"
antipode.a = "-a"

[ore]
tau.a = "a"
delta_der.a = "a"

[ghoe]
r1 = "1"
r2 = "1"
"""


def test_minimal_file_loads_and_passes():
    m = presfile.loads(HA)
    _, diag = attach_and_verify(m.ghoe)
    assert diag.passed


@pytest.mark.parametrize("name", catalog.DEFAULT_NAMES)
def test_canonical_round_trip(name):
    e = catalog.build_named(name)
    text = presfile.dumps(ghoe=e.ghoe) if e.kind == "ghoe" else presfile.dumps(hopf=e.hopf)
    m = presfile.loads(text)
    assert presfile.dump_model(m) == text
    if e.kind == "ghoe":
        assert catalog.verdict_of(attach_and_verify(m.ghoe)[1]) == e.expected


def test_unknown_key_reports_line():
    text = HA.replace('antipode.a = "-a"', 'antipode.a = "-a"\ncolour = "red"')
    with pytest.raises(PresentationSyntaxError) as ei:
        presfile.loads(text)
    assert ei.value.line == 11


def test_unknown_section():
    with pytest.raises(PresentationSyntaxError):
        presfile.loads(HA + "\n[extra]\nk = 1\n")


def test_expression_error_reports_line():
    text = HA.replace('delta_der.a = "a"', 'delta_der.a = "a +* a"')
    with pytest.raises(ExprSyntaxError) as ei:
        presfile.loads(text)
    assert ei.value.line == 14


def test_toml_error_has_position():
    with pytest.raises(PresentationSyntaxError) as ei:
        presfile.loads(HA.replace('kind = "Q"', "kind = "))
    assert ei.value.line == 2


def test_ghoe_needs_hopf_and_ore():
    no_ore = HA.split("[ore]")[0] + "[ghoe]\nr1 = \"1\"\n"
    with pytest.raises(InvariantViolation):
        presfile.loads(no_ore)


def test_field_override_and_q_specialization():
    m = presfile.loads(HA, field_override="Fp:3")
    assert str(m.field) == "Fp:3"
    e = catalog.build_named("SL3-literal")
    text = presfile.dumps(ghoe=e.ghoe)
    m2 = presfile.loads(text, q="2")
    assert m2.field.kind == "Q" and m2.field.q_value == 2
    assert catalog.verdict_of(attach_and_verify(m2.ghoe)[1]) == ("FailAt", "B2", "E1")


def test_witness_round_trip(tmp_path):
    e = catalog.build_named("Ha", eta="5")
    w = identity_witness(e.hopf)
    w.lam = e.hopf.pres.field(5)
    p = tmp_path / "w.witness"
    p.write_text(presfile.dump_witness(w))
    spec = presfile.load_witness(p)
    target = catalog.build_named("Ha")
    w2 = presfile.build_witness(spec, e.hopf.pres, target.hopf.pres)
    assert verify_witness(e.ghoe, target.ghoe, w2).passed
    assert presfile.dump_witness(w2) == presfile.dump_witness(w)


def test_expression_syntax():
    pres = catalog.build_env(2, "nonabelian").pres
    assert parse_element("b*a", pres) == parse_element("a*b - a", pres)
    assert parse_element("(a + b)^2", pres) == parse_element("a^2 + 2*a*b - a + b^2", pres)
    assert parse_element("1/2*a", pres) == parse_element("a/2", pres)
    t = parse_tensor("(a + 1) (x) b", pres)
    assert t == parse_tensor("a (x) b + 1 (x) b", pres)
    for bad in ("a +", "a (x) b", "2^a", "c", "a^-1"):
        with pytest.raises((ExprSyntaxError, KeyError, ValueError)):
            parse_element(bad, pres)
