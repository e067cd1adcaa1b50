from pathlib import Path

import pytest
from hypothesis import given, settings

from conjectural.enumeration import FormulaBound, enumerate_formulas
from conjectural.kleene import TruthValue
from conjectural.model import KripkeModel, PartialValuation, World, evaluate
from conjectural.modelfile import parse_model_text, read_model
from conjectural.pairs import DefinedModalPair, pair_to_model
from conjectural.syntax import parse
from conjectural.systems import (
    SYSTEMS,
    AxiomSchema,
    SchemaStatus,
    check_schema,
    check_system,
    collapse_check,
)
from strategies import models

MODELS = Path(__file__).parent.parent / "models"
PV = PartialValuation.parse
T, F, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNDEF


def naive(m, schema, bound):
    """Instantiate every formula (pair) and evaluate directly."""
    fs = enumerate_formulas(bound)
    pairs = [(f, g) for f in fs for g in fs] if schema.arity == 2 else [(f, None) for f in fs]
    status, witness = SchemaStatus.VALID, None
    for phi, psi in pairs:
        inst = schema.instantiate(phi, psi)
        for w in m.names:
            v = evaluate(m, w, inst)
            if v is F:
                return SchemaStatus.VIOLATED, (w, phi, psi)
            if v is U and witness is None:
                status, witness = SchemaStatus.UNDETERMINED, (w, phi, psi)
    return status, witness


def test_templates():
    a, b = parse("a"), parse("b")
    assert AxiomSchema.K.instantiate(a, b) == parse("[](a -> b) -> []a -> []b")
    assert AxiomSchema.D.instantiate(a) == parse("[]a -> ~[]~a")
    assert AxiomSchema.T.instantiate(a) == parse("[]a -> a")
    assert AxiomSchema.FOUR.instantiate(a) == parse("[]a -> [][]a")
    assert AxiomSchema.FIVE.instantiate(a) == parse("~[]a -> []~[]a")
    assert AxiomSchema.C.instantiate(a) == parse("a -> []a")
    with pytest.raises(ValueError):
        AxiomSchema.K.instantiate(a)


@settings(max_examples=25, deadline=None)
@given(models(max_worlds=3))
def test_profile_check_agrees_with_naive_instantiation(m):
    bound = FormulaBound(1, 1, m.atoms)
    for schema in AxiomSchema:
        result = check_schema(m, schema, bound)
        status, witness = naive(m, schema, bound)
        assert result.status is status, schema
        if witness is not None and status is SchemaStatus.VIOLATED:
            assert (result.witness.world, result.witness.phi, result.witness.psi) == witness


@settings(max_examples=60, deadline=None)
@given(models(atom_names=("p", "q", "r"), max_worlds=4))
def test_k_never_violated(m):
    assert check_schema(m, AxiomSchema.K, FormulaBound(2, 1, m.atoms)).holds


def test_c_violated_across_value_flip():
    m = parse_model_text("atoms: a\nworld u: a\nworld v: !a\nedge: u v\nedge: v v\n")
    r = check_schema(m, AxiomSchema.C, FormulaBound(2, 1, ("a",)))
    assert r.status is SchemaStatus.VIOLATED
    assert r.witness.phi == parse("a") and r.witness.world == "u"


@settings(max_examples=40, deadline=None)
@given(models(max_worlds=3, shared=False))
def test_c_holds_on_definedness_preserving_models(m):
    from conjectural.model import is_definedness_preserving

    if is_definedness_preserving(m)[0] and m.mode.value == "printed":
        assert check_schema(m, AxiomSchema.C, FormulaBound(3, 0, m.atoms)).holds


def test_t_valid_on_reflexive_total_model():
    m = parse_model_text("atoms: a b\nworld x: a !b\nedge: x x\n")
    assert check_schema(m, AxiomSchema.T).valid


def test_collapse_examples():
    classical = parse_model_text("atoms: a b\nworld x: a !b\nedge: x x\n")
    assert collapse_check(classical, FormulaBound(4, 2, ("a", "b"))).valid
    partial = parse_model_text("atoms: a\nworld r:\nworld s: a\nedge: r s\nedge: s s\n")
    r = collapse_check(partial)
    assert not r.valid and r.witness.phi == parse("a") and r.witness.world == "r"
    lonely = parse_model_text("atoms: a\nworld x: a\n")
    r = collapse_check(lonely)
    assert r.vacuous_worlds == ("x",)
    assert evaluate(lonely, "x", "a <-> []a") is T


def test_pair_model_satisfies_kc():
    m = read_model(MODELS / "pair.cml")
    assert check_system(m, "KC").holds
    assert not check_system(m, "KD").holds or check_system(m, "KD").schema(AxiomSchema.D).holds


def test_total_conjecture_satisfies_kdc():
    p = DefinedModalPair(PV("a !b !c d"), PV("a !b !c d !e !f"), PV("a !b"), tuple("abcdef"))
    assert check_system(pair_to_model(p), "KDC").holds


def test_definedness_violation_fails_kc_with_witness():
    m = parse_model_text("atoms: a\nworld u: a\nworld v: !a\nedge: u v\nedge: v v\n")
    report = check_system(m, "KC")
    assert not report.holds
    assert report.condition("c_propagation").detail.startswith("witness:")
    assert "SYSTEM KC: fails" in report.render()


def test_non_serial_chain_fails_kdc():
    report = check_system(read_model(MODELS / "chain.cml"), "KDC")
    assert not report.condition("serial").ok
    assert not report.holds


def test_all_systems_on_reflexive_total_model():
    m = parse_model_text("atoms: a b\nworld x: a !b\nedge: x x\n")
    for name in SYSTEMS:
        assert check_system(m, name, FormulaBound(3, 2, m.atoms)).valid, name


def test_unknown_system():
    with pytest.raises(ValueError):
        check_system(read_model(MODELS / "chain.cml"), "S5")


@settings(max_examples=25, deadline=None)
@given(models(max_worlds=3))
def test_bound_monotonicity(m):
    small, big = FormulaBound(1, 1, m.atoms), FormulaBound(2, 1, m.atoms)
    for schema in (AxiomSchema.D, AxiomSchema.T, AxiomSchema.C, AxiomSchema.FIVE):
        if check_schema(m, schema, small).status is SchemaStatus.VIOLATED:
            assert check_schema(m, schema, big).status is SchemaStatus.VIOLATED


@settings(max_examples=25, deadline=None)
@given(models(max_worlds=3, shared=False))
def test_d_holds_on_serial_total_models(m):
    from conjectural.model import frame_properties

    total = all(w.valuation.is_total(m.atoms) for w in m.worlds)
    if total and frame_properties(m).serial:
        assert check_schema(m, AxiomSchema.D, FormulaBound(2, 1, m.atoms)).holds


def test_report_rendering():
    m = read_model(MODELS / "pair.cml")
    lines = check_system(m, "KC").render().splitlines()
    assert lines[0].startswith("SCHEMA K: ")
    assert lines[-1] == "SYSTEM KC: holds"
