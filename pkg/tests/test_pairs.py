from itertools import product

import pytest

from conjectural.enumeration import FormulaBound
from conjectural.model import ModelError, PartialValuation, evaluate
from conjectural.pairs import (
    DefinedModalPair,
    WorldClass,
    classify_pair,
    classify_valuation,
    classify_world,
    enumerate_worlds,
    pair_to_model,
    realize_system,
)
from conjectural.systems import AxiomSchema, check_schema

PV = PartialValuation.parse
ATOMS = tuple("abcdef")
SHARED = PV("a !b")
REALITY = PV("a !b !c d")

EPISTEMIC = ["a !b", "a !b !c", "a !b d", "a !b !c d"]
CONJECTURAL = [
    "a !b !c d", "a !b !c d e", "a !b !c d !e", "a !b !c d f", "a !b !c d !f",
    "a !b !c d e f", "a !b !c d e !f", "a !b !c d !e f", "a !b !c d !e !f",
]


def pair(world, reality=REALITY, shared=SHARED):
    return DefinedModalPair(reality, PV(world), shared, ATOMS)


def test_epistemic_and_conjectural_sets():
    rows = enumerate_worlds(ATOMS, SHARED, REALITY)
    assert {v for v, _ in rows if v <= REALITY} == {PV(s) for s in EPISTEMIC}
    assert {v for v, _ in rows if REALITY <= v} == {PV(s) for s in CONJECTURAL}


def test_named_examples():
    assert classify_valuation(PV("a !b c d"), REALITY, SHARED) is WorldClass.DELUSIONAL
    assert classify_valuation(PV("a !b !c !d"), REALITY, SHARED) is WorldClass.DELUSIONAL
    assert classify_valuation(PV("a !b c !d"), REALITY, SHARED) is WorldClass.DELUSIONAL
    assert classify_valuation(PV("a !b e"), REALITY, SHARED) is WorldClass.OPINION
    assert classify_valuation(PV("a !b e !f"), REALITY, SHARED) is WorldClass.OPINION
    assert classify_world(pair("a !b !c d e !f")) is WorldClass.CONJECTURAL
    assert classify_world(pair("a !b !c d")) is WorldClass.REALITY
    assert classify_world(pair("a !b !c e")) is WorldClass.MIXED


def test_pair_validates_listed_formulas():
    m = pair_to_model(pair("a !b !c d !e"))
    for f in ["a", "~b", "~c", "d", "[]a", "[]~b", "[]~c", "[]d", "[]~e"]:
        assert evaluate(m, "R", f).value == "1", f


def test_pair_admissibility():
    with pytest.raises(ModelError):
        pair("")
    with pytest.raises(ModelError):
        DefinedModalPair(PV("a"), PV("a"), PV("!a"))


def test_self_pair_mirrors_reality():
    m = pair_to_model(pair("a !b !c d"))
    for f in ["a", "b", "c", "e", "a & e"]:
        assert evaluate(m, "R", f"[]{f}") is evaluate(m, "R", f)


@pytest.mark.parametrize("world, systems", [
    ("a !b !c d !e", ("K", "KC")),
    ("a !b", ("K", "KT")),
])
def test_classify_pair(world, systems):
    assert classify_pair(pair(world)).systems == systems


def test_classify_total_self_pair():
    v = PV("a !b !c d e f")
    assert classify_pair(DefinedModalPair(v, v, SHARED, ATOMS)).systems == ("K", "KD", "KT", "KC", "KDC")


def test_single_world_when_everything_is_shared():
    rows = enumerate_worlds(("a", "b"), PV("a !b"), PV("a !b"))
    assert rows == [(PV("a !b"), WorldClass.REALITY)]


@pytest.mark.parametrize("k_shared", [0, 1, 2])
def test_enumeration_count_matches_direct_count(k_shared):
    atoms = ("p", "q", "r", "s")
    shared = PartialValuation.of({a: True for a in atoms[:k_shared]})
    reality = shared.extend("s", False)
    rows = enumerate_worlds(atoms, shared, reality)
    direct = 0
    for choice in product((None, True, False), repeat=len(atoms)):
        v = PartialValuation.of({a: c for a, c in zip(atoms, choice) if c is not None})
        direct += shared <= v
    assert len(rows) == direct == 3 ** (len(atoms) - k_shared)
    assert len({v for v, _ in rows}) == len(rows)


def test_enumeration_order_is_canonical():
    rows = enumerate_worlds(ATOMS, SHARED, REALITY)
    assert len(rows) == 81
    assert rows[0][0] == SHARED
    assert [len(v) for v, _ in rows] == sorted(len(v) for v, _ in rows)
    assert rows[1][0] == PV("a !b c")


def test_taxonomy_is_a_partition_with_precedence():
    for v, cls in enumerate_worlds(ATOMS, SHARED, REALITY):
        flags = {
            WorldClass.REALITY: v == REALITY,
            WorldClass.EPISTEMIC: v <= REALITY,
            WorldClass.CONJECTURAL: REALITY <= v,
            WorldClass.DELUSIONAL: bool(v.conflicts(REALITY)),
            WorldClass.OPINION: v.domain & REALITY.domain == SHARED.domain,
        }
        first = next((c for c, hit in flags.items() if hit), WorldClass.MIXED)
        assert cls is first


def test_delusional_worlds_never_set_kt_or_kc():
    for v, cls in enumerate_worlds(ATOMS, SHARED, REALITY):
        if cls is WorldClass.DELUSIONAL:
            profile = classify_pair(DefinedModalPair(REALITY, v, SHARED, ATOMS))
            assert not profile.KT and not profile.KC


def test_inclusion_soundness_small():
    atoms = ("p", "q")
    vals = [v for v, _ in enumerate_worlds(atoms, PartialValuation(), PartialValuation())]
    bound = FormulaBound(2, 1, atoms)
    for r, w in product(vals, vals):
        p = DefinedModalPair(r, w, PartialValuation(), atoms)
        prof, m = classify_pair(p), pair_to_model(p)
        assert check_schema(m, AxiomSchema.K, bound).holds
        if prof.KT:
            assert check_schema(m, AxiomSchema.T, bound).holds
        if prof.KC:
            assert check_schema(m, AxiomSchema.C, bound).holds
        if prof.KD:
            assert check_schema(m, AxiomSchema.D, bound).holds


@pytest.mark.parametrize("system", ["K", "KD", "KT", "KC", "KDC"])
def test_realize_system(system):
    p = realize_system(system, ATOMS, REALITY, SHARED)
    assert system in classify_pair(p).systems


def test_realize_system_witnesses():
    assert realize_system("KC", ATOMS, REALITY).world == REALITY
    assert realize_system("KT", ATOMS, REALITY, SHARED).world == SHARED
    assert realize_system("KDC", ATOMS, REALITY).world == PV("a !b !c d e f")
    assert realize_system("KD", ATOMS, REALITY, SHARED).world == PV("a !b c d e f")
    with pytest.raises(ValueError):
        realize_system("KC45", ATOMS, REALITY)
