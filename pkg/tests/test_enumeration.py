from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings

from conjectural.enumeration import FormulaBound, enumerate_formulas, iter_formulas, reachable_profiles
from conjectural.model import ModelError, evaluate
from conjectural.profiles import CODES
from conjectural.syntax import connectives, modal_depth, parse, to_text
from strategies import models


def count_oracle(n_atoms, max_connectives):
    # exact counts with Box and Not as unary nodes and four binary nodes
    exact = [n_atoms]
    for c in range(1, max_connectives + 1):
        binary = sum(exact[i] * exact[c - 1 - i] for i in range(c))
        exact.append(2 * exact[c - 1] + 4 * binary)
    return sum(exact)


def test_single_atom():
    assert [to_text(f) for f in enumerate_formulas(FormulaBound(0, 0, ("a",)))] == ["a"]
    got = [to_text(f) for f in enumerate_formulas(FormulaBound(1, 1, ("a",)))]
    assert got == ["a", "~a", "[]a", "a & a", "a | a", "a -> a", "a <-> a"]


def test_golden_count_two_atoms_two_connectives():
    assert count_oracle(2, 2) == 382
    assert len(enumerate_formulas(FormulaBound(2, 2, ("a", "b")))) == 382


@pytest.mark.parametrize("atoms, c", [(("a",), 3), (("a", "b"), 3), (("a", "b", "c"), 2)])
def test_counts_match_recurrence_when_depth_unconstrained(atoms, c):
    assert len(enumerate_formulas(FormulaBound(c, c, atoms))) == count_oracle(len(atoms), c)


def test_respects_bound_and_has_no_duplicates():
    bound = FormulaBound(3, 1, ("a", "b"))
    fs = enumerate_formulas(bound)
    assert len(set(fs)) == len(fs)
    assert all(connectives(f) <= 3 and modal_depth(f) <= 1 for f in fs)
    assert [connectives(f) for f in fs] == sorted(connectives(f) for f in fs)
    assert parse("[]a & []b") in fs and parse("[][]a") not in fs


def test_iteration_is_lazy_and_deterministic():
    bound = FormulaBound(3, 2, ("a", "b"))
    first = [f for f, _ in zip(iter_formulas(bound), range(50))]
    assert first == enumerate_formulas(bound)[:50]


def test_bound_validation():
    with pytest.raises(ValueError):
        FormulaBound(-1, 0, ("a",))
    with pytest.raises(ValueError):
        FormulaBound(1, 0, ("a", "a"))


@settings(max_examples=30, deadline=None)
@given(models(max_worlds=3))
def test_profile_set_matches_direct_evaluation(m):
    bound = FormulaBound(2, 1, m.atoms)
    direct = {tuple(CODES[evaluate(m, w, f)] for w in m.names) for f in enumerate_formulas(bound)}
    fast = {tuple(int(x) for x in row) for row in reachable_profiles(m, bound)}
    assert fast == direct


def test_profiles_reject_foreign_atoms():
    from conjectural.modelfile import parse_model_text

    m = parse_model_text("atoms: a\nworld x:\n")
    with pytest.raises(ModelError):
        reachable_profiles(m, FormulaBound(1, 0, ("a", "b")))
