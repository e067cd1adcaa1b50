"""Bounded formula enumeration in canonical order, and the profile sets it induces."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import chain
from typing import Iterator

import numpy as np

from .syntax import And, Atom, Box, Formula, Iff, Implies, Not, Or
from . import profiles as P

__all__ = ["FormulaBound", "enumerate_formulas", "iter_formulas", "canonical_key", "reachable_profiles"]

KIND_RANK = {Atom: 0, Not: 1, Box: 2, And: 3, Or: 4, Implies: 5, Iff: 6}
BINARY_OPS = (And, Or, Implies, Iff)


@dataclass(frozen=True)
class FormulaBound:
    max_connectives: int
    max_modal_depth: int
    atom_universe: tuple

    def __post_init__(self):
        object.__setattr__(self, "atom_universe", tuple(self.atom_universe))
        if self.max_connectives < 0 or self.max_modal_depth < 0:
            raise ValueError("bounds must be non-negative")
        if len(set(self.atom_universe)) != len(self.atom_universe):
            raise ValueError("duplicate atom in bound universe")

    def propositional(self) -> "FormulaBound":
        return FormulaBound(self.max_connectives, 0, self.atom_universe)


def canonical_key(f: Formula, atom_order: dict, _cache: dict | None = None) -> tuple:
    """Sort key: connective count, then node kind, then children, then atom order."""
    if _cache is not None:
        hit = _cache.get(f)
        if hit is not None:
            return hit
    if isinstance(f, Atom):
        key = (0, 0, atom_order[f.name])
    elif isinstance(f, (Not, Box)):
        inner = canonical_key(f.operand, atom_order, _cache)
        key = (inner[0] + 1, KIND_RANK[type(f)], inner)
    else:
        left = canonical_key(f.left, atom_order, _cache)
        right = canonical_key(f.right, atom_order, _cache)
        key = (left[0] + right[0] + 1, KIND_RANK[type(f)], left, right)
    if _cache is not None:
        _cache[f] = key
    return key


def _levels(bound: FormulaBound) -> Iterator[list]:
    """Yield the formulas of each exact connective count, sorted canonically."""
    depth = bound.max_modal_depth
    order = {a: i for i, a in enumerate(bound.atom_universe)}
    keys: dict = {}
    # exact[(c, d)] holds formulas with exactly c connectives and depth d
    exact: dict = {(0, 0): [Atom(a) for a in bound.atom_universe]}
    yield exact[0, 0]
    for c in range(1, bound.max_connectives + 1):
        for d in range(depth + 1):
            out = [Not(g) for g in exact.get((c - 1, d), ())]
            if d:
                out += [Box(g) for g in exact.get((c - 1, d - 1), ())]
            for c1 in range(c):
                c2 = c - 1 - c1
                for d1 in range(d + 1):
                    for d2 in range(d + 1):
                        if max(d1, d2) != d:
                            continue
                        lefts = exact.get((c1, d1), ())
                        rights = exact.get((c2, d2), ())
                        for op in BINARY_OPS:
                            out += [op(x, y) for x in lefts for y in rights]
            exact[c, d] = out
        level = list(chain.from_iterable(exact[c, d] for d in range(depth + 1)))
        level.sort(key=lambda f: canonical_key(f, order, keys))
        yield level


def iter_formulas(bound: FormulaBound) -> Iterator[Formula]:
    """Lazily yield every formula within ``bound`` in canonical order."""
    for level in _levels(bound):
        yield from level


def enumerate_formulas(bound: FormulaBound) -> list:
    return list(iter_formulas(bound))


# ---------------------------------------------------------------------------
# Profiles


@lru_cache(maxsize=512)
def _reachable(model_key, bound: FormulaBound) -> np.ndarray:
    model = model_key
    st = P.structure(model)
    n = st.n
    atoms = [st.atom_row(a) for a in bound.atom_universe]
    base = P.unique_rows(np.array(atoms, dtype=np.uint8).reshape(-1, n))
    # upto[(c, d)]: profiles of formulas with at most c connectives and depth at most d
    upto = {(0, d): base for d in range(bound.max_modal_depth + 1)}
    for c in range(1, bound.max_connectives + 1):
        for d in range(bound.max_modal_depth + 1):
            prev = upto[c - 1, d]
            parts = [prev, st.tables[Not][prev]]
            if d:
                parts.append(st.box(upto[c - 1, d - 1]))
            for c1 in range(c):
                a, b = upto[c1, d], upto[c - 1 - c1, d]
                for op in BINARY_OPS:
                    parts.append(P.combine(st.tables[op], a, b))
            upto[c, d] = P.unique_rows(np.concatenate(parts))
    return upto[bound.max_connectives, bound.max_modal_depth]


def _relevant(model):
    # the reality designation never affects evaluation
    return replace(model, reality=model.worlds[0].name)


def reachable_profiles(model, bound: FormulaBound) -> np.ndarray:
    """Distinct profiles of all formulas within ``bound`` on ``model``."""
    stray = set(bound.atom_universe) - set(model.atoms)
    if stray:
        from .model import ModelError

        raise ModelError(f"bound uses atoms outside the model's universe: {sorted(stray)}")
    return _reachable(_relevant(model), bound)


def _profiled(model, bound: FormulaBound):
    st = P.structure(model)
    rows: dict = {}
    for f in iter_formulas(bound):
        if isinstance(f, Atom):
            row = st.atom_row(f.name)
        elif isinstance(f, Not):
            row = st.tables[Not][rows[f.operand]]
        elif isinstance(f, Box):
            row = st.box(rows[f.operand])
        else:
            row = st.tables[type(f)][rows[f.left], rows[f.right]]
        rows[f] = row
        yield f, tuple(int(x) for x in row)


def first_formulas_with_profiles(model, bound: FormulaBound, targets) -> dict:
    """Map each target profile to the canonically least formula producing it."""
    targets = {tuple(t) for t in targets}
    found: dict = {}
    for f, key in _profiled(model, bound):
        if key in targets and key not in found:
            found[key] = f
            if len(found) == len(targets):
                break
    return found


def first_formula_with_profile(model, bound: FormulaBound, targets):
    """The least formula whose profile is any of ``targets``, with that profile."""
    targets = {tuple(t) for t in targets}
    for f, key in _profiled(model, bound):
        if key in targets:
            return f, key
    raise LookupError("no formula within the bound has the requested profile")
