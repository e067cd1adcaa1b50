"""Vectorised evaluation over whole models.

A *profile* is the row of truth values a formula takes at every world, in
the model's world order, encoded as small integers. Because evaluation is
compositional, schema checks only need the set of profiles a bound can
produce, not the formulas themselves.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .kleene import EvalMode, TruthValue, and_, iff, implies, neg, or_
from .syntax import And, Atom, Box, Formula, Iff, Implies, Not, Or

FALSE_CODE, TRUE_CODE, UNDEF_CODE = 0, 1, 2
CODES = {TruthValue.FALSE: FALSE_CODE, TruthValue.TRUE: TRUE_CODE, TruthValue.UNDEF: UNDEF_CODE}
VALUES = (TruthValue.FALSE, TruthValue.TRUE, TruthValue.UNDEF)


@lru_cache(maxsize=None)
def tables(mode: EvalMode) -> dict:
    def binary(fn):
        t = np.zeros((3, 3), dtype=np.uint8)
        for a in VALUES:
            for b in VALUES:
                t[CODES[a], CODES[b]] = CODES[fn(a, b, mode)]
        return t

    n = np.zeros(3, dtype=np.uint8)
    for a in VALUES:
        n[CODES[a]] = CODES[neg(a)]
    return {
        Not: n,
        And: binary(and_),
        Or: binary(or_),
        Implies: binary(implies),
        Iff: binary(iff),
    }


class Structure:
    """Index-based view of a model's frame and valuations."""

    def __init__(self, model):
        self.n = len(model.worlds)
        idx = model.index
        self.successors = [tuple(idx[s] for s in model.successors(w.name)) for w in model.worlds]
        self.tables = tables(model.mode)
        self.mode = model.mode
        self._worlds = model.worlds

    def atom_row(self, name: str) -> np.ndarray:
        return np.array([CODES[w.valuation.get(name)] for w in self._worlds], dtype=np.uint8)

    def box(self, rows: np.ndarray) -> np.ndarray:
        conj = self.tables[And]
        out = np.empty_like(rows)
        for i, succ in enumerate(self.successors):
            acc = np.full(rows.shape[:-1], TRUE_CODE, dtype=np.uint8)
            for s in succ:
                acc = conj[acc, rows[..., s]]
            out[..., i] = acc
        return out

    def evaluate(self, f: Formula, env: dict) -> np.ndarray:
        """Evaluate ``f`` with each atom bound to a broadcastable row array."""
        if isinstance(f, Atom):
            return env[f.name]
        if isinstance(f, Not):
            return self.tables[Not][self.evaluate(f.operand, env)]
        if isinstance(f, Box):
            return self.box(self.evaluate(f.operand, env))
        left = self.evaluate(f.left, env)
        right = self.evaluate(f.right, env)
        left, right = np.broadcast_arrays(left, right)
        return self.tables[type(f)][left, right]


@lru_cache(maxsize=256)
def structure(model) -> Structure:
    return Structure(model)


def unique_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) <= 1:
        return rows
    return np.unique(rows, axis=0)


def combine(table: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All rows ``table[x, y]`` for ``x`` in ``a`` and ``y`` in ``b``."""
    out = table[a[:, None, :], b[None, :, :]]
    return out.reshape(-1, a.shape[1])
