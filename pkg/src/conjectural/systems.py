"""Axiom schemas, modal systems and the collapse check.

Schemas are checked semantically: every instance built from formulas within
a :class:`FormulaBound` is evaluated at every world of the model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import profiles as P
from .enumeration import (
    FormulaBound,
    enumerate_formulas,
    first_formula_with_profile,
    reachable_profiles,
)
from .kleene import TruthValue
from .model import KripkeModel, check_c_propagation, frame_properties, successorless
from .syntax import Atom, Box, Formula, Iff, Implies, Not, parse, to_text

__all__ = [
    "AxiomSchema",
    "SchemaStatus",
    "Witness",
    "SchemaResult",
    "ConditionResult",
    "SystemReport",
    "SYSTEMS",
    "FormulaBound",
    "enumerate_formulas",
    "check_schema",
    "check_system",
    "collapse_check",
    "default_bound",
]

_PHI, _PSI = Atom("phi"), Atom("psi")


class AxiomSchema(Enum):
    K = "K"
    D = "D"
    T = "T"
    FOUR = "4"
    FIVE = "5"
    C = "C"
    COLLAPSE = "collapse"

    @property
    def template(self) -> Formula:
        return _TEMPLATES[self]

    @property
    def arity(self) -> int:
        return 2 if self is AxiomSchema.K else 1

    def instantiate(self, phi: Formula, psi: Formula | None = None) -> Formula:
        if self.arity == 2 and psi is None:
            raise ValueError(f"schema {self.value} needs two formulas")
        return _substitute(self.template, {"phi": phi, "psi": psi})

    def __str__(self):
        return self.value


_TEMPLATES = {
    AxiomSchema.K: parse("[](phi -> psi) -> ([]phi -> []psi)"),
    AxiomSchema.D: parse("[]phi -> ~[]~phi"),
    AxiomSchema.T: parse("[]phi -> phi"),
    AxiomSchema.FOUR: parse("[]phi -> [][]phi"),
    AxiomSchema.FIVE: parse("~[]phi -> []~[]phi"),
    AxiomSchema.C: parse("phi -> []phi"),
    AxiomSchema.COLLAPSE: parse("phi <-> []phi"),
}


def _substitute(f: Formula, env: dict) -> Formula:
    if isinstance(f, Atom):
        return env.get(f.name) or f
    if isinstance(f, (Not, Box)):
        return type(f)(_substitute(f.operand, env))
    return type(f)(_substitute(f.left, env), _substitute(f.right, env))


class SchemaStatus(Enum):
    VALID = "Valid"
    UNDETERMINED = "Undetermined"
    VIOLATED = "Violated"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Witness:
    world: str
    phi: Formula
    psi: Formula | None = None
    value: TruthValue = TruthValue.FALSE

    def render(self) -> str:
        text = f"world={self.world} phi={to_text(self.phi)}"
        if self.psi is not None:
            text += f" psi={to_text(self.psi)}"
        return text


@dataclass(frozen=True)
class SchemaResult:
    schema: AxiomSchema
    status: SchemaStatus
    witness: Witness | None = None
    vacuous_worlds: tuple = ()

    @property
    def holds(self) -> bool:
        return self.status is not SchemaStatus.VIOLATED

    @property
    def valid(self) -> bool:
        return self.status is SchemaStatus.VALID

    def render(self, name: str | None = None) -> str:
        line = f"SCHEMA {name or self.schema.value}: {self.status.value}"
        if self.witness is not None:
            line += f" [witness: {self.witness.render()}]"
        return line


def default_bound(m: KripkeModel) -> FormulaBound:
    return FormulaBound(4, 2, m.atoms)


def _status(values: np.ndarray) -> SchemaStatus:
    if (values == P.FALSE_CODE).any():
        return SchemaStatus.VIOLATED
    if (values == P.UNDEF_CODE).any():
        return SchemaStatus.UNDETERMINED
    return SchemaStatus.VALID


def _profile_check(m: KripkeModel, template: Formula, arity: int, bound: FormulaBound):
    rows = reachable_profiles(m, bound)
    st = P.structure(m)
    if arity == 1:
        values = st.evaluate(template, {"phi": rows})
    else:
        values = st.evaluate(template, {"phi": rows[:, None, :], "psi": rows[None, :, :]})
    return rows, values


def _witness(m, bound, rows, values, arity, code) -> Witness:
    names = m.names
    hit = values == code
    if arity == 1:
        bad_rows = rows[hit.any(axis=-1)]
        phi, key = first_formula_with_profile(m, bound, bad_rows)
        i = _row_index(rows, key)
        w = int(np.argmax(hit[i]))
        return Witness(names[w], phi, None, P.VALUES[code])
    bad_pairs = hit.any(axis=-1)
    phi, key = first_formula_with_profile(m, bound, rows[bad_pairs.any(axis=1)])
    i = _row_index(rows, key)
    psi, key2 = first_formula_with_profile(m, bound, rows[bad_pairs[i]])
    j = _row_index(rows, key2)
    w = int(np.argmax(hit[i, j]))
    return Witness(names[w], phi, psi, P.VALUES[code])


def _row_index(rows: np.ndarray, key: tuple) -> int:
    return int(np.flatnonzero((rows == np.array(key, dtype=rows.dtype)).all(axis=1))[0])


def check_schema(m: KripkeModel, schema: AxiomSchema, bound: FormulaBound | None = None) -> SchemaResult:
    """Evaluate every instance of ``schema`` within ``bound`` at every world.

    Violated if some instance is ``0`` somewhere, Undetermined if none is
    ``0`` but some is ``u``, Valid otherwise. Non-valid results carry the
    least witness in canonical formula order, then world order.
    """
    bound = bound or default_bound(m)
    rows, values = _profile_check(m, schema.template, schema.arity, bound)
    status = _status(values)
    witness = None
    if status is not SchemaStatus.VALID:
        code = P.FALSE_CODE if status is SchemaStatus.VIOLATED else P.UNDEF_CODE
        witness = _witness(m, bound, rows, values, schema.arity, code)
    return SchemaResult(schema, status, witness, tuple(successorless(m)))


def collapse_check(m: KripkeModel, bound: FormulaBound | None = None) -> SchemaResult:
    """Check ``phi <-> []phi``; Valid means the box adds nothing on this model."""
    return check_schema(m, AxiomSchema.COLLAPSE, bound)


# ---------------------------------------------------------------------------
# Systems


@dataclass(frozen=True)
class ConditionResult:
    name: str
    ok: bool
    detail: str = ""

    def render(self) -> str:
        line = f"CONDITION {self.name}: {'true' if self.ok else 'false'}"
        if self.detail:
            line += f" [{self.detail}]"
        return line


S = AxiomSchema
SYSTEMS = {
    "K": ((S.K,), ()),
    "KD": ((S.K, S.D), ("serial",)),
    "KT": ((S.K, S.T), ()),
    "KC": ((S.K, S.C), ("c_propagation",)),
    "KDC": ((S.K, S.D, S.C), ("serial", "c_propagation")),
    "KC45": ((S.K, S.C, S.FOUR, S.FIVE), ("transitive", "euclidean", "c_propagation")),
    "KDC45": ((S.K, S.D, S.C, S.FOUR, S.FIVE), ("serial", "transitive", "euclidean", "c_propagation")),
}


@dataclass(frozen=True)
class SystemReport:
    system: str
    schemas: tuple
    conditions: tuple
    bound: FormulaBound

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.schemas) and all(c.ok for c in self.conditions)

    @property
    def valid(self) -> bool:
        return self.holds and all(s.valid for s in self.schemas)

    def schema(self, schema: AxiomSchema) -> SchemaResult:
        for s in self.schemas:
            if s.schema is schema:
                return s
        raise KeyError(schema)

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list:
        out = [s.render() for s in self.schemas if not s.holds]
        out += [c.render() for c in self.conditions if not c.ok]
        return out

    def render(self) -> str:
        lines = [s.render() for s in self.schemas]
        lines += [c.render() for c in self.conditions]
        lines.append(f"SYSTEM {self.system}: {'holds' if self.holds else 'fails'}")
        return "\n".join(lines)


def _condition(m: KripkeModel, name: str, bound: FormulaBound) -> ConditionResult:
    if name == "c_propagation":
        ok, witness = check_c_propagation(m, bound)
        return ConditionResult(name, ok, "" if ok else f"witness: {witness}")
    props = frame_properties(m)
    ok = getattr(props, name)
    detail = ""
    if not ok and name == "serial":
        detail = "no successor: " + " ".join(successorless(m))
    return ConditionResult(name, ok, detail)


def check_system(m: KripkeModel, system: str, bound: FormulaBound | None = None) -> SystemReport:
    """Check the schemas and frame/valuation conditions of ``system`` on ``m``."""
    try:
        schemas, conditions = SYSTEMS[system]
    except KeyError:
        raise ValueError(f"unknown system {system!r}; expected one of {', '.join(SYSTEMS)}") from None
    bound = bound or default_bound(m)
    results = tuple(check_schema(m, s, bound) for s in schemas)
    conds = tuple(_condition(m, c, bound) for c in conditions)
    return SystemReport(system, results, conds, bound)
