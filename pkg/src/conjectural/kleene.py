"""Three-valued connectives.

``EvalMode.PRINTED`` follows the published negation, conjunction and
disjunction tables verbatim (``0 & u = 0`` and ``1 | u = 1``).
``EvalMode.CONTAGIOUS`` makes undefinedness absorb everything.
"""

from __future__ import annotations

from enum import Enum
from functools import reduce
from typing import Iterable


class TruthValue(Enum):
    TRUE = "1"
    FALSE = "0"
    UNDEF = "u"

    def __str__(self):
        return self.value

    @property
    def defined(self) -> bool:
        return self is not TruthValue.UNDEF

    @classmethod
    def from_bool(cls, b: bool) -> "TruthValue":
        return cls.TRUE if b else cls.FALSE

    @classmethod
    def parse(cls, text: str) -> "TruthValue":
        text = text.strip().lower()
        if text in ("1", "true", "t"):
            return cls.TRUE
        if text in ("0", "false", "f"):
            return cls.FALSE
        if text in ("u", "undef", "undefined"):
            return cls.UNDEF
        raise ValueError(f"not a truth value: {text!r}")


T, F, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNDEF
VALUES = (T, F, U)


class EvalMode(Enum):
    PRINTED = "printed"
    CONTAGIOUS = "contagious"

    def __str__(self):
        return self.value


NEG_TABLE = {T: F, F: T, U: U}

AND_TABLE = {
    (T, T): T, (T, F): F, (T, U): U,
    (F, T): F, (F, F): F, (F, U): F,
    (U, T): U, (U, F): F, (U, U): U,
}

OR_TABLE = {
    (T, T): T, (T, F): T, (T, U): T,
    (F, T): T, (F, F): F, (F, U): U,
    (U, T): T, (U, F): U, (U, U): U,
}


def neg(a: TruthValue) -> TruthValue:
    return NEG_TABLE[a]


def and_(a: TruthValue, b: TruthValue, mode: EvalMode = EvalMode.PRINTED) -> TruthValue:
    if mode is EvalMode.CONTAGIOUS and (a is U or b is U):
        return U
    return AND_TABLE[a, b]


def or_(a: TruthValue, b: TruthValue, mode: EvalMode = EvalMode.PRINTED) -> TruthValue:
    if mode is EvalMode.CONTAGIOUS and (a is U or b is U):
        return U
    return OR_TABLE[a, b]


def implies(a: TruthValue, b: TruthValue, mode: EvalMode = EvalMode.PRINTED) -> TruthValue:
    return or_(neg(a), b, mode)


def iff(a: TruthValue, b: TruthValue, mode: EvalMode = EvalMode.PRINTED) -> TruthValue:
    return and_(implies(a, b, mode), implies(b, a, mode), mode)


def conjunction(values: Iterable[TruthValue], mode: EvalMode = EvalMode.PRINTED) -> TruthValue:
    """Fold of :func:`and_` starting from ``1``; the empty fold is ``1``."""
    return reduce(lambda acc, v: and_(acc, v, mode), values, T)


def info_leq(a: TruthValue, b: TruthValue) -> bool:
    """Information order: ``u`` lies below both ``1`` and ``0``."""
    return a is b or a is U
