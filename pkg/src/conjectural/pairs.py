"""Defined modal pairs, their system profiles, and the cognitive world taxonomy."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Sequence

from .kleene import EvalMode
from .model import EMPTY, KripkeModel, ModelError, PartialValuation, World

__all__ = [
    "DefinedModalPair",
    "SystemProfile",
    "WorldClass",
    "PAIR_SYSTEMS",
    "pair_to_model",
    "classify_pair",
    "classify_valuation",
    "classify_world",
    "enumerate_worlds",
    "realize_system",
]

PAIR_SYSTEMS = ("K", "KD", "KT", "KC", "KDC")


@dataclass(frozen=True)
class DefinedModalPair:
    reality: PartialValuation
    world: PartialValuation
    shared: PartialValuation = EMPTY
    atoms: tuple = ()
    mode: EvalMode = EvalMode.PRINTED

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            domain = self.reality.domain | self.world.domain | self.shared.domain
            atoms = tuple(sorted(domain))
        object.__setattr__(self, "atoms", atoms)
        for label, v in (("reality", self.reality), ("world", self.world), ("shared", self.shared)):
            stray = v.domain - set(atoms)
            if stray:
                raise ModelError(f"{label} valuation assigns undeclared atoms {sorted(stray)}")
        if not self.shared <= self.reality:
            raise ModelError("reality is not admissible: it does not contain the shared valuation")
        if not self.shared <= self.world:
            raise ModelError("world is not admissible: it does not contain the shared valuation")


def pair_to_model(p: DefinedModalPair) -> KripkeModel:
    """Two-world model ``R -> w`` in which ``[]f`` at ``R`` reads ``f`` at ``w``.

    ``w`` also sees itself, so boxes evaluated at ``w`` are not vacuous and
    ``[]f`` takes the same value at both worlds.
    """
    return KripkeModel(
        atoms=p.atoms,
        worlds=(World("R", p.reality), World("w", p.world)),
        relation=frozenset({("R", "w"), ("w", "w")}),
        shared=p.shared,
        reality="R",
        mode=p.mode,
    )


@dataclass(frozen=True)
class SystemProfile:
    K: bool
    KD: bool
    KT: bool
    KC: bool
    KDC: bool
    w_total: bool
    w_subset_R: bool
    R_subset_w: bool

    @property
    def systems(self) -> tuple:
        return tuple(s for s in PAIR_SYSTEMS if getattr(self, s))


def classify_pair(p: DefinedModalPair) -> SystemProfile:
    total = p.world.is_total(p.atoms)
    w_in_r = p.world <= p.reality
    r_in_w = p.reality <= p.world
    return SystemProfile(
        K=True,
        KD=total,
        KT=w_in_r,
        KC=r_in_w,
        KDC=r_in_w and total,
        w_total=total,
        w_subset_R=w_in_r,
        R_subset_w=r_in_w,
    )


class WorldClass(Enum):
    REALITY = "Reality"
    EPISTEMIC = "Epistemic"
    CONJECTURAL = "Conjectural"
    DELUSIONAL = "Delusional"
    OPINION = "Opinion"
    MIXED = "Mixed"

    def __str__(self):
        return self.value


def classify_valuation(v: PartialValuation, reality: PartialValuation, shared: PartialValuation = EMPTY) -> WorldClass:
    """Place ``v`` in the taxonomy relative to ``reality``.

    Precedence is Reality, Epistemic, Conjectural, Delusional, Opinion and
    finally Mixed for worlds that extend part of reality, omit part of it and
    contradict none of it.
    """
    if v == reality:
        return WorldClass.REALITY
    if v <= reality:
        return WorldClass.EPISTEMIC
    if reality <= v:
        return WorldClass.CONJECTURAL
    if v.conflicts(reality):
        return WorldClass.DELUSIONAL
    if v.domain & reality.domain == shared.domain:
        return WorldClass.OPINION
    return WorldClass.MIXED


def classify_world(p: DefinedModalPair) -> WorldClass:
    return classify_valuation(p.world, p.reality, p.shared)


def _canonical_order(atoms: Sequence[str]):
    rank = {a: i for i, a in enumerate(atoms)}

    def key(v: PartialValuation):
        codes = [2] * len(atoms)
        for a, value in v.literals:
            codes[rank[a]] = 0 if value else 1
        return (len(v), tuple(codes))

    return key


def enumerate_worlds(atoms: Sequence[str], shared: PartialValuation, reality: PartialValuation) -> list:
    """Every admissible partial valuation over ``atoms`` with its class.

    Ordered by number of literals, then atom by atom with ``p`` before
    ``!p`` before unassigned.
    """
    atoms = tuple(atoms)
    for label, v in (("shared", shared), ("reality", reality)):
        stray = v.domain - set(atoms)
        if stray:
            raise ModelError(f"{label} valuation assigns undeclared atoms {sorted(stray)}")
    if not shared <= reality:
        raise ModelError("reality does not contain the shared valuation")
    free = [a for a in atoms if a not in shared.domain]
    worlds = []
    for choice in product((None, True, False), repeat=len(free)):
        lits = set(shared.literals)
        lits.update((a, c) for a, c in zip(free, choice) if c is not None)
        worlds.append(PartialValuation(frozenset(lits)))
    worlds.sort(key=_canonical_order(atoms))
    return [(v, classify_valuation(v, reality, shared)) for v in worlds]


def _least_completion(v: PartialValuation, atoms: Sequence[str]) -> PartialValuation:
    # p sorts before !p, so the least completion sets every free atom true
    missing = {a: True for a in atoms if a not in v.domain}
    return v.union(PartialValuation.of(missing))


def realize_system(system: str, atoms: Sequence[str], reality: PartialValuation,
                   shared: PartialValuation = EMPTY, mode: EvalMode = EvalMode.PRINTED) -> DefinedModalPair:
    """Build a canonical pair whose profile includes ``system``."""
    atoms = tuple(atoms)
    if system in ("K", "KT"):
        world = shared
    elif system == "KD":
        world = _least_completion(shared, atoms)
    elif system == "KC":
        world = reality
    elif system == "KDC":
        world = _least_completion(reality, atoms)
    else:
        raise ValueError(f"no pair construction for {system!r}; expected one of {', '.join(PAIR_SYSTEMS)}")
    return DefinedModalPair(reality, world, shared, atoms, mode)
