"""Settlement events: giving a previously undefined formula a value in reality.

A settlement never rewrites existing worlds or edges. It moves the reality
designation to the world whose valuation is the old reality plus the settled
literals. When no such world exists a fresh one is added; it sees the old
reality's successors that still extend it, or only itself if none do.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from itertools import product
from typing import Iterable, Sequence

from .kleene import TruthValue
from .model import KripkeModel, ModelError, PartialValuation, World, evaluate
from .pairs import WorldClass, classify_valuation
from .syntax import Atom, Formula, atoms, modal_depth, parse, subformulas, to_text
from .systems import FormulaBound, SystemReport, check_system

__all__ = [
    "Settlement",
    "SettlementError",
    "AlreadyDefined",
    "NoRealization",
    "AmbiguousRealization",
    "SettlementContradiction",
    "PreconditionError",
    "Reclassification",
    "SettlementOutcome",
    "CommutationResult",
    "PreservationReport",
    "apply_settlement",
    "apply_sequence",
    "independent",
    "check_commutation",
    "check_preservation",
    "model_difference",
    "relocate",
]


@dataclass(frozen=True)
class Settlement:
    formula: Formula
    value: bool

    def __post_init__(self):
        if isinstance(self.formula, str):
            object.__setattr__(self, "formula", parse(self.formula))
        value = self.value
        if isinstance(value, TruthValue):
            if not value.defined:
                raise ValueError("a settlement assigns 1 or 0, never u")
            value = value is TruthValue.TRUE
        if not isinstance(value, bool):
            raise ValueError(f"settlement value must be boolean, got {value!r}")
        object.__setattr__(self, "value", value)

    def __str__(self):
        return f"settle({to_text(self.formula)} := {1 if self.value else 0})"


class SettlementError(ValueError):
    """A settlement could not be applied. ``step`` is 1-based within a sequence."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.message = message
        self.step = step

    def __str__(self):
        if self.step is None:
            return self.message
        return f"step {self.step}: {self.message}"


class AlreadyDefined(SettlementError):
    pass


class NoRealization(SettlementError):
    pass


class AmbiguousRealization(SettlementError):
    pass


class SettlementContradiction(SettlementError):
    pass


class PreconditionError(SettlementError):
    pass


def relocate(m: KripkeModel, valuation: PartialValuation) -> KripkeModel:
    """Move reality to the first world valued exactly ``valuation``, adding one if needed."""
    if m.reality_valuation == valuation:
        return m
    for w in m.worlds:
        if w.valuation == valuation:
            return replace(m, reality=w.name)
    name = m.fresh_name(m.reality)
    kept = [s for s in m.successors(m.reality) if m.valuation(s) >= valuation]
    edges = {(name, s) for s in kept} or {(name, name)}
    return replace(
        m,
        worlds=m.worlds + (World(name, valuation),),
        relation=m.relation | edges,
        reality=name,
    )


def _realize(m: KripkeModel, current: PartialValuation, s: Settlement) -> PartialValuation:
    here = relocate(m, current)
    value = evaluate(here, here.reality, s.formula)
    if value.defined:
        raise AlreadyDefined(f"{to_text(s.formula)} is already {value} at reality")
    if isinstance(s.formula, Atom):
        return current.extend(s.formula.name, s.value)

    target = TruthValue.from_bool(s.value)
    order = {a: i for i, a in enumerate(m.atoms)}
    free = sorted((a.name for a in atoms(s.formula) if a.name not in current.domain), key=order.__getitem__)
    working = []
    for choice in product((None, True, False), repeat=len(free)):
        ext = PartialValuation.of({a: c for a, c in zip(free, choice) if c is not None})
        if not ext.literals:
            continue
        candidate = relocate(m, current.union(ext))
        if evaluate(candidate, candidate.reality, s.formula) is target:
            working.append(ext)
    minimal = [e for e in working if not any(o < e for o in working)]
    if not minimal:
        raise NoRealization(f"no extension of reality over the atoms of {to_text(s.formula)} makes it {target}")
    if len(minimal) > 1:
        options = ", ".join(e.render(m.atoms) for e in minimal)
        raise AmbiguousRealization(f"{to_text(s.formula)} := {target} has several minimal realizations: {options}")
    return current.union(minimal[0])


@dataclass(frozen=True)
class Reclassification:
    world: str
    before: WorldClass | None
    after: WorldClass

    @property
    def changed(self) -> bool:
        return self.before is not self.after


@dataclass(frozen=True)
class SettlementOutcome:
    model: KripkeModel
    reclassifications: tuple
    previous_reality: str
    previous_reality_class: WorldClass
    previous_valuation: PartialValuation

    def changes(self) -> list:
        return [r for r in self.reclassifications if r.changed]

    def newly(self, cls: WorldClass) -> list:
        return [r.world for r in self.reclassifications if r.after is cls and r.before is not cls]

    def flagged_edges(self) -> list:
        """Edges into worlds that the settlement turned delusional."""
        gone = set(self.newly(WorldClass.DELUSIONAL))
        return [e for e in self.model.sorted_edges if e[1] in gone]

    def summary(self) -> str:
        m = self.model
        lines = [f"reality: {m.reality} {m.reality_valuation.render(m.atoms)}"]
        lines.append(f"previous reality {self.previous_reality}: {self.previous_reality_class}")
        for r in self.reclassifications:
            before = r.before.value if r.before else "new"
            mark = "" if r.changed else " (unchanged)"
            lines.append(f"{r.world}: {before} -> {r.after}{mark}")
        for src, dst in self.flagged_edges():
            lines.append(f"flagged edge: {src} -> {dst} (target contradicts reality)")
        return "\n".join(lines)


def _outcome(before: KripkeModel, after: KripkeModel) -> SettlementOutcome:
    old, new, shared = before.reality_valuation, after.reality_valuation, after.shared
    rows = []
    for w in after.worlds:
        prev = classify_valuation(w.valuation, old, shared) if w.name in before.index else None
        rows.append(Reclassification(w.name, prev, classify_valuation(w.valuation, new, shared)))
    return SettlementOutcome(
        model=after,
        reclassifications=tuple(rows),
        previous_reality=before.reality,
        previous_reality_class=classify_valuation(old, new, shared),
        previous_valuation=old,
    )


def apply_sequence(m: KripkeModel, seq: Sequence[Settlement]) -> SettlementOutcome:
    """Apply settlements left to right.

    Only the final reality is materialised: worlds created for intermediate
    realities are not kept. Errors carry the 1-based step at which they
    occurred.
    """
    current = m.reality_valuation
    settled: dict = {}
    for step, s in enumerate(seq, 1):
        earlier = settled.get(s.formula)
        if earlier is not None and earlier != s.value:
            raise SettlementContradiction(f"{to_text(s.formula)} was already settled to the opposite value", step)
        try:
            current = _realize(m, current, s)
        except SettlementError as exc:
            exc.step = step
            raise
        except ModelError as exc:
            raise SettlementError(str(exc), step) from exc
        settled[s.formula] = s.value
    return _outcome(m, relocate(m, current))


def apply_settlement(m: KripkeModel, s: Settlement) -> SettlementOutcome:
    try:
        return apply_sequence(m, [s])
    except SettlementError as exc:
        exc.step = None
        raise


def independent(f1: Formula, f2: Formula) -> bool:
    return f1 not in subformulas(f2) and f2 not in subformulas(f1)


# ---------------------------------------------------------------------------
# Commutation


def _shape(m: KripkeModel):
    vals = {w.name: w.valuation.literals for w in m.worlds}
    worlds = Counter(vals.values())
    edges = Counter((vals[a], vals[b]) for a, b in m.relation)
    return worlds, edges


def model_difference(a: KripkeModel, b: KripkeModel) -> str | None:
    """First component in which two models differ, ignoring world names."""
    if a.atoms != b.atoms:
        return "atom universe"
    if a.mode is not b.mode:
        return "evaluation mode"
    if a.shared != b.shared:
        return "shared valuation"
    if a.reality_valuation != b.reality_valuation:
        return (f"reality valuation {a.reality_valuation.render(a.atoms)} "
                f"vs {b.reality_valuation.render(b.atoms)}")
    wa, ea = _shape(a)
    wb, eb = _shape(b)
    if wa != wb:
        return "world valuations"
    if ea != eb:
        return "accessibility relation"
    return None


@dataclass(frozen=True)
class CommutationResult:
    kind: str
    witness: str | None = None
    step: int | None = None
    order: tuple | None = None

    COMMUTE = "Commute"
    DIFFER = "Differ"
    ORDER_DEPENDENT = "OrderDependentError"

    @property
    def commutes(self) -> bool:
        return self.kind == self.COMMUTE


def _attempt(m, seq):
    try:
        return apply_sequence(m, seq), None
    except SettlementError as exc:
        return None, exc


def check_commutation(m: KripkeModel, s1: Settlement, s2: Settlement) -> CommutationResult:
    """Apply both orders and compare.

    If both orders fail with the same kind of error, at the same step and on
    the same settlement, the failure is order independent and counts as
    commuting.
    """
    r12, e12 = _attempt(m, [s1, s2])
    r21, e21 = _attempt(m, [s2, s1])
    if e12 is not None and e21 is not None:
        same_step = e12.step == e21.step
        culprit12 = (s1, s2)[e12.step - 1] if e12.step else None
        culprit21 = (s2, s1)[e21.step - 1] if e21.step else None
        if type(e12) is type(e21) and same_step and culprit12 == culprit21:
            return CommutationResult(CommutationResult.COMMUTE, witness=f"both orders fail: {e12}")
        return CommutationResult(CommutationResult.ORDER_DEPENDENT, witness=str(e12), step=e12.step, order=(1, 2))
    if e12 is not None:
        return CommutationResult(CommutationResult.ORDER_DEPENDENT, witness=str(e12), step=e12.step, order=(1, 2))
    if e21 is not None:
        return CommutationResult(CommutationResult.ORDER_DEPENDENT, witness=str(e21), step=e21.step, order=(2, 1))
    diff = model_difference(r12.model, r21.model)
    if diff is None:
        return CommutationResult(CommutationResult.COMMUTE)
    return CommutationResult(CommutationResult.DIFFER, witness=diff)


# ---------------------------------------------------------------------------
# Preservation


@dataclass(frozen=True)
class PreservationReport:
    system: str
    before: SystemReport
    after: SystemReport
    outcome: SettlementOutcome
    pruned: tuple
    flagged_edges: tuple
    depths: tuple = ()

    @property
    def holds(self) -> bool:
        return self.after.holds

    def render(self) -> str:
        lines = [self.after.render()]
        for w in self.pruned:
            lines.append(f"PRUNED {w}: Conjectural -> Delusional")
        for f, d0, d1 in self.depths:
            lines.append(f"DEPTH {to_text(f)}: {d0} -> {d1}")
        return "\n".join(lines)


def check_preservation(m: KripkeModel, seq: Sequence[Settlement], system: str,
                       bound: FormulaBound | None = None,
                       tracked: Iterable[Formula] = ()) -> PreservationReport:
    """Re-check ``system`` after applying ``seq`` to a model that satisfies it.

    Conjectures contradicted by the new reality are listed as pruned; they
    stay in the model and are still checked.
    """
    before = check_system(m, system, bound)
    if not before.holds:
        raise PreconditionError(f"model does not satisfy {system} before settlement")
    tracked = tuple(tracked)
    depth_before = [modal_depth(f) for f in tracked]
    outcome = apply_sequence(m, seq)
    after = check_system(outcome.model, system, bound)
    pruned = tuple(r.world for r in outcome.reclassifications
                   if r.before is WorldClass.CONJECTURAL and r.after is WorldClass.DELUSIONAL)
    flagged = tuple(e for e in outcome.model.sorted_edges if e[1] in pruned)
    depths = tuple((f, d, modal_depth(f)) for f, d in zip(tracked, depth_before))
    return PreservationReport(system, before, after, outcome, pruned, flagged, depths)
