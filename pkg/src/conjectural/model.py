"""Kripke models over partial valuations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .kleene import EvalMode, TruthValue, and_, conjunction, iff, implies, neg, or_
from .syntax import Atom, And, Box, Formula, Iff, Implies, Not, Or, ATOM_RE
from . import syntax

__all__ = [
    "ModelError",
    "PartialValuation",
    "World",
    "KripkeModel",
    "FrameProperties",
    "evaluate",
    "satisfies",
    "defined_set",
    "is_definedness_preserving",
    "check_c_propagation",
    "frame_properties",
    "close_serial",
    "close_transitive",
    "close_euclidean",
]

WORLD_NAME_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_'*]*")


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class PartialValuation:
    """Consistent partial assignment of atoms to true/false.

    Stored as a frozenset of ``(atom, value)`` literals, so ``<=`` is the
    definedness-preserving extension order.
    """

    literals: frozenset = frozenset()

    def __post_init__(self):
        lits = frozenset(self.literals)
        object.__setattr__(self, "literals", lits)
        seen = {}
        for name, value in lits:
            if not isinstance(value, bool) or not ATOM_RE.fullmatch(name):
                raise ModelError(f"bad literal {(name, value)!r}")
            if name in seen:
                raise ModelError(f"inconsistent valuation: {name} assigned both values")
            seen[name] = value

    @classmethod
    def of(cls, mapping: Mapping[str, bool] | None = None, **kwargs) -> "PartialValuation":
        items = dict(mapping or {}, **kwargs)
        return cls(frozenset((k, bool(v)) for k, v in items.items()))

    @classmethod
    def parse(cls, text: str) -> "PartialValuation":
        """Read ``"a !b c"``; commas and braces are tolerated."""
        out = {}
        for tok in re.split(r"[\s,{}]+", text.strip()):
            if not tok:
                continue
            value = not tok.startswith("!")
            name = tok.lstrip("!")
            if tok.count("!") > 1 or not ATOM_RE.fullmatch(name):
                raise ModelError(f"bad literal {tok!r}")
            if name in out and out[name] != value:
                raise ModelError(f"inconsistent valuation: {name} assigned both values")
            out[name] = value
        return cls.of(out)

    @cached_property
    def mapping(self) -> dict:
        return dict(self.literals)

    @property
    def domain(self) -> frozenset:
        return frozenset(self.mapping)

    def get(self, atom: str) -> TruthValue:
        value = self.mapping.get(atom)
        if value is None:
            return TruthValue.UNDEF
        return TruthValue.from_bool(value)

    def __len__(self):
        return len(self.literals)

    def __contains__(self, literal):
        return literal in self.literals

    def __le__(self, other: "PartialValuation") -> bool:
        return self.literals <= other.literals

    def __lt__(self, other: "PartialValuation") -> bool:
        return self.literals < other.literals

    def __ge__(self, other: "PartialValuation") -> bool:
        return self.literals >= other.literals

    def __gt__(self, other: "PartialValuation") -> bool:
        return self.literals > other.literals

    def union(self, other: "PartialValuation") -> "PartialValuation":
        return PartialValuation(self.literals | other.literals)

    def extend(self, atom: str, value: bool) -> "PartialValuation":
        return PartialValuation(self.literals | {(atom, bool(value))})

    def conflicts(self, other: "PartialValuation") -> list[str]:
        """Atoms that the two valuations assign opposite values."""
        mine, theirs = self.mapping, other.mapping
        return sorted(a for a in mine.keys() & theirs.keys() if mine[a] != theirs[a])

    def is_total(self, atoms: Iterable[str]) -> bool:
        return set(atoms) <= self.domain

    def ordered_literals(self, order: Sequence[str]) -> list[str]:
        rank = {a: i for i, a in enumerate(order)}
        keys = sorted(self.mapping, key=lambda a: (rank.get(a, len(rank)), a))
        return [a if self.mapping[a] else "!" + a for a in keys]

    def render(self, order: Sequence[str] = ()) -> str:
        return "{" + ", ".join(self.ordered_literals(order)) + "}"

    def __str__(self):
        return self.render()


EMPTY = PartialValuation()


@dataclass(frozen=True)
class World:
    name: str
    valuation: PartialValuation = EMPTY

    def __post_init__(self):
        if not WORLD_NAME_RE.fullmatch(self.name):
            raise ModelError(f"invalid world name {self.name!r}")


@dataclass(frozen=True)
class KripkeModel:
    """Worlds, accessibility relation, shared base and designated reality.

    Worlds keep their insertion order; every fold over successors and every
    report walks worlds in that order.
    """

    atoms: tuple
    worlds: tuple
    relation: frozenset = frozenset()
    shared: PartialValuation = EMPTY
    reality: str | None = None
    mode: EvalMode = EvalMode.PRINTED

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "relation", frozenset(tuple(e) for e in self.relation))
        if not self.worlds:
            raise ModelError("a model needs at least one world")
        if len(set(self.atoms)) != len(self.atoms):
            raise ModelError("duplicate atom in universe")
        for a in self.atoms:
            if not ATOM_RE.fullmatch(a):
                raise ModelError(f"invalid atom name {a!r}")
        names = [w.name for w in self.worlds]
        if len(set(names)) != len(names):
            raise ModelError("world names must be unique")
        universe = set(self.atoms)
        if not self.shared.domain <= universe:
            raise ModelError(f"shared valuation mentions undeclared atoms {sorted(self.shared.domain - universe)}")
        for w in self.worlds:
            stray = w.valuation.domain - universe
            if stray:
                raise ModelError(f"world {w.name} assigns undeclared atoms {sorted(stray)}")
            if not self.shared <= w.valuation:
                raise ModelError(f"world {w.name} is not admissible: it does not contain the shared valuation")
        known = set(names)
        for src, dst in self.relation:
            if src not in known or dst not in known:
                raise ModelError(f"edge {src} -> {dst} names an unknown world")
        if self.reality is None:
            object.__setattr__(self, "reality", names[0])
        elif self.reality not in known:
            raise ModelError(f"reality world {self.reality!r} does not exist")

    @cached_property
    def index(self) -> dict:
        return {w.name: i for i, w in enumerate(self.worlds)}

    @cached_property
    def _successor_table(self) -> dict:
        table = {w.name: [] for w in self.worlds}
        for src, dst in self.relation:
            table[src].append(dst)
        order = self.index
        return {k: tuple(sorted(v, key=order.__getitem__)) for k, v in table.items()}

    def world(self, name: str) -> World:
        try:
            return self.worlds[self.index[name]]
        except KeyError:
            raise ModelError(f"unknown world {name!r}") from None

    def valuation(self, name: str) -> PartialValuation:
        return self.world(name).valuation

    def successors(self, name: str) -> tuple:
        if name not in self._successor_table:
            raise ModelError(f"unknown world {name!r}")
        return self._successor_table[name]

    @property
    def names(self) -> tuple:
        return tuple(w.name for w in self.worlds)

    @property
    def sorted_edges(self) -> list:
        order = self.index
        return sorted(self.relation, key=lambda e: (order[e[0]], order[e[1]]))

    @property
    def reality_valuation(self) -> PartialValuation:
        return self.valuation(self.reality)

    def fresh_name(self, base: str, suffix: str = "'") -> str:
        name = base + suffix
        while name in self.index:
            name += suffix
        return name

    def with_mode(self, mode: EvalMode) -> "KripkeModel":
        return replace(self, mode=mode)


# ---------------------------------------------------------------------------
# Evaluation


def _check_atoms(m: KripkeModel, f: Formula):
    stray = {a.name for a in syntax.atoms(f)} - set(m.atoms)
    if stray:
        raise ModelError(f"formula uses atoms outside the model's universe: {sorted(stray)}")


def _eval(m: KripkeModel, w: str, f: Formula, memo: dict) -> TruthValue:
    key = (w, f)
    hit = memo.get(key)
    if hit is not None:
        return hit
    mode = m.mode
    if isinstance(f, Atom):
        result = m.valuation(w).get(f.name)
    elif isinstance(f, Not):
        result = neg(_eval(m, w, f.operand, memo))
    elif isinstance(f, Box):
        result = conjunction((_eval(m, s, f.operand, memo) for s in m.successors(w)), mode)
    elif isinstance(f, And):
        result = and_(_eval(m, w, f.left, memo), _eval(m, w, f.right, memo), mode)
    elif isinstance(f, Or):
        result = or_(_eval(m, w, f.left, memo), _eval(m, w, f.right, memo), mode)
    elif isinstance(f, Implies):
        result = implies(_eval(m, w, f.left, memo), _eval(m, w, f.right, memo), mode)
    elif isinstance(f, Iff):
        result = iff(_eval(m, w, f.left, memo), _eval(m, w, f.right, memo), mode)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = result
    return result


def evaluate(m: KripkeModel, w: str, f: Formula | str) -> TruthValue:
    """Truth value of ``f`` at world ``w``.

    Unassigned atoms are ``u``. ``[]f`` is the conjunction of ``f`` over the
    successors of ``w``, so a world without successors makes every box true.
    """
    if isinstance(f, str):
        f = syntax.parse(f)
    m.world(w)
    _check_atoms(m, f)
    return _eval(m, w, f, {})


def satisfies(m: KripkeModel, w: str, f: Formula | str) -> bool:
    return evaluate(m, w, f) is TruthValue.TRUE


def defined_set(m: KripkeModel, w: str, fs: Iterable[Formula]) -> set:
    """The members of ``fs`` that take a classical value at ``w``."""
    return {f for f in fs if evaluate(m, w, f).defined}


def is_definedness_preserving(m: KripkeModel) -> tuple[bool, list]:
    """Check that every edge only extends valuations.

    Returns ``(ok, violations)`` where each violation is ``((src, dst), atom)``.
    """
    violations = []
    for src, dst in m.sorted_edges:
        before, after = m.valuation(src).mapping, m.valuation(dst).mapping
        for atom in m.atoms:
            if atom in before and after.get(atom) != before[atom]:
                violations.append(((src, dst), atom))
    return not violations, violations


@dataclass(frozen=True)
class PropagationWitness:
    world: str
    formula: Formula
    successor: str

    def __str__(self):
        return f"world={self.world} phi={syntax.to_text(self.formula)} successor={self.successor}"


def check_c_propagation(m: KripkeModel, bound=None) -> tuple[bool, PropagationWitness | None]:
    """Every enumerated formula true at a world stays true at its successors.

    The formula set is ``enumerate_formulas(bound)`` (default: at most 5
    connectives, modal depth at most 2, the model's atoms). The witness is
    the least counterexample ordered by formula, then world, then successor.
    """
    from .enumeration import FormulaBound, first_formula_with_profile, reachable_profiles

    if bound is None:
        bound = FormulaBound(5, 2, m.atoms)
    profiles = reachable_profiles(m, bound)
    idx = m.index
    edges = [(idx[s], idx[d]) for s, d in m.sorted_edges]
    if not edges:
        return True, None
    from .profiles import TRUE_CODE

    bad = set()
    for row in profiles:
        for s, d in edges:
            if row[s] == TRUE_CODE and row[d] != TRUE_CODE:
                bad.add(tuple(int(x) for x in row))
                break
    if not bad:
        return True, None
    formula, row = first_formula_with_profile(m, bound, bad)
    for s, d in edges:
        if row[s] == TRUE_CODE and row[d] != TRUE_CODE:
            return False, PropagationWitness(m.names[s], formula, m.names[d])
    raise AssertionError("profile witness lost")  # pragma: no cover


# ---------------------------------------------------------------------------
# Frame conditions and closures


@dataclass(frozen=True)
class FrameProperties:
    serial: bool
    reflexive: bool
    transitive: bool
    euclidean: bool


def frame_properties(m: KripkeModel) -> FrameProperties:
    rel = m.relation
    succ = {n: set(m.successors(n)) for n in m.names}
    serial = all(succ[n] for n in m.names)
    reflexive = all((n, n) in rel for n in m.names)
    transitive = all((x, z) in rel for x, y in rel for z in succ[y])
    euclidean = all((y, z) in rel for x in m.names for y in succ[x] for z in succ[x])
    return FrameProperties(serial, reflexive, transitive, euclidean)


def successorless(m: KripkeModel) -> list[str]:
    return [n for n in m.names if not m.successors(n)]


def close_serial(m: KripkeModel) -> KripkeModel:
    """Give every successorless world ``w`` a copy ``w*`` that it can see.

    The copy sees itself, so the result is serial and a second application
    changes nothing.
    """
    dead = successorless(m)
    if not dead:
        return m
    worlds = list(m.worlds)
    relation = set(m.relation)
    taken = set(m.names)
    for name in dead:
        star = name + "*"
        while star in taken:
            star += "*"
        taken.add(star)
        worlds.append(World(star, m.valuation(name)))
        relation.add((name, star))
        relation.add((star, star))
    return replace(m, worlds=tuple(worlds), relation=frozenset(relation))


def _fixpoint(m: KripkeModel, step) -> KripkeModel:
    relation = set(m.relation)
    while True:
        added = step(relation) - relation
        if not added:
            break
        relation |= added
    if relation == m.relation:
        return m
    return replace(m, relation=frozenset(relation))


def close_transitive(m: KripkeModel) -> KripkeModel:
    return _fixpoint(m, lambda rel: {(x, z) for x, y in rel for y2, z in rel if y == y2})


def close_euclidean(m: KripkeModel) -> KripkeModel:
    return _fixpoint(m, lambda rel: {(y, z) for x, y in rel for x2, z in rel if x == x2})
