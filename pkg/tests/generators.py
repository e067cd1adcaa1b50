"""Seeded random generators for the acceptance suite."""

import random

from conjectural.kleene import EvalMode
from conjectural.model import KripkeModel, PartialValuation, World
from conjectural.settlement import Settlement
from conjectural.syntax import And, Atom, Box, Iff, Implies, Not, Or

UNARY = (Not, Box)
BINARY = (And, Or, Implies, Iff)


def random_formula(rng: random.Random, atoms, size: int):
    """Random formula with exactly ``size`` connectives."""
    if size == 0:
        return Atom(rng.choice(atoms))
    if rng.random() < 0.35:
        return rng.choice(UNARY)(random_formula(rng, atoms, size - 1))
    left = rng.randint(0, size - 1)
    return rng.choice(BINARY)(random_formula(rng, atoms, left), random_formula(rng, atoms, size - 1 - left))


def random_valuation(rng: random.Random, atoms, p_defined=0.5) -> PartialValuation:
    return PartialValuation.of({a: rng.random() < 0.5 for a in atoms if rng.random() < p_defined})


def random_model(rng: random.Random, atoms=("p", "q", "r"), max_worlds=4) -> KripkeModel:
    shared = random_valuation(rng, atoms, 0.3)
    free = [a for a in atoms if a not in shared.domain]
    n = rng.randint(1, max_worlds)
    worlds = tuple(World(f"w{i}", shared.union(random_valuation(rng, free))) for i in range(n))
    names = [w.name for w in worlds]
    edges = {(x, y) for x in names for y in names if rng.random() < 0.35}
    mode = rng.choice(list(EvalMode))
    return KripkeModel(tuple(atoms), worlds, frozenset(edges), shared, rng.choice(names), mode)


def random_kdc_model(rng: random.Random, atoms=("p", "q", "r", "s"), max_worlds=5) -> KripkeModel:
    """Chains that only ever add literals, ending in a self-loop.

    Every world has one successor, or several that are exact copies of one
    another. Valuations grow along every edge, so truths persist and no box
    is vacuous.
    """
    atoms = tuple(atoms)
    n = rng.randint(1, max_worlds)
    vals = [random_valuation(rng, atoms, 0.3)]
    for _ in range(n - 1):
        cur = vals[-1]
        free = [a for a in atoms if a not in cur.domain]
        vals.append(cur.union(random_valuation(rng, free, 0.4)))
    names = [f"w{i}" for i in range(n)]
    worlds = [World(name, v) for name, v in zip(names, vals)]
    edges = {(names[i], names[i + 1]) for i in range(n - 1)} | {(names[-1], names[-1])}
    # optionally duplicate the last world; both copies see themselves and each other
    if rng.random() < 0.5:
        twin = names[-1] + "b"
        worlds.append(World(twin, vals[-1]))
        edges |= {(twin, twin), (twin, names[-1]), (names[-1], twin)}
        if n > 1:
            edges.add((names[-2], twin))
    mode = rng.choice(list(EvalMode))
    return KripkeModel(atoms, tuple(worlds), frozenset(edges), reality=rng.choice(names), mode=mode)


def random_sequence(rng: random.Random, m: KripkeModel, max_len=5):
    """Non-contradictory atomic settlements on atoms undefined in reality."""
    free = [a for a in m.atoms if a not in m.reality_valuation.domain]
    rng.shuffle(free)
    k = rng.randint(0, min(max_len, len(free)))
    return [Settlement(Atom(a), rng.random() < 0.5) for a in free[:k]]
