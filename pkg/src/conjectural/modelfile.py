"""Line-oriented model files.

::

    # comment
    atoms: a b c
    mode: printed
    shared: a
    world R: a !b
    world w: a !b c
    edge: R w
    reality: R

``atoms:`` must be the first directive. ``mode`` defaults to printed,
``shared`` to empty and ``reality`` to the first world.
"""

from __future__ import annotations

import re
from pathlib import Path

from .kleene import EvalMode
from .model import EMPTY, WORLD_NAME_RE, KripkeModel, ModelError, PartialValuation, World
from .syntax import ATOM_RE

__all__ = ["ModelFileError", "parse_model_text", "read_model", "format_model", "write_model"]

_WORLD = re.compile(r"world\s+(\S+?)\s*:(.*)")


class ModelFileError(ModelError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _declared(v: PartialValuation, atoms, lineno) -> PartialValuation:
    stray = sorted(v.domain - set(atoms))
    if stray:
        raise ModelFileError(f"undeclared atoms {stray}", lineno)
    return v


def parse_model_text(text: str) -> KripkeModel:
    atoms = None
    mode = EvalMode.PRINTED
    shared = EMPTY
    worlds: list = []
    edges: list = []
    reality = None
    seen: set = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _WORLD.fullmatch(line)
        key = "world" if m else line.split(":", 1)[0].strip()
        if ":" not in line:
            raise ModelFileError(f"expected '<keyword>: ...', got {line!r}", lineno)
        rest = line.split(":", 1)[1].strip()
        if atoms is None and key != "atoms":
            raise ModelFileError("the first directive must be 'atoms:'", lineno)
        if key in seen and key in ("atoms", "mode", "shared", "reality"):
            raise ModelFileError(f"duplicate '{key}:' directive", lineno)
        seen.add(key)
        try:
            if key == "atoms":
                atoms = tuple(rest.split())
                bad = [a for a in atoms if not ATOM_RE.fullmatch(a)]
                if bad:
                    raise ModelFileError(f"bad atom name {bad[0]!r}", lineno)
            elif key == "mode":
                try:
                    mode = EvalMode(rest)
                except ValueError:
                    raise ModelFileError(f"mode must be printed or contagious, got {rest!r}", lineno) from None
            elif key == "shared":
                shared = _declared(PartialValuation.parse(rest), atoms, lineno)
            elif key == "world":
                name = m.group(1)
                if not WORLD_NAME_RE.fullmatch(name):
                    raise ModelFileError(f"bad world name {name!r}", lineno)
                worlds.append(World(name, _declared(PartialValuation.parse(m.group(2)), atoms, lineno)))
            elif key == "edge":
                parts = rest.split()
                if len(parts) != 2:
                    raise ModelFileError("edge takes exactly two world names", lineno)
                edges.append(tuple(parts))
            elif key == "reality":
                reality = rest
            else:
                raise ModelFileError(f"unknown directive {key!r}", lineno)
        except ModelFileError:
            raise
        except ModelError as exc:
            raise ModelFileError(str(exc), lineno) from None

    if atoms is None:
        raise ModelFileError("missing 'atoms:' directive")
    if not worlds:
        raise ModelFileError("model declares no worlds")
    return KripkeModel(atoms, tuple(worlds), frozenset(edges), shared, reality, mode)


def read_model(path) -> KripkeModel:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ModelFileError(f"{path}: not valid UTF-8") from exc
    return parse_model_text(text)


def format_model(m: KripkeModel) -> str:
    order = m.atoms
    lines = [f"atoms: {' '.join(order)}".rstrip(), f"mode: {m.mode.value}"]
    lines.append(f"shared: {' '.join(m.shared.ordered_literals(order))}".rstrip())
    for w in m.worlds:
        lines.append(f"world {w.name}: {' '.join(w.valuation.ordered_literals(order))}".rstrip())
    for src, dst in m.sorted_edges:
        lines.append(f"edge: {src} {dst}")
    lines.append(f"reality: {m.reality}")
    return "\n".join(lines) + "\n"


def write_model(m: KripkeModel, path) -> None:
    Path(path).write_text(format_model(m), encoding="utf-8")
