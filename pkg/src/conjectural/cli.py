"""Command-line front end.

Exit codes: 0 success, 1 a checked system fails, 2 usage or input error.
Every command accepts ``--json`` for a machine-readable report.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter

from .enumeration import FormulaBound
from .kleene import EvalMode
from .model import KripkeModel, ModelError, PartialValuation, World, evaluate
from .modelfile import format_model, read_model
from .pairs import WorldClass, classify_valuation, enumerate_worlds
from .settlement import Settlement, SettlementError, apply_settlement
from .syntax import ParseError, atoms, connectives, modal_depth, parse, to_text
from .systems import SYSTEMS, check_system, collapse_check


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _values(v: PartialValuation, order) -> list:
    return v.ordered_literals(order)


def _counts(classes) -> dict:
    tally = Counter(classes)
    return {c.value: tally.get(c, 0) for c in WorldClass}


def _count_line(counts: dict) -> str:
    return "counts: " + " ".join(f"{k}={v}" for k, v in counts.items())


# ---------------------------------------------------------------------------
# Commands


def cmd_parse(args, out):
    f = parse(args.formula)
    if args.json:
        return {
            "formula": to_text(f),
            "connectives": connectives(f),
            "modal_depth": modal_depth(f),
            "atoms": sorted(a.name for a in atoms(f)),
        }, 0
    print(to_text(f), file=out)
    return None, 0


def cmd_eval(args, out):
    m = read_model(args.model)
    if args.mode:
        m = m.with_mode(EvalMode(args.mode))
    f = parse(args.formula)
    value = evaluate(m, args.world, f)
    if args.json:
        return {"world": args.world, "formula": to_text(f), "mode": m.mode.value, "value": value.value}, 0
    print(value.value, file=out)
    return None, 0


def _system_json(report):
    schemas = []
    for s in report.schemas:
        w = s.witness
        schemas.append({
            "schema": s.schema.value,
            "status": s.status.value,
            "witness": None if w is None else {
                "world": w.world,
                "phi": to_text(w.phi),
                "psi": None if w.psi is None else to_text(w.psi),
                "value": w.value.value,
            },
        })
    return {
        "system": report.system,
        "holds": report.holds,
        "valid": report.valid,
        "bound": {"max_connectives": report.bound.max_connectives, "max_depth": report.bound.max_modal_depth},
        "schemas": schemas,
        "conditions": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.conditions],
    }


def cmd_check(args, out):
    m = read_model(args.file)
    bound = FormulaBound(args.max_connectives, args.max_depth, m.atoms)
    report = check_system(m, args.system, bound)
    code = 0 if report.holds else 1
    if args.json:
        return _system_json(report), code
    print(report.render(), file=out)
    return None, code


def cmd_classify(args, out):
    m = read_model(args.file)
    reality = m.reality_valuation
    rows = [(w, classify_valuation(w.valuation, reality, m.shared)) for w in m.worlds]
    counts = _counts(c for _, c in rows)
    if args.json:
        return {
            "reality": m.reality,
            "worlds": [{"name": w.name, "valuation": _values(w.valuation, m.atoms), "class": c.value} for w, c in rows],
            "counts": counts,
        }, 0
    for w, c in rows:
        print(f"{w.name}: {w.valuation.render(m.atoms)} -> {c}", file=out)
    print(_count_line(counts), file=out)
    return None, 0


def _atom_list(text: str) -> tuple:
    return tuple(t for t in re.split(r"[\s,]+", text.strip()) if t)


def cmd_enumerate(args, out):
    order = _atom_list(args.atoms)
    if len(set(order)) != len(order):
        raise ModelError("duplicate atom in --atoms")
    shared = PartialValuation.parse(args.shared)
    reality = PartialValuation.parse(args.reality)
    rows = enumerate_worlds(order, shared, reality)
    counts = _counts(c for _, c in rows)
    inclusion = {
        "Epistemic": sum(1 for v, _ in rows if v <= reality),
        "Conjectural": sum(1 for v, _ in rows if reality <= v),
    }
    if args.json:
        return {
            "atoms": list(order),
            "worlds": [{"valuation": _values(v, order), "class": c.value} for v, c in rows],
            "counts": counts,
            "inclusion": inclusion,
        }, 0
    for v, c in rows:
        print(f"{v.render(order)} -> {c}", file=out)
    print(_count_line(counts), file=out)
    print("inclusion: " + " ".join(f"{k}={v}" for k, v in inclusion.items()), file=out)
    return None, 0


def _truth(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1"):
        return True
    if lowered in ("false", "0"):
        return False
    raise UsageError(f"--value must be true or false, got {text!r}")


def cmd_settle(args, out):
    m = read_model(args.model)
    outcome = apply_settlement(m, Settlement(parse(args.formula), _truth(args.value)))
    text = format_model(outcome.model)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        result = outcome.model
        return {
            "reality": result.reality,
            "reality_valuation": _values(result.reality_valuation, result.atoms),
            "previous_reality": outcome.previous_reality,
            "previous_reality_class": outcome.previous_reality_class.value,
            "reclassifications": [
                {"world": r.world, "before": r.before.value if r.before else None, "after": r.after.value}
                for r in outcome.reclassifications
            ],
            "flagged_edges": [list(e) for e in outcome.flagged_edges()],
            "model": None if args.out else text,
        }, 0
    if args.out:
        print(outcome.summary(), file=out)
    else:
        # the summary goes in comments so stdout stays a readable model file
        out.write(text)
        for line in outcome.summary().splitlines():
            print(f"# {line}", file=out)
    return None, 0


def _collapse_model(paracomplete: bool) -> KripkeModel:
    if paracomplete:
        return KripkeModel(
            atoms=("a",),
            worlds=(World("r", PartialValuation.of()), World("s", PartialValuation.of(a=True))),
            relation=frozenset({("r", "s"), ("s", "s")}),
        )
    return KripkeModel(
        atoms=("p", "q"),
        worlds=(World("w", PartialValuation.of(p=True, q=False)),),
        relation=frozenset({("w", "w")}),
    )


def cmd_collapse_demo(args, out):
    m = _collapse_model(args.paracomplete)
    bound = FormulaBound(4, 2, m.atoms)
    result = collapse_check(m, bound)
    if args.json:
        w = result.witness
        return {
            "model": format_model(m),
            "status": result.status.value,
            "witness": None if w is None else {"world": w.world, "phi": to_text(w.phi), "value": w.value.value},
        }, 0
    for line in format_model(m).splitlines():
        print(f"# {line}", file=out)
    print(result.render("phi <-> []phi"), file=out)
    if result.valid:
        print("box is redundant on this model: modal collapse", file=out)
    else:
        print("box is not redundant on this model: collapse avoided", file=out)
    return None, 0


# ---------------------------------------------------------------------------
# Wiring


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    p = _Parser(prog="conjectural", description="Conjectural modal logic workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="parse and normalise a formula")
    s.add_argument("formula")
    s.set_defaults(run=cmd_parse)

    s = sub.add_parser("eval", parents=[common], help="evaluate a formula at a world")
    s.add_argument("--model", required=True)
    s.add_argument("--world", required=True)
    s.add_argument("--mode", choices=[m.value for m in EvalMode])
    s.add_argument("formula")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("check", parents=[common], help="check a modal system on a model")
    s.add_argument("--system", required=True, choices=list(SYSTEMS))
    s.add_argument("--max-connectives", type=int, default=4)
    s.add_argument("--max-depth", type=int, default=2)
    s.add_argument("file")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("classify", parents=[common], help="classify the worlds of a model")
    s.add_argument("file")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("enumerate", parents=[common], help="list and classify all admissible worlds")
    s.add_argument("--atoms", required=True)
    s.add_argument("--shared", default="")
    s.add_argument("--reality", required=True)
    s.set_defaults(run=cmd_enumerate)

    s = sub.add_parser("settle", parents=[common], help="settle a formula in reality")
    s.add_argument("--model", required=True)
    s.add_argument("--formula", required=True)
    s.add_argument("--value", required=True)
    s.add_argument("--out")
    s.set_defaults(run=cmd_settle)

    s = sub.add_parser("collapse-demo", parents=[common], help="show collapse and how partiality avoids it")
    s.add_argument("--paracomplete", action="store_true")
    s.set_defaults(run=cmd_collapse_demo)
    return p


def _one_line(exc: BaseException) -> str:
    return " ".join(str(exc).split())


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "max_connectives", 0) < 0 or getattr(args, "max_depth", 0) < 0:
            raise UsageError("bounds must be non-negative")
        payload, code = args.run(args, out)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"conjectural: usage error: {_one_line(exc)}", file=err)
        return 2
    except (ParseError, ModelError, SettlementError, OSError, ValueError) as exc:
        print(f"conjectural: error: {_one_line(exc)}", file=err)
        return 2
    if payload is not None:
        print(json.dumps(payload, indent=2, sort_keys=True), file=out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
