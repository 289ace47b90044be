"""Command-line front end.

    vancycles run --scenario FILE         run a scenario file (one object or {"scenarios": [...]})
    vancycles golden                      run the bundled golden cases (also: --suite golden)
    vancycles doublebox --case deq4       double-box report
    vancycles jk --kappa 4                J_{kappa,inf} spectrum
    vancycles slc-table                   sigma~^2 for every catalog row
    vancycles sss --scenario FILE         SSS formula from a scenario file

Exit codes: 0 success, 1 computational inconsistency (or a failed golden
case), 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import InconsistencyError, InputError
from .render import render


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from None


def _emit(report, args):
    if args.format == "ascii":
        text = render(report)
    else:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args):
    from .scenario import run_document
    if not args.scenario:
        raise InputError("run needs --scenario")
    return run_document(_load(args.scenario), jobs=args.jobs, seed=args.seed), 0


def _cmd_golden(args):
    from .golden import run_golden, summary
    out = summary(run_golden())
    return out, 0 if not out["failed"] else 1


def _cmd_doublebox(args):
    from .scenario import run_scenario
    seed = 1 if args.seed is None else args.seed
    return run_scenario({"name": f"doublebox_{args.case}", "kind": "doublebox",
                         "case": args.case, "seed": seed}), 0


def _cmd_jk(args):
    from .scenario import run_scenario
    return run_scenario({"name": f"jk_kappa_{args.kappa}", "kind": "jk", "kappa": args.kappa}), 0


def _cmd_slc_table(args):
    from .scenario import run_scenario
    from .sss import table_one_types
    rows = []
    for t in table_one_types():
        sc = {"name": t.label, "kind": "slc", "type": t.to_json()}
        if t.family == "D_inf":
            sc["fixture"] = "pinch_point_yomdin"
        rows.append(run_scenario(sc))
    return {"rows": rows}, 0


def _cmd_sss(args):
    from .scenario import run_document
    if not args.scenario:
        raise InputError("sss needs --scenario")
    doc = _load(args.scenario)
    items = doc["scenarios"] if isinstance(doc, dict) and "scenarios" in doc else [doc]
    for x in items:
        if isinstance(x, dict) and x.get("kind", "sss") not in ("sss", "slc"):
            raise InputError(f"sss expects sss or slc scenarios, got kind {x.get('kind')!r}")
        if isinstance(x, dict):
            x.setdefault("kind", "sss")
    return run_document({"scenarios": items}), 0


COMMANDS = {"run": _cmd_run, "golden": _cmd_golden, "doublebox": _cmd_doublebox, "jk": _cmd_jk,
            "slc-table": _cmd_slc_table, "sss": _cmd_sss}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "ascii"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="vancycles", parents=[common],
                                description="Spectra, vanishing cohomology and degeneration reports.")
    p.add_argument("--scenario", help="scenario file (same as the run subcommand)")
    p.add_argument("--suite", choices=("golden",), help="run a bundled test suite")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for scenario batches")
    sub = p.add_subparsers(dest="command")

    r = sub.add_parser("run", parents=[common], help="run a scenario file")
    r.add_argument("--scenario", required=True)
    r.add_argument("--jobs", type=int, default=1)
    sub.add_parser("golden", parents=[common], help="run the golden cases")
    d = sub.add_parser("doublebox", parents=[common], help="double-box Symanzik report")
    d.add_argument("--case", choices=("dgt4", "deq4"), required=True)
    j = sub.add_parser("jk", parents=[common], help="J_{kappa,inf} spectrum")
    j.add_argument("--kappa", type=int, required=True)
    sub.add_parser("slc-table", parents=[common], help="sigma~^2 for the catalog rows")
    s = sub.add_parser("sss", parents=[common], help="SSS formula from a scenario file")
    s.add_argument("--scenario", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "json")
    args.seed = getattr(args, "seed", None)
    args.out = getattr(args, "out", None)
    cmd = args.command
    if cmd is None:
        if args.suite == "golden":
            cmd = "golden"
        elif args.scenario:
            cmd = "run"
        else:
            parser.print_usage(sys.stderr)
            print("vancycles: error: give a subcommand, --scenario or --suite golden", file=sys.stderr)
            return 2
    try:
        report, code = COMMANDS[cmd](args)
        _emit(report, args)
        return code
    except InconsistencyError as e:
        print(f"vancycles: inconsistency: {e}", file=sys.stderr)
        if e.result is not None and hasattr(e.result, "to_json"):
            _emit({"error": str(e), "partial": e.result.to_json()}, args)
        return 1
    except InputError as e:
        print(f"vancycles: input error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"vancycles: cannot write {args.out}: {e.strerror}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
