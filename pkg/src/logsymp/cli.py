"""Command-line front end.

    logsymp verify --structure S.json [--trials 50] [--seed 0]
    logsymp cohomology --family log --chart C.json [--cutoff 4]
    logsymp hodge --diamond D.json [--fano-depth 0]

Exit codes: 0 pass, 1 verification failure, 2 input or domain error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import LogSympError, ParseError
from .io import dumps

PI_FAMILIES = {"brylinski", "mdp", "theta", "theta-upper", "theta-log", "ed", "de", "image-pi"}


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _parse_center(text: str | None) -> dict | None:
    if not text:
        return None
    out = {}
    for part in text.split(","):
        name, _, value = part.partition("=")
        if not value:
            raise ParseError(f"center entry {part!r} should look like name=value")
        out[name.strip()] = value.strip()
    return out


# -------------------------------------------------------------------------
# commands

def cmd_verify(args) -> tuple[int, dict]:
    from .io import parse_structure
    from .poisson.structure import make_poisson
    from .verify import identity_suite

    if args.structure is None:
        raise ParseError("verify needs --structure")
    chart, biv = parse_structure(_read(args.structure))
    P = make_poisson(chart, biv)
    rep = identity_suite(P, args.trials, args.seed)
    body = {"command": "verify", **rep.to_json()}
    return (0 if rep.passed else 1), body


def cmd_cohomology(args) -> tuple[int, dict]:
    from .algebra.parser import parse_form
    from .complexes import canonical_name, cohomology, stalk_cohomology
    from .io import parse_chart, parse_structure

    family = canonical_name(args.family)
    biv = None
    if args.structure:
        chart, biv = parse_structure(_read(args.structure))
    elif args.chart:
        chart = parse_chart(_read(args.chart))
    else:
        raise ParseError("cohomology needs --chart or --structure")
    if family in PI_FAMILIES and biv is None:
        raise ParseError(f"family {family} needs --structure")
    psi = parse_form(args.psi, chart) if args.psi else None
    center = _parse_center(args.center)
    if center is not None:
        rep = stalk_cohomology(family, chart, biv, args.cutoff, center)
    else:
        rep = cohomology(family, chart, args.cutoff, biv, psi, args.lam, args.mode)
    body = {"command": "cohomology", "seed": args.seed, "trials": args.trials, **rep.to_json()}
    return 0, body


def cmd_hodge(args) -> tuple[int, dict]:
    from .hodge import dihelical_dims, rg_fano_constraint_report, rotate_diamond, theta_cohomology_dims, theta_quotients
    from .io import parse_diamond

    if args.diamond is None:
        raise ParseError("hodge needs --diamond")
    H = parse_diamond(_read(args.diamond))
    ed, de = dihelical_dims(H)
    body = {
        "command": "hodge",
        "seed": args.seed,
        "trials": args.trials,
        "diamond": H.to_json(),
        "theta_dims": list(theta_cohomology_dims(H)),
        "theta_quotients": theta_quotients(H),
        "ed_dims": list(ed),
        "de_dims": list(de),
        "rotated": [list(r) for r in rotate_diamond(H)],
        "fano_constraints": rg_fano_constraint_report(H, args.fano_depth).to_json(),
    }
    return 0, body


COMMANDS = {"verify": cmd_verify, "cohomology": cmd_cohomology, "hodge": cmd_hodge}


# -------------------------------------------------------------------------
# output

def _table(body: dict) -> str:
    lines = [f"command: {body['command']}  seed: {body.get('seed')}  trials: {body.get('trials')}"]
    if body["command"] == "verify":
        for r in body["identities"]:
            mark = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{mark}  {r['name']}  ({r['checked']} checks)")
            if r["witness"]:
                lines.append(f"      witness: {r['witness']}")
        lines += [f"warning: {w}" for w in body["warnings"]]
    elif body["command"] == "cohomology":
        lines.append(f"family: {body['family']}  mode: {body['mode']}  cutoff: {body['cutoff']}")
        lines.append("degree  weight  dim  stable")
        for s in body["slices"]:
            lines.append(f"{s['degree']:>6}  {tuple(s['weight'])}  {s['dim']}  {s['stable']}")
    else:
        for key in ("theta_dims", "ed_dims", "de_dims"):
            lines.append(f"{key}: {tuple(body[key])}")
        lines.append("rotated:")
        lines += ["  " + " ".join(str(x) for x in r) for r in body["rotated"]]
        f = body["fano_constraints"]
        lines.append(f"fano constraints up to {f['a']}: {'consistent' if f['consistent'] else 'violated'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logsymp", description="Log-symplectic Poisson computations.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family")
        p.add_argument("--chart")
        p.add_argument("--structure")
        p.add_argument("--diamond")
        p.add_argument("--cutoff", type=int, default=4)
        p.add_argument("--trials", type=int, default=50)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--out")
        if name == "cohomology":
            p.add_argument("--psi", help="closed log 1-form for the foliated family")
            p.add_argument("--lambda", dest="lam", help="lambda for the mdp family")
            p.add_argument("--mode", choices=("auto", "exact", "jet"), default="auto")
            p.add_argument("--center", help="recenter before a jet computation, e.g. x1=1")
        if name == "hodge":
            p.add_argument("--fano-depth", type=int, default=0)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "cohomology" and not args.family:
        print("error: cohomology needs --family", file=sys.stderr)
        return 2
    try:
        if args.trials < 0:
            raise ParseError("--trials must be non-negative")
        code, body = COMMANDS[args.command](args)
    except ParseError as e:
        print(f"error: line {e.line}, column {e.column}: {e.message}", file=sys.stderr)
        return 2
    except (LogSympError, ValueError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    text = dumps(body) if args.format == "json" else _table(body)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
