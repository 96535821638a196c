"""Command line front end.

Exit status is 0 when the verdict is Pass or Solved, 1 when it is Fail or
NoSolution and 2 for usage, parse and construction errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import catalog, presfile
from .expr import parse_element, parse_tensor
from .ghoe import NonScalarResult, attach_and_verify, check_theorem_conditions, derive_character, normalize_case
from .hopfstruct import check_hopf_axioms, default_degree_bound, solve_skew_primitive_equation
from .isowit import NoWitness, solve_witness_1dim, verify_witness
from .ncpoly import Diagnostic
from .orext import ConfluenceFailure, build_ore_extension, check_ore_data

SCHEMA = 1


class UsageError(Exception):
    pass


def _digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _entry(e):
    d = {
        "check": e.check,
        "generator": e.generator,
        "residual": None if e.residual is None else str(e.residual),
        "pass": bool(e.passed),
    }
    if e.note:
        d["note"] = e.note
    return d


def make_report(command, inputs, diag: Diagnostic, verdict=None, result=None) -> dict:
    if verdict is None:
        verdict = "Pass" if diag.passed else "Fail"
    rep = {
        "schema": SCHEMA,
        "command": command,
        "inputs": [{"path": str(p), "sha256": _digest(p)} for p in inputs],
        "entries": [_entry(e) for e in diag],
        "verdict": verdict,
    }
    if result is not None:
        rep["result"] = result
    return rep


def render_text(rep: dict) -> str:
    lines = [" ".join([rep["command"]] + [i["path"] for i in rep["inputs"]])]
    for e in rep["entries"]:
        tag = "PASS" if e["pass"] else "FAIL"
        line = f"{tag}  {e['check']}  {e['generator']}"
        if not e["pass"] and e["residual"] is not None:
            line += f"  residual: {e['residual']}"
        if e.get("note"):
            line += f"  [{e['note']}]"
        lines.append(line)
    result = rep.get("result")
    if result:
        for k, v in result.items():
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{k}:")
                lines.extend("  " + s for s in v.rstrip("\n").splitlines())
            else:
                lines.append(f"{k}: {json.dumps(v, ensure_ascii=False) if not isinstance(v, str) else v}")
    failed = sum(1 for e in rep["entries"] if not e["pass"])
    lines.append(f"verdict: {rep['verdict']} ({failed} of {len(rep['entries'])} checks failed)")
    return "\n".join(lines) + "\n"


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"
    return render_text(rep)


def _load(args, path):
    return presfile.load(path, args.field, args.q)


def _need(model, what):
    if getattr(model, what) is None:
        raise UsageError(f"the file has no [{ 'ghoe' if what == 'ghoe' else what}] section")
    return getattr(model, what)


# ---------------------------------------------------------------------------
# Commands


def cmd_check_presentation(args):
    m = _load(args, args.file)
    diag = Diagnostic()
    diag.add("termination", "-", passed=True, note="every rule decreases the word order")
    diag.extend(m.pres.check_local_confluence())
    return make_report("check-presentation", [args.file], diag)


def cmd_check_hopf(args):
    m = _load(args, args.file)
    return make_report("check-hopf", [args.file], check_hopf_axioms(_need(m, "hopf")))


def cmd_ore_extend(args):
    m = _load(args, args.file)
    ore = _need(m, "ore")
    diag = Diagnostic()
    diag.extend(check_ore_data(m.pres, ore), "ore:")
    result = None
    if diag.passed:
        try:
            Hp = build_ore_extension(m.pres, ore)
            diag.add("confluence", "-", passed=True)
            text = presfile.dumps(pres=Hp)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
                args.out = None
            result = {"presentation": text}
        except ConfluenceFailure as e:
            diag.extend(e.diagnostic)
    return make_report("ore-extend", [args.file], diag, result=result)


def cmd_check_ghoe(args):
    m = _load(args, args.file)
    data = _need(m, "ghoe")
    _, diag = attach_and_verify(data)
    if args.theorem:
        diag.extend(check_theorem_conditions(data), "thm:")
    return make_report("check-ghoe", [args.file], diag)


def cmd_derive_chi(args):
    m = _load(args, args.file)
    data = normalize_case(_need(m, "ghoe"))
    diag = Diagnostic()
    try:
        chi = derive_character(data)
    except NonScalarResult as e:
        for name, val in e.values:
            diag.add("chi-scalar", name, val, passed=False)
        return make_report("derive-chi", [args.file], diag)
    f = m.pres.field
    for name, v in chi.items():
        diag.add("chi-scalar", name, passed=True, note=f.format(v))
    return make_report("derive-chi", [args.file], diag, result={"chi": {k: f.format(v) for k, v in chi.items()}})


def cmd_check_iso(args):
    h, hp = _load(args, args.file), _load(args, args.file2)
    spec = presfile.load_witness(args.witness)
    w = presfile.build_witness(spec, h.pres, hp.pres)
    diag = verify_witness(_need(h, "ghoe"), _need(hp, "ghoe"), w)
    return make_report("check-iso", [args.file, args.file2, args.witness], diag)


def cmd_solve_iso(args):
    h, hp = _load(args, args.file), _load(args, args.file2)
    H, Hp = _need(h, "ghoe"), _need(hp, "ghoe")
    w = solve_witness_1dim(H, Hp, args.degree_bound)
    if isinstance(w, NoWitness):
        diag = Diagnostic()
        diag.add("witness", "-", passed=False, note=w.reason)
        return make_report("solve-iso-1dim", [args.file, args.file2], diag, verdict="NoSolution")
    diag = verify_witness(H, Hp, w)
    verdict = "Solved" if diag.passed else "Fail"
    return make_report("solve-iso-1dim", [args.file, args.file2], diag, verdict=verdict,
                       result={"witness": presfile.dump_witness(w)})


def cmd_solve_delta(args):
    m = _load(args, args.file)
    H = _need(m, "hopf")
    rhs = parse_tensor(args.rhs, m.pres)
    g, h = parse_element(args.g, m.pres), parse_element(args.h, m.pres)
    bound = args.degree_bound if args.degree_bound is not None else default_degree_bound()
    sol = solve_skew_primitive_equation(H, rhs, g, h, bound)
    diag = Diagnostic()
    if sol is None:
        diag.add("solve", "c", passed=False, note=f"no solution of degree <= {bound}")
        return make_report("solve-delta-eq", [args.file], diag, verdict="NoSolution")
    diag.add("solve", "c", passed=True, note=f"solution space of dimension {sol.dimension}")
    result = {"particular": str(sol.particular), "kernel": [str(k) for k in sol.kernel]}
    return make_report("solve-delta-eq", [args.file], diag, verdict="Solved", result=result)


def _params(pairs):
    out = {}
    for p in pairs or []:
        if "=" not in p:
            raise UsageError(f"--param expects k=v, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_catalog(args):
    if args.action == "list":
        diag = Diagnostic()
        names = catalog.list_names()
        for n in names:
            diag.add("entry", n, passed=True)
        return make_report("catalog list", [], diag, result={"names": names})
    if args.action == "emit":
        if not args.name:
            raise UsageError("catalog emit needs a name")
        e = catalog.build_named(args.name, **_params(args.param))
        text = presfile.dumps(ghoe=e.ghoe) if e.kind == "ghoe" else presfile.dumps(hopf=e.hopf)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            args.out = None
        diag = Diagnostic()
        diag.add("emit", e.name, passed=True, note=" ".join(e.expected))
        return make_report("catalog emit", [], diag, result={"expected": list(e.expected), "presentation": text})
    diag = Diagnostic()
    for name, entry, d, ok in catalog.verify_all():
        got = catalog.verdict_of(d)
        diag.add("catalog", name, passed=ok, note=f"expected {' '.join(entry.expected)}; got {' '.join(got)}")
    return make_report("catalog verify-all", [], diag)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--field", help="override the coefficient field: Q, Fp:<p> or Qt")
    common.add_argument("--q", help="specialize the quantum parameter to a rational")
    common.add_argument("--degree-bound", type=int, default=None)
    common.add_argument("--out", help="write the output here instead of stdout")

    p = argparse.ArgumentParser(prog="hopfore", description="Verify generalized Hopf-Ore extensions.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, files in (
        ("check-presentation", cmd_check_presentation, 1),
        ("check-hopf", cmd_check_hopf, 1),
        ("ore-extend", cmd_ore_extend, 1),
        ("check-ghoe", cmd_check_ghoe, 1),
        ("derive-chi", cmd_derive_chi, 1),
        ("check-iso", cmd_check_iso, 3),
        ("solve-iso-1dim", cmd_solve_iso, 2),
        ("solve-delta-eq", cmd_solve_delta, 1),
    ):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("file")
        if files >= 2:
            sp.add_argument("file2")
        if files == 3:
            sp.add_argument("witness")
        sp.set_defaults(fn=fn)
        if name == "check-ghoe":
            sp.add_argument("--theorem", action="store_true", help="also run the character-based conditions")
        if name == "solve-delta-eq":
            sp.add_argument("--rhs", required=True, help="the inhomogeneous tensor term")
            sp.add_argument("--g", default="1")
            sp.add_argument("--h", default="1")
    sp = sub.add_parser("catalog", parents=[common])
    sp.add_argument("action", choices=("list", "emit", "verify-all"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--param", action="append", help="family parameter k=v (repeatable)")
    sp.set_defaults(fn=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree_bound is not None:
        os.environ["HOPFORE_DEGREE_BOUND"] = str(args.degree_bound)
    try:
        rep = args.fn(args)
    except (UsageError, SyntaxError, KeyError, ValueError, ZeroDivisionError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"hopfore: error: {type(e).__name__}: {msg}", file=sys.stderr)
        return 2
    text = render(rep, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep["verdict"] in ("Pass", "Solved") else 1


if __name__ == "__main__":
    sys.exit(main())
