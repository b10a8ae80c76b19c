"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any

import mpmath

from . import quotient as qk
from .errors import BranchLabError
from .indices import hausdorff_dimension, index_table
from .presets import consecutive_spread, eta, gd_system, rist1_generators, xi
from .search import SearchBudget, witness_search
from .stabilizers import in_H, in_level_stabilizer, in_rigid_stabilizer, tuple_criterion
from .trace import growth_count, normal_form
from .tree import DEFAULT_MAX_VERTICES, index_vertex
from .verify import SUITES, VerifyConfig, run_suites
from .words import GroupConfig, GroupWord, format_vertex, format_word, parse, parse_vertex, total_exponent


class VerificationFailed(Exception):
    pass


def _system(args):
    GroupConfig(args.d)
    sys_ = gd_system(args.d)
    sys_.max_vertices = args.max_vertices
    return sys_


def _word(args, text):
    return parse(text, args.d)


def _perm_cycles_text(lp) -> str:
    cycles = lp.cycles()
    if not cycles:
        return "()"
    return "".join(
        "(" + " ".join(format_vertex(index_vertex(i, lp.level, lp.d), lp.d) for i in c) + ")" for c in cycles
    )


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def cmd_act(args):
    s = _system(args)
    img = s.act(_word(args, args.word), parse_vertex(args.vertex, args.d))
    text = format_vertex(img, args.d)
    return {"word": format_word(_word(args, args.word)), "vertex": args.vertex, "image": text}, text


def cmd_section(args):
    s = _system(args)
    sec = s.section(_word(args, args.word), parse_vertex(args.vertex, args.d))
    return {"word": format_word(_word(args, args.word)), "vertex": args.vertex, "section": format_word(sec)}, format_word(sec)


def cmd_perm(args):
    s = _system(args)
    lp = s.level_perm(_word(args, args.word), args.level)
    text = _perm_cycles_text(lp)
    return {"level": args.level, "cycles": text, "identity": lp.is_identity()}, text


def cmd_identity(args):
    s = _system(args)
    ok, size = s.identity_closure(_word(args, args.word))
    return {"identity": ok, "closure_size": size}, f"{str(ok).lower()} (closure {size})"


def cmd_equal(args):
    s = _system(args)
    w = _word(args, args.w1) * _word(args, args.w2).inverse()
    ok, size = s.identity_closure(w)
    return {"equal": ok, "closure_size": size}, f"{str(ok).lower()} (closure {size})"


def cmd_stab(args):
    s = _system(args)
    w = _word(args, args.word)
    member = in_level_stabilizer(s, w, args.level)
    out: dict[str, Any] = {"member": member, "level": args.level, "profile": None}
    if member and args.level >= 1:
        prof = tuple_criterion(s.section_tuple(w, args.level), args.d, args.level)
        out["profile"] = [list(r) for r in prof.residues]
    return out, str(member).lower()


def cmd_rist(args):
    s = _system(args)
    w = _word(args, args.word)
    stab = in_level_stabilizer(s, w, args.level)
    totals = [total_exponent(x) for x in s.sections_at_level(w, args.level)] if stab else None
    member = in_rigid_stabilizer(s, w, args.level)
    return {"member": member, "level": args.level, "in_level_stabilizer": stab, "section_totals": totals}, str(member).lower()


def cmd_inH(args):
    w = _word(args, args.word)
    member = in_H(w, args.k)
    return {"member": member, "k": args.k, "total": total_exponent(w)}, str(member).lower()


def cmd_coset(args):
    c = qk.coset_of(_system(args), _word(args, args.word), args.level)
    return c.to_json(), json.dumps(c.to_json())


def cmd_theta(args):
    obj = _load_json(args.json)
    if args.inverse:
        out = qk.theta_inv(qk.ThetaImage.from_json(obj)).to_json()
    else:
        out = qk.theta(qk.QuotientCoset.from_json(obj)).to_json()
    return out, json.dumps(out)


def cmd_rho(args):
    out = qk.rho(qk.QuotientCoset.from_json(_load_json(args.json))).to_json()
    return out, json.dumps(out)


def cmd_kernel_from_free(args):
    GroupConfig(args.d)
    out = qk.kernel_from_free(args.d, _load_json(args.free)).to_json()
    return out, json.dumps(out)


def cmd_phi(args):
    el = qk.KernelElement.from_json(_load_json(args.json))
    out = {"d": el.d, "K": el.depth, "phi": qk.phi(el)}
    return out, json.dumps(out)


def cmd_torsion(args):
    el = qk.KernelElement.from_json(_load_json(args.json))
    prof = qk.torsion_profile(el)
    out = {"orders": list(prof.orders), "finite_evidence": prof.finite_evidence}
    return out, json.dumps(out)


def cmd_branch_kernel(args):
    budget = SearchBudget(radius=args.budget, max_nodes=args.max_nodes) if args.search else None
    rep = qk.branch_kernel_check(args.d, args.k, budget)
    out = rep.to_json()
    if not rep.passed:
        raise VerificationFailed(json.dumps(out))
    return out, out["conclusion"]


def cmd_trace_nf(args):
    GroupConfig(args.d)
    nf = normal_form(_word(args, args.word), args.d)
    text = format_word(GroupWord(nf))
    return {"normal_form": text}, text


def cmd_growth(args):
    GroupConfig(args.d)
    rows = [{"n": n, "count": growth_count(args.d, n)} for n in range(args.n + 1)]
    return {"d": args.d, "rows": rows}, "\n".join(f"{r['n']} {r['count']}" for r in rows)


def cmd_index_table(args):
    rows = index_table(args.d, args.kmax)
    out = {"d": args.d, "rows": [r.to_json() for r in rows]}
    text = "\n".join(
        f"{r.k} {r.st_step.text()} {r.gd.text()} {r.aut.text()} {r.rist.text()}" for r in rows
    )
    return out, text


def cmd_hausdorff(args):
    h = hausdorff_dimension(args.d, args.kmax, args.dps)
    out = {
        "d": args.d,
        "value": mpmath.nstr(h.value, args.dps),
        "ratios": [{"k": k, "ratio": mpmath.nstr(r, args.dps)} for k, r in enumerate(h.ratios, start=1)],
    }
    return out, mpmath.nstr(h.value, 20)


def cmd_named(args):
    s = _system(args)
    if args.kind == "rist-gens":
        els = rist1_generators(args.d)
    else:
        if args.index is None:
            raise BranchLabError(f"{args.kind} needs an index")
        ctor = {"xi": xi, "eta": eta, "spread": consecutive_spread}[args.kind]
        els = [ctor(args.d, args.index)]
    out = []
    for el in els:
        secs, perm = s.decompose(el.word)
        out.append({
            "name": el.name,
            "word": format_word(el.word),
            "sections": [format_word(x) for x in secs],
            "perm": list(perm),
            "verified": el.verify(s),
        })
    if not all(e["verified"] for e in out):
        raise VerificationFailed(json.dumps(out))
    text = "\n".join(f"{e['name']}: {e['word']}" for e in out)
    return {"elements": out}, text


def cmd_search(args):
    s = _system(args)
    obj = _load_json(args.target)
    if isinstance(obj, list):
        obj = {"sections": obj}
    target = [parse(t, args.d) for t in obj["sections"]]
    res = witness_search(s, target, obj.get("perm"), SearchBudget(radius=args.budget, max_nodes=args.max_nodes))
    out = {
        "found": res.found,
        "word": format_word(res.word) if res.found else None,
        "nodes": res.nodes,
        "exhausted": res.exhausted,
    }
    return out, out["word"] if res.found else "not-found"


def cmd_verify(args):
    cfg = VerifyConfig(d=args.d, seed=args.seed, samples=args.samples, max_len=args.max_len, max_level=args.max_level)
    GroupConfig(args.d)
    results = run_suites(cfg, args.suite)
    out = {"d": args.d, "seed": args.seed, "suites": [r.to_json() for r in results]}
    lines = [f"seed {args.seed}"] + [
        f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checked} checks)" for r in results
    ]
    if not all(r.passed for r in results):
        raise VerificationFailed(json.dumps(out, sort_keys=True) if args.format == "json" else "\n".join(lines))
    return out, "\n".join(lines)


def _csv_cell(v: dict):
    if v.get("value") is not None:
        return v["value"]
    return f"{v['base']}^{v['exp_base']}/2^{v['exp_two']}"


def _emit(payload: dict, text: str, fmt: str, stream):
    if fmt == "json":
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "csv":
        rows = payload.get("rows")
        buf = io.StringIO()
        if rows:
            flat = [{k: (_csv_cell(v) if isinstance(v, dict) else v) for k, v in r.items()} for r in rows]
            w = csv.DictWriter(buf, fieldnames=list(flat[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(flat)
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(sorted(payload))
            w.writerow([json.dumps(payload[k]) if isinstance(payload[k], (dict, list)) else payload[k] for k in sorted(payload)])
        stream.write(buf.getvalue())
    else:
        stream.write(text + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)

    def with_d(p, required=True):
        p.add_argument("--d", type=int, required=required, default=None if required else 3)
        return p

    parser = argparse.ArgumentParser(prog="branchlab", description="Exact computations in the groups G_d.")
    parser.add_argument("--config", help="JSON file whose keys supply option defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = with_d(add("act", cmd_act, "image of a vertex"))
    p.add_argument("word")
    p.add_argument("vertex")
    p = with_d(add("section", cmd_section, "section at a vertex"))
    p.add_argument("word")
    p.add_argument("vertex")
    p = with_d(add("perm", cmd_perm, "action on a level, in cycle notation"))
    p.add_argument("word")
    p.add_argument("--level", type=int, required=True)
    p = with_d(add("identity", cmd_identity, "decide whether a word is trivial"))
    p.add_argument("word")
    p = with_d(add("equal", cmd_equal, "decide equality of two words"))
    p.add_argument("w1")
    p.add_argument("w2")
    for name, func in (("stab", cmd_stab), ("rist", cmd_rist)):
        p = with_d(add(name, func, f"{name} membership"))
        p.add_argument("word")
        p.add_argument("--level", type=int, required=True)
    p = with_d(add("inH", cmd_inH, "membership in H_k"))
    p.add_argument("word")
    p.add_argument("--k", type=int, required=True)
    p = with_d(add("coset", cmd_coset, "coset in St(k)/Rist(k)"))
    p.add_argument("word")
    p.add_argument("--level", type=int, required=True)
    p = add("theta", cmd_theta, "coset to cyclic-product coordinates")
    p.add_argument("json", help="coset JSON, or @file")
    p.add_argument("--inverse", action="store_true", help="input is a theta image")
    p = add("rho", cmd_rho, "map a coset one level down")
    p.add_argument("json")
    p = with_d(add("kernel-from-free", cmd_kernel_from_free, "rigid-kernel tower from free coordinates"))
    p.add_argument("--free", required=True, help="JSON list of per-level even values")
    p = add("phi", cmd_phi, "halved free coordinates of a kernel tower")
    p.add_argument("json")
    p = add("torsion", cmd_torsion, "orders of the truncations of a kernel tower")
    p.add_argument("json")
    p = with_d(add("branch-kernel", cmd_branch_kernel, "branch-kernel arithmetic at level k"))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--search", action="store_true")
    p.add_argument("--budget", type=int, default=4)
    p.add_argument("--max-nodes", type=int, default=100_000)
    p = with_d(add("trace-nf", cmd_trace_nf, "trace-monoid normal form of a positive word"))
    p.add_argument("word")
    p = with_d(add("growth", cmd_growth, "number of trace classes by length"))
    p.add_argument("--n", type=int, required=True)
    p = with_d(add("index-table", cmd_index_table, "closed-form indices"))
    p.add_argument("--kmax", type=int, default=3)
    p = with_d(add("hausdorff", cmd_hausdorff, "Hausdorff dimension and finite ratios"))
    p.add_argument("--kmax", type=int, default=20)
    p.add_argument("--dps", type=int, default=30)
    p = with_d(add("named", cmd_named, "named elements with verified recursions"))
    p.add_argument("kind", choices=("xi", "eta", "spread", "rist-gens"))
    p.add_argument("index", type=int, nargs="?")
    p = with_d(add("search", cmd_search, "bounded witness search"))
    p.add_argument("--target", required=True, help='JSON: ["a1^4","e","e"] or {"sections": [...], "perm": [...]}')
    p.add_argument("--budget", type=int, default=3, help="ball radius")
    p.add_argument("--max-nodes", type=int, default=50_000)
    p = with_d(add("verify", cmd_verify, "run the property suites"))
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--max-level", type=int, default=2)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv):
    early = argparse.ArgumentParser(add_help=False)
    early.add_argument("--config")
    pre, _ = early.parse_known_args(argv)
    if not pre.config:
        return
    with open(pre.config) as fh:
        defaults = {k.replace("-", "_"): v for k, v in json.load(fh).items()}
    for action in parser._subparsers._group_actions:
        for p in action.choices.values():
            p.set_defaults(**defaults)
            for opt in p._actions:
                if opt.dest in defaults:
                    opt.required = False


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text = args.func(args)
    except VerificationFailed as exc:
        stdout.write(str(exc) + "\n")
        return 1
    except BranchLabError as exc:
        stderr.write(json.dumps({"error": {"code": exc.code, "message": str(exc)}}) + "\n")
        return exc.exit_code
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        stderr.write(json.dumps({"error": {"code": "usage", "message": str(exc)}}) + "\n")
        return 2
    _emit(payload, text, args.format, stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
