"""
Command-line front end.

    parahecke weyl  {length,mul,longest,coset-reps,star-spade,cw,xi}
    parahecke sp    {order,enum-isotropic,good-pairs,psi-check,group-enum}
    parahecke z     {points,partition,bedard,torus-check,restriction}
    parahecke verify hecke

Every command prints one JSON document (sorted keys, no floats).  Exit codes:
0 when all checks pass, 1 when a mathematical check fails, 2 for usage or
configuration errors (bad arguments, budget exceeded without --force).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .coxeter import SignedPerm, length, longest_element, mul, parse_element, parse_word
from .gf import is_prime
from .parabolics import (
    cw_subgroup, format_subset, is_star, jt_subset, jw_set, jwk_set, star_spade_partition, subset,
    wk_set, xi_set,
)
from .symplectic import DEFAULT_BUDGET, BudgetExceeded, SymplecticSpace, enumerate_group, group_order

CACHE_ENV = "PARAHECKE_CACHE"
FORMS = ("stated", "corrected", "parameter")


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------------------
# configuration and parsing helpers

def config_of(args) -> dict:
    cfg = {}
    for key in ("n", "q", "t", "k", "budget", "force"):
        if getattr(args, key, None) is not None:
            cfg[key] = getattr(args, key)
    if cfg.get("q") is not None and not is_prime(cfg["q"]):
        raise UsageError(f"q={cfg['q']} is not prime")
    n, t = cfg.get("n"), cfg.get("t")
    if n is not None and n < 0:
        raise UsageError("n must be a natural number")
    if n is not None and t is not None and not 0 <= t <= n:
        raise UsageError(f"t={t} outside [0, {n}]")
    return cfg


def cache_dir_of(args) -> Path | None:
    d = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def parse_subset(n: int, text: str | None) -> frozenset[int]:
    """'s1 s3', '1,3' or '' (empty subset)."""
    out = []
    for tok in (text or "").replace(",", " ").split():
        out.append(int(tok[1:] if tok.startswith("s") else tok))
    return subset(n, out)


def parse_w(n: int, text: str) -> SignedPerm:
    """An element given either as a signed image list '[-1,2]' or a word 's1 s2'."""
    text = text.strip()
    w = parse_element(text) if text.startswith("[") else parse_word(n, text)
    if w.n != n:
        raise UsageError(f"{text!r} is not an element of W(B_{n})")
    return w


def by_length(ws) -> list[str]:
    return [str(w) for w in sorted(ws, key=lambda w: (length(w), w))]


def frac(x: Fraction) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dims_t(t: int) -> tuple[int, ...]:
    return tuple(range(1, t + 1))


def need(args, *keys):
    missing = [k for k in keys if getattr(args, k, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + k for k in missing))


def z_context(args):
    from .zspace import ZContext
    return ZContext(args.n, args.q, budget=args.budget, force=args.force, cache_dir=cache_dir_of(args))


# ----------------------------------------------------------------------------
# weyl

def cmd_weyl(args) -> tuple[object, bool]:
    need(args, "n")
    n = args.n
    sub = args.sub
    if sub == "length":
        if args.word is None and args.element is None:
            raise UsageError("give --word or --element")
        w = parse_w(n, args.word if args.word is not None else args.element)
        return length(w), True
    if sub == "mul":
        a, b = parse_w(n, args.a), parse_w(n, args.b)
        return str(mul(a, b)), True
    if sub == "longest":
        return str(longest_element(n, parse_subset(n, args.J))), True
    if sub == "coset-reps":
        J = parse_subset(n, args.J)
        K = parse_subset(n, args.K)
        if args.side == "left":
            reps = jw_set(n, J)
        elif args.side == "right":
            reps = wk_set(n, K)
        else:
            reps = jwk_set(n, J, K)
        return {"elements": by_length(reps), "count": len(reps)}, True
    if sub == "star-spade":
        J = parse_subset(n, args.J)
        star, spade = star_spade_partition(n, J)
        ok = sorted(star) == sorted(cw_subgroup(n, J))
        return {"J": format_subset(J), "star": by_length(star), "spade": by_length(spade),
                "star_equals_cw": ok}, ok
    if sub == "cw":
        return {"elements": by_length(cw_subgroup(n, parse_subset(n, args.J)))}, True
    if sub == "xi":
        return [t for t, _ in xi_set(n)], True
    raise UsageError(f"unknown weyl subcommand {sub!r}")


# ----------------------------------------------------------------------------
# sp

def cmd_sp(args) -> tuple[object, bool]:
    need(args, "n", "q")
    S = SymplecticSpace(args.n, args.q)
    sub = args.sub
    if sub == "order":
        G = enumerate_group(S, budget=args.budget, force=args.force)
        ok = G.order == group_order(args.n, args.q)
        return G.order, ok
    if sub == "enum-isotropic":
        need(args, "t")
        return len(S.isotropic_subspaces(args.t)), True
    if sub == "good-pairs":
        need(args, "t")
        Es = S.isotropic_subspaces(args.t)
        good = bad = 0
        agree = True
        bracket_ok = True
        for A in Es:
            for B in Es:
                modes = [S.is_good(A, B, m) for m in ("i", "ii", "iii", "iv")]
                agree &= len(set(modes)) == 1
                bracket_ok &= S.bracket(A, B).dim == 2 * args.n - 2 * args.t
                if modes[1]:
                    good += 1
                else:
                    bad += 1
        return {"good": good, "bad": bad, "modes_agree": agree, "bracket_dim_ok": bracket_ok}, \
            agree and bracket_ok
    if sub == "psi-check":
        need(args, "t")
        Es = S.isotropic_subspaces(args.t)
        checked = failures = 0
        for A in Es:
            QA = S.quotient_form(A)
            for B in Es:
                if not S.is_good(A, B):
                    continue
                P = S.psi_matrix(A, B)
                R = S.psi_matrix(B, A)
                eye = np.eye(P.shape[0], dtype=np.int64)
                ok = np.array_equal(R @ P % args.q, eye) and \
                    np.array_equal(P.T @ S.quotient_form(B) @ P % args.q, QA % args.q)
                checked += 1
                failures += not ok
        return {"good_pairs": checked, "failures": failures}, failures == 0
    if sub == "group-enum":
        G = enumerate_group(S, budget=args.budget, force=args.force)
        doc = {"version": 1, "n": args.n, "q": args.q, "order": G.order,
               "classes": G.class_count, "class_sizes": sorted(int(x) for x in G.class_sizes())}
        d = cache_dir_of(args)
        if d is not None:
            from .zspace import _atomic_write_json
            doc["cache_file"] = str(_atomic_write_json(d / f"group_n{args.n}_q{args.q}.json", doc))
        return doc, G.order == group_order(args.n, args.q)
    raise UsageError(f"unknown sp subcommand {sub!r}")


# ----------------------------------------------------------------------------
# z

def cmd_z(args) -> tuple[object, bool]:
    need(args, "n", "q", "t")
    ctx = z_context(args)
    n, t = args.n, args.t
    dims = dims_t(t)
    J = jt_subset(n, t)
    sub = args.sub
    if sub == "points":
        bm = ctx.based(dims, args.radical)
        return {"J": format_subset(J), "radical": args.radical, "flags": len(ctx.flags(dims)),
                "cosets_per_flag": bm.size, "count": ctx.z_count(dims, args.radical),
                "orbits": int(bm.orbits[1].size)}, True
    if sub == "partition":
        parts = ctx.z_partition(dims)
        total = sum(len(v) for v in parts.values())
        classes = [{"w": str(w), "size": len(pts), "tag": "star" if is_star(w, J) else "spade"}
                   for w, pts in parts.items()]
        ok = total == ctx.z_count(dims)
        return {"J": format_subset(J), "total": total, "classes": classes}, ok
    if sub == "bedard":
        need(args, "point")
        pts = ctx.z_points(dims)
        if not 0 <= args.point < len(pts):
            raise UsageError(f"--point must lie in [0, {len(pts)})")
        pt = pts[args.point]
        trace = ctx.bedard_trace(pt)
        steps = [{"J": format_subset(Jx), "z": str(z)} for Jx, z in trace]
        return {"point": args.point, "flag": str(pt.flag), "flag2": str(pt.flag2),
                "trace": steps, "w": str(trace[-1][1])}, True
    if sub == "torus-check":
        zu = ctx.z_count(dims, "U")
        zr = ctx.z_count(dims, "R")
        expected = (args.q - 1) ** t
        return {"Z": zu, "Zbar": zr, "ratio": frac(Fraction(zu, zr)), "expected": expected}, \
            zu == expected * zr
    if sub == "restriction":
        need(args, "tp")
        t2 = t + args.tp
        if t2 > n:
            raise UsageError(f"t + t' = {t2} exceeds n = {n}")
        ker = ctx.kernels(t, t2)
        out = [{"y": str(y), "w": str(w), "pairs": len(v)} for (y, w), v in sorted(ker.items())]
        return {"t": t, "t_prime": args.tp, "kernels": out}, True
    raise UsageError(f"unknown z subcommand {sub!r}")


# ----------------------------------------------------------------------------
# verify

def _oracle(args, k: int):
    from .convolution import CuspidalOracle
    if args.oracle:
        return CuspidalOracle.from_file(args.oracle, k, args.q, budget=args.budget, force=args.force)
    return CuspidalOracle.default(k, args.q)


def cmd_verify(args) -> tuple[object, bool]:
    from .convolution import HeckeSetting, k_of, rbar_variant, structure_constants, verify_hecke_relations
    from .hecke import verify_presentation
    if args.sub != "hecke":
        raise UsageError(f"unknown verify subcommand {args.sub!r}")
    need(args, "n", "q", "t")
    try:
        k = k_of(args.n, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.k is not None and args.k != k:
        raise UsageError(f"--k {args.k} does not match n - t = k^2 + k (k = {k})")
    ctx = z_context(args)
    oracle = _oracle(args, k)
    setting = HeckeSetting.build(ctx, args.t, oracle)
    pres = verify_presentation(args.n, args.t, k)
    rels = verify_hecke_relations(setting)
    sc = structure_constants(setting) if not args.skip_structure else None
    rv = rbar_variant(ctx, args.t, oracle) if not args.skip_variant else None

    def selected(reports):
        # the unit law belongs to every form
        return [r for r in reports if r["form"] == args.forms or r["relation"] == "Y^1 Y^1 = Y^1"]

    failures = [{"relation": name, "form": "presentation"} for name, ok in pres.items() if not ok]
    failures += [r for r in selected(rels) if not r["zero"]]
    if sc is not None:
        key = "mismatches" if args.forms == "stated" else "mismatches_reversed"
        if args.forms != "parameter" and (not sc["closed"] or sc[key]):
            failures.append({"relation": f"structure constants ({key})", "form": args.forms,
                             "closed": sc["closed"], "mismatches": sc[key]})
    if rv is not None and "relations" in rv:
        failures += [dict(r, relation="Zbar: " + r["relation"]) for r in selected(rv["relations"]) if not r["zero"]]
    doc = {
        "n": args.n, "q": args.q, "t": args.t, "k": k, "forms": args.forms,
        "oracle": oracle.source,
        "parameters": [{"generator": nm, "q_s": qs} for nm, _, qs in setting.generators],
        "presentation": pres,
        "relations": rels,
        "structure_constants": sc,
        "rbar_variant": rv,
        "pass": not failures,
        "first_failure": failures[0] if failures else None,
    }
    return doc, not failures


# ----------------------------------------------------------------------------
# argument parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--force", action="store_true", help="ignore the enumeration budget")
    common.add_argument("--cache-dir", help=f"orbit-table cache (default ${CACHE_ENV})")
    common.add_argument("--oracle", help="cuspidal character file")
    common.add_argument("--json", action="store_true", help="wrap the result with the run configuration")

    p = argparse.ArgumentParser(prog="parahecke", description=__doc__.strip().splitlines()[0])
    top = p.add_subparsers(dest="cmd", required=True)

    weyl = top.add_parser("weyl", help="type B Coxeter combinatorics").add_subparsers(dest="sub", required=True)
    s = weyl.add_parser("length", parents=[common])
    s.add_argument("--word")
    s.add_argument("--element")
    s = weyl.add_parser("mul", parents=[common])
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s = weyl.add_parser("longest", parents=[common])
    s.add_argument("--J", default="")
    s = weyl.add_parser("coset-reps", parents=[common])
    s.add_argument("--J", default="")
    s.add_argument("--K", default="")
    s.add_argument("--side", choices=("left", "right", "double"), default="left")
    for name in ("star-spade", "cw"):
        weyl.add_parser(name, parents=[common]).add_argument("--J", default="")
    weyl.add_parser("xi", parents=[common])

    sp = top.add_parser("sp", help="finite symplectic geometry").add_subparsers(dest="sub", required=True)
    for name in ("order", "enum-isotropic", "good-pairs", "psi-check", "group-enum"):
        sp.add_parser(name, parents=[common])

    z = top.add_parser("z", help="the spaces Z_J and Bedard induction").add_subparsers(dest="sub", required=True)
    s = z.add_parser("points", parents=[common])
    s.add_argument("--radical", choices=("U", "R"), default="U")
    z.add_parser("partition", parents=[common])
    z.add_parser("bedard", parents=[common]).add_argument("--point", type=int)
    z.add_parser("torus-check", parents=[common])
    z.add_parser("restriction", parents=[common]).add_argument("--tp", type=int, help="t' (J' = J_{t+t'})")

    ver = top.add_parser("verify", help="Hecke relations on Z").add_subparsers(dest="sub", required=True)
    s = ver.add_parser("hecke", parents=[common])
    s.add_argument("--forms", choices=FORMS, default="stated",
                   help="which relation family decides the exit code")
    s.add_argument("--skip-structure", action="store_true")
    s.add_argument("--skip-variant", action="store_true")
    return p


COMMANDS = {"weyl": cmd_weyl, "sp": cmd_sp, "z": cmd_z, "verify": cmd_verify}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = config_of(args)
        result, ok = COMMANDS[args.cmd](args)
    except (UsageError, BudgetExceeded, ValueError, FileNotFoundError) as exc:
        print(dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    out = {"command": f"{args.cmd} {args.sub}", "config": cfg, "result": result, "ok": ok} \
        if args.json else result
    print(dumps(out))
    if not ok:
        first = result.get("first_failure") if isinstance(result, dict) else None
        msg = {"failed": f"{args.cmd} {args.sub}"}
        if first:
            msg["first_failure"] = first
        print(dumps(msg), file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
