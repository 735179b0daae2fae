"""Command-line front end.

Deterministic key=value output, one fact per line. Exit codes:
0 success / property holds, 1 property checked false (not a permutation,
a violated hypothesis with its witness), 2 usage or format errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import formulas, kernels
from .errors import FFInvError, HypothesisViolated, NotPermutation
from .ff_core import FieldTower, parse_field_spec
from .linearized import (
    LinPoly,
    count_idempotents,
    dickson_det,
    dickson_matrix,
    enumerate_idempotents,
    lin_compose,
    lin_inverse_full,
    circulant_subspace_inverse,
    subspace_inverse,
)
from .poly import Poly, brute_inverse, compose_mod, is_permutation
from .subspace import SubspaceBasis, parse_span

GREEK = {"α": "alpha", "γ": "gamma", "δ": "delta", "φ": "phi", "ψ": "psi",
         "ψbar": "psibar", "Ψ": "psi"}


def parse_poly(tower: FieldTower, text: str) -> Poly:
    text = text.strip()
    if text == "x":
        return Poly.x(tower)
    if not (text.startswith("poly:[") and text.endswith("]")):
        raise ValueError(f"bad poly literal {text!r}")
    inner = text[len("poly:["):-1].strip()
    coeffs = [int(c) for c in inner.split(",")] if inner else []
    return Poly(tower, coeffs)


def parse_linpoly(tower: FieldTower, text: str) -> LinPoly:
    text = text.strip()
    step = tower.m
    if text.startswith("lin@"):
        at, rest = text[4:].split(":", 1)
        step = int(at)
        text = "lin:" + rest
    if not (text.startswith("lin:[") and text.endswith("]")):
        raise ValueError(f"bad lin literal {text!r}")
    inner = text[len("lin:["):-1].strip()
    coeffs = [int(c) for c in inner.split(",")] if inner else []
    D = tower.mn // step
    coeffs += [0] * (D - len(coeffs))
    return LinPoly(tower, coeffs, step=step)


def _parse_params(text_or_path: str) -> dict[str, str]:
    if text_or_path.startswith("params(") and text_or_path.endswith(")"):
        body = text_or_path[len("params("):-1]
        pairs = [p for p in body.split(",") if p.strip()]
    else:
        with open(text_or_path) as fh:
            pairs = [ln for ln in fh.read().splitlines()
                     if ln.strip() and not ln.strip().startswith("#")]
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"bad parameter {pair.strip()!r}")
        k, v = pair.split("=", 1)
        k = k.strip()
        out[GREEK.get(k, k)] = v.strip()
    return out


def _elem(tower: FieldTower, text: str) -> int:
    e = int(text)
    tower.check_elem(e)
    return e


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_field_info(args) -> int:
    t = parse_field_spec(args.spec)
    print(f"p={t.p}")
    print(f"m={t.m}")
    print(f"n={t.n}")
    print(f"q={t.q}")
    print(f"N={t.N}")
    print(f"mod_q={','.join(map(str, t.mod_q))}")
    print(f"mod_qn={','.join(map(str, t.mod_qn))}")
    print(f"generator={t.gen}")
    return 0


def cmd_perm_check(args) -> int:
    t = parse_field_spec(args.spec)
    f = parse_poly(t, args.poly)
    ok = is_permutation(f)
    print(f"permutation={str(ok).lower()}")
    return 0 if ok else 1


def cmd_invert_brute(args) -> int:
    t = parse_field_spec(args.spec)
    f = parse_poly(t, args.poly)
    try:
        inv = brute_inverse(f)
    except NotPermutation:
        print("permutation=false")
        return 1
    print(f"permutation=true inverse={inv!r}")
    return 0


def cmd_invert_dickson(args) -> int:
    t = parse_field_spec(args.spec)
    L = parse_linpoly(t, args.linpoly)
    d = dickson_det(L)
    if d == 0:
        print("det=0 permutation=false")
        return 1
    inv = lin_inverse_full(L)
    print(f"det={d} inverse={inv!r}")
    return 0


def cmd_invert_subspace(args) -> int:
    t = parse_field_spec(args.spec)
    L = parse_linpoly(t, args.linpoly)
    V = parse_span(t, args.V)
    Vbar = parse_span(t, args.Vbar)
    try:
        if args.strategy == "ntt":
            R = circulant_subspace_inverse(L, V, Vbar)
        else:
            R = subspace_inverse(L, V, Vbar)
    except FFInvError as exc:
        print(f"error={type(exc).__name__} detail={exc}")
        return 1
    ok = all(R.eval(L.eval(v)) == v for v in V.elements())
    print(f"strategy={args.strategy} inverse={R!r} verified={str(ok).lower()}")
    return 0 if ok else 1


FAMILY_PARAMS = {
    "simple-proof": ("alpha", "c", "G"),
    "trace-translate": ("phi", "gamma", "G"),
    "l1l2": ("L1", "L2", "G", "s", "k"),
    "nice2": ("k", "s", "delta"),
    "q2-powerq": ("a", "b", "k"),
    "bilinear": ("a", "g"),
    "agw": ("g", "h", "phi", "psi", "psibar"),
    "additive": ("preset", "g", "h", "phi", "psi", "psibar"),
}


def _run_family(t: FieldTower, family: str, P: dict[str, str]):
    if family == "simple-proof":
        return formulas.invert_shifted_frobenius(
            t, _elem(t, P["alpha"]), _elem(t, P["c"]), parse_poly(t, P["G"]))
    if family == "trace-translate":
        return formulas.invert_trace_translate(
            t, parse_linpoly(t, P["phi"]), _elem(t, P["gamma"]),
            parse_poly(t, P["G"]))
    if family == "l1l2":
        return formulas.invert_l1l2(
            t, parse_linpoly(t, P["L1"]), parse_linpoly(t, P["L2"]),
            parse_poly(t, P["G"]), int(P["s"]), int(P["k"]))
    if family == "nice2":
        return formulas.invert_nice2(t, int(P["k"]), int(P["s"]),
                                     _elem(t, P["delta"]))
    if family == "q2-powerq":
        return formulas.invert_q2_powerQ(t, _elem(t, P["a"]), _elem(t, P["b"]),
                                         int(P["k"]))
    if family == "bilinear":
        return formulas.invert_bilinear_general(t, _elem(t, P["a"]),
                                                parse_poly(t, P["g"]))
    if family in ("agw", "additive"):
        inst = formulas.AgwInstance(
            t, parse_poly(t, P["g"]), parse_poly(t, P["h"]),
            parse_linpoly(t, P["phi"]), parse_linpoly(t, P["psi"]),
            parse_linpoly(t, P["psibar"]))
        if family == "agw":
            return formulas.invert_agw_general(inst)
        return formulas.invert_additive_case(inst, preset=P.get("preset", "general"))
    raise ValueError(f"unknown family {family!r}")


def cmd_invert_family(args) -> int:
    if args.family not in FAMILY_PARAMS:
        print(f"error=unknown-family token={args.family}")
        return 2
    t = parse_field_spec(args.spec)
    try:
        P = _parse_params(args.paramfile)
    except (OSError, ValueError) as exc:
        print(f"error=bad-params detail={exc}")
        return 2
    try:
        cert = _run_family(t, args.family, P)
    except KeyError as exc:
        print(f"error=missing-parameter token={exc.args[0]}")
        return 2
    except HypothesisViolated as exc:
        wit = f" witness={exc.witness}" if exc.witness is not None else ""
        print(f"family={args.family} verified=false "
              f"hypothesis_violated={exc.hypothesis!r}{wit}")
        return 1
    print(f"family={args.family} {cert.render().split(' ', 1)[1]}")
    return 0 if cert.verified else 1


def cmd_lin(args) -> int:
    t = parse_field_spec(args.spec)
    if args.op == "compose":
        a = parse_linpoly(t, args.args[0])
        b = parse_linpoly(t, args.args[1])
        print(f"result={lin_compose(a, b)!r}")
        return 0
    if args.op == "eval":
        L = parse_linpoly(t, args.args[0])
        e = _elem(t, args.args[1])
        print(f"value={L.eval(e)}")
        return 0
    if args.op == "dickson":
        L = parse_linpoly(t, args.args[0])
        M = dickson_matrix(L)
        for i, row in enumerate(M):
            print(f"row{i}={','.join(map(str, row))}")
        print(f"det={dickson_det(L)}")
        return 0
    print(f"error=unknown-lin-op token={args.op}")
    return 2


def cmd_census(args) -> int:
    count = count_idempotents(args.n, args.q)
    print(f"count={count}")
    if args.enumerate:
        for L in enumerate_idempotents(args.n, args.q):
            print(f"idempotent={L!r}")
    return 0


def cmd_verify(args) -> int:
    t = parse_field_spec(args.spec)
    f = parse_poly(t, args.poly)
    g = parse_poly(t, args.invpoly)
    xp = Poly.x(t)
    ok = compose_mod(g, f) == xp and compose_mod(f, g) == xp
    print(f"verified={str(ok).lower()}")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    import random
    rng = random.Random(args.seed)
    print("p,m,n,strategy,nanos,verified")
    if args.target == "subspace-inverse":
        from .errors import NoSuitableRoot, SingularDickson, NoSolution
        from .subspace import kernel
        for spec in args.sweep.split(","):
            t = parse_field_spec(spec.strip())
            T = LinPoly.trace(t)
            V = kernel(T)
            for _ in range(args.trials):
                while True:
                    L = LinPoly(t, [rng.randrange(t.q) for _ in range(t.n)])
                    vals = {L.eval(v) for v in V.elements()}
                    if len(vals) == V.size():
                        break
                Vbar = SubspaceBasis.from_elements(t, list(vals), step=V.step)
                for strategy in ("gauss", "ntt"):
                    t0 = time.perf_counter_ns()
                    try:
                        if strategy == "ntt":
                            R = circulant_subspace_inverse(L, V, Vbar)
                        else:
                            R = subspace_inverse(L, V, Vbar)
                    except (NoSuitableRoot, SingularDickson, NoSolution):
                        continue
                    dt = time.perf_counter_ns() - t0
                    ok = all(R.eval(L.eval(v)) == v for v in V.elements())
                    print(f"{t.p},{t.m},{t.n},{strategy},{dt},{str(ok).lower()}")
        return 0
    if args.target == "backend":
        import numpy as np
        backends = ["numpy"] + (["numba"] if kernels.HAS_NUMBA else [])
        for spec in args.sweep.split(","):
            t = parse_field_spec(spec.strip())
            coeffs = [rng.randrange(t.N) for _ in range(t.N)]
            xs = np.arange(t.N, dtype=np.int64)
            for backend in backends:
                kernels.set_backend(backend)
                try:
                    for _ in range(args.trials):
                        t0 = time.perf_counter_ns()
                        ys = kernels.eval_many(coeffs, xs, t)
                        back = kernels.newton_interpolate(xs, ys, t)
                        dt = time.perf_counter_ns() - t0
                        ok = kernels.eval_many(back, xs, t).tolist() == ys.tolist()
                        print(f"{t.p},{t.m},{t.n},{backend},{dt},{str(ok).lower()}")
                finally:
                    kernels.set_backend(None)
        return 0
    print(f"error=unknown-bench-target token={args.target}")
    return 2


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffinv")
    ap.add_argument("--threads", type=int, default=1,
                    help="internal loop parallelism (output is order-independent)")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("field")
    ps = p.add_subparsers(dest="op", required=True)
    pi = ps.add_parser("info")
    pi.add_argument("spec")
    pi.set_defaults(func=cmd_field_info)

    p = sub.add_parser("perm")
    ps = p.add_subparsers(dest="op", required=True)
    pc = ps.add_parser("check")
    pc.add_argument("spec")
    pc.add_argument("poly")
    pc.set_defaults(func=cmd_perm_check)

    p = sub.add_parser("invert")
    ps = p.add_subparsers(dest="op", required=True)
    pb = ps.add_parser("brute")
    pb.add_argument("spec")
    pb.add_argument("poly")
    pb.set_defaults(func=cmd_invert_brute)
    pd = ps.add_parser("dickson")
    pd.add_argument("spec")
    pd.add_argument("linpoly")
    pd.set_defaults(func=cmd_invert_dickson)
    pu = ps.add_parser("subspace")
    pu.add_argument("spec")
    pu.add_argument("linpoly")
    pu.add_argument("--V", required=True)
    pu.add_argument("--Vbar", required=True)
    pu.add_argument("--strategy", choices=("gauss", "ntt"), default="gauss")
    pu.set_defaults(func=cmd_invert_subspace)
    pf = ps.add_parser("family")
    pf.add_argument("family")
    pf.add_argument("spec")
    pf.add_argument("paramfile")
    pf.set_defaults(func=cmd_invert_family)

    p = sub.add_parser("lin")
    p.add_argument("op", choices=("compose", "eval", "dickson"))
    p.add_argument("spec")
    p.add_argument("args", nargs="+")
    p.set_defaults(func=cmd_lin)

    p = sub.add_parser("census")
    ps = p.add_subparsers(dest="op", required=True)
    pi = ps.add_parser("idempotents")
    pi.add_argument("--n", type=int, required=True)
    pi.add_argument("--q", type=int, required=True)
    pi.add_argument("--enumerate", action="store_true")
    pi.set_defaults(func=cmd_census)

    p = sub.add_parser("verify")
    p.add_argument("spec")
    p.add_argument("poly")
    p.add_argument("invpoly")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench")
    p.add_argument("target", choices=("subspace-inverse", "backend"))
    p.add_argument("--sweep", default="2:1:3,3:1:2,2:2:2")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    return ap


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except NotPermutation as exc:
        print(f"permutation=false detail={exc}")
        return 1
    except HypothesisViolated as exc:
        wit = f" witness={exc.witness}" if exc.witness is not None else ""
        print(f"hypothesis_violated={exc.hypothesis!r}{wit}")
        return 1
    except FFInvError as exc:
        print(f"error={type(exc).__name__} detail={exc}")
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error=format detail={exc}")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
