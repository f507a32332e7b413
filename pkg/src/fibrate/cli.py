"""Command-line driver.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for bad
flags or malformed input files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import exterior as ex
from . import gcfib, ocs, quat, suites
from .errors import FibrateError, SchemaError
from .numkern import matrix_to_json
from .report import Report


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _sign(text: str) -> int:
    if text in ("1", "+1", "+", "positive"):
        return 1
    if text in ("-1", "-", "negative"):
        return -1
    raise argparse.ArgumentTypeError("sign must be +1 or -1")


def _vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not np.all(np.isfinite(v)) or np.linalg.norm(v) == 0:
        raise argparse.ArgumentTypeError("point must be a finite nonzero vector")
    return v / np.linalg.norm(v)


def _default_seed() -> int:
    env = os.environ.get("FIBRATE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"FIBRATE_SEED must be an integer, got {env!r}") from None


def _load(path: str, field: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(field, f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(field, f"{path} is not valid JSON ({exc.msg})") from None


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_report(rep: Report, args) -> int:
    out = getattr(args, "json", None) or getattr(args, "output", None)
    if out:
        _emit(rep.to_json(), out)
        print(rep.summary())
    elif getattr(args, "summary", False):
        print(rep.summary())
    else:
        print(rep.dumps())
    return 0 if rep.ok else 1


def _kernel_json(res) -> dict:
    return {"dimension": res.dimension, "basis": matrix_to_json(res.basis),
            "spectral_gap": res.spectral_gap if np.isfinite(res.spectral_gap) else "inf"}


# -- handlers ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    rep = suites.run_suite(args.suite, args.trials, seed, args.tol)
    if args.json:
        _emit(rep.to_json(), args.json)
        print(rep.summary())
    else:
        print(rep.summary())
    return 0 if rep.ok else 1


def cmd_ocs(args) -> int:
    if args.action == "random":
        seed = args.seed if args.seed is not None else _default_seed()
        J = ocs.random_ocs(args.n, args.sign, seed)
        _emit(J.to_json(), args.output)
        return 0
    J = ocs.ComplexStructure.from_json(_load(args.files[0], "A"), "A")
    if args.action == "sign":
        _emit({"sign": ocs.sign(J), "n": J.n}, args.output)
        return 0
    if len(args.files) < 2:
        raise UsageError(f"ocs {args.action} needs two structure files")
    K = ocs.ComplexStructure.from_json(_load(args.files[1], "B"), "B")
    if J.dim != K.dim:
        raise SchemaError("B", "structures act on different dimensions")
    if args.action == "agree":
        res = ocs.agreement_space(J, K, args.mode)
        _emit({**_kernel_json(res), "mod4": res.dimension % 4, "mode": args.mode}, args.output)
        return 0
    p = args.point if args.point is not None else np.eye(J.dim)[0]
    if p.shape != (J.dim,):
        raise UsageError(f"--point must have {J.dim} coordinates")
    _emit(ocs.paired_bases(J, K, p).to_json(), args.output)
    return 0


def _load_fibration(args) -> gcfib.Fibration:
    return gcfib.Fibration.from_json(_load(args.spec, "spec"), "spec")


def cmd_fib(args) -> int:
    F = _load_fibration(args)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.action == "lookup":
        if args.point is None or args.point.shape != (4,):
            raise UsageError("--point must have 4 coordinates")
        P = gcfib.fiber_of(F, args.point)
        _emit({"point": args.point.tolist(), "plane": P.to_json(),
               "omega": ex.omega(P).to_json(), "containment_residual": P.contains(args.point)}, args.output)
        return 0
    if args.action == "sign":
        _emit({"sign": gcfib.fibration_sign(F, seed)}, args.output)
        return 0
    return _emit_report(gcfib.verify_fibration(F, args.samples, seed), args)


def _quat_pair(args) -> tuple[quat.QuatStructure, quat.QuatStructure]:
    Q1 = quat.QuatStructure.from_json(_load(args.files[0], "A"), "A")
    if len(args.files) < 2:
        raise UsageError(f"quat {args.action} needs two structure files")
    Q2 = quat.QuatStructure.from_json(_load(args.files[1], "B"), "B")
    if Q1.dim != Q2.dim:
        raise SchemaError("B", "structures act on different dimensions")
    return Q1, Q2


def cmd_quat(args) -> int:
    if args.action == "counterexample":
        return _emit_report(quat.s3_counterexample(), args)
    if args.action == "sign":
        Qs = quat.QuatStructure.from_json(_load(args.files[0], "A"), "A")
        _emit({"sign": quat.quat_sign(Qs), "n": Qs.n}, args.output)
        return 0
    Q1, Q2 = _quat_pair(args)
    if args.point is None:
        raise UsageError("quat agree needs --point")
    if args.point.shape != (Q1.dim,):
        raise UsageError(f"--point must have {Q1.dim} coordinates")
    _emit({"result": quat.fibers_agree(Q1, Q2, args.point),
           "projector_distance": quat.projector_distance(Q1, Q2, args.point),
           "triple_kernel": _kernel_json(quat.triple_kernel(Q1, Q2))}, args.output)
    return 0


def cmd_darboux(args) -> int:
    alpha = ex.Bivector.from_json(_load(args.alpha, "alpha"), "alpha")
    D = ex.darboux_decompose(alpha)
    _emit({**D.to_json(), "reconstruction_error": (D.reconstruct() - alpha).norm()}, args.output)
    return 0


def _counterexample_payload(which: str) -> tuple[Report, dict]:
    if which == "s7-nonexistence":
        Q = quat.counterexample_q()
        plus = quat.standard_quat(2)
        mats = {"Q": matrix_to_json(Q)}
        for name, L in zip("IJK", plus.matrices()):
            mats[f"{name}+"] = matrix_to_json(L)
            mats[f"Q{name}+ + {name}+Q"] = matrix_to_json(Q @ L + L @ Q)
        return quat.s3_counterexample(), mats
    if which == "s7-nonuniqueness":
        Q1, Q2 = quat.nonuniqueness_pair()
        mats = {f"{k}{i}": matrix_to_json(M) for i, Qs in ((1, Q1), (2, Q2))
                for k, M in zip("IJK", Qs.matrices())}
        return quat.nonuniqueness_report(), mats
    entries = [e for e in ocs.CHART if e[1] == 3]
    mats = {}
    for label, _n, jb, kb in entries:
        mats[f"{label}: J"] = matrix_to_json(ocs.block_structure(jb).J)
        mats[f"{label}: K"] = matrix_to_json(ocs.block_structure(kb).J)
    return suites.chart_report(entries), mats


def cmd_counterexample(args) -> int:
    rep, mats = _counterexample_payload(args.which)
    payload = {**rep.to_json(), "matrices": mats}
    if args.output:
        _emit(payload, args.output)
        print(rep.summary())
    else:
        _emit(payload, None)
    return 0 if rep.ok else 1


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fibrate", description="Great circle and 3-sphere fibration toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=suites.SUITES + ("all",))
    v.add_argument("--seed", type=int, default=None, help="defaults to $FIBRATE_SEED or 0")
    v.add_argument("--trials", type=_positive_int, default=300)
    v.add_argument("--tol", type=_positive_float, default=1e-9)
    v.add_argument("--json", metavar="PATH", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("ocs", help="orthogonal complex structures")
    o.add_argument("action", choices=("random", "sign", "agree", "pair-bases"))
    o.add_argument("files", nargs="*", metavar="FILE")
    o.add_argument("--n", type=_positive_int, default=2)
    o.add_argument("--sign", type=_sign, default=1)
    o.add_argument("--seed", type=int, default=None)
    o.add_argument("--mode", choices=("difference", "sum"), default="difference")
    o.add_argument("--point", type=_vector, default=None)
    o.add_argument("-o", "--output", metavar="PATH")
    o.set_defaults(func=cmd_ocs)

    f = sub.add_parser("fib", help="great-circle fibrations of S^3")
    f.add_argument("action", choices=("lookup", "check", "sign"))
    f.add_argument("--spec", required=True, metavar="FILE")
    f.add_argument("--point", type=_vector, default=None)
    f.add_argument("--samples", type=_positive_int, default=50)
    f.add_argument("--seed", type=int, default=None)
    f.add_argument("-o", "--output", metavar="PATH")
    f.set_defaults(func=cmd_fib)

    q = sub.add_parser("quat", help="quaternionic structures on R^{4n}")
    q.add_argument("action", choices=("counterexample", "agree", "sign"))
    q.add_argument("files", nargs="*", metavar="FILE")
    q.add_argument("--point", type=_vector, default=None)
    q.add_argument("-o", "--output", metavar="PATH")
    q.set_defaults(func=cmd_quat)

    d = sub.add_parser("darboux", help="Darboux normal form of a bivector")
    d.add_argument("--alpha", required=True, metavar="FILE")
    d.add_argument("-o", "--output", metavar="PATH")
    d.set_defaults(func=cmd_darboux)

    c = sub.add_parser("counterexample", help="reproduce an explicit example exactly")
    c.add_argument("which", choices=("s7-nonexistence", "s7-nonuniqueness", "chart-n3"))
    c.add_argument("-o", "--output", metavar="PATH")
    c.set_defaults(func=cmd_counterexample)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    needs_files = {("ocs", "sign"), ("ocs", "agree"), ("ocs", "pair-bases"),
                   ("quat", "agree"), ("quat", "sign")}
    try:
        if (args.command, getattr(args, "action", None)) in needs_files and not args.files:
            raise UsageError(f"{args.command} {args.action} needs an input file")
        return args.func(args)
    except (SchemaError, UsageError) as exc:
        print(f"fibrate: error: {exc}", file=sys.stderr)
        return 2
    except FibrateError as exc:
        print(f"fibrate: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
