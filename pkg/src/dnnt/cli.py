"""Command line interface: ``dnnt gen|solve|eval|reduce|verify|corpus``.

Reports are ``key: value`` lines on stdout.  Exit codes:

    0  decision yes / everything verified
    1  decision no / some instance failed verification
    2  usage or file-format error
    3  instance or source validation error
    4  assignment not in the parameter space
    5  enumeration or digit budget exceeded
    6  solver or reduction precondition violated
    7  activation undefined on its input
    8  witness does not solve the source problem

Random generation uses Python's ``random.Random`` (Mersenne Twister) seeded
with ``--seed``; the seed is recorded in the ``meta`` header of every file
written, so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .errors import (
    ActivationError,
    BudgetExceeded,
    DecimalFormatError,
    FormatError,
    InfeasibleWitness,
    MembershipError,
    PreconditionError,
    ValidationError,
)
from .evaluator import forward, point_losses
from .exactnum import ExactDec
from .netmodel import (
    Instance,
    load_assignment,
    load_instance,
    membership,
    save_assignment,
    save_instance,
    validate,
)
from .reductions import GADGETS, dnnt_to_cnnt, lift_assignment, reduce_source, verify_equivalence
from .reductions.sources import GENERATORS, load_source, save_source, source_to_dict

EXIT_YES, EXIT_NO = 0, 1
EXIT_USAGE, EXIT_VALIDATION, EXIT_MEMBERSHIP = 2, 3, 4
EXIT_BUDGET, EXIT_PRECONDITION, EXIT_ACTIVATION, EXIT_WITNESS = 5, 6, 7, 8

_ERROR_CODES = (
    (FormatError, EXIT_USAGE),
    (DecimalFormatError, EXIT_USAGE),
    (ValidationError, EXIT_VALIDATION),
    (MembershipError, EXIT_MEMBERSHIP),
    (BudgetExceeded, EXIT_BUDGET),
    (PreconditionError, EXIT_PRECONDITION),
    (ActivationError, EXIT_ACTIVATION),
    (InfeasibleWitness, EXIT_WITNESS),
)

# generator keyword per --size key, per problem
SIZE_KEYS = {
    "subset-sum": {"n": "max_items", "max": "max_value"},
    "csp": {"vertices": "max_vertices", "alphabet": "max_alphabet"},
    "exact-cover": {"n": "max_elements", "m": "max_sets"},
    "slp": {"len": "length", "max_len": "max_length"},
}


def _report(**items) -> None:
    for key, value in items.items():
        print(f"{key}: {value}")


def _load_valid(path) -> Instance:
    inst = load_instance(path)
    problems = validate(inst)
    if problems:
        raise ValidationError(problems)
    return inst


def _parse_size(problem: str, spec: str | None) -> dict:
    if not spec:
        return {}
    known = SIZE_KEYS[problem]
    out = {}
    for part in spec.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in known or not value:
            raise FormatError(f"bad --size entry {part!r}; keys for {problem}: {', '.join(known)}")
        out[known[key]] = int(value)
    return out


def _random_source(problem: str, seed: int, size: dict):
    return GENERATORS[problem](random.Random(seed), **size)


def _stats(inst: Instance) -> dict:
    from .solvers import compute_bound_M

    net = inst.network
    try:
        _, M = compute_bound_M(inst)
    except PreconditionError:
        M = "n/a"
    return {
        "vertices": len(net.vertices),
        "edges": len(net.edges),
        "hidden": len(net.hidden),
        "depth": net.depth,
        "points": len(inst.dataset.points),
        "restricted": str(inst.params.is_restricted()).lower(),
        "M": M,
    }


def cmd_gen(args) -> int:
    if args.random:
        size = _parse_size(args.problem, args.size)
        if args.len is not None:
            if args.problem != "slp":
                raise FormatError("--len applies to --problem slp only")
            size["length"] = args.len
        src = _random_source(args.problem, args.seed, size)
        meta = {"generator": "random.Random", "seed": args.seed, "problem": args.problem}
    else:
        if not args.infile:
            raise FormatError("gen needs --in FILE or --random")
        src = load_source(args.infile)
        doc = source_to_dict(src)
        if doc["problem"] != args.problem:
            raise FormatError(f"{args.infile} holds a {doc['problem']} instance, not {args.problem}")
        meta = {"problem": args.problem, "source_file": Path(args.infile).name}
    options = {"gadget": args.gadget} if args.problem == "slp" else {}
    inst = reduce_source(src, **options)
    inst.meta.update(meta)
    problems = validate(inst)
    if problems:
        raise ValidationError(problems)
    if args.source_out:
        save_source(src, args.source_out, meta)
    if args.out:
        save_instance(inst, args.out)
    _report(problem=args.problem, **_stats(inst), out=args.out or "-")
    return EXIT_YES


def cmd_solve(args) -> int:
    from .solvers import brute_force_solve, dp_solve, scale_to_naturals

    inst = _load_valid(args.instance)
    if args.scale:
        inst = scale_to_naturals(inst)
    if args.method == "dp":
        result = dp_solve(inst)
    else:
        result = brute_force_solve(inst, args.budget)
    if args.emit_witness:
        save_assignment(result.theta, args.emit_witness)
    _report(
        method=result.method,
        loss=result.loss,
        gamma=inst.gamma,
        decision="yes" if result.decision else "no",
        work=result.work,
        witness=args.emit_witness or "-",
    )
    return EXIT_YES if result.decision else EXIT_NO


def cmd_eval(args) -> int:
    inst = _load_valid(args.instance)
    theta = load_assignment(args.assignment)
    if not membership(theta, inst.params):
        raise MembershipError("assignment is not a member of the parameter space")
    for i, p in enumerate(inst.dataset.points):
        out = forward(inst, theta, p.x, check=False)
        print(f"point.{i}: " + " ".join(f"{t}={v}" for t, v in out.items()))
    losses = point_losses(inst, theta, check=False)
    total = sum(losses, ExactDec(0))
    decision = total <= inst.gamma
    _report(total_loss=total, gamma=inst.gamma, decision="yes" if decision else "no")
    return EXIT_YES if decision else EXIT_NO


def cmd_reduce(args) -> int:
    inst = _load_valid(args.instance)
    out = dnnt_to_cnnt(inst)
    save_instance(out, args.out)
    if args.assignment:
        if not args.assignment_out:
            raise FormatError("--assignment needs --assignment-out")
        lifted = lift_assignment(inst, load_assignment(args.assignment))
        save_assignment(lifted, args.assignment_out)
    _report(
        kind=out.kind,
        vertices=len(out.network.vertices),
        edges=len(out.network.edges),
        points=len(out.dataset.points),
        d=out.dataset.d,
        gamma=out.gamma,
        M=out.meta["M"],
        out=args.out,
    )
    return EXIT_YES


def cmd_verify(args) -> int:
    files = sorted(Path(args.corpus).glob("*.json"))
    if not files:
        raise FormatError(f"no *.json source files in {args.corpus}")
    failures = 0
    for path in files:
        src = load_source(path)
        try:
            v = verify_equivalence(src, method=args.method, budget=args.budget)
        except PreconditionError as exc:
            print(f"{path.name}: error precondition={exc}")
            failures += 1
            continue
        status = "pass" if v.ok else "FAIL"
        failures += not v.ok
        extra = f" detail={v.detail}" if v.detail else ""
        print(
            f"{path.name}: {status} oracle={str(v.oracle).lower()} solver={str(v.solver).lower()} "
            f"extracted={'-' if v.extracted is None else str(v.extracted).lower()}{extra}"
        )
    _report(instances=len(files), passed=len(files) - failures, failed=failures)
    return EXIT_YES if failures == 0 else EXIT_NO


def cmd_corpus(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    size = _parse_size(args.problem, args.size)
    for i in range(args.count):
        seed = args.seed + i
        src = _random_source(args.problem, seed, size)
        meta = {"generator": "random.Random", "seed": seed, "problem": args.problem}
        save_source(src, out / f"{args.problem}-{i:04d}.json", meta)
    _report(problem=args.problem, count=args.count, first_seed=args.seed, out=str(out))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dnnt", description="Discrete neural network training toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    problems = sorted(GENERATORS)

    g = sub.add_parser("gen", help="reduce a source problem to a D-NNT instance file")
    g.add_argument("--problem", required=True, choices=problems)
    g.add_argument("--in", dest="infile", help="source problem file")
    g.add_argument("--random", action="store_true", help="generate the source from --seed")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--size", help="comma separated key=value size limits")
    g.add_argument("--len", type=int, help="SLP length (with --random)")
    g.add_argument("--gadget", choices=GADGETS, default="robust", help="SLP multiplication gadget")
    g.add_argument("--out", help="instance file to write")
    g.add_argument("--source-out", help="also write the source problem")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="decide a D-NNT instance")
    s.add_argument("instance")
    s.add_argument("--method", choices=("brute", "dp"), default="brute")
    s.add_argument("--budget", type=int, help="enumeration budget (default DNNT_ENUM_BUDGET)")
    s.add_argument("--emit-witness", help="write the optimal assignment here")
    s.add_argument("--scale", action="store_true", help="rescale to natural numbers first")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("eval", help="evaluate an assignment on an instance")
    e.add_argument("instance")
    e.add_argument("assignment")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("reduce", help="emit the continuous instance of a D-NNT instance")
    r.add_argument("instance")
    r.add_argument("--out", required=True)
    r.add_argument("--assignment", help="discrete assignment to lift")
    r.add_argument("--assignment-out", help="where to write the lifted assignment")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="oracle versus solver over a corpus of source files")
    v.add_argument("--corpus", required=True)
    v.add_argument("--method", choices=("brute", "dp"), default="brute")
    v.add_argument("--budget", type=int)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("corpus", help="write seeded random source files")
    c.add_argument("--problem", required=True, choices=problems)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--size")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        for cls, code in _ERROR_CODES:
            if isinstance(exc, cls):
                print(f"error: {exc}", file=sys.stderr)
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
