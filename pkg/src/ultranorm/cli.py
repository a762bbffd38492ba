"""``ultranorm`` command line.

Exit codes: 0 success, 1 an exact invariant failed, 2 unreadable or
malformed input, 3 dimension/field/mode mismatch, 4 invalid exponent p.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .errors import (
    DimensionMismatch,
    DomainError,
    FieldMismatch,
    InvalidP,
    ModeError,
    OutOfRange,
    ParseError,
    SingularMatrix,
    UltranormError,
)
from .graded.analysis import (
    flat_isometry_check,
    lebesgue_distances,
    limit_measure,
    theorem_b_table,
)
from .normspace.action import finite_dim_ray_limit_check, gerardin_apply
from .normspace.joint import joint_diagonalize
from .normspace.metrics import (
    d_inf,
    dp_distance,
    parse_p,
    root_decimal,
    successive_minima,
    volume,
)
from .oracles import random_norm, run_suite, suite_instances
from .valfield import INF, FieldSpec, as_rat

EXIT_OK, EXIT_INVARIANT, EXIT_PARSE, EXIT_MISMATCH, EXIT_INVALID_P = 0, 1, 2, 3, 4


@dataclass
class CommandSpec:
    """Validated command: subcommand, input/output paths and exact parameters."""

    subcommand: str
    inputs: list
    output: Path | None = None
    params: dict = field(default_factory=dict)

    def validate(self) -> None:
        for path in self.inputs:
            if not Path(path).is_file():
                raise ParseError(f"no such input file: {path}")


def _rats(values) -> list:
    return [as_rat(v) for v in values]


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


# --- subcommands ------------------------------------------------------------------


def cmd_dist(spec: CommandSpec) -> int:
    a = io.norm_from_json(io.load_file(spec.inputs[0]))
    b = io.norm_from_json(io.load_file(spec.inputs[1]))
    p = parse_p(spec.params["p"])
    lams = successive_minima(a, b)
    power = dp_distance(a, b, p)
    rows = [(f"lambda_{i + 1}", x) for i, x in enumerate(lams)]
    rows.append(("dp_power" if p != INF else "d_inf", power))
    rows += [("d_inf", d_inf(a, b)), ("vol", volume(a, b))] if p != INF else [("vol", volume(a, b))]
    text = io.csv_text(["quantity", "value"], rows, exact=("value",))
    text += f"dp_root,,{root_decimal(power, p)}\n"
    _emit(text, spec.output)
    return EXIT_OK


def cmd_jointdiag(spec: CommandSpec) -> int:
    a = io.norm_from_json(io.load_file(spec.inputs[0]))
    b = io.norm_from_json(io.load_file(spec.inputs[1]))
    _emit(io.dumps(io.joint_to_json(joint_diagonalize(a, b))), spec.output)
    return EXIT_OK


def cmd_measure(spec: CommandSpec) -> int:
    ring = io.ring_from_json(io.load_file(spec.inputs[0]))
    e1 = io.expr_from_json(io.load_file(spec.inputs[1]), ring)
    e2 = io.expr_from_json(io.load_file(spec.inputs[2]), ring)
    degrees = [int(m) for m in spec.params["degrees"]]
    measures, table = limit_measure(e1, e2, degrees)
    out = spec.output or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    for m, mu in zip(degrees, measures):
        (out / f"measure_m{m}.csv").write_text(io.measure_csv(mu), encoding="utf-8")
    leb = lebesgue_distances(measures) if spec.params.get("lebesgue") else [None] * len(measures)
    rows = [(r.index, r.value, r.diagnostic, d) for r, d in zip(table.rows, leb)]
    diag = io.csv_text(["m", "mean", "cdf_step", "cdf_to_uniform"], rows, exact=("mean", "cdf_step", "cdf_to_uniform"))
    (out / "diagnostics.csv").write_text(diag, encoding="utf-8")
    sys.stdout.write(diag)
    return EXIT_OK


def _random_quadruple(rng_seed: str, n: int, p: int):
    rng = random.Random(rng_seed)
    f = FieldSpec.padic(p)
    nu0 = random_norm(rng, f, n, 4, "filtration")
    nu0p = random_norm(rng, f, n, 4, "filtration")
    a = random_norm(rng, f, n, 4, "norm")
    ap = random_norm(rng, f, n, 4, "norm")
    return nu0, nu0p, a, ap


def theorem_a_counts(count: int, seed: int = 0, max_dim: int = 4, primes=(2, 3, 5)) -> dict:
    """Contractivity of the action in d_1, d_inf and additivity of vol on random quadruples."""
    rng = random.Random(seed)
    counts = {"d1": 0, "dinf": 0, "vol": 0, "total": count}
    for i in range(count):
        n, p = rng.randint(1, max_dim), rng.choice(primes)
        nu0, nu0p, a, ap = _random_quadruple(f"{seed}:{i}", n, p)
        x, y = gerardin_apply(nu0, a), gerardin_apply(nu0p, ap)
        counts["d1"] += dp_distance(x, y, 1) <= dp_distance(nu0, nu0p, 1) + dp_distance(a, ap, 1)
        counts["dinf"] += d_inf(x, y) <= d_inf(nu0, nu0p) + d_inf(a, ap)
        counts["vol"] += volume(x, y) == volume(nu0, nu0p) + volume(a, ap)
    return counts


def cmd_experiment(spec: CommandSpec) -> int:
    kind = spec.params["kind"]
    cfg = io.load_file(spec.inputs[0])
    if not isinstance(cfg, dict):
        raise ParseError("experiment config must be a JSON object")
    ok = True
    if kind == "theorem-a":
        counts = theorem_a_counts(
            int(cfg.get("count", 100)),
            int(cfg.get("seed", 0)),
            int(cfg.get("max_dim", 4)),
            tuple(cfg.get("primes", (2, 3, 5))),
        )
        ok = all(counts[k] == counts["total"] for k in ("d1", "dinf", "vol"))
        text = io.csv_text(["check", "passed", "total"], [(k, counts[k], counts["total"]) for k in ("d1", "dinf", "vol")])
    elif kind == "theorem-b":
        ring = io.ring_from_json(cfg["ring"])
        rows = theorem_b_table(
            io.expr_from_json(cfg["nu0"], ring),
            io.expr_from_json(cfg["nu0p"], ring),
            io.expr_from_json(cfg["alpha"], ring),
            _rats(cfg["times"]),
            [int(m) for m in cfg["degrees"]],
            _rats(cfg.get("c_grid", [])),
        )
        text = io.csv_text(["t", "M", "distance"], [(r.t, r.m, r.distance) for r in rows], exact=("t", "distance"))
    elif kind == "theorem-c":
        ring = io.ring_from_json(cfg["ring"])
        report = flat_isometry_check(
            io.profile_from_json(cfg["f"]),
            io.profile_from_json(cfg["g"]),
            io.expr_from_json(cfg["nu0"], ring),
            io.expr_from_json(cfg["alpha"], ring),
            cfg.get("p", 1),
            [int(m) for m in cfg["degrees"]],
        )
        ok = report.all_equal
        text = io.csv_text(
            ["m", "distance", "lp_profile", "equal"],
            [(r.m, r.lhs, r.rhs, int(r.equal)) for r in report.rows],
            exact=("distance", "lp_profile"),
        )
    elif kind == "ray-limit":
        rows = finite_dim_ray_limit_check(
            io.norm_from_json(cfg["nu0"]),
            io.norm_from_json(cfg["nu0p"]),
            io.norm_from_json(cfg["alpha"]),
            io.norm_from_json(cfg["alphap"]),
            cfg.get("p", 1),
            _rats(cfg["times"]),
        )
        ok = all(r.within for r in rows)
        text = io.csv_text(
            ["t", "scaled", "target", "bound", "within"],
            [(r.t, r.value, r.target, r.bound, int(r.within)) for r in rows],
            exact=("t", "scaled", "target", "bound"),
        )
    else:
        raise ParseError(f"unknown experiment kind {kind!r}")
    _emit(text, spec.output)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_oracle_suite(spec: CommandSpec) -> int:
    descs = suite_instances(
        int(spec.params["count"]),
        int(spec.params["seed"]),
        int(spec.params["max_dim"]),
    )
    reports = run_suite(descs)
    _emit("".join(r.to_json() + "\n" for r in reports), spec.output)
    bad = sum(not r.equal for r in reports)
    sys.stderr.write(f"{len(reports) - bad}/{len(reports)} oracle comparisons equal\n")
    return EXIT_OK if bad == 0 else EXIT_INVARIANT


COMMANDS = {
    "dist": cmd_dist,
    "jointdiag": cmd_jointdiag,
    "measure": cmd_measure,
    "experiment": cmd_experiment,
    "oracle-suite": cmd_oracle_suite,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ultranorm", description="Exact computations with non-Archimedean norms.")
    ap.add_argument("--threads", type=int, help="worker cap (overrides ULTRANORM_THREADS)")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="successive minima, d_p, d_inf and vol of two norms")
    d.add_argument("norm_a")
    d.add_argument("norm_b")
    d.add_argument("--p", default="1", help="positive integer or 'inf'")
    d.add_argument("--out", type=Path)

    j = sub.add_parser("jointdiag", help="joint orthogonal basis of two norms (JSON)")
    j.add_argument("norm_a")
    j.add_argument("norm_b")
    j.add_argument("--out", type=Path)

    m = sub.add_parser("measure", help="rescaled spectral measures of two graded norms")
    m.add_argument("ring")
    m.add_argument("expr_a")
    m.add_argument("expr_b")
    m.add_argument("--degrees", nargs="+", type=int, required=True)
    m.add_argument("--lebesgue", action="store_true", help="also report sup-CDF distance to uniform on [0, 1]")
    m.add_argument("--out", type=Path, help="output directory (default: current)")

    e = sub.add_parser("experiment", help="theorem-a | theorem-b | theorem-c | ray-limit")
    e.add_argument("kind", choices=["theorem-a", "theorem-b", "theorem-c", "ray-limit"])
    e.add_argument("config")
    e.add_argument("--out", type=Path)

    o = sub.add_parser("oracle-suite", help="cross-check the engine against both oracles (JSONL)")
    o.add_argument("--count", type=int, default=200)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--max-dim", type=int, default=6)
    o.add_argument("--out", type=Path)
    return ap


def _spec(args) -> CommandSpec:
    c = args.command
    if c == "dist":
        return CommandSpec(c, [args.norm_a, args.norm_b], args.out, {"p": args.p})
    if c == "jointdiag":
        return CommandSpec(c, [args.norm_a, args.norm_b], args.out)
    if c == "measure":
        return CommandSpec(c, [args.ring, args.expr_a, args.expr_b], args.out, {"degrees": args.degrees, "lebesgue": args.lebesgue})
    if c == "experiment":
        return CommandSpec(c, [args.config], args.out, {"kind": args.kind})
    return CommandSpec(c, [], args.out, {"count": args.count, "seed": args.seed, "max_dim": args.max_dim})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads:
        os.environ["ULTRANORM_THREADS"] = str(args.threads)
    try:
        spec = _spec(args)
        spec.validate()
        return COMMANDS[spec.subcommand](spec)
    except InvalidP as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID_P
    except (DimensionMismatch, FieldMismatch, ModeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MISMATCH
    except (ParseError, SingularMatrix, DomainError, OutOfRange, KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except UltranormError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
