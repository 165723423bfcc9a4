"""Batch command-line front end.

Subcommands: ``mine`` (CSV in, rule set out), ``check-pair`` (numeric
certification of an operator pair), ``similarity`` (structural Jaccard of
two rule-set files), ``synth`` (synthetic directional dataset), and the two
report sweeps ``sweep-param`` / ``sweep-threshold``, each writing a CSV
table plus a rendered PNG beside it.

Runs are reproducible: a JSON config file can carry every setting, flags
override it, and outputs are byte-identical for any ``--threads`` value.
Exit codes: 0 success (or adequate pair), 1 property failure, 2 config
error, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis, plots
from .data import (
    build_partitions,
    dataset_to_csv_bytes,
    export_mu_csv,
    fuzzify,
    load_csv,
)
from .errors import ConfigurationError, ImplimineError, IngestionError, UsageError
from .miner import MinerConfig, RuleSet, mine, ruleset_from_json_text
from .operators import (
    DEFAULT_IP_P,
    DEFAULT_SS_LAMBDA,
    ImplicationKind,
    ImplicationSpec,
    OperatorPair,
    TNormKind,
    TNormSpec,
    check_axioms,
    check_mtc,
    check_tc,
)
from .partitions import FuzzyPartition, GridSpec, partitions_from_json

# Shorthand -> (t-norm kind, implication kind, wants lambda, wants p)
_PAIR_SHORTHANDS = {
    "tp-iy": (TNormKind.PRODUCT, ImplicationKind.YAGER_IY, False, False),
    "tlk-ilk": (TNormKind.LUKASIEWICZ, ImplicationKind.LUKASIEWICZ,
                False, False),
    "tss-kss": (TNormKind.SCHWEIZER_SKLAR, ImplicationKind.SCHWEIZER_SKLAR_K,
                True, False),
    "tlk-ip": (TNormKind.LUKASIEWICZ, ImplicationKind.IP, False, True),
    "tm-igd": (TNormKind.MINIMUM, ImplicationKind.GODEL, False, False),
    "tm-igg": (TNormKind.MINIMUM, ImplicationKind.GOGUEN, False, False),
    "tp-igg": (TNormKind.PRODUCT, ImplicationKind.GOGUEN, False, False),
}

# Memberships in crisp mode are 0/1, where every t-norm and implication
# collapse to the classical connectives; the evaluation pair is immaterial.
_CRISP_PAIR = "tm-igd"


def pair_from_shorthand(
    name: str, lam: float | None = None, p: float | None = None
) -> OperatorPair:
    """Build an OperatorPair from a CLI shorthand such as ``tlk-ip``."""
    if name == "crisp":
        name = _CRISP_PAIR
    try:
        t_kind, i_kind, wants_lam, wants_p = _PAIR_SHORTHANDS[name]
    except KeyError:
        known = ", ".join([*sorted(_PAIR_SHORTHANDS), "crisp"])
        raise ConfigurationError(
            f"unknown pair {name!r}; known: {known}"
        ) from None
    t_lam = (lam if lam is not None else DEFAULT_SS_LAMBDA) if (
        t_kind is TNormKind.SCHWEIZER_SKLAR
    ) else None
    i_lam = (lam if lam is not None else DEFAULT_SS_LAMBDA) if wants_lam else None
    i_p = (p if p is not None else DEFAULT_IP_P) if wants_p else None
    return OperatorPair(
        TNormSpec(t_kind, t_lam), ImplicationSpec(i_kind, i_lam, i_p)
    )


@dataclass
class RunConfig:
    """Resolved settings of a mine run (config file values, flags winning)."""

    input: str
    output: str
    pair: OperatorPair
    schema_overrides: dict = field(default_factory=dict)
    partitions: list[FuzzyPartition] | None = None
    min_cov: float = 0.3
    min_supp: float = 0.3
    min_conf: float = 0.8
    max_itemset_size: int = 4
    prune: bool = True
    mode: str = "fuzzy"
    target_column: str | None = None
    seed: int = 0
    format: str = "json"
    threads: int = 1
    dump_mu: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("fuzzy", "crisp"):
            raise ConfigurationError(f"mode must be fuzzy or crisp, got "
                                     f"{self.mode!r}")
        if self.format not in ("json", "csv"):
            raise ConfigurationError(f"format must be json or csv, got "
                                     f"{self.format!r}")
        if self.threads < 0:
            raise ConfigurationError("--threads must be >= 0")


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IngestionError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid config JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ConfigurationError("config file must hold a JSON object")
    return payload


def _resolve_pair(args, conf: dict) -> OperatorPair:
    if getattr(args, "pair", None):
        return pair_from_shorthand(args.pair, args.lam, args.p)
    raw = conf.get("pair")
    if raw is None:
        # The featured default: directional semantics out of the box.
        return pair_from_shorthand("tlk-ip", args.lam, args.p)
    if isinstance(raw, str):
        return pair_from_shorthand(raw, args.lam, args.p)
    return OperatorPair.from_dict(raw)


def _resolve_partitions(conf: dict) -> list[FuzzyPartition] | None:
    raw = conf.get("partitions")
    if raw is None:
        return None
    if isinstance(raw, str):
        try:
            text = Path(raw).read_text()
        except OSError as exc:
            raise IngestionError(
                f"cannot read partitions {raw}: {exc}"
            ) from None
        return partitions_from_json(text)
    return partitions_from_json(json.dumps(raw))


def _resolve_run_config(args) -> RunConfig:
    conf = _load_config_file(args.config)
    thresholds = conf.get("thresholds", {})

    def pick(flag_value, *conf_keys, default):
        if flag_value is not None:
            return flag_value
        for scope, key in conf_keys:
            if key in scope:
                return scope[key]
        return default

    input_path = pick(args.input, (conf, "input"), default=None)
    if input_path is None:
        raise ConfigurationError("an input CSV is required (--input)")
    output = pick(args.out, (conf, "output"), default=None)
    if output is None:
        raise ConfigurationError("an output path is required (--out)")
    mode = pick(args.mode, (conf, "mode"), default="fuzzy")
    if getattr(args, "pair", None) == "crisp":
        mode = "crisp"
    return RunConfig(
        input=str(input_path),
        output=str(output),
        pair=_resolve_pair(args, conf),
        schema_overrides=conf.get("schema_overrides", {}),
        partitions=_resolve_partitions(conf),
        min_cov=float(pick(args.min_cov, (thresholds, "min_cov"),
                           (conf, "min_cov"), default=0.3)),
        min_supp=float(pick(args.min_supp, (thresholds, "min_supp"),
                            (conf, "min_supp"), default=0.3)),
        min_conf=float(pick(args.min_conf, (thresholds, "min_conf"),
                            (conf, "min_conf"), default=0.8)),
        max_itemset_size=int(pick(args.max_size,
                                  (conf, "max_itemset_size"), default=4)),
        prune=not args.no_prune and bool(conf.get("prune", True)),
        mode=mode,
        target_column=pick(args.target, (conf, "target_column"),
                           default=None),
        seed=int(pick(args.seed, (conf, "seed"), default=0)),
        format=pick(args.format, (conf, "format"), default="json"),
        threads=args.threads if args.threads is not None else int(
            conf.get("threads", 1)
        ),
        dump_mu=args.dump_mu,
    )


def _write_text(path: str | Path, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_mine(args) -> int:
    run = _resolve_run_config(args)
    dataset = load_csv(run.input, run.schema_overrides)
    partitions = build_partitions(dataset, run.partitions, run.mode)
    config = MinerConfig(
        pair=run.pair,
        min_cov=run.min_cov,
        min_supp=run.min_supp,
        min_conf=run.min_conf,
        max_itemset_size=run.max_itemset_size,
        prune_redundant=run.prune,
        target_column=run.target_column,
    )
    ruleset = mine(dataset, partitions, config, threads=run.threads)
    ruleset.provenance["mode"] = run.mode
    if run.dump_mu:
        export_mu_csv(fuzzify(dataset, partitions), run.dump_mu)
    if run.format == "json":
        _write_text(run.output, ruleset.to_json_text())
    else:
        _write_text(run.output, ruleset.to_csv_text())
    n = len(ruleset)
    mean = lambda sel: (sum(sel(q) for _, q in ruleset) / n) if n else 0.0
    print(
        "rules={} mean_cov={:.4f} mean_supp={:.4f} mean_conf={:.4f}".format(
            n,
            mean(lambda q: q.fcov),
            mean(lambda q: q.fsupp),
            mean(lambda q: q.fconf),
        )
    )
    for warning in ruleset.provenance.get("warnings", []):
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def cmd_check_pair(args) -> int:
    if not args.pair:
        raise ConfigurationError("--pair is required")
    pair = pair_from_shorthand(args.pair, args.lam, args.p)
    grid = GridSpec(
        resolution=args.resolution,
        random_points=args.random_points,
        seed=args.seed if args.seed is not None else GridSpec.seed,
    )
    axiom_reports = check_axioms(pair.implication, grid)
    tc = check_tc(pair, grid)
    mtc = check_mtc(pair, grid)
    adequate = tc.holds and mtc.holds
    for report in [*axiom_reports, tc, mtc]:
        line = f"{report.property}: {'holds' if report.holds else 'fails'}"
        if not report.holds:
            line += (
                f" (max_violation={report.max_violation:.6g},"
                f" witness={report.witness})"
            )
        print(line)
    print(f"adequate={'true' if adequate else 'false'}")
    if args.out:
        payload = {
            "pair": pair.to_dict(),
            "grid": {
                "resolution": grid.resolution,
                "random_points": grid.random_points,
                "seed": grid.seed,
            },
            "axioms": [r.to_dict() for r in axiom_reports],
            "tc": tc.to_dict(),
            "mtc": mtc.to_dict(),
            "adequate": adequate,
        }
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return 0 if adequate else 1


def _load_ruleset_file(path: str) -> RuleSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IngestionError(f"cannot read {path}: {exc}") from None
    return ruleset_from_json_text(text)


def cmd_similarity(args) -> int:
    rs1 = _load_ruleset_file(args.file1)
    rs2 = _load_ruleset_file(args.file2)
    result = analysis.similarity(rs1, rs2)
    print(f"similarity={result.percent:.2f}")
    return 0


def cmd_synth(args) -> int:
    if not args.out:
        raise ConfigurationError("--out is required")
    seed = args.seed if args.seed is not None else 42
    dataset = analysis.gen_synthetic_ab(args.n, seed)
    Path(args.out).write_bytes(dataset_to_csv_bytes(dataset))
    figure = Path(args.out).with_suffix(".png")
    plots.render_synth_scatter(dataset, figure)
    print(
        "rows={} seed={} generator={} out={} figure={}".format(
            dataset.row_count, seed, analysis.SYNTH_GENERATOR_NAME,
            args.out, figure,
        )
    )
    return 0


def _parse_values(raw: str) -> list[float]:
    try:
        values = [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise ConfigurationError(f"cannot parse values list {raw!r}") from None
    if not values:
        raise ConfigurationError("--values must name at least one number")
    return values


def cmd_sweep_param(args) -> int:
    if not args.out:
        raise ConfigurationError("--out is required")
    if args.input is None:
        raise ConfigurationError("an input CSV is required (--input)")
    dataset = load_csv(args.input)
    partitions = build_partitions(dataset)
    values = _parse_values(args.values)
    rows = analysis.param_sweep(
        args.family, values, dataset, partitions,
        threads=args.threads or 1,
    )
    _write_text(args.out, analysis.param_sweep_to_csv(rows))
    figure = Path(args.out).with_suffix(".png")
    plots.render_param_sweep(rows, args.family, figure)
    print(f"points={len(rows)} out={args.out} figure={figure}")
    return 0


def cmd_sweep_threshold(args) -> int:
    if not args.out:
        raise ConfigurationError("--out is required")
    if args.input is None:
        raise ConfigurationError("an input CSV is required (--input)")
    dataset = load_csv(args.input)
    mode = args.mode or "fuzzy"
    partitions = build_partitions(dataset, mode=mode)
    pair = pair_from_shorthand(args.pair or "tlk-ip", args.lam, args.p)
    values = _parse_values(args.values)
    rows = analysis.threshold_sweep(
        dataset,
        partitions,
        pair,
        values,
        min_conf=args.min_conf if args.min_conf is not None else 0.8,
        min_supp=args.min_supp if args.min_supp is not None else 0.3,
        threads=args.threads or 1,
    )
    _write_text(args.out, analysis.threshold_sweep_to_csv(rows))
    figure = Path(args.out).with_suffix(".png")
    plots.render_threshold_sweep(rows, figure)
    print(f"points={len(rows)} out={args.out} figure={figure}")
    return 0


def _add_pair_flags(sub) -> None:
    sub.add_argument("--pair", help="operator pair shorthand")
    sub.add_argument("--lambda", dest="lam", type=float, default=None,
                     help="lambda for the Schweizer-Sklar family (< 0)")
    sub.add_argument("--p", dest="p", type=float, default=None,
                     help="exponent for the reinforcement implication (> 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="implimine",
        description="Fuzzy implicative association rule mining.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine rules from a CSV dataset")
    p_mine.add_argument("--input", help="input CSV (headered, UTF-8)")
    p_mine.add_argument("--config", help="JSON run config; flags win")
    _add_pair_flags(p_mine)
    p_mine.add_argument("--min-cov", type=float, default=None)
    p_mine.add_argument("--min-supp", type=float, default=None)
    p_mine.add_argument("--min-conf", type=float, default=None)
    p_mine.add_argument("--max-size", type=int, default=None)
    p_mine.add_argument("--no-prune", action="store_true",
                        help="keep redundant refinements")
    p_mine.add_argument("--mode", choices=["fuzzy", "crisp"], default=None)
    p_mine.add_argument("--target", default=None,
                        help="restrict consequents to this column")
    p_mine.add_argument("--seed", type=int, default=None)
    p_mine.add_argument("--out", default=None, help="output rule-set file")
    p_mine.add_argument("--format", choices=["json", "csv"], default=None)
    p_mine.add_argument("--threads", type=int, default=None,
                        help="worker threads (0 = auto)")
    p_mine.add_argument("--dump-mu", default=None,
                        help="also write the membership matrix CSV here")
    p_mine.set_defaults(func=cmd_mine)

    p_check = sub.add_parser("check-pair",
                             help="certify an operator pair numerically")
    _add_pair_flags(p_check)
    p_check.add_argument("--resolution", type=int, default=65,
                         help="uniform grid points")
    p_check.add_argument("--random-points", type=int, default=200)
    p_check.add_argument("--seed", type=int, default=None,
                         help="grid seed")
    p_check.add_argument("--out", default=None, help="JSON report file")
    p_check.set_defaults(func=cmd_check_pair)

    p_sim = sub.add_parser("similarity",
                           help="structural similarity of two rule sets")
    p_sim.add_argument("file1")
    p_sim.add_argument("file2")
    p_sim.set_defaults(func=cmd_similarity)

    p_synth = sub.add_parser("synth",
                             help="generate the synthetic directional dataset")
    p_synth.add_argument("n", type=int)
    p_synth.add_argument("--seed", type=int, default=None)
    p_synth.add_argument("--out", default=None)
    p_synth.set_defaults(func=cmd_synth)

    p_sweepp = sub.add_parser("sweep-param",
                              help="directional rules across a parameter")
    p_sweepp.add_argument("--family", required=True,
                          choices=["ss_lambda", "lk_ip"])
    p_sweepp.add_argument("--values", required=True,
                          help="comma-separated parameter values")
    p_sweepp.add_argument("--input", default=None)
    p_sweepp.add_argument("--out", default=None)
    p_sweepp.add_argument("--threads", type=int, default=None)
    p_sweepp.set_defaults(func=cmd_sweep_param)

    p_sweept = sub.add_parser("sweep-threshold",
                              help="mining outcome across coverage thresholds")
    p_sweept.add_argument("--input", default=None)
    _add_pair_flags(p_sweept)
    p_sweept.add_argument("--values", required=True,
                          help="comma-separated coverage thresholds")
    p_sweept.add_argument("--min-supp", type=float, default=None)
    p_sweept.add_argument("--min-conf", type=float, default=None)
    p_sweept.add_argument("--mode", choices=["fuzzy", "crisp"], default=None)
    p_sweept.add_argument("--out", default=None)
    p_sweept.add_argument("--threads", type=int, default=None)
    p_sweept.set_defaults(func=cmd_sweep_threshold)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"ERROR config: {exc}", file=sys.stderr)
        return 2
    except (UsageError, IngestionError) as exc:
        print(f"ERROR input: {exc}", file=sys.stderr)
        return 3
    except ImplimineError as exc:  # pragma: no cover - future subclasses
        print(f"ERROR internal: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
