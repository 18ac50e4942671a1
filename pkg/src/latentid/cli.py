"""Command-line entry point.

Exit codes: 0 success, 2 usage or invalid argument, 3 unreadable or
malformed input, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .connectivity import ABSOLUTE, PROPORTIONAL, classify
from .errors import (DataFormatError, InvalidArgumentError, NumericOverflowError,
                     SingularityError, UndefinedRatioError)
from .experiments import BOUND_HEADER, SURFACE_HEADER, bound_table, error_surface
from .lsar import RegularizationConfig, fit_report, lsar_fit, lsar_fit_regularized, r_squared
from .netgen import gen_erdos_renyi, gen_ring, latent_acyclicity_index, lift_higher_order, stability_report
from .simulate import simulate
from .spectral import DEFAULT_GRID

EXIT_USAGE, EXIT_FORMAT, EXIT_NUMERIC = 2, 3, 4


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _reg(args):
    if args.gamma is None:
        return None
    return RegularizationConfig(args.gamma, args.rho0)


def cmd_generate(args) -> int:
    if args.kind == "ring":
        net = gen_ring(args.n, args.w, args.self_loop, args.manifest)
    elif args.kind == "er":
        net = gen_erdos_renyi(args.n, args.p, args.wmin, args.wmax, args.nm, args.seed)
    else:
        net = lift_higher_order(formats.read_higher_order(args.input))
    formats.write_network(net, args.out)
    print(stability_report(net))
    return 0


def cmd_simulate(args) -> int:
    net = formats.read_network(args.network)
    data = simulate(net, args.N, seed=args.seed, burn_in=args.burn_in)
    formats.write_timeseries_csv(data, args.out, include_inputs=not args.no_inputs)
    return 0


def _fit(args, data):
    reg = _reg(args)
    return lsar_fit(data, args.tau) if reg is None else lsar_fit_regularized(data, args.tau, reg)


def cmd_fit(args) -> int:
    data = formats.read_timeseries_csv(args.data)
    model = _fit(args, data)
    formats.write_model(model, args.out)
    report = fit_report(model)
    if args.report:
        formats.write_report(report, args.report)
    print(json.dumps({k: v for k, v in report.items() if k != "block_norms"}, default=str))
    return 0


def cmd_classify(args) -> int:
    model = formats.read_model(args.model)
    acyclic = False
    if args.network:
        net = formats.read_network(args.network)
        if net.n_m != model.n_m:
            raise InvalidArgumentError(f"network has {net.n_m} manifest nodes, model {model.n_m}")
        model = type(model)(model.mats, model.provenance, model.reg, net.manifest_labels)
        acyclic = latent_acyclicity_index(net.a22) is not None
    graph = classify(model, args.alpha, args.mode, args.exclude_self_loops,
                     acyclic_latent=acyclic)
    formats.write_graph(graph, args.out)
    if args.edges:
        formats.write_edge_csv(graph, args.edges)
    for src, dst, w in graph.direct_edges():
        print(f"direct   {src} -> {dst}  weight {w:.6g}")
    for src, dst, orders in graph.indirect_edges():
        print(f"indirect {src} -> {dst}  order {orders[0]}")
    return 0


def cmd_validate(args) -> int:
    data = formats.read_timeseries_csv(args.data)
    train, holdout = data.split(args.split)
    model = _fit(args, train)
    report = fit_report(model)
    report["split"] = args.split
    report["r_squared"] = r_squared(model, holdout)
    formats.write_report(report, args.out)
    print(f"R^2 = {report['r_squared']:.6f}")
    return 0


def _surface_config(args) -> dict:
    cfg = {}
    if args.config:
        cfg = json.loads(Path(args.config).read_text())
    for key in ("network", "N_list", "tau_list", "seeds", "grid_size", "alpha", "output_dir"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if args.gamma is not None:
        cfg["reg"] = {"gamma": args.gamma, "rho0": args.rho0}
    cfg.setdefault("grid_size", DEFAULT_GRID)
    cfg.setdefault("alpha", 0.1)
    cfg.setdefault("reg", None)
    for key in ("network", "N_list", "tau_list", "seeds", "output_dir"):
        if key not in cfg:
            raise InvalidArgumentError(f"error-surface needs {key!r} (flag or config file)")
    return cfg


def cmd_error_surface(args) -> int:
    cfg = _surface_config(args)
    net_spec = cfg["network"]
    net = (formats.network_from_dict(net_spec) if isinstance(net_spec, dict)
           else formats.read_network(net_spec))
    reg = cfg["reg"] and RegularizationConfig(cfg["reg"]["gamma"], cfg["reg"]["rho0"])
    out = Path(cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.json").write_text(json.dumps(cfg, indent=2, sort_keys=True) + "\n")
    rows = error_surface(net, cfg["N_list"], cfg["tau_list"], cfg["seeds"], cfg["grid_size"],
                         reg, jobs=args.jobs)
    formats.write_table_csv(SURFACE_HEADER, [r.as_tuple() for r in rows], out / "error_surface.csv")
    failed = sum(r.error is not None for r in rows)
    print(f"{len(rows)} cells written to {out / 'error_surface.csv'} ({failed} failed)")
    return 0


def cmd_bound_table(args) -> int:
    net = formats.read_network(args.network)
    rows = bound_table(net, args.tau_max, args.rho_bar, args.grid or DEFAULT_GRID)
    formats.write_table_csv(BOUND_HEADER, rows, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--grid", type=int, help=f"frequency grid size (default {DEFAULT_GRID})")
    common.add_argument("--out", help="output file or directory")

    reg = argparse.ArgumentParser(add_help=False)
    reg.add_argument("--gamma", type=float, help="exponential regularization weight")
    reg.add_argument("--rho0", type=float, default=0.9, help="regularization decay rate")

    parser = argparse.ArgumentParser(prog="latentid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a network JSON file")
    gsub = gen.add_subparsers(dest="kind", required=True)
    ring = gsub.add_parser("ring", parents=[common])
    ring.add_argument("--n", type=int, required=True)
    ring.add_argument("--w", type=float, default=0.25)
    ring.add_argument("--self", dest="self_loop", type=float, default=0.25)
    ring.add_argument("--manifest", type=_int_list, required=True)
    er = gsub.add_parser("er", parents=[common])
    er.add_argument("--n", type=int, required=True)
    er.add_argument("--p", type=float, required=True)
    er.add_argument("--wmin", type=float, default=0.1)
    er.add_argument("--wmax", type=float, default=0.35)
    er.add_argument("--nm", type=int, required=True)
    ho = gsub.add_parser("from-higher-order", parents=[common])
    ho.add_argument("--input", required=True, help="higher-order network JSON")
    for p in (ring, er, ho):
        p.set_defaults(func=cmd_generate, need_out=True)

    sim = sub.add_parser("simulate", parents=[common], help="simulate a network to CSV")
    sim.add_argument("--network", required=True)
    sim.add_argument("--N", type=int, required=True)
    sim.add_argument("--burn-in", type=int, default=0)
    sim.add_argument("--no-inputs", action="store_true", help="omit the u columns")
    sim.set_defaults(func=cmd_simulate, need_out=True)

    fit = sub.add_parser("fit", parents=[common, reg], help="LSAR fit of a CSV record")
    fit.add_argument("--data", required=True)
    fit.add_argument("--tau", type=int, required=True)
    fit.add_argument("--report", help="fit report JSON")
    fit.set_defaults(func=cmd_fit, need_out=True)

    cls = sub.add_parser("classify", parents=[common], help="direct/indirect graph of a model")
    cls.add_argument("--model", required=True)
    cls.add_argument("--alpha", type=float, default=0.1)
    cls.add_argument("--mode", choices=(PROPORTIONAL, ABSOLUTE), default=PROPORTIONAL)
    cls.add_argument("--exclude-self-loops", action="store_true")
    cls.add_argument("--network", help="network JSON supplying node labels")
    cls.add_argument("--edges", help="also write an edge CSV")
    cls.set_defaults(func=cmd_classify, need_out=True)

    val = sub.add_parser("validate", parents=[common, reg], help="holdout R^2 of an LSAR fit")
    val.add_argument("--data", required=True)
    val.add_argument("--tau", type=int, required=True)
    val.add_argument("--split", type=float, default=0.8)
    val.set_defaults(func=cmd_validate, need_out=True)

    surf = sub.add_parser("error-surface", parents=[common, reg], help="(N, tau, seed) sweep")
    surf.add_argument("--config", help="JSON config; flags override its values")
    surf.add_argument("--network")
    surf.add_argument("--N-list", dest="N_list", type=_int_list)
    surf.add_argument("--tau-list", dest="tau_list", type=_int_list)
    surf.add_argument("--seeds", type=_int_list)
    surf.add_argument("--jobs", type=int, default=1)
    surf.set_defaults(func=cmd_error_surface, need_out=False)

    bt = sub.add_parser("bound-table", parents=[common], help="optimal-AR error vs bound")
    bt.add_argument("--network", required=True)
    bt.add_argument("--tau-max", type=int, default=20)
    bt.add_argument("--rho-bar", type=float)
    bt.set_defaults(func=cmd_bound_table, need_out=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "error-surface":
        args.output_dir = args.out
        args.grid_size = args.grid
        args.alpha = None
    elif args.need_out and not args.out:
        parser.error("--out is required")
    try:
        return args.func(args)
    except (InvalidArgumentError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataFormatError, FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (SingularityError, NumericOverflowError, UndefinedRatioError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
