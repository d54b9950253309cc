"""Command-line front end.

Subcommands: ``bound``, ``outage``, ``simulate``, ``sweep``, ``plan``.
Exit codes: 0 success, 1 usage error, 2 numeric domain error,
3 planner infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys

from .finite_blocklength import CodeParams
from .montecarlo import Estimator, SimSpec, estimate_per
from .numerics import DomainError, NumericOverflowError
from .optimizer import minimize_bound
from .outage import LinkConfig, OutageModelKind, outage_probability
from .sweep import PlanQuery, PowerMode, SimOverrides, SweepSpec, plan_parameters, preset, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INFEASIBLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_link_code(p, *, bins_required=False):
    p.add_argument("--n", type=int, default=4096, help="blocklength (channel uses)")
    p.add_argument("--rate", type=float, default=0.5, help="code rate R, bits per channel use")
    p.add_argument("--bins", type=int, default=None if bins_required else 4, required=bins_required,
                   help="number of bins L")
    p.add_argument("--snr-db", type=float, default=3.0, help="SNR P/N0 in dB")
    p.add_argument("--sigma-h2", type=float, default=1.0, help="Rayleigh channel power")
    p.add_argument("--power-mode", choices=[m.value for m in PowerMode], default="per-bin",
                   help="'total' treats --snr-db as L*P/N0")


def _add_sim(p, trials_default):
    p.add_argument("--trials", type=int, default=trials_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--estimator", choices=[e.value for e in Estimator], default="analytic")


def _model(p, default="corrected"):
    p.add_argument("--model", choices=[m.value for m in OutageModelKind], default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mrcbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", help="minimized error-rate bound for one configuration")
    _add_link_code(p)
    _model(p)

    p = sub.add_parser("outage", help="outage model value Pr(Z_L < z)")
    p.add_argument("--bins", type=int, required=True)
    p.add_argument("--z", type=float, required=True)
    _model(p, default="exact")

    p = sub.add_parser("simulate", help="Monte Carlo packet error rate")
    _add_link_code(p)
    _add_sim(p, 1_000_000)
    p.add_argument("--vbar", action="store_true", help="decode with the dispersion-free rate bound")

    p = sub.add_parser("sweep", help="parameter sweep to CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=["fig1", "fig2", "fig3", "fig4", "fig5"])
    src.add_argument("--spec", help="JSON sweep specification file")
    _add_sim(p, None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("plan", help="smallest L or SNR meeting a target error rate")
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--free", choices=["min-bins", "min-snr-db"], required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    _add_link_code(p)
    _model(p)
    return parser


def _link(args) -> LinkConfig:
    link = LinkConfig(L=args.bins, sigma_h2=args.sigma_h2, snr_db=args.snr_db)
    if getattr(args, "power_mode", "per-bin") == PowerMode.TOTAL_FIXED.value:
        import math
        link = LinkConfig(L=link.L, sigma_h2=link.sigma_h2, snr_db=link.snr_db - 10 * math.log10(link.L))
    return link


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2)
    print(text, file=out or sys.stdout)


def _sim_overrides(args, base: SimOverrides) -> SimOverrides:
    return SimOverrides(
        trials=args.trials if args.trials is not None else base.trials,
        seed=args.seed if args.seed is not None else base.seed,
        estimator=args.estimator or base.estimator,
        shards=args.shards or base.shards,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bound":
            res = minimize_bound(CodeParams(args.n, args.rate), _link(args), args.model)
            _emit(res.to_dict())
        elif args.command == "outage":
            value = float(outage_probability(args.model, args.bins, args.z))
            _emit({"L": args.bins, "z": args.z, "model": args.model, "probability": value})
        elif args.command == "simulate":
            spec = SimSpec(link=_link(args), code=CodeParams(args.n, args.rate), trials=args.trials,
                           seed=args.seed, estimator=args.estimator, shards=args.shards,
                           use_vbar=args.vbar)
            _emit(estimate_per(spec).to_dict())
        elif args.command == "sweep":
            if args.preset:
                spec = preset(args.preset)
            else:
                with open(args.spec) as fh:
                    spec = SweepSpec.from_dict(json.load(fh))
            spec = SweepSpec(**{**spec.__dict__, "sim": _sim_overrides(args, spec.sim)})
            text = run_sweep(spec, workers=args.workers).to_csv()
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        elif args.command == "plan":
            q = PlanQuery(target_per=args.target, free=args.free, lo=args.lo, hi=args.hi,
                          link=_link(args), code=CodeParams(args.n, args.rate), model=args.model)
            res = plan_parameters(q)
            _emit(res.to_dict())
            if not res.feasible:
                return EXIT_INFEASIBLE
    except (DomainError, NumericOverflowError, ArithmeticError) as exc:
        print(f"mrcbound: numeric error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"mrcbound: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
