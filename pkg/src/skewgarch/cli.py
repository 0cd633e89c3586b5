"""
Command-line interface.

    skewgarch fit      --config run.json
    skewgarch compare  --config run.json
    skewgarch simulate --config run.json
    skewgarch convert  --config run.json

The configuration is a single JSON document; command-line flags override
its values.  Logs go to standard error, results only to files.
"""

from __future__ import annotations

import argparse
import copy
import json
import logging
import os
import sys
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .data import (
    DataError,
    bundled_dataset_path,
    compute_excess_returns,
    load_excess_returns,
    load_series,
    save_excess_returns,
)
from .distributions import MODEL_IDS, SkewMechanism, mechanism_from_model_id
from .garch import GarchParams, simulate
from .inference import (
    PosteriorChain,
    PriorSpec,
    SamplerConfig,
    risk_premium_summary,
    rwm_sample,
)
from .model_selection import (
    EstimatorError,
    ModelEvidence,
    comparison_report,
    estimate_log_marginal,
    write_report,
)

__all__ = ["RunConfig", "ConfigError", "main", "cmd_fit", "cmd_compare", "cmd_simulate", "cmd_convert"]

log = logging.getLogger("skewgarch")

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CONFIG = 2

DEFAULTS: dict[str, Any] = {
    "data": None,
    "riskfree": None,
    "day_count": "act365",
    "models": ["M0"],
    "prior": {},
    "init_policy": "sample_variance",
    "sampler": {
        "iterations": 100_000,
        "burn_in": 20_000,
        "seed": 0,
        "chains": 1,
        "thin": 1,
        "init": "mode",
    },
    "evidence": {"method": "bridge", "seed": 0, "n_proposal": None, "file": None},
    "simulate": None,
    "convert": {"output": "excess_returns.csv"},
    "output_dir": "skewgarch-output",
}


class ConfigError(ValueError):
    """Invalid run configuration."""


def _merge(base: dict[str, Any], override: Mapping[str, Any]) -> dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


@dataclass
class RunConfig:
    """Fully resolved run configuration (defaults, file, then flags)."""

    raw: dict[str, Any] = field(default_factory=lambda: copy.deepcopy(DEFAULTS))

    @classmethod
    def load(cls, path: str | None, overrides: Mapping[str, Any] | None = None) -> RunConfig:
        raw = copy.deepcopy(DEFAULTS)
        if path is not None:
            if not os.path.isfile(path):
                raise ConfigError(f"config file not found: {path}")
            with open(path) as fh:
                try:
                    raw = _merge(raw, json.load(fh))
                except json.JSONDecodeError as exc:
                    raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        raw = _merge(raw, overrides or {})
        config = cls(raw)
        config.validate()
        return config

    def __getitem__(self, key: str) -> Any:
        return self.raw[key]

    @property
    def output_dir(self) -> str:
        return str(self.raw["output_dir"])

    @property
    def model_ids(self) -> list[str]:
        return [mechanism_from_model_id(m).model_id for m in self.raw["models"]]

    def sampler_config(self, model_id: str, chain: int) -> SamplerConfig:
        s = self.raw["sampler"]
        seq = np.random.SeedSequence([int(s["seed"]), int(model_id[1:]), chain])
        return SamplerConfig(
            iterations=int(s["iterations"]),
            burn_in=int(s["burn_in"]),
            seed=int(seq.generate_state(1)[0]),
            thin=int(s.get("thin", 1)),
            init=s.get("init", "mode"),
        )

    def prior(self) -> PriorSpec:
        return PriorSpec.from_dict(self.raw["prior"])

    def validate(self) -> None:
        raw = self.raw
        models = raw["models"]
        if isinstance(models, str):
            models = [m for m in models.split(",") if m.strip()]
            raw["models"] = models
        if not models:
            raise ConfigError("the model list is empty")
        for m in models:
            try:
                mechanism_from_model_id(m)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        s = raw["sampler"]
        if s.get("seed") is None:
            raise ConfigError("sampler.seed must be given explicitly")
        if not int(s["iterations"]) > int(s["burn_in"]) >= 0:
            raise ConfigError("sampler needs iterations > burn_in >= 0")
        if int(s.get("chains", 1)) < 1:
            raise ConfigError("sampler.chains must be >= 1")
        if str(raw["day_count"]).lower() not in ("act360", "act365", "none"):
            raise ConfigError(f"unsupported day count {raw['day_count']!r}")
        try:
            self.prior()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"prior: {exc}") from None
        if raw["evidence"]["method"] not in ("bridge", "importance"):
            raise ConfigError(f"unknown evidence method {raw['evidence']['method']!r}")
        for key in ("data", "riskfree"):
            entry = raw.get(key)
            if entry and str(entry.get("path", "")).startswith("bundled:"):
                try:
                    entry["path"] = bundled_dataset_path(entry["path"].split(":", 1)[1])
                except DataError as exc:
                    raise ConfigError(str(exc)) from None
            if entry and entry.get("path") and not os.path.isfile(entry["path"]):
                raise ConfigError(f"{key} file not found: {entry['path']}")
        ev_file = raw["evidence"].get("file")
        if ev_file and not os.path.isfile(ev_file):
            raise ConfigError(f"evidence file not found: {ev_file}")


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _dump_json(obj: Any, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def _load_returns(config: RunConfig):
    data = config["data"]
    if not data or not data.get("path"):
        raise ConfigError("no data.path configured")
    kind = data.get("kind", "excess")
    if kind == "excess":
        return load_excess_returns(
            data["path"],
            date_column=data.get("date_column", "date"),
            value_column=data.get("value_column", "excess_return"),
        )
    if kind == "price":
        prices = load_series(
            data["path"], kind="price",
            date_column=data.get("date_column", "date"),
            value_column=data.get("value_column", "value"),
        )
        riskfree = None
        rf = config["riskfree"]
        if rf:
            riskfree = load_series(
                rf["path"], kind="riskfree",
                date_column=rf.get("date_column", "date"),
                value_column=rf.get("value_column", "value"),
                day_count=config["day_count"],
            )
        return compute_excess_returns(prices, riskfree, config["day_count"])
    raise ConfigError(f"data.kind must be 'excess' or 'price', got {kind!r}")


def _chain_path(out: str, model_id: str) -> str:
    return os.path.join(out, f"chain_{model_id}.csv")


def _summary_path(out: str, model_id: str) -> str:
    return os.path.join(out, f"summary_{model_id}.json")


def _concat_chains(chains: Sequence[PosteriorChain]) -> PosteriorChain:
    first = chains[0]
    if len(chains) == 1:
        return first
    return PosteriorChain(
        kind=first.kind,
        names=first.names,
        draws=np.vstack([c.draws for c in chains]),
        log_posterior=np.concatenate([c.log_posterior for c in chains]),
        acceptance_rate=float(np.mean([c.acceptance_rate for c in chains])),
        seed=first.seed,
        burn_in=first.burn_in,
        thinning=first.thinning,
        iterations=first.iterations,
        unconstrained=(
            None if any(c.unconstrained is None for c in chains)
            else np.vstack([c.unconstrained for c in chains])
        ),
    )


def _fit_model(config: RunConfig, y, model_id: str) -> tuple[PosteriorChain, dict[str, Any]]:
    kind = mechanism_from_model_id(model_id)
    prior = config.prior()
    n_chains = int(config["sampler"].get("chains", 1))
    chains = []
    records = []
    for c in range(n_chains):
        sc = config.sampler_config(model_id, c)
        log.info("fitting %s (%s), chain %d, seed %d", model_id, kind.value, c, sc.seed)
        chain = rwm_sample(y, kind, prior, sc, init_policy=config["init_policy"])
        chains.append(chain)
        records.append({"seed": sc.seed, "acceptance_rate": chain.acceptance_rate})
    chain = _concat_chains(chains)
    summary = chain.summary()
    summary["chains"] = records
    summary["risk_premium"] = risk_premium_summary(chain).to_dict()
    summary["config"] = config.raw
    return chain, summary


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_fit(config: RunConfig) -> int:
    """Fit every configured model; write ``chain_<id>.csv`` and ``summary_<id>.json``."""
    try:
        y = _load_returns(config)
    except (ConfigError, DataError) as exc:
        log.error("data stage failed: %s", exc)
        return EXIT_CONFIG
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    failed = []
    for model_id in config.model_ids:
        try:
            chain, summary = _fit_model(config, y, model_id)
        except (ValueError, FloatingPointError, RuntimeError) as exc:
            log.error("fit stage failed for %s: %s", model_id, exc)
            failed.append(model_id)
            continue
        chain.to_csv(_chain_path(out, model_id))
        _dump_json(summary, _summary_path(out, model_id))
        log.info(
            "%s done: acceptance %.3f, P(alpha+E(z)>0) = %.4f",
            model_id, chain.acceptance_rate, summary["risk_premium"]["prob_positive"],
        )
    if failed:
        log.error("models failed: %s", ", ".join(failed))
        return EXIT_PARTIAL
    return EXIT_OK


def _read_evidence_file(path: str) -> dict[str, ModelEvidence]:
    with open(path) as fh:
        payload = json.load(fh)
    if isinstance(payload, Mapping):
        payload = payload.get("evidence", payload)
    out = {}
    if isinstance(payload, Mapping):
        items = [{"model_id": k, "log10_marginal": v} for k, v in payload.items()]
    else:
        items = list(payload)
    for item in items:
        mid = mechanism_from_model_id(item["model_id"]).model_id
        out[mid] = ModelEvidence(
            model_id=mid,
            log10_marginal=float(item["log10_marginal"]),
            estimator=str(item.get("estimator", "file")),
            mc_se=float(item.get("mc_se", 0.0)),
        )
    return out


def cmd_compare(config: RunConfig) -> int:
    """
    Estimate evidence for every configured model (reusing fit artifacts in
    the output directory when present) and write ``comparison.csv`` and
    ``comparison.json``.
    """
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    ev_cfg = config["evidence"]
    evidence: list[ModelEvidence] = []
    prob_positive: dict[str, float] = {}
    failed: list[str] = []

    if ev_cfg.get("file"):
        injected = _read_evidence_file(ev_cfg["file"])
        for model_id in config.model_ids:
            if model_id not in injected:
                log.error("evidence file has no entry for %s", model_id)
                failed.append(model_id)
                continue
            evidence.append(injected[model_id])
            spath = _summary_path(out, model_id)
            if os.path.isfile(spath):
                with open(spath) as fh:
                    prob_positive[model_id] = json.load(fh)["risk_premium"]["prob_positive"]
    else:
        try:
            y = _load_returns(config)
        except (ConfigError, DataError) as exc:
            log.error("data stage failed: %s", exc)
            return EXIT_CONFIG
        prior = config.prior()
        for model_id in config.model_ids:
            kind = mechanism_from_model_id(model_id)
            try:
                cpath, spath = _chain_path(out, model_id), _summary_path(out, model_id)
                if os.path.isfile(cpath) and os.path.isfile(spath):
                    with open(spath) as fh:
                        summary = json.load(fh)
                    chain = PosteriorChain.from_csv(cpath, kind, **summary)
                    log.info("reusing chain for %s from %s", model_id, cpath)
                else:
                    chain, summary = _fit_model(config, y, model_id)
                    chain.to_csv(cpath)
                    _dump_json(summary, spath)
                seq = np.random.SeedSequence([int(ev_cfg.get("seed", 0)), int(model_id[1:])])
                ev = estimate_log_marginal(
                    y, kind, prior, chain, ev_cfg["method"],
                    seed=int(seq.generate_state(1)[0]),
                    n_proposal=ev_cfg.get("n_proposal"),
                    init_policy=config["init_policy"],
                )
            except (EstimatorError, ValueError, FloatingPointError, RuntimeError) as exc:
                log.error("evidence stage failed for %s: %s", model_id, exc)
                failed.append(model_id)
                continue
            log.info("%s: log10 p(y|M) = %.3f (se %.3f)", model_id, ev.log10_marginal, ev.mc_se)
            evidence.append(ev)
            prob_positive[model_id] = summary["risk_premium"]["prob_positive"]

    if not evidence:
        log.error("no model produced evidence")
        return EXIT_PARTIAL
    report = comparison_report(evidence, prob_positive)
    write_report(report, out, {"config": config.raw, "failed": failed})
    if failed:
        log.error("models failed: %s", ", ".join(failed))
        return EXIT_PARTIAL
    return EXIT_OK


def _simulation_inputs(config: RunConfig) -> tuple[GarchParams, SkewMechanism, dict[str, Any]]:
    sim = config["simulate"]
    if not sim:
        raise ConfigError("no 'simulate' section configured")
    try:
        params = GarchParams(**sim["params"], stationary=bool(sim.get("stationary", False)))
        mech = SkewMechanism.from_dict(sim.get("mechanism") or {"kind": "symmetric"})
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"simulate: {exc}") from None
    if sim.get("seed") is None:
        raise ConfigError("simulate.seed must be given explicitly")
    return params, mech, sim


def cmd_simulate(config: RunConfig) -> int:
    """Write a simulated excess-return CSV (``simulate.output``, default ``simulated.csv``)."""
    try:
        params, mech, sim = _simulation_inputs(config)
    except ConfigError as exc:
        log.error("validation failed: %s", exc)
        return EXIT_CONFIG
    init = sim.get("init", "unconditional")
    series = simulate(params, mech, int(sim.get("n", 1000)), int(sim["seed"]), init)
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, sim.get("output", "simulated.csv"))
    save_excess_returns(series, path)
    _dump_json({"config": config.raw, "series": series.meta}, path + ".json")
    log.info("wrote %d simulated returns to %s", len(series), path)
    return EXIT_OK


def cmd_convert(config: RunConfig) -> int:
    """Turn a price CSV (and optional risk-free CSV) into an excess-return CSV."""
    try:
        data = dict(config["data"] or {})
        data.setdefault("kind", "price")
        if data["kind"] != "price":
            raise ConfigError("convert needs data.kind = 'price'")
        config.raw["data"] = data
        series = _load_returns(config)
    except (ConfigError, DataError) as exc:
        log.error("convert failed: %s", exc)
        return EXIT_CONFIG
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, config["convert"].get("output", "excess_returns.csv"))
    save_excess_returns(series, path)
    log.info("wrote %d excess returns to %s", len(series), path)
    return EXIT_OK


COMMANDS = {"fit": cmd_fit, "compare": cmd_compare, "simulate": cmd_simulate, "convert": cmd_convert}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewgarch",
        description="Bayesian skewed GARCH(1,1)-in-Mean estimation and model comparison.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in COMMANDS.items():
        p = sub.add_parser(name, help=(func.__doc__ or "").strip().splitlines()[0])
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--seed", type=int, help="override sampler (and simulation) seed")
        p.add_argument("--models", help="comma-separated model ids, e.g. M0,M2,M4")
        p.add_argument("--output-dir", help="directory for all artifacts")
        p.add_argument("--data", help="input CSV (excess returns, or prices for convert)")
        p.add_argument("--riskfree", help="risk-free rate CSV, or 'none'")
        p.add_argument("--day-count", choices=["act360", "act365"], help="risk-free day count")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    ov: dict[str, Any] = {}
    if args.seed is not None:
        ov["sampler"] = {"seed": args.seed}
        ov["simulate_seed"] = args.seed
    if args.models:
        ov["models"] = [m.strip() for m in args.models.split(",") if m.strip()]
    if args.output_dir:
        ov["output_dir"] = args.output_dir
    if args.data:
        ov["data"] = {"path": args.data}
        if args.command == "convert":
            ov["data"]["kind"] = "price"
    if args.riskfree:
        ov["riskfree"] = None if args.riskfree.lower() == "none" else {"path": args.riskfree}
    if args.day_count:
        ov["day_count"] = args.day_count
    return ov


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    ov = _overrides(args)
    sim_seed = ov.pop("simulate_seed", None)
    try:
        config = RunConfig.load(args.config, ov)
        if sim_seed is not None and config["simulate"]:
            config.raw["simulate"]["seed"] = sim_seed
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    code = COMMANDS[args.command](config)
    if code == EXIT_CONFIG:
        print("error: see messages above", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
