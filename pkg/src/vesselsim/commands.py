"""Subcommand implementations: run the experiments, assemble reports.

Every command produces a JSON-ready report dict with the same six top-level
keys (``scenario``, ``estimates``, ``bell``, ``factorization``, ``version``,
``seed``; unused sections are null) plus command-specific sections, and an
optional per-run dump for CSV output.  Reports contain nothing but
seed-derived values, so identical scenarios yield byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .bell import (
    ALGEBRAIC_BOUND,
    LOCAL_BOUND,
    TSIRELSON_BOUND,
    BellStatistic,
    ExpectationEstimate,
    bell_statistic,
    estimate_expectation,
)
from .errors import ConfigError
from .locality import CorrelationKind, scan_hidden_variables
from .quantum import (
    born_samples,
    is_entangled,
    schmidt_rank,
    singlet_analytic_estimates,
    singlet_estimate,
)
from .scenario import Scenario
from .streams import BORN_STREAM, LOCALITY_STREAM, substream
from .vessels import (
    ALL_PAIRS,
    PAIR_AB,
    PAIR_AB_PRIME,
    PAIR_APRIME_B,
    PAIR_APRIME_BPRIME,
    SiphonDiameters,
    joint_outcome_ab,
    simulate_flow,
)


@dataclass
class RunDump:
    """Per-run rows for CSV output, with a fixed column order."""

    fieldnames: list[str]
    rows: list[dict] = field(default_factory=list)


def _base_report(scenario: Scenario) -> dict:
    return {
        "scenario": scenario.echo(),
        "estimates": None,
        "bell": None,
        "factorization": None,
        "version": __version__,
        "seed": scenario.seed,
    }


def _estimate_record(estimate: ExpectationEstimate) -> dict:
    return {
        "pair": estimate.pair.label,
        "mean": estimate.mean,
        "stderr": estimate.stderr,
        "n": estimate.n,
    }


def _bell_record(statistic: BellStatistic) -> dict:
    return {
        "value": statistic.value,
        "classification": statistic.classification.value,
        # Standard-theory reference bounds, not properties of this model.
        "bounds": {
            "local": LOCAL_BOUND,
            "tsirelson": TSIRELSON_BOUND,
            "algebraic": ALGEBRAIC_BOUND,
        },
    }


def vessel_chsh(
    scenario: Scenario, workers: int = 1, collect_runs: bool = False
) -> tuple[dict, RunDump]:
    """Estimate all four coincidence pairs and combine them."""
    estimates: dict = {}
    dump = RunDump(
        [
            "pair",
            "run_index",
            "lambda_a",
            "lambda_b",
            "outcome_left",
            "outcome_right",
            "product",
        ]
    )
    for pair in ALL_PAIRS:
        result = estimate_expectation(
            pair,
            scenario.sampler,
            scenario.system,
            scenario.runs_per_pair,
            scenario.tie_policy,
            workers=workers,
            collect=collect_runs,
        )
        if collect_runs:
            estimates[pair], columns = result
            for index in range(scenario.runs_per_pair):
                left = int(columns["outcome_left"][index])
                right = int(columns["outcome_right"][index])
                dump.rows.append(
                    {
                        "pair": pair.label,
                        "run_index": index,
                        "lambda_a": float(columns["lambda_a"][index]),
                        "lambda_b": float(columns["lambda_b"][index]),
                        "outcome_left": left,
                        "outcome_right": right,
                        "product": left * right,
                    }
                )
        else:
            estimates[pair] = result
    statistic = bell_statistic(
        estimates[PAIR_APRIME_BPRIME],
        estimates[PAIR_APRIME_B],
        estimates[PAIR_AB_PRIME],
        estimates[PAIR_AB],
    )
    report = _base_report(scenario)
    report["estimates"] = [_estimate_record(estimates[pair]) for pair in ALL_PAIRS]
    report["bell"] = _bell_record(statistic)
    return report, dump


def locality_check(scenario: Scenario, collect_runs: bool = False) -> tuple[dict, RunDump]:
    """Factorization search and context witnesses over sampled hidden variables."""
    samples = scenario.sampler.draw(scenario.runs_per_pair, key=(LOCALITY_STREAM, 0))
    scan = scan_hidden_variables(
        samples, scenario.system, scenario.tie_policy, tie_seed=scenario.seed
    )
    unsatisfiable = sum(1 for entry in scan if not entry.factorization.satisfiable)
    witnesses = sum(1 for entry in scan if entry.witness.differs)
    kind = (
        CorrelationKind.SECOND_KIND if unsatisfiable else CorrelationKind.FIRST_KIND
    )

    report = _base_report(scenario)
    report["factorization"] = {
        # True only if every sampled hidden variable admits an assignment.
        "satisfiable": unsatisfiable == 0,
        "witness_count": witnesses,
        "sample_count": len(scan),
        "unsatisfiable_count": unsatisfiable,
    }
    report["correlation_kind"] = kind.value

    dump = RunDump(
        [
            "sample_index",
            "lambda_a",
            "lambda_b",
            "product_ab",
            "product_aprime_b",
            "product_ab_prime",
            "product_aprime_bprime",
            "satisfiable",
            "witness_with_b",
            "witness_with_bprime",
            "witness_differs",
        ]
    )
    if collect_runs:
        for index, entry in enumerate(scan):
            dump.rows.append(
                {
                    "sample_index": index,
                    "lambda_a": entry.lam.lambda_a,
                    "lambda_b": entry.lam.lambda_b,
                    "product_ab": entry.table.product_ab,
                    "product_aprime_b": entry.table.product_aprime_b,
                    "product_ab_prime": entry.table.product_ab_prime,
                    "product_aprime_bprime": entry.table.product_aprime_bprime,
                    "satisfiable": entry.factorization.satisfiable,
                    "witness_with_b": entry.witness.outcome_with_b,
                    "witness_with_bprime": entry.witness.outcome_with_bprime,
                    "witness_differs": entry.witness.differs,
                }
            )
    return report, dump


def sample_state(scenario: Scenario, collect_runs: bool = False) -> tuple[dict, RunDump]:
    """Born-sample the superposition state and report the histogram and rank."""
    if scenario.amplitudes is None:
        raise ConfigError("sample-state requires 'amplitudes' in the scenario")
    state = scenario.state()
    n = scenario.runs_per_pair
    draws = born_samples(state, n, substream(scenario.seed, BORN_STREAM, 0))
    histogram = np.bincount(draws, minlength=len(state.amplitudes)).tolist()

    report = _base_report(scenario)
    report["histogram"] = histogram
    report["n_samples"] = n
    report["probabilities"] = state.probabilities().tolist()
    report["schmidt_rank"] = schmidt_rank(state)
    report["entangled"] = is_entangled(state)

    dump = RunDump(["sample_index", "x", "left_liters", "right_liters"])
    if collect_runs:
        for index, x in enumerate(draws.tolist()):
            dump.rows.append(
                {
                    "sample_index": index,
                    "x": x,
                    "left_liters": x,
                    "right_liters": 10 - x,
                }
            )
    return report, dump


def quantum_chsh(
    scenario: Scenario,
    analytic: bool = False,
    workers: int = 1,
    collect_runs: bool = False,
) -> tuple[dict, RunDump]:
    """Singlet statistic at the scenario's analyzer angles."""
    if scenario.singlet_angles is None:
        raise ConfigError("quantum-chsh requires 'singlet_angles' in the scenario")
    angles = scenario.singlet_angles

    if analytic:
        estimates = {est.pair: est for est in singlet_analytic_estimates(angles)}
        dump = RunDump(["pair", "expectation"])
        if collect_runs:
            dump.rows = [
                {"pair": pair.label, "expectation": estimates[pair].mean}
                for pair in ALL_PAIRS
            ]
    else:
        estimates = {}
        dump = RunDump(["pair", "run_index", "outcome_left", "outcome_right", "product"])
        for pair in ALL_PAIRS:
            result = singlet_estimate(
                pair,
                angles,
                scenario.seed,
                scenario.runs_per_pair,
                workers=workers,
                collect=collect_runs,
            )
            if collect_runs:
                estimates[pair], columns = result
                for index in range(scenario.runs_per_pair):
                    left = int(columns["outcome_left"][index])
                    right = int(columns["outcome_right"][index])
                    dump.rows.append(
                        {
                            "pair": pair.label,
                            "run_index": index,
                            "outcome_left": left,
                            "outcome_right": right,
                            "product": left * right,
                        }
                    )
            else:
                estimates[pair] = result

    statistic = bell_statistic(
        estimates[PAIR_APRIME_BPRIME],
        estimates[PAIR_APRIME_B],
        estimates[PAIR_AB_PRIME],
        estimates[PAIR_AB],
    )
    report = _base_report(scenario)
    report["estimates"] = [_estimate_record(estimates[pair]) for pair in ALL_PAIRS]
    report["bell"] = _bell_record(statistic)
    report["mode"] = "analytic" if analytic else "monte_carlo"
    report["angles"] = list(angles)
    return report, dump


def flow(
    scenario: Scenario,
    lambda_a: float,
    lambda_b: float,
    dt: float,
    collect_runs: bool = False,
) -> tuple[dict, RunDump]:
    """Integrate one joint drainage and report the collected volumes."""
    try:
        lam = SiphonDiameters(lambda_a, lambda_b)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    split = simulate_flow(lam, scenario.system, dt)
    outcome_left, outcome_right = joint_outcome_ab(
        lam, scenario.tie_policy, tie_seed=scenario.seed
    )

    report = _base_report(scenario)
    report["flow"] = {
        "lambda_a": lam.lambda_a,
        "lambda_b": lam.lambda_b,
        "dt": dt,
        "x_left": split.x_left,
        "x_right": split.x_right,
        "outcome_left": outcome_left,
        "outcome_right": outcome_right,
    }

    dump = RunDump(
        ["lambda_a", "lambda_b", "dt", "x_left", "x_right", "outcome_left", "outcome_right"]
    )
    if collect_runs:
        dump.rows.append(dict(report["flow"]))
    return report, dump
