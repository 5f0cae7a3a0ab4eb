"""Monte Carlo estimation of the four coincidence expectations and the
Bell statistic built from them.

The statistic is the combination ``E(A'B') + E(A'B) + E(AB') - E(AB)``.
Context-free models keep its magnitude at or below 2, quantum correlations
reach 2*sqrt(2), and the algebraic ceiling is 4.  The vessel model attains
the ceiling: the joint siphon run anti-correlates perfectly while the three
other pairs agree perfectly, for every tie-free hidden variable.

Relation to the standard CHSH form ``E(ab) - E(ab') + E(a'b) + E(a'b')``:
identify (A, A', B, B') with (a, a', b', b) and the two expressions coincide
term by term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySampleSetError, MismatchedPairsError
from .streams import run_chunks, substream
from .vessels import (
    ALL_PAIRS,
    PAIR_AB,
    PAIR_AB_PRIME,
    PAIR_APRIME_B,
    PAIR_APRIME_BPRIME,
    CoincidencePair,
    ExperimentKind,
    SiphonDiameters,
    TiePolicy,
    VesselSystem,
    _resolve_tie,
    spoon_outcome,
)

LOCAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
ALGEBRAIC_BOUND = 4.0

# Classification compares |value| against the bounds with this slack; exact
# boundary values land in the lower region.
BOUND_TOL = 1e-12

PAIR_STREAM = {pair: index for index, pair in enumerate(ALL_PAIRS)}


class BellClassification(enum.Enum):
    LOCAL = "Local"
    QUANTUM_ATTAINABLE = "QuantumAttainable"
    SUPER_QUANTUM = "SuperQuantum"


@dataclass(frozen=True)
class HiddenVariableSampler:
    """Independent uniform diameters on [low, high] cm, seeded.

    The vessel outcomes are the same for every continuous diameter
    distribution (the winner rule only reads the order of the two
    diameters), so a documented uniform default stands in for the
    unspecified measure over the hidden-variable space.
    """

    low: float = 0.5
    high: float = 3.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0.0 < self.low < self.high):
            raise ValueError(
                f"need 0 < low < high for positive diameters, got [{self.low}, {self.high}]"
            )
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    def draw_arrays(self, n: int, key: tuple[int, ...] = ()) -> tuple[np.ndarray, np.ndarray]:
        """Draw ``n`` diameter pairs as two arrays on the keyed substream."""
        rng = substream(self.seed, *key)
        lambda_a = rng.uniform(self.low, self.high, size=n)
        lambda_b = rng.uniform(self.low, self.high, size=n)
        return lambda_a, lambda_b

    def draw(self, n: int, key: tuple[int, ...] = ()) -> list[SiphonDiameters]:
        lambda_a, lambda_b = self.draw_arrays(n, key)
        return [
            SiphonDiameters(a, b)
            for a, b in zip(lambda_a.tolist(), lambda_b.tolist())
        ]


@dataclass(frozen=True)
class ExpectationEstimate:
    """Monte Carlo estimate of one pair's expected outcome product."""

    pair: CoincidencePair
    mean: float
    stderr: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"an estimate needs at least one run, got n={self.n}")
        if abs(self.mean) > 1.0:
            raise ValueError(f"mean outcome product out of [-1, 1]: {self.mean}")
        if self.stderr < 0.0:
            raise ValueError(f"stderr cannot be negative: {self.stderr}")


@dataclass(frozen=True)
class BellStatistic:
    """The four estimates combined, with the standard-bound classification.

    Components are stored in canonical pair order (AB, A'B, AB', A'B').
    """

    value: float
    components: tuple[ExpectationEstimate, ...]
    classification: BellClassification

    def __post_init__(self) -> None:
        if tuple(estimate.pair for estimate in self.components) != ALL_PAIRS:
            raise ValueError("components must be the four pairs in canonical order")
        ab, aprime_b, ab_prime, aprime_bprime = self.components
        recomputed = aprime_bprime.mean + aprime_b.mean + ab_prime.mean - ab.mean
        if self.value != recomputed:
            raise ValueError(
                f"value {self.value} does not match its components ({recomputed})"
            )
        if abs(self.value) > ALGEBRAIC_BOUND + BOUND_TOL:
            raise ValueError(f"|value| exceeds the algebraic ceiling 4: {self.value}")


def pair_products(
    pair: CoincidencePair,
    lambda_a: np.ndarray,
    lambda_b: np.ndarray,
    system: VesselSystem,
    tie_policy: TiePolicy = TiePolicy.ERROR,
    tie_seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-run outcomes for a batch of diameter draws, as two int arrays.

    Vectorized but pointwise identical to run_coincidence over the same
    draws; the product array is outcome_left * outcome_right.
    """
    n = len(lambda_a)
    spoon = spoon_outcome(system)
    if pair == PAIR_AB:
        outcome_left = np.where(lambda_b < lambda_a, 1, -1).astype(np.int64)
        ties = np.nonzero(lambda_a == lambda_b)[0]
        for index in ties:
            left, _ = _resolve_tie(
                SiphonDiameters(lambda_a[index], lambda_b[index]), tie_policy, tie_seed
            )
            outcome_left[index] = left
        outcome_right = -outcome_left
    else:
        left_value = spoon if pair.left is ExperimentKind.APRIME else 1
        right_value = spoon if pair.right is ExperimentKind.BPRIME else 1
        outcome_left = np.full(n, left_value, dtype=np.int64)
        outcome_right = np.full(n, right_value, dtype=np.int64)
    return outcome_left, outcome_right


def mean_and_stderr(product_sum: int, n: int) -> tuple[float, float]:
    """Mean and standard error of ``n`` outcome products summing to ``product_sum``.

    Products are always +1 or -1, so their squares sum to exactly ``n`` and
    the sample standard deviation reduces to a function of the mean.
    """
    mean = product_sum / n
    if n == 1:
        return mean, 0.0
    variance = max(0.0, n * (1.0 - mean * mean) / (n - 1))
    return mean, math.sqrt(variance / n)


def estimate_expectation(
    pair: CoincidencePair,
    sampler: HiddenVariableSampler,
    system: VesselSystem,
    n: int,
    tie_policy: TiePolicy = TiePolicy.ERROR,
    workers: int = 1,
    collect: bool = False,
) -> ExpectationEstimate | tuple[ExpectationEstimate, dict[str, np.ndarray]]:
    """Estimate one pair's expectation from ``n`` seeded hidden-variable draws.

    Each fixed-size chunk draws from its own (pair, chunk) substream and the
    partial sums merge in chunk order, so the estimate depends only on
    (sampler, n, system), never on the worker count.  With ``collect=True``
    the per-run draws and outcomes come back too (for per-run dumps).
    """
    if n < 1:
        raise EmptySampleSetError(f"estimation needs n >= 1, got {n}")
    stream_index = PAIR_STREAM[pair]

    def one_chunk(chunk_index: int, size: int):
        lambda_a, lambda_b = sampler.draw_arrays(size, key=(stream_index, chunk_index))
        outcome_left, outcome_right = pair_products(
            pair, lambda_a, lambda_b, system, tie_policy, tie_seed=sampler.seed
        )
        products = outcome_left * outcome_right
        payload = None
        if collect:
            payload = {
                "lambda_a": lambda_a,
                "lambda_b": lambda_b,
                "outcome_left": outcome_left,
                "outcome_right": outcome_right,
            }
        return int(products.sum()), payload

    results = run_chunks(one_chunk, n, workers=workers)
    product_sum = sum(total for total, _ in results)
    mean, stderr = mean_and_stderr(product_sum, n)
    estimate = ExpectationEstimate(pair=pair, mean=mean, stderr=stderr, n=n)
    if not collect:
        return estimate
    columns = {
        name: np.concatenate([payload[name] for _, payload in results])
        for name in ("lambda_a", "lambda_b", "outcome_left", "outcome_right")
    }
    return estimate, columns


def classify_value(value: float) -> BellClassification:
    magnitude = abs(value)
    if magnitude <= LOCAL_BOUND + BOUND_TOL:
        return BellClassification.LOCAL
    if magnitude <= TSIRELSON_BOUND + BOUND_TOL:
        return BellClassification.QUANTUM_ATTAINABLE
    return BellClassification.SUPER_QUANTUM


def bell_statistic(
    e_aprime_bprime: ExpectationEstimate,
    e_aprime_b: ExpectationEstimate,
    e_ab_prime: ExpectationEstimate,
    e_ab: ExpectationEstimate,
) -> BellStatistic:
    """Combine the four estimates into the Bell statistic.

    The estimates are matched to their terms by their pair field; they must
    cover all four coincidence pairs.
    """
    by_pair = {
        estimate.pair: estimate
        for estimate in (e_aprime_bprime, e_aprime_b, e_ab_prime, e_ab)
    }
    if set(by_pair) != set(ALL_PAIRS):
        got = sorted(pair.label for pair in by_pair)
        raise MismatchedPairsError(
            f"estimates must cover the four coincidence pairs, got {got}"
        )
    value = (
        by_pair[PAIR_APRIME_BPRIME].mean
        + by_pair[PAIR_APRIME_B].mean
        + by_pair[PAIR_AB_PRIME].mean
        - by_pair[PAIR_AB].mean
    )
    components = tuple(by_pair[pair] for pair in ALL_PAIRS)
    return BellStatistic(
        value=value, components=components, classification=classify_value(value)
    )


def run_full_experiment(
    sampler: HiddenVariableSampler,
    system: VesselSystem,
    n_per_pair: int,
    tie_policy: TiePolicy = TiePolicy.ERROR,
    workers: int = 1,
) -> BellStatistic:
    """Estimate all four pairs on independent substreams and combine them."""
    estimates = {
        pair: estimate_expectation(
            pair, sampler, system, n_per_pair, tie_policy, workers=workers
        )
        for pair in ALL_PAIRS
    }
    return bell_statistic(
        estimates[PAIR_APRIME_BPRIME],
        estimates[PAIR_APRIME_B],
        estimates[PAIR_AB_PRIME],
        estimates[PAIR_AB],
    )
