"""Superposition over the final water divisions, Born sampling, a Schmidt-rank
entanglement test, and a spin-1/2 singlet reference model.

Before a joint siphon run the connected water is not yet divided; the
possible outcomes, measured in whole liters on the left reference vessel,
form 11 product configurations ``x (x) 10 - x`` for x in 0..10.  The
pre-measurement state assigns each a complex amplitude whose squared modulus
is the probability of reaching it.  Arranged as a coefficient matrix over
the two sides, the amplitudes sit on an anti-diagonal, so the state's
Schmidt rank equals the number of non-negligible amplitudes and any two or
more make it entangled.

The singlet model provides the standard quantum benchmark for the same
four-pair statistic: expectation -(a . b) for unit measurement directions,
a sampling realization with unbiased marginals, and planar-angle helpers.
The two wings of the apparatus face each other, so a right-side analyzer
angle is counted clockwise in the shared frame (mirrored y axis); with that
convention the textbook settings (0, 90, 45, 135) degrees attain the
quantum maximum 2*sqrt(2) of the statistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import (
    ExpectationEstimate,
    PAIR_STREAM,
    BellStatistic,
    bell_statistic,
    mean_and_stderr,
)
from .errors import (
    EmptySampleSetError,
    NotNormalizedError,
    NotUnitError,
    WrongArityError,
)
from .streams import run_chunks, substream
from .vessels import ALL_PAIRS, PAIR_AB, PAIR_AB_PRIME, PAIR_APRIME_B, PAIR_APRIME_BPRIME

N_AMPLITUDES = 11
TOTAL_LITERS = 10
NORM_TOL = 1e-9
UNIT_TOL = 1e-12


def _as_rng(seed_or_rng: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


@dataclass(frozen=True, eq=False)
class VesselSuperpositionState:
    """Complex amplitudes over the 11 final divisions, indexed by left liters."""

    amplitudes: np.ndarray

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class FinalProductState:
    """One collapsed division: x liters left, the complement right."""

    x: int

    def __post_init__(self) -> None:
        if not 0 <= self.x <= TOTAL_LITERS:
            raise ValueError(f"left liters must lie in 0..{TOTAL_LITERS}, got {self.x}")

    @property
    def left_liters(self) -> int:
        return self.x

    @property
    def right_liters(self) -> int:
        return TOTAL_LITERS - self.x


def make_state(amplitudes, normalize: bool = False) -> VesselSuperpositionState:
    """Build a superposition state from 11 complex amplitudes.

    With ``normalize=False`` the squared moduli must already sum to one
    within ``NORM_TOL``; with ``normalize=True`` any nonzero vector is
    rescaled.
    """
    array = np.asarray(amplitudes, dtype=complex)
    if array.shape != (N_AMPLITUDES,):
        raise WrongArityError(
            f"expected {N_AMPLITUDES} amplitudes, got shape {array.shape}"
        )
    total = float(np.sum(np.abs(array) ** 2))
    if normalize:
        if total == 0.0:
            raise NotNormalizedError("cannot normalize the zero amplitude vector")
        array = array / math.sqrt(total)
    elif abs(total - 1.0) > NORM_TOL:
        raise NotNormalizedError(
            f"squared moduli sum to {total!r}, expected 1 within {NORM_TOL}"
        )
    array = array.copy()
    array.setflags(write=False)
    return VesselSuperpositionState(amplitudes=array)


def born_sample(
    state: VesselSuperpositionState, seed_or_rng: int | np.random.Generator
) -> FinalProductState:
    """Collapse the state once: draw x with probability |amplitude(x)|^2."""
    return FinalProductState(int(born_samples(state, 1, seed_or_rng)[0]))


def born_samples(
    state: VesselSuperpositionState,
    n: int,
    seed_or_rng: int | np.random.Generator,
) -> np.ndarray:
    """Draw ``n`` division outcomes; the state itself is never touched."""
    rng = _as_rng(seed_or_rng)
    probabilities = state.probabilities()
    probabilities = probabilities / probabilities.sum()
    return rng.choice(N_AMPLITUDES, size=n, p=probabilities)


def coefficient_matrix(state: VesselSuperpositionState) -> np.ndarray:
    """11 x 11 joint coefficient matrix; entry (x, 10 - x) holds amplitude x."""
    matrix = np.zeros((N_AMPLITUDES, N_AMPLITUDES), dtype=complex)
    left = np.arange(N_AMPLITUDES)
    matrix[left, TOTAL_LITERS - left] = state.amplitudes
    return matrix


def schmidt_rank(state: VesselSuperpositionState, tol: float = NORM_TOL) -> int:
    """Number of singular values of the coefficient matrix above ``tol``.

    For this anti-diagonal matrix the singular values are the amplitude
    moduli, so the rank also counts the amplitudes above ``tol``.
    """
    if tol < 0.0:
        raise ValueError(f"tolerance cannot be negative: {tol}")
    singular_values = np.linalg.svd(coefficient_matrix(state), compute_uv=False)
    return int(np.count_nonzero(singular_values > tol))


def is_entangled(state: VesselSuperpositionState, tol: float = NORM_TOL) -> bool:
    """A state with two or more contributing divisions is entangled."""
    return schmidt_rank(state, tol) >= 2


@dataclass(frozen=True)
class MeasurementDirection:
    """Unit 3-vector along which one side's spin is measured."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > UNIT_TOL:
            raise NotUnitError(f"direction norm is {norm!r}, expected 1 within {UNIT_TOL}")

    def dot(self, other: MeasurementDirection) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z


def left_analyzer_direction(angle_deg: float) -> MeasurementDirection:
    """Left-wing analyzer at ``angle_deg``, counterclockwise in the shared frame."""
    angle = math.radians(angle_deg)
    return MeasurementDirection(math.cos(angle), math.sin(angle), 0.0)


def right_analyzer_direction(angle_deg: float) -> MeasurementDirection:
    """Right-wing analyzer at ``angle_deg`` in its own frame.

    The right wing faces the left one, so its in-plane axis is mirrored in
    the shared frame and the angle counts clockwise there.
    """
    angle = math.radians(angle_deg)
    return MeasurementDirection(math.cos(angle), -math.sin(angle), 0.0)


def singlet_expectation(a: MeasurementDirection, b: MeasurementDirection) -> float:
    """Expected outcome product for the singlet: -(a . b)."""
    return -a.dot(b)


def singlet_sample(
    a: MeasurementDirection,
    b: MeasurementDirection,
    seed_or_rng: int | np.random.Generator,
) -> tuple[int, int]:
    """One joint outcome pair with P(+,+) = P(-,-) = (1 - a.b)/4."""
    left, right = singlet_samples(a, b, 1, seed_or_rng)
    return int(left[0]), int(right[0])


def singlet_samples(
    a: MeasurementDirection,
    b: MeasurementDirection,
    n: int,
    seed_or_rng: int | np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` joint outcomes; each marginal is a fair +1/-1 coin."""
    rng = _as_rng(seed_or_rng)
    dot = a.dot(b)
    left = rng.integers(0, 2, size=n) * 2 - 1
    same = rng.random(n) < (1.0 - dot) / 2.0
    right = np.where(same, left, -left)
    return left, right


def _pair_directions(
    angles_deg: tuple[float, float, float, float],
) -> dict:
    """Map each coincidence pair to its (left, right) analyzer directions.

    ``angles_deg`` lists the analyzer angles for A, A', B, B' in degrees;
    the left two use the shared frame, the right two their own mirrored
    frame.
    """
    angle_a, angle_aprime, angle_b, angle_bprime = angles_deg
    a = left_analyzer_direction(angle_a)
    aprime = left_analyzer_direction(angle_aprime)
    b = right_analyzer_direction(angle_b)
    bprime = right_analyzer_direction(angle_bprime)
    return {
        PAIR_AB: (a, b),
        PAIR_APRIME_B: (aprime, b),
        PAIR_AB_PRIME: (a, bprime),
        PAIR_APRIME_BPRIME: (aprime, bprime),
    }


def singlet_bell_value(angles_deg: tuple[float, float, float, float]) -> float:
    """Analytic Bell statistic of the singlet at four planar analyzer angles."""
    directions = _pair_directions(angles_deg)
    expectation = {
        pair: singlet_expectation(left, right)
        for pair, (left, right) in directions.items()
    }
    return (
        expectation[PAIR_APRIME_BPRIME]
        + expectation[PAIR_APRIME_B]
        + expectation[PAIR_AB_PRIME]
        - expectation[PAIR_AB]
    )


def singlet_analytic_estimates(
    angles_deg: tuple[float, float, float, float],
) -> list[ExpectationEstimate]:
    """Exact per-pair expectations packaged as zero-spread estimates."""
    directions = _pair_directions(angles_deg)
    return [
        ExpectationEstimate(
            pair=pair,
            mean=singlet_expectation(*directions[pair]),
            stderr=0.0,
            n=1,
        )
        for pair in ALL_PAIRS
    ]


def singlet_estimate(
    pair,
    angles_deg: tuple[float, float, float, float],
    seed: int,
    n: int,
    workers: int = 1,
    collect: bool = False,
):
    """Monte Carlo estimate of one pair's singlet expectation.

    Chunked on (pair, chunk) substreams exactly like the vessel estimator,
    so results are reproducible and worker-count independent.
    """
    if n < 1:
        raise EmptySampleSetError(f"estimation needs n >= 1, got {n}")
    left_direction, right_direction = _pair_directions(angles_deg)[pair]
    stream_index = PAIR_STREAM[pair]

    def one_chunk(chunk_index: int, size: int):
        rng = substream(seed, stream_index, chunk_index)
        left, right = singlet_samples(left_direction, right_direction, size, rng)
        payload = {"outcome_left": left, "outcome_right": right} if collect else None
        return int((left * right).sum()), payload

    results = run_chunks(one_chunk, n, workers=workers)
    mean, stderr = mean_and_stderr(sum(total for total, _ in results), n)
    estimate = ExpectationEstimate(pair=pair, mean=mean, stderr=stderr, n=n)
    if not collect:
        return estimate
    columns = {
        name: np.concatenate([payload[name] for _, payload in results])
        for name in ("outcome_left", "outcome_right")
    }
    return estimate, columns


def singlet_experiment(
    angles_deg: tuple[float, float, float, float],
    seed: int,
    n_per_pair: int,
    workers: int = 1,
) -> BellStatistic:
    """Monte Carlo singlet statistic at the given analyzer angles."""
    estimates = {
        pair: singlet_estimate(pair, angles_deg, seed, n_per_pair, workers=workers)
        for pair in ALL_PAIRS
    }
    return bell_statistic(
        estimates[PAIR_APRIME_BPRIME],
        estimates[PAIR_APRIME_B],
        estimates[PAIR_AB_PRIME],
        estimates[PAIR_AB],
    )
