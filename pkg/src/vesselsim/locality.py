"""Context-free outcome assignments and where the vessel model breaks them.

A local description would give every single-side experiment a value fixed by
the hidden variable alone, with each joint product factorizing as
``product(XY) = e_X * e_Y``.  For a fixed hidden variable that is a finite
question: there are only 16 sign assignments ``(e_A, e_A', e_B, e_B')``, so
an exhaustive search settles whether any of them reproduces the four joint
products.  For the vessel model none does, and the obstruction is visible in
one experiment's outcome flipping with its partner context.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .errors import EmptySampleSetError
from .vessels import (
    PAIR_AB,
    PAIR_AB_PRIME,
    PAIR_APRIME_B,
    PAIR_APRIME_BPRIME,
    SiphonDiameters,
    TiePolicy,
    VesselSystem,
    joint_outcome_ab,
    outcome_solo_siphon,
    run_coincidence,
)

_SIGNS = (1, -1)


@dataclass(frozen=True)
class ContextualOutcomeTable:
    """The four joint products for one fixed hidden variable."""

    product_ab: int
    product_aprime_b: int
    product_ab_prime: int
    product_aprime_bprime: int

    def __post_init__(self) -> None:
        for name, value in self.as_dict().items():
            if value not in _SIGNS:
                raise ValueError(f"{name} must be +1 or -1, got {value}")

    def as_dict(self) -> dict[str, int]:
        return {
            PAIR_AB.label: self.product_ab,
            PAIR_APRIME_B.label: self.product_aprime_b,
            PAIR_AB_PRIME.label: self.product_ab_prime,
            PAIR_APRIME_BPRIME.label: self.product_aprime_bprime,
        }

    def entry_product(self) -> int:
        """Product of the four entries; +1 is necessary for factorizability."""
        return (
            self.product_ab
            * self.product_aprime_b
            * self.product_ab_prime
            * self.product_aprime_bprime
        )


@dataclass(frozen=True)
class SignAssignment:
    """One candidate context-free valuation of the four experiments."""

    e_a: int
    e_aprime: int
    e_b: int
    e_bprime: int

    def reproduces(self, table: ContextualOutcomeTable) -> bool:
        return (
            self.e_a * self.e_b == table.product_ab
            and self.e_aprime * self.e_b == table.product_aprime_b
            and self.e_a * self.e_bprime == table.product_ab_prime
            and self.e_aprime * self.e_bprime == table.product_aprime_bprime
        )


@dataclass(frozen=True)
class Witness:
    """One experiment's outcome in two partner contexts for the same hidden variable."""

    lam: SiphonDiameters
    outcome_with_b: int
    outcome_with_bprime: int
    differs: bool


@dataclass(frozen=True)
class FactorizationReport:
    """Verdict of the exhaustive search over the 16 sign assignments."""

    satisfiable: bool
    assignment: SignAssignment | None = None
    search_exhausted: bool = False
    witnesses: tuple[Witness, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.satisfiable and self.assignment is None:
            raise ValueError("a satisfiable report must carry its assignment")
        if not self.satisfiable and not self.search_exhausted and not self.witnesses:
            raise ValueError(
                "an unsatisfiable report needs witnesses or an exhausted search"
            )


class CorrelationKind(enum.Enum):
    """Whether joint outcomes pre-exist the measurement or are created by it."""

    FIRST_KIND = "FirstKind"
    SECOND_KIND = "SecondKind"


def contextual_table(
    lam: SiphonDiameters,
    system: VesselSystem,
    tie_policy: TiePolicy = TiePolicy.ERROR,
    tie_seed: int = 0,
) -> ContextualOutcomeTable:
    """The four deterministic joint products for this hidden variable."""
    products = {}
    for pair in (PAIR_AB, PAIR_APRIME_B, PAIR_AB_PRIME, PAIR_APRIME_BPRIME):
        products[pair.label] = run_coincidence(pair, lam, system, tie_policy, tie_seed).product
    return ContextualOutcomeTable(
        product_ab=products[PAIR_AB.label],
        product_aprime_b=products[PAIR_APRIME_B.label],
        product_ab_prime=products[PAIR_AB_PRIME.label],
        product_aprime_bprime=products[PAIR_APRIME_BPRIME.label],
    )


def search_factorization(table: ContextualOutcomeTable) -> FactorizationReport:
    """Try every sign assignment against the table.

    Returns the first assignment (in a fixed enumeration order) whose pairwise
    products match all four entries, or an unsatisfiable verdict with the
    search recorded as exhausted.
    """
    for e_a, e_aprime, e_b, e_bprime in itertools.product(_SIGNS, repeat=4):
        candidate = SignAssignment(e_a, e_aprime, e_b, e_bprime)
        if candidate.reproduces(table):
            return FactorizationReport(satisfiable=True, assignment=candidate)
    return FactorizationReport(satisfiable=False, search_exhausted=True)


def contextuality_witness(lam: SiphonDiameters) -> Witness:
    """Outcome of the left siphon experiment in its two partner contexts.

    Against the other siphon the winner rule applies; against a spoon test
    the siphon runs alone and always scores +1.  The two disagree exactly
    when the left diameter is the smaller one.
    """
    outcome_with_b, _ = joint_outcome_ab(lam)
    outcome_with_bprime = outcome_solo_siphon()
    return Witness(
        lam=lam,
        outcome_with_b=outcome_with_b,
        outcome_with_bprime=outcome_with_bprime,
        differs=outcome_with_b != outcome_with_bprime,
    )


def classify_correlations(
    table_fn: Callable[[SiphonDiameters], ContextualOutcomeTable],
    lambda_samples: Iterable[SiphonDiameters],
) -> CorrelationKind:
    """Classify a four-context outcome model over sampled hidden variables.

    Second kind as soon as one sample's table admits no context-free sign
    assignment (the joint outcomes cannot pre-exist the measurement); first
    kind when every sampled table factorizes.
    """
    samples = list(lambda_samples)
    if not samples:
        raise EmptySampleSetError("correlation classification needs at least one sample")
    for lam in samples:
        if not search_factorization(table_fn(lam)).satisfiable:
            return CorrelationKind.SECOND_KIND
    return CorrelationKind.FIRST_KIND


@dataclass(frozen=True)
class SampleAnalysis:
    """Everything the locality scan records for one sampled hidden variable."""

    lam: SiphonDiameters
    table: ContextualOutcomeTable
    factorization: FactorizationReport
    witness: Witness


def scan_hidden_variables(
    samples: Sequence[SiphonDiameters],
    system: VesselSystem,
    tie_policy: TiePolicy = TiePolicy.ERROR,
    tie_seed: int = 0,
) -> list[SampleAnalysis]:
    """Per-sample tables, factorization verdicts, and context witnesses."""
    results = []
    for lam in samples:
        table = contextual_table(lam, system, tie_policy, tie_seed)
        results.append(
            SampleAnalysis(
                lam=lam,
                table=table,
                factorization=search_factorization(table),
                witness=contextuality_witness(lam),
            )
        )
    return results
