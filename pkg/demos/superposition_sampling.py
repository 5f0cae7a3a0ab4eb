"""
The pre-measurement state: amplitudes, Born sampling, Schmidt rank
==================================================================

Before the joint siphon run the water is one connected whole; the possible
final divisions (x liters left, 10 - x right, in whole liters) are only
potential.  A complex amplitude per division encodes the probability of
reaching it.  Sampling collapses the state to one division; the Schmidt
rank of the joint coefficient matrix counts the contributing divisions,
and any rank above one makes the state entangled.
"""

import numpy as np

from vesselsim import born_samples, is_entangled, make_state, schmidt_rank

rng = np.random.default_rng(0)

# A uniform superposition over all 11 divisions.
uniform = make_state(np.ones(11) / np.sqrt(11))
draws = born_samples(uniform, 50_000, rng)
counts = np.bincount(draws, minlength=11)
print("Uniform state, 50000 draws:")
for x, count in enumerate(counts):
    bar = "#" * (count // 250)
    print(f"  x = {x:2d}: {count:5d} {bar}")
print(f"Schmidt rank: {schmidt_rank(uniform)}  entangled: {is_entangled(uniform)}")

# Two extreme divisions in equal superposition: rank 2, still entangled.
two_branch = np.zeros(11, dtype=complex)
two_branch[0] = two_branch[10] = 1 / np.sqrt(2)
state = make_state(two_branch)
draws = born_samples(state, 10_000, rng)
print(f"\nTwo-branch state samples only x in {sorted(set(draws.tolist()))}")
print(f"Schmidt rank: {schmidt_rank(state)}  entangled: {is_entangled(state)}")

# A single certain division is a product state: nothing is entangled.
certain = np.zeros(11)
certain[5] = 1.0
state = make_state(certain)
print(f"\nCertain half-half division: rank {schmidt_rank(state)}, "
      f"entangled: {is_entangled(state)}")

# Complex phases change nothing observable here: the Born weights and the
# singular values only see the moduli.
phased = make_state(np.exp(1j * rng.uniform(0, 2 * np.pi, 11)) / np.sqrt(11))
print(f"\nRandom-phase uniform state: rank {schmidt_rank(phased)}, "
      f"probabilities all {phased.probabilities()[0]:.4f}")
