import numpy as np

from network.services.network_services import MAX_SEED


def trial_seed(base_seed: int, m: int, trial: int) -> int:
    """
    Seed of trial ``trial`` at hidden size ``m``.

    Derived from (base_seed, m, trial) alone, so adding trials or widening the
    m-range never changes seeds already in use, and every method sees the same
    input weights at a given (m, trial).
    """
    sequence = np.random.SeedSequence(int(base_seed), spawn_key=(int(m), int(trial)))
    return int(sequence.generate_state(1, dtype=np.uint64)[0]) & MAX_SEED


def trial_seeds(base_seed: int, m_values, trials: int) -> list[tuple[int, int, int]]:
    """(m, trial, seed) triples in the order results are reduced."""
    return [(m, trial, trial_seed(base_seed, m, trial)) for m in m_values for trial in range(trials)]
