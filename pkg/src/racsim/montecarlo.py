"""Seeded Monte Carlo execution of the random access game.

Every protocol the package evaluates exactly can also be *played*: inputs are
drawn uniformly, the encoded system is measured by sampling the exact Born
distribution of the decoding basis, the guess rule is sampled, and the
empirical success rate is tallied.  Estimates converge to the exact values
and are bit-reproducible: the generator is numpy's default PCG64 seeded from
``TrialConfig.seed``, and all variates are drawn as whole arrays in a fixed
order.  Quantum protocols draw five arrays (first dits, second dits,
questions, outcome uniforms, guess uniforms); classical strategies draw the
input matrix and then the questions.

Outcome sampling inverts the cumulative Born distribution computed once per
distinct (input, question) cell; no state collapse is simulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import DeterministicStrategy
from .quantum import ProtocolSpec, decoding_basis, encode_restricted
from . import qudit

_CHUNK = 1 << 17


@dataclass(frozen=True)
class TrialConfig:
    """How many rounds to play and which seed to play them with."""

    trials: int
    seed: int

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trial count must be at least 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class Estimate:
    """Empirical success rate with its binomial standard error."""

    mean: float
    stderr: float
    trials: int


def _estimate(successes: int, trials: int) -> Estimate:
    mean = successes / trials
    return Estimate(mean=mean, stderr=math.sqrt(mean * (1.0 - mean) / trials), trials=trials)


def _quantum_tables(spec: ProtocolSpec) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell outcome CDFs (d*d*2 rows) and the outcome-0 guess set."""
    d, m = spec.d, spec.d_prime
    bases = [decoding_basis(m, 1), decoding_basis(m, 2)]
    cdfs = np.empty((d * d * 2, m))
    for x1 in range(d):
        for x2 in range(d):
            state = encode_restricted(spec, x1, x2)
            for yi, basis in enumerate(bases):
                born = qudit.born_distribution(state, basis)
                cdfs[(x1 * d + x2) * 2 + yi] = np.cumsum(born)
    # Guard against cumulative rounding pushing a uniform past the last level.
    cdfs[:, -1] = 1.0
    guess_set = np.array([0, *range(m, d)], dtype=np.int64)
    return cdfs, guess_set


def _play_quantum(spec: ProtocolSpec, config: TrialConfig) -> np.ndarray:
    """Trial records as columns (x1, x2, y, answer, success)."""
    d = spec.d
    rng = np.random.default_rng(config.seed)
    trials = config.trials
    x1 = rng.integers(0, d, trials)
    x2 = rng.integers(0, d, trials)
    y = rng.integers(1, 3, trials)
    u_outcome = rng.random(trials)
    u_guess = rng.random(trials)

    cdfs, guess_set = _quantum_tables(spec)
    fallback = len(guess_set)
    cells = (x1 * d + x2) * 2 + (y - 1)
    answers = np.empty(trials, dtype=np.int64)
    for start in range(0, trials, _CHUNK):
        stop = min(start + _CHUNK, trials)
        rows = cdfs[cells[start:stop]]
        outcome = (u_outcome[start:stop, None] >= rows).sum(axis=1)
        guess_idx = np.minimum((u_guess[start:stop] * fallback).astype(np.int64), fallback - 1)
        answers[start:stop] = np.where(outcome == 0, guess_set[guess_idx], outcome)
    targets = np.where(y == 1, x1, x2)
    success = answers == targets
    return np.stack([x1, x2, y, answers, success.astype(np.int64)], axis=1)


def _play_classical(strategy: DeterministicStrategy, config: TrialConfig) -> np.ndarray:
    n, d = strategy.n, strategy.d
    rng = np.random.default_rng(config.seed)
    trials = config.trials
    xs = rng.integers(0, d, (trials, n))
    y = rng.integers(1, n + 1, trials)

    powers = d ** np.arange(n - 1, -1, -1)
    ranks = xs @ powers
    encoder = np.asarray(strategy.encoder)
    decoders = np.asarray(strategy.decoders)
    answers = decoders[y - 1, encoder[ranks]]
    targets = xs[np.arange(trials), y - 1]
    return (answers == targets).astype(np.int64)


def simulate(protocol: ProtocolSpec | DeterministicStrategy, config: TrialConfig) -> Estimate:
    """Play the game ``config.trials`` times and estimate the success rate.

    Identical (protocol, config) pairs reproduce identical estimates.
    """
    if isinstance(protocol, ProtocolSpec):
        records = _play_quantum(protocol, config)
        successes = int(records[:, 4].sum())
    elif isinstance(protocol, DeterministicStrategy):
        successes = int(_play_classical(protocol, config).sum())
    else:
        raise TypeError(f"cannot simulate {type(protocol).__name__}")
    return _estimate(successes, config.trials)


def answer_counts(spec: ProtocolSpec, config: TrialConfig) -> np.ndarray:
    """Histogram of sampled answers, indexed by (x1, x2, question-1, answer).

    Uses the same variate stream as :func:`simulate`, so the histogram is the
    full record of an identically-seeded run.
    """
    d = spec.d
    records = _play_quantum(spec, config)
    counts = np.zeros((d, d, 2, d), dtype=np.int64)
    np.add.at(counts, (records[:, 0], records[:, 1], records[:, 2] - 1, records[:, 3]), 1)
    return counts
