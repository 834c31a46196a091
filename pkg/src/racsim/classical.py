"""Classical strategies for the n-dit random access game.

A deterministic strategy is an encoder table mapping every input string to a
single message dit together with one decoder table per question.  The module
evaluates arbitrary strategies exactly, builds the majority-encoding
identity-decoding strategy, knows the closed-form optima for n = 2 and n = 3,
and ships an exhaustive oracle that recovers the optimum at small sizes.

The oracle enumerates decoder tuples only: once the decoders are fixed, the
best encoder picks, for each input independently, a message maximizing the
number of questions answered correctly, so encoders never need to be
enumerated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .report import SuccessReport

#: Decoder-tuple budget below which the oracle runs without an override.
#: Covers (n=2, d<=5) at ~9.8M pairs and (n=3, d<=3) at ~20k triples.
DEFAULT_TUPLE_BUDGET = 10_000_000


class InfeasibleSearchError(ValueError):
    """Raised when an exhaustive search would exceed its tuple budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"exhaustive search needs {required} decoder tuples, above the budget "
            f"of {budget}; pass allow_large=True to run a symmetry-reduced search"
        )


@dataclass(frozen=True)
class ClassicalTask:
    """An [(n, d) -> 1] game: n dits from a size-d alphabet, one dit sent."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"string length must be at least 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"alphabet size must be at least 2, got {self.d}")

    @property
    def input_count(self) -> int:
        return self.d**self.n


@dataclass(frozen=True)
class DeterministicStrategy:
    """Encoder table plus one decoder table per question.

    ``encoder[k]`` is the message for the input string of lexicographic rank
    ``k`` (first dit most significant); ``decoders[y-1][m]`` is the answer to
    question ``y`` on receiving message ``m``.
    """

    n: int
    d: int
    encoder: tuple[int, ...]
    decoders: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.encoder) != self.d**self.n:
            raise ValueError(
                f"encoder table must have {self.d ** self.n} entries, got {len(self.encoder)}"
            )
        if len(self.decoders) != self.n or any(len(t) != self.d for t in self.decoders):
            raise ValueError(f"need {self.n} decoder tables of {self.d} entries each")
        entries = np.fromiter(
            itertools.chain(self.encoder, *self.decoders),
            dtype=np.int64,
            count=len(self.encoder) + self.n * self.d,
        )
        if entries.size and (entries.min() < 0 or entries.max() >= self.d):
            raise ValueError(f"table entries must lie in 0..{self.d - 1}")

    def encode(self, x: tuple[int, ...]) -> int:
        return self.encoder[input_rank(x, self.d)]

    def decode(self, y: int, message: int) -> int:
        return self.decoders[y - 1][message]


@dataclass(frozen=True, eq=False)
class OracleResult:
    """Outcome of an exhaustive search over deterministic strategies."""

    optimum: float
    witness: DeterministicStrategy
    strategies_examined: int


def input_rank(x: tuple[int, ...], d: int) -> int:
    """Lexicographic rank of a dit string, first position most significant."""
    rank = 0
    for value in x:
        if not 0 <= value < d:
            raise ValueError(f"dit values must lie in 0..{d - 1}, got {value}")
        rank = rank * d + value
    return rank


def all_inputs(n: int, d: int) -> np.ndarray:
    """All d^n input strings as an array of rows in lexicographic order."""
    grids = np.meshgrid(*([np.arange(d)] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def evaluate_strategy(task: ClassicalTask, strategy: DeterministicStrategy) -> SuccessReport:
    """Exact success counting of one deterministic strategy."""
    if (strategy.n, strategy.d) != (task.n, task.d):
        raise ValueError(
            f"strategy tables are for (n={strategy.n}, d={strategy.d}), "
            f"task is (n={task.n}, d={task.d})"
        )
    n, d = task.n, task.d
    inputs = all_inputs(n, d)
    messages = np.asarray(strategy.encoder)
    decoders = np.asarray(strategy.decoders)
    per = np.empty((task.input_count, n))
    for y in range(n):
        per[:, y] = decoders[y][messages] == inputs[:, y]
    return SuccessReport.from_per_input(per.reshape((d,) * n + (n,)))


def majority_identity_strategy(task: ClassicalTask) -> DeterministicStrategy:
    """Send the most frequent dit (ties broken by earliest position), decode verbatim."""
    n, d = task.n, task.d
    inputs = all_inputs(n, d)
    # Count, per position, how often that position's value occurs in its
    # string; the first position whose value attains the maximum count wins
    # the tie-break.
    per_position = (inputs[:, :, None] == inputs[:, None, :]).sum(axis=2)
    first = (per_position == per_position.max(axis=1, keepdims=True)).argmax(axis=1)
    encoder = inputs[np.arange(task.input_count), first]
    identity = tuple(range(d))
    return DeterministicStrategy(
        n=n, d=d, encoder=tuple(int(m) for m in encoder), decoders=(identity,) * n
    )


def closed_form_classical(n: int, d: int) -> float:
    """Optimal classical average success for n = 2 or n = 3."""
    if d < 2:
        raise ValueError(f"alphabet size must be at least 2, got {d}")
    if n == 2:
        return 0.5 * (1.0 + 1.0 / d)
    if n == 3:
        return (1.0 + 3.0 / d - 1.0 / d**2) / 3.0
    raise ValueError(f"closed form is only known for n in {{2, 3}}, got n={n}")


def _decoder_functions(d: int) -> np.ndarray:
    """All d^d decoder tables as rows, in lexicographic order."""
    return all_inputs(d, d)


def _nondecreasing_rows(funcs: np.ndarray) -> np.ndarray:
    if funcs.shape[1] < 2:
        return np.ones(funcs.shape[0], dtype=bool)
    return np.all(funcs[:, 1:] >= funcs[:, :-1], axis=1)


def optimal_classical_bruteforce(
    task: ClassicalTask,
    *,
    max_tuples: int = DEFAULT_TUPLE_BUDGET,
    allow_large: bool = False,
) -> OracleResult:
    """Exact maximum average success over all deterministic strategies.

    Only decoder tuples are enumerated; the encoder is optimized greedily per
    input, which is lossless.  When the (d^d)^n tuple count exceeds
    ``max_tuples`` the search refuses to run unless ``allow_large`` is set, in
    which case the first decoder is canonicalized up to relabelings of the
    message alphabet (any relabeling applied to all decoders at once leaves
    the achievable value unchanged), shrinking the search by up to d!.

    The reported witness carries the lexicographically smallest optimal
    decoder tuple of the enumerated space and its greedy encoder.
    """
    n, d = task.n, task.d
    func_count = d**d
    required = func_count**n
    reduce_first = False
    if required > max_tuples:
        if not allow_large:
            raise InfeasibleSearchError(required, max_tuples)
        reduce_first = True

    funcs = _decoder_functions(d)
    # indicator[f, m, v] == 1 when decoder f answers v on message m
    indicator = (funcs[:, :, None] == np.arange(d)).astype(np.int8)

    if reduce_first:
        first_pool = np.nonzero(_nondecreasing_rows(funcs))[0]
    else:
        first_pool = np.arange(func_count)

    # Broadcasting shape for decoder slot y: (messages,) then the value axis
    # of question y, singleton elsewhere.
    def slot_view(f_idx: int, y: int) -> np.ndarray:
        shape = [d] + [1] * n
        shape[1 + y] = d
        return indicator[f_idx].reshape(shape)

    batched_last = indicator.reshape((func_count, d) + (1,) * (n - 1) + (d,))
    value_axes = tuple(range(1, n + 1))

    best_count = -1
    best_tuple: tuple[int, ...] | None = None
    examined = 0
    pools = [first_pool] + [range(func_count)] * (n - 2) if n >= 2 else []
    for prefix in itertools.product(*pools):
        partial = np.zeros((d,) + (1,) * n, dtype=np.int8)
        for y, f_idx in enumerate(prefix):
            partial = partial + slot_view(f_idx, y)
        totals = partial[None, ...] + batched_last
        counts = totals.max(axis=1).sum(axis=value_axes, dtype=np.int64)
        examined += func_count
        j = int(np.argmax(counts))
        if counts[j] > best_count:
            best_count = int(counts[j])
            best_tuple = (*prefix, j)

    assert best_tuple is not None
    witness = _greedy_witness(task, funcs, best_tuple, best_count)
    optimum = best_count / (n * task.input_count)
    return OracleResult(optimum=optimum, witness=witness, strategies_examined=examined)


def _greedy_witness(
    task: ClassicalTask, funcs: np.ndarray, decoder_ids: tuple[int, ...], expected_count: int
) -> DeterministicStrategy:
    """Strategy with the given decoders and the per-input greedy encoder."""
    n, d = task.n, task.d
    inputs = all_inputs(n, d)
    score = np.zeros((task.input_count, d), dtype=np.int64)
    for y, f_idx in enumerate(decoder_ids):
        score += funcs[f_idx][None, :] == inputs[:, y][:, None]
    encoder = score.argmax(axis=1)  # ties resolved toward the smallest message
    total = int(score.max(axis=1).sum())
    if total != expected_count:
        raise AssertionError(f"greedy encoder scores {total}, search reported {expected_count}")
    return DeterministicStrategy(
        n=n,
        d=d,
        encoder=tuple(int(m) for m in encoder),
        decoders=tuple(tuple(int(v) for v in funcs[f_idx]) for f_idx in decoder_ids),
    )


def mixture_value(
    task: ClassicalTask, strategies: list[tuple[DeterministicStrategy, float]]
) -> float:
    """Average success of a shared-randomness mixture of deterministic strategies."""
    if not strategies:
        raise ValueError("mixture needs at least one strategy")
    weights = [w for _, w in strategies]
    if any(w < 0 for w in weights):
        raise ValueError(f"weights must be nonnegative, got {weights}")
    if abs(sum(weights) - 1.0) > 1e-12:
        raise ValueError(f"weights must sum to 1, got {sum(weights)}")
    return sum(w * evaluate_strategy(task, s).average for s, w in strategies)


def strategy_to_text(strategy: DeterministicStrategy) -> str:
    """Serialize a strategy in the exchange table format.

    Line 1 is ``n d``; the next d^n lines list an input string followed by its
    message, in lexicographic input order; then n blocks of d lines map each
    message to the answer for questions y = 1..n.
    """
    lines = [f"{strategy.n} {strategy.d}"]
    for rank, x in enumerate(itertools.product(range(strategy.d), repeat=strategy.n)):
        lines.append(" ".join(str(v) for v in x) + f" {strategy.encoder[rank]}")
    for table in strategy.decoders:
        for message, answer in enumerate(table):
            lines.append(f"{message} {answer}")
    return "\n".join(lines) + "\n"


def strategy_from_text(text: str) -> DeterministicStrategy:
    """Parse the exchange table format produced by :func:`strategy_to_text`."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("strategy table must start with a header line 'n d'")
    try:
        n, d = (int(v) for v in rows[0])
    except ValueError as exc:
        raise ValueError(f"malformed header {' '.join(rows[0])!r}") from exc
    task = ClassicalTask(n=n, d=d)
    expected = 1 + task.input_count + n * d
    if len(rows) != expected:
        raise ValueError(f"strategy table for n={n}, d={d} needs {expected} lines, got {len(rows)}")

    encoder = [-1] * task.input_count
    for row in rows[1 : 1 + task.input_count]:
        if len(row) != n + 1:
            raise ValueError(f"encoder line must hold {n} dits and a message: {' '.join(row)!r}")
        values = [int(v) for v in row]
        rank = input_rank(tuple(values[:n]), d)
        if encoder[rank] != -1:
            raise ValueError(f"duplicate encoder line for input {tuple(values[:n])}")
        encoder[rank] = values[n]
    decoders = []
    cursor = 1 + task.input_count
    for _ in range(n):
        table = [-1] * d
        for row in rows[cursor : cursor + d]:
            if len(row) != 2:
                raise ValueError(f"decoder line must hold a message and an answer: {' '.join(row)!r}")
            message, answer = (int(v) for v in row)
            if not 0 <= message < d or table[message] != -1:
                raise ValueError(f"bad or duplicate decoder line for message {message}")
            table[message] = answer
        decoders.append(tuple(table))
        cursor += d
    return DeterministicStrategy(n=n, d=d, encoder=tuple(encoder), decoders=tuple(decoders))
