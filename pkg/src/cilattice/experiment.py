"""Random falsification experiments over elementary CI statements.

For every antecedent count ``k`` a batch of random sets of ``k`` distinct
elementary statements is drawn; each remaining elementary statement is then
tested as consequent with the full lattice-exclusion criterion and with both
heuristics.

Randomness comes from numpy's PCG64 generator.  The root seed is split with
``SeedSequence.spawn`` into one independent stream per ``k``, so rows can be
computed in parallel and the output does not depend on the worker count.
"""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence, TextIO

import numpy as np

from . import falsify, lattice
from .core import CIStatement, Instance, Universe, elementary_statements, format_instance

MAX_ATTRIBUTES = 12
CSV_HEADER = "k,instances,full,h1,h2,h1_or_h2,ratio"


@dataclass(frozen=True)
class ExperimentConfig:
    n_attributes: int = 5
    antecedent_counts: Sequence[int] = tuple(range(3, 11))
    sets_per_count: int = 1000
    rng_seed: int = 0
    heuristic1_variant: str = falsify.CONTAINMENT

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedent_counts", tuple(self.antecedent_counts))
        if not 2 <= self.n_attributes <= MAX_ATTRIBUTES:
            raise ValueError(f"n_attributes must be in [2, {MAX_ATTRIBUTES}]")
        if self.sets_per_count < 1:
            raise ValueError("sets_per_count must be >= 1")
        total = statement_space_size(self.n_attributes)
        for k in self.antecedent_counts:
            if not 1 <= k < total:
                raise ValueError(f"antecedent count {k} outside [1, {total - 1}]")
        if self.heuristic1_variant not in falsify.H1_VARIANTS:
            raise ValueError(f"unknown heuristic 1 variant {self.heuristic1_variant!r}")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")


@dataclass
class ExperimentRow:
    antecedent_count: int
    instances_tested: int = 0
    falsified_full: int = 0
    falsified_h1: int = 0
    falsified_h2: int = 0
    falsified_h1_or_h2: int = 0
    # heuristic refutations the full criterion did not confirm; must stay 0
    unsound: int = field(default=0, compare=False)

    @property
    def ratio_combined_over_full(self) -> float:
        return self.falsified_h1_or_h2 / self.falsified_full if self.falsified_full else 0.0


def statement_space_size(n: int) -> int:
    return n * (n - 1) // 2 * 2 ** (n - 2)


def gen_elementary(u: Universe, rng: np.random.Generator, *, space: Sequence[CIStatement] | None = None) -> CIStatement:
    """A uniformly random elementary statement over ``u``."""
    if u.n < 2:
        raise ValueError("elementary statements need at least two variables")
    if space is None:
        space = elementary_statements(u)
    return space[int(rng.integers(len(space)))]


def _sample_indices(rng: np.random.Generator, total: int, k: int) -> list[int]:
    # rejection sampling keeps every draw uniform over the statement space
    chosen: list[int] = []
    seen: set[int] = set()
    while len(chosen) < k:
        i = int(rng.integers(total))
        if i not in seen:
            seen.add(i)
            chosen.append(i)
    return chosen


@dataclass(frozen=True)
class _Space:
    universe: Universe
    statements: tuple[CIStatement, ...]
    lattices: tuple[int, ...]
    conds: tuple[int, ...]
    pairs: tuple[int, ...]


def _space(n: int) -> _Space:
    u = Universe.of_size(n)
    stmts = tuple(elementary_statements(u))
    return _Space(
        u,
        stmts,
        tuple(lattice.characteristic(s) for s in stmts),
        tuple(s.given.mask for s in stmts),
        tuple(s.left.mask | s.right.mask for s in stmts),
    )


def _run_count(
    config: ExperimentConfig,
    k: int,
    seed: np.random.SeedSequence,
    log: Callable[[str], None] | None = None,
) -> ExperimentRow:
    sp = _space(config.n_attributes)
    rng = np.random.Generator(np.random.PCG64(seed))
    total = len(sp.statements)
    meet = config.heuristic1_variant == falsify.FULL_MEET
    row = ExperimentRow(k)
    for _ in range(config.sets_per_count):
        ants = _sample_indices(rng, total, k)
        chosen = set(ants)
        union = 0
        for i in ants:
            union |= sp.lattices[i]
        conds = [sp.conds[i] for i in ants]
        pairs = {sp.pairs[i] for i in ants}
        for j in range(total):
            if j in chosen:
                continue
            row.instances_tested += 1
            g = sp.conds[j]
            full = sp.lattices[j] & ~union != 0
            if meet:
                h1 = not union >> g & 1
            else:
                h1 = all(cc & ~g for cc in conds)
            h2 = sp.pairs[j] not in pairs
            row.falsified_full += full
            row.falsified_h1 += h1
            row.falsified_h2 += h2
            row.falsified_h1_or_h2 += h1 or h2
            row.unsound += (h1 or h2) and not full
            if log is not None:
                inst = Instance(sp.universe, [sp.statements[i] for i in ants], sp.statements[j])
                verdict = falsify.decide(inst.given, inst.query, h1_variant=config.heuristic1_variant)
                log(format_instance(inst) + verdict.line() + "\n")
    return row


def _run_count_star(args) -> ExperimentRow:
    return _run_count(*args)


def run(
    config: ExperimentConfig,
    *,
    workers: int = 1,
    log: Callable[[str], None] | None = None,
) -> list[ExperimentRow]:
    """Run the protocol for every antecedent count in ``config``.

    ``log`` receives one instance block plus verdict line per tested
    instance; it forces sequential execution.
    """
    seeds = np.random.SeedSequence(config.rng_seed).spawn(len(config.antecedent_counts))
    jobs = [(config, k, s) for k, s in zip(config.antecedent_counts, seeds)]
    if workers > 1 and log is None and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_count_star, jobs))
    return [_run_count(*job, log=log) for job in jobs]


def emit_csv(rows: Sequence[ExperimentRow], out: TextIO | None = None) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(
            f"{r.antecedent_count},{r.instances_tested},{r.falsified_full},{r.falsified_h1},"
            f"{r.falsified_h2},{r.falsified_h1_or_h2},{r.ratio_combined_over_full:.6f}\n"
        )
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
