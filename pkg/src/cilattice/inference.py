"""Rule-based derivation for system A and its sub-systems.

Statements are handled internally as canonical mask triples ``(x, y, c)``
with ``x < y`` standing for ``I(X, Y | C)``.  Symmetry is therefore implicit,
and trivial statements are never stored: they are always considered present
and can never act as an informative premise.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable

from . import lattice
from .core import CapExceeded, CIStatement, Universe, submasks

CLOSURE_CAP = 6

TRIVIALITY = "triviality"
SYMMETRY = "symmetry"
DECOMPOSITION = "decomposition"
CONTRACTION = "contraction"
STRONG_UNION = "strong_union"
STRONG_CONTRACTION = "strong_contraction"
WEAK_UNION = "weak_union"
COMPOSITION = "composition"

ALL_RULES = frozenset(
    {TRIVIALITY, SYMMETRY, DECOMPOSITION, CONTRACTION, STRONG_UNION, STRONG_CONTRACTION, WEAK_UNION, COMPOSITION}
)

SYSTEM_A = frozenset({TRIVIALITY, SYMMETRY, DECOMPOSITION, CONTRACTION, STRONG_UNION, STRONG_CONTRACTION})
SEMI_GRAPHOID = frozenset({TRIVIALITY, SYMMETRY, DECOMPOSITION, WEAK_UNION, CONTRACTION})
A_MINUS_SC = SYSTEM_A - {STRONG_CONTRACTION}

PRESETS = {
    "system-a": SYSTEM_A,
    "semi-graphoid": SEMI_GRAPHOID,
    "a-minus-sc": A_MINUS_SC,
}

Key = tuple[int, int, int]


def _key(x: int, y: int, c: int) -> Key:
    return (x, y, c) if x < y else (y, x, c)


def _orient(k: Key):
    x, y, c = k
    yield x, y, c
    yield y, x, c


@dataclass
class ClosureResult:
    """Closure of a statement set; trivial statements are implicitly members."""

    universe: Universe
    rules: frozenset[str]
    statements: frozenset[CIStatement]
    trace: dict[CIStatement, tuple[str, tuple[CIStatement, ...]]] = field(default_factory=dict)

    def __contains__(self, c: CIStatement) -> bool:
        return c.trivial or c in self.statements

    def __len__(self) -> int:
        return len(self.statements)

    def sorted(self) -> list[CIStatement]:
        return sorted(self.statements, key=lambda s: s.sort_key)

    def trace_lines(self) -> list[str]:
        """One ``<statement> <= <rule>(<premises>)`` line per derived statement."""
        lines = []
        for s in self.sorted():
            if s not in self.trace:
                continue
            rule, premises = self.trace[s]
            lines.append(f"{s} <= {rule}({'; '.join(str(p) for p in premises)})")
        return lines


class _Engine:
    def __init__(self, universe: Universe, rules: frozenset[str]) -> None:
        self.u = universe
        self.full = universe.full_mask
        self.rules = rules
        self.known: set[Key] = set()
        self.by_cond: dict[int, set[Key]] = defaultdict(set)
        self.trace: dict[Key, tuple[str, tuple[Key, ...]]] = {}
        self.queue: deque[Key] = deque()

    def add(self, k: Key, rule: str | None = None, premises: tuple[Key, ...] = ()) -> None:
        x, y, _ = k
        if x == 0 or y == 0 or k in self.known:
            return
        self.known.add(k)
        self.by_cond[k[2]].add(k)
        if rule is not None:
            self.trace[k] = (rule, premises)
        self.queue.append(k)

    def has(self, x: int, y: int, c: int) -> bool:
        return x == 0 or y == 0 or _key(x, y, c) in self.known

    def run(self) -> None:
        while self.queue:
            self.fire(self.queue.popleft())

    def fire(self, k: Key) -> None:
        rules = self.rules
        for a, b, c in _orient(k):
            if DECOMPOSITION in rules or WEAK_UNION in rules:
                for d in submasks(b):
                    if d == 0 or d == b:
                        continue
                    # I(A, B|C) -> I(A, D|C) and I(A, B-D|C D)
                    if DECOMPOSITION in rules:
                        self.add(_key(a, d, c), DECOMPOSITION, (k,))
                    if WEAK_UNION in rules:
                        self.add(_key(a, b & ~d, c | d), WEAK_UNION, (k,))
            if CONTRACTION in rules:
                self._contraction(k, a, b, c)
            if COMPOSITION in rules:
                for other in list(self.by_cond[c]):
                    for a2, d, _ in _orient(other):
                        if a2 == a:
                            self.add(_key(a, b | d, c), COMPOSITION, (k, other))
        if STRONG_UNION in rules:
            x, y, c = k
            rest = self.full & ~(x | y | c)
            for d in submasks(rest):
                if d:
                    self.add((x, y, c | d), STRONG_UNION, (k,))
        if STRONG_CONTRACTION in rules:
            self._strong_contraction(k)

    def _contraction(self, k: Key, a: int, b: int, c: int) -> None:
        # I(A, B|C D) & I(A, D|C) -> I(A, B D|C)
        # k in the second role: (a, b, c) = (A, D, C)
        for other in list(self.by_cond[c | b]):
            for a1, b1, _ in _orient(other):
                if a1 == a:
                    self.add(_key(a, b1 | b, c), CONTRACTION, (other, k))
        # k in the first role: (a, b, c) = (A, B, C D)
        for d in submasks(c):
            if d and _key(a, d, c & ~d) in self.known:
                self.add(_key(a, b | d, c & ~d), CONTRACTION, (k, _key(a, d, c & ~d)))

    def _strong_contraction(self, k: Key) -> None:
        # I(A, B|C) & I(D, E|A C) & I(D, E|B C) -> I(D, E|C)
        x, y, c = k
        # k as the first premise
        for a, b in ((x, y), (y, x)):
            for other in list(self.by_cond[a | c]):
                d, e, _ = other
                if (d | e) & b:
                    continue
                third = _key(d, e, b | c)
                if third in self.known:
                    self.add(_key(d, e, c), STRONG_CONTRACTION, (k, other, third))
        # k as the second (or, by symmetry in A and B, third) premise
        de = x | y
        for a in submasks(c):
            if a == 0:
                continue
            base = c & ~a
            for first in list(self.by_cond[base]):
                for a1, b1, _ in _orient(first):
                    if a1 != a or b1 & de:
                        continue
                    third = _key(x, y, b1 | base)
                    if third in self.known:
                        self.add(_key(x, y, base), STRONG_CONTRACTION, (first, k, third))


def closure(
    statements: Iterable[CIStatement],
    rules: frozenset[str] = SYSTEM_A,
    *,
    universe: Universe | None = None,
) -> ClosureResult:
    """Least fixpoint of ``rules`` applied to ``statements``."""
    statements = list(statements)
    if universe is None:
        if not statements:
            raise ValueError("closure of an empty set needs an explicit universe")
        universe = statements[0].universe
    universe.check(*statements)
    unknown = set(rules) - ALL_RULES
    if unknown:
        raise ValueError(f"unknown rules: {sorted(unknown)}")
    if universe.n > CLOSURE_CAP:
        raise CapExceeded(f"rule closure is capped at {CLOSURE_CAP} variables")
    eng = _Engine(universe, frozenset(rules))
    inputs = [s for s in statements if not s.trivial]
    for s in inputs:
        eng.add(_key(*s.masks))
    eng.run()

    def to_stmt(k: Key) -> CIStatement:
        return CIStatement.from_masks(universe, *k)

    derived = frozenset(to_stmt(k) for k in eng.known) | frozenset(statements)
    trace = {
        to_stmt(k): (rule, tuple(to_stmt(p) for p in prem)) for k, (rule, prem) in eng.trace.items()
    }
    return ClosureResult(universe, frozenset(rules), derived, trace)


def derivable(antecedents: Iterable[CIStatement], c: CIStatement) -> bool:
    """Derivability under system A, decided by semi-lattice inclusion."""
    return lattice.includes(list(antecedents), c).holds


def is_stable(c: CIStatement, statements: Iterable[CIStatement], *, sg_closure: ClosureResult | None = None) -> bool:
    """Whether ``c`` stays semi-graphoid derivable for every larger conditioning set.

    Only conditioning sets disjoint from both sides are considered.
    """
    if sg_closure is None:
        sg_closure = closure(statements, SEMI_GRAPHOID, universe=c.universe)
    if c.trivial:
        return True
    u = c.universe
    a, b, g = c.masks
    rest = u.full_mask & ~(a | b | g)
    return all(CIStatement.from_masks(u, a, b, g | d) in sg_closure for d in submasks(rest))


def minimize_stable(statements: Iterable[CIStatement]) -> set[CIStatement]:
    """Greedily drop statements whose semi-lattice is covered by the others."""
    current = set(statements)
    for c in sorted(current, key=lambda s: s.sort_key):
        rest = [s for s in current if s != c]
        if lattice.includes(rest, c).holds:
            current.discard(c)
    return current
