"""Semi-lattices of CI statements.

The semi-lattice of ``I(A, B | C)`` is the family of sets ``U`` with
``C <= U`` that contain neither ``A`` nor ``B`` in full.  It is never stored;
membership is three mask operations, and enumeration walks the union of the
intervals ``[C, S - {a, b}]`` over the witness pairs ``{a, b}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    CapExceeded,
    CIStatement,
    Universe,
    VarSet,
    mask_indices,
    mask_sort_key,
    submasks,
)

ENUMERATION_CAP = 30  # max free variables |S| - |C| when enumerating
OMEGA2_CAP = 20
CHARACTERISTIC_CAP = 16


def member_mask(u: int, a: int, b: int, c: int) -> bool:
    return u & c == c and a & ~u != 0 and b & ~u != 0


def member(U: VarSet, c: CIStatement) -> bool:
    """Whether ``U`` lies in the semi-lattice of ``c``."""
    c.universe.check(U)
    return member_mask(U.mask, *c.masks)


def witness_masks(c: CIStatement) -> list[int]:
    a, b, _ = c.masks
    return [(1 << i) | (1 << j) for i in mask_indices(a) for j in mask_indices(b)]


def witnesses(c: CIStatement) -> set[VarSet]:
    """All two-element sets ``{a, b}`` with ``a`` in the left and ``b`` in the right side."""
    u = c.universe
    return {VarSet(u, w) for w in witness_masks(c)}


def _check_enumerable(c: CIStatement) -> None:
    free = c.universe.n - len(c.given)
    if free > ENUMERATION_CAP:
        raise CapExceeded(f"lattice enumeration needs |S| - |C| <= {ENUMERATION_CAP}, got {free}")


def enumerate_masks(c: CIStatement) -> set[int]:
    _check_enumerable(c)
    full = c.universe.full_mask
    given = c.given.mask
    out: set[int] = set()
    for w in witness_masks(c):
        top = full & ~w
        for extra in submasks(top & ~given):
            out.add(given | extra)
    return out


def enumerate(c: CIStatement) -> set[VarSet]:
    """The semi-lattice of ``c`` as a set of VarSets."""
    u = c.universe
    return {VarSet(u, m) for m in enumerate_masks(c)}


def sorted_elements(c: CIStatement) -> list[VarSet]:
    u = c.universe
    return [VarSet(u, m) for m in sorted(enumerate_masks(c), key=mask_sort_key)]


def count(c: CIStatement) -> int:
    """Size of the semi-lattice by inclusion-exclusion; no enumeration."""
    if c.trivial:
        return 0
    n = c.universe.n
    a, b, g = len(c.left), len(c.right), len(c.given)
    return 2 ** (n - g) - 2 ** (n - a - g) - 2 ** (n - b - g) + 2 ** (n - a - b - g)


def union_members(U: VarSet, statements: Iterable[CIStatement]) -> bool:
    """Whether ``U`` belongs to the union of the statements' semi-lattices."""
    m = U.mask
    return any(member_mask(m, *s.masks) for s in statements)


@dataclass(frozen=True)
class Inclusion:
    holds: bool
    certificate: VarSet | None = None


def includes(antecedents: Sequence[CIStatement], c: CIStatement) -> Inclusion:
    """Test whether the antecedents' semi-lattices cover the semi-lattice of ``c``.

    Elements of the consequent's lattice are visited in canonical subset order
    and the first uncovered one is returned as the certificate.
    """
    u = c.universe
    u.check(*antecedents)
    ante = [s.masks for s in antecedents if not s.trivial]
    for m in sorted(enumerate_masks(c), key=mask_sort_key):
        if not any(member_mask(m, a, b, g) for a, b, g in ante):
            return Inclusion(False, VarSet(u, m))
    return Inclusion(True)


def wdec(c: CIStatement) -> set[CIStatement]:
    """Witness decomposition: ``{I(a, b | C) : a in A, b in B}``."""
    u = c.universe
    g = c.given.mask
    return {
        CIStatement.from_masks(u, 1 << i, 1 << j, g)
        for i in c.left.indices
        for j in c.right.indices
    }


def omega2_elements(u: Universe) -> set[VarSet]:
    """Subsets of the universe that miss at least two variables."""
    if u.n > OMEGA2_CAP:
        raise CapExceeded(f"Omega^(2) enumeration is capped at {OMEGA2_CAP} variables")
    return {VarSet(u, m) for m in range(1 << u.n) if m.bit_count() <= u.n - 2}


def omega2_above(U: VarSet) -> set[VarSet]:
    """Supersets of ``U`` that miss at least two variables."""
    u = U.universe
    if u.n > OMEGA2_CAP:
        raise CapExceeded(f"Omega^(2) enumeration is capped at {OMEGA2_CAP} variables")
    rest = u.full_mask & ~U.mask
    return {VarSet(u, U.mask | x) for x in submasks(rest) if (rest & ~x).bit_count() >= 2}


def characteristic(c: CIStatement) -> int:
    """The semi-lattice as an integer with bit ``U`` set for each member ``U``.

    Unions of lattices become bitwise ORs, which is what keeps large batches
    of small-universe checks cheap.
    """
    if c.universe.n > CHARACTERISTIC_CAP:
        raise CapExceeded(f"characteristic encoding is capped at {CHARACTERISTIC_CAP} variables")
    bits = 0
    for m in enumerate_masks(c):
        bits |= 1 << m
    return bits


@dataclass(frozen=True)
class SemiLattice:
    """Lazy view of the semi-lattice of a statement."""

    base: CIStatement

    def __contains__(self, U: VarSet) -> bool:
        return member(U, self.base)

    def __iter__(self):
        return iter(sorted_elements(self.base))

    def __len__(self) -> int:
        return count(self.base)

    def witnesses(self) -> set[VarSet]:
        return witnesses(self.base)
