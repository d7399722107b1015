"""Falsification of CI implication instances by lattice exclusion.

If some element of the consequent's semi-lattice lies outside every
antecedent's semi-lattice, the implication fails for discrete probability
measures.  Two cheap heuristics test only the extreme elements: the meet
``C`` (heuristic 1) and the joins ``S - {a, b}`` for each witness (heuristic 2).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from . import inference, lattice
from .core import CIStatement, VarSet, mask_sort_key

CONTAINMENT = "containment"
FULL_MEET = "full-meet"
H1_VARIANTS = (CONTAINMENT, FULL_MEET)


class VerdictKind(str, enum.Enum):
    NOT_IMPLIED = "NotImplied"
    VALID = "Valid"
    DERIVABLE_UNDER_A = "DerivableUnderA"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Falsification:
    """Outcome of one falsification test; truthy when the instance was refuted."""

    falsified: bool
    certificate: VarSet | None = None

    def __bool__(self) -> bool:
        return self.falsified


UNKNOWN = Falsification(False)


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    trace: str
    certificate: VarSet | None = None
    reason: str | None = None

    @property
    def detail(self) -> str:
        if self.certificate is not None:
            return f"certificate={self.certificate}"
        if self.reason is not None:
            return f"reason={self.reason}"
        return "-"

    def line(self) -> str:
        """``<kind>\\t<trace>\\t<certificate-or-reason>``"""
        return f"{self.kind}\t{self.trace}\t{self.detail}"


def parse_verdict_line(line: str, universe) -> Verdict:
    kind, trace, detail = line.rstrip("\n").split("\t")
    certificate = reason = None
    if detail.startswith("certificate="):
        body = detail[len("certificate="):].strip("{}")
        certificate = universe.varset(body.replace(",", " "))
    elif detail.startswith("reason="):
        reason = detail[len("reason="):]
    elif detail != "-":
        raise ValueError(f"malformed verdict detail {detail!r}")
    return Verdict(VerdictKind(kind), trace, certificate, reason)


def _require_nontrivial(c: CIStatement) -> None:
    if c.trivial:
        raise ValueError(f"heuristics do not apply to the trivial statement {c}")


def heuristic1(antecedents: Sequence[CIStatement], c: CIStatement, variant: str = CONTAINMENT) -> Falsification:
    """Refute when the conditioning set of ``c`` is outside every antecedent lattice.

    ``containment`` only asks whether some antecedent has ``C' <= C``;
    ``full-meet`` runs the complete membership test of ``C`` and is strictly
    stronger.
    """
    _require_nontrivial(c)
    g = c.given.mask
    if variant == CONTAINMENT:
        covered = any(s.given.mask & ~g == 0 for s in antecedents if not s.trivial)
    elif variant == FULL_MEET:
        covered = any(lattice.member_mask(g, *s.masks) for s in antecedents)
    else:
        raise ValueError(f"unknown heuristic 1 variant {variant!r}")
    return UNKNOWN if covered else Falsification(True, c.given)


def heuristic2(antecedents: Sequence[CIStatement], c: CIStatement) -> Falsification:
    """Refute when some witness pair of ``c`` is a witness of no antecedent."""
    _require_nontrivial(c)
    known: set[int] = set()
    for s in antecedents:
        known.update(lattice.witness_masks(s))
    full = c.universe.full_mask
    for w in sorted(lattice.witness_masks(c), key=mask_sort_key):
        if w not in known:
            return Falsification(True, VarSet(c.universe, full & ~w))
    return UNKNOWN


def lattice_exclusion(antecedents: Sequence[CIStatement], c: CIStatement) -> Falsification:
    inc = lattice.includes(antecedents, c)
    if inc.holds:
        return UNKNOWN
    return Falsification(True, inc.certificate)


def decide(
    antecedents: Sequence[CIStatement],
    c: CIStatement,
    *,
    h1_variant: str = CONTAINMENT,
    full: bool = True,
) -> Verdict:
    """Classify an implication instance.

    Stages run in order: triviality of ``c``, heuristic 1, heuristic 2, the
    full lattice-exclusion test.  When the lattices are included the verdict
    is ``Valid`` only inside a regime where system A is sound (all statements
    saturated, or all antecedents stable); otherwise ``DerivableUnderA``.
    With ``full=False`` the exponential stage is skipped and unresolved
    instances come back ``Unknown``.
    """
    c.universe.check(*antecedents)
    if c.trivial:
        return Verdict(VerdictKind.VALID, "triviality", reason="triviality")
    # trivial antecedents hold in every measure and never cover lattice elements
    ante = [s for s in antecedents if not s.trivial]

    h1 = heuristic1(ante, c, h1_variant)
    if h1:
        return Verdict(VerdictKind.NOT_IMPLIED, "H1", h1.certificate)
    h2 = heuristic2(ante, c)
    if h2:
        return Verdict(VerdictKind.NOT_IMPLIED, "H2", h2.certificate)
    if not full:
        return Verdict(VerdictKind.UNKNOWN, "heuristics")
    ex = lattice_exclusion(ante, c)
    if ex:
        return Verdict(VerdictKind.NOT_IMPLIED, "full-criterion", ex.certificate)

    if c.saturated and all(s.saturated for s in ante):
        return Verdict(VerdictKind.VALID, "full-criterion", reason="saturated-regime")
    if c.universe.n <= inference.CLOSURE_CAP:
        sg = inference.closure(ante, inference.SEMI_GRAPHOID, universe=c.universe)
        if all(inference.is_stable(s, ante, sg_closure=sg) for s in ante):
            return Verdict(VerdictKind.VALID, "full-criterion", reason="stable-regime")
    return Verdict(VerdictKind.DERIVABLE_UNDER_A, "full-criterion")
