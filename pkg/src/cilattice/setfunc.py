"""Real-valued set functions and their Möbius densities.

Values are stored densely in a float array indexed by subset mask.  The
density of ``F`` is ``dF(X) = sum_{X <= U} (-1)^{|U|-|X|} F(U)`` and ``F`` is
recovered from ``dF`` by superset sums.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from . import lattice
from .core import CapExceeded, CIStatement, Universe, VarSet, all_statements, mask_sort_key, submasks

SETFUNC_CAP = 20
NAIVE_CAP = 12
SATISFACTION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SetFunction:
    """A total map from subsets of ``universe`` to reals."""

    universe: Universe
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.universe.n > SETFUNC_CAP:
            raise CapExceeded(f"set functions are capped at {SETFUNC_CAP} variables")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (1 << self.universe.n,):
            raise ValueError(f"expected {1 << self.universe.n} values, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("set function values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, u: Universe) -> "SetFunction":
        return cls(u, np.zeros(1 << u.n))

    @classmethod
    def from_mapping(cls, u: Universe, table: Mapping[VarSet, float]) -> "SetFunction":
        vals = np.zeros(1 << u.n)
        for U, v in table.items():
            u.check(U)
            vals[U.mask] = v
        return cls(u, vals)

    def __getitem__(self, U: VarSet) -> float:
        self.universe.check(U)
        return float(self.values[U.mask])

    def allclose(self, other: "SetFunction", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        return self.universe == other.universe and bool(np.allclose(self.values, other.values, rtol=rtol, atol=atol))


# A density is stored with the same shape; the alias documents intent.
DensityFunction = SetFunction


def _check_cap(u: Universe, cap: int = SETFUNC_CAP) -> None:
    if u.n > cap:
        raise CapExceeded(f"transform capped at {cap} variables, got {u.n}")


def _superset_transform(values: np.ndarray, n: int, sign: float) -> np.ndarray:
    # in-place over axis i: f[m] += sign * f[m | bit] for all m without bit i
    f = values.copy()
    size = 1 << n
    for i in range(n):
        step = 1 << i
        view = f.reshape(size >> (i + 1), 2, step)
        view[:, 0, :] += sign * view[:, 1, :]
    return f


def density(F: SetFunction, method: str = "fast") -> DensityFunction:
    """Möbius density of ``F``.

    ``method="fast"`` runs the O(n 2^n) butterfly; ``method="naive"`` evaluates
    the alternating superset sum directly in O(3^n).
    """
    u = F.universe
    if method == "fast":
        _check_cap(u)
        return SetFunction(u, _superset_transform(F.values, u.n, -1.0))
    if method == "naive":
        _check_cap(u, NAIVE_CAP)
        full = u.full_mask
        out = np.zeros(1 << u.n)
        for x in range(1 << u.n):
            total = 0.0
            for extra in submasks(full & ~x):
                total += (-1) ** extra.bit_count() * F.values[x | extra]
            out[x] = total
        return SetFunction(u, out)
    raise ValueError(f"unknown method {method!r}")


def from_density(D: DensityFunction, method: str = "fast") -> SetFunction:
    """Recover ``F`` from its density by superset sums."""
    u = D.universe
    if method == "fast":
        _check_cap(u)
        return SetFunction(u, _superset_transform(D.values, u.n, 1.0))
    if method == "naive":
        _check_cap(u, NAIVE_CAP)
        full = u.full_mask
        out = np.array([sum(D.values[x | e] for e in submasks(full & ~x)) for x in range(1 << u.n)], dtype=float)
        return SetFunction(u, out)
    raise ValueError(f"unknown method {method!r}")


def a_satisfies_def(F: SetFunction, c: CIStatement, tol: float = SATISFACTION_TOL) -> bool:
    """``F(C) + F(ABC) == F(AC) + F(BC)`` within ``tol``."""
    F.universe.check(c)
    a, b, g = c.masks
    v = F.values
    return abs(v[g] + v[a | b | g] - v[a | g] - v[b | g]) <= tol


def lattice_density_sum(D: DensityFunction, c: CIStatement) -> float:
    return float(sum(D.values[m] for m in lattice.enumerate_masks(c)))


def a_satisfies_density(F: SetFunction, c: CIStatement, tol: float = SATISFACTION_TOL, *, D: DensityFunction | None = None) -> bool:
    """Whether the density of ``F`` sums to zero over the semi-lattice of ``c``.

    Pass a precomputed density as ``D`` to avoid recomputing it per statement.
    """
    F.universe.check(c)
    if D is None:
        D = density(F)
    return abs(lattice_density_sum(D, c)) <= tol


def kronecker_density(V: VarSet) -> DensityFunction:
    u = V.universe
    vals = np.zeros(1 << u.n)
    vals[V.mask] = 1.0
    return SetFunction(u, vals)


def kronecker_induced(V: VarSet) -> SetFunction:
    """The function with density 1 at ``V`` and 0 elsewhere, i.e. ``X -> [X <= V]``."""
    u = V.universe
    _check_cap(u)
    masks = np.arange(1 << u.n)
    return SetFunction(u, ((masks & ~V.mask) == 0).astype(float))


def zero_density_violations(F: SetFunction, statements: Iterable[CIStatement] | None = None, tol: float = SATISFACTION_TOL):
    """Pairs ``(c, U)`` where ``F`` a-satisfies ``c`` but has non-zero density at ``U`` in the lattice of ``c``.

    An empty result means ``{F}`` has the zero-density property over the
    given statements (default: all canonical statements of the universe).
    """
    D = density(F)
    if statements is None:
        statements = all_statements(F.universe)
    out = []
    for c in statements:
        if not a_satisfies_density(F, c, tol, D=D):
            continue
        for m in sorted(lattice.enumerate_masks(c), key=mask_sort_key):
            if abs(D.values[m]) > tol:
                out.append((c, VarSet(F.universe, m)))
    return out


class CertificateError(AssertionError):
    """A constructed counter-model failed its own verification."""


def certificate_function(antecedents: Iterable[CIStatement], c: CIStatement) -> SetFunction | None:
    """Additive counter-model for an implication, or ``None`` if the lattices are included.

    Returns the Kronecker-induced function of the first uncovered element of
    the consequent's semi-lattice.  It a-satisfies every antecedent and
    violates ``c``; this is checked before returning.
    """
    antecedents = list(antecedents)
    inc = lattice.includes(antecedents, c)
    if inc.holds:
        return None
    F = kronecker_induced(inc.certificate)
    D = density(F)
    for s in antecedents:
        if not a_satisfies_density(F, s, D=D):
            raise CertificateError(f"certificate F_{inc.certificate} violates antecedent {s}")
    if a_satisfies_density(F, c, D=D):
        raise CertificateError(f"certificate F_{inc.certificate} satisfies consequent {c}")
    return F


def _fmt_value(v: float) -> str:
    return f"{float(v):.12g}"


def format_setfunction(F: SetFunction, *, skip_zero: bool = True) -> str:
    """Render ``<subset>: <value>`` lines in canonical subset order; ``-`` is the empty set."""
    lines = []
    for m in sorted(range(1 << F.universe.n), key=mask_sort_key):
        v = F.values[m]
        if skip_zero and v == 0:
            continue
        label = " ".join(VarSet(F.universe, m)) or "-"
        lines.append(f"{label}: {_fmt_value(v)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_setfunction(text: str, u: Universe) -> SetFunction:
    """Parse ``<subset>: <value>`` lines; unlisted subsets are 0."""
    vals = np.zeros(1 << u.n)
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label, sep, value = line.rpartition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected '<subset>: <value>'")
        label = label.strip()
        U = u.empty if label in ("-", "∅") else u.varset(label)
        if U.mask in seen:
            raise ValueError(f"line {lineno}: subset {U} listed twice")
        seen.add(U.mask)
        vals[U.mask] = float(value)
    return SetFunction(u, vals)
