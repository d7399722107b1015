"""Variable universes, variable sets and CI statements.

A :class:`VarSet` is a bitmask over a :class:`Universe`; bit ``i`` stands for
the ``i``-th variable name.  A :class:`CIStatement` ``I(A, B | C)`` is stored
in canonical form, so the two orderings of its independent sides compare
equal.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_VARIABLES = 64

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")
_SPLIT_RE = re.compile(r"[\s,]+")
_STATEMENT_RE = re.compile(r"^\s*I\s*\((?P<body>[^()]*)\)\s*$")


class CIError(ValueError):
    """Base class for input errors."""


class ParseError(CIError):
    pass


class DuplicateVariable(CIError):
    pass


class UnknownVariable(CIError):
    pass


class NonDisjoint(CIError):
    pass


class UniverseMismatch(CIError):
    pass


class CapExceeded(CIError):
    """An exponential enumeration was requested beyond its documented cap."""


@dataclass(frozen=True)
class Universe:
    """An ordered, finite set of variable names."""

    names: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ParseError("a universe needs at least one variable")
        if len(names) > MAX_VARIABLES:
            raise CapExceeded(f"at most {MAX_VARIABLES} variables are supported, got {len(names)}")
        seen: set[str] = set()
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ParseError(f"invalid variable name {name!r}")
            if name in seen:
                raise DuplicateVariable(f"duplicate variable {name!r}")
            seen.add(name)
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})

    @classmethod
    def of_size(cls, n: int) -> "Universe":
        """Universe ``a, b, c, ...`` (or ``x0, x1, ...`` past 26 variables)."""
        if n <= 26:
            return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:n]))
        return cls(tuple(f"x{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    @property
    def empty(self) -> "VarSet":
        return VarSet(self, 0)

    @property
    def full(self) -> "VarSet":
        return VarSet(self, self.full_mask)

    @property
    def single_char(self) -> bool:
        return all(len(name) == 1 for name in self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def varset(self, spec: "str | Iterable[str] | VarSet" = ()) -> "VarSet":
        """Build a VarSet from names, a name list string, or another VarSet."""
        if isinstance(spec, VarSet):
            self.check(spec)
            return spec
        if isinstance(spec, str):
            spec = self._tokens(spec)
        mask = 0
        for name in spec:
            mask |= 1 << self.index(name)
        return VarSet(self, mask)

    def _tokens(self, text: str) -> list[str]:
        tokens = [t for t in _SPLIT_RE.split(text.strip()) if t]
        out: list[str] = []
        for tok in tokens:
            if tok in self._index:
                out.append(tok)
            elif self.single_char and len(tok) > 1 and all(ch in self._index for ch in tok):
                # concatenated names, e.g. "bc" for {b, c}
                out.extend(tok)
            else:
                raise UnknownVariable(f"unknown variable {tok!r}")
        return out

    def check(self, *items: "VarSet | CIStatement") -> None:
        for item in items:
            other = item.universe
            if other is not self and other != self:
                raise UniverseMismatch("objects belong to different universes")

    def subsets(self) -> Iterator["VarSet"]:
        """All subsets in canonical order (cardinality, then position-lexicographic)."""
        for mask in sorted(range(1 << self.n), key=mask_sort_key):
            yield VarSet(self, mask)

    def __str__(self) -> str:
        return " ".join(self.names)


def mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Order subsets by cardinality, then lexicographically by member positions."""
    idx = mask_indices(mask)
    return (len(idx), idx)


def submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class VarSet:
    """Immutable subset of a universe."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe: Universe, mask: int) -> None:
        if mask < 0 or mask > universe.full_mask:
            raise ValueError(f"mask {mask:#x} out of range for universe of size {universe.n}")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VarSet is immutable")

    def _other(self, other: "VarSet") -> int:
        if not isinstance(other, VarSet):
            return NotImplemented  # type: ignore[return-value]
        self.universe.check(other)
        return other.mask

    def __or__(self, other: "VarSet") -> "VarSet":
        return VarSet(self.universe, self.mask | self._other(other))

    def __and__(self, other: "VarSet") -> "VarSet":
        return VarSet(self.universe, self.mask & self._other(other))

    def __sub__(self, other: "VarSet") -> "VarSet":
        return VarSet(self.universe, self.mask & ~self._other(other))

    def __invert__(self) -> "VarSet":
        return VarSet(self.universe, self.universe.full_mask & ~self.mask)

    complement = __invert__

    def __le__(self, other: "VarSet") -> bool:
        return self.mask & ~self._other(other) == 0

    def __lt__(self, other: "VarSet") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "VarSet") -> bool:
        return other <= self

    def __gt__(self, other: "VarSet") -> bool:
        return other < self

    def issubset(self, other: "VarSet") -> bool:
        return self <= other

    def isdisjoint(self, other: "VarSet") -> bool:
        return self.mask & self._other(other) == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VarSet):
            return NotImplemented
        return self.mask == other.mask and self.universe == other.universe

    def __hash__(self) -> int:
        return hash((self.universe.names, self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[str]:
        names = self.universe.names
        return (names[i] for i in mask_indices(self.mask))

    def __contains__(self, name: str) -> bool:
        return bool(self.mask >> self.universe.index(name) & 1)

    @property
    def indices(self) -> tuple[int, ...]:
        return mask_indices(self.mask)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return mask_sort_key(self.mask)

    def names(self) -> tuple[str, ...]:
        return tuple(self)

    def compact(self, empty: str = "∅") -> str:
        """Compact label: ``ab`` for single-character names, else ``a_1 b_2``."""
        if not self.mask:
            return empty
        sep = "" if self.universe.single_char else " "
        return sep.join(self)

    def __str__(self) -> str:
        return "{" + ",".join(self) + "}"

    def __repr__(self) -> str:
        return f"VarSet({str(self)})"


@dataclass(frozen=True)
class CIStatement:
    """The statement ``I(left, right | given)``.

    Sides are stored with the lexicographically smaller member-position tuple
    first, so ``I(A, B|C) == I(B, A|C)``.
    """

    left: VarSet
    right: VarSet
    given: VarSet

    def __post_init__(self) -> None:
        u = self.left.universe
        u.check(self.right, self.given)
        if self.left.mask & self.right.mask or self.left.mask & self.given.mask or self.right.mask & self.given.mask:
            raise NonDisjoint(
                f"sides of I({self.left}, {self.right} | {self.given}) are not pairwise disjoint"
            )
        if self.right.indices < self.left.indices:
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)

    @classmethod
    def from_masks(cls, universe: Universe, a: int, b: int, c: int) -> "CIStatement":
        return cls(VarSet(universe, a), VarSet(universe, b), VarSet(universe, c))

    @property
    def universe(self) -> Universe:
        return self.left.universe

    @property
    def masks(self) -> tuple[int, int, int]:
        return (self.left.mask, self.right.mask, self.given.mask)

    @property
    def trivial(self) -> bool:
        return not self.left or not self.right

    @property
    def saturated(self) -> bool:
        return (self.left.mask | self.right.mask | self.given.mask) == self.universe.full_mask

    @property
    def elementary(self) -> bool:
        return len(self.left) == 1 and len(self.right) == 1

    @property
    def sort_key(self) -> tuple:
        return (self.given.sort_key, self.left.sort_key, self.right.sort_key)

    def __lt__(self, other: "CIStatement") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return format_statement(self)

    def __repr__(self) -> str:
        return f"CIStatement({format_statement(self)!r})"


def parse_universe(text: str) -> Universe:
    """Parse a whitespace- or comma-separated list of variable names."""
    names = [t for t in _SPLIT_RE.split(text.strip()) if t]
    return Universe(tuple(names))


def parse_statement(text: str, u: Universe) -> CIStatement:
    """Parse ``I(<vars>, <vars> | <vars>)``; the ``| <vars>`` part is optional."""
    m = _STATEMENT_RE.match(text)
    if not m:
        raise ParseError(f"malformed statement {text!r}")
    body = m.group("body")
    if body.count("|") > 1:
        raise ParseError(f"malformed statement {text!r}: more than one '|'")
    sides, _, given = body.partition("|")
    if sides.count(",") != 1:
        # names within a side are space separated; the comma splits the sides
        raise ParseError(f"malformed statement {text!r}: expected exactly two sides separated by ','")
    left, right = sides.split(",")
    return CIStatement(u.varset(left), u.varset(right), u.varset(given))


def _side(vs: VarSet) -> str:
    return " ".join(vs)


def format_statement(c: CIStatement) -> str:
    head = f"I({_side(c.left)}, {_side(c.right)}"
    if c.given:
        return f"{head} | {_side(c.given)})"
    return head + ")"


def classify(c: CIStatement) -> dict[str, bool]:
    return {"trivial": c.trivial, "saturated": c.saturated, "elementary": c.elementary}


def all_statements(u: Universe, *, include_trivial: bool = False) -> list[CIStatement]:
    """Every canonical CI statement over ``u`` in canonical order."""
    if u.n > 8:
        raise CapExceeded("statement enumeration is capped at 8 variables")
    seen: set[tuple[int, int, int]] = set()
    out = []
    # each variable goes to left, right, given, or nowhere
    for labels in itertools.product(range(4), repeat=u.n):
        a = b = c = 0
        for i, lab in enumerate(labels):
            if lab == 0:
                a |= 1 << i
            elif lab == 1:
                b |= 1 << i
            elif lab == 2:
                c |= 1 << i
        if not include_trivial and (a == 0 or b == 0):
            continue
        st = CIStatement.from_masks(u, a, b, c)
        if st.masks not in seen:
            seen.add(st.masks)
            out.append(st)
    out.sort(key=lambda s: s.sort_key)
    return out


def elementary_statements(u: Universe) -> list[CIStatement]:
    """All ``n(n-1)/2 * 2^(n-2)`` elementary statements ``I(a, b | C)``."""
    out = []
    for i, j in itertools.combinations(range(u.n), 2):
        rest = u.full_mask & ~(1 << i | 1 << j)
        for c in submasks(rest):
            out.append(CIStatement.from_masks(u, 1 << i, 1 << j, c))
    out.sort(key=lambda s: s.sort_key)
    return out


@dataclass
class Instance:
    """An implication problem: antecedents and a single query over one universe."""

    universe: Universe
    given: list[CIStatement]
    query: CIStatement | None = None


def parse_instance(text: str) -> Instance:
    """Parse the line-oriented instance format.

    ``universe: <vars>`` must come first; then any number of
    ``given: <statement>`` lines and at most one ``query: <statement>``.
    ``#`` starts a comment.
    """
    universe: Universe | None = None
    given: list[CIStatement] = []
    query: CIStatement | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise ParseError(f"line {lineno}: expected '<key>: <value>'")
        if key == "universe":
            if universe is not None:
                raise ParseError(f"line {lineno}: universe declared twice")
            universe = parse_universe(value)
            continue
        if universe is None:
            raise ParseError(f"line {lineno}: 'universe:' must precede statements")
        if key == "given":
            given.append(parse_statement(value, universe))
        elif key == "query":
            if query is not None:
                raise ParseError(f"line {lineno}: more than one query")
            query = parse_statement(value, universe)
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if universe is None:
        raise ParseError("instance has no 'universe:' line")
    return Instance(universe, given, query)


def format_instance(inst: Instance) -> str:
    lines = [f"universe: {inst.universe}"]
    lines += [f"given: {format_statement(c)}" for c in inst.given]
    if inst.query is not None:
        lines.append(f"query: {format_statement(inst.query)}")
    return "\n".join(lines) + "\n"
