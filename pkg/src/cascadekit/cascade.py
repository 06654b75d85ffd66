"""Finite conditions, toggle sets, and cascade automorphisms.

A condition is a finite partial 0/1 assignment on (node, row, bit)
coordinates.  A cascade generator toggles one row along a set of bit
indices and repeats the same toggle on the matching row of every immediate
successor of its node.  Products of generators form an abelian group of
exponent two, so an automorphism is stored in normal form: the accumulated
toggle set per row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import DomainError, ParseError, PreconditionError
from .f2linalg import F2Vector, solve_star_span
from .forest import NodeId, PredecessorForest, Window, rho_closure


class Coordinate(NamedTuple):
    node: NodeId
    row: int
    bit: int


@dataclass(frozen=True)
class ToggleSet:
    """A finite or cofinite set of bit indices.

    ``exceptions`` holds the set itself when finite and the complement when
    cofinite.  Symmetric difference works uniformly: exceptions combine by
    symmetric difference and the cofinite flags add mod 2.
    """

    cofinite: bool
    exceptions: frozenset[int]

    def __post_init__(self):
        for n in self.exceptions:
            if n < 0:
                raise DomainError("bit indices must be nonnegative")

    @classmethod
    def finite(cls, bits: Iterable[int]) -> "ToggleSet":
        return cls(False, frozenset(bits))

    @classmethod
    def cofinite_excluding(cls, bits: Iterable[int]) -> "ToggleSet":
        return cls(True, frozenset(bits))

    @classmethod
    def empty(cls) -> "ToggleSet":
        return cls(False, frozenset())

    def __contains__(self, n: int) -> bool:
        return self.cofinite != (n in self.exceptions)

    def __xor__(self, other: "ToggleSet") -> "ToggleSet":
        return ToggleSet(
            self.cofinite != other.cofinite, self.exceptions ^ other.exceptions
        )

    def is_empty(self) -> bool:
        return not self.cofinite and not self.exceptions

    def disjoint_from(self, bits: Iterable[int]) -> bool:
        return all(n not in self for n in bits)

    def mask_below(self, B: int) -> int:
        """Members among ``0..B-1`` as a bitmask; how the set acts on a truncated box."""
        mask = 0
        for n in range(B):
            if n in self:
                mask |= 1 << n
        return mask

    def serialize(self) -> str:
        inner = ",".join(str(n) for n in sorted(self.exceptions))
        return ("cofin{%s}" if self.cofinite else "fin{%s}") % inner


def parse_toggle_set(text: str) -> ToggleSet:
    """Parse the textual form ``fin{1,2}`` / ``cofin{0}``."""
    text = text.strip()
    for prefix, cofinite in (("fin", False), ("cofin", True)):
        if text.startswith(prefix + "{") and text.endswith("}"):
            body = text[len(prefix) + 1 : -1].strip()
            try:
                bits = frozenset(int(b) for b in body.split(",") if b.strip())
            except ValueError:
                raise ParseError(f"bad toggle set {text!r}") from None
            return ToggleSet(cofinite, bits)
    raise ParseError(f"bad toggle set {text!r}")


@dataclass(frozen=True)
class Condition:
    """A finite partial 0/1 function on coordinates, stored canonically sorted."""

    entries: tuple[tuple[Coordinate, int], ...]

    def __post_init__(self):
        seen = set()
        for coord, value in self.entries:
            if value not in (0, 1):
                raise DomainError(f"value at {coord} must be 0 or 1")
            if coord.node < 0 or coord.row < 0 or coord.bit < 0:
                raise DomainError(f"negative coordinate {coord}")
            if coord in seen:
                raise DomainError(f"duplicate coordinate {coord}")
            seen.add(coord)
        canonical = tuple(sorted(self.entries))
        if canonical != self.entries:
            object.__setattr__(self, "entries", canonical)

    @classmethod
    def from_map(cls, mapping: Mapping[tuple[int, int, int], int]) -> "Condition":
        return cls(tuple((Coordinate(*c), v) for c, v in mapping.items()))

    @classmethod
    def empty(cls) -> "Condition":
        return cls(())

    def as_dict(self) -> dict[Coordinate, int]:
        return dict(self.entries)

    def domain(self) -> frozenset[Coordinate]:
        return frozenset(c for c, _ in self.entries)

    def value(self, coord: Coordinate) -> int:
        for c, v in self.entries:
            if c == coord:
                return v
        raise DomainError(f"condition undefined at {coord}")

    def defined_at(self, coord: Coordinate) -> bool:
        return any(c == coord for c, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def node_support(self) -> frozenset[int]:
        return frozenset(c.node for c, _ in self.entries)

    def restrict_to_nodes(self, nodes) -> "Condition":
        node_set = set(nodes)
        return Condition(tuple((c, v) for c, v in self.entries if c.node in node_set))

    def restrict_to_coords(self, coords) -> "Condition":
        coord_set = set(coords)
        return Condition(tuple((c, v) for c, v in self.entries if c in coord_set))

    def extends(self, other: "Condition") -> bool:
        """True when this condition is defined and equal wherever ``other`` is."""
        mine = self.as_dict()
        return all(mine.get(c) == v for c, v in other.entries)

    def merge(self, other: "Condition") -> "Condition":
        """Union of two compatible conditions; disagreement is a domain error."""
        out = self.as_dict()
        for c, v in other.entries:
            if out.setdefault(c, v) != v:
                raise DomainError(f"conditions disagree at {c}")
        return Condition(tuple(out.items()))


@dataclass(frozen=True)
class Packet:
    """A condition whose node support is certified by a closed superset.

    The certificate is the closure of the mentioned nodes; it may strictly
    contain them (closing adds ancestors, never coordinates).
    """

    condition: Condition
    support: frozenset[int]

    def __post_init__(self):
        if not self.condition.node_support() <= self.support:
            raise DomainError("support certificate misses mentioned nodes")

    @classmethod
    def of(cls, condition: Condition, forest: PredecessorForest) -> "Packet":
        closed = rho_closure(forest, condition.node_support())
        return cls(condition, closed.nodes)


@dataclass(frozen=True)
class CascadeAutomorphism:
    """Normal form of a product of cascade generators.

    ``row_toggles`` maps (node, row) to the accumulated toggle set, with
    empty toggles omitted.  Because the group is abelian of exponent two
    this form is canonical, so equality is plain comparison.
    """

    forest: PredecessorForest
    row_toggles: tuple[tuple[tuple[int, int], ToggleSet], ...]
    _lookup: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        keys = [k for k, _ in self.row_toggles]
        if len(set(keys)) != len(keys):
            raise DomainError("duplicate row in toggle map")
        for (node, row), ts in self.row_toggles:
            self.forest.check_node(node)
            if row < 0:
                raise DomainError("negative row index")
            if ts.is_empty():
                raise DomainError("empty toggle entries must be omitted")
        canonical = tuple(sorted(self.row_toggles, key=lambda kv: kv[0]))
        if canonical != self.row_toggles:
            object.__setattr__(self, "row_toggles", canonical)
        object.__setattr__(self, "_lookup", dict(self.row_toggles))

    def toggle_at(self, node: int, row: int) -> ToggleSet:
        return self._lookup.get((node, row), ToggleSet.empty())

    def is_identity(self) -> bool:
        return not self.row_toggles

    def touched_nodes(self) -> frozenset[int]:
        return frozenset(node for (node, _), _ in self.row_toggles)


def identity(forest: PredecessorForest) -> CascadeAutomorphism:
    return CascadeAutomorphism(forest, ())


def generator(
    forest: PredecessorForest, xi: NodeId, row: int, s: ToggleSet
) -> CascadeAutomorphism:
    """The basic automorphism toggling row (xi, row) and its successor rows along s."""
    forest.check_node(xi)
    if row < 0:
        raise DomainError("negative row index")
    if s.is_empty():
        raise DomainError("a generator needs a nonempty toggle set")
    toggles = [((xi, row), s)]
    for eta in sorted(forest._children[xi]):
        toggles.append(((eta, row), s))
    return CascadeAutomorphism(forest, tuple(toggles))


def compose(
    tau1: CascadeAutomorphism, tau2: CascadeAutomorphism
) -> CascadeAutomorphism:
    """Pointwise XOR of the two toggle maps; commutative, and self-inverse."""
    if tau1.forest != tau2.forest:
        raise DomainError("automorphisms act on different forests")
    merged: dict[tuple[int, int], ToggleSet] = dict(tau1.row_toggles)
    for key, ts in tau2.row_toggles:
        combined = merged.get(key, ToggleSet.empty()) ^ ts
        if combined.is_empty():
            merged.pop(key, None)
        else:
            merged[key] = combined
    return CascadeAutomorphism(tau1.forest, tuple(merged.items()))


def compose_all(
    forest: PredecessorForest, taus: Iterable[CascadeAutomorphism]
) -> CascadeAutomorphism:
    acc = identity(forest)
    for tau in taus:
        acc = compose(acc, tau)
    return acc


def apply(tau: CascadeAutomorphism, q: Condition) -> Condition:
    """Act on a condition: flip each entry whose bit lies in its row's toggle set."""
    out = []
    for coord, value in q.entries:
        if coord.bit in tau.toggle_at(coord.node, coord.row):
            value ^= 1
        out.append((coord, value))
    return Condition(tuple(out))


def shield_set(
    q: Condition, beta: NodeId, row: int, forest: PredecessorForest
) -> frozenset[int]:
    """Bits at which ``q`` constrains row (beta, row) or a successor's matching row.

    Any toggle set disjoint from this finite set leaves ``q`` fixed.
    """
    forest.check_node(beta)
    nodes = {beta} | set(forest._children[beta])
    return frozenset(
        c.bit for c, _ in q.entries if c.row == row and c.node in nodes
    )


def fixes_rows_over(tau: CascadeAutomorphism, A: Window) -> bool:
    """True when the automorphism leaves every row over the window untouched."""
    if tau.forest != A.forest:
        raise DomainError("automorphism and window use different forests")
    return all(node not in A.nodes for (node, _), _ in tau.row_toggles)


def pad_common_domain(p: Condition, q: Condition) -> tuple[Condition, Condition]:
    """Extend both conditions by zeros so they share the union of their domains."""
    union = p.domain() | q.domain()
    p_map = p.as_dict()
    q_map = q.as_dict()
    p_out = tuple((c, p_map.get(c, 0)) for c in union)
    q_out = tuple((c, q_map.get(c, 0)) for c in union)
    return Condition(p_out), Condition(q_out)


def transport(p: Condition, q: Condition, A: Window) -> CascadeAutomorphism:
    """An automorphism fixing all rows over ``A`` that carries p to q after padding.

    Requires p and q to agree on every coordinate over ``A`` once padded.
    The difference pattern is solved slice by slice (one row-bit pair at a
    time) inside the closure of the non-A mentioned nodes; the closure may
    reach into ``A``, but the solved coefficients over ``A`` provably vanish
    because the difference does, and the result is asserted rather than
    assumed.
    """
    forest = A.forest
    p_pad, q_pad = pad_common_domain(p, q)
    diff = {
        c: pv ^ q_pad.value(c) for c, pv in p_pad.entries if pv != q_pad.value(c)
    }
    for c in diff:
        if c.node in A.nodes:
            raise PreconditionError(f"conditions disagree over the window at {c}")
    if not diff:
        return identity(forest)
    mentioned_off_A = {c.node for c in p_pad.domain()} - A.nodes
    K = rho_closure(forest, mentioned_off_A)
    slices: dict[tuple[int, int], set[int]] = {}
    for c in diff:
        slices.setdefault((c.row, c.bit), set()).add(c.node)
    pi = identity(forest)
    for (row, bit), nodes in sorted(slices.items()):
        target = F2Vector.from_nodes(K, nodes)
        coeffs = solve_star_span(K, target)
        assert not coeffs & A.nodes, "solved coefficients reached the fixed window"
        for xi in sorted(coeffs):
            pi = compose(pi, generator(forest, xi, row, ToggleSet.finite({bit})))
    assert fixes_rows_over(pi, A)
    assert apply(pi, p_pad) == q_pad
    return pi


def format_condition(q: Condition, size: int, rows: int, bits: int) -> str:
    """Text form: header ``box N R B``, then one ``node row bit value`` line each."""
    lines = [f"box {size} {rows} {bits}"]
    lines.extend(f"{c.node} {c.row} {c.bit} {v}" for c, v in q.entries)
    return "\n".join(lines) + "\n"


def parse_condition(text: str) -> tuple[tuple[int, int, int], Condition]:
    """Inverse of :func:`format_condition`; returns ((N, R, B), condition)."""
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        raise ParseError("empty condition file", 1)
    head = lines[idx].split()
    if len(head) != 4 or head[0] != "box":
        raise ParseError(f"expected 'box N R B' header, got {lines[idx]!r}", idx + 1)
    try:
        size, rows, bits = int(head[1]), int(head[2]), int(head[3])
    except ValueError:
        raise ParseError(f"non-integer box dimensions in {lines[idx]!r}", idx + 1) from None
    entries = []
    for lineno in range(idx + 1, len(lines)):
        raw = lines[lineno].strip()
        if not raw:
            continue
        parts = raw.split()
        if len(parts) != 4:
            raise ParseError(f"expected 'node row bit value', got {raw!r}", lineno + 1)
        try:
            node, row, bit, value = (int(x) for x in parts)
        except ValueError:
            raise ParseError(f"non-integer entry in {raw!r}", lineno + 1) from None
        if not (0 <= node < size and 0 <= row < rows and 0 <= bit < bits):
            raise ParseError(f"coordinate outside the declared box: {raw!r}", lineno + 1)
        entries.append((Coordinate(node, row, bit), value))
    try:
        return (size, rows, bits), Condition(tuple(entries))
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
