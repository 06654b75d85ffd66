"""Equality patterns, the complement-pair swap mechanism, and selectors.

The swap witness packages the flip construction: fresh nodes beside a
support window, a cofinite toggle avoiding the shield of a condition, and
machine-checked certificates that the condition is fixed, the support rows
are fixed, and the two-row equality pattern flips exactly on the toggle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .cascade import (
    CascadeAutomorphism,
    Condition,
    Coordinate,
    ToggleSet,
    apply,
    generator,
    fixes_rows_over,
    shield_set,
)
from .errors import CapacityError, DomainError, PreconditionError
from .forest import NodeId, Window, fresh_separation
from .names import (
    Assignment,
    CoordinateBox,
    EXHAUSTIVE_COORD_LIMIT,
    SAMPLE_COUNT,
    automorphism_flip_mask,
)


@dataclass(frozen=True)
class EqualityPattern:
    """Agreement bits of two rows over a truncated bit window.

    Bit n is 1 when the rows agree at n; rendered low bit first.
    """

    window_bits: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.window_bits:
            raise DomainError("pattern bits exceed the window")

    def as_string(self) -> str:
        return "".join(str((self.bits >> n) & 1) for n in range(self.window_bits))


def equality_pattern(
    g: Assignment, beta: NodeId, gamma: NodeId, row: int
) -> EqualityPattern:
    """Pattern of bit positions where the two rows of ``g`` agree."""
    if beta == gamma:
        raise DomainError("equality pattern needs two distinct rows")
    box = g.box
    B = box.bits
    row_mask = (1 << B) - 1
    beta_bits = (g.value_bits >> box.index(Coordinate(beta, row, 0))) & row_mask
    gamma_bits = (g.value_bits >> box.index(Coordinate(gamma, row, 0))) & row_mask
    return EqualityPattern(B, ~(beta_bits ^ gamma_bits) & row_mask)


@dataclass(frozen=True)
class SwapCertificate:
    condition_fixed: bool
    support_fixed: bool
    pattern_flip: bool
    exhaustive: bool
    assignments_checked: int

    def all_pass(self) -> bool:
        return self.condition_fixed and self.support_fixed and self.pattern_flip


@dataclass(frozen=True)
class SwapWitness:
    beta: NodeId
    gamma: NodeId
    row: int
    shield: frozenset[int]
    toggle: ToggleSet
    certificate: SwapCertificate

    def __post_init__(self):
        if not self.toggle.cofinite:
            raise DomainError("swap toggles must be cofinite")
        if not self.toggle.disjoint_from(self.shield):
            raise DomainError("toggle set meets the shield")


def swap_witness(
    q: Condition, A: Window, row: int, box: CoordinateBox, seed: int = 0
) -> SwapWitness:
    """Build and certify the complement-flip automorphism beside a support window.

    Fresh nodes (beta, gamma) are drawn from the box; the toggle is the
    largest cofinite set avoiding the shield of ``q`` at (beta, row).  The
    three certificates are recomputed, not assumed.  Raises
    :class:`CapacityError` when the box has no two fresh nodes left.
    """
    forest = box.forest
    if A.forest != forest:
        raise DomainError("support window and box use different forests")
    if not 0 <= row < box.rows:
        raise DomainError(f"row {row} outside the box")
    beta, gamma = fresh_separation(forest, A, pool=box.window.nodes)
    shield = shield_set(q, beta, row, forest)
    toggle = ToggleSet.cofinite_excluding(shield)
    tau = generator(forest, beta, row, toggle)
    condition_fixed = apply(tau, q) == q
    support_fixed = fixes_rows_over(tau, A)
    flip_mask = automorphism_flip_mask(tau, box)
    expected = toggle.mask_below(box.bits)
    n = box.n_coords
    if n <= EXHAUSTIVE_COORD_LIMIT:
        samples = range(1 << n)
        exhaustive = True
    else:
        rng = random.Random(seed)
        samples = [rng.getrandbits(n) for _ in range(SAMPLE_COUNT)]
        exhaustive = False
    pattern_flip = True
    checked = 0
    for bits in samples:
        checked += 1
        g = Assignment(box, bits)
        before = equality_pattern(g, beta, gamma, row)
        after = equality_pattern(g.flip(flip_mask), beta, gamma, row)
        if after.bits != before.bits ^ expected:
            pattern_flip = False
            break
    cert = SwapCertificate(condition_fixed, support_fixed, pattern_flip, exhaustive, checked)
    return SwapWitness(beta, gamma, row, shield, toggle, cert)


def both_rows_toggled_invariance(
    tau: CascadeAutomorphism, beta: NodeId, gamma: NodeId, row: int, box: CoordinateBox
) -> bool:
    """Check that a toggle hitting both rows identically fixes their pattern."""
    if tau.toggle_at(beta, row) != tau.toggle_at(gamma, row):
        raise PreconditionError("automorphism does not toggle the two rows alike")
    flip_mask = automorphism_flip_mask(tau, box)
    for bits in range(1 << box.n_coords):
        g = Assignment(box, bits)
        before = equality_pattern(g, beta, gamma, row)
        after = equality_pattern(g.flip(flip_mask), beta, gamma, row)
        if before != after:
            return False
    return True


def format_witness(w: SwapWitness) -> str:
    cert = w.certificate
    scale = "exhaustive" if cert.exhaustive else "sampled"

    def mark(ok):
        return "PASS" if ok else "FAIL"

    lines = [
        "swap witness",
        f"  beta: {w.beta}",
        f"  gamma: {w.gamma}",
        f"  row: {w.row}",
        "  shield: {%s}" % ",".join(str(n) for n in sorted(w.shield)),
        f"  toggle: {w.toggle.serialize()}",
        f"  certificate condition-fixed: {mark(cert.condition_fixed)}",
        f"  certificate support-fixed: {mark(cert.support_fixed)}",
        f"  certificate pattern-flip: {mark(cert.pattern_flip)}"
        f" ({scale}, {cert.assignments_checked} assignments)",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TraceProfile:
    """A subset of a fixed window, compared by its characteristic code."""

    window: Window
    nodes: frozenset[int]

    def __post_init__(self):
        if not self.nodes <= self.window.nodes:
            raise DomainError("profile nodes must lie inside the window")

    def code(self) -> tuple[int, ...]:
        return tuple(1 if xi in self.nodes else 0 for xi in self.window.ordered)


def canonical_selector(profiles: list[TraceProfile]) -> int:
    """Index of the profile with lexicographically least characteristic code.

    The three profiles must share one window and be pairwise distinct;
    permuting the input list always selects the same set member.
    """
    if len(profiles) != 3:
        raise DomainError("selector expects exactly three profiles")
    window = profiles[0].window
    if any(p.window != window for p in profiles):
        raise DomainError("profiles lie in different windows")
    node_sets = {p.nodes for p in profiles}
    if len(node_sets) != 3:
        raise PreconditionError("profiles are not trace-separated (duplicates present)")
    codes = [p.code() for p in profiles]
    return codes.index(min(codes))


@dataclass(frozen=True)
class IndexedFamily:
    """Finitely many nonempty finite sets of opaque ids, keyed by an index set."""

    sets: tuple[tuple[object, frozenset], ...]

    def __post_init__(self):
        seen = set()
        for t, elems in self.sets:
            if t in seen:
                raise DomainError(f"duplicate index {t!r}")
            seen.add(t)
            if not elems:
                raise DomainError(f"the set at index {t!r} is empty")

    @classmethod
    def of(cls, mapping: Mapping) -> "IndexedFamily":
        return cls(tuple((t, frozenset(elems)) for t, elems in mapping.items()))

    def indices(self) -> tuple:
        return tuple(t for t, _ in self.sets)

    def set_at(self, t) -> frozenset:
        for key, elems in self.sets:
            if key == t:
                return elems
        raise DomainError(f"unknown index {t!r}")


def lift_choice(family: IndexedFamily, k: int, f: Mapping) -> dict:
    """Project a choice on the k-fold product family back to the family itself.

    ``f`` maps each index t to a pair (a, j) with a in the set at t and
    j < k; the result maps t to a.
    """
    if k < 1:
        raise DomainError("product arity must be positive")
    out = {}
    for t, elems in family.sets:
        if t not in f:
            raise DomainError(f"choice map undefined at index {t!r}")
        pair = f[t]
        if not isinstance(pair, tuple) or len(pair) != 2:
            raise DomainError(f"choice at {t!r} is not a pair")
        a, j = pair
        if a not in elems or not isinstance(j, int) or not 0 <= j < k:
            raise DomainError(f"choice {pair!r} outside the product set at {t!r}")
        out[t] = a
    return out
