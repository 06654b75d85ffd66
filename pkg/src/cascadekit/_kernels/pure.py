"""Pure-Python kernel backend on big-int bitsets.

A member's table column is one integer with bit ``g`` set when assignment
``g`` carries the member.  Subcube indicators are built by width doubling
and XOR-permutation by half-block swaps, so the per-assignment loop runs
inside CPython's big-int arithmetic instead of a Python-level loop.
"""

from __future__ import annotations

from functools import lru_cache


class PureTable:
    __slots__ = ("n_coords", "cols")

    def __init__(self, n_coords: int, cols: dict[int, int]):
        self.n_coords = n_coords
        self.cols = cols


@lru_cache(maxsize=None)
def _subcube_indicator(n_coords: int, dmask: int, vmask: int) -> int:
    """Bitset over all assignments of ``{g : g & dmask == vmask}``."""
    ind = 1
    for j in range(n_coords):
        width = 1 << j
        if not (dmask >> j) & 1:
            ind |= ind << width
        elif (vmask >> j) & 1:
            ind <<= width
    return ind


@lru_cache(maxsize=None)
def _low_half_mask(n_coords: int, b: int) -> int:
    """Bitset of assignments with coordinate ``b`` equal to 0."""
    block = 1 << b
    mask = (1 << block) - 1
    width = 2 * block
    total = 1 << n_coords
    while width < total:
        mask |= mask << width
        width <<= 1
    return mask


def _xor_permute(col: int, flip_mask: int, n_coords: int) -> int:
    """The column reindexed by g -> g XOR flip_mask."""
    out = col
    b = 0
    while flip_mask >> b:
        if (flip_mask >> b) & 1:
            block = 1 << b
            low = _low_half_mask(n_coords, b)
            out = ((out & low) << block) | ((out >> block) & low)
        b += 1
    return out


def build_table(n_coords: int, entries) -> PureTable:
    cols: dict[int, int] = {}
    for dmask, vmask, member_bit in entries:
        ind = _subcube_indicator(n_coords, dmask, vmask)
        cols[member_bit] = cols.get(member_bit, 0) | ind
    return PureTable(n_coords, {m: c for m, c in cols.items() if c})


def eval_at(table: PureTable, g: int) -> int:
    out = 0
    for member_bit, col in table.cols.items():
        if (col >> g) & 1:
            out |= member_bit
    return out


def tables_equal(t1: PureTable, t2: PureTable) -> bool:
    return t1.n_coords == t2.n_coords and t1.cols == t2.cols


def flip_violation(table: PureTable, flip_mask: int) -> int:
    if flip_mask < 0 or flip_mask >> table.n_coords:
        raise IndexError("flip mask outside the table")
    best = -1
    for col in table.cols.values():
        diff = col ^ _xor_permute(col, flip_mask, table.n_coords)
        if diff:
            g = (diff & -diff).bit_length() - 1
            if best < 0 or g < best:
                best = g
    return best


def project_member(table: PureTable, member_bit: int, proj_mask: int) -> tuple[int, ...]:
    col = 0
    for m, c in table.cols.items():
        if m & member_bit:
            col |= c
    seen = set()
    while col:
        low = col & -col
        g = low.bit_length() - 1
        seen.add(g & proj_mask)
        col ^= low
    return tuple(sorted(seen))


def subcube_member_summary(table: PureTable, member_bit: int, dmask: int, vmask: int) -> int:
    if dmask < 0 or dmask >> table.n_coords or vmask & ~dmask:
        raise IndexError("subcube masks outside the table")
    ind = _subcube_indicator(table.n_coords, dmask, vmask)
    col = 0
    for m, c in table.cols.items():
        if m & member_bit:
            col |= c
    hit = col & ind
    if hit == 0:
        return 0
    if hit == ind:
        return 1
    return 2


def solve_unit_triangular_all(cols: list[int], n: int) -> list[int]:
    out = []
    for target in range(1 << n):
        residual = target
        coeffs = 0
        for j in range(n - 1, -1, -1):
            if (residual >> j) & 1:
                coeffs |= 1 << j
                residual ^= cols[j]
        assert residual == 0
        out.append(coeffs)
    return out
