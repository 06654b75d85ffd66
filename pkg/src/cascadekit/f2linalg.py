"""F2 vectors and star-incidence matrices over window nodes.

The star of a node inside a window is the node together with its immediate
successors that fall in the window.  Listing the window child-before-parent
makes the star-incidence matrix unit upper triangular, so the star vectors
form a basis and every target pattern is solvable by back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .forest import NodeId, Window, is_rho_closed


@dataclass(frozen=True)
class F2Vector:
    """A 0/1 vector indexed by a window, packed as an int bitset.

    Bit ``j`` is the entry at ``window.ordered[j]``.  Arithmetic across
    different windows is rejected rather than silently misaligned.
    """

    window: Window
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> len(self.window):
            raise DomainError("vector bits exceed the window length")

    @classmethod
    def zero(cls, window: Window) -> "F2Vector":
        return cls(window, 0)

    @classmethod
    def from_nodes(cls, window: Window, nodes) -> "F2Vector":
        bits = 0
        for xi in nodes:
            bits |= 1 << _position(window, xi)
        return cls(window, bits)

    def entry(self, xi: NodeId) -> int:
        return (self.bits >> _position(self.window, xi)) & 1

    def support(self) -> set[NodeId]:
        return {xi for j, xi in enumerate(self.window.ordered) if (self.bits >> j) & 1}

    def __xor__(self, other: "F2Vector") -> "F2Vector":
        if self.window != other.window:
            raise DomainError("vectors indexed by different windows")
        return F2Vector(self.window, self.bits ^ other.bits)


def _position(window: Window, xi: NodeId) -> int:
    try:
        return window.ordered.index(xi)
    except ValueError:
        raise DomainError(f"node {xi} not in window") from None


def forest_height(K: Window, xi: NodeId) -> int:
    """Length of the longest descending child-chain from ``xi`` inside ``K``.

    Leaves in ``K`` have height 0.  This is the height function fixed by the
    package: sorting a window by ascending height puts every child before
    its parent.
    """
    if xi not in K:
        raise DomainError(f"node {xi} not in window")
    heights = _heights(K)
    return heights[xi]


def _heights(K: Window) -> dict[int, int]:
    forest = K.forest
    heights: dict[int, int] = {}
    # children come later in ascending node order, so fill from the top down
    for xi in reversed(K.ordered):
        kids = [eta for eta in forest._children[xi] if eta in K.nodes]
        heights[xi] = 1 + max(heights[eta] for eta in kids) if kids else 0
    return heights


def matrix_order(K: Window) -> tuple[int, ...]:
    """The fixed child-before-parent ordering of a window.

    Nodes are sorted by ascending height (leaves first), ties broken by
    ascending node id.  Every child has strictly smaller height than its
    parent, so children always precede parents.
    """
    heights = _heights(K)
    return tuple(sorted(K.nodes, key=lambda xi: (heights[xi], xi)))


def star_vector(K: Window, xi: NodeId) -> F2Vector:
    """Characteristic vector of ``{xi}`` plus xi's successors inside ``K``."""
    if xi not in K:
        raise DomainError(f"node {xi} not in window")
    members = {xi}
    members.update(eta for eta in K.forest._children[xi] if eta in K.nodes)
    return F2Vector.from_nodes(K, members)


@dataclass(frozen=True)
class F2Matrix:
    """A 0/1 matrix with node-labelled rows and columns.

    ``cols[j]`` is the j-th column packed as a bitset over row positions.
    """

    row_order: tuple[int, ...]
    col_order: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if len(self.cols) != len(self.col_order):
            raise DomainError("column count does not match the column ordering")
        for c in self.cols:
            if c < 0 or c >> len(self.row_order):
                raise DomainError("column bits exceed the row ordering")

    def entry(self, i: int, j: int) -> int:
        return (self.cols[j] >> i) & 1

    def shape(self) -> tuple[int, int]:
        return len(self.row_order), len(self.col_order)

    def is_upper_triangular_unit(self) -> bool:
        n = len(self.row_order)
        if len(self.col_order) != n:
            return False
        for j, col in enumerate(self.cols):
            if not (col >> j) & 1:
                return False
            if col >> (j + 1):
                return False
        return True

    def to_text(self) -> str:
        """Header line with the node ordering, then one 0/1 row per line."""
        header = " ".join(str(xi) for xi in self.col_order)
        rows = []
        for i in range(len(self.row_order)):
            rows.append("".join(str(self.entry(i, j)) for j in range(len(self.cols))))
        return header + "\n" + "\n".join(rows) + "\n"


def star_matrix(K: Window) -> F2Matrix:
    """Star-incidence matrix of a window in the fixed child-before-parent order.

    Rows and columns share the :func:`matrix_order` ordering.  Each column
    holds the star vector of its node; the children of a node sit strictly
    before it, so the matrix is unit upper triangular.
    """
    if not K.nodes:
        raise DomainError("window must be nonempty")
    if not is_rho_closed(K.forest, K.nodes):
        raise DomainError("window is not closed under the predecessor map")
    order = matrix_order(K)
    pos = {xi: i for i, xi in enumerate(order)}
    cols = []
    for xi in order:
        col = 1 << pos[xi]
        for eta in K.forest._children[xi]:
            if eta in K.nodes:
                col |= 1 << pos[eta]
        cols.append(col)
    return F2Matrix(order, order, tuple(cols))


@lru_cache(maxsize=256)
def _solve_data(K: Window):
    """Star columns plus position maps, cached: solvers sweep many targets per window."""
    matrix = star_matrix(K)
    order = matrix.row_order
    pos = {xi: i for i, xi in enumerate(order)}
    window_to_matrix = tuple(pos[xi] for xi in K.ordered)
    return matrix.cols, order, window_to_matrix


def solve_star_span(K: Window, target: F2Vector) -> set[NodeId]:
    """The unique node set whose star vectors XOR to ``target``.

    Back-substitution through the triangular star matrix, scanning parents
    before children; the unit diagonal means the residual always clears.
    """
    if target.window != K:
        raise DomainError("target indexed by a different window")
    cols, order, window_to_matrix = _solve_data(K)
    residual = 0
    for j, pos in enumerate(window_to_matrix):
        if (target.bits >> j) & 1:
            residual |= 1 << pos
    chosen: set[int] = set()
    for j in range(len(order) - 1, -1, -1):
        if (residual >> j) & 1:
            chosen.add(order[j])
            residual ^= cols[j]
    assert residual == 0, "triangular solve left a residual; matrix not invertible"
    return chosen


def combine_stars(K: Window, nodes) -> F2Vector:
    """XOR of the star vectors of ``nodes``; inverse direction of the solver."""
    acc = F2Vector.zero(K)
    for xi in nodes:
        acc = acc ^ star_vector(K, xi)
    return acc


def solve_all_targets(K: Window) -> list[frozenset]:
    """Coefficient sets for every target over the window, solved in one batch.

    Index ``t`` holds the solution for ``F2Vector(K, t)``.  Runs the
    back-substitution through the kernel backend; agreement with the
    per-target :func:`solve_star_span` is part of the verification suite.
    """
    from . import _kernels as kernels

    matrix = star_matrix(K)
    order = matrix.row_order
    n = len(order)
    window_pos = {xi: j for j, xi in enumerate(K.ordered)}
    batch = kernels.solve_unit_triangular_all(matrix.cols, n)
    out = []
    for t_window in range(1 << n):
        t_matrix = 0
        for j, xi in enumerate(order):
            if (t_window >> window_pos[xi]) & 1:
                t_matrix |= 1 << j
        coeffs = batch[t_matrix]
        out.append(frozenset(order[j] for j in range(n) if (coeffs >> j) & 1))
    return out
