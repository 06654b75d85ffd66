"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The heavy operations are sweeps over every total assignment of a small
coordinate box: building the member table of a name, checking XOR-flip
invariance, projecting satisfying assignments, and batch triangular
solving.  A Cython extension provides the fast path; a pure backend built
on Python's big-int bitsets is selected when the extension is missing or
when ``CASCADEKIT_PURE`` is set in the environment.

Tables returned by ``build_table`` are backend-specific handles; build and
consume them through this module within one backend selection.
"""

from __future__ import annotations

import os

from ..errors import DomainError
from . import pure as _pure

MAX_TABLE_COORDS = 22

_BACKENDS = {"python": _pure}
try:  # pragma: no cover - presence depends on the build environment
    from . import _fastcore as _fast

    _BACKENDS["compiled"] = _fast
except ImportError:  # pragma: no cover
    _fast = None

if os.environ.get("CASCADEKIT_PURE"):
    BACKEND = "python"
else:
    BACKEND = "compiled" if "compiled" in _BACKENDS else "python"
_impl = _BACKENDS[BACKEND]


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def use_backend(name: str) -> None:
    """Switch the active backend; intended for tests and benchmarks."""
    global _impl, BACKEND
    if name not in _BACKENDS:
        raise DomainError(f"unknown kernel backend {name!r}; have {available_backends()}")
    _impl = _BACKENDS[name]
    BACKEND = name


def backend_module(name: str):
    if name not in _BACKENDS:
        raise DomainError(f"unknown kernel backend {name!r}; have {available_backends()}")
    return _BACKENDS[name]


def _check_dims(n_coords: int) -> None:
    if n_coords < 0:
        raise DomainError("negative coordinate count")
    if n_coords > MAX_TABLE_COORDS:
        raise DomainError(
            f"table over {n_coords} coordinates exceeds the {MAX_TABLE_COORDS}-bit sweep bound"
        )


def build_table(n_coords: int, entries) -> object:
    """Member table of a name over a box.

    ``entries`` is an iterable of ``(dmask, vmask, member_bit)`` triples: a
    condition with domain ``dmask`` and values ``vmask`` contributing the
    member flagged by ``member_bit``.  The table assigns to each of the
    ``2**n_coords`` assignments the OR of member bits of its extended
    conditions.
    """
    _check_dims(n_coords)
    full = (1 << n_coords) - 1
    checked = []
    for dmask, vmask, member_bit in entries:
        if dmask & ~full:
            raise DomainError("condition mentions coordinates outside the box")
        if vmask & ~dmask:
            raise DomainError("value bits outside the condition domain")
        if member_bit <= 0 or member_bit & (member_bit - 1) or member_bit >> 64:
            raise DomainError("member_bit must be a single bit below 2**64")
        checked.append((dmask, vmask, member_bit))
    return _impl.build_table(n_coords, checked)


def eval_at(table, g: int) -> int:
    """Member bits at one assignment."""
    return _impl.eval_at(table, g)


def tables_equal(t1, t2) -> bool:
    return _impl.tables_equal(t1, t2)


def flip_violation(table, flip_mask: int) -> int:
    """Least assignment whose members change under XOR with ``flip_mask``; -1 if none."""
    return _impl.flip_violation(table, flip_mask)


def project_member(table, member_bit: int, proj_mask: int) -> tuple[int, ...]:
    """Sorted distinct ``g & proj_mask`` over assignments carrying the member."""
    return _impl.project_member(table, member_bit, proj_mask)


def subcube_member_summary(table, member_bit: int, dmask: int, vmask: int) -> int:
    """Membership across the subcube ``{g : g & dmask == vmask}``.

    Returns 0 when no assignment of the subcube carries the member, 1 when
    all do, 2 when mixed.
    """
    return _impl.subcube_member_summary(table, member_bit, dmask, vmask)


def solve_unit_triangular_all(cols, n: int) -> list[int]:
    """Back-substitute every target of F2^n through a unit upper triangular matrix.

    ``cols[j]`` is the j-th column as a row-position bitmask with bit ``j``
    set and no bits above it.  Returns the coefficient mask per target.
    """
    _check_dims(n)
    cols = list(cols)
    if len(cols) != n:
        raise DomainError("need exactly one column per dimension")
    for j, col in enumerate(cols):
        if not (col >> j) & 1 or col >> (j + 1):
            raise DomainError("columns must be unit upper triangular")
    return _impl.solve_unit_triangular_all(cols, n)
