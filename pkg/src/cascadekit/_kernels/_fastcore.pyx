# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: dense uint64 member tables over assignment space."""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

ctypedef unsigned long long u64


cdef class DenseTable:
    cdef u64* data
    cdef Py_ssize_t size
    cdef int n_coords

    def __cinit__(self, int n_coords):
        self.n_coords = n_coords
        self.size = (<Py_ssize_t>1) << n_coords
        self.data = <u64*>PyMem_Malloc(self.size * sizeof(u64))
        if self.data == NULL:
            raise MemoryError()
        cdef Py_ssize_t g
        for g in range(self.size):
            self.data[g] = 0

    def __dealloc__(self):
        if self.data != NULL:
            PyMem_Free(self.data)


def build_table(int n_coords, entries):
    cdef DenseTable table = DenseTable(n_coords)
    cdef u64 dmask, vmask, member, free_mask, sub
    cdef Py_ssize_t full = table.size - 1
    for d, v, m in entries:
        dmask = d
        vmask = v
        member = m
        free_mask = (<u64>full) & ~dmask
        sub = free_mask
        while True:
            table.data[vmask | sub] |= member
            if sub == 0:
                break
            sub = (sub - 1) & free_mask
    return table


def eval_at(DenseTable table, Py_ssize_t g):
    if g < 0 or g >= table.size:
        raise IndexError("assignment outside the table")
    return table.data[g]


def tables_equal(DenseTable t1, DenseTable t2):
    if t1.n_coords != t2.n_coords:
        return False
    cdef Py_ssize_t g
    for g in range(t1.size):
        if t1.data[g] != t2.data[g]:
            return False
    return True


def flip_violation(DenseTable table, Py_ssize_t flip_mask):
    if flip_mask < 0 or flip_mask >= table.size:
        raise IndexError("flip mask outside the table")
    cdef Py_ssize_t g
    for g in range(table.size):
        if table.data[g] != table.data[g ^ flip_mask]:
            return g
    return -1


def project_member(DenseTable table, u64 member_bit, Py_ssize_t proj_mask):
    cdef unsigned char* seen = <unsigned char*>PyMem_Malloc(table.size)
    if seen == NULL:
        raise MemoryError()
    cdef Py_ssize_t g
    try:
        for g in range(table.size):
            seen[g] = 0
        for g in range(table.size):
            if table.data[g] & member_bit:
                seen[g & proj_mask] = 1
        out = []
        for g in range(table.size):
            if seen[g]:
                out.append(g)
        return tuple(out)
    finally:
        PyMem_Free(seen)


def subcube_member_summary(DenseTable table, u64 member_bit, u64 dmask, u64 vmask):
    if dmask >= <u64>table.size or vmask & ~dmask:
        raise IndexError("subcube masks outside the table")
    cdef u64 free_mask = (<u64>(table.size - 1)) & ~dmask
    cdef u64 sub = free_mask
    cdef bint any_in = False
    cdef bint any_out = False
    while True:
        if table.data[vmask | sub] & member_bit:
            any_in = True
        else:
            any_out = True
        if any_in and any_out:
            return 2
        if sub == 0:
            break
        sub = (sub - 1) & free_mask
    return 1 if any_in else 0


def solve_unit_triangular_all(cols, int n):
    if n < 0 or n > 64:
        raise ValueError("dimension outside the 64-bit solver range")
    cdef u64 col_arr[64]
    cdef int j
    for j in range(n):
        col_arr[j] = cols[j]
    cdef Py_ssize_t total = (<Py_ssize_t>1) << n
    cdef Py_ssize_t target
    cdef u64 residual, coeffs
    out = []
    for target in range(total):
        residual = <u64>target
        coeffs = 0
        for j in range(n - 1, -1, -1):
            if (residual >> j) & 1:
                coeffs |= (<u64>1) << j
                residual ^= col_arr[j]
        if residual != 0:
            raise AssertionError("triangular solve left a residual")
        out.append(coeffs)
    return out
