# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled permutation kernels.

Permutations are tuples of 0-based images.  Every function mirrors one in
``_pykernels`` and must return identical results.
"""
from libc.stdlib cimport malloc, free


cdef int* _load(tuple p, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc(n * sizeof(int) + 1)
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = p[i]
    return buf


def compose(tuple p, tuple q):
    """x -> q[p[x]]: the left factor acts first."""
    cdef Py_ssize_t n = len(p), i
    if len(q) != n:
        raise ValueError("degree mismatch")
    cdef int* a = _load(p, n)
    cdef int* b = _load(q, n)
    try:
        return tuple([b[a[i]] for i in range(n)])
    finally:
        free(a)
        free(b)


def inverse(tuple p):
    cdef Py_ssize_t n = len(p), i
    cdef int* a = _load(p, n)
    cdef int* r = <int*> malloc(n * sizeof(int) + 1)
    try:
        for i in range(n):
            r[a[i]] = i
        return tuple([r[i] for i in range(n)])
    finally:
        free(a)
        free(r)


def cycles(tuple p):
    """All cycles (fixed points included), each starting at its least point."""
    cdef Py_ssize_t n = len(p), i, j
    cdef int* a = _load(p, n)
    cdef char* seen = <char*> malloc(n + 1)
    out = []
    try:
        for i in range(n):
            seen[i] = 0
        for i in range(n):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = 1
                cyc.append(j)
                j = a[j]
            out.append(cyc)
        return out
    finally:
        free(a)
        free(seen)


def cycle_lengths(tuple p):
    cdef Py_ssize_t n = len(p), i, j, length
    cdef int* a = _load(p, n)
    cdef char* seen = <char*> malloc(n + 1)
    out = []
    try:
        for i in range(n):
            seen[i] = 0
        for i in range(n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                length += 1
                j = a[j]
            out.append(length)
        return out
    finally:
        free(a)
        free(seen)


def parity(tuple p):
    """0 for even permutations, 1 for odd ones."""
    cdef Py_ssize_t n = len(p), i, j, length
    cdef int* a = _load(p, n)
    cdef char* seen = <char*> malloc(n + 1)
    cdef int evens = 0
    try:
        for i in range(n):
            seen[i] = 0
        for i in range(n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                length += 1
                j = a[j]
            if length % 2 == 0:
                evens += 1
        return evens & 1
    finally:
        free(a)
        free(seen)


def type_key(tuple p):
    """Cycle lengths sorted in decreasing order."""
    return tuple(sorted(cycle_lengths(p), reverse=True))


def conjugate(tuple p, tuple g):
    """g^-1 p g as image tuple: g[x] -> g[p[x]]."""
    cdef Py_ssize_t n = len(p), i
    if len(g) != n:
        raise ValueError("degree mismatch")
    cdef int* a = _load(p, n)
    cdef int* b = _load(g, n)
    cdef int* r = <int*> malloc(n * sizeof(int) + 1)
    try:
        for i in range(n):
            r[b[i]] = b[a[i]]
        return tuple([r[i] for i in range(n)])
    finally:
        free(a)
        free(b)
        free(r)
