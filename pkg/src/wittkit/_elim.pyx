# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Integer Gauss-Jordan elimination, compiled engine.

Same algorithm and conventions as ``_elim_py`` (see that module's
docstring), specialized to an int64 working buffer.  Row operations are
guarded by an exact 128-bit magnitude bound; when a row update could leave
int64 range even after gcd reduction, the engine raises OverflowError and
the caller reruns the elimination on the pure-Python engine.  Both engines
produce the same reduced rows, so the choice is invisible to callers.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport INT64_MAX, INT64_MIN, int64_t

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline int64_t _iabs(int64_t v) nogil:
    return -v if v < 0 else v


cdef inline int64_t _gcd64(int64_t a, int64_t b) nogil:
    cdef int64_t t
    a = _iabs(a)
    b = _iabs(b)
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int64_t _reduce_row(int64_t *row, Py_ssize_t ncols) nogil:
    """Divide the row by its gcd; return the new max-abs entry."""
    cdef Py_ssize_t j
    cdef int64_t g = 0, v, mx = 0
    for j in range(ncols):
        v = row[j]
        if v:
            g = _gcd64(g, v)
            if g == 1:
                break
    if g > 1:
        for j in range(ncols):
            row[j] /= g
    for j in range(ncols):
        v = _iabs(row[j])
        if v > mx:
            mx = v
    return mx


def eliminate(list rows, Py_ssize_t pivot_limit):
    """Reduce rows (lists of ints) in place; return the pivot column list."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return []
    cdef Py_ssize_t ncols = len(rows[0])
    if ncols == 0:
        return []

    cdef int64_t *buf = <int64_t *> PyMem_Malloc(nrows * ncols * sizeof(int64_t))
    cdef int64_t **rp = <int64_t **> PyMem_Malloc(nrows * sizeof(int64_t *))
    cdef int64_t *rmax = <int64_t *> PyMem_Malloc(nrows * sizeof(int64_t))
    if buf == NULL or rp == NULL or rmax == NULL:
        PyMem_Free(buf)
        PyMem_Free(rp)
        PyMem_Free(rmax)
        raise MemoryError()

    cdef Py_ssize_t i, j, r, c, p
    cdef int64_t *prow
    cdef int64_t *row
    cdef int64_t pv, f, g, v, mx, pmax, f_abs
    cdef int128 bound
    cdef object value
    pivots = []

    try:
        for i in range(nrows):
            rowlist = rows[i]
            if len(rowlist) != ncols:
                raise ValueError("ragged rows")
            rp[i] = buf + i * ncols
            mx = 0
            for j in range(ncols):
                value = rowlist[j]
                v = value  # raises OverflowError for values outside int64
                if v == INT64_MIN:
                    raise OverflowError("entry at int64 boundary")
                rp[i][j] = v
                if _iabs(v) > mx:
                    mx = _iabs(v)
            rmax[i] = mx

        r = 0
        for c in range(pivot_limit):
            p = -1
            for i in range(r, nrows):
                if rp[i][c]:
                    p = i
                    break
            if p < 0:
                continue
            prow = rp[p]
            rp[p] = rp[r]
            rp[r] = prow
            rmax[p], rmax[r] = rmax[r], rmax[p]

            g = 0
            for j in range(c, ncols):
                if prow[j]:
                    g = _gcd64(g, prow[j])
                    if g == 1:
                        break
            if prow[c] < 0:
                g = -g
            if g != 1:
                for j in range(c, ncols):
                    prow[j] /= g
            pmax = 0
            for j in range(c, ncols):
                v = _iabs(prow[j])
                if v > pmax:
                    pmax = v
            rmax[r] = pmax
            pv = prow[c]

            for i in range(nrows):
                if i == r:
                    continue
                row = rp[i]
                f = row[c]
                if not f:
                    continue
                f_abs = _iabs(f)
                bound = (<int128> rmax[i]) * pv + (<int128> pmax) * f_abs
                if bound > INT64_MAX:
                    rmax[i] = _reduce_row(row, ncols)
                    f = row[c]
                    f_abs = _iabs(f)
                    bound = (<int128> rmax[i]) * pv + (<int128> pmax) * f_abs
                    if bound > INT64_MAX:
                        raise OverflowError("row update exceeds int64")
                mx = 0
                if i < r:
                    for j in range(c):
                        v = row[j] * pv
                        row[j] = v
                        if _iabs(v) > mx:
                            mx = _iabs(v)
                for j in range(c, ncols):
                    v = row[j] * pv - prow[j] * f
                    row[j] = v
                    if _iabs(v) > mx:
                        mx = _iabs(v)
                rmax[i] = mx
                if mx > 1:
                    rmax[i] = _reduce_row(row, ncols)

            pivots.append(c)
            r += 1
            if r == nrows:
                break

        out = []
        for i in range(nrows):
            row = rp[i]
            out.append([row[j] for j in range(ncols)])
        rows[:] = out
        return pivots
    finally:
        PyMem_Free(buf)
        PyMem_Free(rp)
        PyMem_Free(rmax)
