# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled computational kernels; same signatures as _kernel_py.

expand_tail keeps tuple-keyed dicts (the permuted words are small and the
dict is returned to Python anyway) but runs the inner accumulation loop
with C-typed locals.  rref_mod_p works on C long arrays; entries must fit
a C long after reduction mod p, which holds for any prime p that fits in
32 bits.
"""

from cpython.tuple cimport PyTuple_GET_SIZE


def expand_tail(word, parities):
    """Signed permutation table of the right factor word.

    word: tuple of generator indices; parities: matching tuple of 0/1.
    Returns a sorted tuple of (permuted_word, integer_coefficient) pairs
    with no zero coefficients.
    """
    cdef Py_ssize_t n = PyTuple_GET_SIZE(word)
    cdef Py_ssize_t i
    cdef int prefix_parity, pb, s
    table = {(word[0],): 1}
    prefix_parity = parities[0]
    for i in range(1, n):
        b = word[i]
        pb = parities[i]
        s = -1 if (pb and prefix_parity) else 1
        nxt = {}
        for sigma, c in table.items():
            right = sigma + (b,)
            v = nxt.get(right, 0) + c
            if v:
                nxt[right] = v
            else:
                nxt.pop(right, None)
            left = (b,) + sigma
            v = nxt.get(left, 0) - s * c
            if v:
                nxt[left] = v
            else:
                nxt.pop(left, None)
        table = nxt
        prefix_parity ^= pb
    return tuple(sorted(table.items()))


def rref_mod_p(rows, p):
    """Rank of an integer matrix over GF(p); rows is a sequence of rows."""
    cdef list work = [[x % p for x in row] for row in rows]
    if not work:
        return 0
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t ncols = len(work[0])
    cdef Py_ssize_t rank = 0, col, r, j, pivot
    cdef long cp = p
    cdef long inv, f, piv
    cdef list prow, row
    for col in range(ncols):
        pivot = -1
        for r in range(rank, nrows):
            if (<list>work[r])[col]:
                pivot = r
                break
        if pivot < 0:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = <list>work[rank]
        piv = prow[col]
        inv = <long>pow(piv, -1, cp)
        for j in range(col, ncols):
            prow[j] = (<long>prow[j]) * inv % cp
        for r in range(nrows):
            if r != rank and (<list>work[r])[col]:
                row = <list>work[r]
                f = row[col]
                for j in range(col, ncols):
                    row[j] = ((<long>row[j]) - f * (<long>prow[j])) % cp
        rank += 1
        if rank == nrows:
            break
    return rank
