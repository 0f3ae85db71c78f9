"""Pure Python computational kernels.

expand_tail implements the superidentity expansion of a right factor: for a
left-normed word w = (b1, ..., bn) with letter parities p, it returns the
signed permutation table E with

    (g . [w]) = sum over (sigma, c) in E of c * [g sigma]

for every g, by the recursion (g (w' b)) = ((g w') b) - (-1)^{|b||w'|} ((g b) w').
The table is independent of g; coefficients are exact integers.

rref_mod_p computes the rank of an integer matrix over GF(p).

The compiled extension module mirrors these two signatures exactly.
"""


def expand_tail(word, parities):
    """Signed permutation table of the right factor word.

    word: tuple of generator indices; parities: matching tuple of 0/1.
    Returns a sorted tuple of (permuted_word, integer_coefficient) pairs
    with no zero coefficients.
    """
    table = {(word[0],): 1}
    prefix_parity = parities[0]
    for i in range(1, len(word)):
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
    work = [[x % p for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        inv = pow(prow[col], -1, p)
        for j in range(col, ncols):
            prow[j] = prow[j] * inv % p
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                row = work[r]
                for j in range(col, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == len(work):
            break
    return rank
