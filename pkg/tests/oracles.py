"""Independent reference computations used to cross-check the main code paths."""

from fractions import Fraction
from math import lcm


def bareiss_rank(rows):
    """Rank by fraction-free (Bareiss) elimination on an integer-scaled copy."""
    m = []
    for r in rows:
        den = lcm(*[Fraction(x).denominator for x in r]) if r else 1
        m.append([int(Fraction(x) * den) for x in r])
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) // prev
            m[i][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == nrows:
            break
    return rank


def dense(vectors, keys=None):
    """Columns given as sparse dicts -> dense row lists over a fixed key order."""
    keys = keys if keys is not None else sorted({k for v in vectors for k in v}, key=repr)
    return [[v.get(k, 0) for v in vectors] for k in keys]
