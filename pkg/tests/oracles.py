"""Independent oracles: deliberately naive implementations used to
cross-check the library's optimized paths.  Nothing here shares code with
the engine's streaming/remapping machinery."""

from fractions import Fraction
from itertools import product

from ut2gpi import UNITS, evaluate


def naive_eval_vector(f, act, n):
    """Dense evaluation vector by direct substitution on every unit tuple."""
    out = []
    for tup in product(UNITS, repeat=n):
        val = evaluate(f, {i + 1: tup[i] for i in range(n)}, act)
        out.extend(val.coords())
    return out


def dense_rank(rows):
    """Rank of a list of dense rational rows, textbook Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [x / lead for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def count_standard_tableaux(shape):
    """Number of standard fillings of the shape, by direct backtracking."""
    shape = tuple(shape)
    n = sum(shape)
    rows = [[0] * s for s in shape]
    fill = [0] * len(shape)  # boxes placed so far in each row

    def place(value):
        if value > n:
            return 1
        total = 0
        for r in range(len(shape)):
            c = fill[r]
            if c >= shape[r]:
                continue
            if r > 0 and fill[r - 1] <= c:
                continue
            rows[r][c] = value
            fill[r] += 1
            total += place(value + 1)
            fill[r] -= 1
        return total

    return place(1)


def partition_count(n):
    """Number of partitions of n, by the Euler DP (not enumeration)."""
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]
