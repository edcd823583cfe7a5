"""Exact integer matrix normal forms for homology computations.

Everything here works over Python's arbitrary-precision integers, so torsion
coefficients come out exactly.  Matrices are plain lists of lists.
"""

from __future__ import annotations


def smith_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (nonnegative, each divides the next).

    Returns min(m, n) entries including trailing zeros.  Destructive on a
    copy; pivoting by least absolute value keeps entries small.
    """
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < m and top < n:
        # find a pivot of least absolute value in the remaining block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = a[i][j]
                if v != 0 and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        while True:
            pivot = a[top][top]
            done = True
            for i in range(top + 1, m):
                if a[i][top] != 0:
                    q = a[i][top] // pivot
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                    if a[i][top] != 0:
                        a[top], a[i] = a[i], a[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, n):
                if a[top][j] != 0:
                    q = a[top][j] // pivot
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                    if a[top][j] != 0:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        done = False
                        break
            if done:
                break
        # force divisibility: pivot must divide the rest of the block
        pivot = a[top][top]
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % pivot != 0:
                    offender = (i, j)
                    break
            if offender:
                break
        if offender:
            i, _ = offender
            for j in range(top, n):
                a[top][j] += a[i][j]
            continue
        diag.append(abs(pivot))
        top += 1
    while len(diag) < min(m, n):
        diag.append(0)
    return diag


def matrix_rank(mat: list[list[int]]) -> int:
    return sum(1 for v in smith_diagonal(mat) if v != 0)


def abelian_group_of_map(kernel_rank: int, image_matrix: list[list[int]]) -> tuple[int, tuple[int, ...]]:
    """Invariants of ker/im for im the column space of `image_matrix`.

    `kernel_rank` is the rank of the kernel the image sits inside.  Torsion
    of the quotient by a subgroup of a free group with free complement equals
    the >1 Smith invariants of the inclusion matrix.
    """
    diag = smith_diagonal(image_matrix)
    rank_im = sum(1 for v in diag if v != 0)
    torsion = tuple(v for v in diag if v > 1)
    return kernel_rank - rank_im, torsion


def mapping_cone_boundaries(c_bounds: list[list[list[int]]], sizes_c: list[int],
                            d_bounds: list[list[list[int]]], sizes_d: list[int],
                            chain_map: list[list[list[int]]]) -> list[list[list[int]]]:
    """Boundary matrices of the mapping cone of a chain map f: C -> D.

    cone_n = C_{n-1} (+) D_n with boundary (c, d) -> (-dc, dd - f(c)).
    c_bounds[n] maps C_{n+1} -> C_n; sizes give the chain group ranks.
    """
    cone = []
    for n in range(len(d_bounds)):
        # boundary cone_{n+1} = C_n (+) D_{n+1}  ->  cone_n = C_{n-1} (+) D_n
        rows_c = sizes_c[n - 1] if n >= 1 else 0
        rows_d = sizes_d[n]
        cols_c = sizes_c[n]
        cols_d = sizes_d[n + 1]
        mat = [[0] * (cols_c + cols_d) for _ in range(rows_c + rows_d)]
        if n >= 1:
            for i in range(rows_c):
                for j in range(cols_c):
                    mat[i][j] = -c_bounds[n - 1][i][j]
        fmat = chain_map[n]
        for i in range(rows_d):
            for j in range(cols_c):
                mat[rows_c + i][j] = -fmat[i][j]
            for j in range(cols_d):
                mat[rows_c + i][cols_c + j] = d_bounds[n][i][j]
        cone.append(mat)
    return cone


def chain_homology(bounds: list[list[list[int]]], sizes: list[int], k: int) -> tuple[int, tuple[int, ...]]:
    """H_k of a chain complex given boundary matrices bounds[n]: C_{n+1} -> C_n."""
    d_k = bounds[k - 1] if k >= 1 else [[0] * sizes[k] for _ in range(0)]
    d_k1 = bounds[k] if k < len(bounds) else [[0] * 0 for _ in range(sizes[k])]
    rank_k = matrix_rank(d_k) if k >= 1 else 0
    return abelian_group_of_map(sizes[k] - rank_k, d_k1)
