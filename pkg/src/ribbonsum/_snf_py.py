"""Pure-Python integer invariant factors (no transforms)."""


def int_invariant_factors(rows, cols, flat):
    """Positive invariant factors of an integer matrix given row-major."""
    A = [list(flat[i * cols:(i + 1) * cols]) for i in range(rows)]
    m, n = rows, cols
    piv = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        A[t], A[bi] = A[bi], A[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
        while True:
            p = A[t][t]
            dirty = False
            rt = A[t]
            for i in range(t + 1, m):
                ri = A[i]
                if ri[t]:
                    q = ri[t] // p
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        dirty = True
            for j in range(t + 1, n):
                if rt[j]:
                    q = rt[j] // p
                    for i in range(t, m):
                        if A[i][t]:
                            A[i][j] -= q * A[i][t]
                    if rt[j]:
                        dirty = True
            if dirty:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(rt[j]), t, j) for j in range(t + 1, n) if rt[j]]
                _, i, j = min(cand)
                if j == t:
                    A[t], A[i] = A[i], A[t]
                else:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            bad = -1
            for i in range(t + 1, m):
                ri = A[i]
                for j in range(t + 1, n):
                    if ri[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            rb = A[bad]
            for j in range(t, n):
                rt[j] += rb[j]
        piv.append(abs(A[t][t]))
        t += 1
    return piv
