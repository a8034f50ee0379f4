"""Numba bitset kernels for clique search.

Vertex sets are rows of ``uint64`` words; vertex ``v`` is bit ``v & 63`` of
word ``v >> 6``.
"""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True, inline="always")
def _popc(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True, inline="always")
def _ctz(x):
    return _popc((x & (~x + np.uint64(1))) - np.uint64(1))


@njit(cache=True)
def popcount_row(row):
    c = 0
    for x in range(row.shape[0]):
        c += _popc(row[x])
    return c


@njit(cache=True)
def _color_count(adj, P, U, Q):
    """Number of colors a greedy sequential coloring of P uses."""
    W = P.shape[0]
    for x in range(W):
        U[x] = P[x]
    k = 0
    while True:
        empty = True
        for x in range(W):
            if U[x] != 0:
                empty = False
                break
        if empty:
            return k
        k += 1
        for x in range(W):
            Q[x] = U[x]
        for x in range(W):
            while Q[x] != 0:
                b = _ctz(Q[x])
                v = x * 64 + np.int64(b)
                bit = _ONE << b
                Q[x] &= ~bit
                U[x] &= ~bit
                for y in range(W):
                    Q[y] &= ~adj[v, y]


@njit(cache=True)
def max_clique_kernel(adj, P0, base, lower):
    """Branch and bound with greedy-coloring bounds (MCQ style).

    Searches cliques inside candidate set ``P0`` on top of ``base`` already
    chosen vertices. Returns (best size, clique vertices array, node count);
    the clique array is empty when nothing beats ``lower``.
    """
    V, W = adj.shape
    maxd = V + 1
    P = np.zeros((maxd, W), dtype=np.uint64)
    order = np.zeros((maxd, V), dtype=np.int64)
    cols = np.zeros((maxd, V), dtype=np.int64)
    idx = np.zeros(maxd, dtype=np.int64)
    R = np.zeros(maxd, dtype=np.int64)
    bestR = np.zeros(maxd, dtype=np.int64)
    bestlen = 0
    U = np.zeros(W, dtype=np.uint64)
    Q = np.zeros(W, dtype=np.uint64)
    best = lower
    nodes = 0
    for x in range(W):
        P[0, x] = P0[x]
    d = 0
    fresh = True
    while d >= 0:
        if fresh:
            nodes += 1
            for x in range(W):
                U[x] = P[d, x]
            k = 0
            c = 0
            while True:
                empty = True
                for x in range(W):
                    if U[x] != 0:
                        empty = False
                        break
                if empty:
                    break
                k += 1
                for x in range(W):
                    Q[x] = U[x]
                for x in range(W):
                    while Q[x] != 0:
                        b = _ctz(Q[x])
                        v = x * 64 + np.int64(b)
                        bit = _ONE << b
                        Q[x] &= ~bit
                        U[x] &= ~bit
                        for y in range(W):
                            Q[y] &= ~adj[v, y]
                        order[d, c] = v
                        cols[d, c] = k
                        c += 1
            idx[d] = c - 1
            fresh = False
        i = idx[d]
        if i < 0 or base + d + cols[d, i] <= best:
            d -= 1
            continue
        v = order[d, i]
        idx[d] = i - 1
        R[d] = v
        empty = True
        for x in range(W):
            P[d + 1, x] = P[d, x] & adj[v, x]
            if P[d + 1, x] != 0:
                empty = False
        P[d, v >> 6] &= ~(_ONE << np.uint64(v & 63))
        if empty:
            if base + d + 1 > best:
                best = base + d + 1
                bestlen = d + 1
                for j in range(d + 1):
                    bestR[j] = R[j]
        else:
            d += 1
            fresh = True
    return best, bestR[:bestlen].copy(), nodes


@njit(cache=True)
def enum_cliques_kernel(adj, need, P, order, cols, idx, R, st, out):
    """Resumable enumeration of all cliques of exactly ``need`` vertices.

    MCQ-style: each level greedily colors its candidate set and branches on
    vertices in reverse coloring order, so a vertex of color ``k`` can only
    complete cliques of ``k`` more vertices; every clique is produced once.
    ``st = [depth, finished, fresh]``; call again with the same state arrays
    to continue after ``out`` fills up. Returns rows written.
    """
    V, W = adj.shape
    cap = out.shape[0]
    U = np.zeros(W, dtype=np.uint64)
    Q = np.zeros(W, dtype=np.uint64)
    d = st[0]
    fresh = st[2] == 1
    count = 0
    while d >= 0:
        if fresh:
            for x in range(W):
                U[x] = P[d, x]
            k = 0
            c = 0
            while True:
                empty = True
                for x in range(W):
                    if U[x] != 0:
                        empty = False
                        break
                if empty:
                    break
                k += 1
                for x in range(W):
                    Q[x] = U[x]
                for x in range(W):
                    while Q[x] != 0:
                        b = _ctz(Q[x])
                        v = x * 64 + np.int64(b)
                        bit = _ONE << b
                        Q[x] &= ~bit
                        U[x] &= ~bit
                        for y in range(W):
                            Q[y] &= ~adj[v, y]
                        order[d, c] = v
                        cols[d, c] = k
                        c += 1
            idx[d] = c - 1
            fresh = False
        i = idx[d]
        if i < 0 or d + cols[d, i] < need:
            d -= 1
            continue
        if d + 1 == need and count == cap:
            st[0] = d
            st[2] = 0
            return count
        v = order[d, i]
        idx[d] = i - 1
        R[d] = v
        P[d, v >> 6] &= ~(_ONE << np.uint64(v & 63))
        if d + 1 == need:
            for j in range(need):
                out[count, j] = R[j]
            count += 1
            continue
        cnt = 0
        for x in range(W):
            P[d + 1, x] = P[d, x] & adj[v, x]
            cnt += _popc(P[d + 1, x])
        if cnt >= need - d - 1:
            d += 1
            fresh = True
    st[0] = -1
    st[1] = 1
    return count


@njit(cache=True)
def _unrank_perm(k, n, perm, pool):
    """Lexicographic rank ``k`` to a permutation of 0..n-1 (in place)."""
    for i in range(n):
        pool[i] = i
    f = 1
    for i in range(2, n):
        f *= i
    size = n
    for i in range(n - 1):
        q = k // f
        k = k % f
        perm[i] = pool[q]
        for j in range(q, size - 1):
            pool[j] = pool[j + 1]
        size -= 1
        f //= max(1, n - 1 - i)
    perm[n - 1] = pool[0]


@njit(cache=True)
def translates_avoiding(words, avoid, n, autp, autt, k0, k1, out):
    """Distinct codes ``pi(code) + t`` (t even) disjoint from ``avoid``.

    ``autp``/``autt`` list Aut(code) (permutation rows, translations). Of the
    pairs (pi, t) giving the same image only the one with lexicographically
    smallest pi, then smallest t, is emitted, so every image appears once.
    Walks permutation ranks ``k0 <= k < k1`` and writes sorted rows to
    ``out``; stops early when ``out`` could overflow. Returns (rows written,
    next rank to process).
    """
    M = words.shape[0]
    A = autp.shape[0]
    cap = out.shape[0]
    half = 1 << (n - 1)
    perm = np.empty(n, dtype=np.int64)
    pool = np.empty(n, dtype=np.int64)
    img = np.empty(M, dtype=np.int64)
    bad = np.zeros(1 << n, dtype=np.uint8)
    marks = np.empty(max(1, M * avoid.shape[0]), dtype=np.int64)
    shifts = np.empty(A, dtype=np.int64)  # permuted pure translations of Aut
    count = 0
    for k in range(k0, k1):
        if cap - count < half:
            return count, k
        _unrank_perm(k, n, perm, pool)
        # skip pi unless it is the smallest permutation in pi * Aut
        skip = False
        ns = 0
        for a in range(A):
            ident = True
            for i in range(n):
                if autp[a, i] != i:
                    ident = False
                    break
            if ident:
                if autt[a] != 0:
                    w = autt[a]
                    r = 0
                    for i in range(n):
                        if (w >> (n - 1 - i)) & 1:
                            r |= 1 << (n - 1 - perm[i])
                    shifts[ns] = r
                    ns += 1
                continue
            for i in range(n):
                q = perm[autp[a, i]]
                if q != perm[i]:
                    if q < perm[i]:
                        skip = True
                    break
            if skip:
                break
        if skip:
            continue
        for j in range(M):
            w = words[j]
            r = 0
            for i in range(n):
                if (w >> (n - 1 - i)) & 1:
                    r |= 1 << (n - 1 - perm[i])
            img[j] = r
        nm = 0
        for j in range(M):
            for a in range(avoid.shape[0]):
                t = img[j] ^ avoid[a]
                if bad[t] == 0:
                    bad[t] = 1
                    marks[nm] = t
                    nm += 1
        for t in range(1 << n):
            if bad[t] == 1:
                continue
            x = t
            par = 0
            while x:
                par ^= 1
                x &= x - 1
            if par:
                continue
            least = True
            for a in range(ns):
                if (t ^ shifts[a]) < t:
                    least = False
                    break
            if not least:
                continue
            for j in range(M):
                out[count, j] = img[j] ^ t
            out[count, :M].sort()
            count += 1
        for i in range(nm):
            bad[marks[i]] = 0
    return count, k1


@njit(cache=True)
def orbit_filter(rows, tables, N, avoid_mask, keep):
    """Mark rows that represent an admissible orbit under a group.

    ``tables[h]`` maps words to their image under the h-th group element
    (identity included). A row is kept when its word mask is the smallest
    mask in its orbit, the orbit has at most ``N`` distinct members, and the
    members are pairwise disjoint and miss ``avoid_mask``. Returns the
    number of rows kept.
    """
    R, M = rows.shape
    G, S = tables.shape
    W = (S + 63) // 64
    masks = np.zeros((G, W), dtype=np.uint64)
    distinct = np.empty(G, dtype=np.int64)
    union = np.zeros(W, dtype=np.uint64)
    kept = 0
    for r in range(R):
        for h in range(G):
            for x in range(W):
                masks[h, x] = 0
            for j in range(M):
                v = tables[h, rows[r, j]]
                masks[h, v >> 6] |= _ONE << np.uint64(v & 63)
        # identity is tables[0]; require it to be lexicographically least
        least = True
        for h in range(1, G):
            for x in range(W):
                if masks[h, x] != masks[0, x]:
                    if masks[h, x] < masks[0, x]:
                        least = False
                    break
            if not least:
                break
        keep[r] = 0
        if not least:
            continue
        nd = 0
        for h in range(G):
            dup = False
            for e in range(nd):
                same = True
                for x in range(W):
                    if masks[h, x] != masks[distinct[e], x]:
                        same = False
                        break
                if same:
                    dup = True
                    break
            if not dup:
                distinct[nd] = h
                nd += 1
        if nd > N:
            continue
        for x in range(W):
            union[x] = 0
        for e in range(nd):
            for x in range(W):
                union[x] |= masks[distinct[e], x]
        total = 0
        clash = False
        for x in range(W):
            total += _popc(union[x])
            if union[x] & avoid_mask[x]:
                clash = True
        if clash or total != nd * M:
            continue
        keep[r] = 1
        kept += 1
    return kept


@njit(cache=True)
def exact_cover_kernel(masks, colptr, colidx, full, st, cov, lstart, llen,
                       batom, bpos, chosen, buf, counts, out):
    """Resumable exact cover over bitset candidates.

    Each level branches on the uncovered atom with the fewest live
    candidates (ties: lowest atom); live candidates of each level sit in
    ``buf``. State: ``st = [depth, fresh, finished]``. Returns
    (status, solutions written): status 0 = finished, 1 = ``out`` full,
    2 = ``buf`` too small (grow it and call again). Row ``r`` of ``out``
    holds the solution length followed by candidate indices.
    """
    C, W = masks.shape
    A = counts.shape[0]
    cap = out.shape[0]
    nsol = 0
    d = st[0]
    fresh = st[1] == 1
    while d >= 0:
        if fresh:
            done = True
            for x in range(W):
                if cov[d, x] != full[x]:
                    done = False
                    break
            if done:
                if nsol == cap:
                    st[0] = d
                    st[1] = 1
                    return 1, nsol
                out[nsol, 0] = d
                for j in range(d):
                    out[nsol, j + 1] = chosen[j]
                nsol += 1
                d -= 1
                fresh = False
                continue
            for a in range(A):
                counts[a] = 0
            s = lstart[d]
            for t in range(llen[d]):
                c = buf[s + t]
                for x in range(W):
                    m = masks[c, x]
                    while m != 0:
                        b = np.int64(_ctz(m))
                        counts[x * 64 + b] += 1
                        m &= m - _ONE
            best = -1
            bestc = C + 1
            for a in range(A):
                if (cov[d, a >> 6] >> np.uint64(a & 63)) & _ONE:
                    continue
                if counts[a] < bestc:
                    bestc = counts[a]
                    best = a
                    if bestc == 0:
                        break
            if best < 0 or bestc == 0:
                d -= 1
                fresh = False
                continue
            batom[d] = best
            bpos[d] = colptr[best]
            fresh = False
        a = batom[d]
        p = bpos[d]
        found = -1
        while p < colptr[a + 1]:
            c = colidx[p]
            p += 1
            ok = True
            for x in range(W):
                if masks[c, x] & cov[d, x]:
                    ok = False
                    break
            if ok:
                found = c
                break
        if found < 0:
            bpos[d] = p
            d -= 1
            continue
        ns = lstart[d] + llen[d]
        if ns + llen[d] > buf.shape[0]:
            bpos[d] = p - 1
            st[0] = d
            st[1] = 0
            return 2, nsol
        bpos[d] = p
        chosen[d] = found
        for x in range(W):
            cov[d + 1, x] = cov[d, x] | masks[found, x]
        cnt = 0
        s = lstart[d]
        for t in range(llen[d]):
            c = buf[s + t]
            ok = True
            for x in range(W):
                if masks[c, x] & cov[d + 1, x]:
                    ok = False
                    break
            if ok:
                buf[ns + cnt] = c
                cnt += 1
        lstart[d + 1] = ns
        llen[d + 1] = cnt
        d += 1
        fresh = True
    st[0] = -1
    st[2] = 1
    return 0, nsol
