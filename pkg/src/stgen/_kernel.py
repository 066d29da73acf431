"""Compiled inner loop of the staircase list decoder.

Lists are kept in lexicographic order of the message prefix: children are
generated parent by parent, and within a parent in lexicographic order of the
new bits, so a stable selection by weight realises the lowest-weight /
smallest-prefix pruning rule without sorting.
"""
import numba
import numpy as np

OK = 0
DEAD_END = 1


@numba.njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@numba.njit(cache=True)
def _bitrev(j, width):
    out = 0
    for a in range(width):
        if (j >> a) & 1:
            out |= 1 << (width - 1 - a)
    return out


@numba.njit(cache=True)
def _select(weights, count, cap, w_max, keep):
    """Mark the ``cap`` lowest weights in ``keep``, earlier entries winning ties."""
    if count <= cap:
        keep[:count] = True
        return
    keep[:count] = False
    hist = np.zeros(w_max + 2, np.int64)
    for s in range(count):
        hist[weights[s]] += 1
    total = 0
    thresh = 0
    for t in range(w_max + 1):
        if total + hist[t] >= cap:
            thresh = t
            break
        total += hist[t]
    room = cap - total
    for s in range(count):
        w = weights[s]
        if w < thresh:
            keep[s] = True
        elif w == thresh and room > 0:
            keep[s] = True
            room -= 1


@numba.njit(cache=True)
def decode_kernel(P, cid, cpar, blk_k, blk_n, w1, wb, cap, retry_limit, x_out, trace_out):
    """Run the staircase list decoder.

    Writes the chosen message bits into ``x_out`` and the per-step list sizes
    into ``trace_out``.  Returns ``(status, weight, final_w)``.
    """
    v = blk_k.shape[0]
    W = P.shape[1]
    max_k = 0
    for b in range(1, v):
        if blk_k[b] > max_k:
            max_k = blk_k[b]
    max_children = cap * (1 << max_k)
    if (1 << blk_k[0]) > max_children:
        max_children = 1 << blk_k[0]

    acc = np.zeros((2, cap, W), np.uint64)
    wts = np.zeros((2, cap), np.int64)
    ch_parent = np.zeros(max_children, np.int64)
    ch_x = np.zeros(max_children, np.int64)
    ch_w = np.zeros(max_children, np.int64)
    first_x = np.zeros(cap, np.int64)
    tr_parent = np.zeros((v, cap), np.int64)
    tr_x = np.zeros((v, cap), np.int64)
    keep = np.zeros(max_children, np.bool_)
    # per parity target: admissible new bits (lexicographic) and their weights
    nx_max = 1 << max_k
    n_max = 1
    for b in range(1, v):
        if blk_n[b] > n_max:
            n_max = blk_n[b]
    cand_x = np.zeros((1 << n_max, nx_max), np.int64)
    cand_w = np.zeros((1 << n_max, nx_max), np.int64)
    cand_len = np.zeros(1 << n_max, np.int64)
    cpart = np.zeros(nx_max, np.int64)
    comb = np.zeros((nx_max, W), np.uint64)

    # step 1: every message prefix of the first block, in lexicographic order
    k1 = blk_k[0]
    n1 = blk_n[0]
    colmask = np.zeros(n1, np.int64)
    for c in range(n1):
        m = 0
        for a in range(k1):
            if (P[a, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                m |= 1 << a
        colmask[c] = m
    cid1 = 0
    for a in range(k1):
        cid1 |= np.int64(cid[a]) << a
    cpar1 = 0
    for c in range(n1):
        cpar1 |= np.int64(cpar[c]) << c

    w = w1
    count = 0
    for attempt in range(retry_limit + 1):
        count = 0
        for j in range(1 << k1):
            x = _bitrev(j, k1)
            wt = _popcount(x ^ cid1)
            if wt > w:
                continue
            par = 0
            for c in range(n1):
                par |= (_popcount(x & colmask[c]) & 1) << c
            wt += _popcount(par ^ cpar1)
            if wt <= w:
                ch_x[count] = x
                ch_w[count] = wt
                count += 1
        if count > 0:
            break
        if attempt < retry_limit:
            w += 1
    if count == 0:
        return DEAD_END, -1, w

    _select(ch_w, count, cap, w, keep)
    size = 0
    for s in range(count):
        if keep[s]:
            x = ch_x[s]
            first_x[size] = x
            wts[0, size] = ch_w[s]
            for a in range(k1):
                if (x >> a) & 1:
                    for q in range(W):
                        acc[0, size, q] ^= P[a, q]
            size += 1
    trace_out[0] = size

    cur = 0
    k_prev = k1
    n_prev = n1
    for b in range(1, v):
        if size < cap:
            w += 1
        kb = blk_k[b]
        nb = blk_n[b]
        nx = 1 << kb
        cidb = 0
        for a in range(kb):
            cidb |= np.int64(cid[k_prev + a]) << a
        cparb = 0
        for c in range(nb):
            cparb |= np.int64(cpar[n_prev + c]) << c
        for xn in range(nx):
            p = 0
            for a in range(kb):
                if (xn >> a) & 1:
                    for c in range(nb):
                        col = n_prev + c
                        if (P[k_prev + a, col >> 6] >> np.uint64(col & 63)) & np.uint64(1):
                            p ^= 1 << c
            cpart[xn] = p
            for q in range(W):
                comb[xn, q] = 0
            for a in range(kb):
                if (xn >> a) & 1:
                    for q in range(W):
                        comb[xn, q] ^= P[k_prev + a, q]
        for t in range(1 << nb):
            m = 0
            for j in range(nx):
                xn = _bitrev(j, kb)
                dw = _popcount(xn ^ cidb) + _popcount(cpart[xn] ^ t)
                if dw <= wb:
                    cand_x[t, m] = xn
                    cand_w[t, m] = dw
                    m += 1
            cand_len[t] = m
        word0 = n_prev >> 6

        count = 0
        for attempt in range(retry_limit + 1):
            count = 0
            for pidx in range(size):
                t = cparb
                for c in range(nb):
                    col = n_prev + c
                    if (acc[cur, pidx, col >> 6] >> np.uint64(col & 63)) & np.uint64(1):
                        t ^= 1 << c
                pw = wts[cur, pidx]
                for j in range(cand_len[t]):
                    if pw + cand_w[t, j] <= w:
                        ch_parent[count] = pidx
                        ch_x[count] = cand_x[t, j]
                        ch_w[count] = pw + cand_w[t, j]
                        count += 1
            if count > 0:
                break
            if attempt < retry_limit:
                w += 1
        if count == 0:
            return DEAD_END, -1, w

        _select(ch_w, count, cap, w, keep)
        nxt = 1 - cur
        new_size = 0
        for s in range(count):
            if keep[s]:
                pidx = ch_parent[s]
                xn = ch_x[s]
                src = acc[cur, pidx]
                dst = acc[nxt, new_size]
                rows = comb[xn]
                for q in range(word0, W):
                    dst[q] = src[q] ^ rows[q]
                wts[nxt, new_size] = ch_w[s]
                tr_parent[b, new_size] = pidx
                tr_x[b, new_size] = xn
                new_size += 1
        cur = nxt
        size = new_size
        trace_out[b] = size
        k_prev += kb
        n_prev += nb

    best = 0
    for s in range(1, size):
        if wts[cur, s] < wts[cur, best]:
            best = s
    weight = wts[cur, best]

    # walk the back-pointers to recover the message
    idx = best
    off = k_prev
    for b in range(v - 1, 0, -1):
        kb = blk_k[b]
        off -= kb
        xn = tr_x[b, idx]
        for a in range(kb):
            x_out[off + a] = (xn >> a) & 1
        idx = tr_parent[b, idx]
    x = first_x[idx]
    for a in range(k1):
        x_out[a] = (x >> a) & 1
    return OK, weight, w
