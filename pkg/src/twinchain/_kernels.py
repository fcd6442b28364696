"""Bitmask kernels behind the facet counter.

Two interchangeable implementations live here: numba-compiled loops and a
vectorized pure-numpy path. ``TWINCHAIN_PURE_NUMPY=1`` (or numba missing)
selects numpy. Both are always importable for tests and benchmarks.

Layout: the maximal chains of every induced subposet are stored CSR-style,
``chains[offsets[W]:offsets[W + 1]]`` holding the masks for subset ``W``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("TWINCHAIN_PURE_NUMPY", "").lower() not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


# -- pure numpy ---------------------------------------------------------------

def subset_maximal_chains_np(comp: np.ndarray):
    d = len(comp)
    n = 1 << d
    full = n - 1
    masks = np.arange(n, dtype=np.int64)
    is_chain = np.ones(n, dtype=bool)
    ext = np.full(n, full, dtype=np.int64)
    for i in range(d):
        has = (masks >> i) & 1 == 1
        others = masks & ~np.int64(1 << i)
        is_chain &= ~has | ((others & ~np.int64(comp[i])) == 0)
        ext = np.where(has, ext & comp[i], ext)
    cmasks = masks[is_chain]
    cext = ext[is_chain] & ~cmasks
    W = masks[:, None]
    inside = (cmasks[None, :] & ~W) == 0
    maximal = (cext[None, :] & W) == 0
    hit = inside & maximal
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(hit.sum(axis=1), out=offsets[1:])
    rows, cols = np.nonzero(hit)
    return offsets, cmasks[cols]


def facet_count_np(d, p_off, p_ch, q_off, q_ch):
    full = (1 << d) - 1
    parts = []
    for W in range(1 << d):
        a = p_ch[p_off[W]:p_off[W + 1]]
        Wc = full ^ W
        b = q_ch[q_off[Wc]:q_off[Wc + 1]]
        parts.append((a[:, None] | (b[None, :] << d)).ravel())
    return int(np.unique(np.concatenate(parts)).size)


def facet_counts_batch_np(d, p_off, p_ch, q_offs, q_ch):
    out = np.empty(len(q_offs), dtype=np.int64)
    for k in range(len(q_offs)):
        out[k] = facet_count_np(d, p_off, p_ch, q_offs[k], q_ch)
    return out


# -- numba ----------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _subset_maximal_chains_nb(comp):
        d = comp.shape[0]
        n = 1 << d
        full = n - 1
        is_chain = np.ones(n, dtype=np.bool_)
        ext = np.empty(n, dtype=np.int64)
        for C in range(n):
            e = full
            for i in range(d):
                if (C >> i) & 1:
                    e &= comp[i]
                    if (C & ~(1 << i)) & ~comp[i]:
                        is_chain[C] = False
            ext[C] = e & ~C
        counts = np.zeros(n, dtype=np.int64)
        for W in range(n):
            C = W
            while True:
                if is_chain[C] and (ext[C] & W) == 0:
                    counts[W] += 1
                if C == 0:
                    break
                C = (C - 1) & W
        offsets = np.zeros(n + 1, dtype=np.int64)
        for W in range(n):
            offsets[W + 1] = offsets[W] + counts[W]
        chains = np.empty(offsets[n], dtype=np.int64)
        for W in range(n):
            # ascending submask order, matching the numpy path
            k = offsets[W + 1] - 1
            C = W
            while True:
                if is_chain[C] and (ext[C] & W) == 0:
                    chains[k] = C
                    k -= 1
                if C == 0:
                    break
                C = (C - 1) & W
        return offsets, chains

    @njit(cache=True)
    def _facet_count_nb(d, p_off, p_ch, q_off, q_ch, seen, stamp):
        full = (1 << d) - 1
        total = 0
        for W in range(1 << d):
            Wc = full ^ W
            for i in range(p_off[W], p_off[W + 1]):
                a = p_ch[i]
                for j in range(q_off[Wc], q_off[Wc + 1]):
                    key = a | (q_ch[j] << d)
                    if seen[key] != stamp:
                        seen[key] = stamp
                        total += 1
        return total

    @njit(cache=True)
    def _facet_counts_batch_nb(d, p_off, p_ch, q_offs, q_ch):
        seen = np.zeros(1 << (2 * d), dtype=np.int64)
        out = np.empty(q_offs.shape[0], dtype=np.int64)
        for k in range(q_offs.shape[0]):
            out[k] = _facet_count_nb(d, p_off, p_ch, q_offs[k], q_ch, seen, k + 1)
        return out

    def subset_maximal_chains_nb(comp):
        return _subset_maximal_chains_nb(np.asarray(comp, dtype=np.int64))

    def facet_count_nb(d, p_off, p_ch, q_off, q_ch):
        seen = np.zeros(1 << (2 * d), dtype=np.int64)
        return int(_facet_count_nb(d, p_off, p_ch, q_off, q_ch, seen, 1))

    def facet_counts_batch_nb(d, p_off, p_ch, q_offs, q_ch):
        return _facet_counts_batch_nb(d, p_off, p_ch, np.ascontiguousarray(q_offs), q_ch)


def _select(nb_name, np_fn):
    if USE_NUMBA:
        return globals()[nb_name]
    return np_fn


subset_maximal_chains = _select("subset_maximal_chains_nb", subset_maximal_chains_np)
facet_count = _select("facet_count_nb", facet_count_np)
facet_counts_batch = _select("facet_counts_batch_nb", facet_counts_batch_np)
