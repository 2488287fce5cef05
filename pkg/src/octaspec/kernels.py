"""Hot loops: short-cycle search, simplicity test, batched word products.

Each kernel has a numba implementation (``*_nb``) and a vectorised numpy
implementation (``*_np``).  The public wrappers pick one according to
``_accel.USE_NUMBA`` and return identical results either way.
"""
from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit
from .errors import ResourceError

# other three local slots, for each entry slot
OTHER_SLOTS = np.array([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]], dtype=np.int64)

# letter code (3 * {S,R,L} + twist) -> (a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im)
LETTER_INT = np.array([
    [1, 0, 1, 0, 0, 0, 1, 0],
    [0, 1, 1, 1, 0, 1, 1, 0],
    [-1, 1, 0, 1, 0, 1, 0, 0],
    [-1, 0, 0, 1, -1, 1, 0, 1],
    [1, 0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1, 1, 1],
    [0, 1, 0, 1, 1, 1, 1, 0],
    [-1, 0, -1, 1, 0, 1, 0, 1],
    [1, 1, 1, 0, 1, 0, 1, -1],
], dtype=np.int64)

# every letter entry has components in {-1, 0, 1}, so one multiplication
# grows the largest component by at most 4x; 4**30 < 2**62
MAX_INT64_WORD_LEN = 30


# -- cycles -------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _find_cycles_nb(partner, max_len, cap):
    n = partner.shape[0] // 4
    out = np.empty(1024, dtype=np.int64)
    lens = np.empty(64, dtype=np.int64)
    n_out = 0
    n_cyc = 0
    path_exit = np.empty(max_len, dtype=np.int64)
    path_vert = np.empty(max_len, dtype=np.int64)
    entry = np.empty(max_len, dtype=np.int64)
    choice = np.empty(max_len, dtype=np.int64)
    for s in range(n):
        depth = 0
        path_vert[0] = s
        entry[0] = -1
        choice[0] = 0
        while depth >= 0:
            if choice[depth] >= 4:
                depth -= 1
                if depth >= 0:
                    choice[depth] += 1
                continue
            local = choice[depth]
            v = path_vert[depth]
            x = 4 * v + local
            if x == entry[depth]:
                choice[depth] += 1
                continue
            y = partner[x]
            if y < 0:
                choice[depth] += 1
                continue
            w = y // 4
            k = depth + 1
            if w == s:
                if k >= 3 and path_vert[1] < path_vert[depth]:
                    if n_cyc >= cap:
                        return out[:n_out], lens[:n_cyc], False
                    if n_out + k > out.shape[0]:
                        bigger = np.empty(2 * out.shape[0] + k, dtype=np.int64)
                        bigger[:n_out] = out[:n_out]
                        out = bigger
                    if n_cyc >= lens.shape[0]:
                        bl = np.empty(2 * lens.shape[0], dtype=np.int64)
                        bl[:n_cyc] = lens[:n_cyc]
                        lens = bl
                    path_exit[depth] = x
                    for i in range(k):
                        out[n_out + i] = path_exit[i]
                    n_out += k
                    lens[n_cyc] = k
                    n_cyc += 1
                choice[depth] += 1
                continue
            if w < s or k >= max_len:
                choice[depth] += 1
                continue
            seen = False
            for i in range(1, depth + 1):
                if path_vert[i] == w:
                    seen = True
                    break
            if seen:
                choice[depth] += 1
                continue
            path_exit[depth] = x
            depth = k
            path_vert[depth] = w
            entry[depth] = y
            choice[depth] = 0
    return out[:n_out], lens[:n_cyc], True


def _find_cycles_np(partner, max_len, cap):
    n = partner.shape[0] // 4
    slots = np.arange(4 * n, dtype=np.int64)
    y = partner
    ok = y >= 0
    starts = slots // 4
    keep = ok & (np.where(ok, y // 4, -1) > starts)
    exits = slots[keep][:, None]
    verts = np.stack([starts[keep], y[keep] // 4], axis=1)
    cur_entry = y[keep]
    found_exits, found_lens = [], []
    total = 0
    for depth in range(1, max_len):
        if exits.shape[0] == 0:
            break
        cur_v = cur_entry // 4
        cand = cur_v[:, None] * 4 + OTHER_SLOTS[cur_entry % 4]
        ny = partner[cand]
        valid = ny >= 0
        nv = np.where(valid, ny // 4, -1)
        k = depth + 1
        if k >= 3:
            close = valid & (nv == verts[:, :1]) & (verts[:, 1:2] < verts[:, -1:])
            rows, cols = np.nonzero(close)
            if rows.size:
                total += rows.size
                if total > cap:
                    return None
                cyc = np.concatenate([exits[rows], cand[rows, cols][:, None]], axis=1)
                found_exits.append(cyc)
        if k >= max_len:
            break
        grow = valid & (nv > verts[:, :1])
        for j in range(1, verts.shape[1]):
            grow &= nv != verts[:, j:j + 1]
        rows, cols = np.nonzero(grow)
        exits = np.concatenate([exits[rows], cand[rows, cols][:, None]], axis=1)
        verts = np.concatenate([verts[rows], nv[rows, cols][:, None]], axis=1)
        cur_entry = ny[rows, cols]
    flat = [c for block in found_exits for c in block.reshape(-1)]
    lens = [block.shape[1] for block in found_exits for _ in range(block.shape[0])]
    return np.asarray(flat, dtype=np.int64), np.asarray(lens, dtype=np.int64)


def find_cycles(partner: np.ndarray, max_len: int, cap: int = 1_000_000) -> list[np.ndarray]:
    """Simple cycles of length 3..max_len as arrays of global exit slots.

    Each cycle is listed once: it starts at its smallest vertex and its
    second vertex is smaller than its last.  Output is sorted by
    (length, exit slots), independent of the backend.
    """
    partner = np.ascontiguousarray(partner, dtype=np.int64)
    if max_len < 3:
        return []
    if _accel.USE_NUMBA:
        flat, lens, complete = _find_cycles_nb(partner, max_len, cap)
        if not complete:
            raise ResourceError(f"more than {cap} cycles")
    else:
        res = _find_cycles_np(partner, max_len, cap)
        if res is None:
            raise ResourceError(f"more than {cap} cycles")
        flat, lens = res
    cycles = np.split(flat, np.cumsum(lens)[:-1]) if len(lens) else []
    cycles.sort(key=lambda c: (len(c), c.tolist()))
    return cycles


# -- simplicity ---------------------------------------------------------------

@njit(cache=True, nogil=True)
def _is_simple_nb(partner):
    n = partner.shape[0] // 4
    for v in range(n):
        for i in range(4):
            y = partner[4 * v + i]
            if y < 0:
                continue
            w = y // 4
            if w == v:
                return False
            for j in range(i + 1, 4):
                z = partner[4 * v + j]
                if z >= 0 and z // 4 == w:
                    return False
    return True


def _is_simple_np(partner):
    n = partner.shape[0] // 4
    nbr = np.where(partner >= 0, partner // 4, -1).reshape(n, 4)
    if np.any(nbr == np.arange(n)[:, None]):
        return False
    s = np.sort(nbr, axis=1)
    dup = (s[:, 1:] == s[:, :-1]) & (s[:, 1:] >= 0)
    return not bool(dup.any())


def is_simple_partner(partner: np.ndarray) -> bool:
    partner = np.ascontiguousarray(partner, dtype=np.int64)
    if _accel.USE_NUMBA:
        return bool(_is_simple_nb(partner))
    return _is_simple_np(partner)


# -- batched word products ----------------------------------------------------

@njit(cache=True, nogil=True)
def _word_products_nb(codes, table):
    m, k = codes.shape
    out = np.empty((m, 8), dtype=np.int64)
    for r in range(m):
        ar, ai, br, bi, cr, ci, dr, di = 1, 0, 0, 0, 0, 0, 1, 0
        for j in range(k):
            e = table[codes[r, j]]
            er, ei, fr, fi, gr, gi, hr, hi = e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7]
            nar = ar * er - ai * ei + br * gr - bi * gi
            nai = ar * ei + ai * er + br * gi + bi * gr
            nbr = ar * fr - ai * fi + br * hr - bi * hi
            nbi = ar * fi + ai * fr + br * hi + bi * hr
            ncr = cr * er - ci * ei + dr * gr - di * gi
            nci = cr * ei + ci * er + dr * gi + di * gr
            ndr = cr * fr - ci * fi + dr * hr - di * hi
            ndi = cr * fi + ci * fr + dr * hi + di * hr
            ar, ai, br, bi, cr, ci, dr, di = nar, nai, nbr, nbi, ncr, nci, ndr, ndi
        out[r, 0] = ar
        out[r, 1] = ai
        out[r, 2] = br
        out[r, 3] = bi
        out[r, 4] = cr
        out[r, 5] = ci
        out[r, 6] = dr
        out[r, 7] = di
    return out


def _word_products_np(codes, table):
    m, k = codes.shape
    acc = np.zeros((m, 8), dtype=np.int64)
    acc[:, 0] = 1
    acc[:, 6] = 1
    for j in range(k):
        e = table[codes[:, j]]
        ar, ai, br, bi, cr, ci, dr, di = acc.T
        er, ei, fr, fi, gr, gi, hr, hi = e.T
        acc = np.stack([
            ar * er - ai * ei + br * gr - bi * gi, ar * ei + ai * er + br * gi + bi * gr,
            ar * fr - ai * fi + br * hr - bi * hi, ar * fi + ai * fr + br * hi + bi * hr,
            cr * er - ci * ei + dr * gr - di * gi, cr * ei + ci * er + dr * gi + di * gr,
            cr * fr - ci * fi + dr * hr - di * hi, cr * fi + ci * fr + dr * hi + di * hr,
        ], axis=1)
    return acc


def word_products(codes: np.ndarray) -> np.ndarray:
    """Exact products of equal-length words given as letter codes, shape (m, 8).

    Columns are (a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im).
    """
    codes = np.ascontiguousarray(np.atleast_2d(codes), dtype=np.int64)
    if codes.shape[1] > MAX_INT64_WORD_LEN:
        raise OverflowError(f"int64 products are exact only up to length {MAX_INT64_WORD_LEN}")
    if _accel.USE_NUMBA:
        return _word_products_nb(codes, LETTER_INT)
    return _word_products_np(codes, LETTER_INT)


def traces_and_offsets(products: np.ndarray):
    """Complex traces and plane offsets ``Re(a d̄ + b c̄)`` of a product array."""
    p = products
    tr = (p[:, 0] + p[:, 6]).astype(np.float64) + 1j * (p[:, 1] + p[:, 7]).astype(np.float64)
    off = p[:, 0] * p[:, 6] + p[:, 1] * p[:, 7] + p[:, 2] * p[:, 4] + p[:, 3] * p[:, 5]
    return tr, off


def translation_lengths(traces: np.ndarray) -> np.ndarray:
    """Vectorised ``2 |Re arccosh(t / 2)|`` (0 on the real segment [-2, 2])."""
    t = np.asarray(traces, dtype=np.complex128)
    out = 2.0 * np.abs(np.arccosh(t / 2).real)
    out[(t.imag == 0) & (np.abs(t.real) <= 2)] = 0.0
    return out
