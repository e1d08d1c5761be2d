"""Hot inner loops.

Every kernel has two bodies: an explicit-loop version that numba compiles, and
a vectorised numpy version used when numba is missing or disabled through
``TEMPORAL_RAC_DISABLE_NUMBA``. The public names at the bottom of the module
dispatch to one of them; ``IMPLEMENTATIONS`` exposes both for benchmarks and
cross-checks.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

# Direction used to break a zero resultant in the seesaw update.
PERTURB_AXIS = np.array([1.0, 0.0, 0.0])
PERTURB_SIZE = 1e-8


# --------------------------------------------------------------------------
# seesaw ascent


def _seesaw_loops(signs, alice, bob, tol, max_sweeps):
    m, n = signs.shape
    a = alice.copy()
    b = bob.copy()
    trace = np.empty(2 * max_sweeps + 1)
    perturbed = 0

    k = 0.0
    for i in range(m):
        for j in range(n):
            k += signs[i, j] * (a[i, 0] * b[j, 0] + a[i, 1] * b[j, 1] + a[i, 2] * b[j, 2])
    trace[0] = k
    pos = 1
    sweeps = 0
    for sweep in range(max_sweeps):
        sweeps = sweep + 1
        # Alice best response
        for i in range(m):
            r0 = 0.0
            r1 = 0.0
            r2 = 0.0
            for j in range(n):
                r0 += signs[i, j] * b[j, 0]
                r1 += signs[i, j] * b[j, 1]
                r2 += signs[i, j] * b[j, 2]
            norm = np.sqrt(r0 * r0 + r1 * r1 + r2 * r2)
            if norm < 1e-300:
                r0 += PERTURB_SIZE
                perturbed += 1
                norm = np.sqrt(r0 * r0 + r1 * r1 + r2 * r2)
            a[i, 0] = r0 / norm
            a[i, 1] = r1 / norm
            a[i, 2] = r2 / norm
        k = 0.0
        for i in range(m):
            for j in range(n):
                k += signs[i, j] * (a[i, 0] * b[j, 0] + a[i, 1] * b[j, 1] + a[i, 2] * b[j, 2])
        trace[pos] = k
        pos += 1
        # Bob best response
        for j in range(n):
            r0 = 0.0
            r1 = 0.0
            r2 = 0.0
            for i in range(m):
                r0 += signs[i, j] * a[i, 0]
                r1 += signs[i, j] * a[i, 1]
                r2 += signs[i, j] * a[i, 2]
            norm = np.sqrt(r0 * r0 + r1 * r1 + r2 * r2)
            if norm < 1e-300:
                r0 += PERTURB_SIZE
                perturbed += 1
                norm = np.sqrt(r0 * r0 + r1 * r1 + r2 * r2)
            b[j, 0] = r0 / norm
            b[j, 1] = r1 / norm
            b[j, 2] = r2 / norm
        k_new = 0.0
        for i in range(m):
            for j in range(n):
                k_new += signs[i, j] * (a[i, 0] * b[j, 0] + a[i, 1] * b[j, 1] + a[i, 2] * b[j, 2])
        trace[pos] = k_new
        pos += 1
        if k_new - trace[pos - 3] < tol:
            break
    return a, b, trace[:pos], sweeps, perturbed


def _normalise_rows(vectors):
    norms = np.sqrt(np.sum(vectors * vectors, axis=1))
    dead = norms < 1e-300
    if dead.any():
        vectors = vectors.copy()
        vectors[dead] += PERTURB_SIZE * PERTURB_AXIS
        norms = np.sqrt(np.sum(vectors * vectors, axis=1))
    return vectors / norms[:, None], int(dead.sum())


def _seesaw_numpy(signs, alice, bob, tol, max_sweeps):
    a = alice.copy()
    b = bob.copy()
    trace = [float(np.sum(signs * (a @ b.T)))]
    perturbed = 0
    sweeps = 0
    for sweep in range(max_sweeps):
        sweeps = sweep + 1
        a, dead = _normalise_rows(signs @ b)
        perturbed += dead
        trace.append(float(np.sum(signs * (a @ b.T))))
        b, dead = _normalise_rows(signs.T @ a)
        perturbed += dead
        trace.append(float(np.sum(signs * (a @ b.T))))
        if trace[-1] - trace[-3] < tol:
            break
    return a, b, np.array(trace), sweeps, perturbed


# --------------------------------------------------------------------------
# deterministic K over Bob's sign assignments


def _det_k_loops(signs):
    m, n = signs.shape
    total = 1 << n
    values = np.empty(total)
    for code in range(total):
        acc = 0.0
        for i in range(m):
            s = 0.0
            for j in range(n):
                bj = -1.0 if (code >> (n - 1 - j)) & 1 else 1.0
                s += signs[i, j] * bj
            acc += abs(s)
        values[code] = acc
    return values


def _det_k_numpy(signs):
    m, n = signs.shape
    codes = np.arange(1 << n)
    shifts = np.arange(n - 1, -1, -1)
    bob = 1.0 - 2.0 * ((codes[:, None] >> shifts) & 1)
    values = np.empty(codes.size)
    chunk = max(1, (1 << 22) // max(m, 1))
    for start in range(0, codes.size, chunk):
        part = bob[start:start + chunk]
        values[start:start + chunk] = np.abs(signs @ part.T).sum(axis=0)
    return values


# --------------------------------------------------------------------------
# deterministic RAC: every encoding against every decoding tuple
#
# Encoding index e: bit x of e is the message sent for input string x, where
# x is read with x_1 as its most significant bit. A decoding option o in 0..3
# maps message 0 -> o & 1 and message 1 -> o >> 1.


def _rac_enum_loops(n):
    strings = 1 << n
    tuples = 1 << (2 * n)
    best = -1
    best_enc = 0
    best_dec = 0
    cnt = np.zeros((n, 2, 2), dtype=np.int64)
    for enc in range(1 << strings):
        cnt[:, :, :] = 0
        for x in range(strings):
            msg = (enc >> x) & 1
            for y in range(n):
                cnt[y, msg, (x >> (n - 1 - y)) & 1] += 1
        for dec in range(tuples):
            score = 0
            for y in range(n):
                o = (dec >> (2 * (n - 1 - y))) & 3
                score += cnt[y, 0, o & 1] + cnt[y, 1, o >> 1]
            if score > best:
                best = score
                best_enc = enc
                best_dec = dec
    return best, best_enc, best_dec


def _rac_enum_numpy(n):
    strings = 1 << n
    tuples = 1 << (2 * n)
    xs = np.arange(strings)
    bits = (xs[:, None] >> np.arange(n - 1, -1, -1)) & 1  # (strings, n)
    one_hot = np.stack([1 - bits, bits], axis=-1)  # (strings, n, 2)
    decs = np.arange(tuples)
    options = (decs[:, None] >> (2 * np.arange(n - 1, -1, -1))) & 3  # (tuples, n)

    best = -1
    best_enc = 0
    best_dec = 0
    n_enc = 1 << strings
    chunk = max(1, min(n_enc, (1 << 21) // tuples))
    for start in range(0, n_enc, chunk):
        encs = np.arange(start, min(start + chunk, n_enc))
        msg = (encs[:, None] >> xs) & 1  # (c, strings)
        sent1 = msg.astype(np.int64)
        sent0 = 1 - sent1
        # cnt[c, y, m, bit]
        cnt0 = np.einsum("cx,xyb->cyb", sent0, one_hot)
        cnt1 = np.einsum("cx,xyb->cyb", sent1, one_hot)
        opt = np.arange(4)
        per_y = cnt0[:, :, opt & 1] + cnt1[:, :, opt >> 1]  # (c, n, 4)
        scores = per_y[:, np.arange(n), options].sum(axis=-1)  # (c, tuples)
        flat = int(np.argmax(scores))
        c_idx, d_idx = divmod(flat, tuples)
        value = int(scores[c_idx, d_idx])
        if value > best:
            best = value
            best_enc = int(encs[c_idx])
            best_dec = d_idx
    return best, best_enc, best_dec


# --------------------------------------------------------------------------
# simplex iterations with Bland's rule
#
# Tableau layout: rows 0..m-1 hold [A | rhs], row m holds reduced costs of a
# maximisation in the form z_j - c_j, last column holds the objective value.
# ``active`` masks the columns allowed to enter.


def _bland_loops(tab, basis, active, tol, max_iter):
    m = tab.shape[0] - 1
    width = tab.shape[1] - 1
    it = 0
    while it < max_iter:
        enter = -1
        for j in range(width):
            if active[j] and tab[m, j] < -tol:
                enter = j
                break
        if enter < 0:
            return 0, it
        leave = -1
        best_ratio = 0.0
        for i in range(m):
            a = tab[i, enter]
            if a > tol:
                ratio = tab[i, width] / a
                if leave < 0 or ratio < best_ratio - 1e-15 or (
                    abs(ratio - best_ratio) <= 1e-15 and basis[i] < basis[leave]
                ):
                    leave = i
                    best_ratio = ratio
        if leave < 0:
            return 1, it
        _pivot_loops(tab, leave, enter)
        basis[leave] = enter
        it += 1
    return 2, it


def _pivot_loops(tab, row, col):
    rows, cols = tab.shape
    piv = tab[row, col]
    for j in range(cols):
        tab[row, j] /= piv
    for i in range(rows):
        if i != row:
            f = tab[i, col]
            if f != 0.0:
                for j in range(cols):
                    tab[i, j] -= f * tab[row, j]
    tab[row, col] = 1.0


def _pivot_numpy(tab, row, col):
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])
    tab[row, col] = 1.0


def _bland_numpy(tab, basis, active, tol, max_iter):
    m = tab.shape[0] - 1
    width = tab.shape[1] - 1
    for it in range(max_iter):
        candidates = np.flatnonzero(active & (tab[m, :width] < -tol))
        if candidates.size == 0:
            return 0, it
        enter = int(candidates[0])
        col = tab[:m, enter]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            return 1, it
        ratios = tab[rows, width] / col[rows]
        low = ratios.min()
        ties = rows[ratios <= low + 1e-15]
        leave = int(ties[np.argmin(basis[ties])])
        _pivot_numpy(tab, leave, enter)
        basis[leave] = enter
    return 2, max_iter


# --------------------------------------------------------------------------
# dispatch

if HAVE_NUMBA:
    _pivot_loops = njit(_pivot_loops)
    _seesaw_fast = njit(_seesaw_loops)
    _det_k_fast = njit(_det_k_loops)
    _rac_enum_fast = njit(_rac_enum_loops)
    _bland_loops = njit(_bland_loops)
    _bland_fast = _bland_loops
    _pivot_fast = _pivot_loops
    BACKEND = "numba"
else:
    _seesaw_fast = _seesaw_numpy
    _det_k_fast = _det_k_numpy
    _rac_enum_fast = _rac_enum_numpy
    _bland_fast = _bland_numpy
    _pivot_fast = _pivot_numpy
    BACKEND = "numpy"

IMPLEMENTATIONS = {
    "seesaw": {"numpy": _seesaw_numpy},
    "deterministic_k": {"numpy": _det_k_numpy},
    "rac_enumeration": {"numpy": _rac_enum_numpy},
    "bland": {"numpy": _bland_numpy},
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["seesaw"]["numba"] = _seesaw_fast
    IMPLEMENTATIONS["deterministic_k"]["numba"] = _det_k_fast
    IMPLEMENTATIONS["rac_enumeration"]["numba"] = _rac_enum_fast
    IMPLEMENTATIONS["bland"]["numba"] = _bland_fast


def seesaw_run(signs: np.ndarray, alice: np.ndarray, bob: np.ndarray,
               tol: float, max_sweeps: int):
    """Alternate exact best responses until a full sweep gains less than ``tol``.

    Returns ``(alice, bob, trace, sweeps, perturbations)``; ``trace`` holds K
    before the first update and after every half sweep.
    """
    return _seesaw_fast(
        np.ascontiguousarray(signs, dtype=np.float64),
        np.ascontiguousarray(alice, dtype=np.float64),
        np.ascontiguousarray(bob, dtype=np.float64),
        float(tol),
        int(max_sweeps),
    )


def deterministic_k_values(signs: np.ndarray) -> np.ndarray:
    """K maximised over Alice, for every Bob assignment code 0..2^n-1."""
    return _det_k_fast(np.ascontiguousarray(signs, dtype=np.float64))


def rac_exhaustive(n: int) -> tuple[int, int, int]:
    """Best win count over all deterministic encodings and decodings."""
    best, enc, dec = _rac_enum_fast(int(n))
    return int(best), int(enc), int(dec)


def bland_iterate(tab: np.ndarray, basis: np.ndarray, active: np.ndarray,
                  tol: float, max_iter: int) -> tuple[int, int]:
    """Run simplex pivots in place. Status 0 optimal, 1 unbounded, 2 iteration cap."""
    status, iters = _bland_fast(tab, basis, active, float(tol), int(max_iter))
    return int(status), int(iters)


def pivot(tab: np.ndarray, row: int, col: int) -> None:
    _pivot_fast(tab, int(row), int(col))
