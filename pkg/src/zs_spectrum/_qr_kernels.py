"""Compiled kernels for the dense complex eigensolver.

Everything here works in place on C-contiguous complex128 arrays and
stays allocation-free inside the hot loops.  The Python-facing wrappers
live in eigensolver.py.
"""
import numpy as np
from numba import njit

EPS = float(np.finfo(np.float64).eps)


@njit(cache=True, nogil=True)
def balance(a):
    """Diagonal similarity scaling by radix powers (in place).

    Rows and columns are rescaled by powers of two until their 1-norms
    roughly agree, which costs no rounding and tames the wildly
    different row scales the mapped derivative produces.  Returns the
    applied scale per index.
    """
    m = a.shape[0]
    scale = np.ones(m)
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(m):
            c = 0.0
            r = 0.0
            for j in range(m):
                if j != i:
                    c += abs(a[j, i])
                    r += abs(a[i, j])
            if c == 0.0 or r == 0.0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                scale[i] *= f
                inv = 1.0 / f
                for j in range(m):
                    a[i, j] *= inv
                for j in range(m):
                    a[j, i] *= f
    return scale


@njit(cache=True, nogil=True)
def hessenberg(a):
    """Householder reduction to upper Hessenberg form, in place."""
    m = a.shape[0]
    for k in range(m - 2):
        xnorm2 = 0.0
        for i in range(k + 1, m):
            xnorm2 += a[i, k].real ** 2 + a[i, k].imag ** 2
        if xnorm2 == 0.0:
            continue
        xnorm = np.sqrt(xnorm2)
        alpha = a[k + 1, k]
        aa = abs(alpha)
        if aa == 0.0:
            phase = 1.0 + 0.0j
        else:
            phase = alpha / aa
        beta = -phase * xnorm
        nv = m - k - 1
        v = np.empty(nv, dtype=np.complex128)
        v[0] = alpha - beta
        for i in range(1, nv):
            v[i] = a[k + 1 + i, k]
        vnorm2 = 0.0
        for i in range(nv):
            vnorm2 += v[i].real ** 2 + v[i].imag ** 2
        if vnorm2 == 0.0:
            continue
        tau = 2.0 / vnorm2
        # left: rows k+1.., columns k..; w = v^H A then rank-1 update
        w = np.zeros(m - k, dtype=np.complex128)
        for i in range(nv):
            cv = np.conj(v[i])
            row = k + 1 + i
            for j in range(k, m):
                w[j - k] += cv * a[row, j]
        for i in range(nv):
            tv = tau * v[i]
            row = k + 1 + i
            for j in range(k, m):
                a[row, j] -= tv * w[j - k]
        # right: all rows, columns k+1..; s = A v then rank-1 update
        for i in range(m):
            s = 0.0 + 0.0j
            for jj in range(nv):
                s += a[i, k + 1 + jj] * v[jj]
            s *= tau
            for jj in range(nv):
                a[i, k + 1 + jj] -= s * np.conj(v[jj])
        a[k + 1, k] = beta
        for i in range(k + 2, m):
            a[i, k] = 0.0


@njit(cache=True, nogil=True)
def shifted_qr_sweep(h, shift, lo, hi, cs, sn):
    """One explicit shifted QR pass on the window [lo, hi], in place.

    Subtract the shift, zero the subdiagonal with a descending sweep of
    Givens rotations, multiply the factors back in reverse order, add
    the shift back.  The result is again upper Hessenberg and similar
    to the input.  Updates stay inside the window: once a subdiagonal
    is negligible the coupling blocks no longer influence any
    eigenvalue.
    """
    for i in range(lo, hi + 1):
        h[i, i] -= shift
    for j in range(lo, hi):
        x = h[j, j]
        y = h[j + 1, j]
        ax = abs(x)
        ay = abs(y)
        r = np.hypot(ax, ay)
        if r == 0.0:
            c = 1.0
            s = 0.0 + 0.0j
        elif ax == 0.0:
            c = 0.0
            s = 1.0 + 0.0j
        else:
            c = ax / r
            s = np.conj(y) * (x / ax) / r
        cs[j] = c
        sn[j] = s
        cj = np.conj(s)
        for col in range(j, hi + 1):
            t1 = h[j, col]
            t2 = h[j + 1, col]
            h[j, col] = c * t1 + s * t2
            h[j + 1, col] = -cj * t1 + c * t2
    for j in range(lo, hi):
        c = cs[j]
        s = sn[j]
        cj = np.conj(s)
        for row in range(lo, j + 2):
            t1 = h[row, j]
            t2 = h[row, j + 1]
            h[row, j] = c * t1 + cj * t2
            h[row, j + 1] = -s * t1 + c * t2
    for i in range(lo, hi + 1):
        h[i, i] += shift
    return h


@njit(cache=True, nogil=True)
def _two_by_two_eigs(a, b, c, d):
    """Stable closed-form eigenvalues of [[a, b], [c, d]]."""
    half_tr = 0.5 * (a + d)
    det = a * d - b * c
    disc = np.sqrt(half_tr * half_tr - det)
    r1 = half_tr + disc
    r2 = half_tr - disc
    if abs(r1) >= abs(r2):
        big = r1
    else:
        big = r2
    if abs(big) == 0.0:
        return r1, r2
    # the smaller root from the product avoids cancellation
    small = det / big
    return big, small


@njit(cache=True, nogil=True)
def qr_eigvals(h, max_steps, cs, sn):
    """Shifted QR with deflation on an upper Hessenberg matrix.

    Eats the matrix in place from the bottom: negligible subdiagonals
    split off trailing 1x1 and 2x2 blocks whose eigenvalues are read
    directly; otherwise one QR step with the trailing 2x2 eigenvalue
    nearest the corner entry (an occasional magnitude-based shift
    breaks symmetric stalls).  Returns (eigenvalues, steps used,
    number unresolved); unresolved entries hold the current diagonal.
    """
    m = h.shape[0]
    ev = np.zeros(m, dtype=np.complex128)
    hi = m - 1
    steps = 0
    block_steps = 0
    while hi >= 0:
        if hi == 0:
            ev[0] = h[0, 0]
            hi = -1
            break
        lo = hi
        while lo > 0:
            if abs(h[lo, lo - 1]) <= EPS * (
                abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            ):
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            ev[hi] = h[hi, hi]
            hi -= 1
            block_steps = 0
            continue
        if lo == hi - 1:
            e1, e2 = _two_by_two_eigs(
                h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi]
            )
            ev[hi] = e1
            ev[lo] = e2
            hi = lo - 1
            block_steps = 0
            continue
        if steps >= max_steps:
            break
        e1, e2 = _two_by_two_eigs(
            h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi]
        )
        corner = h[hi, hi]
        if abs(e1 - corner) <= abs(e2 - corner):
            shift = e1
        else:
            shift = e2
        if block_steps > 0 and block_steps % 12 == 0:
            extra = abs(h[hi, hi - 1])
            if hi - 1 > lo:
                extra += abs(h[hi - 1, hi - 2])
            shift = corner + extra
        shifted_qr_sweep(h, shift, lo, hi, cs, sn)
        steps += 1
        block_steps += 1
    unresolved = hi + 1
    for i in range(unresolved):
        ev[i] = h[i, i]
    return ev, steps, unresolved
