"""In-place gate kernels on dense digit registers.

Every kernel acts on ``psi`` of shape ``(d**n, batch)`` (C order, first wire
most significant) and mutates it. Two interchangeable backends exist:
numba-compiled loops over strided indices, and a pure numpy path using
reshaped views. ``QDNET_DISABLE_JIT=1`` forces the numpy path; it is also
used when numba cannot be imported.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


# -- numpy backend -----------------------------------------------------------

def _dft(d: int, sign: int) -> np.ndarray:
    k = np.arange(d)
    return np.exp(sign * 2j * np.pi * (np.outer(k, k) % d) / d) / np.sqrt(d)


def _np_view(psi, d, n):
    return psi.reshape((d,) * n + (psi.shape[1],))


def np_fourier(psi, d, n, q, sign):
    t = _np_view(psi, d, n)
    moved = np.tensordot(_dft(d, sign), t, axes=([1], [q]))
    t[...] = np.moveaxis(moved, 0, q)


def np_cshift(psi, d, n, c, t, power):
    view = _np_view(psi, d, n)
    # after removing the control axis, the target axis index shifts down if c < t
    taxis = t - 1 if c < t else t
    for gc in range(1, d):
        s = (power * gc) % d
        if s:
            sl = [slice(None)] * (n + 1)
            sl[c] = gc
            sl = tuple(sl)
            view[sl] = np.roll(view[sl], s, axis=taxis)


def np_cphase(psi, d, n, i, j, power):
    view = _np_view(psi, d, n)
    g = np.arange(d)
    table = np.exp(2j * np.pi * (power * np.outer(g, g) % d) / d)
    shape = [1] * (n + 1)
    shape[i], shape[j] = d, d
    view *= table.reshape(shape) if i < j else table.T.reshape(shape)


numpy_kernels = SimpleNamespace(
    name="numpy", fourier=np_fourier, cshift=np_cshift, cphase=np_cphase)


# -- numba backend -----------------------------------------------------------

def _nb_fourier(psi, d, n, q, sign):
    dim, batch = psi.shape
    stride = d ** (n - 1 - q)
    block = stride * d
    norm = 1.0 / np.sqrt(d)
    if d == 2:
        for base in range(0, dim, block):
            for i0 in range(base, base + stride):
                for c in range(batch):
                    a = psi[i0, c]
                    b = psi[i0 + stride, c]
                    psi[i0, c] = (a + b) * norm
                    psi[i0 + stride, c] = (a - b) * norm
        return
    w = np.empty((d, d), np.complex128)
    for a in range(d):
        for b in range(d):
            w[a, b] = np.exp(sign * 2j * np.pi * ((a * b) % d) / d) * norm
    tmp = np.empty(d, np.complex128)
    for base in range(0, dim, block):
        for i0 in range(base, base + stride):
            for c in range(batch):
                for g in range(d):
                    tmp[g] = psi[i0 + g * stride, c]
                for h in range(d):
                    acc = 0j
                    for g in range(d):
                        acc += w[h, g] * tmp[g]
                    psi[i0 + h * stride, c] = acc


def _nb_cshift(psi, d, n, c, t, power):
    dim, batch = psi.shape
    cstride = d ** (n - 1 - c)
    tstride = d ** (n - 1 - t)
    # indices with both active digits zero: x * hi*d + y * lo*d + z
    hi, lo = max(cstride, tstride), min(cstride, tstride)
    tmp = np.empty(d, np.complex128)
    for gc in range(1, d):
        s = (power * gc) % d
        if s == 0:
            continue
        for x in range(dim // (hi * d)):
            for y in range(hi // (lo * d)):
                for z in range(lo):
                    i = x * hi * d + y * lo * d + z + gc * cstride
                    for b in range(batch):
                        for k in range(d):
                            tmp[k] = psi[i + k * tstride, b]
                        for k in range(d):
                            psi[i + ((k + s) % d) * tstride, b] = tmp[k]


def _nb_cphase(psi, d, n, i, j, power):
    dim, batch = psi.shape
    istride = d ** (n - 1 - i)
    jstride = d ** (n - 1 - j)
    hi, lo = max(istride, jstride), min(istride, jstride)
    for a in range(1, d):
        for b in range(1, d):
            e = (power * a * b) % d
            if e == 0:
                continue
            ph = np.exp(2j * np.pi * e / d)
            offset = a * istride + b * jstride
            for x in range(dim // (hi * d)):
                for y in range(hi // (lo * d)):
                    for z in range(lo):
                        idx = x * hi * d + y * lo * d + z + offset
                        for col in range(batch):
                            psi[idx, col] *= ph


if numba is not None:
    _jit = numba.njit(cache=True, nogil=True)
    numba_kernels = SimpleNamespace(
        name="numba",
        fourier=_jit(_nb_fourier),
        cshift=_jit(_nb_cshift),
        cphase=_jit(_nb_cphase),
    )
else:  # pragma: no cover
    numba_kernels = None


def select_backend():
    if numba_kernels is None or _flag("QDNET_DISABLE_JIT"):
        return numpy_kernels
    return numba_kernels


backend = select_backend()
