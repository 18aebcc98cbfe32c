# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bilinear gather/scatter.

Must stay numerically in lockstep with _bilinear_py: same clamping, same
corner-weight expressions, same accumulation order.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()


def bilinear_gather(cnp.ndarray[cnp.float64_t, ndim=3] grid,
                    cnp.ndarray[cnp.float64_t, ndim=2] pts):
    cdef Py_ssize_t h = grid.shape[0]
    cdef Py_ssize_t w = grid.shape[1]
    cdef Py_ssize_t d = grid.shape[2]
    cdef Py_ssize_t n = pts.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, d), dtype=np.float64)
    cdef Py_ssize_t i, c, x0, y0, x1, y1
    cdef double x, y, fx, fy, w00, w01, w10, w11, acc

    for i in range(n):
        x = pts[i, 0]
        if x < 0.0:
            x = 0.0
        if x > w - 1.0:
            x = w - 1.0
        y = pts[i, 1]
        if y < 0.0:
            y = 0.0
        if y > h - 1.0:
            y = h - 1.0
        x0 = <Py_ssize_t>floor(x)
        if x0 > w - 2:
            x0 = w - 2 if w >= 2 else 0
        y0 = <Py_ssize_t>floor(y)
        if y0 > h - 2:
            y0 = h - 2 if h >= 2 else 0
        fx = x - x0
        fy = y - y0
        x1 = x0 + 1 if x0 + 1 < w else w - 1
        y1 = y0 + 1 if y0 + 1 < h else h - 1
        w00 = (1.0 - fy) * (1.0 - fx)
        w01 = (1.0 - fy) * fx
        w10 = fy * (1.0 - fx)
        w11 = fy * fx
        for c in range(d):
            acc = w00 * grid[y0, x0, c]
            acc = acc + w01 * grid[y0, x1, c]
            acc = acc + w10 * grid[y1, x0, c]
            acc = acc + w11 * grid[y1, x1, c]
            out[i, c] = acc
    return out


def bilinear_scatter(cnp.ndarray[cnp.float64_t, ndim=3] grid,
                     cnp.ndarray[cnp.float64_t, ndim=2] pts,
                     cnp.ndarray[cnp.float64_t, ndim=2] grad_out):
    cdef Py_ssize_t h = grid.shape[0]
    cdef Py_ssize_t w = grid.shape[1]
    cdef Py_ssize_t d = grid.shape[2]
    cdef Py_ssize_t n = pts.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=3] grad_grid = np.zeros((h, w, d), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] grad_pts = np.empty((n, 2), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xc = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] yc = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] x0a = np.empty(n, dtype=np.intp)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] y0a = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t i, c, x0, y0, x1, y1
    cdef double x, y, fx, fy, wgt, acc_x, acc_y, dxc, dyc
    cdef double g00, g01, g10, g11

    for i in range(n):
        x = pts[i, 0]
        if x < 0.0:
            x = 0.0
        if x > w - 1.0:
            x = w - 1.0
        y = pts[i, 1]
        if y < 0.0:
            y = 0.0
        if y > h - 1.0:
            y = h - 1.0
        xc[i] = x
        yc[i] = y
        x0 = <Py_ssize_t>floor(x)
        if x0 > w - 2:
            x0 = w - 2 if w >= 2 else 0
        y0 = <Py_ssize_t>floor(y)
        if y0 > h - 2:
            y0 = h - 2 if h >= 2 else 0
        x0a[i] = x0
        y0a[i] = y0

    # grid gradient: one pass per corner, points in order, matching the
    # four np.add.at calls of the python backend
    for i in range(n):
        x0 = x0a[i]
        y0 = y0a[i]
        fx = xc[i] - x0
        fy = yc[i] - y0
        wgt = (1.0 - fy) * (1.0 - fx)
        for c in range(d):
            grad_grid[y0, x0, c] += wgt * grad_out[i, c]
    for i in range(n):
        x0 = x0a[i]
        y0 = y0a[i]
        x1 = x0 + 1 if x0 + 1 < w else w - 1
        fx = xc[i] - x0
        fy = yc[i] - y0
        wgt = (1.0 - fy) * fx
        for c in range(d):
            grad_grid[y0, x1, c] += wgt * grad_out[i, c]
    for i in range(n):
        x0 = x0a[i]
        y0 = y0a[i]
        y1 = y0 + 1 if y0 + 1 < h else h - 1
        fx = xc[i] - x0
        fy = yc[i] - y0
        wgt = fy * (1.0 - fx)
        for c in range(d):
            grad_grid[y1, x0, c] += wgt * grad_out[i, c]
    for i in range(n):
        x0 = x0a[i]
        y0 = y0a[i]
        x1 = x0 + 1 if x0 + 1 < w else w - 1
        y1 = y0 + 1 if y0 + 1 < h else h - 1
        fx = xc[i] - x0
        fy = yc[i] - y0
        wgt = fy * fx
        for c in range(d):
            grad_grid[y1, x1, c] += wgt * grad_out[i, c]

    for i in range(n):
        x0 = x0a[i]
        y0 = y0a[i]
        x1 = x0 + 1 if x0 + 1 < w else w - 1
        y1 = y0 + 1 if y0 + 1 < h else h - 1
        fx = xc[i] - x0
        fy = yc[i] - y0
        acc_x = 0.0
        acc_y = 0.0
        for c in range(d):
            g00 = grid[y0, x0, c]
            g01 = grid[y0, x1, c]
            g10 = grid[y1, x0, c]
            g11 = grid[y1, x1, c]
            dxc = (1.0 - fy) * (g01 - g00) + fy * (g11 - g10)
            dyc = (1.0 - fx) * (g10 - g00) + fx * (g11 - g01)
            acc_x = acc_x + grad_out[i, c] * dxc
            acc_y = acc_y + grad_out[i, c] * dyc
        grad_pts[i, 0] = acc_x if pts[i, 0] == xc[i] else 0.0
        grad_pts[i, 1] = acc_y if pts[i, 1] == yc[i] else 0.0
    return grad_grid, grad_pts
