"""Numeric helpers on sampled plane curves (numpy)."""

import numpy as np


def _segments(points, closed=True):
    """Segments between consecutive non-None points; None breaks the path."""
    segs = []
    n = len(points)
    last = n if closed else n - 1
    for i in range(last):
        a, b = points[i], points[(i + 1) % n]
        if a is None or b is None:
            continue
        segs.append((a, b))
    return np.array(segs, dtype=float).reshape(-1, 2, 2)


def count_self_intersections(points, closed=True):
    """Number of crossing pairs among non-adjacent segments of the sampled polyline."""
    segs = _segments(points, closed)
    m = len(segs)
    if m < 4:
        return 0
    p, r = segs[:, 0, :], segs[:, 1, :] - segs[:, 0, :]
    count = 0
    for i in range(m - 2):
        q, s = p[i + 2:], r[i + 2:]
        rxs = r[i, 0] * s[:, 1] - r[i, 1] * s[:, 0]
        qp = q - p[i]
        t = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0])
        u = (qp[:, 0] * r[i, 1] - qp[:, 1] * r[i, 0])
        with np.errstate(divide="ignore", invalid="ignore"):
            t, u = t / rxs, u / rxs
        hit = (rxs != 0) & (t > 0) & (t < 1) & (u > 0) & (u < 1)
        if closed and i == 0:
            # the last segment touches the first one
            hit[-1] = hit[-1] and not np.allclose(segs[-1, 1], segs[0, 0])
        count += int(hit.sum())
    return count


def circle_fit_residual(points):
    """Algebraic least-squares circle; returns (centre, radius, max |r_i - R| / R)."""
    pts = np.array([p for p in points if p is not None], dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    A = np.column_stack([x, y, np.ones_like(x)])
    rhs = x * x + y * y
    (a, b, c), *_ = np.linalg.lstsq(A, rhs, rcond=None)
    cx, cy = a / 2, b / 2
    R = np.sqrt(c + cx * cx + cy * cy)
    dist = np.hypot(x - cx, y - cy)
    return (float(cx), float(cy)), float(R), float(np.max(np.abs(dist - R)) / R)


def is_closed(points, tol=None):
    """First and last sampled points are close relative to the typical step."""
    pts = [p for p in points if p is not None]
    if len(pts) < 3:
        return False
    arr = np.array(pts, dtype=float)
    steps = np.hypot(*np.diff(arr, axis=0).T)
    gap = float(np.hypot(*(arr[0] - arr[-1])))
    tol = tol if tol is not None else 10 * float(np.median(steps))
    return gap <= tol
