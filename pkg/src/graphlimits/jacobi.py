"""Cyclic Jacobi eigensolver for dense real symmetric matrices."""

from __future__ import annotations

import math

import numpy as np


def jacobi_eigh(
    a: np.ndarray,
    *,
    tol: float = 1e-12,
    max_sweeps: int = 100,
    vectors: bool = False,
):
    """Eigenvalues (ascending) and optionally eigenvectors of symmetric ``a``.

    Sweeps over all pairs ``(p, q)``, ``p < q``, annihilating ``a[p, q]`` with
    a plane rotation, until the off-diagonal Frobenius norm falls below
    ``tol`` times the Frobenius norm of the input.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n) if vectors else None
    target = tol * float(np.linalg.norm(a))

    def off_norm() -> float:
        off = a - np.diag(np.diag(a))
        return float(np.linalg.norm(off))

    for _ in range(max_sweeps):
        if off_norm() <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app, aqq = a[p, p], a[q, q]
                diff = aqq - app
                if abs(diff) > 1e150 * abs(apq):
                    # theta**2 would overflow; t ~ 1 / (2 theta)
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
    else:
        if off_norm() > target:
            raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    if vectors:
        return w[order], v[:, order]
    return w[order]
