"""Laplacian spectra, spectral measures and exact Laplacian moments.

The normalized trace ``Tr(L^p) / n`` is computed two ways, both in exact
integer arithmetic: globally from walk sums over the whole graph, and
locally as the census-weighted average of the root entry of ``L^p`` on
radius-``p`` balls. The two must agree exactly.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .census import BallCensus, RootedBall, census
from .coloring import EdgeColoring
from .errors import BadParams, RadiusTooSmall, TooLarge
from .graph import Graph
from .jacobi import jacobi_eigh

MAX_DENSE = 4096
# below this size the Jacobi solver is used by default; above it LAPACK
JACOBI_AUTO_LIMIT = 160
S_TOL = 1e-9


def laplacian(g: Graph) -> np.ndarray:
    """Dense integer Laplacian: degree on the diagonal, -1 per edge."""
    lap = np.zeros((g.n, g.n), dtype=np.int64)
    for x in range(g.n):
        lap[x, x] = len(g.adj[x])
        for y in g.adj[x]:
            lap[x, y] = -1
    return lap


@dataclass(frozen=True)
class SpectralMeasure:
    """Uniform point measure on the Laplacian eigenvalues (ascending)."""

    eigenvalues: np.ndarray
    d: int
    clamped: float = 0.0
    method: str = "jacobi"

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def cdf(self, x: float) -> float:
        return bisect.bisect_right(self.eigenvalues.tolist(), x) / self.n

    def moment(self, p: int) -> float:
        return float(np.mean(self.eigenvalues ** p))

    @property
    def spectral_gap(self) -> float:
        """Second smallest eigenvalue (first non-zero one for connected graphs)."""
        return float(self.eigenvalues[1]) if self.n > 1 else 0.0


def _eigh(g: Graph, method: str, vectors: bool):
    if g.n > MAX_DENSE:
        raise TooLarge(f"n={g.n} exceeds dense solver limit {MAX_DENSE}")
    if method == "auto":
        method = "jacobi" if g.n <= JACOBI_AUTO_LIMIT else "lapack"
    lap = laplacian(g).astype(float)
    if method == "jacobi":
        out = jacobi_eigh(lap, vectors=vectors)
    elif method == "lapack":
        out = np.linalg.eigh(lap) if vectors else np.linalg.eigvalsh(lap)
    else:
        raise BadParams(f"unknown eigensolver {method!r}")
    return out, method


def spectrum(g: Graph, method: str = "auto") -> SpectralMeasure:
    """All Laplacian eigenvalues with multiplicity, clamped to ``[0, 2d]``."""
    w, used = _eigh(g, method, vectors=False)
    w = np.sort(np.asarray(w, dtype=float))
    clipped = np.clip(w, 0.0, 2.0 * g.d)
    clamp = float(np.max(np.abs(clipped - w))) if len(w) else 0.0
    return SpectralMeasure(clipped, g.d, clamp, used)


def fiedler_vector(g: Graph, method: str = "auto") -> np.ndarray:
    (w, v), _ = _eigh(g, method, vectors=True)
    return np.asarray(v)[:, 1]


def s_fraction(m: SpectralMeasure, delta: float) -> Fraction:
    """Fraction of eigenvalues ``<= delta`` (with absolute slack ``S_TOL``)."""
    if delta < 0:
        raise BadParams("delta must be non-negative")
    count = int(np.count_nonzero(m.eigenvalues <= float(delta) + S_TOL))
    return Fraction(count, m.n)


# ---------------------------------------------------------------------------
# exact moments


def _apply(adj: Sequence[Sequence[int]], vec: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for x, val in vec.items():
        nb = adj[x]
        out[x] = out.get(x, 0) + len(nb) * val
        for y in nb:
            out[y] = out.get(y, 0) - val
    return {x: v for x, v in out.items() if v}


def _diag_power(adj: Sequence[Sequence[int]], v: int, p: int) -> int:
    """``(L^p)[v, v]`` as ``<L^a e_v, L^b e_v>`` with ``a + b = p``."""
    half = p // 2
    vec = {v: 1}
    for _ in range(half):
        vec = _apply(adj, vec)
    left = vec
    right = vec
    if p % 2:
        right = _apply(adj, vec)
    return sum(val * right.get(x, 0) for x, val in left.items())


def moment_global(g: Graph, p: int) -> Fraction:
    """Exact ``Tr(L^p) / n`` by sparse integer matrix-vector products."""
    if p < 0:
        raise BadParams("power must be non-negative")
    if g.n == 0:
        raise BadParams("empty graph")
    total = sum(_diag_power(g.adj, v, p) for v in range(g.n))
    return Fraction(total, g.n)


def root_moment(b: RootedBall, p: int) -> int:
    """Root entry of ``L_ball^p``; equals ``(L_G^p)[v, v]`` when ``radius >= p``."""
    if p < 0:
        raise BadParams("power must be non-negative")
    if b.radius < p:
        raise RadiusTooSmall(f"ball radius {b.radius} < power {p}")
    adj = [tuple(y - 1 for y, _ in row) for row in b.nbrs]
    return _diag_power(adj, 0, p)


def moment_from_census(c: BallCensus, p: int) -> Fraction:
    total = 0
    for code, count in c.counts.items():
        total += count * root_moment(RootedBall.from_code(code, c.r, c.d), p)
    return Fraction(total, c.n)


def moment_local(g: Graph, col: EdgeColoring, p: int) -> Fraction:
    """``sum_A p_G(A) * root_moment(A, p)`` over the radius-``p`` census."""
    if p < 0:
        raise BadParams("power must be non-negative")
    return moment_from_census(census(g, col, p), p)


# ---------------------------------------------------------------------------
# histograms and distances


@dataclass(frozen=True)
class Histogram:
    d: int
    edges: list[float]
    masses: list[float]
    counts: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"d": self.d, "bins": len(self.masses), "edges": self.edges, "masses": self.masses}


def ids_histogram(m: SpectralMeasure, bins: int) -> Histogram:
    """Equal-width right-closed bins on ``[0, 2d]``; first bin includes 0.

    An eigenvalue within ``S_TOL`` above an edge is counted in the bin that
    edge closes, matching :func:`s_fraction`.
    """
    if bins < 1:
        raise BadParams("bins must be >= 1")
    top = 2.0 * m.d
    edges = np.linspace(0.0, top, bins + 1)
    idx = np.searchsorted(edges[1:], m.eigenvalues - S_TOL, side="left")
    idx = np.clip(idx, 0, bins - 1)
    counts = np.bincount(idx, minlength=bins)
    return Histogram(
        m.d,
        edges.tolist(),
        (counts / m.n).tolist(),
        counts.tolist(),
    )


def kolmogorov_distance(a: SpectralMeasure, b: SpectralMeasure) -> float:
    """``sup_x |F_a(x) - F_b(x)|`` over the eigenvalue breakpoints."""
    if a.d != b.d:
        raise BadParams(f"measures have different degree bounds ({a.d} vs {b.d})")
    pts = np.union1d(a.eigenvalues, b.eigenvalues)
    fa = np.searchsorted(a.eigenvalues, pts, side="right") / a.n
    fb = np.searchsorted(b.eigenvalues, pts, side="right") / b.n
    return float(np.max(np.abs(fa - fb))) if len(pts) else 0.0


def spectral_moments(m: SpectralMeasure, max_p: int) -> list[float]:
    return [m.moment(p) for p in range(max_p + 1)]
