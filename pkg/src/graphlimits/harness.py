"""Sequence experiments: census convergence, spectral convergence, and the
small-eigenvalue / good-set sweep.

Reports are plain JSON-ready dicts. Exact rationals are written as strings
(``"3/4"``) next to a float copy. Reports carry no timestamps, so the same
spec and seed give byte-identical output.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from .census import census, summarize, tv_distance
from .coloring import EdgeColoring, misra_gries
from .errors import BadParams
from .generators import FAMILY_DEGREE, generate_family, member_seed
from .graph import Graph
from .io import read_coloring, read_graph
from .isoperimetry import DEFAULT_BUDGET, isoperimetry_report
from .spectral import (
    ids_histogram,
    kolmogorov_distance,
    moment_from_census,
    moment_global,
    s_fraction,
    spectrum,
)

FAMILIES = ("cycle", "torus2d", "random_regular", "binary_tree", "random_bounded", "complete", "from_files")
PLATEAU_TOL = 1e-3


@dataclass(frozen=True)
class SequenceSpec:
    """A graph sequence: a family, one size parameter per member, shared ``d``.

    ``sizes`` means n for cycles, random and complete graphs, the side length
    for ``torus2d`` and the depth for ``binary_tree``. ``from_files`` reads
    ``paths`` (and optional ``coloring_paths``) instead.
    """

    family: str
    sizes: tuple[int, ...] = ()
    d: int | None = None
    seed: int = 0
    paths: tuple[str, ...] = ()
    coloring_paths: tuple[str, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParams(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family == "from_files":
            if not self.paths:
                raise BadParams("from_files needs at least one path")
            if self.coloring_paths and len(self.coloring_paths) != len(self.paths):
                raise BadParams("coloring_paths must match paths one to one")
        else:
            if not self.sizes:
                raise BadParams("sizes must be non-empty")
            if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
                raise BadParams("sizes must be strictly increasing")
        if not 0 <= self.seed <= 2**64 - 1:
            raise BadParams("seed must be a 64-bit unsigned integer")

    def __len__(self) -> int:
        return len(self.paths) if self.family == "from_files" else len(self.sizes)

    @property
    def degree_bound(self) -> int | None:
        return self.d if self.d is not None else FAMILY_DEGREE.get(self.family)


def generate(spec: SequenceSpec, index: int) -> tuple[Graph, EdgeColoring]:
    if not 0 <= index < len(spec):
        raise BadParams(f"member index {index} out of range")
    if spec.family == "from_files":
        g, _ = read_graph(spec.paths[index])
        if spec.d is not None and g.d != spec.d:
            raise BadParams(f"{spec.paths[index]} declares d={g.d}, sequence has d={spec.d}")
        if not g.is_connected():
            raise BadParams(f"{spec.paths[index]} is not connected")
        if spec.coloring_paths:
            return g, read_coloring(spec.coloring_paths[index], g)
        return g, misra_gries(g)
    g, col = generate_family(spec.family, spec.sizes[index], spec.d, member_seed(spec.seed, index))
    if not g.is_connected():
        raise BadParams(f"{spec.family}({spec.sizes[index]}) is not connected")
    return g, col


def members(spec: SequenceSpec):
    for i in range(len(spec)):
        yield generate(spec, i)


def _frac(x: Fraction) -> dict:
    return {"exact": str(x), "float": float(x)}


def provenance(spec: SequenceSpec, **params) -> dict:
    return {
        "tool": "graphlimits",
        "version": __version__,
        "spec": asdict(spec),
        "member_seeds": [member_seed(spec.seed, i) for i in range(len(spec))],
        "params": params,
    }


def _map_members(fn, spec: SequenceSpec, args: tuple, workers: int | None) -> list:
    jobs = [(spec, i) + args for i in range(len(spec))]
    if workers is None or workers <= 1 or len(jobs) < 2:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # pool.map preserves job order
        return list(pool.map(fn, jobs))


# ---------------------------------------------------------------------------
# census convergence


def _census_job(job):
    spec, i, r = job
    g, col = generate(spec, i)
    return g.n, census(g, col, r)


def run_convergence(spec: SequenceSpec, r: int, *, workers: int | None = None) -> dict:
    """Radius-``r`` census per member and TV distance between consecutive members."""
    results = _map_members(_census_job, spec, (r,), workers)
    rows = []
    for i, (n, c) in enumerate(results):
        rows.append({"index": i, "n": n, "census": summarize(c)})
    pairs = []
    for i in range(1, len(results)):
        a, b = results[i - 1][1], results[i][1]
        tv = tv_distance(a, b) if a.d == b.d else Fraction(1)
        pairs.append({"members": [i - 1, i], "tv": _frac(tv), "plateau": float(tv) < PLATEAU_TOL})
    return {
        "kind": "converge",
        "provenance": provenance(spec, r=r),
        "members": rows,
        "tv_consecutive": pairs,
        "plateau": bool(pairs) and pairs[-1]["plateau"],
    }


def census_sequence(spec: SequenceSpec, r: int):
    return [c for _, c in (_census_job((spec, i, r)) for i in range(len(spec)))]


# ---------------------------------------------------------------------------
# spectral convergence


def _ids_job(job):
    spec, i, bins, max_p, deltas = job
    g, col = generate(spec, i)
    m = spectrum(g)
    hist = ids_histogram(m, bins)
    moments = []
    # one census at the largest radius, coarsened for the smaller powers
    top = census(g, col, max_p)
    for p in range(max_p + 1):
        glob = moment_global(g, p)
        loc = moment_from_census(top.coarsen(p) if p < max_p else top, p)
        moments.append(
            {
                "p": p,
                "global": str(glob),
                "local": str(loc),
                "equal": glob == loc,
                "spectral": m.moment(p),
            }
        )
    row = {
        "n": g.n,
        "d": g.d,
        "eigensolver": m.method,
        "lambda_min": float(m.eigenvalues[0]),
        "lambda_max": float(m.eigenvalues[-1]),
        "spectral_gap": m.spectral_gap,
        "clamped": m.clamped,
        "s_fraction": {str(dl): _frac(s_fraction(m, dl)) for dl in deltas},
        "histogram": hist.to_json(),
        "moments": moments,
    }
    return row, m


def run_ids(
    spec: SequenceSpec,
    bins: int,
    max_p: int,
    *,
    deltas: tuple[float, ...] = (0.5,),
    workers: int | None = None,
) -> dict:
    """Spectra, histograms, exact moments both ways, Kolmogorov distances."""
    results = _map_members(_ids_job, spec, (bins, max_p, tuple(deltas)), workers)
    rows = []
    for i, (row, _) in enumerate(results):
        rows.append({"index": i, **row})
    pairs = []
    for i in range(1, len(results)):
        a, b = results[i - 1][1], results[i][1]
        pairs.append({"members": [i - 1, i], "kolmogorov": kolmogorov_distance(a, b)})
    return {
        "kind": "ids",
        "provenance": provenance(spec, bins=bins, max_p=max_p, deltas=list(deltas)),
        "members": rows,
        "kolmogorov_consecutive": pairs,
        "moments_agree": all(m["equal"] for r in rows for m in r["moments"]),
    }


# ---------------------------------------------------------------------------
# small eigenvalues versus small good sets


def _thm2_job(job):
    spec, i, delta, eps, k, budget = job
    g, _ = generate(spec, i)
    m = spectrum(g)
    rep = isoperimetry_report(g, eps, k, budget=budget)
    return {
        "n": g.n,
        "s": _frac(s_fraction(m, delta)),
        "h_cover": _frac(rep.h_cover),
        "m_norm": _frac(rep.family.m_norm),
        "m_count": rep.family.count,
        "status": rep.status,
        "visited": rep.visited,
        "family": [list(s.vertices) for s in rep.family.sets],
    }


def run_theorem2(
    spec: SequenceSpec,
    delta: float,
    eps,
    k: int,
    *,
    budget: int | None = DEFAULT_BUDGET,
    workers: int | None = None,
) -> dict:
    """Table of ``(n, s(G, delta), h_cover, m_norm)`` per member.

    ``m_norm`` comes from the greedy packing, a lower bound on the maximum
    packing. The qualitative pattern (small-eigenvalue mass persisting
    together with packing density) is reported, not asserted.
    """
    eps = Fraction(eps)
    results = _map_members(_thm2_job, spec, (delta, eps, k, budget), workers)
    rows = [{"index": i, **row} for i, row in enumerate(results)]
    s_pos = [r["s"]["float"] > 0 for r in rows]
    m_pos = [r["m_norm"]["float"] > 0 for r in rows]
    return {
        "kind": "thm2",
        "provenance": provenance(spec, delta=delta, eps=str(eps), k=k, budget=budget),
        "columns": ["n", "s", "h_cover", "m_norm"],
        "members": rows,
        "summary": {
            "all_s_positive": all(s_pos),
            "all_m_positive": all(m_pos),
            "pattern_holds": all(m for s, m in zip(s_pos, m_pos) if s),
            "complete": all(r["status"] == "ok" for r in rows),
        },
    }
