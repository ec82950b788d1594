"""Seeded property suites for function transformers and set maps.

Every check runs a fixed number of independent trials; trial ``i`` of a run
with seed ``s`` draws from ``numpy.random.default_rng((s, i))``, so a failed
trial is replayable from the (seed, trial) pair alone.  Verdicts are exact:
grids have no null sets, so no measure-zero slack is granted anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chordmaps import chord_move_polygon, perimeter_region
from .errors import NotARearrangement, SymmkitError
from .geometry import (
    GridFunction,
    GridSet,
    centered_grid,
    disk_raster,
    distribution,
    reflect_grid_function,
    reflect_grid_set,
)
from .polygons import ConvexPolygon, convex_hull, polygon_raster
from .rearrange import induced_set_map, polarize

DEFAULT_GRID = centered_grid((32, 32), 1.0 / 8.0)


def trial_rng(seed, trial):
    return np.random.default_rng((int(seed), int(trial)))


@dataclass
class PropertyReport:
    """Outcome of one property suite.

    ``holds`` is True/False for a decided verdict and None when the check is
    not applicable to the map.  A False verdict always carries the (seed,
    trial) pair plus a payload describing the violation.
    """

    name: str
    holds: bool
    trials: int
    seed: int
    counterexample: dict = None
    detail: str = ""

    @property
    def verdict(self):
        if self.holds is None:
            return "skipped"
        return "holds" if self.holds else "fails"

    def as_dict(self):
        out = {
            "property": self.name,
            "verdict": self.verdict,
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        return out


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def random_blob_function(rng, grid=DEFAULT_GRID, max_blobs=5, max_level=8):
    """Sum of 1..max_blobs rasterized indicator blobs with integer levels."""
    lo = np.asarray(grid.origin)
    hi = np.asarray(grid.upper)
    span = hi - lo
    centers = grid.centers()
    values = np.zeros(grid.num_cells)
    for _ in range(int(rng.integers(1, max_blobs + 1))):
        level = float(rng.integers(0, max_level + 1))
        if rng.random() < 0.5:
            c = lo + rng.random(grid.n) * span
            r = (0.1 + 0.3 * rng.random()) * span.min()
            mask = np.sum((centers - c) ** 2, axis=1) <= r * r
        else:
            a = lo + rng.random(grid.n) * span
            b = lo + rng.random(grid.n) * span
            blo, bhi = np.minimum(a, b), np.maximum(a, b)
            mask = np.all((centers >= blo) & (centers <= bhi), axis=1)
        values += level * mask
    return GridFunction(grid, values.reshape(grid.dims))


def random_blob_set(rng, grid=DEFAULT_GRID, max_blobs=4):
    f = random_blob_function(rng, grid, max_blobs=max_blobs)
    mask = f.values > 0
    if not mask.any():
        mask = disk_raster(grid, grid.center, 2.5 * grid.spacing).mask
    return GridSet(grid, mask)


def random_convex_polygon(rng, box=2.0, min_area=0.4, points=10):
    """Strictly convex ccw polygon with vertices inside [-box, box]^2."""
    while True:
        pts = rng.uniform(-box, box, size=(points, 2))
        hull = convex_hull(pts)
        if len(hull) < 3:
            continue
        try:
            poly = ConvexPolygon(hull)
        except ValueError:
            continue
        if poly.area() >= min_area:
            return poly


def random_symmetric_polygon(rng, u, box=2.0, min_area=0.4):
    """Convex polygon symmetric under reflection in the line u_perp through 0."""
    u = np.asarray(u, dtype=float)
    while True:
        pts = rng.uniform(-box, box, size=(8, 2))
        mirrored = pts - 2.0 * np.outer(pts @ u, u)
        hull = convex_hull(np.vstack([pts, mirrored]))
        if len(hull) < 3:
            continue
        try:
            poly = ConvexPolygon(hull)
        except ValueError:
            continue
        if poly.area() >= min_area:
            return poly


def random_convex_raster(rng, grid=DEFAULT_GRID, min_cells=12):
    box = 0.45 * min(u - o for o, u in zip(grid.origin, grid.upper))
    while True:
        poly = random_convex_polygon(rng, box=box, min_area=(3 * grid.spacing) ** 2)
        raster = polygon_raster(grid, poly)
        if raster.cell_count >= min_cells:
            return raster, poly


def nested_convex_rasters(rng, grid=DEFAULT_GRID):
    big, poly = random_convex_raster(rng, grid)
    small = polygon_raster(grid, poly.scale_about_centroid(0.3 + 0.5 * rng.random()))
    return small, big


def nested_blob_sets(rng, grid=DEFAULT_GRID):
    big = random_blob_set(rng, grid)
    keep = rng.random(grid.dims) < 0.7
    small = GridSet(grid, big.mask & keep)
    return small, big


def symmetric_raster(rng, plane, grid=DEFAULT_GRID, convex=False):
    if convex:
        u = np.asarray(plane.normal)
        box = 0.45 * min(up - o for o, up in zip(grid.origin, grid.upper))
        while True:
            poly = random_symmetric_polygon(rng, u, box=box, min_area=(3 * grid.spacing) ** 2)
            if plane.offset != 0.0:
                poly = poly.translate(plane.offset * u)
            raster = polygon_raster(grid, poly)
            if raster.cell_count >= 8:
                return raster
    a = random_blob_set(rng, grid)
    mirrored = reflect_grid_set(a, plane)
    return GridSet(grid, a.mask | mirrored.mask)


def centered_cylinder_raster(rng, plane, grid=DEFAULT_GRID):
    """Raster of a product body symmetric about the hyperplane: radius r in H,
    half-height s along the normal."""
    centers = grid.centers()
    normal = np.asarray(plane.normal)
    along = centers @ normal - plane.offset
    in_h = centers - np.outer(centers @ normal, normal)
    mid = np.asarray(grid.center)
    mid_h = mid - (mid @ normal) * normal
    span = 0.4 * min(up - o for o, up in zip(grid.origin, grid.upper))
    r = (0.2 + 0.8 * rng.random()) * span
    s = (0.2 + 0.8 * rng.random()) * span
    radial = np.linalg.norm(in_h - mid_h, axis=1) if grid.n > 1 else np.zeros(len(centers))
    mask = (radial <= r) & (np.abs(along) <= s)
    return GridSet(grid, mask.reshape(grid.dims))


def quantized_cone(grid, center, radius, levels=6):
    """Concave bump with integer levels; every super-level set is a disk raster."""
    centers = grid.centers()
    d = np.linalg.norm(centers - np.asarray(center, dtype=float), axis=1)
    vals = np.floor(np.clip(levels * (1.0 - d / radius), 0.0, levels))
    return GridFunction(grid, vals.reshape(grid.dims))


def two_disk_symmetric_set(grid, plane, offset, radius):
    """Union of two mirror-image disjoint disk rasters straddling the hyperplane."""
    u = np.asarray(plane.normal, dtype=float)
    mid = np.asarray(grid.center)
    base = mid - ((mid @ u) - plane.offset) * u
    a = disk_raster(grid, base + offset * u, radius)
    b = disk_raster(grid, base - offset * u, radius)
    return GridSet(grid, a.mask | b.mask)


# ---------------------------------------------------------------------------
# Function-transformer checks
# ---------------------------------------------------------------------------


def _run_trials(name, trials, seed, one_trial):
    for i in range(int(trials)):
        payload = one_trial(trial_rng(seed, i), i)
        if payload is not None:
            payload.setdefault("trial", i)
            payload.setdefault("seed", int(seed))
            return PropertyReport(name, False, trials, seed, payload)
    return PropertyReport(name, True, trials, seed)


def check_equimeasurable(transformer, trials=200, seed=0, grid=DEFAULT_GRID, generator=None):
    """Exact (value, cell-count) profile comparison on random functions."""
    gen = generator or (lambda rng: random_blob_function(rng, grid))

    def one(rng, i):
        f = gen(rng)
        before = distribution(f)
        after = distribution(transformer(f))
        if before != after:
            return {
                "before": before.pairs()[:8],
                "after": after.pairs()[:8],
            }
        return None

    return _run_trials("equimeasurable", trials, seed, one)


def check_monotonic(transformer, trials=200, seed=0, grid=DEFAULT_GRID, pair_generator=None):
    """f <= g pointwise must imply Tf <= Tg pointwise, exactly."""

    def default_pairs(rng):
        f = random_blob_function(rng, grid)
        bump = random_blob_function(rng, grid, max_blobs=2)
        return f, GridFunction(grid, f.values + bump.values)

    gen = pair_generator or default_pairs

    def one(rng, i):
        f, g = gen(rng)
        tf, tg = transformer(f), transformer(g)
        bad = tf.values > tg.values
        if bad.any():
            cell = tuple(int(c) for c in np.argwhere(bad)[0])
            return {"cell": cell, "tf": float(tf.values[bad][0]), "tg": float(tg.values[bad][0])}
        return None

    return _run_trials("monotonic", trials, seed, one)


def _lp_norm(values, p, cell_volume):
    if p == np.inf or p == "inf":
        return float(np.abs(values).max())
    return float((np.sum(np.abs(values) ** p) * cell_volume) ** (1.0 / p))


def check_lp_contracting(transformer, p, trials=200, seed=0, grid=DEFAULT_GRID, tol=1e-12):
    """||Tf - Tg||_p <= ||f - g||_p + tol on random pairs."""

    def one(rng, i):
        f = random_blob_function(rng, grid)
        g = random_blob_function(rng, grid)
        lhs = _lp_norm(transformer(f).values - transformer(g).values, p, grid.cell_volume)
        rhs = _lp_norm(f.values - g.values, p, grid.cell_volume)
        if lhs > rhs + tol:
            return {"p": str(p), "lhs": lhs, "rhs": rhs}
        return None

    return _run_trials(f"lp_contracting[p={p}]", trials, seed, one)


def modulus_profile(f):
    """Distinct center distances with the max |f(x)-f(y)| over pairs within them.

    Returns (distances, omegas): omegas[i] is the modulus of continuity at
    d = distances[i], i.e. the sup over all pairs at distance <= distances[i].
    Distances are grouped exactly via integer index offsets (cell distances
    on a uniform grid are spacing * sqrt(integer)).
    """
    idx = np.stack([m.ravel() for m in np.indices(f.grid.dims)], axis=-1).astype(np.int64)
    vals = f.values.ravel()
    n = len(vals)
    diff = np.abs(vals[:, None] - vals[None, :])
    d2 = np.sum((idx[:, None, :] - idx[None, :, :]) ** 2, axis=-1)
    iu = np.triu_indices(n, k=1)
    d2 = d2[iu]
    diff = diff[iu]
    order = np.argsort(d2, kind="stable")
    d2 = d2[order]
    running = np.maximum.accumulate(diff[order])
    last = np.nonzero(np.concatenate([np.diff(d2) > 0, [True]]))[0]
    return f.grid.spacing * np.sqrt(d2[last].astype(float)), running[last]


def check_modulus_reducing(transformer, trials=50, seed=0, grid=DEFAULT_GRID, tol=1e-12):
    """omega_d(Tf) <= omega_d(f) + tol for every grid distance d."""

    def one(rng, i):
        f = random_blob_function(rng, grid)
        ds, before = modulus_profile(f)
        _, after = modulus_profile(transformer(f))
        bad = after > before + tol
        if bad.any():
            j = int(np.argmax(bad))
            return {"distance": float(ds[j]), "before": float(before[j]), "after": float(after[j])}
        return None

    return _run_trials("modulus_reducing", trials, seed, one)


# ---------------------------------------------------------------------------
# Set-map property bundle
# ---------------------------------------------------------------------------


def _nested_pair_for(dmap, rng, grid):
    if dmap.domain == "convex":
        return nested_convex_rasters(rng, grid)
    return nested_blob_sets(rng, grid)


def _sample_for(dmap, rng, grid):
    if dmap.domain == "convex":
        return random_convex_raster(rng, grid)[0]
    return random_blob_set(rng, grid)


def check_setmap_properties(dmap, trials=100, seed=0, grid=DEFAULT_GRID, plane=None):
    """The seven set-map property suites, keyed by property name.

    Generators respect the map's declared domain; the perimeter check runs
    on exact polygons through the map's contraction backing and is skipped
    for maps without one.  ``plane`` supplies the reference hyperplane for
    maps that are not tied to one (the identity, say).
    """
    plane = dmap.plane if dmap.plane is not None else plane
    reports = {}

    def mono(rng, i):
        small, big = _nested_pair_for(dmap, rng, grid)
        isub = dmap(small).mask & ~dmap(big).mask
        if isub.any():
            cell = tuple(int(c) for c in np.argwhere(isub)[0])
            return {"cell": cell}
        return None

    reports["monotonic"] = _run_trials("monotonic", trials, seed, mono)

    def measure(rng, i):
        a = _sample_for(dmap, rng, grid)
        image = dmap(a)
        if image.cell_count != a.cell_count:
            return {"cells_before": a.cell_count, "cells_after": image.cell_count}
        return None

    reports["measure_preserving"] = _run_trials("measure_preserving", trials, seed, measure)

    if plane is not None:
        def sym(rng, i):
            a = symmetric_raster(rng, plane, grid, convex=(dmap.domain == "convex"))
            if dmap(a) != a:
                return {"cells": a.cell_count}
            return None

        reports["symmetric_invariant"] = _run_trials("symmetric_invariant", trials, seed, sym)

        def cyl(rng, i):
            a = centered_cylinder_raster(rng, plane, grid)
            if dmap(a) != a:
                return {"cells": a.cell_count}
            return None

        reports["cylinder_invariant"] = _run_trials("cylinder_invariant", trials, seed, cyl)

        def balls(rng, i):
            h = grid.spacing
            u = np.asarray(plane.normal, dtype=float)
            mid = np.asarray(grid.center)
            base = mid - ((mid @ u) - plane.offset) * u
            t = float(rng.integers(-6, 7)) * h
            r = (4.0 + rng.random()) * h
            a = disk_raster(grid, base + t * u, r)
            image = dmap(a)
            if image.cell_count != a.cell_count:
                return {"t": t, "reason": "cell count changed"}
            if image.cell_count == 0:
                return None
            com = grid.centers()[image.mask.ravel()].mean(axis=0)
            # admissible ball centers live on the half-cell lattice
            snapped = np.asarray(grid.origin) + np.rint(
                (com - np.asarray(grid.origin)) / (h / 2.0)
            ) * (h / 2.0)
            best = disk_raster(grid, snapped, r)
            if image != best:
                return {"t": t, "reason": "image is not a ball raster"}
            return None

        reports["maps_balls_to_balls"] = _run_trials("maps_balls_to_balls", trials, seed, balls)

        def cylinders_respected(rng, i):
            axis = dmap.axis if dmap.axis is not None else int(np.argmax(np.abs(plane.normal)))
            a = _sample_for(dmap, rng, grid)
            image = dmap(a)
            support_before = np.asarray(a.mask).any(axis=axis)
            support_after = np.asarray(image.mask).any(axis=axis)
            extra = support_after & ~support_before
            if extra.any():
                return {"columns": int(extra.sum())}
            return None

        reports["respects_cylinders"] = _run_trials(
            "respects_cylinders", trials, seed, cylinders_respected
        )

    if dmap.contraction is not None:
        def perim(rng, i):
            poly = random_convex_polygon(rng, box=2.0)
            region = chord_move_polygon(poly, dmap.contraction, np.array([0.0, 1.0]))
            before = poly.perimeter()
            after = perimeter_region(region)
            if abs(after - before) > 1e-9 * max(1.0, before):
                return {"before": before, "after": after}
            return None

        reports["perimeter_convex"] = _run_trials(
            "perimeter_convex", min(trials, 25), seed, perim
        )
    else:
        reports["perimeter_convex"] = PropertyReport(
            "perimeter_convex", None, 0, seed, detail="no contraction backing"
        )

    return reports


# ---------------------------------------------------------------------------
# Rearrangement classifier
# ---------------------------------------------------------------------------

CANONICAL_LABELS = ("identity", "reflection", "two_point", "two_point_reflected")


def _canonical_transformers(plane):
    return {
        "identity": lambda f: f,
        "reflection": lambda f: reflect_grid_function(f, plane),
        "two_point": lambda f: polarize(f, plane),
        "two_point_reflected": lambda f: reflect_grid_function(polarize(f, plane), plane),
    }


def _cone_probes(grid, plane, seed, count=8):
    rng = trial_rng(seed, 987)
    u = np.asarray(plane.normal, dtype=float)
    mid = np.asarray(grid.center)
    base = mid - ((mid @ u) - plane.offset) * u
    span = 0.5 * min(up - o for o, up in zip(grid.origin, grid.upper))
    probes = []
    for _ in range(count):
        t = float(rng.integers(-8, 9)) * grid.spacing
        radius = (0.3 + 0.5 * rng.random()) * span
        levels = int(rng.integers(2, 7))
        probes.append(quantized_cone(grid, base + t * u, radius, levels))
    return probes


def classify_rearrangement(transformer, grid, plane, seed=0, probe_offset=0.75, witness_radius=None):
    """Match an equimeasurable monotone transformer against the four canonical maps.

    Probes the induced set map with displaced ball rasters to read off the
    midpoint contraction, checks the invariance on mirror-image two-disk
    unions where the transformer admits them, and confirms a tentative match
    exactly on a battery of concave-bump probes.  Returns (label, witness);
    the witness is None for a canonical label and a payload describing the
    separating probe otherwise.
    """
    h = grid.spacing
    probes = _cone_probes(grid, plane, seed)
    for f in probes:
        if distribution(transformer(f)) != distribution(f):
            raise NotARearrangement("transformer is not equimeasurable on probe functions")
    for f in probes[:4]:
        g = GridFunction(grid, f.values + 1.0)
        if np.any(transformer(f).values > transformer(g).values):
            raise NotARearrangement("transformer is not monotonic on probe functions")

    dmap = induced_set_map(transformer)
    u = np.asarray(plane.normal, dtype=float) * plane.positive
    mid = np.asarray(grid.center)
    base = mid - ((mid @ np.asarray(plane.normal)) - plane.offset) * np.asarray(plane.normal)
    radius = witness_radius if witness_radius is not None else 4.8 * h

    def displaced_center(t):
        image = dmap(disk_raster(grid, base + t * u, radius))
        if image.cell_count == 0:
            return None
        com = grid.centers()[image.mask.ravel()].mean(axis=0)
        return float((com - base) @ u)

    ts = [probe_offset, probe_offset * 2 / 3, -probe_offset * 2 / 3, -probe_offset]
    phi_hat = {}
    for t in ts:
        phi_hat[t] = displaced_center(t)
        if phi_hat[t] is None:
            return "other", {"probe_center": t, "reason": "ball image vanished"}

    slope_hi = (phi_hat[ts[0]] - phi_hat[ts[1]]) / (ts[0] - ts[1])
    slope_lo = (phi_hat[ts[3]] - phi_hat[ts[2]]) / (ts[3] - ts[2])
    eikonal_ok = abs(abs(slope_hi) - 1.0) <= 1e-6 and abs(abs(slope_lo) - 1.0) <= 1e-6

    two_disk = None
    try:
        union = two_disk_symmetric_set(grid, plane, probe_offset, radius)
        two_disk = dmap(union) == union
    except SymmkitError:
        two_disk = None  # outside the transformer's domain; not decisive

    table = {
        (1, -1): "identity",
        (-1, 1): "reflection",
        (1, 1): "two_point",
        (-1, -1): "two_point_reflected",
    }

    def snap(value):
        for s in (1, -1):
            if abs(value - s * probe_offset) <= 1e-9:
                return s
        return None

    key = (snap(phi_hat[ts[0]]), snap(phi_hat[ts[3]]))
    witness = {
        "probe_center": probe_offset,
        "image_center": phi_hat[ts[0]],
        "phi_estimates": {str(t): phi_hat[t] for t in ts},
    }
    if None in key or not eikonal_ok:
        return "other", witness
    if two_disk is False:
        return "other", {"reason": "not invariant on mirror-image two-disk unions"}
    label = table[key]
    candidate = _canonical_transformers(plane)[label]
    for f in probes:
        if transformer(f) != candidate(f):
            return "other", {"reason": f"probe disagrees with {label}"}
    return label, None
