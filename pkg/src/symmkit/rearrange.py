"""Function-level rearrangement operators on grids.

The two-point operator replaces f by max(f, f_mirror) on the positive side
of an oriented hyperplane and by min(f, f_mirror) on the negative side; the
other operators here either specialize it (set version), generalize it
(pointwise maps built from a pair of associated functions), or rebuild a
transformer from the images of super-level sets (layer-cake reconstruction).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonMonotoneMap
from .geometry import (
    GridFunction,
    GridSet,
    plus_mask,
    reflect_grid_function,
    reflect_grid_set,
)


def polarize(f, plane):
    """Two-point rearrangement of a grid function across an oriented hyperplane."""
    mirrored = reflect_grid_function(f, plane)
    hplus = plus_mask(f.grid, plane)
    out = np.where(hplus, np.maximum(f.values, mirrored.values), np.minimum(f.values, mirrored.values))
    return GridFunction(f.grid, out)


def polarize_set(a, plane):
    """Set version: union with the mirror image on H+, intersection on H-."""
    mirrored = reflect_grid_set(a, plane)
    hplus = plus_mask(a.grid, plane)
    out = np.where(hplus, a.mask | mirrored.mask, a.mask & mirrored.mask)
    return GridSet(a.grid, out)


def _center_out_order(m):
    """Cell order by distance from the column center, upper side first on ties."""
    mid = (m - 1) / 2.0
    return sorted(range(m), key=lambda p: (abs(p - mid), -p))


def steiner_symmetrize_function(f, axis):
    """Per-column symmetric-decreasing rearrangement about the grid's center plane.

    Column values are sorted descending and placed center-out, the upper
    (positive axis) side first on ties; every column keeps its value multiset.
    """
    m = f.grid.dims[axis]
    order = _center_out_order(m)
    moved = np.moveaxis(np.asarray(f.values), axis, -1)
    ranked = np.sort(moved, axis=-1)[..., ::-1]
    out = np.empty_like(moved)
    out[..., order] = ranked
    return GridFunction(f.grid, np.moveaxis(out, -1, axis))


def steiner_symmetrize_set(a, axis):
    """Per-column recentring of each run count about the grid's center plane."""
    m = a.grid.dims[axis]
    order = _center_out_order(m)
    rank = np.empty(m, dtype=np.int64)
    rank[order] = np.arange(m)
    moved = np.moveaxis(np.asarray(a.mask), axis, -1)
    counts = moved.sum(axis=-1)
    out = rank < counts[..., None]
    return GridSet(a.grid, np.moveaxis(out, -1, axis))


def _fiber_fill_order(shape):
    """Cells of a 2D fiber ordered by distance from its center, then scan order."""
    m1, m2 = shape
    ii, jj = np.meshgrid(np.arange(m1), np.arange(m2), indexing="ij")
    d2 = (ii + 0.5 - m1 / 2.0) ** 2 + (jj + 0.5 - m2 / 2.0) ** 2
    flat_d2 = d2.ravel()
    return np.argsort(flat_d2, kind="stable")


def schwarz_symmetrize_set(a, axis):
    """Replace each planar fiber orthogonal to ``axis`` by a centered quasi-disk.

    Only defined for 3D grids.  Cell counts are preserved exactly: the disk
    is grown cell by cell in a fixed order (distance from the fiber center,
    ties broken by scan order).
    """
    if a.grid.n != 3:
        raise ValueError("planar-fiber symmetrization needs a 3D grid")
    moved = np.moveaxis(np.asarray(a.mask), axis, 0)
    fiber_shape = moved.shape[1:]
    order = _fiber_fill_order(fiber_shape)
    rank = np.empty(order.shape, dtype=np.int64)
    rank[order] = np.arange(len(order))
    out = np.empty_like(moved)
    for i in range(moved.shape[0]):
        k = int(moved[i].sum())
        out[i] = (rank < k).reshape(fiber_shape)
    return GridSet(a.grid, np.moveaxis(out, 0, axis))


@dataclass(frozen=True)
class AssociatedFunctionPair:
    """Pair of two-argument functions that agree on the diagonal.

    ``fplus`` is applied on the positive side of the hyperplane, ``fminus``
    on the negative side; both receive (own value, mirrored value).
    """

    name: str
    fplus: callable
    fminus: callable
    domain: str = "real"  # or "nonneg"

    def __call__(self, r, s, side):
        return self.fplus(r, s) if side > 0 else self.fminus(r, s)


def _proj_first(r, s):
    return np.asarray(r, dtype=float) + 0.0 * np.asarray(s, dtype=float)


def _proj_second(r, s):
    return np.asarray(s, dtype=float) + 0.0 * np.asarray(r, dtype=float)


def _mean(r, s):
    return (np.asarray(r, dtype=float) + np.asarray(s, dtype=float)) / 2.0


ASSOCIATED_PAIRS = {
    "max_min": AssociatedFunctionPair("max_min", np.maximum, np.minimum),
    "min_max": AssociatedFunctionPair("min_max", np.minimum, np.maximum),
    "first": AssociatedFunctionPair("first", _proj_first, _proj_first),
    "second": AssociatedFunctionPair("second", _proj_second, _proj_second),
    "mean": AssociatedFunctionPair("mean", _mean, _mean),
}


@dataclass(frozen=True)
class PointwiseTransformer:
    """Grid transformer acting cellwise through an associated pair."""

    pair: AssociatedFunctionPair
    plane: "OrientedHyperplane"
    name: str = field(default="")

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"pointwise[{self.pair.name}]")

    def __call__(self, f):
        mirrored = reflect_grid_function(f, self.plane)
        hplus = plus_mask(f.grid, self.plane)
        out = np.where(
            hplus,
            self.pair.fplus(f.values, mirrored.values),
            self.pair.fminus(f.values, mirrored.values),
        )
        return GridFunction(f.grid, out)


def build_pointwise_map(pair, plane):
    """Transformer f -> F+(f, f_mirror) on H+, F-(f, f_mirror) on H-."""
    return PointwiseTransformer(pair, plane)


def check_fvalues(pair, samples):
    """Whether {F+(r,s), F-(s,r)} equals {r,s} on every sampled pair.

    Returns (ok, first_violation); the violation records the pair and the
    two values actually produced.
    """
    for r, s in samples:
        r = float(r)
        s = float(s)
        p = float(pair.fplus(r, s))
        q = float(pair.fminus(s, r))
        if not (min(p, q) == min(r, s) and max(p, q) == max(r, s)):
            return False, {"pair": (r, s), "produced": (p, q)}
    return True, None


def induced_set_map(transformer):
    """Set map A -> {x : T(1_A)(x) = 1} read off exactly."""

    def mapped(a):
        image = transformer(a.indicator())
        return GridSet(a.grid, image.values == 1.0)

    return mapped


def layer_cake_rearrangement(set_map, f, strict=False):
    """Rebuild a function transformer from a set map acting on super-level sets.

    With ``strict=False`` cell x receives the largest value t of f with
    x in set_map({f >= t}), defaulting to min f; grid functions take finitely
    many values, so the supremum is a finite maximum.  ``strict=True`` uses
    the sets {f > t} instead, which assigns the next level up; for set maps
    induced by rearrangements both give the same answer.
    """
    levels = np.unique(f.values)
    bottom = float(levels[0])
    out = np.full(f.grid.dims, bottom)
    if strict:
        for i in range(len(levels) - 1):
            image = set_map(GridSet(f.grid, f.values > levels[i]))
            out[image.mask] = levels[i + 1]
    else:
        for t in levels[1:]:
            image = set_map(GridSet(f.grid, f.values >= t))
            out[image.mask] = t
    return GridFunction(f.grid, out)


@dataclass(frozen=True)
class MonotonePL:
    """Continuous piecewise-linear increasing map with terminal-slope extension."""

    ts: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        ts = np.asarray(self.ts, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if ts.ndim != 1 or ts.shape != ys.shape or len(ts) < 2:
            raise NonMonotoneMap("need at least two breakpoints")
        if np.any(np.diff(ts) <= 0):
            raise NonMonotoneMap("breakpoint abscissae must be strictly increasing")
        if np.any(np.diff(ys) < 0):
            raise NonMonotoneMap("breakpoint values must be non-decreasing")
        ts.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "ys", ys)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        ts, ys = self.ts, self.ys
        slopes = np.diff(ys) / np.diff(ts)
        out = np.interp(t, ts, ys)
        below = t < ts[0]
        above = t > ts[-1]
        out = np.where(below, ys[0] + slopes[0] * (t - ts[0]), out)
        out = np.where(above, ys[-1] + slopes[-1] * (t - ts[-1]), out)
        return out


@dataclass(frozen=True)
class MonotoneStep:
    """Right-continuous increasing step map: value jumps at each threshold."""

    thresholds: np.ndarray
    values: np.ndarray
    below: float

    def __post_init__(self):
        th = np.asarray(self.thresholds, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if th.ndim != 1 or th.shape != vals.shape or len(th) == 0:
            raise NonMonotoneMap("need matching thresholds and values")
        if np.any(np.diff(th) <= 0):
            raise NonMonotoneMap("thresholds must be strictly increasing")
        levels = np.concatenate([[float(self.below)], vals])
        if np.any(np.diff(levels) < 0):
            raise NonMonotoneMap("step values must be non-decreasing")
        th.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "thresholds", th)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "below", float(self.below))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.thresholds, t, side="right")
        table = np.concatenate([[self.below], self.values])
        return table[idx]


def compose_monotone(f, phi):
    """Pointwise composition phi(f) for an increasing right-continuous phi."""
    return GridFunction(f.grid, np.asarray(phi(f.values), dtype=float))


def transformer_from_config(config):
    """Named function transformer from a JSON-style config dict.

    Recognized forms::

        {"map": "polarize", "normal": [0, 1], "offset": 0, "positive": "+"}
        {"map": "reflect" | "identity" | "polarize_reflect", ...}
        {"map": "pointwise", "pair": "max_min", ...}

    ``pair`` names an entry of :data:`ASSOCIATED_PAIRS`.
    """
    from .errors import UnknownName
    from .geometry import OrientedHyperplane

    name = config.get("map")
    if name == "identity":
        return lambda f: f
    plane = OrientedHyperplane(
        tuple(config["normal"]), float(config.get("offset", 0.0)), config.get("positive", "+")
    )
    if name == "polarize":
        return lambda f: polarize(f, plane)
    if name == "reflect":
        return lambda f: reflect_grid_function(f, plane)
    if name == "polarize_reflect":
        return lambda f: reflect_grid_function(polarize(f, plane), plane)
    if name == "pointwise":
        pair = ASSOCIATED_PAIRS.get(config.get("pair"))
        if pair is None:
            raise UnknownName(f"unknown associated pair {config.get('pair')!r}")
        return build_pointwise_map(pair, plane)
    raise UnknownName(f"unknown transformer {name!r}")
