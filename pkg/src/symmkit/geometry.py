"""Regular grids, grid functions/sets, oriented hyperplanes and level-set profiles.

Conventions used throughout the package:

* A grid covers the box ``[origin, origin + dims*spacing)`` with uniform
  spacing ``h``; the center of cell ``(i_1, ..., i_n)`` sits at
  ``origin[k] + (i_k + 0.5) * h``.
* Values are stored row-major with shape ``dims`` (numpy C order).
* A reflection is admissible for a grid when it maps the cell-center
  lattice to itself; queries that land outside the grid read the minimum
  sampled value (functions) or False (sets).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MisalignedHyperplane

UNIT_TOL = 1e-12
LATTICE_TOL = 1e-9  # relative to the spacing


@dataclass(frozen=True)
class Grid:
    """Axis-aligned regular grid in dimension 1, 2 or 3."""

    dims: tuple
    origin: tuple
    spacing: float

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        origin = tuple(float(c) for c in self.origin)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "spacing", float(self.spacing))
        if not 1 <= len(dims) <= 3:
            raise ValueError("grid dimension must be 1, 2 or 3")
        if len(origin) != len(dims):
            raise ValueError("origin and dims must have the same length")
        if any(d <= 0 for d in dims):
            raise ValueError("dims must be positive")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")

    @property
    def n(self):
        return len(self.dims)

    @property
    def num_cells(self):
        return int(np.prod(self.dims))

    @property
    def cell_volume(self):
        return self.spacing ** self.n

    @property
    def upper(self):
        return tuple(o + d * self.spacing for o, d in zip(self.origin, self.dims))

    @property
    def center(self):
        return tuple((o + u) / 2.0 for o, u in zip(self.origin, self.upper))

    def axis_centers(self, axis):
        """Cell-center coordinates along one axis."""
        o = self.origin[axis]
        return o + (np.arange(self.dims[axis]) + 0.5) * self.spacing

    def centers(self):
        """All cell centers as an ``(num_cells, n)`` array in row-major order."""
        axes = [self.axis_centers(k) for k in range(self.n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


def centered_grid(dims, spacing):
    """Grid of the given shape placed symmetrically around the origin."""
    dims = tuple(int(d) for d in dims)
    origin = tuple(-d * spacing / 2.0 for d in dims)
    return Grid(dims, origin, spacing)


@dataclass(frozen=True)
class GridFunction:
    """Real-valued function sampled at the cell centers of a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.dims:
            values = values.reshape(self.grid.dims)
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function values must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def essinf(self):
        """On a finite grid the essential infimum is the minimum sample."""
        return float(self.values.min())

    def with_values(self, values):
        return GridFunction(self.grid, values)

    def __eq__(self, other):
        if not isinstance(other, GridFunction):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)


@dataclass(frozen=True)
class GridSet:
    """Boolean mask over the cells of a grid."""

    grid: Grid
    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != self.grid.dims:
            mask = mask.reshape(self.grid.dims)
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @property
    def cell_count(self):
        return int(self.mask.sum())

    @property
    def measure(self):
        return self.cell_count * self.grid.cell_volume

    def indicator(self):
        return GridFunction(self.grid, self.mask.astype(float))

    def __eq__(self, other):
        if not isinstance(other, GridSet):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.mask, other.mask)


def set_from_indicator(f):
    """Inverse of :meth:`GridSet.indicator`; values must be exactly 0 or 1."""
    vals = f.values
    if not np.all((vals == 0.0) | (vals == 1.0)):
        raise ValueError("indicator function must take values in {0, 1}")
    return GridSet(f.grid, vals == 1.0)


@dataclass(frozen=True)
class OrientedHyperplane:
    """Hyperplane {x : x.normal = offset} with a chosen positive side.

    ``positive=+1`` selects H+ = {x : x.normal >= offset}; ``positive=-1``
    selects the opposite closed half-space.  Both half-spaces contain the
    hyperplane itself.
    """

    normal: tuple
    offset: float = 0.0
    positive: int = 1

    def __post_init__(self):
        normal = tuple(float(c) for c in self.normal)
        pos = self.positive
        if pos in ("+", "-"):
            pos = 1 if pos == "+" else -1
        pos = int(pos)
        if pos not in (1, -1):
            raise ValueError("positive must be +1 or -1")
        norm = float(np.linalg.norm(normal))
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError("normal must be a unit vector")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "positive", pos)

    @property
    def n(self):
        return len(self.normal)

    @property
    def unit_into_positive(self):
        """Unit vector orthogonal to the hyperplane pointing into H+."""
        return tuple(self.positive * c for c in self.normal)

    def signed(self, points):
        """Signed distance, positive on H+."""
        pts = np.asarray(points, dtype=float)
        return (pts @ np.asarray(self.normal) - self.offset) * self.positive

    def reflect(self, points):
        pts = np.asarray(points, dtype=float)
        nrm = np.asarray(self.normal)
        proj = pts @ nrm - self.offset
        return pts - 2.0 * np.multiply.outer(proj, nrm)


def axis_plane(axis, n, offset=0.0, positive=1):
    """Hyperplane orthogonal to coordinate ``axis`` in dimension ``n``."""
    normal = tuple(1.0 if k == axis else 0.0 for k in range(n))
    return OrientedHyperplane(normal, offset, positive)


def reflect_point(x, plane):
    """Mirror image of a single point: x + 2(offset - x.normal) normal."""
    return plane.reflect(np.asarray(x, dtype=float))


def _reflection_gather(grid, plane):
    """Flat gather indices of the reflected cell centers plus an in-grid mask.

    Raises MisalignedHyperplane when the reflection does not map the
    cell-center lattice to itself.
    """
    centers = grid.centers()
    reflected = plane.reflect(centers)
    frac = (reflected - np.asarray(grid.origin)) / grid.spacing - 0.5
    idx = np.rint(frac)
    if np.abs(frac - idx).max() > LATTICE_TOL:
        raise MisalignedHyperplane(
            "reflection in the hyperplane does not preserve the cell-center lattice"
        )
    idx = idx.astype(np.int64)
    dims = np.asarray(grid.dims)
    inside = np.all((idx >= 0) & (idx < dims), axis=1)
    clipped = np.clip(idx, 0, dims - 1)
    flat = np.ravel_multi_index(tuple(clipped.T), grid.dims)
    return flat, inside


def plus_mask(grid, plane):
    """Boolean mask of cells whose centers lie in H+ (the hyperplane included)."""
    return (plane.signed(grid.centers()) >= 0.0).reshape(grid.dims)


def reflect_grid_function(f, plane):
    """Function x -> f(reflection of x); out-of-grid reads give the minimum value."""
    flat, inside = _reflection_gather(f.grid, plane)
    vals = f.values.ravel()
    out = np.where(inside, vals[flat], f.essinf)
    return GridFunction(f.grid, out.reshape(f.grid.dims))


def reflect_grid_set(a, plane):
    """Mirror image of a grid set; cells reflecting outside the grid read False."""
    flat, inside = _reflection_gather(a.grid, plane)
    vals = a.mask.ravel()
    out = np.where(inside, vals[flat], False)
    return GridSet(a.grid, out.reshape(a.grid.dims))


@dataclass(frozen=True)
class DistributionProfile:
    """Measures of the strict super-level sets, one entry per distinct value.

    ``counts_above[i]`` is the exact number of cells with value greater
    than ``values[i]``; measures follow by scaling with the cell volume.
    """

    values: np.ndarray
    counts_above: np.ndarray
    total_cells: int
    cell_volume: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        counts = np.asarray(self.counts_above, dtype=np.int64)
        values.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "counts_above", counts)

    def pairs(self):
        """List of (value, measure of {f > value})."""
        return [(float(t), int(c) * self.cell_volume) for t, c in zip(self.values, self.counts_above)]

    def cells_above(self, t):
        """Exact cell count of {f > t} for arbitrary real t."""
        pos = int(np.searchsorted(self.values, t, side="right"))
        if pos == 0:
            return self.total_cells
        return int(self.counts_above[pos - 1])

    def measure_above(self, t):
        return self.cells_above(t) * self.cell_volume

    def __eq__(self, other):
        if not isinstance(other, DistributionProfile):
            return NotImplemented
        return (
            self.total_cells == other.total_cells
            and self.cell_volume == other.cell_volume
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.counts_above, other.counts_above)
        )


def distribution(f):
    """Exact distribution profile of a grid function."""
    vals, counts = np.unique(f.values, return_counts=True)
    above = f.grid.num_cells - np.cumsum(counts)
    return DistributionProfile(vals, above, f.grid.num_cells, f.grid.cell_volume)


def disk_raster(grid, center, radius):
    """Cells whose centers lie in the closed ball around ``center``."""
    centers = grid.centers()
    d2 = np.sum((centers - np.asarray(center, dtype=float)) ** 2, axis=1)
    return GridSet(grid, (d2 <= radius * radius).reshape(grid.dims))


def box_raster(grid, lo, hi):
    """Cells whose centers lie in the closed axis-aligned box [lo, hi]."""
    centers = grid.centers()
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    inside = np.all((centers >= lo) & (centers <= hi), axis=1)
    return GridSet(grid, inside.reshape(grid.dims))
