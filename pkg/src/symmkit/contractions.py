"""Piecewise-linear 1-Lipschitz maps of the real line."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownName

SLOPE_TOL = 1e-12


@dataclass(frozen=True)
class PLContraction:
    """Piecewise-linear real map with every slope in [-1, 1].

    Defined by its breakpoints ``(t_i, phi(t_i))``; beyond the first and last
    breakpoint the terminal segment's slope continues, which keeps the
    Lipschitz-1 bound global.
    """

    ts: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        ts = np.asarray(self.ts, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if ts.ndim != 1 or ts.shape != ys.shape or len(ts) < 2:
            raise ValueError("need at least two breakpoints of equal length")
        if np.any(np.diff(ts) <= 0):
            raise ValueError("breakpoint abscissae must be strictly increasing")
        slopes = np.diff(ys) / np.diff(ts)
        if np.any(np.abs(slopes) > 1.0 + SLOPE_TOL):
            raise ValueError("every segment slope must satisfy |s| <= 1")
        ts.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "ys", ys)

    @property
    def slopes(self):
        return np.diff(self.ys) / np.diff(self.ts)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        ts, ys = self.ts, self.ys
        slopes = self.slopes
        out = np.interp(t, ts, ys)
        below = t < ts[0]
        above = t > ts[-1]
        out[below] = ys[0] + slopes[0] * (t[below] - ts[0])
        out[above] = ys[-1] + slopes[-1] * (t[above] - ts[-1])
        return float(out[0]) if scalar else out

    @classmethod
    def from_breakpoints(cls, pairs):
        pairs = sorted((float(t), float(y)) for t, y in pairs)
        ts = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        return cls(np.asarray(ts), np.asarray(ys))

    def breakpoint_pairs(self):
        return [(float(t), float(y)) for t, y in zip(self.ts, self.ys)]


CANONICAL_NAMES = ("id", "neg", "abs", "negabs")


def canonical_contraction(name, half_width=8.0):
    """One of the four maps t, -t, |t|, -|t| on [-half_width, half_width]."""
    T = float(half_width)
    tables = {
        "id": [(-T, -T), (0.0, 0.0), (T, T)],
        "neg": [(-T, T), (0.0, 0.0), (T, -T)],
        "abs": [(-T, T), (0.0, 0.0), (T, T)],
        "negabs": [(-T, -T), (0.0, 0.0), (T, -T)],
    }
    if name not in tables:
        raise UnknownName(f"unknown contraction {name!r}; expected one of {CANONICAL_NAMES}")
    return PLContraction.from_breakpoints(tables[name])


def sawtooth_contraction(period=1.0, half_width=8.0):
    """Distance to the nearest multiple of ``period``; all slopes are +-1."""
    p = float(period)
    if p <= 0:
        raise ValueError("period must be positive")
    k_lo = int(np.floor(-half_width / (p / 2.0))) - 1
    k_hi = int(np.ceil(half_width / (p / 2.0))) + 1
    ts = np.arange(k_lo, k_hi + 1) * (p / 2.0)
    ys = np.where(np.arange(k_lo, k_hi + 1) % 2 == 0, 0.0, p / 2.0)
    return PLContraction(ts, ys)
