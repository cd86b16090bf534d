"""Piecewise-linear functions on [0,1] with one-sided values at breakpoints.

A function is stored as breakpoints x[0] = 0 < ... < x[M] = 1 together with
left-limit values yl and right-limit values yr at every breakpoint.  On the
open piece (x[i], x[i+1]) the function is the affine segment joining yr[i]
to yl[i+1]; jumps (yl != yr) are allowed at interior breakpoints.  yl[0] and
yr[M] are conventions (set equal to their one-sided partners).
"""

from __future__ import annotations

import numpy as np

from .errors import SelfSimError

# Adjacent pieces are merged when the junction carries no jump and the slopes
# agree to this relative tolerance (rounding scale for exactly collinear data).
_MERGE_SLOPE_TOL = 1e-13


class PiecewiseLinearFn:
    __slots__ = ("x", "yl", "yr")

    def __init__(self, x, yl, yr=None, _trusted=False):
        x = np.asarray(x, dtype=float)
        yl = np.asarray(yl, dtype=float)
        yr = yl if yr is None else np.asarray(yr, dtype=float)
        if not _trusted:
            if x.ndim != 1 or x.size < 2:
                raise SelfSimError("need at least two breakpoints")
            if x[0] != 0.0 or x[-1] != 1.0:
                raise SelfSimError("breakpoints must start at 0 and end at 1")
            if np.any(np.diff(x) <= 0.0):
                raise SelfSimError("breakpoints must be strictly increasing")
            if yl.shape != x.shape or yr.shape != x.shape:
                raise SelfSimError("value arrays must match breakpoints")
            yl = yl.copy()
            yr = yr.copy()
            yl[0] = yr[0]
            yr[-1] = yl[-1]
        self.x = x
        self.yl = yl
        self.yr = yr

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def identity(cls) -> "PiecewiseLinearFn":
        return cls([0.0, 1.0], [0.0, 1.0])

    @classmethod
    def zero(cls) -> "PiecewiseLinearFn":
        return cls([0.0, 1.0], [0.0, 0.0])

    @classmethod
    def from_points(cls, x, y) -> "PiecewiseLinearFn":
        """Continuous interpolant through (x_i, y_i)."""
        return cls(x, y)

    @property
    def n_pieces(self) -> int:
        return self.x.size - 1

    def slopes(self) -> np.ndarray:
        return (self.yl[1:] - self.yr[:-1]) / (self.x[1:] - self.x[:-1])

    # ------------------------------------------------------------------
    # evaluation
    # ------------------------------------------------------------------
    def _piece_index(self, t: np.ndarray, side: str) -> np.ndarray:
        # piece i covers (x[i], x[i+1]); side decides which piece owns a
        # breakpoint hit.
        if side == "right":
            idx = np.searchsorted(self.x, t, side="right") - 1
        else:
            idx = np.searchsorted(self.x, t, side="left") - 1
        return np.clip(idx, 0, self.n_pieces - 1)

    def value_right(self, t) -> np.ndarray:
        """Right-limit values f(t+0) (at t = 1: the left limit)."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        i = self._piece_index(t, "right")
        s = (self.yl[i + 1] - self.yr[i]) / (self.x[i + 1] - self.x[i])
        return self.yr[i] + s * (t - self.x[i])

    def value_left(self, t) -> np.ndarray:
        """Left-limit values f(t-0) (at t = 0: the right limit)."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        i = self._piece_index(t, "left")
        s = (self.yl[i + 1] - self.yr[i]) / (self.x[i + 1] - self.x[i])
        return self.yl[i + 1] + s * (t - self.x[i + 1])

    def __call__(self, t) -> np.ndarray:
        return self.value_right(t)

    # ------------------------------------------------------------------
    # simplification
    # ------------------------------------------------------------------
    def merged(self) -> "PiecewiseLinearFn":
        """Drop interior breakpoints where the function continues collinearly.

        Only jump-free junctions with matching slopes are removed, so the
        represented function is unchanged up to rounding of the slopes.
        """
        if self.n_pieces < 2:
            return self
        s = self.slopes()
        scale = np.maximum(1.0, np.maximum(np.abs(s[:-1]), np.abs(s[1:])))
        collinear = np.abs(s[1:] - s[:-1]) <= _MERGE_SLOPE_TOL * scale
        interior = np.arange(1, self.x.size - 1)
        no_jump = self.yl[interior] == self.yr[interior]
        drop = collinear & no_jump
        if not drop.any():
            return self
        keep = np.ones(self.x.size, dtype=bool)
        keep[interior[drop]] = False
        return PiecewiseLinearFn(self.x[keep], self.yl[keep], self.yr[keep], _trusted=True)
