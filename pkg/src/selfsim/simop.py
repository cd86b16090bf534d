"""The similarity operator on piecewise-linear functions, refinement meshes
with segment codes, and exact evaluation of the fixed point at code points.

Code convention: a code (k_1, ..., k_m) addresses the segment
S_{k_1}(S_{k_2}(... S_{k_m}([0,1]))), where S_k(t) = a_k t + alpha_k.  The
first letter is the outermost map, so codes in lexicographic order run left
to right across [0,1].  Value recursions therefore process the code from the
last letter to the first, carrying the pair (t, f(t)) and applying
f(S_k(t)) = c_k t + d_k f(t) + beta_k at each step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadIndex, DepthTooLarge, NonzeroC, Unbounded
from .params import Partition, SimilaritySystem, validate
from .pwl import PiecewiseLinearFn

DEFAULT_SEGMENT_CAP = 10**7


@dataclass(frozen=True)
class SegmentCode:
    """Finite word of 1-based branch indices addressing a segment of T_m."""

    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(k) for k in self.word))

    @property
    def depth(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Mesh:
    """Sorted distinct endpoints of the n^m segments of T_m."""

    depth: int
    points: np.ndarray


@dataclass(frozen=True)
class BoundaryAnchors:
    """One-sided boundary values f0 = f(0+), f1 = f(1-) of the fixed point."""

    f0: float
    f1: float


def _check_code(code: SegmentCode | Sequence[int], n: int) -> tuple[int, ...]:
    word = code.word if isinstance(code, SegmentCode) else tuple(int(k) for k in code)
    for k in word:
        if not 1 <= k <= n:
            raise BadIndex(f"code letter {k} outside 1..{n}")
    return word


def boundary_anchors(system: SimilaritySystem) -> BoundaryAnchors:
    """Anchors forced by the junction conditions when the one-sided limits exist."""
    validate(system)
    d1, dn = system.d[0], system.d[-1]
    if abs(d1) >= 1.0 or abs(dn) >= 1.0:
        raise Unbounded(f"|d_1|={abs(d1)}, |d_n|={abs(dn)}: boundary anchors undefined")
    f0 = system.beta[0] / (1.0 - d1)
    f1 = (system.c[-1] + system.beta[-1]) / (1.0 - dn)
    return BoundaryAnchors(f0=f0, f1=f1)


def apply_G(system: SimilaritySystem, f: PiecewiseLinearFn) -> PiecewiseLinearFn:
    """One application of the similarity operator.

    On (alpha_k, alpha_{k+1}) the image is beta_k + c_k t + d_k f(t) with
    t = (x - alpha_k)/a_k; one-sided limits of f are carried to the scaled
    breakpoints, so piecewise-linear functions map to piecewise-linear
    functions (with the branch images merged where they continue collinearly).
    """
    part = validate(system)
    alpha = part.alpha
    n = system.n
    m = f.x.size

    xs = np.empty(n * (m - 1) + 1)
    yl = np.empty_like(xs)
    yr = np.empty_like(xs)
    for k in range(n):
        a, c, d, b = system.a[k], system.c[k], system.d[k], system.beta[k]
        lo = k * (m - 1)
        seg_x = a * f.x + alpha[k]
        seg_x[-1] = alpha[k + 1]
        drift = c * f.x + b
        xs[lo : lo + m - 1] = seg_x[:-1]
        # right limits at the scaled breakpoints (the junction alpha_{k+1}
        # takes its right limit from the next branch's first point)
        yr[lo : lo + m - 1] = drift[:-1] + d * f.yr[:-1]
        # left limits, including this branch's contribution at alpha_{k+1}
        yl[lo + 1 : lo + m] = drift[1:] + d * f.yl[1:]
    xs[-1] = 1.0
    yl[0] = yr[0]
    yr[-1] = yl[-1]
    # scaling can round distinct breakpoints to the same float; collapse each
    # run to one breakpoint keeping the outer one-sided limits
    if (np.diff(xs) == 0.0).any():
        pos = np.diff(xs) > 0.0
        first = np.concatenate(([True], pos))
        last = np.concatenate((pos, [True]))
        xs, yl, yr = xs[first], yl[first], yr[last]
    return PiecewiseLinearFn(xs, yl, yr, _trusted=True).merged()


def build_mesh(system: SimilaritySystem, m: int, cap: int = DEFAULT_SEGMENT_CAP) -> Mesh:
    """Refinement mesh T_m: T_1 = {alpha_k}, T_m = {a_k x + alpha_k : x in T_{m-1}}.

    Points are deduplicated by exact float equality; the affine updates use
    the same operation order as :func:`code_to_segment`, so code endpoints
    reproduce mesh points exactly.
    """
    part = validate(system)
    n = system.n
    if m < 1:
        raise DepthTooLarge(f"depth must be >= 1, got {m}")
    if n**m > cap:
        raise DepthTooLarge(f"n^m = {n}^{m} exceeds segment cap {cap}")
    pts = np.asarray(part.alpha)
    a = np.asarray(system.a)
    alpha = np.asarray(part.alpha[:-1])
    for _ in range(m - 1):
        blocks = a[:, None] * pts[None, :] + alpha[:, None]
        # the image of t = 1 is the exact junction point alpha_{k+1}
        blocks[:, pts == 1.0] = np.asarray(part.alpha[1:])[:, None]
        pts = np.unique(blocks.ravel())
    return Mesh(depth=m, points=pts)


def code_to_segment(system: SimilaritySystem, code: SegmentCode | Sequence[int]) -> tuple[float, float]:
    """Endpoints of the coded segment, nesting the affine images from [0,1]."""
    part = validate(system)
    word = _check_code(code, system.n)
    lo, hi = 0.0, 1.0
    for k in reversed(word):
        a, al = system.a[k - 1], part.alpha[k - 1]
        lo = a * lo + al
        # image of t = 1 is the exact junction point, matching build_mesh
        hi = part.alpha[k] if hi == 1.0 else a * hi + al
    return lo, hi


def exact_value_at_code_point(
    system: SimilaritySystem,
    anchors: BoundaryAnchors,
    code: SegmentCode | Sequence[int],
    end: str = "left",
) -> float:
    """One-sided fixed-point value at an endpoint of the coded segment.

    Left ends give the right limit f(x+0) anchored at f0; right ends give the
    left limit f(x-0) anchored at f1.  Requires |d_k| < 1 for all k.
    """
    validate(system)
    word = _check_code(code, system.n)
    if max(abs(dk) for dk in system.d) >= 1.0:
        raise Unbounded("some |d_k| >= 1: bounded fixed point does not exist")
    if end == "left":
        t, v = 0.0, anchors.f0
    elif end == "right":
        t, v = 1.0, anchors.f1
    else:
        raise BadIndex(f"end must be 'left' or 'right', got {end!r}")
    part = validate(system)
    for k in reversed(word):
        i = k - 1
        v = system.c[i] * t + system.d[i] * v + system.beta[i]
        t = system.a[i] * t + part.alpha[i]
    return v


def iterate_closed_form(
    system: SimilaritySystem, code: SegmentCode | Sequence[int], x: float
) -> float:
    """Closed-form value of the m-th iterate (seed f_0(x) = x) on its segment.

    Only valid for c_k = 0: on the coded segment the iterate is the affine
    function with slope prod(d)/prod(a) through the exactly-known left
    endpoint value sum_j beta_{k_j} prod_{i<j} d_{k_i}.
    """
    validate(system)
    word = _check_code(code, system.n)
    if any(ck != 0.0 for ck in system.c):
        raise NonzeroC("closed-form iterate requires c_k = 0 for all k")
    lo, hi = code_to_segment(system, word)
    if not (lo - 1e-12 <= x <= hi + 1e-12):
        raise BadIndex(f"x={x} outside coded segment [{lo}, {hi}]")
    slope_num = 1.0
    slope_den = 1.0
    intercept = 0.0
    dprod = 1.0  # product of d over letters outward of the current one
    for k in word:
        i = k - 1
        intercept += system.beta[i] * dprod
        dprod *= system.d[i]
        slope_num *= system.d[i]
        slope_den *= system.a[i]
    return (slope_num / slope_den) * (x - lo) + intercept


def mesh_code_values(
    system: SimilaritySystem,
    anchors: BoundaryAnchors,
    m: int,
    cap: int = DEFAULT_SEGMENT_CAP,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Exact one-sided fixed-point values over all depth-m segments.

    Returns (xL, vL, xR, vR) in left-to-right segment order: vL is the right
    limit at each segment's left end, vR the left limit at its right end.
    All n^m segments are evaluated with the same recursion as
    :func:`exact_value_at_code_point`, vectorized over codes.
    """
    part = validate(system)
    n = system.n
    if m < 1:
        raise DepthTooLarge(f"depth must be >= 1, got {m}")
    if n**m > cap:
        raise DepthTooLarge(f"n^m = {n}^{m} exceeds segment cap {cap}")
    if max(abs(dk) for dk in system.d) >= 1.0:
        raise Unbounded("some |d_k| >= 1: bounded fixed point does not exist")
    tL = np.array([0.0])
    vL = np.array([anchors.f0])
    tR = np.array([1.0])
    vR = np.array([anchors.f1])
    a = np.asarray(system.a)
    c = np.asarray(system.c)
    d = np.asarray(system.d)
    b = np.asarray(system.beta)
    al = np.asarray(part.alpha[:-1])
    for _ in range(m):
        # prepend each letter k as the new outermost map; block order keeps
        # the segments sorted left to right
        ones = tR == 1.0
        vL = (c[:, None] * tL[None, :] + d[:, None] * vL[None, :] + b[:, None]).ravel()
        tL = (a[:, None] * tL[None, :] + al[:, None]).ravel()
        vR = (c[:, None] * tR[None, :] + d[:, None] * vR[None, :] + b[:, None]).ravel()
        tR_new = a[:, None] * tR[None, :] + al[:, None]
        tR_new[:, ones] = np.asarray(part.alpha[1:])[:, None]
        tR = tR_new.ravel()
    return tL, vL, tR, vR


def all_codes(n: int, m: int) -> Iterable[tuple[int, ...]]:
    """All depth-m codes in lexicographic (= spatial) order."""
    import itertools

    return itertools.product(range(1, n + 1), repeat=m)
