"""Self-similar probability measures induced by nondecreasing normalized
self-similar functions (c_k = 0, f(0) = 0, f(1) = 1): the branch weights are
rho_k = d_k and the maps send [0,1] affinely onto the partition segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analysis import monotonicity_classify
from .errors import BadIndex, DepthTooLarge, NotApplicable
from .params import SimilaritySystem, validate
from .simop import SegmentCode, boundary_anchors, exact_value_at_code_point

ZERO_BRANCH_TOL = 1e-15


@dataclass(frozen=True)
class SelfSimilarMeasure:
    """Weights rho_k and affine maps t -> length_k * t + left_k.

    letters records, per branch, the 1-based index of the originating branch
    of the source system (they differ when zero-weight branches were
    collapsed away).
    """

    rho: tuple[float, ...]
    left: tuple[float, ...]
    length: tuple[float, ...]
    letters: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rho)


def measure_from_function(
    system: SimilaritySystem,
    collapse_zero_branches: bool = False,
    tol: float = 1e-9,
) -> SelfSimilarMeasure:
    """Build the measure mu_f([z, x)) = f(x) - f(z) of a nondecreasing
    normalized fixed point; rho_k = d_k.

    Zero-weight branches (d_k = 0) are rejected by default; with
    collapse_zero_branches=True they are removed and the remaining maps keep
    their original image segments.
    """
    part = validate(system)
    violated = []
    if any(ck != 0.0 for ck in system.c):
        violated.append("c=0")
    try:
        anchors = boundary_anchors(system)
        if abs(anchors.f0) > tol:
            violated.append("f0=0")
        if abs(anchors.f1 - 1.0) > tol:
            violated.append("f1=1")
    except Exception:
        violated.append("bounded")
    if not violated:
        if not monotonicity_classify(system, tol).holds:
            violated.append("nondecreasing")
        if abs(math.fsum(system.d) - 1.0) > 1e-12:
            violated.append("sum_d=1")
        if any(dk < -ZERO_BRANCH_TOL for dk in system.d):
            violated.append("d_k>0")
        zero = [k for k, dk in enumerate(system.d) if abs(dk) <= ZERO_BRANCH_TOL]
        if zero and not collapse_zero_branches:
            violated.append("d_k>0")
    if violated:
        raise NotApplicable(sorted(set(violated)))

    keep = [k for k, dk in enumerate(system.d) if dk > ZERO_BRANCH_TOL]
    if len(keep) < 2:
        raise NotApplicable(["n>1"], "fewer than two positive-weight branches")
    return SelfSimilarMeasure(
        rho=tuple(system.d[k] for k in keep),
        left=tuple(part.alpha[k] for k in keep),
        length=tuple(system.a[k] for k in keep),
        letters=tuple(k + 1 for k in keep),
    )


def _check_measure_code(measure: SelfSimilarMeasure, code) -> tuple[int, ...]:
    word = code.word if isinstance(code, SegmentCode) else tuple(int(k) for k in code)
    for k in word:
        if not 1 <= k <= measure.n:
            raise BadIndex(f"code letter {k} outside 1..{measure.n}")
    return word


def coded_interval_mass(measure: SelfSimilarMeasure, code) -> float:
    """Mass of the coded interval: the product of the branch weights."""
    word = _check_measure_code(measure, code)
    return math.prod(measure.rho[k - 1] for k in word)


def coded_interval(measure: SelfSimilarMeasure, code) -> tuple[float, float]:
    """Endpoints of the coded interval under the measure's maps."""
    word = _check_measure_code(measure, code)
    lo, hi = 0.0, 1.0
    for k in reversed(word):
        a, al = measure.length[k - 1], measure.left[k - 1]
        lo = a * lo + al
        hi = a * hi + al
    return lo, hi


def cdf_consistency(
    system: SimilaritySystem,
    measure: SelfSimilarMeasure,
    m: int,
    cap: int = 10**6,
) -> float:
    """Max residual |mass(code) - (f(right) - f(left))| over depth-m codes.

    f values are the exact one-sided fixed-point values of the system the
    measure was built from.
    """
    if measure.n**m > cap:
        raise DepthTooLarge(f"{measure.n}^{m} codes exceed cap {cap}")
    anchors = boundary_anchors(system)
    import itertools

    worst = 0.0
    for word in itertools.product(range(1, measure.n + 1), repeat=m):
        mass = coded_interval_mass(measure, word)
        sys_word = tuple(measure.letters[k - 1] for k in word)
        f_lo = exact_value_at_code_point(system, anchors, sys_word, "left")
        f_hi = exact_value_at_code_point(system, anchors, sys_word, "right")
        worst = max(worst, abs(mass - (f_hi - f_lo)))
    return worst


def sample(
    measure: SelfSimilarMeasure, count: int, depth: int, rng_seed: int
) -> np.ndarray:
    """Left endpoints of depth-long codes drawn letter-by-letter with
    probabilities rho; deterministic for a fixed seed (NumPy PCG64).
    """
    if count < 1 or depth < 1:
        raise DepthTooLarge("count and depth must be positive")
    rng = np.random.default_rng(rng_seed)
    rho = np.asarray(measure.rho)
    rho = rho / rho.sum()
    idx = rng.choice(measure.n, size=(count, depth), p=rho)
    left = np.asarray(measure.left)
    length = np.asarray(measure.length)
    x = np.zeros(count)
    for j in range(depth - 1, -1, -1):
        lj = idx[:, j]
        x = length[lj] * x + left[lj]
    return x
