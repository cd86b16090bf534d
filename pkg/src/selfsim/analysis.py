"""Analytic criteria for self-similar functions: a-priori norm bounds,
continuity and monotonicity checks, bounded-variation discriminant, and
stability of the fixed point under parameter perturbations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadExponent,
    NotApplicable,
    NotContractive,
    NotContractiveAtSomeS,
    PartitionMismatch,
    Unbounded,
)
from .params import (
    SimilaritySystem,
    check_exponent,
    contraction_factor,
    validate,
    weighted_pair_norm,
)
from .simop import boundary_anchors, mesh_code_values

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class NormBound:
    p: float
    bound: float
    components: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RegularityVerdict:
    kind: str  # continuity | monotonicity | bounded_variation
    verdict: str  # holds | fails | indeterminate
    witnesses: tuple = ()

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


def _witness(condition: str, index=None, residual=None, point=None) -> dict:
    w = {"condition": condition}
    if index is not None:
        w["index"] = index
    if residual is not None:
        w["residual"] = residual
    if point is not None:
        w["point"] = point
    return w


# ----------------------------------------------------------------------
# norm bounds
# ----------------------------------------------------------------------
def _intermediate_factors(system: SimilaritySystem, top: int):
    """Weighted pair norms and contraction factors for s = 1..top."""
    norms = [weighted_pair_norm(system.c, system.beta, s, system.a) for s in range(1, top + 1)]
    rs = [contraction_factor(system, s).r_p for s in range(1, top + 1)]
    bad = [s for s, r in enumerate(rs, start=1) if r >= 1.0]
    if bad:
        raise NotContractiveAtSomeS(bad)
    return norms, rs


def norm_bound_integer(system: SimilaritySystem, p: int) -> NormBound:
    """A-priori bound for integer p:
    (sum_{s=1..p} ||{c,beta}||_{s,a}) / (prod_{s=1..p} (1-r_s))^{1/p}.
    """
    p = int(p)
    if p < 1:
        raise BadExponent(f"integer exponent must be >= 1, got {p}")
    norms, rs = _intermediate_factors(system, p)
    num = math.fsum(norms)
    den = math.prod(1.0 - r for r in rs) ** (1.0 / p)
    return NormBound(
        p=float(p),
        bound=num / den,
        components={"weighted_norms": norms, "r_s": rs},
    )


def norm_bound_fractional(system: SimilaritySystem, p: float) -> NormBound:
    """A-priori bound for non-integer p > 1 with the explicit constant C."""
    p = check_exponent(p)
    if math.isinf(p) or p == int(p):
        raise BadExponent(f"fractional bound needs non-integer finite p, got {p}")
    ip = int(math.floor(p))  # [p]
    fp = p - ip  # {p}
    norms, rs = _intermediate_factors(system, ip)
    rp = contraction_factor(system, p).r_p
    if rp >= 1.0:
        raise NotContractive(f"r_p = {rp} >= 1 at p = {p}")
    norm_sum = math.fsum(norms)
    cb_max = max(abs(ck) + abs(bk) for ck, bk in zip(system.c, system.beta))
    d_max = max(abs(dk) for dk in system.d)
    C = max(cb_max**fp, d_max**fp, norm_sum**fp) ** (1.0 / p)
    num = (norms[ip - 1] ** ip + norm_sum) ** (ip / p)
    den = ((1.0 - rp) * math.prod(1.0 - r for r in rs)) ** (1.0 / p)
    return NormBound(
        p=p,
        bound=C * num / den,
        components={"weighted_norms": norms, "r_s": rs, "r_p": rp, "C": C},
    )


def norm_bound_infinity(system: SimilaritySystem) -> NormBound:
    """Sup-norm bound max_k(|c_k|+|beta_k|) / (1 - max_k |d_k|)."""
    validate(system)
    r_inf = contraction_factor(system, math.inf).r_p
    if r_inf >= 1.0:
        raise NotContractive(f"r_inf = {r_inf} >= 1")
    cb_max = max(abs(ck) + abs(bk) for ck, bk in zip(system.c, system.beta))
    return NormBound(
        p=math.inf,
        bound=cb_max / (1.0 - r_inf),
        components={"cb_max": cb_max, "r_inf": r_inf},
    )


def norm_bound(system: SimilaritySystem, p) -> NormBound:
    """Dispatch to the integer, fractional, or sup-norm bound."""
    p = check_exponent(p)
    if math.isinf(p):
        return norm_bound_infinity(system)
    if p == int(p):
        return norm_bound_integer(system, int(p))
    return norm_bound_fractional(system, p)


# ----------------------------------------------------------------------
# regularity checks
# ----------------------------------------------------------------------
def continuity_check(system: SimilaritySystem, tol: float = DEFAULT_TOL) -> RegularityVerdict:
    """Necessary-and-sufficient continuity conditions.

    Requires max|d_k| < 1, the junction equalities
    c_k + d_k f1 + beta_k = d_{k+1} f0 + beta_{k+1} at every interior
    partition point, and the closure identity
    sum c_j + (f1-f0) sum d_j = f1 - f0.
    """
    part = validate(system)
    witnesses = []
    d_max = max(abs(dk) for dk in system.d)
    if d_max >= 1.0:
        k_bad = int(np.argmax(np.abs(system.d)))
        witnesses.append(_witness("max|d|<1", index=k_bad + 1, residual=d_max - 1.0))
        return RegularityVerdict("continuity", "fails", tuple(witnesses))
    anchors = boundary_anchors(system)
    f0, f1 = anchors.f0, anchors.f1
    for k in range(system.n - 1):
        lhs = system.c[k] + system.d[k] * f1 + system.beta[k]
        rhs = system.d[k + 1] * f0 + system.beta[k + 1]
        res = lhs - rhs
        if abs(res) > tol:
            witnesses.append(
                _witness("junction", index=k + 1, residual=res, point=part.alpha[k + 1])
            )
    closure = math.fsum(system.c) + (f1 - f0) * math.fsum(system.d) - (f1 - f0)
    if abs(closure) > tol:
        witnesses.append(_witness("closure", residual=closure))
    verdict = "fails" if witnesses else "holds"
    return RegularityVerdict("continuity", verdict, tuple(witnesses))


def _necessary_monotone_witnesses(system: SimilaritySystem, f0: float, f1: float, tol: float):
    """Violations of the necessary nondecreasing conditions.

    In anchored form: the within-branch drift c_k + d_k (f1 - f0) must be
    nonnegative, the one-sided values at the partition points must be
    ordered, and the right-end value may not exceed f1 (the beta_{n+1} = f1
    convention).
    """
    n = system.n
    witnesses = []
    for k in range(n):
        drift = system.c[k] + system.d[k] * (f1 - f0)
        if drift < -tol:
            witnesses.append(_witness("c_k+d_k>=0", index=k + 1, residual=drift))
    starts = [system.d[k] * f0 + system.beta[k] for k in range(n)] + [f1]
    for k in range(n):
        res = starts[k] - starts[k + 1]
        if res > tol:
            witnesses.append(_witness("beta_k<=beta_{k+1}", index=k + 1, residual=res))
    for k in range(n):
        end = system.c[k] + system.d[k] * f1 + system.beta[k]
        nxt = starts[k + 1]
        res = end - nxt
        if res > tol:
            witnesses.append(
                _witness("junction_monotone", index=k + 1, residual=res)
            )
    return witnesses


def monotonicity_classify(
    system: SimilaritySystem,
    tol: float = DEFAULT_TOL,
    fallback_depth: int = 8,
    fallback_cap: int = 10**6,
) -> RegularityVerdict:
    """Classify whether the fixed point is nondecreasing.

    Fails when a necessary condition is violated; holds when the sufficient
    conditions (c_k >= 0, d_k >= 0, ordered offsets) are met; otherwise the
    exact code-point values are scanned up to fallback_depth for a
    decreasing pair, and the verdict stays indeterminate only when none is
    found.
    """
    validate(system)
    if max(abs(dk) for dk in system.d) >= 1.0:
        raise Unbounded("some |d_k| >= 1: bounded fixed point does not exist")
    anchors = boundary_anchors(system)
    f0, f1 = anchors.f0, anchors.f1

    witnesses = _necessary_monotone_witnesses(system, f0, f1, tol)
    if witnesses:
        return RegularityVerdict("monotonicity", "fails", tuple(witnesses))

    sufficient = all(ck >= -tol for ck in system.c) and all(dk >= -tol for dk in system.d)
    if sufficient:
        return RegularityVerdict("monotonicity", "holds")

    # numerical fallback: exact one-sided values on refinement meshes
    for m in range(1, fallback_depth + 1):
        if system.n**m > fallback_cap:
            break
        xL, vL, xR, vR = mesh_code_values(system, anchors, m)
        pts = np.empty(2 * xL.size)
        vals = np.empty_like(pts)
        pts[0::2], pts[1::2] = xL, xR
        vals[0::2], vals[1::2] = vL, vR
        drops = np.nonzero(np.diff(vals) < -tol)[0]
        if drops.size:
            i = int(drops[0])
            witnesses = (
                _witness(
                    "mesh_decrease",
                    index=m,
                    residual=float(vals[i + 1] - vals[i]),
                    point=(float(pts[i]), float(pts[i + 1])),
                ),
            )
            return RegularityVerdict("monotonicity", "fails", witnesses)
    return RegularityVerdict("monotonicity", "indeterminate")


def variation_criterion(system: SimilaritySystem, tol: float = DEFAULT_TOL):
    """Bounded-variation discriminant D = sum |d_k| for normalized systems.

    Requires a continuous system with c_k = 0 anchored at f0 = 0, f1 = 1
    (which forces sum d_k = 1).  Returns (D, verdict): bounded variation
    (total variation 1) iff D <= 1, unbounded variation iff D > 1.
    """
    validate(system)
    violated = []
    if not continuity_check(system, tol).holds:
        violated.append("continuity")
    if any(ck != 0.0 for ck in system.c):
        violated.append("c=0")
    try:
        anchors = boundary_anchors(system)
        if abs(anchors.f0) > tol:
            violated.append("f0=0")
        if abs(anchors.f1 - 1.0) > tol:
            violated.append("f1=1")
    except Unbounded:
        violated.append("bounded")
    if violated:
        raise NotApplicable(violated)
    D = math.fsum(abs(dk) for dk in system.d)
    if D <= 1.0 + 1e-12:
        verdict = RegularityVerdict("bounded_variation", "holds")
    else:
        verdict = RegularityVerdict(
            "bounded_variation", "fails", (_witness("D<=1", residual=D - 1.0),)
        )
    return D, verdict


def variation_on_mesh(system: SimilaritySystem, m: int, cap: int = 10**7) -> float:
    """Variation of the fixed point over the mesh T_m.

    Uses the left-continuity convention: the value at each interior mesh
    point is the exact left limit there, the value at 0 is f0.
    """
    anchors = boundary_anchors(system)
    _, _, _, vR = mesh_code_values(system, anchors, m, cap=cap)
    vals = np.concatenate(([anchors.f0], vR))
    return float(np.abs(np.diff(vals)).sum())


# ----------------------------------------------------------------------
# stability and family bounds
# ----------------------------------------------------------------------
def stability_bound(
    s1: SimilaritySystem,
    s2: SimilaritySystem,
    p,
    norms: tuple[float, float],
) -> float:
    """Bound on ||f - g||_p for two systems sharing the partition.

    norms supplies (an upper bound on) ||f||_p and ||g||_p; the bound is
    monotone increasing in both.
    """
    p = check_exponent(p)
    validate(s1)
    validate(s2)
    if s1.a != s2.a:
        raise PartitionMismatch("systems must share the segment lengths a")
    r1 = contraction_factor(s1, p).r_p
    r2 = contraction_factor(s2, p).r_p
    if r1 >= 1.0 or r2 >= 1.0:
        raise NotContractive(f"r_p = {r1}, r'_p = {r2} at p = {p}")
    dc = np.subtract(s1.c, s2.c)
    db = np.subtract(s1.beta, s2.beta)
    dd = np.abs(np.subtract(s1.d, s2.d))
    nf, ng = norms
    if math.isinf(p):
        num = 2.0 * weighted_pair_norm(dc, db, p, s1.a) + dd.max() * (nf + ng)
        den = 2.0 - r1 - r2
    else:
        dnorm = float(np.asarray(s1.a) @ dd**p) ** (1.0 / p)
        num = 2.0**p * weighted_pair_norm(dc, db, p, s1.a) + 2.0 ** (p - 1.0) * dnorm * (nf + ng)
        den = 2.0 - r1 ** (1.0 / p) - r2 ** (1.0 / p)
    return num / den


def family_bound(R: float, eps: float, p) -> float:
    """Uniform norm bound for the family ||{c,beta}||_{p,a} <= R, r_p <= 1-eps.

    Integer p maximizes the integer-exponent bound using
    r_s <= r_p^{s/p} and ||{c,beta}||_{s,a} <= ||{c,beta}||_{p,a};
    p = inf maximizes the sup-norm bound, giving R/eps.  For non-integer p
    the explicit-constant bound is not uniform over the family (its constant
    depends on max_k(|c_k|+|beta_k|), uncontrolled by the weighted norm), so
    the contraction estimate ||f||_p <= R/(1 - r_p^{1/p}) is maximized
    instead.
    """
    p = check_exponent(p)
    if R < 0.0:
        raise BadExponent(f"R must be nonnegative, got {R}")
    if not 0.0 < eps < 1.0:
        raise BadExponent(f"eps must lie in (0,1), got {eps}")
    if R == 0.0:
        return 0.0
    if math.isinf(p):
        return R / eps
    q = 1.0 - eps
    if p == int(p):
        ip = int(p)
        den = math.prod(1.0 - q ** (s / p) for s in range(1, ip + 1)) ** (1.0 / p)
        return ip * R / den
    return R / (1.0 - q ** (1.0 / p))
