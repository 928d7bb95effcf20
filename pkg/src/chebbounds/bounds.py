"""Closed-form coefficient bounds for the class, plus specialization checks.

Everything funnels through one signed denominator

    d(p) = A - 2 (2A - B) t^2,       A = (lam + mu + 2 xi delta)^2,
                                     B = (2 lam + mu)(mu + 1) + 12 xi delta,

whose modulus controls the second-coefficient bound and the sloped
Fekete-Szego branch.  When |d| vanishes (within a scale-aware tolerance)
the affected bounds are reported as positive infinity rather than raised
as errors: a parameter sweep must cross such points without aborting.

The Fekete-Szego threshold exists in two conventions.  The branch
condition that actually makes the two branches meet has denominator
4 (2 lam + mu + 6 xi delta) t^2 ("corrected"); a widely printed variant
uses 2 xi delta in place of 6 xi delta ("as-printed") and is kept,
switchable, for regression comparison.  Its branches disagree at the
threshold whenever delta > 0.

The reduction registry at the bottom holds the printed specializations
of the bounds on pinned parameter slices; ``reduction_check`` confirms
each against the general formulas on a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .classop import ClassParams

CORRECTED = "corrected"
AS_PRINTED = "as-printed"
FLAT = "flat"
SLOPED = "sloped"

UNBOUNDED = math.inf
REDUCTION_TOL = 1e-12

# |d| below this (relative to the natural scale of d) counts as singular
_SINGULAR_RTOL = 1e-12


def theorem_denominator(p: ClassParams) -> tuple[float, float, float]:
    """(A, B, signed denominator A - 2 (2A - B) t^2)."""
    a = p.op_linear_factor ** 2
    b = p.quad_sum_factor
    return a, b, a - 2.0 * (2.0 * a - b) * p.t * p.t


def is_singular_denom(d_signed: float, scale: float) -> bool:
    """Scale-aware vanishing test shared by bounds, oracle and reductions."""
    return abs(d_signed) < _SINGULAR_RTOL * max(1.0, scale)


@dataclass(frozen=True)
class BoundReport:
    """Coefficient bounds at one parameter point."""

    params: ClassParams
    a2_bound: float          # +inf when the denominator vanishes
    a3_bound: float
    A: float
    B: float
    denom: float             # |A - 2 (2A - B) t^2|

    @property
    def singular(self) -> bool:
        return math.isinf(self.a2_bound)


@dataclass(frozen=True)
class FeketeSzegoReport:
    """|a3 - eta a2^2| bound at one (parameter point, eta)."""

    params: ClassParams
    eta: float
    bound: float             # +inf on the sloped branch of a singular point
    branch: str              # FLAT | SLOPED
    threshold_m: float       # half-width of the flat band around eta = 1
    h_eta: float             # the weight whose size selects the branch
    m_variant: str           # CORRECTED | AS_PRINTED


def bound_a2(p: ClassParams) -> float:
    """Bound on |a2|: 2t sqrt(2t) / sqrt(|d|), or +inf when d vanishes."""
    a, _, d = theorem_denominator(p)
    if is_singular_denom(d, a):
        return UNBOUNDED
    t = p.t
    return 2.0 * t * math.sqrt(2.0 * t) / math.sqrt(abs(d))


def bound_a3(p: ClassParams) -> float:
    """Bound on |a3|: 4t^2 / A + 2t / (2 lam + mu + 6 xi delta); always finite."""
    a, _, _ = theorem_denominator(p)
    t = p.t
    return 4.0 * t * t / a + 2.0 * t / p.fs_flat_denom


def bound_report(p: ClassParams) -> BoundReport:
    a, b, d = theorem_denominator(p)
    return BoundReport(
        params=p,
        a2_bound=bound_a2(p),
        a3_bound=bound_a3(p),
        A=a,
        B=b,
        denom=abs(d),
    )


def fekete_szego_bound(
    p: ClassParams, eta: float, variant: str = CORRECTED
) -> FeketeSzegoReport:
    """Piecewise bound on |a3 - eta a2^2| for real eta.

    Flat branch 2t / (2 lam + mu + 6 xi delta) inside |eta - 1| <= M,
    sloped branch 8 |eta - 1| t^3 / |d| outside.  M carries the variant:
    |d| / (4 (2 lam + mu + 6 xi delta) t^2) corrected, printed-denominator
    form otherwise.
    """
    if variant == CORRECTED:
        m_den = p.fs_flat_denom
    elif variant == AS_PRINTED:
        m_den = p.fs_printed_denom
    else:
        raise ValueError(f"unknown variant {variant!r}; use {CORRECTED!r} or {AS_PRINTED!r}")
    eta = float(eta)
    a, _, d = theorem_denominator(p)
    denom = abs(d)
    singular = is_singular_denom(d, a)
    t = p.t
    flat = 2.0 * t / p.fs_flat_denom
    m = 0.0 if singular else denom / (4.0 * m_den * t * t)
    dev = abs(eta - 1.0)
    if eta == 1.0:
        h = 0.0
    elif singular:
        h = math.copysign(math.inf, 1.0 - eta)
    else:
        h = 2.0 * t * t * (1.0 - eta) / d
    if dev <= m:
        branch, bound = FLAT, flat
    else:
        branch = SLOPED
        bound = UNBOUNDED if singular else 8.0 * dev * t ** 3 / denom
    return FeketeSzegoReport(
        params=p,
        eta=eta,
        bound=bound,
        branch=branch,
        threshold_m=m,
        h_eta=h,
        m_variant=variant,
    )


# ---------------------------------------------------------------------------
# printed specializations on pinned parameter slices


def _a2_guarded(t: float, d: float, scale: float) -> float:
    if is_singular_denom(d, scale):
        return UNBOUNDED
    return 2.0 * t * math.sqrt(2.0 * t) / math.sqrt(abs(d))


def _fs_guarded(t: float, eta: float, flat_den: float, d: float, scale: float) -> float:
    dev = abs(eta - 1.0)
    singular = is_singular_denom(d, scale)
    m = 0.0 if singular else abs(d) / (4.0 * flat_den * t * t)
    if dev <= m:
        return 2.0 * t / flat_den
    return UNBOUNDED if singular else 8.0 * dev * t ** 3 / abs(d)


def _coef_basic(p: ClassParams, eta: float | None) -> dict[str, float]:
    t = p.t
    return {
        "a2": t * math.sqrt(2.0 * t) / math.sqrt(1.0 - t * t),
        "a3": t * t + 2.0 * t / 3.0,
    }


def _coef_lambda(p: ClassParams, eta: float | None) -> dict[str, float]:
    lam, t = p.lam, p.t
    d = (1.0 + lam) ** 2 - 4.0 * lam * lam * t * t
    return {
        "a2": _a2_guarded(t, d, (1.0 + lam) ** 2),
        "a3": 4.0 * t * t / (1.0 + lam) ** 2 + 2.0 * t / (2.0 * lam + 1.0),
    }


def _coef_mu(p: ClassParams, eta: float | None) -> dict[str, float]:
    lam, mu, t = p.lam, p.mu, p.t
    s = lam + mu
    d = s * s - 2.0 * (2.0 * s * s - (2.0 * lam + mu) * (mu + 1.0)) * t * t
    return {
        "a2": _a2_guarded(t, d, s * s),
        "a3": 4.0 * t * t / (s * s) + 2.0 * t / (2.0 * lam + mu),
    }


def _coef_delta(p: ClassParams, eta: float | None) -> dict[str, float]:
    lam, delta, t = p.lam, p.delta, p.t
    w = 1.0 + lam + 2.0 * delta
    d = w * w - 4.0 * ((lam + 2.0 * delta) ** 2 - 2.0 * delta) * t * t
    return {
        "a2": _a2_guarded(t, d, w * w),
        "a3": 4.0 * t * t / (w * w) + 2.0 * t / (1.0 + 2.0 * lam + 6.0 * delta),
    }


def _fs_eta1(p: ClassParams, eta: float | None) -> dict[str, float]:
    return {"fs": 2.0 * p.t / p.fs_flat_denom}


def _fs_basic(p: ClassParams, eta: float | None) -> dict[str, float]:
    t = p.t
    dev = abs(float(eta) - 1.0)
    m = (1.0 - t * t) / (3.0 * t * t)
    if dev <= m:
        return {"fs": 2.0 * t / 3.0}
    return {"fs": 2.0 * dev * t ** 3 / (1.0 - t * t)}


def _fs_basic_eta1(p: ClassParams, eta: float | None) -> dict[str, float]:
    return {"fs": 2.0 * p.t / 3.0}


def _fs_lambda(p: ClassParams, eta: float | None) -> dict[str, float]:
    lam, t = p.lam, p.t
    d = (1.0 + lam) ** 2 - 4.0 * lam * lam * t * t
    return {"fs": _fs_guarded(t, float(eta), 2.0 * lam + 1.0, d, (1.0 + lam) ** 2)}


def _fs_lambda_eta1(p: ClassParams, eta: float | None) -> dict[str, float]:
    return {"fs": 2.0 * p.t / (2.0 * p.lam + 1.0)}


def _fs_mu(p: ClassParams, eta: float | None) -> dict[str, float]:
    lam, mu, t = p.lam, p.mu, p.t
    s = lam + mu
    d = s * s - 2.0 * (2.0 * s * s - (2.0 * lam + mu) * (mu + 1.0)) * t * t
    return {"fs": _fs_guarded(t, float(eta), 2.0 * lam + mu, d, s * s)}


def _fs_delta(p: ClassParams, eta: float | None) -> dict[str, float]:
    lam, delta, t = p.lam, p.delta, p.t
    w = 1.0 + lam + 2.0 * delta
    d = w * w - 4.0 * ((lam + 2.0 * delta) ** 2 - 2.0 * delta) * t * t
    return {"fs": _fs_guarded(t, float(eta), 1.0 + 2.0 * lam + 6.0 * delta, d, w * w)}


def _fs_delta_eta1(p: ClassParams, eta: float | None) -> dict[str, float]:
    return {"fs": 2.0 * p.t / (1.0 + 2.0 * p.lam + 6.0 * p.delta)}


def _lin(a: float, b: float, n: int) -> list[float]:
    return [float(v) for v in np.linspace(a, b, n)]


def _grid(
    lams: Iterable[float], mus: Iterable[float], deltas: Iterable[float], ts: Iterable[float]
) -> list[ClassParams]:
    return [
        ClassParams(lam, mu, delta, t)
        for lam in lams
        for mu in mus
        for delta in deltas
        for t in ts
    ]


_T81 = _lin(0.505, 0.995, 81)
_T9 = _lin(0.55, 0.95, 9)
_T5 = _lin(0.55, 0.95, 5)
_T3 = [0.55, 0.75, 0.95]
_L9 = _lin(1.0, 3.0, 9)
_L5 = _lin(1.0, 3.0, 5)
_L3 = [1.0, 2.0, 3.0]
_M5 = _lin(0.0, 2.0, 5)
_M3 = [0.0, 1.0, 2.0]
_D5 = _lin(0.0, 1.0, 5)
_D3 = [0.0, 0.5, 1.0]
_E9 = _lin(-2.0, 4.0, 9)
_E5 = [-2.0, 0.0, 1.0, 2.0, 4.0]
_E3 = [0.0, 1.0, 3.0]


@dataclass(frozen=True)
class _Reduction:
    cid: str
    kind: str                                    # "coef" | "fs"
    pins: tuple[tuple[str, float], ...]
    evaluate: Callable[[ClassParams, float | None], dict[str, float]]
    grid: Callable[[], tuple[list[ClassParams], list[float] | None]]


_REGISTRY: dict[str, _Reduction] = {}


def _register(entry: _Reduction) -> None:
    _REGISTRY[entry.cid] = entry


_register(_Reduction(
    "coef-basic", "coef", (("lambda", 1.0), ("mu", 1.0), ("delta", 0.0)),
    _coef_basic, lambda: (_grid([1.0], [1.0], [0.0], _T81), None)))
_register(_Reduction(
    "coef-lambda", "coef", (("mu", 1.0), ("delta", 0.0)),
    _coef_lambda, lambda: (_grid(_L9, [1.0], [0.0], _T9), None)))
_register(_Reduction(
    "coef-mu", "coef", (("delta", 0.0),),
    _coef_mu, lambda: (_grid(_L5, _M5, [0.0], _T5), None)))
_register(_Reduction(
    "coef-delta", "coef", (("mu", 1.0),),
    _coef_delta, lambda: (_grid(_L5, [1.0], _D5, _T5), None)))
_register(_Reduction(
    "fs-eta1", "fs", (("eta", 1.0),),
    _fs_eta1, lambda: (_grid(_L3, _M3, _D3, _T3), None)))
_register(_Reduction(
    "fs-basic", "fs", (("lambda", 1.0), ("mu", 1.0), ("delta", 0.0)),
    _fs_basic, lambda: (_grid([1.0], [1.0], [0.0], _T9), _E9)))
_register(_Reduction(
    "fs-basic-eta1", "fs", (("lambda", 1.0), ("mu", 1.0), ("delta", 0.0), ("eta", 1.0)),
    _fs_basic_eta1, lambda: (_grid([1.0], [1.0], [0.0], _T81), None)))
_register(_Reduction(
    "fs-lambda", "fs", (("mu", 1.0), ("delta", 0.0)),
    _fs_lambda, lambda: (_grid(_L5, [1.0], [0.0], _T5), _E5)))
_register(_Reduction(
    "fs-lambda-eta1", "fs", (("mu", 1.0), ("delta", 0.0), ("eta", 1.0)),
    _fs_lambda_eta1, lambda: (_grid(_L9, [1.0], [0.0], _T9), None)))
_register(_Reduction(
    "fs-mu", "fs", (("delta", 0.0),),
    _fs_mu, lambda: (_grid(_L3, _M3, [0.0], _T3), _E3)))
_register(_Reduction(
    "fs-delta", "fs", (("mu", 1.0),),
    _fs_delta, lambda: (_grid(_L3, [1.0], _D3, _T3), _E3)))
_register(_Reduction(
    "fs-delta-eta1", "fs", (("mu", 1.0), ("eta", 1.0)),
    _fs_delta_eta1, lambda: (_grid(_L5, [1.0], _D5, _T5), None)))


def corollary_ids() -> list[str]:
    """Registered reduction identifiers, in registry order."""
    return list(_REGISTRY)


def _entry(cid: str) -> _Reduction:
    try:
        return _REGISTRY[cid]
    except KeyError:
        raise ValueError(
            f"unknown corollary id {cid!r}; valid ids: {', '.join(_REGISTRY)}"
        ) from None


def _pin_value(entry: _Reduction, name: str) -> float | None:
    for pin_name, pin_val in entry.pins:
        if pin_name == name:
            return pin_val
    return None


def _check_pins(entry: _Reduction, p: ClassParams, eta: float | None) -> float | None:
    attr = {"lambda": "lam", "mu": "mu", "delta": "delta"}
    for name, val in entry.pins:
        actual = eta if name == "eta" else getattr(p, attr[name])
        if actual is None:
            continue                     # eta omitted: the pinned value applies
        if abs(actual - val) > 1e-12:
            raise ValueError(
                f"corollary {entry.cid!r} pins {name} = {val:g}, got {actual:g}"
            )
    eta_pin = _pin_value(entry, "eta")
    if eta_pin is not None:
        return eta_pin if eta is None else eta
    if entry.kind == "fs":
        if eta is None:
            raise ValueError(f"corollary {entry.cid!r} needs an eta value")
        return eta
    if eta is not None:
        raise ValueError(f"corollary {entry.cid!r} takes no eta")
    return None


def corollary_bound(cid: str, p: ClassParams, eta: float | None = None) -> dict[str, float]:
    """Printed specialized bound(s) at one point of the pinned slice.

    Returns {"a2": ..., "a3": ...} for the coefficient corollaries and
    {"fs": ...} for the Fekete-Szego ones.
    """
    entry = _entry(cid)
    eta_eff = _check_pins(entry, p, eta)
    return entry.evaluate(p, eta_eff)


@dataclass(frozen=True)
class ReductionResult:
    corollary: str
    n_points: int
    max_deviation: float
    passed: bool


def _deviation(special: float, general: float) -> float:
    # the slice formulas go singular exactly where the general one does;
    # two matched infinities are agreement, a mismatch is a failure
    if math.isinf(special) and math.isinf(general):
        return 0.0
    if math.isinf(special) or math.isinf(general):
        return math.inf
    return abs(special - general)


def reduction_check(
    cid: str,
    grid: list[ClassParams] | None = None,
    etas: list[float] | None = None,
    variant: str = CORRECTED,
    tol: float = REDUCTION_TOL,
) -> ReductionResult:
    """Compare a registered specialization against the general bounds.

    Every point of the grid (crossed with the eta values for the
    Fekete-Szego entries) must agree within ``tol``.
    """
    entry = _entry(cid)
    if grid is None:
        grid, default_etas = entry.grid()
        if etas is None:
            etas = default_etas
    eta_pin = _pin_value(entry, "eta")
    if entry.kind == "coef":
        eta_values: list[float | None] = [None]
    elif eta_pin is not None:
        eta_values = [eta_pin]
    elif etas:
        eta_values = list(etas)
    else:
        raise ValueError(f"corollary {cid!r} needs eta values to sweep")
    worst = 0.0
    n = 0
    for p in grid:
        for eta in eta_values:
            special = corollary_bound(cid, p, eta)
            if entry.kind == "coef":
                general = {"a2": bound_a2(p), "a3": bound_a3(p)}
            else:
                general = {
                    "fs": fekete_szego_bound(p, 1.0 if eta is None else eta, variant).bound
                }
            for key, val in special.items():
                worst = max(worst, _deviation(val, general[key]))
            n += 1
    return ReductionResult(
        corollary=cid, n_points=n, max_deviation=worst, passed=worst <= tol
    )


def default_reduction_grid(cid: str) -> tuple[list[ClassParams], list[float] | None]:
    """The built-in verification grid for one registered reduction."""
    return _entry(cid).grid()
