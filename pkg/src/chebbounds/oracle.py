"""Brute-force verification of the closed-form bounds by searching the
admissible Schwarz-coefficient set.

Two constraint sets are searched.  ``proof-set`` mode maximizes each
quantity over independently chosen unit-disk coefficients, using for
each quantity exactly the relations its bound derivation uses — so its
supremum should match the closed-form bound wherever that bound is
attained.  ``full-system`` mode keeps all four coefficient relations
simultaneously consistent, which additionally caps |a2| through the
linear relation (|c1| <= 1); its supremum may sit strictly below the
closed form, and the gap is reported, not judged.

Sampling is uniform in (modulus^2, argument) per coefficient, with the
extreme combinations of {0, +-1, +-i} injected deterministically: the
analytic maxima sit at boundary sign patterns, so injection makes the
attained equalities exact rather than asymptotic.  The two square-root
branches of a2 enter every verified quantity through a2^2 alone, so one
evaluation accounts for both (solve_member_coeffs exposes the branch
choice explicitly for callers that want a concrete a2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bounds import (
    CORRECTED,
    bound_a2,
    bound_a3,
    fekete_szego_bound,
    is_singular_denom,
    theorem_denominator,
)
from .chebyshev import cheb_u
from .classop import ADMISSIBLE_TOL, ClassParams, SchwarzPair

PROOF_SET = "proof-set"
FULL_SYSTEM = "full-system"

WITHIN_BOUND = "within-bound"
VIOLATION = "violation"
SKIPPED = "skipped"

# sup may exceed the bound by float noise at an attained maximum, never more
VERDICT_TOL = 1e-9

_REFINE_FRACTIONS = (0.25, 0.1, 0.04, 0.016, 0.0064)
_REFINE_BATCH = 20


@dataclass(frozen=True)
class OracleConfig:
    mode: str = PROOF_SET
    n_samples: int = 10_000
    seed: int = 0
    grid_refine: bool = True


@dataclass(frozen=True)
class Quantity:
    """What to maximize: |a2|, |a3|, or |a3 - eta a2^2|."""

    kind: str                    # "a2" | "a3" | "fs"
    eta: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("a2", "a3", "fs"):
            raise ValueError(f"unknown quantity kind {self.kind!r}")
        if self.kind == "fs" and self.eta is None:
            raise ValueError("fs quantity needs an eta value")
        if self.kind != "fs" and self.eta is not None:
            raise ValueError(f"{self.kind} quantity takes no eta")
        if self.eta is not None:
            object.__setattr__(self, "eta", float(self.eta))

    @property
    def label(self) -> str:
        if self.kind == "fs":
            return f"fs@{self.eta:g}"
        return self.kind


A2 = Quantity("a2")
A3 = Quantity("a3")


def fs_quantity(eta: float) -> Quantity:
    return Quantity("fs", float(eta))


@dataclass(frozen=True)
class Witness:
    """Argmax sample, reported as the Schwarz data plus the (a2, a3) it implies."""

    schwarz: SchwarzPair
    a2: complex
    a3: complex


@dataclass(frozen=True)
class OracleResult:
    quantity: Quantity
    params: ClassParams
    mode: str
    sup_value: float
    witness: Witness | None
    n_samples: int               # points actually evaluated (random + injected + refined)
    n_infeasible: int
    seed: int
    closed_form_bound: float
    verdict: str                 # WITHIN_BOUND | VIOLATION | SKIPPED


@dataclass(frozen=True)
class MemberSolution:
    """Outcome of solving the coefficient relations for one (c2, d2)."""

    status: str                  # "ok" | "infeasible" | "singular" | "free"
    a2: complex | None = None
    a3: complex | None = None
    c1: complex | None = None


@dataclass(frozen=True)
class _Derived:
    """Parameter combinations shared by every kernel at one point."""

    t: float
    u1: float
    u2: float
    u1sq: float
    lin: float
    a: float
    d_signed: float
    singular: bool
    prefactor: float             # d / (2 t^2); meaningless when singular
    two_f: float
    a2_cap: float                # |a2| cap enforced by |c1| <= 1

    @classmethod
    def of(cls, p: ClassParams) -> "_Derived":
        t = p.t
        u1 = cheb_u(1, t)
        a, _, d = theorem_denominator(p)
        return cls(
            t=t,
            u1=u1,
            u2=cheb_u(2, t),
            u1sq=u1 * u1,
            lin=p.op_linear_factor,
            a=a,
            d_signed=d,
            singular=is_singular_denom(d, a),
            prefactor=d / (2.0 * t * t),
            two_f=2.0 * p.fs_flat_denom,
            a2_cap=u1 / p.op_linear_factor,
        )


def solve_member_coeffs(
    c2: complex,
    d2: complex,
    sign: int,
    p: ClassParams,
    mode: str = PROOF_SET,
    a2: complex | None = None,
) -> MemberSolution:
    """Solve the degree-2 relations for (a2, a3, c1) given (c2, d2).

    The summed relation gives a2^2 = u1 (c2 + d2) / prefactor; ``sign``
    picks the square root (both roots produce the same |a2|, |a3| and
    |a3 - eta a2^2|).  When the prefactor vanishes the route degenerates:
    status "singular" if c2 + d2 != 0 (no solution this way), otherwise
    a2 is genuinely free — pass it explicitly or receive status "free".
    In full-system mode solutions with |c1| > 1 are "infeasible".
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if mode not in (PROOF_SET, FULL_SYSTEM):
        raise ValueError(f"unknown mode {mode!r}")
    c2, d2 = complex(c2), complex(d2)
    for name, c in (("c2", c2), ("d2", d2)):
        if abs(c) > 1.0 + ADMISSIBLE_TOL:
            raise ValueError(f"{name} must lie in the closed unit disk, got |{name}| = {abs(c):g}")
    der = _Derived.of(p)
    if der.singular:
        if abs(c2 + d2) > 1e-12:
            return MemberSolution("singular")
        if a2 is None:
            return MemberSolution("free")
        a2v = complex(a2)
    else:
        a2sq = der.u1 * (c2 + d2) / der.prefactor
        a2v = sign * cmath.sqrt(a2sq)
    c1 = der.lin * a2v / der.u1
    if mode == FULL_SYSTEM and abs(c1) > 1.0 + ADMISSIBLE_TOL:
        return MemberSolution("infeasible")
    a3 = a2v * a2v + (der.u1 * (c2 - d2)) / der.two_f
    return MemberSolution("ok", a2v, a3, c1)


# ---------------------------------------------------------------------------
# sampling engine


def _closed_form_bound(quantity: Quantity, p: ClassParams) -> float:
    if quantity.kind == "a2":
        return bound_a2(p)
    if quantity.kind == "a3":
        return bound_a3(p)
    return fekete_szego_bound(p, quantity.eta, CORRECTED).bound


def _build_case(quantity: Quantity, mode: str, der: _Derived):
    """Columns (name, disk radius), vectorized kernel, and witness builder.

    kernel(cols) -> (values, feasible); every column array is complex and
    already clamped to its disk.  Returns None when the point carries no
    finite constraint for the quantity (unbounded; handled by the caller).
    """
    u1, two_f, lin = der.u1, der.two_f, der.lin

    def a3_of(a2sq, c2, d2):
        return a2sq + (u1 * (c2 - d2)) / two_f

    if mode == PROOF_SET:
        if quantity.kind == "a2":
            if der.singular:
                return None
            columns = (("c2", 1.0), ("d2", 1.0))

            def kernel(cols):
                a2sq = u1 * (cols["c2"] + cols["d2"]) / der.prefactor
                return np.sqrt(np.abs(a2sq)), np.ones(a2sq.shape, dtype=bool)

            def witness(pt):
                a2sq = u1 * (pt["c2"] + pt["d2"]) / der.prefactor
                a2 = cmath.sqrt(a2sq)
                c1 = lin * a2 / u1
                return Witness(
                    SchwarzPair.from_coeffs(c1, pt["c2"], -c1, pt["d2"]),
                    a2,
                    a3_of(a2sq, pt["c2"], pt["d2"]),
                )

            return columns, kernel, witness

        if quantity.kind == "a3":
            # a2^2 is bounded through the linear relations (|c1|, |d1| <= 1),
            # not through the summed quadratic one, so the search stays
            # finite even on singular points
            columns = (("c1", 1.0), ("d1", 1.0), ("c2", 1.0), ("d2", 1.0))
            two_a = 2.0 * der.a

            def kernel(cols):
                c1, d1 = cols["c1"], cols["d1"]
                a2sq = der.u1sq * (c1 * c1 + d1 * d1) / two_a
                vals = np.abs(a3_of(a2sq, cols["c2"], cols["d2"]))
                return vals, np.ones(vals.shape, dtype=bool)

            def witness(pt):
                a2sq = der.u1sq * (pt["c1"] ** 2 + pt["d1"] ** 2) / two_a
                return Witness(
                    SchwarzPair.from_coeffs(pt["c1"], pt["c2"], pt["d1"], pt["d2"]),
                    cmath.sqrt(a2sq),
                    a3_of(a2sq, pt["c2"], pt["d2"]),
                )

            return columns, kernel, witness

        # quantity "fs"
        eta = quantity.eta
        if der.singular and eta != 1.0:
            return None
        h = 0.0 if eta == 1.0 else 2.0 * der.t * der.t * (1.0 - eta) / der.d_signed
        columns = (("c2", 1.0), ("d2", 1.0))

        def kernel(cols):
            c2, d2 = cols["c2"], cols["d2"]
            vals = np.abs((u1 * (c2 - d2)) / two_f + (u1 * h) * (c2 + d2))
            return vals, np.ones(vals.shape, dtype=bool)

        def witness(pt):
            c2, d2 = pt["c2"], pt["d2"]
            if der.singular:
                # consistent only on the c2 + d2 = 0 slice, where the
                # maximum lives; a2 is pinned to 0 there
                return Witness(
                    SchwarzPair.from_coeffs(0.0, c2, 0.0, d2),
                    0j,
                    a3_of(0j, c2, d2),
                )
            a2sq = u1 * (c2 + d2) / der.prefactor
            a2 = cmath.sqrt(a2sq)
            c1 = lin * a2 / u1
            return Witness(
                SchwarzPair.from_coeffs(c1, c2, -c1, d2), a2, a3_of(a2sq, c2, d2)
            )

        return columns, kernel, witness

    # FULL_SYSTEM
    eta = quantity.eta

    def value_of(a2sq, c2, d2):
        if quantity.kind == "a2":
            return np.sqrt(np.abs(a2sq))
        if quantity.kind == "a3":
            return np.abs(a3_of(a2sq, c2, d2))
        return np.abs((1.0 - eta) * a2sq + (u1 * (c2 - d2)) / two_f)

    if der.singular:
        # the summed relation degenerates to c2 + d2 = 0 with a2 free on
        # |a2| <= cap; sweep (c2, a2) directly
        columns = (("c2", 1.0), ("a2", der.a2_cap))

        def kernel(cols):
            c2, a2 = cols["c2"], cols["a2"]
            vals = value_of(a2 * a2, c2, -c2)
            return vals, np.ones(vals.shape, dtype=bool)

        def witness(pt):
            c2, a2 = pt["c2"], pt["a2"]
            c1 = lin * a2 / u1
            return Witness(
                SchwarzPair.from_coeffs(c1, c2, -c1, -c2), a2, a3_of(a2 * a2, c2, -c2)
            )

        return columns, kernel, witness

    columns = (("c2", 1.0), ("d2", 1.0))

    def kernel(cols):
        c2, d2 = cols["c2"], cols["d2"]
        a2sq = u1 * (c2 + d2) / der.prefactor
        feas = der.a * np.abs(a2sq) <= der.u1sq
        return value_of(a2sq, c2, d2), feas

    def witness(pt):
        c2, d2 = pt["c2"], pt["d2"]
        a2sq = u1 * (c2 + d2) / der.prefactor
        a2 = cmath.sqrt(a2sq)
        c1 = lin * a2 / u1
        return Witness(SchwarzPair.from_coeffs(c1, c2, -c1, d2), a2, a3_of(a2sq, c2, d2))

    return columns, kernel, witness


def _disk_samples(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    r = np.sqrt(rng.random(n)) * radius
    theta = rng.random(n) * (2.0 * math.pi)
    return r * np.exp(1j * theta)


def _extreme_product(columns) -> dict[str, np.ndarray]:
    sets = [np.array([0.0, r, -r, 1j * r, -1j * r], dtype=complex) for _, r in columns]
    mesh = np.meshgrid(*sets, indexing="ij")
    return {name: grid.ravel() for (name, _), grid in zip(columns, mesh)}


def _search(columns, kernel, witness_fn, rng, cfg: OracleConfig):
    extremes = _extreme_product(columns)
    random_cols = {name: _disk_samples(rng, cfg.n_samples, r) for name, r in columns}
    cols = {
        name: np.concatenate([extremes[name], random_cols[name]])
        for name, _ in columns
    }
    vals, feas = kernel(cols)
    n_eval = int(vals.size)
    n_infeasible = int(np.count_nonzero(~feas))
    masked = np.where(feas, vals, -np.inf)
    idx = int(np.argmax(masked))
    sup = float(masked[idx])
    best = {name: complex(cols[name][idx]) for name, _ in columns}
    if cfg.grid_refine:
        for frac in _REFINE_FRACTIONS:
            pert = {}
            for name, radius in columns:
                step = (
                    rng.uniform(-1.0, 1.0, _REFINE_BATCH)
                    + 1j * rng.uniform(-1.0, 1.0, _REFINE_BATCH)
                ) * (frac * radius)
                cand = best[name] + step
                mag = np.abs(cand)
                scale = np.where(mag > radius, radius / np.where(mag == 0.0, 1.0, mag), 1.0)
                pert[name] = cand * scale
            v, f = kernel(pert)
            n_eval += int(v.size)
            n_infeasible += int(np.count_nonzero(~f))
            vm = np.where(f, v, -np.inf)
            j = int(np.argmax(vm))
            if vm[j] > sup:
                sup = float(vm[j])
                best = {name: complex(pert[name][j]) for name, _ in columns}
    return sup, witness_fn(best), n_eval, n_infeasible


def empirical_sup(
    quantity: Quantity, p: ClassParams, cfg: OracleConfig = OracleConfig()
) -> OracleResult:
    """Empirical supremum of one quantity at one parameter point.

    Deterministic given cfg.seed.  Verdict: within-bound iff the supremum
    stays under the closed-form bound plus 1e-9; points whose closed form
    is unbounded are verdict "skipped" (nothing to violate).
    """
    if cfg.mode not in (PROOF_SET, FULL_SYSTEM):
        raise ValueError(f"unknown mode {cfg.mode!r}")
    if cfg.n_samples < 1:
        raise ValueError(f"n_samples must be positive, got {cfg.n_samples}")
    der = _Derived.of(p)
    closed = _closed_form_bound(quantity, p)
    case = _build_case(quantity, cfg.mode, der)
    if case is None:
        # no finite constraint at this point: |a2| (or the sloped branch)
        # is genuinely unbounded over the relaxed set
        return OracleResult(
            quantity=quantity,
            params=p,
            mode=cfg.mode,
            sup_value=math.inf,
            witness=None,
            n_samples=0,
            n_infeasible=0,
            seed=cfg.seed,
            closed_form_bound=closed,
            verdict=SKIPPED,
        )
    columns, kernel, witness_fn = case
    rng = np.random.default_rng(cfg.seed)
    sup, wit, n_eval, n_infeasible = _search(columns, kernel, witness_fn, rng, cfg)
    if math.isinf(closed):
        verdict = SKIPPED
    elif sup <= closed + VERDICT_TOL:
        verdict = WITHIN_BOUND
    else:
        verdict = VIOLATION
    return OracleResult(
        quantity=quantity,
        params=p,
        mode=cfg.mode,
        sup_value=sup,
        witness=wit,
        n_samples=n_eval,
        n_infeasible=n_infeasible,
        seed=cfg.seed,
        closed_form_bound=closed,
        verdict=verdict,
    )


def sweep_verify(
    p_grid: list[ClassParams], eta_list: list[float], cfg: OracleConfig
) -> list[OracleResult]:
    """empirical_sup for every (grid point, quantity) combination.

    Quantities are |a2|, |a3|, then one Fekete-Szego entry per eta (an
    empty eta list means coefficient rows only).  Row order follows the
    grid, so results are reproducible from (grid, cfg.seed).
    """
    if not p_grid:
        raise ValueError("empty parameter grid")
    quantities = [A2, A3] + [fs_quantity(e) for e in eta_list]
    return [empirical_sup(q, p, cfg) for p in p_grid for q in quantities]


def violations(results: list[OracleResult]) -> list[OracleResult]:
    return [r for r in results if r.verdict == VIOLATION]


def all_within(results: list[OracleResult]) -> bool:
    """True when no result is a violation (skipped rows are not failures)."""
    return not violations(results)
