"""The defining differential operator of the function class and its
degree-by-degree coefficient structure.

For a normalized series f(z) = z + a2 z^2 + a3 z^3 + ... the operator is

    L[f](z) = (1 - lam) (f/z)^mu + lam f'(z) (f/z)^(mu-1) + xi delta z f''(z),

with xi = (2 lam + mu) / (2 lam + 1) recomputed from (lam, mu), never
stored.  Membership of f in the class requires L[f] - 1 (and the same
expression for the inverse series) to subordinate a fixed Chebyshev
generating function, which pins the low-degree coefficients of L[f] to
polynomial expressions in a2, a3; those expressions live here so the
bound and oracle layers agree on them by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chebyshev import cheb_u
from .powerseries import NormalizedSeries, TruncatedSeries

# admissibility is a closed-disk condition; the tolerance keeps witnesses
# constructed at |c| = 1 admissible after a float round trip
ADMISSIBLE_TOL = 1e-9


def xi_of(lam: float, mu: float) -> float:
    """xi = (2 lam + mu) / (2 lam + 1)."""
    if not lam >= 1.0:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    if not mu >= 0.0:
        raise ValueError(f"mu must be >= 0, got {mu}")
    return (2.0 * lam + mu) / (2.0 * lam + 1.0)


@dataclass(frozen=True)
class ClassParams:
    """Admissible parameter tuple (lam, mu, delta, t) of the class."""

    lam: float
    mu: float
    delta: float
    t: float

    def __post_init__(self) -> None:
        for name in ("lam", "mu", "delta", "t"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.lam >= 1.0:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if not self.mu >= 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu}")
        if not self.delta >= 0.0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if not 0.5 < self.t < 1.0:
            raise ValueError(f"t must lie in the open interval (1/2, 1), got {self.t}")

    @property
    def xi(self) -> float:
        return xi_of(self.lam, self.mu)

    # Recurring parameter combinations.  Each is named for the role it
    # plays in the coefficient relations, not for any symbol.

    @property
    def op_linear_factor(self) -> float:
        """Multiplies a2 in the degree-1 coefficient of L[f] (and of L[g])."""
        return self.lam + self.mu + 2.0 * self.xi * self.delta

    @property
    def quad_sum_factor(self) -> float:
        """Multiplies a2^2 when the two degree-2 relations are added."""
        return (2.0 * self.lam + self.mu) * (self.mu + 1.0) + 12.0 * self.xi * self.delta

    @property
    def fs_flat_denom(self) -> float:
        """Denominator of the flat Fekete-Szego bound (also scales a3)."""
        return 2.0 * self.lam + self.mu + 6.0 * self.xi * self.delta

    @property
    def fs_printed_denom(self) -> float:
        """The literature's threshold denominator variant (2 xi delta term)."""
        return 2.0 * self.lam + self.mu + 2.0 * self.xi * self.delta


@dataclass(frozen=True)
class SchwarzPair:
    """Leading Schwarz coefficients of the two subordinations.

    (c1, c2) come from the direct function, (d1, d2) from its inverse;
    the coefficient relations force d1 = -c1.  ``admissible`` records
    whether all four lie in the closed unit disk (within tolerance).
    """

    c1: complex
    c2: complex
    d1: complex
    d2: complex
    admissible: bool

    @classmethod
    def from_coeffs(
        cls,
        c1: complex,
        c2: complex,
        d1: complex,
        d2: complex,
        tol: float = ADMISSIBLE_TOL,
    ) -> "SchwarzPair":
        c1, c2, d1, d2 = complex(c1), complex(c2), complex(d1), complex(d2)
        ok = all(abs(c) <= 1.0 + tol for c in (c1, c2, d1, d2))
        return cls(c1, c2, d1, d2, ok)


def apply_operator(f: NormalizedSeries, p: ClassParams) -> TruncatedSeries:
    """L[f] as a truncated series of order f.order - 1 (constant term 1)."""
    if not isinstance(f, NormalizedSeries):
        raise TypeError("apply_operator needs a normalized series (z + a2 z^2 + ...)")
    if f.order < 3:
        raise ValueError(f"operator needs order >= 3 to expose a2 and a3, got {f.order}")
    base = TruncatedSeries(f.coeffs[1:])            # f/z, constant term exactly 1
    fprime = f.differentiate()
    z_fsecond = fprime.differentiate().times_z()    # z f'', order f.order - 1
    return (
        (1.0 - p.lam) * base.pow_real(p.mu)
        + p.lam * fprime.mul(base.pow_real(p.mu - 1.0))
        + (p.xi * p.delta) * z_fsecond
    )


def quad_coeff_direct(p: ClassParams, a2: complex, a3: complex) -> complex:
    """Degree-2 coefficient of L[f] in terms of (a2, a3)."""
    lam, mu, delta = p.lam, p.mu, p.delta
    return (2.0 * lam + mu) * (
        0.5 * (mu - 1.0) * a2 * a2
        + (1.0 + 6.0 * delta / (2.0 * lam + 1.0)) * a3
    )


def quad_coeff_inverse(p: ClassParams, a2: complex, a3: complex) -> complex:
    """Degree-2 coefficient of L[g], g the inverse series, via b2 = -a2,
    b3 = 2 a2^2 - a3."""
    lam, mu, delta = p.lam, p.mu, p.delta
    return (2.0 * lam + mu) * (
        (0.5 * (mu + 3.0) + 12.0 * delta / (2.0 * lam + 1.0)) * a2 * a2
        - (1.0 + 6.0 * delta / (2.0 * lam + 1.0)) * a3
    )


def extract_schwarz(
    op_series: TruncatedSeries, t: float, tol: float = ADMISSIBLE_TOL
) -> tuple[complex, complex]:
    """Invert the subordination triangle: recover (c1, c2) from L[f].

    With s(z) = c1 z + c2 z^2 + ... the subordination forces

        [z^1] L[f] = U1(t) c1,
        [z^2] L[f] = U1(t) c2 + U2(t) c1^2.
    """
    if not 0.5 < t < 1.0:
        raise ValueError(f"t must lie in the open interval (1/2, 1), got {t}")
    if op_series.order < 2:
        raise ValueError(f"need order >= 2 to extract two coefficients, got {op_series.order}")
    if abs(op_series.coeffs[0] - 1.0) > tol:
        raise ValueError(
            f"malformed operator series: constant term {op_series.coeffs[0]!r}, expected 1"
        )
    u1 = cheb_u(1, t)
    u2 = cheb_u(2, t)
    c1 = op_series.coeffs[1] / u1
    c2 = (op_series.coeffs[2] - u2 * c1 * c1) / u1
    return c1, c2


def membership_feasibility(
    a2: complex, a3: complex, p: ClassParams, tol: float = ADMISSIBLE_TOL
) -> SchwarzPair:
    """Necessary order-3 membership condition for coefficients (a2, a3).

    Solves the four coefficient relations for the Schwarz coefficients
    they would require and reports whether all of them fit in the closed
    unit disk.  Necessary only: no claim is made about the full analytic
    subordination beyond degree 3.
    """
    a2, a3 = complex(a2), complex(a3)
    u1 = cheb_u(1, p.t)
    u2 = cheb_u(2, p.t)
    c1 = p.op_linear_factor * a2 / u1
    d1 = -c1
    c2 = (quad_coeff_direct(p, a2, a3) - u2 * c1 * c1) / u1
    d2 = (quad_coeff_inverse(p, a2, a3) - u2 * d1 * d1) / u1
    return SchwarzPair.from_coeffs(c1, c2, d1, d2, tol=tol)
