"""Nef and pseudoeffective threshold machinery.

Holds the candidate-invariant tuple for a pair (base manifold, rank-two
bundle) together with the exact consistency checks that tie the two
thresholds tau and rho to the discriminant, and the closed-form conic-case
formulas for the invariants of the rank-three direct image bundle.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Tuple, Union

from .chow import RingCtx, intersection_degree
from .exact import QuadNum, cos_sq_pi_over, is_negative_real, quad, quad_pow

Rat = Fraction
RatLike = Union[Fraction, int]

KINDS = ("P", "D", "C")

# cos^(n-1)(pi/(n+1)) for the three dimensions where the half-plane
# argument condition admits solutions; rational in each case.
_COS_POW = {2: Fraction(1, 2), 3: Fraction(1, 2), 5: Fraction(9, 16)}


class InvariantError(ValueError):
    """A candidate tuple violates one of the structural constraints."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


def check_rho_tau(n: int, tau: RatLike, rho: RatLike, delta: RatLike) -> bool:
    """True iff (rho + sqrt(delta)) * (tau + sqrt(delta))^n is a strictly
    negative real number, i.e. the two cone thresholds are compatible."""
    tau, rho, delta = Fraction(tau), Fraction(rho), Fraction(delta)
    if delta >= 0:
        raise ValueError("delta must be negative")
    if tau <= 0:
        raise ValueError("tau must be positive")
    z = quad(rho, 1, delta) * quad_pow(quad(tau, 1, delta), n)
    return is_negative_real(z)


def solve_nu_prime(n: int, tau: RatLike, delta: RatLike,
                   mu: int) -> Optional[int]:
    """Solve for the second-contraction threshold numerator.

    Writing (tau + sqrt(delta))^k = a_k + b_k*sqrt(delta), returns
    nu' = 2*b_n / (mu*b_{n+1}) when that is a positive integer and the
    thresholds tau, rho = tau - 2/(mu*nu') pass check_rho_tau; None
    otherwise.
    """
    tau, delta = Fraction(tau), Fraction(delta)
    if delta >= 0 or tau <= 0:
        raise ValueError("need delta < 0 and tau > 0")
    z = quad(tau, 1, delta)
    b_n = quad_pow(z, n).im_coeff
    b_n1 = quad_pow(z, n + 1).im_coeff
    if b_n1 == 0:
        return None
    ratio = 2 * b_n / (mu * b_n1)
    if ratio.denominator != 1 or ratio <= 0:
        return None
    nu_prime = int(ratio)
    rho = tau - Fraction(2, mu * nu_prime)
    if not check_rho_tau(n, tau, rho, delta):
        return None
    return nu_prime


def c1_prime(n: int, tau: RatLike, tau_prime: RatLike) -> Fraction:
    """First Chern class of the rank-three bundle in the conic case:
    (8/tau)*cos^2(pi/(n+1)) - 4*tau'."""
    tau, tau_prime = Fraction(tau), Fraction(tau_prime)
    if tau == 0:
        raise ValueError("tau must be nonzero")
    cos_sq = cos_sq_pi_over(n + 1)
    if cos_sq is None:
        raise ValueError(f"cos^2(pi/{n + 1}) is irrational; n must be 2, 3 or 5")
    return 8 / tau * cos_sq - 4 * tau_prime


def base_degree_ratio(n: int, tau: RatLike) -> Fraction:
    """Factor carrying deg(X) to deg(X') in the conic case:
    tau^(n-1) / (2^n * cos^(n-1)(pi/(n+1)))."""
    tau = Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    if n not in _COS_POW:
        raise ValueError("n must be 2, 3 or 5")
    return tau ** (n - 1) / (2 ** n * _COS_POW[n])


def y_dot_f(c1p: RatLike, tau_prime: RatLike, mu: int) -> Fraction:
    """Intersection of the hypersurface class of Y in the ambient
    projective bundle with a fiber of the first projection."""
    return -(Fraction(c1p) * mu + 2 * Fraction(tau_prime))


def pushforward_R(nu: int, nu_prime: int, c2_push_coeff: RatLike) -> Fraction:
    """Coefficient of the ample generator in the pushforward of the conic
    degeneracy divisor to the base:
    (nu'+2)(nu*nu'-1) + 2(nu+1) - c2_push_coeff."""
    first = (nu_prime + 2) * (nu * nu_prime - 1) + 2 * (nu + 1)
    return Fraction(first) - Fraction(c2_push_coeff)


def adjunction_check(ctx_prime: RingCtx, c1p: RatLike,
                     deg_x_prime: RatLike) -> bool:
    """Check K'^2 * H'^(n-1) = c1' * deg(X') in a (-K', H') context."""
    n = ctx_prime.n
    g1, g2 = ctx_prime.gen1, ctx_prime.gen2
    val = intersection_degree(g1 * g1 * g2 ** (n - 1))  # (-K')^2 = K'^2
    return val == Fraction(c1p) * Fraction(deg_x_prime)


def kprime_degree_formulas(n: int, tau: RatLike, nu_prime: int, mu: int,
                           minus_khn: RatLike) -> Tuple[Fraction, Fraction]:
    """Closed forms for (-K'*H'^n, K'^2*H'^(n-1)) given -K*H^n."""
    tau = Fraction(tau)
    minus_khn = Fraction(minus_khn)
    if n not in _COS_POW:
        raise ValueError("n must be 2, 3 or 5")
    cos_pow = _COS_POW[n]
    cos_sq = cos_sq_pi_over(n + 1)
    assert cos_sq is not None
    first = (mu * tau) ** (n - 1) / (2 ** n * cos_pow) * minus_khn
    second = (mu ** (n - 3) * tau ** (n - 2)) / (2 ** (n - 1) * cos_pow) \
        * (2 * cos_sq - nu_prime * mu * tau) * minus_khn
    return first, second


@dataclass(frozen=True)
class InvariantTuple:
    """Full candidate row for a pair (X, E): discrete invariants of the
    base, the bundle, and the second contraction, plus a status."""

    n: int
    kind: str
    lam: int
    mu: int
    mu_prime: int
    nu: Fraction
    nu_prime: Fraction
    tau: Fraction
    tau_prime: Fraction
    rho: Fraction
    i: int
    i_prime: int
    c1: int
    delta: Fraction
    c2_over_d: Fraction
    deg_x: Optional[Fraction] = None
    deg_x_prime: Optional[Fraction] = None
    c1_prime: Optional[Fraction] = None
    y_dot_f: Optional[Fraction] = None
    d: Optional[int] = None
    d_prime: Optional[int] = None
    b: Optional[int] = None
    name_x: Optional[str] = None
    name_x_prime: Optional[str] = None
    label: Optional[str] = None
    status: str = "candidate"
    reason: Optional[str] = None

    def __post_init__(self):
        for f in ("nu", "nu_prime", "tau", "tau_prime", "rho", "delta",
                  "c2_over_d"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))
        for f in ("deg_x", "deg_x_prime", "c1_prime", "y_dot_f"):
            v = getattr(self, f)
            if v is not None:
                object.__setattr__(self, f, Fraction(v))
        self._validate()

    def _validate(self) -> None:
        if self.kind not in KINDS:
            raise InvariantError("kind", f"unknown kind {self.kind!r}")
        if (self.kind == "P") != (self.lam == 2):
            raise InvariantError("lambda_kind", "lambda must be 2 exactly for kind P")
        if self.kind != "P" and self.lam != 1:
            raise InvariantError("lambda_kind", "lambda must be 1 for kinds D and C")
        if self.mu != self.mu_prime:
            raise InvariantError("mu_mismatch", "mu and mu' must be equal")
        if self.kind in ("D", "C") and self.mu != 1:
            raise InvariantError("mu_one", "mu must be 1 for kinds D and C")
        if self.tau != Fraction(self.nu, self.mu):
            raise InvariantError("tau_def", "tau must equal nu/mu")
        if self.tau_prime != Fraction(self.nu_prime, self.mu_prime):
            raise InvariantError("tau_def", "tau' must equal nu'/mu'")
        if self.i * self.mu - self.nu != self.lam:
            raise InvariantError("index_relation", "i*mu - nu must equal lambda")
        if self.i_prime * self.mu_prime - self.nu_prime != 2:
            raise InvariantError("index_relation", "i'*mu' - nu' must equal 2")
        if self.delta >= 0:
            raise InvariantError("delta_sign", "discriminant must be negative")
        if self.c2_over_d != Fraction(self.c1 ** 2 - self.delta, 4):
            raise InvariantError("c2_discriminant",
                                 "c2/d must equal (c1^2 - delta)/4")
        if self.kind != "P":
            if (self.c1 - self.i) % 2 == 0:
                raise InvariantError("parity", "c1 - i must be odd")
            if self.mu % 2 == 0:
                raise InvariantError("parity", "mu must be odd")
        if self.kind in ("P", "C"):
            if self.rho != self.tau:
                raise InvariantError("rho_value", "rho must equal tau for kinds P, C")
        else:
            expected = Fraction(self.nu * self.nu_prime - 2,
                                self.mu * self.nu_prime)
            if self.rho != expected:
                raise InvariantError("rho_value",
                                     "rho must equal (nu*nu'-2)/(mu*nu') for kind D")
        if self.d is not None and (self.c2_over_d * self.d).denominator != 1:
            raise InvariantError("c2_integrality", "c2 = (c2/d)*d must be an integer")
        if not check_rho_tau(self.n, self.tau, self.rho, self.delta):
            raise InvariantError("rhotau", "thresholds fail the argument condition")

    @property
    def c2(self) -> Optional[Fraction]:
        if self.d is None:
            return None
        return self.c2_over_d * self.d

    def with_status(self, status: str, reason: Optional[str] = None,
                    **kwargs) -> "InvariantTuple":
        return replace(self, status=status, reason=reason, **kwargs)


CSV_COLUMNS = (
    "n", "kind", "tau", "i", "d", "deg_X", "tau_prime", "i_prime",
    "deg_X_prime", "c1", "Delta", "c2_over_d", "name_X", "name_X_prime",
    "c1_prime", "y_dot_f", "status", "reason",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def tuple_to_row(t: InvariantTuple) -> Tuple[str, ...]:
    return tuple(_cell(v) for v in (
        t.n, t.kind, t.tau, t.i, t.d, t.deg_x, t.tau_prime, t.i_prime,
        t.deg_x_prime, t.c1, t.delta, t.c2_over_d, t.name_x, t.name_x_prime,
        t.c1_prime, t.y_dot_f, t.status, t.reason,
    ))


def tuples_to_csv(tuples, header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(CSV_COLUMNS)
    for t in tuples:
        writer.writerow(tuple_to_row(t))
    return buf.getvalue()
