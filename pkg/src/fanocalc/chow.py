"""Truncated two-generator intersection ring with one quadratic relation.

The ring has generators G1 (fiber-positive) and G2 (pulled back), subject
to G1^2 = rel_a*G1*G2 + rel_b*G2^2, with G2^(n+1) = 0 and everything of
total degree above n+1 truncated.  A degree functional sends G1*G2^n to
degree_s.  Elements are kept in normal form: G1-degree at most one, zero
coefficients dropped.

Basis changes between the (-K, H) and (-K', H') divisor bases (matrix A)
and between the two codimension-two integral bases (matrix B) are handled
as exact 2x2 rational matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

Rat = Fraction
RatLike = Union[Fraction, int]
Monomial = Tuple[int, int]  # (G1 exponent, G2 exponent)
Coeffs = Dict[Monomial, Fraction]


class ContextMismatchError(ValueError):
    """Elements of different ring contexts were combined."""


@dataclass(frozen=True)
class RingCtx:
    n: int
    gen_names: Tuple[str, str]
    rel_a: Fraction
    rel_b: Fraction
    degree_s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rel_a", Fraction(self.rel_a))
        object.__setattr__(self, "rel_b", Fraction(self.rel_b))
        object.__setattr__(self, "degree_s", Fraction(self.degree_s))
        object.__setattr__(self, "gen_names", tuple(self.gen_names))
        if self.n < 2:
            raise ValueError("base dimension n must be at least 2")
        if self.degree_s <= 0:
            raise ValueError("degree_s must be positive")

    @property
    def gen1(self) -> "RingElem":
        return RingElem(self, {(1, 0): Fraction(1)})

    @property
    def gen2(self) -> "RingElem":
        return RingElem(self, {(0, 1): Fraction(1)})

    def element(self, coeffs: Coeffs) -> "RingElem":
        return reduce(coeffs, self)

    def zero(self) -> "RingElem":
        return RingElem(self, {})

    def one(self) -> "RingElem":
        return RingElem(self, {(0, 0): Fraction(1)})

    def scalar(self, s: RatLike) -> "RingElem":
        s = Fraction(s)
        return RingElem(self, {(0, 0): s} if s else {})


def reduce(raw: Union[Coeffs, "RingElem"], ctx: RingCtx) -> "RingElem":
    """Normal form of a formal polynomial in G1, G2.

    Substitutes G1^2 -> rel_a*G1*G2 + rel_b*G2^2, kills G2^(n+1) and all
    monomials of total degree above n+1.  Idempotent on normal forms.
    """
    if isinstance(raw, RingElem):
        if raw.ctx is not ctx and raw.ctx != ctx:
            raise ContextMismatchError("element belongs to a different context")
        raw = raw.coeffs
    top = ctx.n + 1
    out: Coeffs = {}
    work = [((i, j), Fraction(c)) for (i, j), c in raw.items() if c]
    while work:
        (i, j), c = work.pop()
        if i + j > top or j > ctx.n:
            continue
        if i >= 2:
            work.append(((i - 1, j + 1), c * ctx.rel_a))
            work.append(((i - 2, j + 2), c * ctx.rel_b))
            continue
        out[(i, j)] = out.get((i, j), Fraction(0)) + c
    return RingElem(ctx, {m: c for m, c in out.items() if c})


@dataclass(frozen=True)
class RingElem:
    ctx: RingCtx
    coeffs: Coeffs = field(default_factory=dict)

    def _check(self, other: "RingElem") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError("elements belong to different contexts")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return RingElem(self.ctx, {m: c for m, c in out.items() if c})

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self + (-other)

    def __neg__(self) -> "RingElem":
        return RingElem(self.ctx, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other: Union["RingElem", RatLike]) -> "RingElem":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        prod: Coeffs = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                m = (i1 + i2, j1 + j2)
                prod[m] = prod.get(m, Fraction(0)) + c1 * c2
        return reduce(prod, self.ctx)

    def __rmul__(self, other: RatLike) -> "RingElem":
        return self.scale(other)

    def scale(self, s: RatLike) -> "RingElem":
        s = Fraction(s)
        if not s:
            return RingElem(self.ctx, {})
        return RingElem(self.ctx, {m: c * s for m, c in self.coeffs.items()})

    def __pow__(self, k: int) -> "RingElem":
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        result = self.ctx.one()
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_homogeneous(self, degree: int) -> bool:
        return all(i + j == degree for i, j in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        g1, g2 = self.ctx.gen_names
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs.items()):
            mono = "*".join([g1] * i + [g2] * j) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def intersection_degree(e: RingElem) -> Fraction:
    """Degree of a top-dimensional cycle class.

    The functional sends G1*G2^n to degree_s and G2^(n+1) to zero.
    """
    top = e.ctx.n + 1
    if not e.is_homogeneous(top):
        raise ValueError("intersection_degree needs a class of top degree")
    return e.coeffs.get((1, e.ctx.n), Fraction(0)) * e.ctx.degree_s


@dataclass(frozen=True)
class BasisMap:
    """Exact 2x2 rational change of basis."""

    entries: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    label: str = ""

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.det() == 0:
            raise ValueError("basis map must be invertible")

    def det(self) -> Fraction:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def inverse(self, label: str = "") -> "BasisMap":
        (a, b), (c, d) = self.entries
        det = self.det()
        return BasisMap(((d / det, -b / det), (-c / det, a / det)), label)

    def __matmul__(self, other: "BasisMap") -> "BasisMap":
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return BasisMap(((a * e + b * g, a * f + b * h),
                         (c * e + d * g, c * f + d * h)))

    def is_identity(self) -> bool:
        return self.entries == ((Fraction(1), Fraction(0)),
                                (Fraction(0), Fraction(1)))


def basis_map_A(nu: int, nu_prime: int, mu: int, mu_prime: int,
                lam: int) -> Tuple[BasisMap, BasisMap]:
    """Matrix A expressing (-K, H) in the (-K', H') basis, and its inverse.

    Row convention: (-K, H)^T = A * (-K', H')^T.
    """
    if lam not in (1, 2):
        raise ValueError("lambda must be 1 or 2")
    if mu <= 0 or mu_prime <= 0:
        raise ValueError("mu and mu' must be positive")
    a = BasisMap(
        ((Fraction(-nu, lam), Fraction(2 * lam - nu * nu_prime, lam * mu_prime)),
         (Fraction(mu, lam), Fraction(mu * nu_prime, mu_prime * lam))),
        label="A",
    )
    if lam == 1 and abs(a.det()) != 2:
        raise ValueError(f"det(A) must be +-2 for lambda=1, got {a.det()}")
    return a, a.inverse(label="A_inverse")


def convert_element(e: RingElem, m: BasisMap, dst: RingCtx) -> RingElem:
    """Rewrite e in the generators of dst, where the generators of e's
    context equal m applied to the generators of dst."""
    (a, b), (c, d) = m.entries
    g1 = dst.element({(1, 0): a, (0, 1): b})
    g2 = dst.element({(1, 0): c, (0, 1): d})
    out = dst.zero()
    for (i, j), coeff in e.coeffs.items():
        out = out + (g1 ** i) * (g2 ** j) * coeff
    return out


def derived_context(ctx: RingCtx, m: BasisMap,
                    gen_names: Optional[Tuple[str, str]] = None) -> RingCtx:
    """Context on the generators (G1', G2') defined by
    (G1, G2)^T = m * (G1', G2')^T, with relation and degree functional
    recomputed so that all intersection numbers agree with ctx."""
    minv = m.inverse()
    (a, b), (c, d) = minv.entries
    g1p = ctx.element({(1, 0): a, (0, 1): b})
    g2p = ctx.element({(1, 0): c, (0, 1): d})

    def in_deg2_basis(e: RingElem) -> Tuple[Fraction, Fraction]:
        extra = set(e.coeffs) - {(1, 1), (0, 2)}
        if extra:
            raise ValueError("degenerate map: degree-2 class not in normal span")
        return e.coeffs.get((1, 1), Fraction(0)), e.coeffs.get((0, 2), Fraction(0))

    p11, p02 = in_deg2_basis(g1p * g1p)
    q11, q02 = in_deg2_basis(g1p * g2p)
    r11, r02 = in_deg2_basis(g2p * g2p)
    det = q11 * r02 - q02 * r11
    if det == 0:
        raise ValueError("degenerate map: cannot solve for the new relation")
    rel_a = (p11 * r02 - p02 * r11) / det
    rel_b = (q11 * p02 - q02 * p11) / det

    degree_s = intersection_degree(g1p * g2p ** ctx.n)
    if degree_s <= 0:
        raise ValueError("degenerate map: new degree functional not positive")
    if intersection_degree(g2p ** (ctx.n + 1)) != 0:
        raise ValueError("degenerate map: new G2^(n+1) does not vanish")
    if gen_names is None:
        gen_names = (ctx.gen_names[0] + "~", ctx.gen_names[1] + "~")
    return RingCtx(ctx.n, gen_names, rel_a, rel_b, degree_s)


@dataclass(frozen=True)
class BReport:
    integral: bool
    det: Fraction
    unimodular: bool
    identity_lhs: Fraction
    identity_rhs: Fraction
    identity_ok: bool

    @property
    def ok(self) -> bool:
        return self.integral and self.unimodular and self.identity_ok


def basis_map_B(nu: int, nu_prime: int, mu: int, c1: int, delta: RatLike,
                d: int, b: int, d_prime: int) -> Tuple[BasisMap, BReport]:
    """Matrix B between the {LH, H^2/d} and {-EH'/b, H'^2/d'} integral
    bases, with its integrality / unimodularity report.

    Violations are reported, never raised: the report carries the
    integral-entries flag, det(B), and the identity
    d*(nu^2 - delta*mu^2) = +-4*b*d'.
    """
    if mu <= 0 or b <= 0 or d <= 0 or d_prime <= 0:
        raise ValueError("mu, b, d, d' must be positive")
    delta = Fraction(delta)
    b11 = Fraction(nu * nu_prime - 1, b)
    b12 = Fraction(d, 4 * b * mu) * (
        nu_prime * mu * mu * delta + 2 * c1 * (1 - nu * nu_prime) * mu
        + nu * (nu * nu_prime - 2)
    )
    b21 = Fraction(nu * mu, d_prime)
    b22 = Fraction(d, 4 * d_prime) * (delta * mu * mu - 2 * c1 * nu * mu + nu * nu)
    bmat = BasisMap(((b11, b12), (b21, b22)), label="B")
    det = bmat.det()
    lhs = d * (Fraction(nu * nu) - delta * mu * mu)
    rhs = Fraction(4 * b * d_prime)
    report = BReport(
        integral=all(x.denominator == 1 for x in (b11, b12, b21, b22)),
        det=det,
        unimodular=abs(det) == 1,
        identity_lhs=lhs,
        identity_rhs=rhs,
        identity_ok=lhs == rhs or lhs == -rhs,
    )
    return bmat, report


# -- context serialization ---------------------------------------------------

_CTX_FIELDS = ("n", "gen_names", "rel_a", "rel_b", "degree_s")


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps_context(ctx: RingCtx) -> str:
    lines = [
        f"n={ctx.n}",
        f"gen_names={ctx.gen_names[0]},{ctx.gen_names[1]}",
        f"rel_a={_frac_str(ctx.rel_a)}",
        f"rel_b={_frac_str(ctx.rel_b)}",
        f"degree_s={_frac_str(ctx.degree_s)}",
    ]
    return "\n".join(lines) + "\n"


def loads_context(text: str) -> RingCtx:
    fields = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'name=value'")
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    missing = [f for f in _CTX_FIELDS if f not in fields]
    if missing:
        raise ValueError(f"missing context fields: {', '.join(missing)}")
    names = tuple(fields["gen_names"].split(","))
    if len(names) != 2:
        raise ValueError("gen_names must hold exactly two labels")
    return RingCtx(
        n=int(fields["n"]),
        gen_names=names,  # type: ignore[arg-type]
        rel_a=Fraction(fields["rel_a"]),
        rel_b=Fraction(fields["rel_b"]),
        degree_s=Fraction(fields["degree_s"]),
    )


def load_context(path) -> RingCtx:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_context(fh.read())


def save_context(ctx: RingCtx, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_context(ctx))
