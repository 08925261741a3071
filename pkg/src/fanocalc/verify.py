"""Named self-checks covering the invariants of every module.

Each check is a pure function returning a CheckResult; run_all executes
them in a fixed order with a fixed random seed, so the verify command is
deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from . import chow, classify, exact, expr, slope

SEED = 20260824

# Conic-case table rows: (n, tau, tau', Delta, c1', Y.f, deg X, deg X').
CONIC_ROWS = (
    (2, 2, 1, Fraction(-12), Fraction(-3), Fraction(1), 1, 1),
    (3, 1, 2, Fraction(-1), Fraction(-4), Fraction(0), 4, 1),
    (3, 2, 1, Fraction(-4), Fraction(-2), Fraction(0), 2, 2),
    (5, 1, 3, Fraction(-1, 3), Fraction(-6), Fraction(0), 36, 2),
    (5, 3, 1, Fraction(-3), Fraction(-2), Fraction(0), 4, 18),
)

# Blow-down-case raw rows: (n, tau, tau', Delta).
BLOWDOWN_ROWS = (
    (2, 2, 1, Fraction(-4)),
    (3, 1, 2, Fraction(-1, 3)),
    (4, 1, 3, Fraction(-1, 3)),
    (4, 3, 1, Fraction(-3)),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _rand_frac(rng: random.Random, span: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def _rand_quad(rng: random.Random, delta: Fraction) -> exact.QuadNum:
    return exact.quad(_rand_frac(rng), _rand_frac(rng), delta)


def _rand_ctx(rng: random.Random) -> chow.RingCtx:
    n = rng.randint(2, 5)
    return chow.RingCtx(n, ("G1", "G2"), _rand_frac(rng), _rand_frac(rng),
                        Fraction(rng.randint(1, 40)))


def _rand_elem(rng: random.Random, ctx: chow.RingCtx) -> chow.RingElem:
    coeffs = {}
    for _ in range(rng.randint(0, 4)):
        coeffs[(rng.randint(0, 2), rng.randint(0, ctx.n))] = _rand_frac(rng)
    return ctx.element(coeffs)


def check_quad_pow_multiplicative(rng: random.Random) -> CheckResult:
    for _ in range(300):
        delta = -Fraction(rng.randint(1, 12), rng.randint(1, 4))
        z = _rand_quad(rng, delta)
        a, b = rng.randint(0, 12), rng.randint(0, 12)
        lhs = exact.quad_pow(z, a + b)
        rhs = exact.quad_pow(z, a) * exact.quad_pow(z, b)
        if lhs != rhs:
            return CheckResult("quad_pow multiplicative", False,
                               f"z={z} a={a} b={b}")
    return CheckResult("quad_pow multiplicative", True)


def check_norm_multiplicative(rng: random.Random) -> CheckResult:
    for _ in range(300):
        delta = -Fraction(rng.randint(1, 12), rng.randint(1, 4))
        z, w = _rand_quad(rng, delta), _rand_quad(rng, delta)
        if (z * w).norm() != z.norm() * w.norm():
            return CheckResult("norm multiplicative", False, f"z={z} w={w}")
    return CheckResult("norm multiplicative", True)


def check_exact_angle(rng: random.Random) -> CheckResult:
    """(tau + sqrt(-tau^2 tan^2(pi/(n+1))))^(n+1) is a negative real."""
    for n in (2, 3, 5):
        tan_sq = exact.tan_sq_pi_over(n + 1)
        for tau in (1, 2, 3):
            delta = -Fraction(tau * tau) * tan_sq
            z = exact.quad_pow(exact.quad(tau, 1, delta), n + 1)
            if not exact.is_negative_real(z):
                return CheckResult("exact angle powers", False,
                                   f"n={n} tau={tau}")
    return CheckResult("exact angle powers", True)


def check_arg_antitone(rng: random.Random) -> CheckResult:
    for _ in range(200):
        delta = -Fraction(rng.randint(1, 12), rng.randint(1, 4))
        z = exact.quad(rng.randint(1, 6), Fraction(rng.randint(1, 6)), delta)
        qs = [q for q in range(2, 9) if exact.arg_less_than(z, q)]
        for q in qs:
            for q2 in range(2, q):
                if not exact.arg_less_than(z, q2):
                    return CheckResult("arg_less_than antitone", False,
                                       f"z={z} q={q} q2={q2}")
    return CheckResult("arg_less_than antitone", True)


def check_reduce_properties(rng: random.Random) -> CheckResult:
    for _ in range(300):
        ctx = _rand_ctx(rng)
        x, y = _rand_elem(rng, ctx), _rand_elem(rng, ctx)
        if chow.reduce(x, ctx) != x:
            return CheckResult("reduce idempotent", False, repr(x))
        s = _rand_frac(rng)
        if chow.reduce({m: c * s for m, c in x.coeffs.items()}, ctx) != x.scale(s):
            return CheckResult("reduce linear", False, repr(x))
        raw = {}
        for (i1, j1), c1 in x.coeffs.items():
            for (i2, j2), c2 in y.coeffs.items():
                m = (i1 + i2, j1 + j2)
                raw[m] = raw.get(m, Fraction(0)) + c1 * c2
        if chow.reduce(raw, ctx) != x * y:
            return CheckResult("reduce multiplicative", False,
                               f"{x!r} * {y!r}")
    return CheckResult("reduce idempotent/linear/multiplicative", True)


def check_chern_wu(rng: random.Random) -> CheckResult:
    """(-2 G1 + c1 G2)^2 reduces to Delta G2^2 with Delta = c1^2 + 4 rel_b
    whenever rel_a = c1 and rel_b = -c2/d."""
    for _ in range(25):
        ctx = _rand_ctx(rng)
        c1 = ctx.rel_a
        delta = c1 * c1 + 4 * ctx.rel_b
        k = ctx.element({(1, 0): Fraction(-2), (0, 1): c1})
        expected = ctx.element({(0, 2): delta})
        if k * k != expected:
            return CheckResult("discriminant identity", False, repr(ctx))
    return CheckResult("discriminant identity", True)


def check_basis_roundtrip(rng: random.Random) -> CheckResult:
    cases = [(1, 4, 1, 1, 1), (1, 2, 1, 1, 1), (2, 1, 1, 1, 1),
             (3, 1, 1, 1, 2), (1, 1, 1, 1, 2)]
    for nu, nup, mu, mup, lam in cases:
        a, ainv = chow.basis_map_A(nu, nup, mu, mup, lam)
        if not (a @ ainv).is_identity():
            return CheckResult("basis roundtrip", False, f"A={a.entries}")
    # Element roundtrip between a context and a derived context, where
    # the conversion is an honest ring isomorphism.
    ctx = chow.RingCtx(5, ("L", "H"), Fraction(-1), Fraction(-1, 3),
                       Fraction(18))
    m = chow.BasisMap(((Fraction(-1), Fraction(-3)),
                       (Fraction(1), Fraction(4))))
    ctx_p = classify.kprime_context_1_4()
    for _ in range(25):
        e = _rand_elem(rng, ctx)
        back = chow.convert_element(
            chow.convert_element(e, m, ctx_p), m.inverse(), ctx)
        if back != e:
            return CheckResult("basis roundtrip", False,
                               f"element roundtrip failed for {e!r}")
    return CheckResult("basis roundtrip", True)


def check_cross_basis_degrees(rng: random.Random) -> CheckResult:
    expected = {(4, 2): Fraction(-110), (3, 3): Fraction(-36),
                (2, 4): Fraction(-10), (1, 5): Fraction(-2)}
    ctx = chow.RingCtx(5, ("L", "H"), Fraction(-1), Fraction(-1, 3),
                       Fraction(18))
    kp = ctx.element({(1, 0): Fraction(4), (0, 1): Fraction(3)})
    hp = ctx.element({(1, 0): Fraction(1), (0, 1): Fraction(1)})
    ctx_p = classify.kprime_context_1_4()
    for (a, b), want in expected.items():
        direct = chow.intersection_degree(kp ** a * hp ** b)
        derived = (-1) ** a * chow.intersection_degree(
            ctx_p.gen1 ** a * ctx_p.gen2 ** b)
        if direct != want or derived != want:
            return CheckResult("cross-basis degrees", False,
                               f"K'^{a}H'^{b}: {direct} / {derived} != {want}")
    return CheckResult("cross-basis degrees", True)


def check_b_matrix(rng: random.Random) -> CheckResult:
    rows = [
        (2, 1, 1, 0, Fraction(-4), 1, 1, 2),
        (1, 2, 1, -1, Fraction(-1, 3), 3, 1, 1),
        (1, 3, 1, -1, Fraction(-1, 3), 3, 1, 1),
        (3, 1, 1, -1, Fraction(-3), 1, 1, 3),
    ]
    for nu, nup, mu, c1, delta, d, b, dp in rows:
        _, report = chow.basis_map_B(nu, nup, mu, c1, delta, d, b, dp)
        if not report.ok:
            return CheckResult("codimension-two basis", False,
                               f"nu={nu} nu'={nup}: {report}")
    _, bad = chow.basis_map_B(2, 1, 1, 0, Fraction(-4), 1, 1, 3)
    if bad.ok:
        return CheckResult("codimension-two basis", False,
                           "perturbed d'=3 not flagged")
    return CheckResult("codimension-two basis", True)


def check_context_roundtrip(rng: random.Random) -> CheckResult:
    for _ in range(20):
        ctx = _rand_ctx(rng)
        if chow.loads_context(chow.dumps_context(ctx)) != ctx:
            return CheckResult("context serialization", False, repr(ctx))
    return CheckResult("context serialization", True)


def check_conic_rows(rng: random.Random) -> CheckResult:
    for n, tau, taup, delta, c1p, ydf, dx, dxp in CONIC_ROWS:
        if not slope.check_rho_tau(n, tau, tau, delta):
            return CheckResult("conic table thresholds", False,
                               f"n={n} tau={tau}")
        if slope.c1_prime(n, tau, taup) != c1p:
            return CheckResult("conic table thresholds", False,
                               f"c1' mismatch at n={n} ({tau},{taup})")
        if slope.base_degree_ratio(n, tau) * dx != dxp:
            return CheckResult("conic table thresholds", False,
                               f"degree ratio at n={n} ({tau},{taup})")
        if slope.y_dot_f(c1p, taup, 1) != ydf:
            return CheckResult("conic table thresholds", False,
                               f"Y.f at n={n} ({tau},{taup})")
    return CheckResult("conic table thresholds", True)


def check_kprime_consistency(rng: random.Random) -> CheckResult:
    for n, tau, taup, delta, c1p, ydf, dx, dxp in CONIC_ROWS:
        first, second = slope.kprime_degree_formulas(n, tau, taup, 1, 2 * dx)
        if first != 2 * dxp:
            return CheckResult("second-contraction degrees", False,
                               f"-K'H'^n at n={n} ({tau},{taup})")
        if 2 * second / first != c1p:
            return CheckResult("second-contraction degrees", False,
                               f"c1' from K'^2 at n={n} ({tau},{taup})")
    return CheckResult("second-contraction degrees", True)


def check_blowdown_rows(rng: random.Random) -> CheckResult:
    for n, tau, taup, delta in BLOWDOWN_ROWS:
        got = slope.solve_nu_prime(n, tau, delta, 1)
        if got != taup:
            return CheckResult("blow-down table thresholds", False,
                               f"n={n} tau={tau}: nu'={got} != {taup}")
        rho = Fraction(tau) - Fraction(2, taup)
        if not slope.check_rho_tau(n, tau, rho, delta):
            return CheckResult("blow-down table thresholds", False,
                               f"thresholds fail at n={n} tau={tau}")
    return CheckResult("blow-down table thresholds", True)


def check_tuple_rejections(rng: random.Random) -> CheckResult:
    base = dict(n=2, kind="C", lam=1, mu=1, mu_prime=1, nu=2, nu_prime=1,
                tau=2, tau_prime=1, rho=2, i=3, i_prime=3, c1=0,
                delta=Fraction(-12), c2_over_d=Fraction(3))
    bad = [
        ("mu_mismatch", dict(base, mu_prime=2)),
        ("index_relation", dict(base, i=4)),
        ("delta_sign", dict(base, delta=Fraction(4), c2_over_d=Fraction(-1))),
        ("c2_discriminant", dict(base, c2_over_d=Fraction(5))),
        ("parity", dict(base, c1=-1, c2_over_d=Fraction(13, 4))),
        ("rho_value", dict(base, rho=Fraction(1))),
        ("rhotau", dict(base, delta=Fraction(-8), c2_over_d=Fraction(2))),
        ("c2_integrality", dict(base, d=3, delta=Fraction(-13, 3),
                                c2_over_d=Fraction(13, 12))),
    ]
    for reason, kwargs in bad:
        try:
            slope.InvariantTuple(**kwargs)
        except slope.InvariantError as err:
            if err.reason != reason:
                return CheckResult("tuple validation reasons", False,
                                   f"wanted {reason}, got {err.reason}")
        else:
            return CheckResult("tuple validation reasons", False,
                               f"{reason} not rejected")
    return CheckResult("tuple validation reasons", True)


def check_enumerations(rng: random.Random) -> CheckResult:
    for n, expected in ((2, 1), (3, 2), (5, 2)):
        rows, _ = classify.enumerate_type_C(n)
        admissible = [t for t in rows if t.status == "admissible"]
        if len(admissible) != expected:
            return CheckResult("classification tables", False,
                               f"type C n={n}: {len(admissible)} survivors")
        for t in rows:
            if not slope.check_rho_tau(t.n, t.tau, t.rho, t.delta):
                return CheckResult("classification tables", False,
                                   f"thresholds fail on emitted row {t}")
    result = classify.enumerate_type_D()
    if len(result.tuples) != 4:
        return CheckResult("classification tables", False,
                           f"type D raw rows: {len(result.tuples)}")
    survivors = [t for t in result.tuples if t.status == "admissible"]
    if [t.label for t in survivors] != ["(D1)"]:
        return CheckResult("classification tables", False,
                           f"type D survivors: {survivors}")
    return CheckResult("classification tables", True)


def check_congruences(rng: random.Random) -> CheckResult:
    m_max = 19
    got = {(t.alpha, t.z, t.m) for t in classify.enumerate_congruences(m_max)}
    brute = set()
    for m in range(2, m_max + 1):
        for z in range(1, m):
            t = m - z - 1
            if t > 0 and (m - 1) % t == 0 and (m - 1) // t >= 3 \
                    and 3 * z <= 2 * m:
                brute.add(((m - 1) // t, z, m))
    if got != brute:
        return CheckResult("congruence scan", False,
                           f"diff: {got ^ brute}")
    return CheckResult("congruence scan", True)


def check_determinism(rng: random.Random) -> CheckResult:
    a = slope.tuples_to_csv(classify.enumerate_type_C(5)[0])
    b = slope.tuples_to_csv(classify.enumerate_type_C(5)[0])
    if a != b:
        return CheckResult("deterministic output", False, "type C n=5")
    return CheckResult("deterministic output", True)


_PRINT_CORPUS = (
    "-K + 2*H", "(L+H)^5", "K'^2 - 5*K'*H' + 7*H'^2", "1/2*L", "-(L*H)",
    "((L))", "3 - 4 - 5", "L*(H + L)^2",
)


def _rand_node(rng: random.Random, depth: int) -> expr.Node:
    if depth <= 0 or rng.randint(1, 10) <= 3:
        if rng.randint(0, 1):
            return expr.Lit(Fraction(rng.randint(0, 9), rng.randint(1, 9)))
        return expr.Sym(rng.choice(["L", "H", "K'", "x1"]))
    kind = rng.choice(["neg", "add", "mul", "pow"])
    if kind == "neg":
        return expr.Neg(_rand_node(rng, depth - 1))
    if kind == "pow":
        return expr.Pow(_rand_node(rng, depth - 1), rng.randint(0, 4))
    left = _rand_node(rng, depth - 1)
    right = _rand_node(rng, depth - 1)
    return expr.Add(left, right) if kind == "add" else expr.Mul(left, right)


def check_parser_roundtrip(rng: random.Random) -> CheckResult:
    for text in _PRINT_CORPUS:
        ast = expr.parse_text(text)
        if expr.parse_text(expr.to_text(ast)) != ast:
            return CheckResult("parser round-trip", False, text)
    for _ in range(150):
        ast = _rand_node(rng, 4)
        printed = expr.to_text(ast)
        if expr.parse_text(printed) != ast:
            return CheckResult("parser round-trip", False, printed)
    return CheckResult("parser round-trip", True)


def check_evaluator(rng: random.Random) -> CheckResult:
    ctx = chow.RingCtx(3, ("L", "H"), Fraction(0), Fraction(-1), Fraction(2))
    bindings = {"L": ctx.gen1, "H": ctx.gen2, "t": Fraction(3)}
    for _ in range(100):
        a = _rand_node(rng, 3)
        b = _rand_node(rng, 3)
        try:
            va = expr.evaluate(a, ctx, bindings).element
            vb = expr.evaluate(b, ctx, bindings).element
            vsum = expr.evaluate(expr.Add(a, b), ctx, bindings).element
        except expr.ExprError:
            continue  # unbound random symbol; irrelevant here
        if vsum != va + vb:
            return CheckResult("evaluator distributes", False,
                               expr.to_text(expr.Add(a, b)))
        if chow.reduce(vsum, ctx) != vsum:
            return CheckResult("evaluator distributes", False,
                               "result not in normal form")
    return CheckResult("evaluator distributes", True)


def check_perturbed_thresholds(rng: random.Random) -> CheckResult:
    """Systematic perturbations of every emitted table row must break
    the threshold compatibility condition."""
    failures = 0
    total = 0
    rows = [(n, Fraction(tau), Fraction(tau), delta)
            for n, tau, _, delta, *_ in CONIC_ROWS]
    rows += [(n, Fraction(tau), Fraction(tau) - Fraction(2, taup), delta)
             for n, tau, taup, delta in BLOWDOWN_ROWS]
    for n, tau, rho, delta in rows:
        perturbed = [(tau + 1, rho + 1, delta), (tau - 1, rho - 1, delta),
                     (tau, rho, 2 * delta)]
        for t, r, d in perturbed:
            if t <= 0:
                continue
            total += 1
            if not slope.check_rho_tau(n, t, r, d):
                failures += 1
    if failures < 10:
        return CheckResult("perturbed thresholds fail", False,
                           f"only {failures} of {total} perturbations fail")
    return CheckResult("perturbed thresholds fail", True,
                       f"{failures}/{total} perturbations rejected")


CHECKS: Tuple[Callable[[random.Random], CheckResult], ...] = (
    check_quad_pow_multiplicative,
    check_norm_multiplicative,
    check_exact_angle,
    check_arg_antitone,
    check_reduce_properties,
    check_chern_wu,
    check_basis_roundtrip,
    check_cross_basis_degrees,
    check_b_matrix,
    check_context_roundtrip,
    check_conic_rows,
    check_kprime_consistency,
    check_blowdown_rows,
    check_tuple_rejections,
    check_enumerations,
    check_congruences,
    check_determinism,
    check_parser_roundtrip,
    check_evaluator,
    check_perturbed_thresholds,
)


def run_all(seed: int = SEED) -> List[CheckResult]:
    results = []
    for check in CHECKS:
        results.append(check(random.Random(seed)))
    return results
