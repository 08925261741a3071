from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fanocalc import chow, expr
from fanocalc.expr import (Add, ExprError, Lit, Mul, Neg, Pow, Sym,
                           evaluate, evaluate_text, parse, parse_text,
                           to_text, tokenize)

F = Fraction


def test_tokenize_simple_expression():
    tokens = tokenize("(-K + 2*H)^3")
    kinds = [t.kind for t in tokens]
    assert kinds == ["lparen", "minus", "symbol", "plus", "number", "star",
                     "symbol", "rparen", "caret", "number"]
    assert len(tokens) == 10
    assert [t.pos for t in tokens] == sorted(t.pos for t in tokens)


def test_tokenize_primed_symbols():
    tokens = tokenize("K'^2 - 5*K'*H' + 7*H'^2")
    symbols = [t.text for t in tokens if t.kind == "symbol"]
    assert symbols == ["K'", "K'", "H'", "H'"]


def test_tokenize_rationals():
    assert [t.text for t in tokenize("5/3 + 2")] == ["5/3", "+", "2"]
    with pytest.raises(ExprError):
        tokenize("2/0")
    with pytest.raises(ExprError, match="column"):
        tokenize("a ? b")


def test_parse_precedence():
    ast = parse_text("-K+t*H")
    assert ast == Add(Neg(Sym("K")), Mul(Sym("t"), Sym("H")))
    assert parse_text("(L+H)^5") == Pow(Add(Sym("L"), Sym("H")), 5)
    # Unary minus binds below the power.
    assert parse_text("-K^2") == Neg(Pow(Sym("K"), 2))
    assert parse_text("2 - 3 - 4") == \
        Add(Add(Lit(F(2)), Neg(Lit(F(3)))), Neg(Lit(F(4))))


def test_parse_errors_carry_positions():
    with pytest.raises(ExprError, match="integer literal"):
        parse_text("L^H")
    with pytest.raises(ExprError):
        parse_text("L +")
    with pytest.raises(ExprError):
        parse_text("(L + H")
    with pytest.raises(ExprError):
        parse_text("")
    with pytest.raises(ExprError):
        parse_text("2 H")  # no implicit multiplication


def test_parse_depth_limit():
    deep = "(" * 80 + "L" + ")" * 80
    with pytest.raises(ExprError, match="nested"):
        parse_text(deep)


def lh_ctx():
    return chow.RingCtx(5, ("L", "H"), F(-1), F(-1, 3), F(18))


def base_bindings(ctx):
    return {
        "L": ctx.gen1, "H": ctx.gen2,
        "K": ctx.gen1.scale(-2) + ctx.gen2.scale(ctx.rel_a),
        "D": ctx.rel_a ** 2 + 4 * ctx.rel_b,
    }


def test_evaluate_chern_wu_identity():
    ctx = lh_ctx()
    result = evaluate_text("K^2 - D*H^2", ctx, base_bindings(ctx))
    assert result.element.is_zero()


def test_evaluate_cross_basis_degree():
    ctx = lh_ctx()
    result = evaluate_text("(4*L+3*H)*(L+H)^5", ctx, base_bindings(ctx))
    assert result.degree == -2


def test_evaluate_parity_functional():
    # The third-Chern-class functional in the derived (-K', H') ring.
    ctx_p = chow.RingCtx(5, ("-K'", "H'"), F(-5), F(-7), F(2))
    bindings = {"Kp": ctx_p.gen1.scale(-1), "Hp": ctx_p.gen2,
                "cp": F(-10)}
    text = ("1/2*Kp^4*Hp^2 - cp*1/4*Kp^3*Hp^3 + cp^2*1/8*Kp^2*Hp^4"
            " - cp^3*1/16*Kp*Hp^5")
    result = evaluate_text(text, ctx_p, bindings)
    assert result.degree == -395


def test_evaluate_unbound_symbol():
    ctx = lh_ctx()
    with pytest.raises(ExprError, match="unbound symbol"):
        evaluate_text("L + X", ctx, base_bindings(ctx))


def test_evaluate_truncation_note():
    ctx = lh_ctx()
    result = evaluate_text("H^7", ctx, base_bindings(ctx))
    assert result.element.is_zero()
    assert result.note is not None


def test_roundtrip_corpus():
    corpus = [
        "-K + 2*H", "(L+H)^5", "K'^2 - 5*K'*H' + 7*H'^2", "1/2*L",
        "-(L*H)", "3 - 4 - 5", "L*(H + L)^2", "-(-L)", "0",
    ]
    for text in corpus:
        ast = parse_text(text)
        assert parse_text(to_text(ast)) == ast


@st.composite
def asts(draw, depth=4):
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            return Lit(draw(st.fractions(min_value=0, max_value=9,
                                         max_denominator=5)))
        return Sym(draw(st.sampled_from(["L", "H", "K'", "x1", "t"])))
    kind = draw(st.sampled_from(["neg", "add", "mul", "pow"]))
    if kind == "neg":
        return Neg(draw(asts(depth=depth - 1)))
    if kind == "pow":
        return Pow(draw(asts(depth=depth - 1)),
                   draw(st.integers(min_value=0, max_value=5)))
    return (Add if kind == "add" else Mul)(
        draw(asts(depth=depth - 1)), draw(asts(depth=depth - 1)))


@given(asts())
def test_print_parse_roundtrip(ast):
    assert parse_text(to_text(ast)) == ast


@given(asts(depth=3), asts(depth=3))
def test_evaluate_distributes_over_sum(a, b):
    ctx = chow.RingCtx(3, ("L", "H"), F(0), F(-1), F(2))
    bindings = {"L": ctx.gen1, "H": ctx.gen2, "K'": ctx.gen1.scale(-2),
                "x1": F(1, 2), "t": F(3)}
    va = evaluate(a, ctx, bindings).element
    vb = evaluate(b, ctx, bindings).element
    vsum = evaluate(Add(a, b), ctx, bindings).element
    assert vsum == va + vb
    assert chow.reduce(vsum, ctx) == vsum
