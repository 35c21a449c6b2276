import pytest

from cichon.cards import ALEPH1, ContextBuilder
from cichon.systems import (CIdeal, Card, CoverSys, Dual, ExprError, Ideal,
                            IdealSys, Ord, Prod, R1, R2, R3, R4, dual,
                            ord_expr, parse_expr, prs, render, validate_expr)


def ctx():
    b = ContextBuilder()
    for n in ("lam1", "lam4", "lam5"):
        b.card(n, regular=True)
    b.card("mu")
    b.chain([ALEPH1, "lam1", "lam4", "lam5"], strict=True)
    return b.build()


def test_atom_aliases():
    assert prs("R1") == R1 and prs("R4") == R4
    assert prs("Lc") == R1
    with pytest.raises(ExprError):
        prs("R9")


def test_dual_normalizes():
    e = CIdeal("lam5", ALEPH1)
    assert dual(dual(e)) == e
    assert dual(e) == Dual(e)


def test_single_factor_ordinal_collapses_to_card():
    c = ctx()
    assert ord_expr(c.ordinal(["lam5"])) == Card("lam5")
    assert ord_expr(c.ordinal(["lam5", "lam4"])) == Ord(("lam5", "lam4"))


def test_validate_expr():
    c = ctx()
    validate_expr(c, CIdeal("lam5", "lam1"))
    validate_expr(c, Prod((Card("lam5"), Card("lam4"))))
    with pytest.raises(ExprError):
        validate_expr(c, CIdeal("lam1", "lam5"))  # theta above the index
    with pytest.raises(ExprError):
        validate_expr(c, Card("mu"))  # not regular
    with pytest.raises(ExprError):
        validate_expr(c, Ord(("lam5", "mu")))


def test_render_parse_round_trip():
    exprs = [
        R1, R2, R3, R4,
        IdealSys("M"), IdealSys("N"), CoverSys("M"), CoverSys("N"),
        CIdeal("lam5", "lam1"), Ideal("lam5", "lam1"),
        Card("lam4"), Ord(("lam5", "lam4")),
        Prod((Card("lam5"), Card("lam4"))),
        dual(CIdeal("lam5", ALEPH1)),
        dual(Prod((Card("lam5"), dual(R3)))),
    ]
    for e in exprs:
        assert parse_expr(render(e)) == e, render(e)


def test_parse_expr_errors():
    for bad in ("", "prod(lam)", "C[lam5 lam1]", "dual(", "idl(X)", "lam5)"):
        with pytest.raises(ExprError):
            parse_expr(bad)
