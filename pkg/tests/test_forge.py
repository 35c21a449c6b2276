import random

import pytest

from cichon.builtins import builtin
from cichon.cards import ALEPH1, ContextBuilder
from cichon.diagram import pinned_values
from cichon.facts import verify
from cichon.forge import (COHEN, HECHLER, LOC, RANDOM,
                          MissingAssumption, PreconditionFailed, Recipe, Slot,
                          apply_cohen_limit, apply_fullgen, apply_itsmallsets,
                          apply_preEUB, axiom_model, hechler_sub, iterand,
                          loc_sub, preeub_threshold, random_sub, run_recipe,
                          validate)
from cichon.facts import base_facts
from cichon.systems import CIdeal, Card, Ideal, Prs

WARMUP_EXPECTED = {
    "cohen": dict(addN="aleph1", covN="aleph1", addM="aleph1", b="aleph1",
                  nonM="aleph1", covM="lam", d="lam", nonN="lam", cofM="lam",
                  cofN="lam", c="lam"),
    "random": dict(addN="aleph1", b="aleph1", addM="aleph1", covN="lam",
                   nonM="lam", covM="lam", nonN="lam", d="lam", cofM="lam",
                   cofN="lam", c="lam"),
    "evdiff": dict(addN="aleph1", covN="aleph1", b="aleph1", addM="aleph1",
                   nonM="lam", covM="lam", d="lam", cofM="lam", nonN="lam",
                   cofN="lam", c="lam"),
    "hechler": dict(addN="aleph1", covN="aleph1", addM="lam", b="lam",
                    nonM="lam", covM="lam", d="lam", cofM="lam", nonN="lam",
                    cofN="lam", c="lam"),
    "loc": {k: "lam" for k in ("addN", "covN", "addM", "b", "covM", "nonM",
                               "d", "cofM", "nonN", "cofN", "c")},
}

MOD_EXPECTED = {
    "mod1": dict(addN="lam1", covN="lam2", b="lam3", addM="lam3", nonM="lam4",
                 covM="lam4", d="lam5", nonN="lam5", cofM="lam5", cofN="lam5",
                 c="lam5"),
    "mod2": dict(addN="lam1", covN="lam2", b="lam3", nonM="lam3", addM="lam3",
                 covM="lam4", d="lam4", nonN="lam4", cofM="lam4", cofN="lam4",
                 c="lam4"),
    "mod3": dict(addN="lam1", b="lam2", addM="lam2", covN="lam3", nonM="lam3",
                 covM="lam3", nonN="lam3", d="lam4", cofM="lam4", cofN="lam4",
                 c="lam4"),
    "mod5": dict(addN="lam1", covN="lam2", addM="lam3", b="lam3", nonM="lam3",
                 covM="lam3", d="lam3", cofM="lam3", nonN="lam4", cofN="lam4",
                 c="lam4"),
}


@pytest.mark.parametrize("name", sorted(WARMUP_EXPECTED))
def test_warmup_constellations(name):
    model = builtin(name).derive()
    assert pinned_values(model.constellation) == WARMUP_EXPECTED[name]
    verify(model.db)


@pytest.mark.parametrize("name", sorted(MOD_EXPECTED))
def test_mod_constellations(name):
    model = builtin(name).derive()
    assert pinned_values(model.constellation) == MOD_EXPECTED[name]
    verify(model.db)


def test_mod1_conclusions_verbatim():
    db = builtin("mod1").derive().db
    for i, atom in ((1, "Lc"), (2, "Cn"), (3, "ww")):
        C, I, r = CIdeal("lam5", f"lam{i}"), Ideal("lam5", f"lam{i}"), Prs(atom)
        for a, b in ((r, C), (C, r), (r, I), (I, r)):
            assert db.has(a, b)
    assert db.has(Prs("Mg"), Card("lam4")) and db.has(Card("lam4"), Prs("Mg"))


def test_mod2_r4_collapses_to_r3_level():
    db = builtin("mod2").derive().db
    C3 = CIdeal("lam4", "lam3")
    assert db.has(Prs("Mg"), C3) and db.has(C3, Prs("Mg"))
    assert db.has(Prs("Mg"), Prs("ww"))  # the base edge it rides on


def test_catalog_goodness():
    assert HECHLER.good_thresholds("ww") == []          # adds dominating reals
    assert RANDOM.good_thresholds("Cn") == []           # adds random reals
    assert LOC.good_thresholds("Lc") == []
    assert ALEPH1 in COHEN.good_thresholds("Mg")
    sub = hechler_sub("lam3")
    assert ALEPH1 in sub.good_thresholds("Cn")          # inherited
    assert "lam3" in sub.good_thresholds("ww")          # by size
    assert sub.adds_dominating == ()                    # only over its models
    assert sub.dominates_small == (Prs("ww"),)


def test_iterand_token_parsing():
    assert iterand("cohen") == COHEN
    assert iterand("loc_sub", "lam1") == loc_sub("lam1")
    from cichon.forge import ForgeError
    with pytest.raises(ForgeError):
        iterand("cohen", "lam1")
    with pytest.raises(ForgeError):
        iterand("random_sub")


def test_preeub_threshold_computation():
    b = builtin("mod1")
    ctx, r = b.ctx(), b.recipe
    assert preeub_threshold(ctx, r, "Lc") == "lam1"
    assert preeub_threshold(ctx, r, "Cn") == "lam2"
    assert preeub_threshold(ctx, r, "ww") == "lam3"
    assert preeub_threshold(ctx, r, "Mg") is None       # evdiff is not Mg-good


def test_validate_missing_assumption():
    b = ContextBuilder()
    for i in range(1, 6):
        b.card(f"lam{i}", regular=True)
    b.chain([ALEPH1] + [f"lam{i}" for i in range(1, 6)], strict=True)
    ctx = b.build()  # deliberately missing pow_lt(lam5, lam3)
    recipe = builtin("mod1").recipe
    diags = validate(ctx, recipe)
    assert any("pow_lt(lam5,lam3)" in d for d in diags)
    with pytest.raises(MissingAssumption):
        run_recipe(ctx, recipe)


def test_validate_cc_exceeds_cofinality():
    b = ContextBuilder()
    b.card("lam", regular=True).card("kap", regular=True)
    b.chain([ALEPH1, "lam", "kap"], strict=True)
    b.pow("lam", "aleph0")
    ctx = b.build()
    r = Recipe("bad", length=("lam",), cc="kap",
               slots=(Slot(HECHLER, cofinal=True),))
    diags = validate(ctx, r)
    assert any("cf(length)" in d for d in diags)


def test_apply_fullgen_preconditions():
    b = builtin("hechler")
    ctx, r = b.ctx(), b.recipe
    db = base_facts(ctx, "lam")
    db.meta["recipe"] = r
    with pytest.raises(PreconditionFailed):
        apply_fullgen(db, r, Prs("Lc"))  # hechler does not add Lc-dominating
    ids = apply_fullgen(db, r, Prs("ww"))
    assert ids and db.has(Prs("ww"), Card("lam"))
    no_cofinal = Recipe("x", length=("lam",), slots=(Slot(HECHLER),))
    with pytest.raises(PreconditionFailed):
        apply_fullgen(db, no_cofinal, Prs("ww"))


def test_apply_cohen_limit_zero_length():
    b = builtin("cohen")
    ctx = b.ctx()
    db = base_facts(ctx, "lam")
    empty = Recipe("empty", length=("lam",), slots=())
    with pytest.raises(PreconditionFailed):
        apply_cohen_limit(db, empty)
    ids = apply_cohen_limit(db, b.recipe)
    assert db.has(CIdeal("lam", ALEPH1), Prs("Mg"))  # pure Cohen product


def test_apply_itsmallsets_requires_bookkeeping():
    b = builtin("mod1")
    ctx, r = b.ctx(), b.recipe
    db = base_facts(ctx, "lam5")
    db.meta["recipe"] = r
    ids = apply_itsmallsets(db, r, Prs("Lc"), "lam1")
    assert db.has(Prs("Lc"), CIdeal("lam5", "lam1"))
    with pytest.raises(PreconditionFailed):
        apply_itsmallsets(db, r, Prs("Mg"), "lam1")


def test_apply_preeub_names_bad_slot():
    b = builtin("mod1")
    ctx, r = b.ctx(), b.recipe
    db = base_facts(ctx, "lam5")
    db.meta["recipe"] = r
    with pytest.raises(PreconditionFailed) as err:
        apply_preEUB(db, r, Prs("Mg"), "lam3")
    assert "evdiff" in str(err.value)
    apply_preEUB(db, r, Prs("Cn"), "lam2")
    assert db.has(CIdeal("lam5", "lam2"), Prs("Cn"))
    assert db.has(Card("lam3"), Prs("Cn"))  # regulars in [lam2, lam5]


def test_full_hechler_never_preeub_for_ww():
    # a recipe with a full Hechler slot cannot force C[..<theta] below ww
    b = builtin("mod5")
    ctx, r = b.ctx(), b.recipe
    assert preeub_threshold(ctx, r, "ww") is None
    db = base_facts(ctx, "lam4")
    db.meta["recipe"] = r
    for theta in ("lam1", "lam2", "lam3", "lam4"):
        with pytest.raises(PreconditionFailed):
            apply_preEUB(db, r, Prs("ww"), theta)


def test_rule_order_confluence():
    rng = random.Random(4)
    for name in ("cohen", "random", "evdiff", "hechler", "loc",
                 "mod1", "mod2", "mod3", "mod5"):
        b = builtin(name)
        reference = b.derive()
        napps = len(reference.trace)
        order = list(range(napps))
        rng.shuffle(order)
        shuffled = b.derive(order=order)
        assert shuffled.db.pairs() == reference.db.pairs(), name
        assert shuffled.constellation == reference.constellation, name


AXIOM_EXPECTED = {
    "gksmax": dict(addN="lam1", covN="lam2", b="lam3", addM="lam3",
                   nonM="lam4", covM="lam5", d="lam5", nonN="lam5",
                   cofM="lam5", cofN="lam5", c="lam5"),
    "kst": dict(addN="lam1", covN="lam3", b="lam2", addM="lam2", nonM="lam4",
                covM="lam5", d="lam5", nonN="lam5", cofM="lam5", cofN="lam5",
                c="lam5"),
    "bcm": dict(addN="lam1", covN="lam2", b="lam3", addM="lam3", nonM="lam4",
                covM="lam5", d="lam6", nonN="lam6", cofM="lam6", cofN="lam6",
                c="lam6"),
}


@pytest.mark.parametrize("name", sorted(AXIOM_EXPECTED))
def test_axiom_models(name):
    model = builtin(name).derive()
    assert pinned_values(model.constellation) == AXIOM_EXPECTED[name]
    verify(model.db)


def test_bcm_pins_r4_between_product_factors():
    db = builtin("bcm").derive().db
    from cichon.systems import Prod
    assert db.has(Card("lam4"), Prs("Mg"))
    assert db.has(Card("lam5"), Prs("Mg"))
    assert db.has(Prs("Mg"), Prod((Card("lam5"), Card("lam4"))))


def test_kst_needs_inaccessibility():
    b = ContextBuilder()
    for i in range(1, 6):
        b.card(f"lam{i}", regular=True)
    b.chain([ALEPH1] + [f"lam{i}" for i in range(1, 6)], strict=True)
    b.pow_lt("lam2", "lam2").pow_lt("lam5", "lam4")
    with pytest.raises(MissingAssumption) as err:
        axiom_model(b.build(), "kst", tuple(f"lam{i}" for i in range(1, 6)))
    assert "inaccessible" in str(err.value)
