"""Finite-support iteration recipes and their effect on the fact database.

A recipe is declarative: an iteration length (ordinal product of regulars),
a chain-condition bound, and a list of slots.  Each slot names an iterand
class from a fixed catalog:

* full classes - Cohen, Random, EvDiff (eventually different reals),
  Hechler, Loc (localization) - which add a known kind of dominating real
  over the whole extension, and
* restricted classes - RandomSub/HechlerSub/LocSub of size below theta -
  which only dominate over the small bookkept models but are
  theta-good for every Polish system by virtue of their size.

Goodness entries are (threshold, atom) pairs: the class preserves
unbounded families of the atom's system above the threshold.  Restricted
classes inherit their parent's entries (a subalgebra of random forcing
keeps the measure-theoretic Lc*-goodness; subposets of Hechler stay
sigma-centered) and gain (theta, R) for every R from their size.

The four derivation rules are trusted, hypothesis-checked inferences:

* fullgen      - dominating reals cofinally often force R <= length, and
                 R = Mg = length for Polish R;
* cohen-limit  - limit iterations add Cohen reals cofinally, so
                 length <= Mg (and C[length<aleph1] <= Mg for a pure
                 Cohen product);
* itsmallsets  - bookkept small-set domination forces R <= C[c < theta];
* preEUB       - when every slot is theta-R-good, C[c < theta] <= R.

`run_recipe` applies every applicable rule, closes the database and
evaluates the constellation.  `axiom_model` installs the three
construction-heavy left-side models as axiom-level fact sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cards import ALEPH1, CardContext, OrdinalExpr
from .diagram import Constellation, constellation
from .facts import FactDB, REPLAY, ReplayError, base_facts, close
from .systems import (CIdeal, Card, Ideal, Prs, Prod, SysExpr, dual,
                      ord_expr, parse_expr, render)


class ForgeError(Exception):
    pass


class MissingAssumption(ForgeError):
    pass


class PreconditionFailed(ForgeError):
    pass


# ---------------------------------------------------------------------------
# iterand catalog
# ---------------------------------------------------------------------------

_ALL_ATOMS = ("Lc", "Cn", "ww", "Mg")


@dataclass(frozen=True)
class IterandClass:
    name: str
    adds_dominating: tuple[SysExpr, ...]      # over the whole extension
    goodness: tuple[tuple[str, str], ...]     # (threshold name, atom)
    size_bound: Optional[str] = None          # theta of a restricted class
    dominates_small: tuple[SysExpr, ...] = () # over the bookkept models only

    def good_thresholds(self, atom: str) -> list[str]:
        return [t for t, a in self.goodness if a == atom]

    def token(self) -> str:
        if self.size_bound is None:
            return self.name
        return f"{self.name}({self.size_bound})"


COHEN = IterandClass(
    "cohen",
    adds_dominating=(dual(Prs("Mg")),),  # Cohen reals are Mg-unbounded
    goodness=tuple((ALEPH1, a) for a in _ALL_ATOMS),  # countable, so good for all
)
RANDOM = IterandClass(
    "random",
    adds_dominating=(Prs("Cn"),),
    goodness=((ALEPH1, "ww"), (ALEPH1, "Lc")),
)
EVDIFF = IterandClass(
    "evdiff",
    adds_dominating=(Prs("Mg"),),
    goodness=((ALEPH1, "ww"), (ALEPH1, "Cn"), (ALEPH1, "Lc")),
)
HECHLER = IterandClass(
    "hechler",
    adds_dominating=(Prs("ww"),),
    goodness=((ALEPH1, "Cn"), (ALEPH1, "Lc")),
)
LOC = IterandClass(
    "loc",
    adds_dominating=(Prs("Lc"),),
    goodness=(),
)


def _sub(parent: IterandClass, theta: str) -> IterandClass:
    return IterandClass(
        parent.name + "_sub",
        adds_dominating=(),
        goodness=parent.goodness + tuple((theta, a) for a in _ALL_ATOMS),
        size_bound=theta,
        dominates_small=parent.adds_dominating,
    )


def random_sub(theta: str) -> IterandClass:
    return _sub(RANDOM, theta)


def hechler_sub(theta: str) -> IterandClass:
    return _sub(HECHLER, theta)


def loc_sub(theta: str) -> IterandClass:
    return _sub(LOC, theta)


FULL_CLASSES = {c.name: c for c in (COHEN, RANDOM, EVDIFF, HECHLER, LOC)}
SUB_MAKERS = {"random_sub": random_sub, "hechler_sub": hechler_sub,
              "loc_sub": loc_sub}


def iterand(token: str, theta: Optional[str] = None) -> IterandClass:
    if token in FULL_CLASSES:
        if theta is not None:
            raise ForgeError(f"{token} takes no size parameter")
        return FULL_CLASSES[token]
    if token in SUB_MAKERS:
        if theta is None:
            raise ForgeError(f"{token} needs a size parameter")
        return SUB_MAKERS[token](theta)
    raise ForgeError(f"unknown iterand class {token!r}")


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Slot:
    iterand: IterandClass
    cofinal: bool = False
    bookkeeping: Optional[tuple[str, str]] = None  # (atom, up_to cardinal)


@dataclass(frozen=True)
class Recipe:
    name: str
    length: tuple[str, ...]  # ordinal product factors, left to right
    cc: str = ALEPH1
    slots: tuple[Slot, ...] = ()

    def length_expr(self, ctx: CardContext) -> OrdinalExpr:
        return ctx.ordinal(self.length)


@dataclass(frozen=True)
class DerivedModel:
    db: FactDB
    constellation: Constellation
    trace: tuple[str, ...]


def validate(ctx: CardContext, r: Recipe) -> list[str]:
    """Diagnostics for every theorem hypothesis the recipe will trigger."""
    diags: list[str] = []
    if not r.slots:
        diags.append("recipe has no slots")
        return diags
    try:
        length = r.length_expr(ctx)
    except Exception as exc:
        diags.append(f"bad length: {exc}")
        return diags
    card = ctx.card(length)
    cf = ctx.cf(length)
    if not (ctx.is_regular(r.cc) and ctx.uncountable(r.cc)):
        diags.append(f"cc bound {r.cc} must be regular uncountable")
    if not ctx.has_pow(card, "aleph0"):
        diags.append(f"forcing c={card} needs pow({card},aleph0)={card} declared")
    for slot in r.slots:
        cls = slot.iterand
        if slot.cofinal and cls.adds_dominating and ctx.leq(r.cc, cf) is not True:
            diags.append(f"fullgen via {cls.token()} needs cc {r.cc} <= cf(length) {cf}")
        if slot.bookkeeping is not None:
            atom, theta = slot.bookkeeping
            if cls.size_bound is None:
                diags.append(f"{cls.token()} cannot carry bookkeeping (not a restricted class)")
                continue
            if theta != cls.size_bound:
                diags.append(f"bookkeeping up_to {theta} must equal the class bound {cls.size_bound}")
            if Prs(atom) not in cls.dominates_small:
                diags.append(f"{cls.token()} does not add {atom}-dominating reals over its models")
            if not (ctx.is_regular(theta) and ctx.uncountable(theta)):
                diags.append(f"bookkeeping threshold {theta} must be regular uncountable")
            if ctx.leq(r.cc, theta) is not True or ctx.leq(theta, cf) is not True:
                diags.append(f"bookkeeping needs cc <= {theta} <= cf(length)={cf}")
            if not ctx.has_pow_lt(card, theta):
                diags.append(
                    f"bookkeeping coverage at {theta} needs pow_lt({card},{theta})={card} declared")
    return diags


# ---------------------------------------------------------------------------
# rule applications
# ---------------------------------------------------------------------------

def _recipe_of(db: FactDB) -> Recipe:
    r = db.meta.get("recipe")
    if r is None:
        raise ForgeError("database carries no recipe")
    return r


def apply_fullgen(db: FactDB, r: Recipe, R: SysExpr) -> list[int]:
    """Dominating reals cofinally often: R <= length (= Mg = length for Polish R)."""
    ctx = db.ctx
    length = r.length_expr(ctx)
    cf = ctx.cf(length)
    if not any(s.cofinal and R in s.iterand.adds_dominating for s in r.slots):
        raise PreconditionFailed(f"no cofinal slot class adds {render(R)}-dominating reals")
    if not ctx.uncountable(cf):
        raise PreconditionFailed("fullgen needs uncountable cofinality")
    if ctx.leq(r.cc, cf) is not True:
        raise PreconditionFailed(f"fullgen needs cc {r.cc} <= cf(length) {cf}")
    O = ord_expr(length)
    note = "an iteration adding dominating reals cofinally often forces the system below its length"
    ids = [db.add(R, O, "forge:fullgen", params=(render(R),), note=note)]
    if isinstance(R, Prs):
        note2 = "for a Polish system the connection upgrades to equivalence with Mg and the length"
        ids += [
            db.add(O, R, "forge:fullgen-prs", params=(render(R),), note=note2),
            db.add(Prs("Mg"), O, "forge:fullgen-prs", params=(render(R),), note=note2),
            db.add(O, Prs("Mg"), "forge:fullgen-prs", params=(render(R),), note=note2),
        ]
    return [i for i in ids if i is not None]


def apply_cohen_limit(db: FactDB, r: Recipe) -> list[int]:
    """Limit iterations add Cohen reals cofinally: length <= Mg."""
    ctx = db.ctx
    if not r.slots:
        raise PreconditionFailed("zero-length recipe")
    length = r.length_expr(ctx)
    if not ctx.uncountable(ctx.cf(length)):
        raise PreconditionFailed("cohen-limit needs uncountable cofinality")
    O = ord_expr(length)
    ids = [db.add(O, Prs("Mg"), "forge:cohen-limit",
                  note="limit stages add Cohen reals, placing the length below Mg")]
    if all(s.iterand.name == "cohen" for s in r.slots):
        ci = CIdeal(ctx.card(length), ALEPH1)
        ids.append(db.add(ci, Prs("Mg"), "forge:cohen-product",
                          note="a Cohen product embeds the index small-set covering into Mg"))
    return [i for i in ids if i is not None]


def apply_itsmallsets(db: FactDB, r: Recipe, R: SysExpr, theta: str) -> list[int]:
    """Bookkept small-set domination: R <= C[|length| < theta]."""
    ctx = db.ctx
    if not isinstance(R, Prs):
        raise PreconditionFailed("itsmallsets targets a Polish atom")
    if not any(s.bookkeeping == (R.atom, theta) for s in r.slots):
        raise PreconditionFailed(f"no slot bookkeeps {R.atom} up to {theta}")
    length = r.length_expr(ctx)
    if not (ctx.is_regular(theta) and ctx.uncountable(theta)):
        raise PreconditionFailed(f"{theta} must be regular uncountable")
    if ctx.leq(r.cc, theta) is not True or ctx.leq(theta, ctx.cf(length)) is not True:
        raise PreconditionFailed(f"need cc <= {theta} <= cf(length)")
    ci = CIdeal(ctx.card(length), theta)
    fid = db.add(R, ci, "forge:itsmallsets", params=(render(R), theta),
                 note="every bookkept small set gets a dominating real, so R embeds into the covering system")
    return [] if fid is None else [fid]


def apply_preEUB(db: FactDB, r: Recipe, R: SysExpr, theta: str) -> list[int]:
    """Goodness of all slots at theta: C[|length| < theta] <= R."""
    ctx = db.ctx
    if not isinstance(R, Prs):
        raise PreconditionFailed("preEUB targets a Polish atom")
    for slot in r.slots:
        ts = slot.iterand.good_thresholds(R.atom)
        if not any(ctx.leq(t, theta) is True for t in ts):
            raise PreconditionFailed(
                f"slot class {slot.iterand.token()} is not {theta}-{R.atom}-good")
    if not (ctx.is_regular(theta) and ctx.uncountable(theta)):
        raise PreconditionFailed(f"{theta} must be regular uncountable")
    if ctx.leq(r.cc, theta) is not True:
        raise PreconditionFailed(f"need cc <= {theta}")
    length = r.length_expr(ctx)
    card = ctx.card(length)
    if ctx.leq(theta, card) is not True:
        raise PreconditionFailed(f"need {theta} <= |length|")
    ci = CIdeal(card, theta)
    note = ("goodness is preserved along the iteration, keeping ground witnesses unbounded; "
            "the covering system embeds into R")
    fid = db.add(ci, R, "forge:preEUB", params=(render(R), theta), note=note)
    ids = [] if fid is None else [fid]
    anchor = fid if fid is not None else db.id_of(ci, R)
    for mu in ctx.regulars_between(theta, card):
        mid = db.add(Card(mu), R, "forge:preEUB-card", premises=(anchor,),
                     params=(mu,),
                     note="each regular cardinal in [theta,|length|] embeds below R")
        if mid is not None:
            ids.append(mid)
    return ids


def preeub_threshold(ctx: CardContext, r: Recipe, atom: str) -> Optional[str]:
    """Least theta at which every slot class is theta-atom-good, if any."""
    slot_minima = []
    for slot in r.slots:
        ts = slot.iterand.good_thresholds(atom)
        if not ts:
            return None
        slot_minima.append(ctx.min_of(ts))
    return ctx.max_of(slot_minima)


def run_recipe(ctx: CardContext, r: Recipe,
               order: Optional[Sequence[int]] = None) -> DerivedModel:
    """Apply every applicable rule, close, and evaluate the constellation.

    `order` optionally permutes the rule applications (the closed fact set
    is the same for any order; tests exercise this confluence).
    """
    diags = validate(ctx, r)
    if diags:
        raise MissingAssumption("; ".join(diags))
    length = r.length_expr(ctx)
    forced = ctx.card(length)
    db = base_facts(ctx, forced)
    db.meta["recipe"] = r

    apps: list[tuple[str, object]] = []
    apps.append(("cohen-limit", lambda db=db: apply_cohen_limit(db, r)))
    targets = []
    for slot in r.slots:
        if slot.cofinal:
            for R in slot.iterand.adds_dominating:
                if R not in targets:
                    targets.append(R)
    for R in targets:
        apps.append((f"fullgen {render(R)}",
                     lambda db=db, R=R: apply_fullgen(db, r, R)))
    for slot in r.slots:
        if slot.bookkeeping is not None:
            atom, theta = slot.bookkeeping
            apps.append((f"itsmallsets {atom}@{theta}",
                         lambda db=db, a=atom, t=theta: apply_itsmallsets(db, r, Prs(a), t)))
    for atom in _ALL_ATOMS:
        theta = preeub_threshold(ctx, r, atom)
        if theta is not None and ctx.leq(theta, forced) is True:
            apps.append((f"preEUB {atom}@{theta}",
                         lambda db=db, a=atom, t=theta: apply_preEUB(db, r, Prs(a), t)))

    if order is not None:
        if sorted(order) != list(range(len(apps))):
            raise ForgeError("order must permute the application list")
        apps = [apps[i] for i in order]
    trace = []
    for label, fn in apps:
        fn()
        trace.append(label)
    close(db)
    return DerivedModel(db, constellation(db), tuple(trace))


# ---------------------------------------------------------------------------
# axiom-level models
# ---------------------------------------------------------------------------

def axiom_requirements(ctx: CardContext, name: str, cards: tuple[str, ...]) -> list[str]:
    miss: list[str] = []

    def regular_chain(names, label):
        for n in names:
            if not ctx.is_regular(n):
                miss.append(f"{label}: {n} must be regular")
        if names and ctx.leq(ALEPH1, names[0]) is not True:
            miss.append(f"{label}: {names[0]} must be uncountable")
        for a, b in zip(names, names[1:]):
            if ctx.leq(a, b) is not True:
                miss.append(f"{label}: need {a} <= {b}")

    if name == "gksmax":
        l1, l2, l3, l4, l5 = cards
        regular_chain([l1, l2, l3, l4], "gksmax")
        if ctx.leq(l4, l5) is not True:
            miss.append(f"gksmax: need {l4} <= {l5}")
        if not ctx.has_pow_lt(l3, l3):
            miss.append(f"gksmax: needs pow_lt({l3},{l3})={l3}")
        if not ctx.has_pow_lt(l5, l4):
            miss.append(f"gksmax: needs pow_lt({l5},{l4})={l5}")
        if not ctx.has_inaccessible(l4, ALEPH1):
            miss.append(f"gksmax: needs inaccessible({l4},aleph1)")
    elif name == "kst":
        l1, l2, l3, l4, l5 = cards
        regular_chain([l1, l2, l3, l4], "kst")
        if ctx.lt(l4, l5) is not True:
            miss.append(f"kst: need {l4} < {l5}")
        if not ctx.has_pow_lt(l2, l2):
            miss.append(f"kst: needs pow_lt({l2},{l2})={l2}")
        if not ctx.has_pow_lt(l5, l4):
            miss.append(f"kst: needs pow_lt({l5},{l4})={l5}")
        for l in (l3, l4):
            if not ctx.has_inaccessible(l, ALEPH1):
                miss.append(f"kst: needs inaccessible({l},aleph1)")
    elif name == "bcm":
        l0, l1, l2, l3, l4, l5, l6 = cards
        regular_chain([l0, l1, l2, l3, l4, l5], "bcm")
        if ctx.leq(l5, l6) is not True:
            miss.append(f"bcm: need {l5} <= {l6}")
        if not ctx.has_pow_lt(l6, l3):
            miss.append(f"bcm: needs pow_lt({l6},{l3})={l6}")
    else:
        raise ForgeError(f"unknown axiom model {name!r}")
    return miss


def axiom_facts(name: str, cards: tuple[str, ...]) -> list[tuple[SysExpr, SysExpr, str]]:
    """(lhs, rhs, note) conclusions of the named construction, ground-model
    traces normalized away."""
    out = []
    if name == "gksmax":
        l5 = cards[4]
        note = "the left-side construction pins each system to a small-set covering"
        for i in range(1, 5):
            ci = CIdeal(l5, cards[i - 1])
            out += [(Prs(_ALL_ATOMS[i - 1]), ci, note), (ci, Prs(_ALL_ATOMS[i - 1]), note)]
    elif name == "kst":
        l1, l2, l3, l4, l5 = cards
        note = "the alternative left-side construction pins each system to a small-set ideal"
        for atom, th in (("Lc", l1), ("Cn", l3), ("ww", l2), ("Mg", l4)):
            ideal = Ideal(l5, th)
            out += [(Prs(atom), ideal, note), (ideal, Prs(atom), note)]
    elif name == "bcm":
        l0, l1, l2, l3, l4, l5, l6 = cards
        note = "the three-values construction pins the first three systems"
        for i in range(1, 4):
            ci = CIdeal(l6, cards[i])
            out += [(Prs(_ALL_ATOMS[i - 1]), ci, note), (ci, Prs(_ALL_ATOMS[i - 1]), note)]
        note4 = "the meager covering sits between two regulars and below their product"
        out += [
            (Card(l4), Prs("Mg"), note4),
            (Card(l5), Prs("Mg"), note4),
            (Prs("Mg"), Prod((Card(l5), Card(l4))), note4),
        ]
    else:
        raise ForgeError(f"unknown axiom model {name!r}")
    return out


_AXIOM_C = {"gksmax": 4, "kst": 4, "bcm": 6}  # index of the forced continuum
_AXIOM_ARITY = {"gksmax": 5, "kst": 5, "bcm": 7}


def axiom_model(ctx: CardContext, name: str, cards: Sequence[str]) -> DerivedModel:
    cards = tuple(cards)
    if name not in _AXIOM_ARITY:
        raise ForgeError(f"unknown axiom model {name!r}")
    if len(cards) != _AXIOM_ARITY[name]:
        raise ForgeError(f"{name} takes {_AXIOM_ARITY[name]} cardinals")
    for c in cards:
        ctx.check(c)
    miss = axiom_requirements(ctx, name, cards)
    if miss:
        raise MissingAssumption("; ".join(miss))
    forced = cards[_AXIOM_C[name]]
    db = base_facts(ctx, forced)
    db.meta["axiom"] = (name, cards)
    for lhs, rhs, note in axiom_facts(name, cards):
        db.add(lhs, rhs, f"axiom:{name}", params=cards, note=note)
    close(db)
    return DerivedModel(db, constellation(db), (f"axiom {name}",))


# ---------------------------------------------------------------------------
# replay entries for the trusted rules
# ---------------------------------------------------------------------------

def _forge_expect(cond, fid, fact, msg):
    if not cond:
        raise ReplayError(f"fact {fid} ({render(fact.lhs)} <= {render(fact.rhs)}): {msg}")


def _replay_fullgen(db, fid, fact):
    r = _recipe_of(db)
    rendered = fact.params[0]
    R = parse_expr(rendered)
    ctx = db.ctx
    length = r.length_expr(ctx)
    _forge_expect(any(s.cofinal and R in s.iterand.adds_dominating for s in r.slots),
                  fid, fact, f"no cofinal slot adds {rendered}")
    _forge_expect(ctx.uncountable(ctx.cf(length)) and ctx.leq(r.cc, ctx.cf(length)) is True,
                  fid, fact, "cofinality preconditions fail")
    O = ord_expr(length)
    if fact.rule == "forge:fullgen":
        _forge_expect(fact.key() == (R, O), fid, fact, "conclusion mismatch")
    else:
        _forge_expect(isinstance(R, Prs), fid, fact, "equivalence upgrade needs a Polish atom")
        allowed = {(O, R), (Prs("Mg"), O), (O, Prs("Mg"))}
        _forge_expect(fact.key() in allowed, fid, fact, "conclusion mismatch")


REPLAY["forge:fullgen"] = _replay_fullgen
REPLAY["forge:fullgen-prs"] = _replay_fullgen


def _replay_cohen_limit(db, fid, fact):
    r = _recipe_of(db)
    ctx = db.ctx
    length = r.length_expr(ctx)
    _forge_expect(bool(r.slots) and ctx.uncountable(ctx.cf(length)), fid, fact,
                  "limit preconditions fail")
    if fact.rule == "forge:cohen-limit":
        _forge_expect(fact.key() == (ord_expr(length), Prs("Mg")), fid, fact,
                      "conclusion mismatch")
    else:
        _forge_expect(all(s.iterand.name == "cohen" for s in r.slots), fid, fact,
                      "not a pure Cohen product")
        _forge_expect(fact.key() == (CIdeal(ctx.card(length), ALEPH1), Prs("Mg")),
                      fid, fact, "conclusion mismatch")


REPLAY["forge:cohen-limit"] = _replay_cohen_limit
REPLAY["forge:cohen-product"] = _replay_cohen_limit


def _replay_itsmallsets(db, fid, fact):
    r = _recipe_of(db)
    ctx = db.ctx
    rendered, theta = fact.params
    R = parse_expr(rendered)
    _forge_expect(isinstance(R, Prs), fid, fact, "target must be a Polish atom")
    _forge_expect(any(s.bookkeeping == (R.atom, theta) for s in r.slots), fid, fact,
                  "no such bookkeeping slot")
    length = r.length_expr(ctx)
    _forge_expect(ctx.is_regular(theta) and ctx.uncountable(theta)
                  and ctx.leq(r.cc, theta) is True
                  and ctx.leq(theta, ctx.cf(length)) is True,
                  fid, fact, "threshold preconditions fail")
    _forge_expect(fact.key() == (R, CIdeal(ctx.card(length), theta)), fid, fact,
                  "conclusion mismatch")


REPLAY["forge:itsmallsets"] = _replay_itsmallsets


def _replay_preeub(db, fid, fact):
    r = _recipe_of(db)
    ctx = db.ctx
    if fact.rule == "forge:preEUB-card":
        (mu,) = fact.params
        (anchor,) = fact.premises
        base = db.facts[anchor]
        ci = base.lhs
        _forge_expect(isinstance(ci, CIdeal), fid, fact,
                      "premise is not a covering-system fact")
        _forge_expect(ctx.is_regular(mu)
                      and ctx.leq(ci.theta, mu) is True
                      and ctx.leq(mu, ci.index) is True,
                      fid, fact, f"{mu} is not regular in range")
        _forge_expect(fact.key() == (Card(mu), base.rhs), fid, fact, "conclusion mismatch")
        return
    rendered, theta = fact.params
    R = parse_expr(rendered)
    _forge_expect(isinstance(R, Prs), fid, fact, "target must be a Polish atom")
    for slot in r.slots:
        ts = slot.iterand.good_thresholds(R.atom)
        _forge_expect(any(ctx.leq(t, theta) is True for t in ts), fid, fact,
                      f"slot {slot.iterand.token()} not {theta}-{R.atom}-good")
    length = r.length_expr(ctx)
    card = ctx.card(length)
    _forge_expect(ctx.is_regular(theta) and ctx.uncountable(theta)
                  and ctx.leq(r.cc, theta) is True and ctx.leq(theta, card) is True,
                  fid, fact, "threshold preconditions fail")
    _forge_expect(fact.key() == (CIdeal(card, theta), R), fid, fact, "conclusion mismatch")


REPLAY["forge:preEUB"] = _replay_preeub
REPLAY["forge:preEUB-card"] = _replay_preeub


def _replay_axiom(db, fid, fact):
    meta = db.meta.get("axiom")
    _forge_expect(meta is not None, fid, fact, "database carries no axiom model")
    name, cards = meta
    _forge_expect(fact.rule == f"axiom:{name}", fid, fact, "rule/model mismatch")
    _forge_expect(tuple(fact.params) == tuple(cards), fid, fact, "parameter mismatch")
    miss = axiom_requirements(db.ctx, name, tuple(cards))
    _forge_expect(not miss, fid, fact, f"hypotheses fail: {miss}")
    expected = {(l, r) for l, r, _ in axiom_facts(name, tuple(cards))}
    _forge_expect(fact.key() in expected, fid, fact, "not a conclusion of the model")


for _name in ("gksmax", "kst", "bcm"):
    REPLAY[f"axiom:{_name}"] = _replay_axiom
