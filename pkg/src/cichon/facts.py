"""Directed Tukey-order facts with provenance, and their closure.

Every fact ``lhs <= rhs`` (in the Tukey order) carries the rule that
produced it, the ids of its premise facts, the parameters the rule needs
to replay, and a one-line note naming the mathematical principle.  A
justification must replay: re-running the rule on the premises has to
reproduce the fact exactly, which `verify` checks for a whole database.

`base_facts` seeds a database with the ZFC layer: the classical diagram
edges between the meager/null ideal systems and the four Polish atoms,
the Polish characterizations of those atoms, the ideal-versus-covering
comparisons, and the fact that every Polish system lies Tukey-above the
meager covering system.

`close` runs the structural rules to a least fixpoint:

* transitivity and contravariant dualization,
* products lie above their factors,
* every regular mu in [theta, lambda] embeds into C[lambda<theta],
* C[lambda<theta] collapses onto the ideal when lambda^{<theta} = lambda
  is declared,
* monotonicity of the small-subset covering systems in both parameters,
* a limit ordinal product is Tukey-equivalent to its cofinality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .cards import ALEPH1, CONTINUUM, CardContext, OrdinalExpr
from .systems import (CIdeal, Card, CoverSys, Ideal, IdealSys, Ord, Prod,
                      R1, R2, R3, R4, SysExpr, dual, render, subexpressions,
                      validate_expr)


class FactError(Exception):
    pass


class DivergentUniverse(FactError):
    pass


class ReplayError(FactError):
    pass


@dataclass(frozen=True)
class TukeyFact:
    lhs: SysExpr
    rhs: SysExpr
    rule: str
    premises: tuple[int, ...] = ()
    params: tuple = ()
    note: str = ""

    def key(self) -> tuple[SysExpr, SysExpr]:
        return (self.lhs, self.rhs)

    def pretty(self, fid: int) -> str:
        prem = ",".join(str(p) for p in self.premises)
        return f'{fid}: {render(self.lhs)} <= {render(self.rhs)}  [{self.rule}; {prem}; "{self.note}"]'


class FactDB:
    """Ordered store of facts; ids are list positions."""

    def __init__(self, ctx: CardContext, forced_c: Optional[str] = None):
        if forced_c is not None:
            ctx.check(forced_c)
            if ctx.leq(ALEPH1, forced_c) is not True:
                raise FactError(f"forced continuum {forced_c} must be >= aleph1")
        self.ctx = ctx
        self.forced_c = forced_c
        self.facts: list[TukeyFact] = []
        self._index: dict[tuple[SysExpr, SysExpr], int] = {}
        self.closed = False
        self.meta: dict = {}

    @property
    def c_name(self) -> str:
        return self.forced_c if self.forced_c is not None else CONTINUUM

    def add(self, lhs: SysExpr, rhs: SysExpr, rule: str, premises=(),
            params=(), note: str = "") -> Optional[int]:
        """Record a fact; returns its id, or None if already present."""
        key = (lhs, rhs)
        if key in self._index:
            return None
        validate_expr(self.ctx, lhs)
        validate_expr(self.ctx, rhs)
        fact = TukeyFact(lhs, rhs, rule, tuple(premises), tuple(params), note)
        self.facts.append(fact)
        fid = len(self.facts) - 1
        self._index[key] = fid
        self.closed = False
        return fid

    def has(self, lhs: SysExpr, rhs: SysExpr) -> bool:
        return (lhs, rhs) in self._index

    def id_of(self, lhs: SysExpr, rhs: SysExpr) -> int:
        return self._index[(lhs, rhs)]

    def pairs(self) -> set[tuple[SysExpr, SysExpr]]:
        return set(self._index)

    def universe(self) -> set[SysExpr]:
        out: set[SysExpr] = set()
        for f in self.facts:
            out.update(subexpressions(f.lhs))
            out.update(subexpressions(f.rhs))
        return out

    def trace_lines(self) -> list[str]:
        return [f.pretty(i) for i, f in enumerate(self.facts)]


# ---------------------------------------------------------------------------
# seeds
# ---------------------------------------------------------------------------

NOTE_DIAGRAM = "ZFC Tukey connection between the classical diagram systems"
NOTE_PRS_EQUIV = "Polish characterization of the classical invariants"
NOTE_IDEAL_COVER = "for any ideal, the covering system and its dual lie below the ideal order"
NOTE_PRS_MEAGER = "every Polish relational system lies Tukey-above the meager covering system"


def seed_facts(ctx: CardContext, forced_c: Optional[str]) -> list[tuple[SysExpr, SysExpr, str, str]]:
    """The (lhs, rhs, rule, note) seed list for a given context."""
    cn = forced_c if forced_c is not None else CONTINUUM
    C = CIdeal(cn, ALEPH1)
    iM, iN = IdealSys("M"), IdealSys("N")
    cM, cN = CoverSys("M"), CoverSys("N")
    edges = [
        (dual(C), dual(iN)),        # aleph1 <= add(N)
        (dual(iN), cN),             # add(N) <= cov(N)
        (cN, dual(cM)),             # cov(N) <= non(M)
        (dual(cM), iM),             # non(M) <= cof(M)
        (iM, iN),                   # cof(M) <= cof(N)
        (iN, C),                    # cof(N) <= c
        (dual(iN), dual(iM)),       # add(N) <= add(M)
        (dual(iM), cM),             # add(M) <= cov(M)
        (cM, dual(cN)),             # cov(M) <= non(N)
        (dual(cN), iN),             # non(N) <= cof(N)
        (dual(iM), dual(R3)),       # add(M) <= b
        (dual(R3), dual(cM)),       # b <= non(M)
        (cM, R3),                   # cov(M) <= d
        (R3, iM),                   # d <= cof(M)
        (dual(R3), R3),             # b <= d
    ]
    out = [(a, b, "seed:diagram", NOTE_DIAGRAM) for a, b in edges]
    equivs = [(R4, cM), (cM, R4), (R2, dual(cN)), (dual(cN), R2), (R1, iN), (iN, R1)]
    out += [(a, b, "seed:prs-equiv", NOTE_PRS_EQUIV) for a, b in equivs]
    trivial = [(cM, iM), (dual(cM), iM), (cN, iN), (dual(cN), iN)]
    out += [(a, b, "seed:ideal-cover", NOTE_IDEAL_COVER) for a, b in trivial]
    prs = [(R4, R1), (R4, R2), (R4, R3)]
    out += [(a, b, "seed:prs-meager", NOTE_PRS_MEAGER) for a, b in prs]
    return out


def base_facts(ctx: CardContext, forced_c: Optional[str] = None) -> FactDB:
    db = FactDB(ctx, forced_c)
    for lhs, rhs, rule, note in seed_facts(ctx, forced_c):
        db.add(lhs, rhs, rule, note=note)
    return db


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------

DEFAULT_UNIVERSE_LIMIT = 4000


def close(db: FactDB, universe_limit: int = DEFAULT_UNIVERSE_LIMIT) -> FactDB:
    """Least fixpoint of the structural rules; every new fact gets provenance.

    Incremental worklist evaluation: each fact is processed exactly once and
    composed against lhs/rhs adjacency indexes, so closure cost is linear in
    its own output.  The resulting fact set is order-independent; only the
    provenance of facts derivable in several ways depends on discovery order.
    """
    from collections import deque

    ctx = db.ctx
    by_lhs: dict[SysExpr, list[int]] = {}
    by_rhs: dict[SysExpr, list[int]] = {}
    seen_exprs: set[SysExpr] = set()
    known_cideals: list[tuple[CIdeal, int]] = []  # (expr, witness fact id)
    queue: deque[int] = deque()

    def register(fid: int):
        f = db.facts[fid]
        by_lhs.setdefault(f.lhs, []).append(fid)
        by_rhs.setdefault(f.rhs, []).append(fid)
        queue.append(fid)

    def emit(lhs, rhs, rule, premises, params=(), note=""):
        if lhs == rhs:
            return
        fid = db.add(lhs, rhs, rule, premises, params, note)
        if fid is not None:
            register(fid)

    for fid in range(len(db.facts)):
        register(fid)

    def mono_pair(small: CIdeal, wi: int, large: CIdeal, wj: int):
        if small == large:
            return
        if (ctx.leq(large.theta, small.theta) is True
                and ctx.leq(small.theta, small.index) is True
                and ctx.leq(small.index, large.index) is True):
            emit(small, large, "rule:cideal-mono", (wi, wj),
                 note="small-subset covering systems are monotone in both parameters")

    while queue:
        i = queue.popleft()
        f = db.facts[i]

        emit(dual(f.rhs), dual(f.lhs), "rule:dual", (i,),
             note="a Tukey connection dualizes contravariantly")

        # compose with everything currently chaining through either side
        for j in list(by_lhs.get(f.rhs, ())):
            emit(f.lhs, db.facts[j].rhs, "rule:trans", (i, j),
                 note="Tukey connections compose")
        for j in list(by_rhs.get(f.lhs, ())):
            emit(db.facts[j].lhs, f.rhs, "rule:trans", (j, i),
                 note="Tukey connections compose")

        for e in sorted(set(subexpressions(f.lhs)) | set(subexpressions(f.rhs)),
                        key=render):
            if e in seen_exprs:
                continue
            seen_exprs.add(e)
            if len(seen_exprs) > universe_limit:
                raise DivergentUniverse(f"expression universe exceeds {universe_limit}")
            if isinstance(e, Prod):
                for part in e.parts:
                    emit(part, e, "rule:prod-proj", (i,),
                         note="a product system lies above each factor")
            elif isinstance(e, CIdeal):
                for mu in ctx.regulars_between(e.theta, e.index):
                    emit(Card(mu), e, "rule:card-embed", (i,), (mu,),
                         note="each regular mu in [theta,lambda] embeds into C[lambda<theta]")
                if ctx.is_regular(e.theta) and ctx.has_pow_lt(e.index, e.theta):
                    ideal = Ideal(e.index, e.theta)
                    note = "C[X<theta] matches the ideal when |X|^{<theta}=|X|"
                    emit(e, ideal, "rule:ideal-collapse", (i,), note=note)
                    emit(ideal, e, "rule:ideal-collapse", (i,), note=note)
                for other, wj in list(known_cideals):
                    mono_pair(e, i, other, wj)
                    mono_pair(other, wj, e, i)
                known_cideals.append((e, i))
            elif isinstance(e, Ord):
                cf = ctx.cf(OrdinalExpr(e.factors))
                note = "a limit ordinal is Tukey-equivalent to its cofinality"
                emit(e, Card(cf), "rule:ord-cofinality", (i,), note=note)
                emit(Card(cf), e, "rule:ord-cofinality", (i,), note=note)

    db.closed = True
    return db


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------

ReplayFn = Callable[[FactDB, int, TukeyFact], None]
REPLAY: dict[str, ReplayFn] = {}


def replays(rule: str):
    def deco(fn: ReplayFn):
        REPLAY[rule] = fn
        return fn
    return deco


def _expect(cond: bool, fid: int, fact: TukeyFact, msg: str):
    if not cond:
        raise ReplayError(f"fact {fid} ({render(fact.lhs)} <= {render(fact.rhs)}): {msg}")


def _seed_replay(db: FactDB, fid: int, fact: TukeyFact):
    expected = {(l, r, rule) for l, r, rule, _ in seed_facts(db.ctx, db.forced_c)}
    _expect((fact.lhs, fact.rhs, fact.rule) in expected, fid, fact,
            "not among the seed facts for this context")


for _rule in ("seed:diagram", "seed:prs-equiv", "seed:ideal-cover", "seed:prs-meager"):
    REPLAY[_rule] = _seed_replay


@replays("rule:dual")
def _replay_dual(db, fid, fact):
    (i,) = fact.premises
    p = db.facts[i]
    _expect(fact.lhs == dual(p.rhs) and fact.rhs == dual(p.lhs), fid, fact,
            "dualized premise does not match")


@replays("rule:trans")
def _replay_trans(db, fid, fact):
    i, j = fact.premises
    p, q = db.facts[i], db.facts[j]
    _expect(p.rhs == q.lhs, fid, fact, "premises do not chain")
    _expect(fact.lhs == p.lhs and fact.rhs == q.rhs, fid, fact,
            "composite does not match")


@replays("rule:prod-proj")
def _replay_prod(db, fid, fact):
    (i,) = fact.premises
    p = db.facts[i]
    _expect(isinstance(fact.rhs, Prod), fid, fact, "rhs is not a product")
    _expect(fact.lhs in fact.rhs.parts, fid, fact, "lhs is not a factor")
    mentioned = set(subexpressions(p.lhs)) | set(subexpressions(p.rhs))
    _expect(fact.rhs in mentioned, fid, fact, "witness premise does not mention the product")


@replays("rule:card-embed")
def _replay_card_embed(db, fid, fact):
    (i,) = fact.premises
    (mu,) = fact.params
    p = db.facts[i]
    _expect(isinstance(fact.rhs, CIdeal), fid, fact, "rhs is not a covering system")
    ci = fact.rhs
    _expect(fact.lhs == Card(mu), fid, fact, "lhs is not the stated cardinal")
    _expect(db.ctx.is_regular(mu), fid, fact, f"{mu} is not regular")
    _expect(db.ctx.leq(ci.theta, mu) is True and db.ctx.leq(mu, ci.index) is True,
            fid, fact, f"{mu} is not in [{ci.theta},{ci.index}]")
    mentioned = set(subexpressions(p.lhs)) | set(subexpressions(p.rhs))
    _expect(ci in mentioned, fid, fact, "witness premise does not mention the covering system")


@replays("rule:ideal-collapse")
def _replay_ideal_collapse(db, fid, fact):
    (i,) = fact.premises
    p = db.facts[i]
    pair = (fact.lhs, fact.rhs)
    ci = pair[0] if isinstance(pair[0], CIdeal) else pair[1]
    il = pair[0] if isinstance(pair[0], Ideal) else pair[1]
    _expect(isinstance(ci, CIdeal) and isinstance(il, Ideal), fid, fact,
            "sides are not a covering system and an ideal")
    _expect(ci.index == il.index and ci.theta == il.theta, fid, fact,
            "parameters differ")
    _expect(db.ctx.is_regular(ci.theta), fid, fact, "theta is not regular")
    _expect(db.ctx.has_pow_lt(ci.index, ci.theta), fid, fact,
            f"pow_lt({ci.index},{ci.theta}) not declared")
    mentioned = set(subexpressions(p.lhs)) | set(subexpressions(p.rhs))
    _expect(ci in mentioned, fid, fact, "witness premise does not mention the covering system")


@replays("rule:cideal-mono")
def _replay_cideal_mono(db, fid, fact):
    i, j = fact.premises
    small, large = fact.lhs, fact.rhs
    _expect(isinstance(small, CIdeal) and isinstance(large, CIdeal), fid, fact,
            "sides are not covering systems")
    ctx = db.ctx
    _expect(ctx.leq(large.theta, small.theta) is True, fid, fact, "theta' <= theta fails")
    _expect(ctx.leq(small.theta, small.index) is True, fid, fact, "theta <= |X| fails")
    _expect(ctx.leq(small.index, large.index) is True, fid, fact, "|X| <= |X'| fails")
    for idx, e in ((i, small), (j, large)):
        p = db.facts[idx]
        mentioned = set(subexpressions(p.lhs)) | set(subexpressions(p.rhs))
        _expect(e in mentioned, fid, fact, "witness premise does not mention the side")


@replays("rule:ord-cofinality")
def _replay_ord_cof(db, fid, fact):
    (i,) = fact.premises
    p = db.facts[i]
    pair = (fact.lhs, fact.rhs)
    o = pair[0] if isinstance(pair[0], Ord) else pair[1]
    c = pair[0] if isinstance(pair[0], Card) else pair[1]
    _expect(isinstance(o, Ord) and isinstance(c, Card), fid, fact,
            "sides are not an ordinal product and a cardinal")
    _expect(db.ctx.cf(OrdinalExpr(o.factors)) == c.name, fid, fact,
            "cardinal is not the cofinality")
    mentioned = set(subexpressions(p.lhs)) | set(subexpressions(p.rhs))
    _expect(o in mentioned, fid, fact, "witness premise does not mention the ordinal")


def verify(db: FactDB):
    """Replay every justification; raises ReplayError on the first failure."""
    for fid, fact in enumerate(db.facts):
        for p in fact.premises:
            if not (0 <= p < fid):
                raise ReplayError(f"fact {fid}: premise {p} does not precede it")
        fn = REPLAY.get(fact.rule)
        if fn is None:
            raise ReplayError(f"fact {fid}: unknown rule {fact.rule!r}")
        fn(db, fid, fact)


# ---------------------------------------------------------------------------
# textual trace checking
# ---------------------------------------------------------------------------

import re as _re

_TRACE_LINE = _re.compile(
    r'^(\d+): (.*?) <= (.*?)  \[([^;\]]+); ([0-9, ]*); "(.*)"\]$')

# rules whose hypotheses live outside the trace (recipe, axiom or plan
# metadata); the checker validates their shape and defers the rest
_TRUSTED_PREFIXES = ("seed:", "forge:", "axiom:", "plan:")


def parse_trace(lines) -> list[TukeyFact]:
    from .systems import parse_expr
    out = []
    for k, line in enumerate(lines):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        m = _TRACE_LINE.match(line)
        if m is None:
            raise ReplayError(f"trace line {k + 1} is malformed: {line!r}")
        fid = int(m.group(1))
        if fid != len(out):
            raise ReplayError(f"trace line {k + 1}: expected id {len(out)}, got {fid}")
        prem = tuple(int(t) for t in m.group(5).replace(" ", "").split(",") if t)
        out.append(TukeyFact(parse_expr(m.group(2)), parse_expr(m.group(3)),
                             m.group(4), prem, (), m.group(6)))
    return out


def check_trace(ctx: CardContext, lines) -> int:
    """Validate a rendered trace: premises precede their facts and every
    structural rule recomputes from the conclusions alone.  Returns the
    number of facts checked."""
    facts = parse_trace(lines)

    def err(i, msg):
        raise ReplayError(f"trace fact {i}: {msg}")

    def mentions(i, e):
        f = facts[i]
        return e in set(subexpressions(f.lhs)) | set(subexpressions(f.rhs))

    for i, f in enumerate(facts):
        for p in f.premises:
            if not 0 <= p < i:
                err(i, f"premise {p} does not precede it")
        if f.rule == "rule:trans":
            a, b = (facts[p] for p in f.premises)
            if a.rhs != b.lhs or f.lhs != a.lhs or f.rhs != b.rhs:
                err(i, "composition does not match premises")
        elif f.rule == "rule:dual":
            (p,) = (facts[p] for p in f.premises)
            if f.lhs != dual(p.rhs) or f.rhs != dual(p.lhs):
                err(i, "dualization does not match premise")
        elif f.rule == "rule:prod-proj":
            if not (isinstance(f.rhs, Prod) and f.lhs in f.rhs.parts):
                err(i, "not a projection below a product")
            if not mentions(f.premises[0], f.rhs):
                err(i, "witness premise does not mention the product")
        elif f.rule == "rule:card-embed":
            if not (isinstance(f.lhs, Card) and isinstance(f.rhs, CIdeal)):
                err(i, "shape mismatch")
            mu, ci = f.lhs.name, f.rhs
            if not (ctx.is_regular(mu) and ctx.leq(ci.theta, mu) is True
                    and ctx.leq(mu, ci.index) is True):
                err(i, f"{mu} is not a regular cardinal in [{ci.theta},{ci.index}]")
            if not mentions(f.premises[0], ci):
                err(i, "witness premise does not mention the covering system")
        elif f.rule == "rule:ideal-collapse":
            pair = (f.lhs, f.rhs)
            ci = pair[0] if isinstance(pair[0], CIdeal) else pair[1]
            il = pair[0] if isinstance(pair[0], Ideal) else pair[1]
            if not (isinstance(ci, CIdeal) and isinstance(il, Ideal)
                    and (ci.index, ci.theta) == (il.index, il.theta)):
                err(i, "shape mismatch")
            if not (ctx.is_regular(ci.theta) and ctx.has_pow_lt(ci.index, ci.theta)):
                err(i, "collapse hypothesis fails")
            if not mentions(f.premises[0], ci):
                err(i, "witness premise does not mention the covering system")
        elif f.rule == "rule:cideal-mono":
            if not (isinstance(f.lhs, CIdeal) and isinstance(f.rhs, CIdeal)):
                err(i, "shape mismatch")
            small, large = f.lhs, f.rhs
            if not (ctx.leq(large.theta, small.theta) is True
                    and ctx.leq(small.theta, small.index) is True
                    and ctx.leq(small.index, large.index) is True):
                err(i, "monotonicity hypotheses fail")
            wi, wj = f.premises
            if not (mentions(wi, small) and mentions(wj, large)):
                err(i, "witness premises do not mention the sides")
        elif f.rule == "rule:ord-cofinality":
            pair = (f.lhs, f.rhs)
            o = pair[0] if isinstance(pair[0], Ord) else pair[1]
            c = pair[0] if isinstance(pair[0], Card) else pair[1]
            if not (isinstance(o, Ord) and isinstance(c, Card)
                    and ctx.cf(OrdinalExpr(o.factors)) == c.name):
                err(i, "cofinality mismatch")
            if not mentions(f.premises[0], o):
                err(i, "witness premise does not mention the ordinal")
        elif f.rule == "forge:preEUB-card":
            (p,) = f.premises
            base = facts[p]
            if not (isinstance(base.lhs, CIdeal) and isinstance(f.lhs, Card)
                    and f.rhs == base.rhs):
                err(i, "shape mismatch against the covering-system premise")
            ci, mu = base.lhs, f.lhs.name
            if not (ctx.is_regular(mu) and ctx.leq(ci.theta, mu) is True
                    and ctx.leq(mu, ci.index) is True):
                err(i, f"{mu} escapes [{ci.theta},{ci.index}]")
        elif f.rule.startswith(_TRUSTED_PREFIXES):
            if f.premises:
                err(i, f"trusted rule {f.rule} should not cite premises")
            validate_expr(ctx, f.lhs)
            validate_expr(ctx, f.rhs)
        else:
            err(i, f"unknown rule {f.rule!r}")
    return len(facts)
