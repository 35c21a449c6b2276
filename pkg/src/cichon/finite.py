"""Exact finite relational systems: b/d numbers, duals, products, Tukey search.

A finite relational system is an incidence matrix between a challenge set X
and a response set Y.  The two invariants are

    d_num: the least number of responses dominating every challenge
           (a minimum set cover of X by the cones {x : x rel y}), and
    b_num: the least number of challenges no single response bounds
           (a minimum hitting set of the cone complements).

Both are computed twice: a branch-and-bound solver over bitmask families
(the production path) and a plain subset-enumeration oracle (`*_brute`)
kept as an independent check for the test suite.

TOP is the "no witnessing set exists" value and is represented by
``math.inf`` so it compares and absorbs naturally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

TOP = math.inf

DEFAULT_BD_LIMIT = 12                # carrier bound for the exact b/d solvers
DEFAULT_SIZE_LIMIT = 1_000_000       # cells in a product system
DEFAULT_SEARCH_LIMIT = 100_000_000   # |X'|^|X| * |Y|^|Y'| for tukey_search


class FiniteError(Exception):
    pass


class SizeLimit(FiniteError):
    pass


class SearchSpaceTooLarge(FiniteError):
    pass


class BadParameters(FiniteError):
    pass


class NotPreorder(FiniteError):
    pass


@dataclass(frozen=True)
class FinSys:
    """Relational system on finite carriers; rows[x] is a bitmask over Y."""

    x_size: int
    y_size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.x_size < 1 or self.y_size < 1:
            raise BadParameters("carriers must be non-empty")
        if len(self.rows) != self.x_size:
            raise BadParameters("row count does not match x_size")
        mask = (1 << self.y_size) - 1
        for r in self.rows:
            if r & ~mask:
                raise BadParameters("row mask exceeds y_size")

    @staticmethod
    def from_matrix(matrix) -> "FinSys":
        rows = []
        width = len(matrix[0])
        for row in matrix:
            if len(row) != width:
                raise BadParameters("ragged relation matrix")
            rows.append(sum(1 << y for y, v in enumerate(row) if v))
        return FinSys(len(matrix), width, tuple(rows))

    def rel(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def cone(self, y: int) -> int:
        """Bitmask over X of the challenges bounded by response y."""
        return sum(1 << x for x in range(self.x_size) if self.rel(x, y))

    def cones(self) -> list[int]:
        return [self.cone(y) for y in range(self.y_size)]


# ---------------------------------------------------------------------------
# exact minimum cover / hitting set
# ---------------------------------------------------------------------------

def _greedy_cover(universe: int, sets: list[int]) -> int | float:
    covered, used = 0, 0
    while covered & universe != universe:
        best = max(sets, key=lambda s: bin(s & universe & ~covered).count("1"))
        if best & universe & ~covered == 0:
            return TOP
        covered |= best
        used += 1
    return used


def min_cover(universe: int, sets: list[int]) -> int | float:
    """Exact minimum number of sets covering universe; TOP if impossible."""
    if universe == 0:
        return 0
    total = 0
    for s in sets:
        total |= s
    if universe & ~total:
        return TOP

    upper = _greedy_cover(universe, sets)
    best = upper
    covers_of = {}  # element -> list of set indices containing it
    n_elems = universe.bit_length()
    for e in range(n_elems):
        if universe >> e & 1:
            covers_of[e] = [i for i, s in enumerate(sets) if s >> e & 1]
    seen: dict[int, int] = {}

    def search(uncovered: int, used: int):
        nonlocal best
        if uncovered == 0:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        prior = seen.get(uncovered)
        if prior is not None and prior <= used:
            return
        seen[uncovered] = used
        # branch on the uncovered element with the fewest candidate sets
        elem = min((e for e in covers_of if uncovered >> e & 1),
                   key=lambda e: len(covers_of[e]))
        for i in covers_of[elem]:
            search(uncovered & ~sets[i], used + 1)

    search(universe, 0)
    return best


def min_hitting(family: list[int], ground_size: int) -> int | float:
    """Exact minimum hitting set for a family of bitmask subsets of X."""
    if any(s == 0 for s in family):
        return TOP
    if not family:
        return 0
    best = ground_size  # hitting each set with a distinct point always works

    def search(remaining: list[int], used: int):
        nonlocal best
        if not remaining:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        target = min(remaining, key=lambda s: bin(s).count("1"))
        for x in range(ground_size):
            if target >> x & 1:
                search([s for s in remaining if not s >> x & 1], used + 1)

    search(family, 0)
    return best


def _guard(R: FinSys, size_limit):
    if size_limit is not None and max(R.x_size, R.y_size) > size_limit:
        raise SizeLimit(f"carriers {R.x_size}x{R.y_size} exceed {size_limit}")


def d_num(R: FinSys, size_limit: int | None = DEFAULT_BD_LIMIT) -> int | float:
    """Dominating number: minimum set cover of X by cones; TOP if some x uncovered."""
    _guard(R, size_limit)
    return min_cover((1 << R.x_size) - 1, R.cones())


def b_num(R: FinSys, size_limit: int | None = DEFAULT_BD_LIMIT) -> int | float:
    """Unbounding number: minimum hitting set of the cone complements."""
    _guard(R, size_limit)
    full = (1 << R.x_size) - 1
    return min_hitting([full & ~c for c in R.cones()], R.x_size)


def d_num_brute(R: FinSys) -> int | float:
    """Subset-enumeration oracle for d_num. Keep independent of min_cover."""
    cones = R.cones()
    full = (1 << R.x_size) - 1
    for k in range(0, R.y_size + 1):
        for pick in combinations(range(R.y_size), k):
            cov = 0
            for y in pick:
                cov |= cones[y]
            if cov == full:
                return k
    return TOP


def b_num_brute(R: FinSys) -> int | float:
    """Subset-enumeration oracle for b_num."""
    cones = R.cones()
    for k in range(0, R.x_size + 1):
        for pick in combinations(range(R.x_size), k):
            fmask = sum(1 << x for x in pick)
            if all(fmask & ~c for c in cones):
                return k
    return TOP


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def dual(R: FinSys) -> FinSys:
    """Swap roles and negate: rows'[y] bit x set iff not (x rel y)."""
    rows = tuple(
        sum(1 << x for x in range(R.x_size) if not R.rel(x, y))
        for y in range(R.y_size)
    )
    return FinSys(R.y_size, R.x_size, rows)


def product(R: FinSys, R2: FinSys, size_limit: int = DEFAULT_SIZE_LIMIT) -> FinSys:
    """Componentwise-conjunction product on X×X', Y×Y'."""
    xs, ys = R.x_size * R2.x_size, R.y_size * R2.y_size
    if xs * ys > size_limit:
        raise SizeLimit(f"product has {xs * ys} cells (limit {size_limit})")
    rows = []
    for x1 in range(R.x_size):
        for x2 in range(R2.x_size):
            mask = 0
            for y1 in range(R.y_size):
                if not R.rel(x1, y1):
                    continue
                base = y1 * R2.y_size
                mask |= R2.rows[x2] << base
            rows.append(mask)
    return FinSys(xs, ys, tuple(rows))


def identity_system(n: int) -> FinSys:
    return FinSys(n, n, tuple(1 << i for i in range(n)))


def le_system(n: int) -> FinSys:
    """The linear order <= on {0..n-1} as a self-relational system."""
    full = (1 << n) - 1
    return FinSys(n, n, tuple(full & ~((1 << i) - 1) for i in range(n)))


# ---------------------------------------------------------------------------
# Tukey connections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TukeyMorphism:
    """psi_minus: X -> X', psi_plus: Y' -> Y with the bound-transport law."""

    psi_minus: tuple[int, ...]
    psi_plus: tuple[int, ...]

    def validates(self, R: FinSys, R2: FinSys) -> bool:
        for x in range(R.x_size):
            for y2 in range(R2.y_size):
                if R2.rel(self.psi_minus[x], y2) and not R.rel(x, self.psi_plus[y2]):
                    return False
        return True


def tukey_search(R: FinSys, R2: FinSys,
                 search_limit: int = DEFAULT_SEARCH_LIMIT) -> TukeyMorphism | None:
    """Exhaustive search for a Tukey connection R -> R2.

    Complete: returns a morphism iff one exists.  The b/d monotonicity
    corollary is applied first as a refutation; afterwards psi_minus is
    enumerated lexicographically with per-response candidate pruning, so
    the returned witness is reproducible.
    """
    space = R2.x_size ** R.x_size * R.y_size ** R2.y_size
    if space > search_limit:
        raise SearchSpaceTooLarge(f"{space} > {search_limit}")

    # the refutation reuses the exact solvers; the search limit above is
    # the governing bound here, not the solver carrier default
    if (b_num(R2, size_limit=None) > b_num(R, size_limit=None)
            or d_num(R, size_limit=None) > d_num(R2, size_limit=None)):
        return None

    cones = R.cones()  # over X, indexed by y
    full_y = (1 << R.y_size) - 1

    # cand[y2] = bitmask of y in Y still usable as psi_plus(y2) given the
    # partial psi_minus; assigning psi_minus(x) = x2 with x2 rel' y2 forces
    # psi_plus(y2) to bound x.
    def assign(x: int, psi: list[int], cand: list[int]) -> TukeyMorphism | None:
        if x == R.x_size:
            plus = tuple((m & -m).bit_length() - 1 for m in cand)
            return TukeyMorphism(tuple(psi), plus)
        bound_mask = sum(1 << y for y in range(R.y_size) if cones[y] >> x & 1)
        for x2 in range(R2.x_size):
            new_cand = list(cand)
            ok = True
            for y2 in range(R2.y_size):
                if R2.rel(x2, y2):
                    new_cand[y2] &= bound_mask
                    if new_cand[y2] == 0:
                        ok = False
                        break
            if ok:
                psi.append(x2)
                found = assign(x + 1, psi, new_cand)
                if found is not None:
                    return found
                psi.pop()
        return None

    return assign(0, [], [full_y] * R2.y_size)


def compose(m1: TukeyMorphism, m2: TukeyMorphism) -> TukeyMorphism:
    """Composite connection R -> R'' from R -> R' and R' -> R''."""
    minus = tuple(m2.psi_minus[i] for i in m1.psi_minus)
    plus = tuple(m1.psi_plus[j] for j in m2.psi_plus)
    return TukeyMorphism(minus, plus)


def swap(m: TukeyMorphism) -> TukeyMorphism:
    """The dual connection (psi_plus, psi_minus): dual(R') -> dual(R)."""
    return TukeyMorphism(m.psi_plus, m.psi_minus)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinIdeal:
    """A downward-closed family over {0..ground_size-1} containing all singletons."""

    ground_size: int
    members: tuple[int, ...]  # bitmasks, canonically sorted

    def __post_init__(self):
        if self.ground_size < 1:
            raise BadParameters("ground set must be non-empty")
        mem = set(self.members)
        for i in range(self.ground_size):
            if (1 << i) not in mem:
                raise BadParameters(f"singleton {{{i}}} missing from ideal")
        for s in mem:
            if s >= 1 << self.ground_size:
                raise BadParameters("member exceeds ground set")
            # downward closure: dropping any one element stays inside
            t = s
            while t:
                low = t & -t
                if (s & ~low) not in mem:
                    raise BadParameters("ideal is not downward closed")
                t &= ~low

    @staticmethod
    def from_sets(ground_size: int, sets) -> "FinIdeal":
        masks = {0}
        for s in sets:
            masks.add(sum(1 << i for i in s))
        for i in range(ground_size):
            masks.add(1 << i)
        # close downward
        stack = list(masks)
        while stack:
            s = stack.pop()
            t = s
            while t:
                low = t & -t
                sub = s & ~low
                if sub not in masks:
                    masks.add(sub)
                    stack.append(sub)
                t &= ~low
        order = sorted(masks, key=lambda m: (bin(m).count("1"), m))
        return FinIdeal(ground_size, tuple(order))


def small_sets_ideal(n: int, k: int) -> FinIdeal:
    """The ideal of subsets of {0..n-1} of size < k."""
    if not 1 <= k <= n:
        raise BadParameters("need 1 <= k <= n")
    members = [m for m in range(1 << n) if bin(m).count("1") < k]
    members.sort(key=lambda m: (bin(m).count("1"), m))
    return FinIdeal(n, tuple(members))


def systems_of_ideal(I: FinIdeal) -> tuple[FinSys, FinSys]:
    """The directed system <I, I, ⊆> and the covering system <X, I, ∈>."""
    mem = I.members
    i_rows = tuple(
        sum(1 << j for j, b in enumerate(mem) if a & ~b == 0)
        for a in mem
    )
    i_sys = FinSys(len(mem), len(mem), i_rows)
    c_rows = tuple(
        sum(1 << j for j, b in enumerate(mem) if b >> x & 1)
        for x in range(I.ground_size)
    )
    c_sys = FinSys(I.ground_size, len(mem), c_rows)
    return i_sys, c_sys


def ideal_systems(n: int, k: int) -> tuple[FinSys, FinSys]:
    """Finite analog of ([X]^{<k}, ⊆) and (X, [X]^{<k}, ∈) for |X| = n."""
    return systems_of_ideal(small_sets_ideal(n, k))


def bounded_below(R: FinSys, k: int) -> bool:
    """Is every subset of X with fewer than k elements R-bounded?"""
    cones = R.cones()
    for size in range(k):
        for pick in combinations(range(R.x_size), size):
            fmask = sum(1 << x for x in pick)
            if not any(fmask & ~c == 0 for c in cones):
                return False
    return True


# ---------------------------------------------------------------------------
# directed preorders
# ---------------------------------------------------------------------------

def from_preorder(matrix) -> tuple[FinSys, bool]:
    """Self-relational system of a preorder; also reports directedness."""
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise NotPreorder("relation must be square")
    for i in range(n):
        if not matrix[i][i]:
            raise NotPreorder(f"not reflexive at {i}")
    for i in range(n):
        for j in range(n):
            if matrix[i][j]:
                for k in range(n):
                    if matrix[j][k] and not matrix[i][k]:
                        raise NotPreorder(f"not transitive at {i},{j},{k}")
    sys = FinSys.from_matrix(matrix)
    directed = all(
        any(sys.rel(i, z) and sys.rel(j, z) for z in range(n))
        for i in range(n) for j in range(n)
    )
    return sys, directed


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def parse_finsys(text: str) -> FinSys:
    """First line '<x_size> <y_size>', then x_size rows of 0/1 characters."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise BadParameters("empty system file")
    head = lines[0].split()
    if len(head) != 2 or not all(tok.isdigit() for tok in head):
        raise BadParameters("header must be '<x_size> <y_size>'")
    xs, ys = int(head[0]), int(head[1])
    if len(lines) - 1 != xs:
        raise BadParameters(f"expected {xs} relation rows, got {len(lines) - 1}")
    matrix = []
    for ln in lines[1:]:
        if len(ln) != ys or any(ch not in "01" for ch in ln):
            raise BadParameters(f"bad relation row {ln!r}")
        matrix.append([ch == "1" for ch in ln])
    return FinSys.from_matrix(matrix)


def format_finsys(R: FinSys) -> str:
    out = [f"{R.x_size} {R.y_size}"]
    for x in range(R.x_size):
        out.append("".join("1" if R.rel(x, y) else "0" for y in range(R.y_size)))
    return "\n".join(out) + "\n"


def parse_finideal(text: str) -> FinIdeal:
    """First line the ground size, then one subset per line as sorted indices."""
    raw = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    raw = [ln.strip() for ln in raw]
    if not raw or not raw[0] or not raw[0].isdigit():
        raise BadParameters("ideal file must start with the ground size")
    n = int(raw[0])
    sets = []
    for ln in raw[1:]:
        if not ln:
            sets.append(())  # the empty set
            continue
        if not all(tok.isdigit() for tok in ln.split()):
            raise BadParameters(f"bad member line {ln!r}")
        sets.append(tuple(int(tok) for tok in ln.split()))
    return FinIdeal.from_sets(n, sets)


def format_finideal(I: FinIdeal) -> str:
    out = [str(I.ground_size)]
    for m in I.members:
        if m == 0:
            continue
        out.append(" ".join(str(i) for i in range(I.ground_size) if m >> i & 1))
    return "\n".join(out) + "\n"
