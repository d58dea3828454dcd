"""Building double Boolean algebras out of Boolean algebras.

The central device is a pair of embedding-retraction map pairs
(r: A -> P, e: P -> A with r.e = id, and primed versions into Q): the four
dBa operations are defined by routing through the Boolean operations of P
(meet side) and Q (join side).  ``check_theorem_conditions`` evaluates the
conditions under which that construction yields a dBa, in both the original
three-condition form and the reduced two-condition form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteAlgebra, QuasiOrder, is_boolean_algebra
from .errors import ConstructionError


class BooleanView:
    """A FiniteAlgebra used as a Boolean algebra: designated operations are
    meet, join, neg (as complement), bot, top; the second negation is ignored.
    Validated against the BOOLEAN suite on construction."""

    __slots__ = ("alg",)

    def __init__(self, alg: FiniteAlgebra):
        if not is_boolean_algebra(alg):
            raise ConstructionError("designated operations do not satisfy the BOOLEAN suite")
        self.alg = alg

    @property
    def n(self):
        return self.alg.n

    @property
    def names(self):
        return self.alg.names

    def meet(self, x, y):
        return self.alg._rows_m[x][y]

    def join(self, x, y):
        return self.alg._rows_j[x][y]

    def comp(self, x):
        return self.alg._lneg[x]

    @property
    def top(self):
        return self.alg.top

    @property
    def bot(self):
        return self.alg.bot

    def leq(self, x, y):
        return self.alg._rows_m[x][y] == x


def powerset_boolean(k: int, max_atoms: int = 4) -> BooleanView:
    """The 2**k-element powerset Boolean algebra on k atoms."""
    if k < 0 or k > max_atoms:
        raise ConstructionError(f"atom count {k} outside [0, {max_atoms}]")
    n = 1 << k
    names = [f"s{mask}" for mask in range(n)]
    full = n - 1
    meet = [[a & b for b in range(n)] for a in range(n)]
    join = [[a | b for b in range(n)] for a in range(n)]
    comp = [full & ~a for a in range(n)]
    return BooleanView(FiniteAlgebra(names, meet, join, comp, comp, full, 0))


@dataclass(frozen=True)
class RetractionPair:
    """Maps r: carrier -> target and e: target -> carrier with r.e = id."""

    carrier_size: int
    target: BooleanView
    r: tuple[int, ...]
    e: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(v) for v in self.r))
        object.__setattr__(self, "e", tuple(int(v) for v in self.e))
        if len(self.r) != self.carrier_size:
            raise ConstructionError(
                f"r must have length {self.carrier_size}, got {len(self.r)}")
        if len(self.e) != self.target.n:
            raise ConstructionError(
                f"e must have length {self.target.n}, got {len(self.e)}")
        if any(not 0 <= v < self.target.n for v in self.r):
            raise ConstructionError("r maps outside the target")
        if any(not 0 <= v < self.carrier_size for v in self.e):
            raise ConstructionError("e maps outside the carrier")
        for p in range(self.target.n):
            if self.r[self.e[p]] != p:
                raise ConstructionError(
                    f"retraction law violated: r(e({p})) = {self.r[self.e[p]]} != {p}")


def build_from_boolean_pair(
    carrier_size: int,
    p_pair: RetractionPair,
    q_pair: RetractionPair,
    names=None,
) -> FiniteAlgebra:
    """Assemble the (2,2,1,1,0,0)-algebra whose meet/neg route through P and
    whose join/opp route through Q; top is e'(top_Q), bottom e(bot_P)."""
    if p_pair.carrier_size != carrier_size or q_pair.carrier_size != carrier_size:
        raise ConstructionError("both map pairs must share the same carrier size")
    p, q = p_pair.target, q_pair.target
    r, e = p_pair.r, p_pair.e
    rp, ep = q_pair.r, q_pair.e
    rng = range(carrier_size)
    meet = [[e[p.meet(r[x], r[y])] for y in rng] for x in rng]
    join = [[ep[q.join(rp[x], rp[y])] for y in rng] for x in rng]
    neg = [e[p.comp(r[x])] for x in rng]
    opp = [ep[q.comp(rp[x])] for x in rng]
    if names is None:
        names = [f"u{i}" for i in rng]
    return FiniteAlgebra(names, meet, join, neg, opp, ep[q.top], e[p.bot])


@dataclass(frozen=True)
class ConditionReport:
    version: str  # "old" (three conditions) or "new" (two)
    commuting_ok: bool      # e.r.e'.r' = e'.r'.e.r
    absorption_ok: bool     # the two mixed absorption equations
    constants_ok: bool | None  # old-version condition on the designated constants
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        base = self.commuting_ok and self.absorption_ok
        if self.version == "old":
            return base and bool(self.constants_ok)
        return base


def check_theorem_conditions(
    carrier_size: int,
    p_pair: RetractionPair,
    q_pair: RetractionPair,
    version: str = "new",
) -> ConditionReport:
    """Evaluate the representation-theorem conditions for the map pairs.

    version="new" checks the two-condition form (round-trip commuting and the
    mixed absorptions); version="old" additionally checks that the constants
    retract onto the Boolean constants.
    """
    if version not in ("old", "new"):
        raise ConstructionError(f"version must be 'old' or 'new', got {version!r}")
    if p_pair.carrier_size != carrier_size or q_pair.carrier_size != carrier_size:
        raise ConstructionError("both map pairs must share the same carrier size")
    p, q = p_pair.target, q_pair.target
    r, e = p_pair.r, p_pair.e
    rp, ep = q_pair.r, q_pair.e
    failures = []
    commuting = True
    for x in range(carrier_size):
        if e[r[ep[rp[x]]]] != ep[rp[e[r[x]]]]:
            commuting = False
            failures.append(f"commuting: x={x}")
            break
    absorption = True
    for x in range(carrier_size):
        for y in range(carrier_size):
            lhs = e[p.meet(r[x], r[ep[q.join(rp[x], rp[y])]])]
            if lhs != e[r[x]]:
                absorption = False
                failures.append(f"absorption-meet: x={x} y={y}")
                break
            lhs2 = ep[q.join(rp[x], rp[e[p.meet(r[x], r[y])]])]
            if lhs2 != ep[rp[x]]:
                absorption = False
                failures.append(f"absorption-join: x={x} y={y}")
                break
        if not absorption:
            break
    constants = None
    if version == "old":
        constants = r[ep[q.top]] == p.top and rp[e[p.bot]] == q.bot
        if not constants:
            failures.append("constants")
    return ConditionReport(version, commuting, absorption, constants, tuple(failures))


def canonical_pairs(alg: FiniteAlgebra):
    """The embedding-retraction pairs carried by a dBa itself: retract onto the
    meet/join idempotents by squaring, embed by inclusion.  Rebuilding from
    these pairs reproduces the original tables."""
    from .algebra import extract_boolean_part, meet_idempotents, join_idempotents

    cap = sorted(meet_idempotents(alg))
    cup = sorted(join_idempotents(alg))
    p = BooleanView(extract_boolean_part(alg, "meet"))
    q = BooleanView(extract_boolean_part(alg, "join"))
    cap_pos = {e: i for i, e in enumerate(cap)}
    cup_pos = {e: i for i, e in enumerate(cup)}
    r = [cap_pos[alg._rows_m[x][x]] for x in range(alg.n)]
    e = list(cap)
    rp = [cup_pos[alg._rows_j[x][x]] for x in range(alg.n)]
    ep = list(cup)
    return (RetractionPair(alg.n, p, r, e), RetractionPair(alg.n, q, rp, ep))


def glued_sum(p: BooleanView, q: BooleanView) -> FiniteAlgebra:
    """Stack Q on top of P, identifying top_P with bot_Q.

    Case tables: meets inside P use P's meet, joins inside Q use Q's join;
    a meet with both arguments above the glue collapses to the glue, dually
    for joins below it; negation retracts everything outside P to bot_P,
    opposition everything outside Q to top_Q.
    """
    np_, nq = p.n, q.n
    size = np_ + nq - 1
    glue = p.top
    carrier_q = [j for j in range(nq) if j != q.bot]
    q_to_c = {q.bot: glue}
    for off, j in enumerate(carrier_q):
        q_to_c[j] = np_ + off
    c_to_q = {c: j for j, c in q_to_c.items()}

    def in_p(c):
        return c < np_

    def in_q(c):
        return c in c_to_q

    def meet(x, y):
        if in_p(x) and in_p(y):
            return p.meet(x, y)
        if in_q(x) and in_q(y):
            return glue
        return x if in_p(x) else y

    def join(x, y):
        if in_q(x) and in_q(y):
            return q_to_c[q.join(c_to_q[x], c_to_q[y])]
        if in_p(x) and in_p(y):
            return glue
        return y if in_q(y) else x

    def neg(x):
        return p.comp(x) if in_p(x) else p.bot

    def opp(x):
        return q_to_c[q.comp(c_to_q[x])] if in_q(x) else q_to_c[q.top]

    names = list(p.names)
    used = set(names)
    for j in carrier_q:
        nm = q.names[j]
        while nm in used:
            nm += "'"
        used.add(nm)
        names.append(nm)
    rng = range(size)
    return FiniteAlgebra(
        names,
        [[meet(x, y) for y in rng] for x in rng],
        [[join(x, y) for y in rng] for x in rng],
        [neg(x) for x in rng],
        [opp(x) for x in rng],
        q_to_c[q.top],
        p.bot,
    )


@dataclass(frozen=True)
class GeneralizedSum:
    algebra: FiniteAlgebra
    order: QuasiOrder          # the generalized linear-sum order
    p_members: frozenset       # carrier indices belonging to P
    q_members: frozenset       # carrier indices belonging to Q


def generalized_glued_sum(p: BooleanView, q: BooleanView, overlap: dict) -> GeneralizedSum:
    """Union P with Q, identifying p-element i with q-element overlap[i].

    The identification must be injective in both directions.  Operations are
    the embedding-retraction ones induced by retracting Q-only elements to
    top_P and P-only elements to bot_Q.  The returned order is the declared
    generalized linear sum: inside-P order, inside-Q order, everything in P
    below everything in Q, plus the pair (bot_Q, top_P).  It coincides with
    the algebra's own quasi-order when the carriers share at most an
    identified top_P = bot_Q glue point; with further shared elements it is
    strictly coarser (any two shared elements sit below each other), so it
    is not antisymmetric in general.
    """
    overlap = {int(k): int(v) for k, v in overlap.items()}
    if len(set(overlap.values())) != len(overlap):
        raise ConstructionError("overlap identification must be injective")
    for k, v in overlap.items():
        if not 0 <= k < p.n or not 0 <= v < q.n:
            raise ConstructionError(f"overlap pair ({k}, {v}) out of range")

    size = p.n + q.n - len(overlap)
    q_to_c = {}
    for k, v in overlap.items():
        q_to_c[v] = k
    nxt = p.n
    for j in range(q.n):
        if j not in q_to_c:
            q_to_c[j] = nxt
            nxt += 1
    c_to_q = {c: j for j, c in q_to_c.items()}

    def r(x):  # carrier -> P
        return x if x < p.n else p.top

    def rp(x):  # carrier -> Q
        return c_to_q.get(x, q.bot)

    e = list(range(p.n))
    ep = [q_to_c[j] for j in range(q.n)]

    rng = range(size)
    meet = [[e[p.meet(r(x), r(y))] for y in rng] for x in rng]
    join = [[ep[q.join(rp(x), rp(y))] for y in rng] for x in rng]
    neg = [e[p.comp(r(x))] for x in rng]
    opp = [ep[q.comp(rp(x))] for x in rng]

    names = list(p.names)
    used = set(names)
    for j in range(q.n):
        if q_to_c[j] >= p.n:
            nm = q.names[j]
            while nm in used:
                nm += "'"
            used.add(nm)
            names.append(nm)
    alg = FiniteAlgebra(names, meet, join, neg, opp, ep[q.top], e[p.bot])

    p_members = frozenset(range(p.n))
    q_members = frozenset(q_to_c.values())
    bot_q_c = q_to_c[q.bot]
    top_p_c = p.top
    rel = np.zeros((size, size), dtype=bool)
    for x in rng:
        for y in rng:
            if x in p_members and y in p_members and p.leq(x, y):
                rel[x, y] = True
            elif x in q_members and y in q_members and q.leq(c_to_q[x], c_to_q[y]):
                rel[x, y] = True
            elif x in p_members and y in q_members:
                rel[x, y] = True
            elif x == bot_q_c and y == top_p_c:
                rel[x, y] = True
    r_int = rel.astype(np.int32)
    rel.flags.writeable = False
    order = QuasiOrder(
        rel,
        reflexive=bool(rel.diagonal().all()),
        transitive=bool((((r_int @ r_int) > 0) <= rel).all()),
        antisymmetric=bool((rel & rel.T & ~np.eye(size, dtype=bool)).sum() == 0),
    )
    return GeneralizedSum(alg, order, p_members, q_members)
