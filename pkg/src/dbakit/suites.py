"""Axiom suites and the catalog of derived identities.

Suites:

* ``DBA23``   -- the classical 23-identity axiomatization of double Boolean
  algebras (axiom ids 1a..11b plus 12).
* ``DCORE13`` -- the reduced 13-identity system (ids 1a..6b plus 7),
  equivalent to DBA23.
* ``GDCORE11`` -- DCORE13 without the absorption pair 3a/3b.
* ``BOOLEAN`` -- ordinary Boolean-algebra identities over (&, |, ~, F, T);
  the second negation ``!`` is ignored by this suite.

``CATALOG`` lists identities that are consequences of DCORE13; every algebra
passing DCORE13 must satisfy all of them.
"""

from __future__ import annotations

from .errors import SuiteError
from .terms import AxiomSuite, eq

DBA23 = AxiomSuite(
    "DBA23",
    (
        eq("1a", "(x & x) & y", "x & y"),
        eq("1b", "(x | x) | y", "x | y"),
        eq("2a", "x & y", "y & x"),
        eq("2b", "x | y", "y | x"),
        eq("3a", "~(x & x)", "~x"),
        eq("3b", "!(x | x)", "!x"),
        eq("4a", "x & (x | y)", "x & x"),
        eq("4b", "x | (x & y)", "x | x"),
        eq("5a", "x & vee(y, z)", "vee(x & y, x & z)"),
        eq("5b", "x | wedge(y, z)", "wedge(x | y, x | z)"),
        eq("6a", "x & vee(x, y)", "x & x"),
        eq("6b", "x | wedge(x, y)", "x | x"),
        eq("7a", "~~(x & y)", "x & y"),
        eq("7b", "!!(x | y)", "x | y"),
        eq("8a", "x & ~x", "F"),
        eq("8b", "x | !x", "T"),
        eq("9a", "~T", "F"),
        eq("9b", "!F", "T"),
        eq("10a", "x & (y & z)", "(x & y) & z"),
        eq("10b", "x | (y | z)", "(x | y) | z"),
        eq("11a", "~F", "T & T"),
        eq("11b", "!T", "F | F"),
        eq("12", "(x & x) | (x & x)", "(x | x) & (x | x)"),
    ),
)

DCORE13 = AxiomSuite(
    "DCORE13",
    (
        eq("1a", "x & y", "y & x"),
        eq("1b", "x | y", "y | x"),
        eq("2a", "~(x & x)", "~x"),
        eq("2b", "!(x | x)", "!x"),
        eq("3a", "x & (x | y)", "x & x"),
        eq("3b", "x | (x & y)", "x | x"),
        eq("4a", "x & vee(y, z)", "vee(x & y, x & z)"),
        eq("4b", "x | wedge(y, z)", "wedge(x | y, x | z)"),
        eq("5a", "~~(x & y)", "x & y"),
        eq("5b", "!!(x | y)", "x | y"),
        eq("6a", "x & ~x", "F"),
        eq("6b", "x | !x", "T"),
        eq("7", "(x & x) | (x & x)", "(x | x) & (x | x)"),
    ),
)

GDCORE11 = AxiomSuite(
    "GDCORE11",
    tuple(e for e in DCORE13.equations if e.id not in ("3a", "3b")),
)

BOOLEAN = AxiomSuite(
    "BOOLEAN",
    (
        eq("comm-meet", "x & y", "y & x"),
        eq("comm-join", "x | y", "y | x"),
        eq("assoc-meet", "x & (y & z)", "(x & y) & z"),
        eq("assoc-join", "x | (y | z)", "(x | y) | z"),
        eq("dist-meet", "x & (y | z)", "(x & y) | (x & z)"),
        eq("dist-join", "x | (y & z)", "(x | y) & (x | z)"),
        eq("unit-meet", "x & T", "x"),
        eq("unit-join", "x | F", "x"),
        eq("bound-meet", "x & F", "F"),
        eq("bound-join", "x | T", "T"),
        eq("compl-meet", "x & ~x", "F"),
        eq("compl-join", "x | ~x", "T"),
    ),
)

SUITES = {s.id: s for s in (DBA23, DCORE13, GDCORE11, BOOLEAN)}

_ALIASES = {
    "dba": "DBA23",
    "dcore": "DCORE13",
    "gdcore": "GDCORE11",
    "boolean": "BOOLEAN",
}


def get_suite(name) -> AxiomSuite:
    """Look up a suite by id or alias; AxiomSuite values pass through."""
    if isinstance(name, AxiomSuite):
        return name
    key = _ALIASES.get(str(name).lower(), str(name).upper())
    if key not in SUITES:
        raise SuiteError(f"unknown axiom suite {name!r} (known: {sorted(SUITES)})")
    return SUITES[key]


# Identities derivable from DCORE13.  Two of the printed dual forms in the
# source material fail on valid algebras (wrong connective in the dual); the
# corrected duals are used here: join-pair-bot and opp-absorb-join.
CATALOG: tuple = (
    # double negations and idempotence
    eq("dneg-is-meet-square", "x & x", "~~x"),
    eq("dopp-is-join-square", "x | x", "!!x"),
    eq("meet-square-idem", "(x & y) & (x & y)", "x & y"),
    eq("join-square-idem", "(x | y) | (x | y)", "x | y"),
    eq("neg-meet-vee-split", "~(x & vee(y, z))", "~(x & y) & ~(x & z)"),
    eq("opp-join-wedge-split", "!(x | wedge(y, z))", "!(x | y) | !(x | z)"),
    eq("vee-self", "vee(x, x)", "x & x"),
    eq("wedge-self", "wedge(x, x)", "x | x"),
    eq("triple-neg", "~~~x", "~x"),
    eq("triple-opp", "!!!x", "!x"),
    eq("neg-meet-idem", "~x & ~x", "~x"),
    eq("opp-join-idem", "!x | !x", "!x"),
    # squares absorb on the left; constants under the negations
    eq("meet-square-left", "(x & x) & y", "x & y"),
    eq("join-square-left", "(x | x) | y", "x | y"),
    eq("neg-top", "~T", "F"),
    eq("opp-bot", "!F", "T"),
    eq("neg-bot", "~F", "T & T"),
    eq("opp-top", "!T", "F | F"),
    # De Morgan laws
    eq("demorgan-neg-meet", "~(x & y)", "vee(~x, ~y)"),
    eq("demorgan-opp-join", "!(x | y)", "wedge(!x, !y)"),
    eq("demorgan-neg-vee", "~vee(x, y)", "~x & ~y"),
    eq("demorgan-opp-wedge", "!wedge(x, y)", "!x | !y"),
    # meets and joins with the constants
    eq("meet-top", "x & T", "x & x"),
    eq("join-bot", "x | F", "x | x"),
    eq("neg-meet-top", "~x & T", "~x"),
    eq("opp-join-bot", "!x | F", "!x"),
    eq("meet-pair-top", "(x & y) & T", "x & y"),
    eq("join-pair-bot", "(x | y) | F", "x | y"),
    eq("neg-meet-neg-bot", "~x & ~F", "~x"),
    eq("opp-join-opp-top", "!x | !T", "!x"),
    eq("vee-bot", "vee(x, F)", "x & x"),
    eq("wedge-top", "wedge(x, T)", "x | x"),
    eq("neg-vee-bot", "vee(~x, F)", "~x"),
    eq("opp-wedge-top", "wedge(!x, T)", "!x"),
    eq("meet-pair-vee-bot", "vee(x & y, F)", "x & y"),
    eq("join-pair-wedge-top", "wedge(x | y, T)", "x | y"),
    eq("meet-vee-top", "x & vee(y, T)", "x & vee(x, y)"),
    eq("join-wedge-bot", "x | wedge(y, F)", "x | wedge(x, y)"),
    eq("bot-meet-idem", "F & F", "F"),
    eq("top-join-idem", "T | T", "T"),
    eq("bot-meet-neg-pair", "(F & ~x) & x", "F"),
    eq("top-join-opp-pair", "(T | !x) | x", "T"),
    eq("bot-meet-pair-neg", "(F & x) & ~x", "F"),
    eq("top-join-pair-opp", "(T | x) | !x", "T"),
    eq("bot-meet-opp", "F & !x", "F"),
    eq("top-join-neg", "T | ~x", "T"),
    eq("bot-meet-neg-opp", "F & ~!x", "F"),
    eq("top-join-opp-neg", "T | !~x", "T"),
    # bottom/top propagate through mixed contexts
    eq("join-skip-bot", "x | (F | y)", "x | y"),
    eq("meet-skip-top", "x & (T & y)", "x & y"),
    eq("bot-meet-then-join", "(F & x) | y", "F | y"),
    eq("top-join-then-meet", "(T | x) & y", "T & y"),
    eq("bot-meet-abs", "(F & x) & (F | y)", "F & x"),
    eq("top-join-abs", "(T | x) | (T & y)", "T | x"),
    eq("bot-meet-neg-cancel", "(F & x) & ~(x & ~y)", "(F & x) & y"),
    eq("top-join-opp-cancel", "(T | x) | !(x | !y)", "(T | x) | y"),
    eq("bot-meet-mixed-neg", "F & ~(~x & !y)", "F & x"),
    eq("top-join-mixed-opp", "T | !(!x | ~y)", "T | x"),
    eq("meet-vee-join-arg", "x & vee(y, x | z)", "x & ~(F & ~y)"),
    eq("join-wedge-meet-arg", "x | wedge(y, x & z)", "x | !(T | !y)"),
    eq("bot-absorbs-meet", "F & x", "F"),
    eq("top-absorbs-join", "T | x", "T"),
    # the absorption pair in derived form
    eq("meet-absorb-vee", "x & vee(x, y)", "x & x"),
    eq("join-absorb-wedge", "x | wedge(x, y)", "x | x"),
    # negation against meets of the same element
    eq("meet-neg-collapse", "x & ~(x & y)", "x & ~y"),
    eq("join-opp-collapse", "x | !(x | y)", "x | !y"),
    eq("meet-neg-restore", "x & ~(x & ~y)", "x & y"),
    eq("join-opp-restore", "x | !(!y | x)", "x | y"),
    eq("meet-neg-self", "x & ~(~x & y)", "x & x"),
    eq("opp-absorb-join", "x | !(!x | y)", "x | x"),
    eq("neg-swallows-meet", "~x & ~(x & y)", "~x"),
    eq("opp-swallows-join", "!x | !(x | y)", "!x"),
    eq("neg-swallows-meet3", "~x & ~((x & y) & z)", "~x"),
    eq("opp-swallows-join3", "!x | !((x | y) | z)", "!x"),
    eq("meet-inner-neg-bot", "x & (y & ~x)", "F"),
    eq("join-inner-opp-top", "x | (y | !x)", "T"),
    # three-element interactions
    eq("meet3-neg-bot", "((x & y) & z) & ~x", "F"),
    eq("join3-opp-top", "((x | y) | z) | !x", "T"),
    eq("neg-split-cases", "~(x & y) & ~(x & ~y)", "~x"),
    eq("opp-split-cases", "!(x | y) | !(!y | x)", "!x"),
    eq("meet3-unfold", "~(~(x & (y & z)) & z) & z", "x & (y & z)"),
    eq("join3-unfold", "!(!(x | (y | z)) | z) | z", "x | (y | z)"),
    eq("neg-factor-meet", "~(x & ~(y & z))", "~(x & ~y) & ~(x & ~z)"),
    eq("opp-factor-join", "!(x | !(y | z))", "!(x | !y) | !(x | !z)"),
    eq("meet3-via-neg", "x & (~(x & ~y) & ~(x & ~z))", "(y & x) & z"),
    eq("join3-via-opp", "x | (!(x | !y) | !(x | !z))", "(y | x) | z"),
    # associativity
    eq("assoc-meet", "x & (y & z)", "(x & y) & z"),
    eq("assoc-join", "x | (y | z)", "(x | y) | z"),
)

_CATALOG_IDS = [e.id for e in CATALOG]
assert len(_CATALOG_IDS) == len(set(_CATALOG_IDS)), "duplicate catalog identity id"
