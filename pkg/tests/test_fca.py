"""Formal contexts: derivation, modal operators, pair enumeration, algebras."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dbakit.algebra import classify, passes, quasi_order
from dbakit.errors import AlgebraError
from dbakit.fca import (
    FormalContext, all_contexts, complement_context, derive, enumerate_pairs,
    modal, oo_protoconcept_algebra, pair_flags, protoconcept_algebra,
    _generated_pairs,
)


def ctx_of(rows):
    g = len(rows)
    m = len(rows[0]) if rows else 0
    return FormalContext([f"g{i}" for i in range(g)], [f"m{i}" for i in range(m)], rows)


def bits(mask, n):
    return {i for i in range(n) if mask >> i & 1}


def set_prime_objects(ctx, objs):
    """Oracle for derivation, written against the plain set definition."""
    return {m for m in range(ctx.n_attributes)
            if all(ctx.incidence[g, m] for g in objs)}


def set_prime_attributes(ctx, attrs):
    return {g for g in range(ctx.n_objects)
            if all(ctx.incidence[g, m] for m in attrs)}


_random_ctx = st.integers(1, 3).flatmap(
    lambda g: st.integers(1, 3).flatmap(
        lambda m: st.lists(st.lists(st.booleans(), min_size=m, max_size=m),
                           min_size=g, max_size=g)))


def test_derive_empty_set_gives_full_universe():
    ctx = ctx_of([[True, False], [False, True]])
    assert derive(ctx, "extent", 0) == ctx.full_attributes
    assert derive(ctx, "intent", 0) == ctx.full_objects


def test_derive_on_empty_incidence():
    ctx = ctx_of([[False, False], [False, False]])
    assert derive(ctx, "extent", 0b01) == 0  # {g0}' is empty


@settings(max_examples=60, deadline=None)
@given(_random_ctx)
def test_derive_matches_set_oracle(rows):
    ctx = ctx_of(rows)
    for a in range(ctx.full_objects + 1):
        assert bits(derive(ctx, "extent", a), ctx.n_attributes) == \
            set_prime_objects(ctx, bits(a, ctx.n_objects))
    for b in range(ctx.full_attributes + 1):
        assert bits(derive(ctx, "intent", b), ctx.n_objects) == \
            set_prime_attributes(ctx, bits(b, ctx.n_attributes))


def test_galois_connection_all_subsets_3x3():
    ctx = ctx_of([[True, False, True], [False, True, True], [True, True, False]])
    for a in range(ctx.full_objects + 1):
        ap = derive(ctx, "extent", a)
        for b in range(ctx.full_attributes + 1):
            lhs = a & ~derive(ctx, "intent", b) == 0  # A <= B'
            rhs = b & ~ap == 0                        # B <= A'
            assert lhs == rhs
        assert a & ~derive(ctx, "intent", ap) == 0        # A <= A''
        assert derive(ctx, "extent", derive(ctx, "intent", ap)) == ap  # A' = A'''


@settings(max_examples=40, deadline=None)
@given(_random_ctx)
def test_double_prime_is_a_closure_operator(rows):
    ctx = ctx_of(rows)

    def close(a):
        return derive(ctx, "intent", derive(ctx, "extent", a))

    for a in range(ctx.full_objects + 1):
        ca = close(a)
        assert a & ~ca == 0          # extensive
        assert close(ca) == ca       # idempotent
        for b in range(ctx.full_objects + 1):
            if a & ~b == 0:
                assert ca & ~close(b) == 0  # monotone


def test_modal_trivial_cases():
    ctx = ctx_of([[True, True], [True, True]])
    assert modal(ctx, "diamond_p", 0) == 0
    assert modal(ctx, "box_p", ctx.full_attributes) == ctx.full_objects


def test_modal_unknown_operator():
    with pytest.raises(AlgebraError):
        modal(ctx_of([[True]]), "sideways", 0)


@settings(max_examples=40, deadline=None)
@given(_random_ctx)
def test_translation_of_modal_operators(rows):
    # necessity in a context is complement-derivation in the complement context
    ctx = ctx_of(rows)
    comp = complement_context(ctx)
    fo, fa = ctx.full_objects, ctx.full_attributes
    for a in range(fo + 1):
        assert modal(ctx, "box_o", a) == derive(comp, "extent", fo & ~a)
        assert modal(ctx, "diamond_o", a) == fa & ~derive(comp, "extent", a)
    for b in range(fa + 1):
        assert modal(ctx, "box_p", b) == derive(comp, "intent", fa & ~b)
        assert modal(ctx, "diamond_p", b) == fo & ~derive(comp, "intent", b)


def test_complement_context_involution():
    ctx = ctx_of([[True, False], [False, False]])
    assert np.array_equal(complement_context(complement_context(ctx)).incidence,
                          ctx.incidence)
    empty = ctx_of([[False, False]])
    assert complement_context(empty).incidence.all()


# --- pair enumeration ---------------------------------------------------------

def test_top_and_bottom_pairs_are_protoconcepts():
    for rows in ([[True]], [[False]], [[True, False], [False, True]]):
        ctx = ctx_of(rows)
        protos = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "protoconcept")}
        assert (ctx.full_objects, 0) in protos
        assert (0, ctx.full_attributes) in protos


def test_inclusion_chain_concepts_semis_protos():
    for g, m in ((1, 1), (2, 2), (2, 3)):
        for ctx in all_contexts(g, m):
            concepts = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "concept")}
            semis = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "semiconcept")}
            protos = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "protoconcept")}
            assert concepts <= semis <= protos


def test_empty_2x2_protoconcept_count_against_pair_oracle():
    ctx = ctx_of([[False, False], [False, False]])
    # oracle: test the defining equation on all 16 pairs with plain sets
    count = 0
    for a_set in (set(s) for s in _powerset(range(2))):
        app = set_prime_attributes(ctx, set_prime_objects(ctx, a_set))
        for b_set in (set(s) for s in _powerset(range(2))):
            if app == set_prime_attributes(ctx, b_set):
                count += 1
    assert count == 6
    assert len(enumerate_pairs(ctx, "protoconcept")) == count


def _powerset(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield [items[i] for i in range(len(items)) if mask >> i & 1]


def test_generated_pairs_agree_with_brute_force():
    for g, m in ((1, 1), (2, 2), (3, 2)):
        for code, ctx in enumerate(all_contexts(g, m)):
            if code % 7:  # sample to keep it quick
                continue
            for kind in ("protoconcept", "semiconcept", "concept",
                         "oo_protoconcept", "oo_semiconcept"):
                brute = [(p.extent, p.intent) for p in enumerate_pairs(ctx, kind)]
                assert _generated_pairs(ctx, kind) == brute, (g, m, code, kind)


def test_pair_flags_recomputable():
    ctx = ctx_of([[True, True], [True, False]])
    for p in enumerate_pairs(ctx, "protoconcept"):
        again = pair_flags(ctx, p.extent, p.intent)
        assert again == p


# --- the pair algebras -----------------------------------------------------------

def test_1x1_full_protoconcept_algebra_is_dba():
    pa = protoconcept_algebra(ctx_of([[True]]))
    assert pa.algebra.n == 4
    assert passes(pa.algebra, "DBA23")


def test_algebra_order_is_componentwise():
    ctx = ctx_of([[True, False], [True, True]])
    pa = protoconcept_algebra(ctx)
    rel = quasi_order(pa.algebra).rel
    for i, (a, b) in enumerate(pa.pairs):
        for k, (c, d) in enumerate(pa.pairs):
            componentwise = (a & ~c == 0) and (d & ~b == 0)
            assert bool(rel[i, k]) == componentwise


def test_semiconcept_subalgebra_is_pure():
    for rows in ([[True, False], [False, False]], [[True, True], [True, False]]):
        sa = protoconcept_algebra(ctx_of(rows), "semiconcept")
        cl = classify(sa.algebra)
        assert cl.is_dba and cl.is_pure


def test_oo_protoconcept_algebra_1x1_full():
    pa = oo_protoconcept_algebra(ctx_of([[True]]))
    assert passes(pa.algebra, "DBA23")
    assert classify(pa.algebra).is_fully_contextual


def test_oo_bottom_always_present():
    for rows in ([[True]], [[False]], [[True, False], [False, True]]):
        ctx = ctx_of(rows)
        pa = oo_protoconcept_algebra(ctx)
        assert (ctx.full_objects, ctx.full_attributes) == pa.pairs[pa.algebra.bot]


def test_translation_protoconcepts_vs_oo_all_2x2():
    for ctx in all_contexts(2, 2):
        comp = complement_context(ctx)
        protos = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "protoconcept")}
        oo = {(p.extent, p.intent) for p in enumerate_pairs(comp, "oo_protoconcept")}
        assert oo == {(ctx.full_objects & ~a, b) for a, b in protos}
        semis = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "semiconcept")}
        oo_s = {(p.extent, p.intent) for p in enumerate_pairs(comp, "oo_semiconcept")}
        assert oo_s == {(ctx.full_objects & ~a, b) for a, b in semis}


def test_all_contexts_shape_and_count():
    cs = list(all_contexts(2, 2))
    assert len(cs) == 16
    assert len({c.signature() for c in cs}) == 16


def test_empty_object_side_degrades_gracefully():
    ctx = FormalContext([], ["m0", "m1"], [])
    assert derive(ctx, "extent", 0) == 0b11   # empty set of objects: all attributes
    assert derive(ctx, "intent", 0b11) == 0   # no objects exist
    pairs = enumerate_pairs(ctx, "protoconcept")
    assert [(p.extent, p.intent) for p in pairs] == [(0, 0), (0, 1), (0, 2), (0, 3)]
    pa = protoconcept_algebra(ctx)
    assert passes(pa.algebra, "DBA23")
    oo = oo_protoconcept_algebra(ctx)
    assert passes(oo.algebra, "DBA23")


def test_empty_attribute_side_degrades_gracefully():
    ctx = FormalContext(["g0"], [], [[]])
    assert derive(ctx, "intent", 0) == 0b1
    pa = protoconcept_algebra(ctx)
    assert passes(pa.algebra, "DBA23")
    assert classify(pa.algebra).is_trivial  # a single concept collapses the bounds


def test_generated_path_on_a_wide_context():
    # |G|+|M| = 13 exceeds the brute-force bound, so enumeration switches to
    # generation from closures; cross-check every returned pair against the
    # defining equation and the count against a direct sweep
    rows = [[(g * 3 + m) % 4 == 0 for m in range(11)] for g in range(2)]
    ctx = ctx_of(rows)
    pairs = enumerate_pairs(ctx, "protoconcept")
    for p in pairs:
        app = derive(ctx, "intent", derive(ctx, "extent", p.extent))
        assert app == derive(ctx, "intent", p.intent)
    direct = sum(
        1
        for a in range(ctx.full_objects + 1)
        for b in range(ctx.full_attributes + 1)
        if derive(ctx, "intent", derive(ctx, "extent", a)) == derive(ctx, "intent", b)
    )
    assert len(pairs) == direct


def test_chunked_equation_check_on_a_large_pair_algebra():
    # under full incidence every pair is a protoconcept, so a 3x4 context
    # yields 128 elements, past the compiled threshold even for two-variable
    # axioms; the chunked vector path must agree with the definition
    from dbakit.algebra import FiniteAlgebra, eval_term, satisfies_equation
    from dbakit.suites import DBA23
    rows = [[True] * 4 for _ in range(3)]
    pa = protoconcept_algebra(ctx_of(rows))
    alg = pa.algebra
    assert alg.n == 128
    assert passes(alg, "DBA23")
    meet = [list(r) for r in alg._rows_m]
    meet[alg.n - 1][0] = (meet[alg.n - 1][0] + 1) % alg.n
    broken = FiniteAlgebra(alg.names, meet, alg._rows_j, alg._lneg, alg._lopp,
                           alg.top, alg.bot)
    verdict = satisfies_equation(broken, DBA23.equation("2a"))
    assert not verdict.holds
    env = verdict.witness
    eq2a = DBA23.equation("2a")
    assert eval_term(broken, eq2a.lhs, env) != eval_term(broken, eq2a.rhs, env)


def test_translation_laws_on_sampled_4x4_contexts():
    import random
    rng = random.Random(44)
    for _ in range(8):
        rows = [[rng.random() < 0.5 for _ in range(4)] for _ in range(4)]
        ctx = ctx_of(rows)
        comp = complement_context(ctx)
        fo, fa = ctx.full_objects, ctx.full_attributes
        for a in range(fo + 1):
            assert modal(ctx, "box_o", a) == derive(comp, "extent", fo & ~a)
            assert modal(ctx, "diamond_o", a) == fa & ~derive(comp, "extent", a)
        for b in range(fa + 1):
            assert modal(ctx, "box_p", b) == derive(comp, "intent", fa & ~b)
            assert modal(ctx, "diamond_p", b) == fo & ~derive(comp, "intent", b)
        protos = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "protoconcept")}
        oo = {(p.extent, p.intent) for p in enumerate_pairs(comp, "oo_protoconcept")}
        assert oo == {(fo & ~a, b) for a, b in protos}
        semis = {(p.extent, p.intent) for p in enumerate_pairs(ctx, "semiconcept")}
        oo_s = {(p.extent, p.intent) for p in enumerate_pairs(comp, "oo_semiconcept")}
        assert oo_s == {(fo & ~a, b) for a, b in semis}
