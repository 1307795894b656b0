import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catgram.category import (
    SENTINEL_LEFT,
    SENTINEL_RIGHT,
    LeftDiv,
    Prim,
    RightDiv,
    count,
    count_vector,
    denominators,
    depth,
    format_category,
    format_category_string,
    numerators,
    parse_category,
    parse_category_string,
    phi,
    primitives,
    psi,
)
from catgram.errors import ParseError, ReservedNameError

from conftest import BASE, P, Q, S, all_categories

prims = st.sampled_from(BASE)
categories = st.recursive(
    prims,
    lambda inner: st.one_of(
        st.builds(RightDiv, inner, inner),
        st.builds(LeftDiv, inner, inner),
    ),
    max_leaves=12,
)


def test_parse_basic_shapes():
    assert parse_category("p") == P
    assert parse_category("p/q") == RightDiv(P, Q)
    assert parse_category("q\\p") == LeftDiv(Q, P)
    assert parse_category("(p/q)/s") == RightDiv(RightDiv(P, Q), S)
    assert parse_category("p\\(p\\p)") == LeftDiv(P, LeftDiv(P, P))
    assert parse_category("  ( p / q ) ") == RightDiv(P, Q)


@pytest.mark.parametrize("bad", ["", "  ", "p/", "/p", "p/q/s", "p\\q\\s", "(p/q", "p/q)", "p q", "p;q", "p$"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_category(bad)


def test_reserved_names():
    with pytest.raises(ReservedNameError):
        parse_category("_t/p")
    assert parse_category("_t/p", allow_reserved=True) == RightDiv(Prim("_t"), P)
    # reserved-name errors are still parse errors
    assert issubclass(ReservedNameError, ParseError)


def test_parse_string():
    s = parse_category_string("(p/p)/p; p; p; p\\(p\\p)")
    assert len(s) == 4
    assert parse_category_string("p; q;") == (P, Q)
    with pytest.raises(ParseError):
        parse_category_string("p;;q")
    with pytest.raises(ParseError):
        parse_category_string(";")


def test_format_minimal_parens():
    assert format_category(RightDiv(RightDiv(P, Q), S)) == "(p/q)/s"
    assert format_category(LeftDiv(P, LeftDiv(P, P))) == "p\\(p\\p)"
    assert format_category_string([P, RightDiv(Q, P)]) == "p; q/p"


@given(categories)
def test_round_trip(c):
    assert parse_category(format_category(c)) == c


@given(categories)
def test_hash_and_pickle(c):
    c2 = parse_category(format_category(c))
    assert hash(c) == hash(c2)
    assert pickle.loads(pickle.dumps(c)) == c


def test_structural_equality_distinguishes_direction():
    assert RightDiv(P, Q) != LeftDiv(P, Q)
    assert RightDiv(P, Q) != LeftDiv(Q, P)
    assert Prim("p") == P and Prim("p") != Q


def test_sugar():
    assert P / Q == RightDiv(P, Q)
    assert Q.under(P) == LeftDiv(Q, P)


def test_num_den_spine():
    c = parse_category("((p/q)\\s)/(q/p)")
    # spine: c -> (p/q)\s -> s
    assert numerators(c) == {parse_category("(p/q)\\s"), S}
    assert denominators(c) == {parse_category("q/p"), parse_category("p/q")}
    assert numerators(P) == set() and denominators(P) == set()
    assert numerators([RightDiv(P, Q), LeftDiv(Q, S)]) == {P, S}


def test_count_examples():
    c = parse_category("(p/q)/(p\\q)")
    # numerator p/q: p +1, q -1; denominator p\q: p -1, q +1, subtracted
    assert count(P, c) == 2
    assert count(Q, c) == -2
    assert count(P, [P, P, LeftDiv(P, Q)]) == 1
    assert count(S, c) == 0


@given(st.lists(categories, min_size=1, max_size=4))
def test_count_vector_agrees_with_count(cs):
    vec = count_vector(cs)
    for p in BASE:
        assert vec.get(p, 0) == count(p, cs)
    assert all(vec.values())


def test_depth_convention():
    assert depth(P) == 0
    assert depth(RightDiv(P, Q)) == 1
    assert depth(parse_category("(p/q)/s")) == 2


def test_enumeration_sizes():
    # 3, 3 + 2*9 = 21, 21 + 2*(21^2 - 9) = 885
    assert len(all_categories(0)) == 3
    assert len(all_categories(1)) == 21
    assert len(all_categories(2)) == 885
    assert max(depth(c) for c in all_categories(2)) == 2


def test_phi_examples():
    assert phi(P) == RightDiv(P, P)
    assert phi(parse_category("q\\p")) == parse_category("(q/q)\\(p/p)")
    assert psi(P) == LeftDiv(SENTINEL_LEFT, RightDiv(RightDiv(P, P), SENTINEL_RIGHT))
    assert format_category(psi(P)) == "_l\\((p/p)/_r)"


@given(categories)
def test_phi_zero_counts(c):
    assert count_vector(phi(c)) == {}


@given(categories, categories)
def test_phi_injective(a, b):
    assert (phi(a) == phi(b)) == (a == b)


def test_phi_injective_depth2():
    cats = all_categories(2)
    assert len({phi(c) for c in cats}) == len(cats)


@pytest.mark.slow
def test_phi_injective_depth3():
    # distinct hashes already prove distinct images; only colliding hashes
    # need a structural comparison, which keeps memory small
    by_hash = {}
    clashes = []
    for c in all_categories(3):
        h = hash(phi(c))
        if h in by_hash:
            clashes.append((by_hash[h], c))
        else:
            by_hash[h] = c
    for a, b in clashes:
        assert phi(a) != phi(b)


def test_primitives_and_origin():
    c = psi(RightDiv(P, Prim("_t")))
    assert primitives(c) == {P, Prim("_t"), SENTINEL_LEFT, SENTINEL_RIGHT}
    assert SENTINEL_LEFT.origin == "sentinel"
    assert Prim("_k1.a.0").origin == "auxiliary"
    assert P.origin == "user"


def test_empty_prim_rejected():
    with pytest.raises(ValueError):
        Prim("")


@settings(max_examples=50)
@given(categories)
def test_psi_counts(c):
    # psi wraps phi between the sentinels: l\(... / r)
    vec = count_vector(psi(c))
    assert vec == {SENTINEL_LEFT: -1, SENTINEL_RIGHT: -1}
