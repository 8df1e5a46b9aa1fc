import functools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from assocarray.array import (
    AssociativeArray,
    check_invariants,
    check_key,
    empty,
    equal_support,
    ewise_add,
    ewise_mult,
    from_triples,
    get,
    matmul,
    support,
    to_triples,
    transpose,
)
from assocarray.errors import ValidationError
from assocarray.values import Value


def dense_matmul(a_entries, b_entries, alg):
    """Reference product over plain dicts, written independently of the
    library: explicit loops, explicit inner-key union, left fold with no
    initial element."""
    rows = sorted({r for r, _ in a_entries})
    cols = sorted({c for _, c in b_entries})
    inner = sorted({c for _, c in a_entries} | {r for r, _ in b_entries})
    out = {}
    for i in rows:
        for j in cols:
            terms = [
                alg.times_op(
                    a_entries.get((i, k), alg.zero), b_entries.get((k, j), alg.zero)
                )
                for k in inner
            ]
            value = functools.reduce(alg.plus_op, terms) if terms else alg.zero
            if value != alg.zero:
                out[(i, j)] = value
    return out


keys_st = st.sampled_from(["a", "b", "c", "d", "e"])
nat_triples_st = st.lists(
    st.tuples(keys_st, keys_st, st.integers(min_value=0, max_value=9)),
    max_size=12,
).map(lambda ts: [(r, c, Value.number(n)) for r, c, n in ts])
int_triples_st = st.lists(
    st.tuples(keys_st, keys_st, st.integers(min_value=-5, max_value=5)),
    max_size=12,
).map(lambda ts: [(r, c, Value.number(n)) for r, c, n in ts])


def entries_of(arr):
    return {(r, c): v for r, c, v in arr}


def test_check_key_rules():
    assert check_key("a b") == "a b"
    for bad in ("", "a\tb", "a\nb", 7):
        with pytest.raises(ValidationError):
            check_key(bad)


def test_from_triples_folds_duplicates_in_order(naturals):
    arr = from_triples(
        [("r1", "c1", Value.number(2)), ("r1", "c1", Value.number(3))], naturals
    )
    assert to_triples(arr) == [("r1", "c1", Value.number(5))]


def test_from_triples_drops_cancelled_entries(integers):
    arr = from_triples(
        [("a", "b", Value.number(1)), ("a", "b", Value.number(-1))], integers
    )
    assert arr == empty()
    assert arr.row_keys == () and arr.col_keys == ()


def test_from_triples_empty(naturals):
    assert from_triples([], naturals) == empty()


def test_from_triples_rejects_bad_keys_and_values(naturals):
    with pytest.raises(ValidationError):
        from_triples([("", "c", Value.number(1))], naturals)
    with pytest.raises(ValidationError):
        from_triples([("r", "c", Value.number(-1))], naturals)


def test_get_returns_zero_off_support(naturals):
    arr = from_triples([("a", "b", Value.number(4))], naturals)
    assert get(arr, "a", "b", naturals) == Value.number(4)
    assert get(arr, "a", "z", naturals) == naturals.zero
    assert get(arr, "nope", "b", naturals) == naturals.zero


def test_keysets_are_sorted_supports(naturals):
    arr = from_triples(
        [
            ("r2", "c9", Value.number(1)),
            ("r1", "c1", Value.number(2)),
            ("r2", "c1", Value.number(3)),
        ],
        naturals,
    )
    assert arr.row_keys == ("r1", "r2")
    assert arr.col_keys == ("c1", "c9")
    check_invariants(arr, naturals)


@given(nat_triples_st)
def test_transpose_involution(triples):
    from assocarray import make_builtin

    nat = make_builtin("natural_arithmetic")
    arr = from_triples(triples, nat)
    assert transpose(transpose(arr)) == arr
    assert entries_of(transpose(arr)) == {
        (c, r): v for (r, c), v in entries_of(arr).items()
    }


def test_ewise_add_cancels(integers):
    a = from_triples([("a", "b", Value.number(1))], integers)
    b = from_triples([("a", "b", Value.number(-1))], integers)
    assert ewise_add(a, b, integers) == empty()


def test_ewise_add_disjoint_union(naturals):
    a = from_triples([("a", "b", Value.number(2))], naturals)
    b = from_triples([("c", "d", Value.number(3))], naturals)
    out = ewise_add(a, b, naturals)
    assert entries_of(out) == {
        ("a", "b"): Value.number(2),
        ("c", "d"): Value.number(3),
    }


def test_ewise_mult_intersects_for_annihilating_algebras(naturals, powerset_xy):
    a = from_triples([("a", "b", Value.tokens(["x"]))], powerset_xy)
    b = from_triples([("a", "b", Value.tokens(["y"]))], powerset_xy)
    assert ewise_mult(a, b, powerset_xy) == empty()

    c = from_triples([("a", "b", Value.number(2))], naturals)
    d = from_triples([("c", "d", Value.number(3))], naturals)
    assert ewise_mult(c, d, naturals) == empty()


def test_ewise_mult_keeps_entries_when_zero_does_not_annihilate(annihilator_right):
    v = annihilator_right.decode("v")
    a = from_triples([("a", "b", v)], annihilator_right)
    out = ewise_mult(a, empty(), annihilator_right)
    assert entries_of(out) == {("a", "b"): v}


@given(nat_triples_st, nat_triples_st)
def test_matmul_matches_dense_oracle_naturals(ts_a, ts_b):
    from assocarray import make_builtin

    nat = make_builtin("natural_arithmetic")
    a, b = from_triples(ts_a, nat), from_triples(ts_b, nat)
    got = entries_of(matmul(a, b, nat))
    want = dense_matmul(entries_of(a), entries_of(b), nat)
    assert got == want


@given(int_triples_st, int_triples_st)
def test_matmul_matches_dense_oracle_integers(ts_a, ts_b):
    from assocarray import make_builtin

    ints = make_builtin("integer_ring")
    a, b = from_triples(ts_a, ints), from_triples(ts_b, ints)
    got = entries_of(matmul(a, b, ints))
    want = dense_matmul(entries_of(a), entries_of(b), ints)
    assert got == want


def test_matmul_cancelling_weights_erase_entry(integers):
    e_out_t = from_triples(
        [("a", "k1", Value.number(1)), ("a", "k2", Value.number(-1))], integers
    )
    e_in = from_triples(
        [("k1", "b", Value.number(1)), ("k2", "b", Value.number(1))], integers
    )
    assert matmul(e_out_t, e_in, integers) == empty()


def test_matmul_identity_pattern(naturals):
    a = from_triples(
        [("r1", "x", Value.number(5)), ("r2", "y", Value.number(7))], naturals
    )
    eye = from_triples(
        [("x", "x", Value.number(1)), ("y", "y", Value.number(1))], naturals
    )
    assert matmul(a, eye, naturals) == a


def test_matmul_empty_fold_gives_zero(naturals):
    # disjoint inner keysets: every product contributes a zero term only
    a = from_triples([("r", "k1", Value.number(2))], naturals)
    b = from_triples([("k2", "c", Value.number(3))], naturals)
    assert matmul(a, b, naturals) == empty()


def test_matmul_skip_zeros_agrees_when_certified(naturals):
    a = from_triples(
        [("r", "k1", Value.number(2)), ("r", "k2", Value.number(3))], naturals
    )
    b = from_triples(
        [("k1", "c", Value.number(4)), ("k3", "c", Value.number(9))], naturals
    )
    full = matmul(a, b, naturals)
    fast = matmul(a, b, naturals, skip_zeros=True)
    assert full == fast


def test_matmul_extra_keys_expose_zero_products(annihilator_right):
    v = annihilator_right.decode("v")
    a = from_triples([("a", "k", v)], annihilator_right)
    b = from_triples([("k", "a", v)], annihilator_right)
    plain = matmul(a, b, annihilator_right)
    assert set(entries_of(plain)) == {("a", "a")}
    widened = matmul(a, b, annihilator_right, extra_col_keys=["b"])
    assert entries_of(widened) == {("a", "a"): v, ("a", "b"): v}
    # the fast path cannot see the implicit-zero column
    fast = matmul(a, b, annihilator_right, skip_zeros=True, extra_col_keys=["b"])
    assert set(entries_of(fast)) == {("a", "a")}


def test_fold_order_is_ascending_inner_keys(noncommutative):
    p, q = noncommutative.decode("p"), noncommutative.decode("q")
    a = from_triples([("a", "k1", p), ("a", "k2", q)], noncommutative)
    b = from_triples([("k1", "b", p), ("k2", "b", q)], noncommutative)
    # times keeps its second operand, plus keeps its first nonzero operand:
    # ascending inner keys fold p before q
    assert entries_of(matmul(a, b, noncommutative)) == {("a", "b"): p}

    # renaming the inner keys to reverse their order flips the result
    a2 = from_triples([("a", "k1", q), ("a", "k2", p)], noncommutative)
    b2 = from_triples([("k1", "b", q), ("k2", "b", p)], noncommutative)
    assert entries_of(matmul(a2, b2, noncommutative)) == {("a", "b"): q}


def test_support_and_equal_support(naturals):
    a = from_triples(
        [("a", "b", Value.number(5)), ("b", "a", Value.number(7))], naturals
    )
    assert support(a) == {("a", "b"), ("b", "a")}
    b = from_triples(
        [("a", "b", Value.number(1)), ("b", "a", Value.number(1))], naturals
    )
    assert equal_support(a, b)
    assert not equal_support(a, from_triples([("a", "b", Value.number(1))], naturals))


def test_check_invariants_catches_corruption(naturals):
    stored_zero = AssociativeArray(
        rows={"a": {"b": Value.number(0)}}, row_keys=("a",), col_keys=("b",)
    )
    with pytest.raises(ValidationError, match="stored zero"):
        check_invariants(stored_zero, naturals)

    empty_row = AssociativeArray(rows={"a": {}}, row_keys=("a",), col_keys=())
    with pytest.raises(ValidationError, match="no stored entries"):
        check_invariants(empty_row)

    wrong_cols = AssociativeArray(
        rows={"a": {"b": Value.number(1)}}, row_keys=("a",), col_keys=("z",)
    )
    with pytest.raises(ValidationError, match="column key set"):
        check_invariants(wrong_cols)


@given(nat_triples_st)
def test_to_triples_roundtrip(triples):
    from assocarray import make_builtin

    nat = make_builtin("natural_arithmetic")
    arr = from_triples(triples, nat)
    assert from_triples(to_triples(arr), nat) == arr
    assert to_triples(arr) == sorted(to_triples(arr))
