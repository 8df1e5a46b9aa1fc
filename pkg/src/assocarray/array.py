"""Sparse associative arrays.

An array maps pairs of string keys to algebra values.  Only values different
from the algebra's zero are stored, and the key sets are exactly the rows and
columns that carry at least one stored entry, kept in ascending order.  Keys
are non-empty strings without tabs or line breaks so every array serializes
losslessly to tab-separated triples.

All reductions here are bare left folds in ascending key order: a single term
is returned as-is, an empty sequence of terms yields the algebra's zero, and
nothing is ever combined with an implicit leading zero.  That discipline is
what lets deliberately lawless algebras behave reproducibly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .algebra import Algebra
from .errors import ValidationError
from .values import Value, encode_value

Triple = tuple[str, str, Value]


def check_key(key: str) -> str:
    if not isinstance(key, str) or not key:
        raise ValidationError(f"key must be a non-empty string, got {key!r}")
    if "\t" in key or "\n" in key or "\r" in key:
        raise ValidationError(f"key {key!r} contains a tab or line break")
    return key


def _fold(alg: Algebra, terms: Iterable[Value]) -> Value:
    it = iter(terms)
    try:
        acc = next(it)
    except StopIteration:
        return alg.zero
    for term in it:
        acc = alg.plus_op(acc, term)
    return acc


@dataclass(frozen=True)
class AssociativeArray:
    """Immutable sparse two-key map.

    ``rows`` maps each row key to its stored columns; both levels are built
    in ascending key order.  Construct through :func:`from_triples` or the
    other module functions rather than directly.
    """

    rows: dict[str, dict[str, Value]]
    row_keys: tuple[str, ...]
    col_keys: tuple[str, ...]

    def __iter__(self) -> Iterator[Triple]:
        for r, cols in self.rows.items():
            for c, v in cols.items():
                yield (r, c, v)

    @property
    def nnz(self) -> int:
        return sum(len(cols) for cols in self.rows.values())


def _build(entries: dict[tuple[str, str], Value], alg: Algebra) -> AssociativeArray:
    # entries may still contain zeros; drop them here so every constructor
    # shares one sparsity rule.
    rows: dict[str, dict[str, Value]] = {}
    col_seen: set[str] = set()
    for r, c in sorted(entries):
        v = entries[(r, c)]
        if v == alg.zero:
            continue
        rows.setdefault(r, {})[c] = v
        col_seen.add(c)
    return AssociativeArray(
        rows=rows,
        row_keys=tuple(rows),
        col_keys=tuple(sorted(col_seen)),
    )


def empty() -> AssociativeArray:
    return AssociativeArray(rows={}, row_keys=(), col_keys=())


def from_triples(triples: Iterable[Triple], alg: Algebra) -> AssociativeArray:
    """Build an array, combining duplicate coordinates with the algebra's plus.

    Values are folded in input order, so duplicates are meaningful even when
    plus is not commutative.  Explicit zero inputs participate in the fold as
    ordinary terms; coordinates whose folded value equals zero are dropped.
    """
    entries: dict[tuple[str, str], Value] = {}
    for r, c, v in triples:
        check_key(r)
        check_key(c)
        if not alg.contains_op(v):
            raise ValidationError(
                f"value {encode_value(v)} at ({r}, {c}) is outside the carrier of {alg.name}"
            )
        coord = (r, c)
        if coord in entries:
            entries[coord] = alg.plus_op(entries[coord], v)
        else:
            entries[coord] = v
    return _build(entries, alg)


def get(arr: AssociativeArray, row: str, col: str, alg: Algebra) -> Value:
    """Return the stored value at (row, col), or the algebra's zero."""
    cols = arr.rows.get(row)
    if cols is None:
        return alg.zero
    return cols.get(col, alg.zero)


def to_triples(arr: AssociativeArray) -> list[Triple]:
    return list(arr)


def support(arr: AssociativeArray) -> frozenset[tuple[str, str]]:
    return frozenset((r, c) for r, c, _ in arr)


def equal_support(a: AssociativeArray, b: AssociativeArray) -> bool:
    return support(a) == support(b)


def transpose(arr: AssociativeArray) -> AssociativeArray:
    flipped: dict[str, dict[str, Value]] = {}
    for r, c, v in arr:
        flipped.setdefault(c, {})[r] = v
    rows = {c: dict(sorted(flipped[c].items())) for c in sorted(flipped)}
    return AssociativeArray(rows=rows, row_keys=arr.col_keys, col_keys=arr.row_keys)


def _union_coords(a: AssociativeArray, b: AssociativeArray) -> set[tuple[str, str]]:
    coords = {(r, c) for r, c, _ in a}
    coords.update((r, c) for r, c, _ in b)
    return coords


def ewise_add(a: AssociativeArray, b: AssociativeArray, alg: Algebra) -> AssociativeArray:
    """Entrywise plus over the union of the two supports.

    Coordinates stored on one side only still combine with the other side's
    implicit zero, so algebras with dishonest identities show their behavior
    here instead of being papered over.
    """
    entries = {
        (r, c): alg.plus_op(get(a, r, c, alg), get(b, r, c, alg))
        for r, c in _union_coords(a, b)
    }
    return _build(entries, alg)


def ewise_mult(a: AssociativeArray, b: AssociativeArray, alg: Algebra) -> AssociativeArray:
    """Entrywise times over the union of the two supports.

    The union (not intersection) matters: multiplying a stored value by an
    implicit zero need not vanish when zero fails to annihilate.
    """
    entries = {
        (r, c): alg.times_op(get(a, r, c, alg), get(b, r, c, alg))
        for r, c in _union_coords(a, b)
    }
    return _build(entries, alg)


def matmul(
    a: AssociativeArray,
    b: AssociativeArray,
    alg: Algebra,
    *,
    skip_zeros: bool = False,
    extra_row_keys: Iterable[str] = (),
    extra_col_keys: Iterable[str] = (),
) -> AssociativeArray:
    """Array product: C(i, j) folds a(i, k) times b(k, j) over inner keys.

    The inner key set is the union of a's columns and b's rows, walked in
    ascending order; every inner key contributes a term, with missing entries
    read as zero.  ``skip_zeros`` restricts the terms to inner keys stored on
    both sides, which changes nothing when zero annihilates and products of
    stored values never reintroduce zero-driven terms; enable it only for an
    algebra certified to satisfy those laws.

    ``extra_row_keys`` / ``extra_col_keys`` widen the candidate output
    coordinates beyond the stored key sets, so products against rows or
    columns that exist only implicitly (all zero) can still be observed.
    """
    out_rows = sorted(set(a.row_keys) | {check_key(k) for k in extra_row_keys})
    out_cols = sorted(set(b.col_keys) | {check_key(k) for k in extra_col_keys})
    entries: dict[tuple[str, str], Value] = {}

    if skip_zeros:
        for i in out_rows:
            a_row = a.rows.get(i)
            if not a_row:
                continue
            acc: dict[str, Value] = {}
            for k, a_ik in a_row.items():  # ascending: rows store sorted columns
                b_row = b.rows.get(k)
                if not b_row:
                    continue
                for j, b_kj in b_row.items():
                    term = alg.times_op(a_ik, b_kj)
                    if j in acc:
                        acc[j] = alg.plus_op(acc[j], term)
                    else:
                        acc[j] = term
            for j, v in acc.items():
                entries[(i, j)] = v
        # columns outside b's stored columns can't appear on this path
        return _build(entries, alg)

    inner = sorted(set(a.col_keys) | set(b.row_keys))
    for i in out_rows:
        a_row = a.rows.get(i, {})
        for j in out_cols:
            terms = (
                alg.times_op(a_row.get(k, alg.zero), get(b, k, j, alg))
                for k in inner
            )
            entries[(i, j)] = _fold(alg, terms)
    return _build(entries, alg)


def check_invariants(arr: AssociativeArray, alg: Algebra | None = None) -> None:
    """Raise ValidationError if the array's structural invariants are broken.

    Checks sorted unique key sets, agreement between key sets and stored
    entries, well-formed keys, and (when an algebra is given) that no stored
    value equals its zero and every stored value is a carrier member.
    """
    if list(arr.row_keys) != sorted(set(arr.row_keys)):
        raise ValidationError("row keys are not sorted and unique")
    if list(arr.col_keys) != sorted(set(arr.col_keys)):
        raise ValidationError("column keys are not sorted and unique")
    if list(arr.rows) != list(arr.row_keys):
        raise ValidationError("stored rows do not match the row key set")
    cols_seen: set[str] = set()
    for r, cols in arr.rows.items():
        check_key(r)
        if not cols:
            raise ValidationError(f"row {r!r} has no stored entries")
        if list(cols) != sorted(cols):
            raise ValidationError(f"row {r!r} columns are not sorted")
        for c, v in cols.items():
            check_key(c)
            cols_seen.add(c)
            if alg is not None:
                if not alg.contains_op(v):
                    raise ValidationError(
                        f"stored value {encode_value(v)} at ({r}, {c}) is outside the carrier"
                    )
                if v == alg.zero:
                    raise ValidationError(f"stored zero at ({r}, {c})")
    if cols_seen != set(arr.col_keys):
        raise ValidationError("column key set does not match stored entries")
