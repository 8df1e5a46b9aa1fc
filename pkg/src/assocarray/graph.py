"""Graphs as incidence arrays and their adjacency products.

A graph is a list of edge records, each carrying weighted source and target
vertex maps (hyperedges are allowed: several sources or targets per edge).
The incidence view stores two arrays with edge keys as rows and vertices as
columns; the adjacency array of the graph is the product of the transposed
out-incidence with the in-incidence, and reversing the product order yields
the adjacency of the reversed graph.

``adjacency_oracle`` answers the same question by direct enumeration and is
the ground truth the product is compared against: the two agree exactly when
the algebra passes the compliance checks, and the witness constructions in
the criteria module show each check is needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import Algebra, make_builtin
from .array import (
    AssociativeArray,
    Triple,
    check_key,
    from_triples,
    matmul,
    transpose,
)
from .errors import DomainError, PreconditionError, ValidationError
from .values import TOKENS, Value, encode_value


@dataclass(frozen=True)
class EdgeRecord:
    """One edge: a key, weighted sources, and weighted targets."""

    key: str
    sources: Mapping[str, Value]
    targets: Mapping[str, Value]


Graph = tuple[EdgeRecord, ...]


@dataclass(frozen=True)
class IncidencePair:
    """Out- and in-incidence arrays sharing one edge-key row set.

    ``e_out`` stores (edge, vertex) weights for edge sources, ``e_in`` for
    edge targets; an entry is stored iff the edge actually touches the vertex,
    so the sparsity pattern alone encodes the graph structure.
    """

    e_out: AssociativeArray
    e_in: AssociativeArray


def check_graph(g: Graph) -> None:
    """Raise ValidationError on duplicate edge keys or endpoint-less edges."""
    seen: set[str] = set()
    for edge in g:
        check_key(edge.key)
        if edge.key in seen:
            raise ValidationError(f"duplicate edge key {edge.key!r}")
        seen.add(edge.key)
        if not edge.sources:
            raise ValidationError(f"edge {edge.key!r} has no sources")
        if not edge.targets:
            raise ValidationError(f"edge {edge.key!r} has no targets")
        for vertex in (*edge.sources, *edge.targets):
            check_key(vertex)


def incidence_arrays(g: Graph, alg: Algebra) -> IncidencePair:
    """Build the incidence pair, rejecting zero or non-carrier weights.

    A zero weight is refused rather than silently dropped because a stored
    structural edge with an unstored weight would make the sparsity pattern
    lie about the graph.
    """
    check_graph(g)
    out_triples: list[Triple] = []
    in_triples: list[Triple] = []
    for edge in g:
        for side, triples in ((edge.sources, out_triples), (edge.targets, in_triples)):
            for vertex, weight in side.items():
                if not alg.contains_op(weight):
                    raise ValidationError(
                        f"edge {edge.key!r} weight {encode_value(weight)} at {vertex!r} "
                        f"is outside the carrier of {alg.name}"
                    )
                if weight == alg.zero:
                    raise ValidationError(
                        f"edge {edge.key!r} has zero weight at vertex {vertex!r}"
                    )
                triples.append((edge.key, vertex, weight))
    return IncidencePair(
        e_out=from_triples(out_triples, alg),
        e_in=from_triples(in_triples, alg),
    )


def adjacency(
    p: IncidencePair,
    alg: Algebra,
    *,
    skip_zeros: bool = False,
    extra_sources: Iterable[str] = (),
    extra_targets: Iterable[str] = (),
) -> AssociativeArray:
    """Adjacency array: row x, column y holds the fold of out(k,x) times in(k,y).

    The extra key arguments widen the evaluated coordinates to vertices with
    no stored incidences, which is how spurious adjacency entries against
    isolated vertices are made observable for non-annihilating algebras.
    """
    return matmul(
        transpose(p.e_out),
        p.e_in,
        alg,
        skip_zeros=skip_zeros,
        extra_row_keys=extra_sources,
        extra_col_keys=extra_targets,
    )


def reverse(g: Graph) -> Graph:
    """Swap every edge's sources and targets."""
    return tuple(
        EdgeRecord(key=e.key, sources=e.targets, targets=e.sources) for e in g
    )


def reverse_adjacency(p: IncidencePair, alg: Algebra, *, skip_zeros: bool = False) -> AssociativeArray:
    """Adjacency of the reversed graph, from the same incidence pair."""
    return matmul(transpose(p.e_in), p.e_out, alg, skip_zeros=skip_zeros)


def adjacency_oracle(p: IncidencePair) -> frozenset[tuple[str, str]]:
    """Adjacent (x, y) pairs by direct enumeration of stored incidences.

    Some edge must leave x and enter y.  This reads sparsity patterns only
    and never invokes the algebra's operations, so it is a fixed reference
    point no matter how ill-behaved the value algebra is.
    """
    pairs: set[tuple[str, str]] = set()
    for k, out_cols in p.e_out.rows.items():
        in_cols = p.e_in.rows.get(k)
        if not in_cols:
            continue
        for x in out_cols:
            for y in in_cols:
                pairs.add((x, y))
    return frozenset(pairs)


def random_graph(
    alg: Algebra,
    rng: random.Random,
    *,
    max_vertices: int = 8,
    max_edges: int = 20,
) -> Graph:
    """Draw a graph with nonzero weights, allowing self-loops, parallel edges,
    and the occasional hyperedge."""
    n_vertices = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(n_vertices)]
    n_edges = rng.randint(0, max_edges)
    edges = []
    for i in range(n_edges):
        sources = {rng.choice(vertices): alg.sample_nonzero(rng)}
        if rng.random() < 0.1:
            sources.setdefault(rng.choice(vertices), alg.sample_nonzero(rng))
        targets = {rng.choice(vertices): alg.sample_nonzero(rng)}
        if rng.random() < 0.1:
            targets.setdefault(rng.choice(vertices), alg.sample_nonzero(rng))
        edges.append(EdgeRecord(key=f"e{i:02d}", sources=sources, targets=targets))
    return tuple(edges)


# --- set-valued document arrays ---------------------------------------------


@dataclass(frozen=True)
class WordOverlapViolation:
    """A word present at (row_a, col_a) and (row_b, col_b) but not (row_a, col_b)."""

    row_a: str
    col_a: str
    row_b: str
    col_b: str
    word: str


def token_universe(arr: AssociativeArray) -> tuple[str, ...]:
    """Sorted union of all tokens stored anywhere in a set-valued array."""
    tokens: set[str] = set()
    for _, _, v in arr:
        if v.kind != TOKENS:
            raise DomainError(f"value {encode_value(v)} is not a token set")
        tokens.update(v.payload)
    return tuple(sorted(tokens))


def shared_words_array(documents: Mapping[str, Iterable[str]]) -> AssociativeArray:
    """Array of pairwise shared word sets: entry (i, j) holds words(i) & words(j).

    Built over all document pairs including the diagonal; pairs sharing no
    words are simply absent, since the empty set is the sparsity value.
    """
    word_sets = {doc: frozenset(words) for doc, words in documents.items()}
    universe = sorted(set().union(*word_sets.values())) if word_sets else []
    alg = make_builtin("powerset", universe=universe)
    triples: list[Triple] = [
        (i, j, Value.tokens(word_sets[i] & word_sets[j]))
        for i in word_sets
        for j in word_sets
    ]
    return from_triples(triples, alg)


def check_word_consistency(E: AssociativeArray) -> WordOverlapViolation | None:
    """Check the rectangle property of word occurrences.

    Whenever a word appears in entries (i, j) and (m, n) it must appear in
    the cross entries (i, n) and (m, j); arrays of pairwise intersections
    have this shape automatically, hand-written ones may not.  Returns None
    when consistent, else the violation earliest in coordinate order.
    """
    occurrences: dict[str, set[tuple[str, str]]] = {}
    for r, c, v in E:
        if v.kind != TOKENS:
            raise DomainError(f"entry ({r}, {c}) holds {encode_value(v)}, not a token set")
        for word in v.payload:
            occurrences.setdefault(word, set()).add((r, c))
    violations: list[tuple[str, str, str, str, str]] = []
    for word, coords in occurrences.items():
        rows = {r for r, _ in coords}
        cols = {c for _, c in coords}
        if len(coords) == len(rows) * len(cols):
            continue
        for (i, j) in coords:
            for (m, n) in coords:
                if (i, n) not in coords:
                    violations.append((i, j, m, n, word))
    if not violations:
        return None
    return WordOverlapViolation(*min(violations))


def document_adjacency(E: AssociativeArray) -> AssociativeArray:
    """Product of the transposed shared-words array with itself.

    Entry (i, j) is the union over documents k of E(k, i) & E(k, j): the words
    i and j share, as witnessed through some row.  Requires word consistency;
    an inconsistent array raises a precondition error carrying the violation.
    Works although intersection can turn two nonempty sets into the empty set,
    which is exactly the structural loophole the consistency check closes.
    """
    violation = check_word_consistency(E)
    if violation is not None:
        raise PreconditionError(
            f"word {violation.word!r} appears at ({violation.row_a}, {violation.col_a}) "
            f"and ({violation.row_b}, {violation.col_b}) but not at "
            f"({violation.row_a}, {violation.col_b})",
            violation=violation,
        )
    alg = make_builtin("powerset", universe=token_universe(E))
    return matmul(transpose(E), E, alg)


def check_transpose_identity(A: AssociativeArray, B: AssociativeArray, alg: Algebra) -> bool:
    """Whether transposing the product equals the reversed product of transposes.

    Holds for commutative times; a non-commutative table breaks it already on
    1x1 arrays.
    """
    lhs = transpose(matmul(A, B, alg))
    rhs = matmul(transpose(B), transpose(A), alg)
    return lhs == rhs
