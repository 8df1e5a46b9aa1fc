import random
import time
from pathlib import Path

import pytest

from assocarray import (
    adjacency,
    adjacency_oracle,
    from_finite_spec,
    incidence_arrays,
    make_builtin,
    parse_finite_algebra,
    random_graph,
    reverse,
    reverse_adjacency,
)

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = DATA_DIR / "golden"

# One instance per certified builtin family the corpus tests cover.
CERTIFIED_SPECS = (
    ("natural_arithmetic", {}),
    ("nonneg_rational_arithmetic", {}),
    ("max_min_chain", {"levels": 2}),
    ("max_min_chain", {"levels": 3}),
    ("max_min_chain", {"levels": 4}),
    ("max_min_chain", {"levels": 5}),
    ("boolean_or_and", {}),
    ("max_min_strings", {}),
)

CORPUS_GRAPHS_PER_ALGEBRA = 1000


def load_algebra_file(name):
    path = DATA_DIR / f"{name}.alg"
    spec = parse_finite_algebra(path.read_text(encoding="utf-8"), role=str(path))
    return from_finite_spec(spec, name=name)


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def naturals():
    return make_builtin("natural_arithmetic")


@pytest.fixture(scope="session")
def integers():
    return make_builtin("integer_ring")


@pytest.fixture(scope="session")
def powerset_xy():
    return make_builtin("powerset", universe=["x", "y"])


@pytest.fixture(scope="session")
def max_plus():
    return make_builtin("max_plus_realzero")


@pytest.fixture(scope="session")
def annihilator_right():
    return load_algebra_file("annihilator_right")


@pytest.fixture(scope="session")
def annihilator_left():
    return load_algebra_file("annihilator_left")


@pytest.fixture(scope="session")
def noncommutative():
    return load_algebra_file("noncommutative")


@pytest.fixture(scope="session")
def xor_and():
    return load_algebra_file("xor_and")


class CorpusEntry:
    """Everything the corpus-wide support tests need about one random graph."""

    __slots__ = ("graph", "pair", "oracle", "adj")

    def __init__(self, graph, pair, oracle, adj):
        self.graph = graph
        self.pair = pair
        self.oracle = oracle
        self.adj = adj


class Corpus:
    def __init__(self, entries, forward_seconds):
        self.entries = entries  # algebra name -> (algebra, list[CorpusEntry])
        self.forward_seconds = forward_seconds


@pytest.fixture(scope="session")
def certified_corpus():
    """1000 seeded graphs per certified builtin, with forward adjacency and
    oracle precomputed; shared across the corpus-wide support tests."""
    entries = {}
    started = time.perf_counter()
    for family, params in CERTIFIED_SPECS:
        alg = make_builtin(family, **params)
        rng = random.Random(0)
        bucket = []
        for _ in range(CORPUS_GRAPHS_PER_ALGEBRA):
            g = random_graph(alg, rng)
            pair = incidence_arrays(g, alg)
            bucket.append(
                CorpusEntry(
                    graph=g,
                    pair=pair,
                    oracle=adjacency_oracle(pair),
                    adj=adjacency(pair, alg),
                )
            )
        entries[alg.name] = (alg, bucket)
    return Corpus(entries, time.perf_counter() - started)


def reversed_oracle(entry, alg):
    return adjacency_oracle(incidence_arrays(reverse(entry.graph), alg))


def reverse_adj(entry, alg):
    return reverse_adjacency(entry.pair, alg)
