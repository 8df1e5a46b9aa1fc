"""Algebra compliance checks and counterexample constructions.

Adjacency-by-multiplication agrees with the enumeration oracle exactly when
the algebra has no non-trivial additive inverses, no zero divisors, and an
annihilating zero (plus honest identity elements).  This module decides those
properties for a given algebra, exhaustively on finite carriers and by
sampling otherwise, and turns every failure into a small executable graph
whose computed adjacency visibly disagrees with the oracle.

Each witness graph is the minimal construction for its criterion: parallel
edges whose out-weights cancel, a self-loop whose endpoint weights multiply
to zero, and a self-loop next to an isolated vertex that a non-annihilating
zero falsely connects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import (
    CHECK_CRITERION1,
    CHECK_CRITERION2,
    CHECK_CRITERION3,
    CHECK_IDENTITY,
    Algebra,
)
from .array import AssociativeArray, get, support
from .errors import InternalConsistencyError, PreconditionError
from .graph import (
    EdgeRecord,
    Graph,
    IncidencePair,
    adjacency,
    adjacency_oracle,
    incidence_arrays,
)
from .values import Value, encode_value

DEFAULT_SAMPLES = 1000

CHECK_LABELS = {
    CHECK_IDENTITY: "identity laws",
    CHECK_CRITERION1: "no additive inverses",
    CHECK_CRITERION2: "zero-product property",
    CHECK_CRITERION3: "zero annihilates",
}


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check: pass with a coverage mode, or fail with witnesses."""

    passed: bool
    mode: str | None = None  # "exhaustive" or "sampled N"; None on fail
    witness: tuple[Value, ...] = ()

    def describe(self) -> str:
        if self.passed:
            return f"pass ({self.mode})"
        shown = ", ".join(encode_value(v) for v in self.witness)
        return f"FAIL, witness {shown}"


def _pass(alg: Algebra, samples: int) -> Verdict:
    mode = "exhaustive" if alg.is_finite else f"sampled {samples}"
    return Verdict(passed=True, mode=mode)


def _violates(alg: Algebra, check: str, witness: tuple[Value, ...]) -> bool:
    if check == CHECK_IDENTITY:
        (v,) = witness
        return (
            alg.plus_op(alg.zero, v) != v
            or alg.plus_op(v, alg.zero) != v
            or alg.times_op(alg.one, v) != v
            or alg.times_op(v, alg.one) != v
        )
    if check == CHECK_CRITERION1:
        v, w = witness
        return v != alg.zero and w != alg.zero and alg.plus_op(v, w) == alg.zero
    if check == CHECK_CRITERION2:
        v, w = witness
        return v != alg.zero and w != alg.zero and alg.times_op(v, w) == alg.zero
    if check == CHECK_CRITERION3:
        (v,) = witness
        return alg.times_op(v, alg.zero) != alg.zero or alg.times_op(alg.zero, v) != alg.zero
    raise InternalConsistencyError(f"unknown check {check!r}")


def _fail(alg: Algebra, check: str, witness: tuple[Value, ...]) -> Verdict:
    # Every fail verdict must replay: a witness that does not reproduce its
    # violation means the checker itself is broken.
    if not _violates(alg, check, witness):
        shown = ", ".join(encode_value(v) for v in witness)
        raise InternalConsistencyError(
            f"claimed {check} witness ({shown}) does not violate the law in {alg.name}"
        )
    return Verdict(passed=False, witness=witness)


def _known_failure(alg: Algebra, check: str) -> Verdict | None:
    witness = alg.known_failures.get(check)
    if witness is None:
        return None
    return _fail(alg, check, tuple(witness))


def check_identity_laws(alg: Algebra, *, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> Verdict:
    """Verify zero is a two-sided plus identity and one a two-sided times identity."""
    known = _known_failure(alg, CHECK_IDENTITY)
    if known is not None:
        return known
    if alg.is_finite:
        candidates: Iterable[Value] = alg.carrier
    else:
        rng = random.Random(seed)
        candidates = (alg.sample(rng) for _ in range(samples))
    for v in candidates:
        if _violates(alg, CHECK_IDENTITY, (v,)):
            return _fail(alg, CHECK_IDENTITY, (v,))
    return _pass(alg, samples)


def check_no_additive_inverses(alg: Algebra, *, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> Verdict:
    """Verify no two nonzero values sum to zero."""
    known = _known_failure(alg, CHECK_CRITERION1)
    if known is not None:
        return known
    if alg.is_finite:
        nonzero = [v for v in alg.carrier if v != alg.zero]
        pairs: Iterable[tuple[Value, Value]] = ((v, w) for v in nonzero for w in nonzero)
    else:
        rng = random.Random(seed)
        pairs = (
            (alg.sample_nonzero(rng), alg.sample_nonzero(rng)) for _ in range(samples)
        )
    for v, w in pairs:
        if alg.plus_op(v, w) == alg.zero:
            return _fail(alg, CHECK_CRITERION1, (v, w))
    return _pass(alg, samples)


def check_zero_product(alg: Algebra, *, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> Verdict:
    """Verify no two nonzero values multiply to zero."""
    known = _known_failure(alg, CHECK_CRITERION2)
    if known is not None:
        return known
    if alg.is_finite:
        nonzero = [v for v in alg.carrier if v != alg.zero]
        pairs: Iterable[tuple[Value, Value]] = ((v, w) for v in nonzero for w in nonzero)
    else:
        rng = random.Random(seed)
        pairs = (
            (alg.sample_nonzero(rng), alg.sample_nonzero(rng)) for _ in range(samples)
        )
    for v, w in pairs:
        if alg.times_op(v, w) == alg.zero:
            return _fail(alg, CHECK_CRITERION2, (v, w))
    return _pass(alg, samples)


def check_annihilator(alg: Algebra, *, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> Verdict:
    """Verify multiplying by zero yields zero, on both sides."""
    known = _known_failure(alg, CHECK_CRITERION3)
    if known is not None:
        return known
    if alg.is_finite:
        candidates: Iterable[Value] = alg.carrier
    else:
        rng = random.Random(seed)
        candidates = (alg.sample(rng) for _ in range(samples))
    for v in candidates:
        if _violates(alg, CHECK_CRITERION3, (v,)):
            return _fail(alg, CHECK_CRITERION3, (v,))
    return _pass(alg, samples)


@dataclass(frozen=True)
class CriteriaReport:
    """Aggregate of the four checks for one algebra.

    ``certified`` means every check passed with full confidence: exhaustively
    for finite carriers, or backed by the builtin family's hand-verified
    compliance flag.  A sampled pass on an arbitrary infinite algebra never
    certifies, since sampling cannot prove a universal statement.
    """

    algebra_name: str
    identity: Verdict
    crit1: Verdict
    crit2: Verdict
    crit3: Verdict
    certified: bool

    @property
    def identity_ok(self) -> bool:
        return self.identity.passed

    def checks(self) -> tuple[tuple[str, Verdict], ...]:
        return (
            (CHECK_IDENTITY, self.identity),
            (CHECK_CRITERION1, self.crit1),
            (CHECK_CRITERION2, self.crit2),
            (CHECK_CRITERION3, self.crit3),
        )

    def failures(self) -> tuple[str, ...]:
        return tuple(name for name, verdict in self.checks() if not verdict.passed)

    def to_machine_lines(self) -> list[str]:
        lines = []
        for name, verdict in self.checks():
            if verdict.passed:
                lines.append(f"{name}\tpass\t{verdict.mode}")
            else:
                shown = "\t".join(encode_value(v) for v in verdict.witness)
                lines.append(f"{name}\tfail\t{shown}")
        lines.append(f"certified\t{'true' if self.certified else 'false'}")
        return lines

    def to_text(self) -> str:
        lines = [f"algebra: {self.algebra_name}"]
        for name, verdict in self.checks():
            label = CHECK_LABELS[name]
            lines.append(f"{name} ({label}): {verdict.describe()}")
        lines.append(f"certified: {'yes' if self.certified else 'no'}")
        return "\n".join(lines)


def validate(alg: Algebra, *, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> CriteriaReport:
    """Run all four checks and decide certification."""
    identity = check_identity_laws(alg, samples=samples, seed=seed)
    crit1 = check_no_additive_inverses(alg, samples=samples, seed=seed)
    crit2 = check_zero_product(alg, samples=samples, seed=seed)
    crit3 = check_annihilator(alg, samples=samples, seed=seed)
    all_passed = identity.passed and crit1.passed and crit2.passed and crit3.passed
    certified = all_passed and (alg.is_finite or alg.analytically_compliant)
    return CriteriaReport(
        algebra_name=alg.name,
        identity=identity,
        crit1=crit1,
        crit2=crit2,
        crit3=crit3,
        certified=certified,
    )


# --- witness constructions ---------------------------------------------------


@dataclass(frozen=True)
class WitnessCase:
    """A graph that exposes one criterion failure through its adjacency.

    ``expected_oracle`` is what adjacency support should be; running the
    product over the failing algebra disagrees.  The extra vertex fields list
    vertices with no incident edges that the adjacency evaluation must still
    consider, which is how a non-annihilating zero's spurious entries against
    isolated vertices become visible.
    """

    criterion: int
    graph: Graph
    expected_oracle: frozenset[tuple[str, str]]
    description: str
    extra_source_vertices: tuple[str, ...] = ()
    extra_target_vertices: tuple[str, ...] = ()


def witness_additive_inverse(v: Value, w: Value, alg: Algebra) -> WitnessCase:
    """Parallel edges a->b with out-weights v and w, where v plus w is zero.

    Both edges really connect a to b, but their contributions cancel and the
    computed adjacency loses the pair.
    """
    if v == alg.zero or w == alg.zero:
        raise PreconditionError("witness values must be nonzero")
    if alg.plus(v, w) != alg.zero:
        raise PreconditionError(
            f"{encode_value(v)} plus {encode_value(w)} is not zero in {alg.name}"
        )
    if alg.one == alg.zero:
        raise PreconditionError(
            "construction needs a nonzero one for the in-weights"
        )
    graph = (
        EdgeRecord("k1", sources={"a": v}, targets={"b": alg.one}),
        EdgeRecord("k2", sources={"a": w}, targets={"b": alg.one}),
    )
    return WitnessCase(
        criterion=1,
        graph=graph,
        expected_oracle=frozenset({("a", "b")}),
        description=(
            f"parallel edges k1, k2 from a to b with out-weights {encode_value(v)} "
            f"and {encode_value(w)}; the weights cancel, erasing adjacency (a, b)"
        ),
    )


def witness_zero_product(v: Value, w: Value, alg: Algebra) -> WitnessCase:
    """Self-loop at a with out-weight v and in-weight w, where v times w is zero."""
    if v == alg.zero or w == alg.zero:
        raise PreconditionError("witness values must be nonzero")
    if alg.times(v, w) != alg.zero:
        raise PreconditionError(
            f"{encode_value(v)} times {encode_value(w)} is not zero in {alg.name}"
        )
    graph = (EdgeRecord("k", sources={"a": v}, targets={"a": w}),)
    return WitnessCase(
        criterion=2,
        graph=graph,
        expected_oracle=frozenset({("a", "a")}),
        description=(
            f"self-loop k at a with weights {encode_value(v)} out and {encode_value(w)} in; "
            f"their product vanishes, erasing adjacency (a, a)"
        ),
    )


def witness_annihilator(v: Value, alg: Algebra) -> WitnessCase:
    """Self-loop at a (both weights v) beside an isolated vertex b.

    With zero failing to annihilate, the product of v with the unstored zero
    against b is nonzero, inventing an adjacency between a and the isolated
    vertex: (a, b) when right multiplication by zero misbehaves, (b, a) when
    left multiplication does.
    """
    if v == alg.zero:
        raise PreconditionError("witness value must be nonzero")
    right_fail = alg.times(v, alg.zero) != alg.zero
    left_fail = alg.times(alg.zero, v) != alg.zero
    if not (right_fail or left_fail):
        raise PreconditionError(
            f"zero annihilates {encode_value(v)} on both sides in {alg.name}"
        )
    sides = []
    if right_fail:
        sides.append(f"{encode_value(v)} times 0 is nonzero, inventing (a, b)")
    if left_fail:
        sides.append(f"0 times {encode_value(v)} is nonzero, inventing (b, a)")
    graph = (EdgeRecord("k", sources={"a": v}, targets={"a": v}),)
    return WitnessCase(
        criterion=3,
        graph=graph,
        expected_oracle=frozenset({("a", "a")}),
        description="self-loop k at a beside isolated vertex b; " + "; ".join(sides),
        extra_source_vertices=("b",) if left_fail else (),
        extra_target_vertices=("b",) if right_fail else (),
    )


@dataclass(frozen=True)
class MismatchReport:
    """How a witness graph's computed adjacency disagrees with the oracle.

    ``missing`` lists oracle pairs absent from the computed support (their
    computed value folded to zero); ``spurious`` lists computed entries the
    oracle rejects, with the nonzero value that appeared.
    """

    incidence: IncidencePair
    adjacency: AssociativeArray
    oracle: frozenset[tuple[str, str]]
    missing: tuple[tuple[str, str, Value], ...] = field(default_factory=tuple)
    spurious: tuple[tuple[str, str, Value], ...] = field(default_factory=tuple)


def demonstrate(wc: WitnessCase, alg: Algebra) -> MismatchReport:
    """Run the witness graph and report the adjacency/oracle disagreement.

    The oracle is recomputed and compared with the case's expectation, and a
    clean run (no disagreement) raises an internal consistency error: a
    witness that fails to demonstrate anything means the checker and the
    construction have drifted apart.
    """
    pair = incidence_arrays(wc.graph, alg)
    oracle = adjacency_oracle(pair)
    if oracle != wc.expected_oracle:
        raise InternalConsistencyError(
            f"oracle {sorted(oracle)} does not match expected {sorted(wc.expected_oracle)}"
        )
    adj = adjacency(
        pair,
        alg,
        extra_sources=wc.extra_source_vertices,
        extra_targets=wc.extra_target_vertices,
    )
    sup = support(adj)
    missing = tuple((r, c, alg.zero) for r, c in sorted(oracle - sup))
    spurious = tuple((r, c, get(adj, r, c, alg)) for r, c in sorted(sup - oracle))
    if not missing and not spurious:
        raise InternalConsistencyError(
            f"witness for criterion {wc.criterion} produced no mismatch over {alg.name}"
        )
    return MismatchReport(
        incidence=pair,
        adjacency=adj,
        oracle=oracle,
        missing=missing,
        spurious=spurious,
    )
