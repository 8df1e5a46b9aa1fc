"""Parsers and serializers for the on-disk formats.

Three formats, all UTF-8 text with LF line endings and tab-separated fields:
value triples (``row<TAB>col<TAB>value``), edge lists
(``edge_key<TAB>src<TAB>dst[<TAB>out_value[<TAB>in_value]]``), and finite
algebra operation tables.  Blank lines and lines starting with ``#`` are
skipped everywhere.  Serialization emits canonical value encodings in sorted
order so that parse and serialize round-trip byte-identically.
"""

from __future__ import annotations

from .algebra import Algebra, FiniteAlgebraSpec
from .array import AssociativeArray, Triple, check_key
from .errors import AssocArrayError, ValidationError
from .graph import EdgeRecord, Graph
from .values import Value, decode_any, encode_value, parse_token_set


class ParseError(AssocArrayError):
    """A parse failure, pinned to the first offending line.

    ``role`` names the input (usually a file path or format name), ``line_no``
    is 1-based, ``field`` describes where in the line the problem sits.
    """

    def __init__(self, role: str, line_no: int, field: str, message: str):
        self.role = role
        self.line_no = line_no
        self.field = field
        self.message = message
        super().__init__(f"{role}, line {line_no}, {field}: {message}")


def _logical_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        out.append((i, line))
    return out


def _checked_key(role: str, line_no: int, field: str, raw: str) -> str:
    try:
        return check_key(raw)
    except ValidationError as exc:
        raise ParseError(role, line_no, field, str(exc)) from None


def parse_triples(text: str, alg: Algebra, *, role: str = "triples") -> list[Triple]:
    """Parse value triples; zero-valued triples are kept (dropped on ingestion)."""
    triples: list[Triple] = []
    for line_no, line in _logical_lines(text):
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                role, line_no, "line", f"expected 3 tab-separated fields, got {len(fields)}"
            )
        row = _checked_key(role, line_no, "row key", fields[0])
        col = _checked_key(role, line_no, "column key", fields[1])
        try:
            value = alg.decode(fields[2])
        except ValueError as exc:
            raise ParseError(role, line_no, "value", str(exc)) from None
        triples.append((row, col, value))
    return triples


def parse_set_triples(text: str, *, role: str = "triples") -> list[Triple]:
    """Parse triples whose values are token sets, with no universe fixed yet."""
    triples: list[Triple] = []
    for line_no, line in _logical_lines(text):
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                role, line_no, "line", f"expected 3 tab-separated fields, got {len(fields)}"
            )
        row = _checked_key(role, line_no, "row key", fields[0])
        col = _checked_key(role, line_no, "column key", fields[1])
        try:
            value = parse_token_set(fields[2])
        except ValueError as exc:
            raise ParseError(role, line_no, "value", str(exc)) from None
        triples.append((row, col, value))
    return triples


def serialize_triples(arr: AssociativeArray) -> str:
    """Emit entries as sorted triple lines; empty array gives an empty string."""
    return "".join(f"{r}\t{c}\t{encode_value(v)}\n" for r, c, v in arr)


def parse_edge_list(text: str, alg: Algebra, *, role: str = "edge-list") -> Graph:
    """Parse edges; omitted weights default to the algebra's one.

    Repeated edge keys accumulate sources and targets into one hyperedge.
    Re-stating an endpoint the edge already has is allowed only with the same
    weight: a conflict would mean silently discarding data.
    """
    order: list[str] = []
    sources: dict[str, dict[str, Value]] = {}
    targets: dict[str, dict[str, Value]] = {}
    for line_no, line in _logical_lines(text):
        fields = line.split("\t")
        if not 3 <= len(fields) <= 5:
            raise ParseError(
                role, line_no, "line",
                f"expected 3 to 5 tab-separated fields, got {len(fields)}",
            )
        key = _checked_key(role, line_no, "edge key", fields[0])
        src = _checked_key(role, line_no, "source vertex", fields[1])
        dst = _checked_key(role, line_no, "target vertex", fields[2])
        weights = []
        for label, raw in (("out_value", fields[3:4]), ("in_value", fields[4:5])):
            if not raw:
                weights.append(alg.one)
                continue
            try:
                weights.append(alg.decode(raw[0]))
            except ValueError as exc:
                raise ParseError(role, line_no, label, str(exc)) from None
        out_w, in_w = weights
        for label, w in (("out_value", out_w), ("in_value", in_w)):
            if w == alg.zero:
                raise ParseError(role, line_no, label, "zero weight is forbidden")
        if key not in sources:
            order.append(key)
            sources[key] = {}
            targets[key] = {}
        for side, vertex, w, label in (
            (sources[key], src, out_w, "source"),
            (targets[key], dst, in_w, "target"),
        ):
            if vertex in side and side[vertex] != w:
                raise ParseError(
                    role, line_no, f"{label} vertex {vertex!r}",
                    f"conflicting weights {encode_value(side[vertex])} and {encode_value(w)}",
                )
            side[vertex] = w
    return tuple(
        EdgeRecord(key=k, sources=sources[k], targets=targets[k]) for k in order
    )


def serialize_edge_list(g: Graph) -> str:
    """Emit one line per (source, target) pair of each edge, weights explicit."""
    lines = []
    for edge in sorted(g, key=lambda e: e.key):
        for src in sorted(edge.sources):
            for dst in sorted(edge.targets):
                lines.append(
                    f"{edge.key}\t{src}\t{dst}"
                    f"\t{encode_value(edge.sources[src])}\t{encode_value(edge.targets[dst])}\n"
                )
    return "".join(lines)


def _split_top_level_commas(text: str) -> list[str]:
    # commas inside {...} belong to token-set encodings, not the list
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
            continue
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        current.append(ch)
    parts.append("".join(current))
    return parts


def parse_finite_algebra(text: str, *, role: str = "algebra") -> FiniteAlgebraSpec:
    """Parse the finite-algebra table format.

    Layout: ``elements: e1,...,en``, then ``zero: ei`` and ``one: ej``, then
    ``plus:`` followed by n rows of n comma-separated element names, then
    ``times:`` likewise.  Every table cell must name a listed element.
    """
    lines = _logical_lines(text)
    pos = 0

    def take(expected: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise ParseError(role, last + 1, "line", f"missing {expected}")
        line_no, line = lines[pos]
        pos += 1
        return line_no, line

    def directive(name: str) -> tuple[int, str]:
        line_no, line = take(f"`{name}:` line")
        head, sep, rest = line.partition(":")
        if head.strip() != name or not sep:
            raise ParseError(role, line_no, "line", f"expected `{name}:`, got {line!r}")
        return line_no, rest.strip()

    def decode_cell(line_no: int, field: str, raw: str) -> Value:
        try:
            return decode_any(raw)
        except ValueError as exc:
            raise ParseError(role, line_no, field, str(exc)) from None

    line_no, raw_elements = directive("elements")
    names = [p.strip() for p in _split_top_level_commas(raw_elements)]
    if names == [""]:
        raise ParseError(role, line_no, "elements", "element list is empty")
    elements = tuple(
        decode_cell(line_no, f"element {i + 1}", name) for i, name in enumerate(names)
    )
    index = {encode_value(v): i for i, v in enumerate(elements)}
    if len(index) != len(elements):
        raise ParseError(role, line_no, "elements", "duplicate element names")

    identities = {}
    for which in ("zero", "one"):
        d_line, raw = directive(which)
        if raw not in index:
            raise ParseError(role, d_line, which, f"{raw!r} is not a listed element")
        identities[which] = index[raw]

    tables = {}
    n = len(elements)
    for which in ("plus", "times"):
        d_line, rest = directive(which)
        if rest:
            raise ParseError(role, d_line, which, "table rows must start on the next line")
        rows = []
        for i in range(n):
            r_line, line = take(f"{which} table row {i + 1}")
            cells = [p.strip() for p in _split_top_level_commas(line)]
            if len(cells) != n:
                raise ParseError(
                    role, r_line, f"{which} row {i + 1}",
                    f"expected {n} entries, got {len(cells)}",
                )
            row = []
            for j, cell in enumerate(cells):
                if cell not in index:
                    raise ParseError(
                        role, r_line, f"{which} cell ({i + 1}, {j + 1})",
                        f"{cell!r} is not a listed element",
                    )
                row.append(index[cell])
            rows.append(tuple(row))
        tables[which] = tuple(rows)

    if pos < len(lines):
        line_no, line = lines[pos]
        raise ParseError(role, line_no, "line", f"unexpected content after tables: {line!r}")

    spec = FiniteAlgebraSpec(
        elements=elements,
        zero_index=identities["zero"],
        one_index=identities["one"],
        plus_table=tables["plus"],
        times_table=tables["times"],
    )
    spec.validate()
    return spec


def serialize_finite_algebra(spec: FiniteAlgebraSpec) -> str:
    """Emit the table format that parse_finite_algebra reads."""
    names = [encode_value(v) for v in spec.elements]
    lines = [
        "elements: " + ",".join(names),
        f"zero: {names[spec.zero_index]}",
        f"one: {names[spec.one_index]}",
    ]
    for which, table in (("plus", spec.plus_table), ("times", spec.times_table)):
        lines.append(f"{which}:")
        lines.extend(",".join(names[cell] for cell in row) for row in table)
    return "\n".join(lines) + "\n"
