"""Text formats for algebras (.dba) and formal contexts (.cxt).

.dba (UTF-8, '#' starts a comment)::

    elements: e1 e2 ...
    meet:
    <n rows of n element names>
    join:
    <n rows of n element names>
    neg: <n names>
    opp: <n names>
    top: <name>
    bot: <name>

.cxt::

    objects: g1 g2 ...
    attributes: m1 m2 ...
    <|G| rows over {X, .} of length |M|>

render(parse(text)) is the identity up to whitespace normalization.
"""

from __future__ import annotations

from .algebra import FiniteAlgebra
from .errors import ParseError
from .fca import FormalContext


def _logical_lines(text: str):
    """(lineno, tokens) for nonblank lines with comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_algebra(text: str) -> FiniteAlgebra:
    lines = list(_logical_lines(text))
    pos = 0
    sections: dict = {}

    def take():
        nonlocal pos
        if pos >= len(lines):
            raise ParseError("unexpected end of file")
        item = lines[pos]
        pos += 1
        return item

    def header(line, lineno):
        if ":" not in line:
            raise ParseError(f"expected 'section: ...', got {line!r}", lineno, 1)
        key, rest = line.split(":", 1)
        return key.strip(), rest.strip()

    while pos < len(lines):
        lineno, line = take()
        key, rest = header(line, lineno)
        if key in sections:
            raise ParseError(f"duplicate section {key!r}", lineno, 1)
        if key == "elements":
            sections[key] = (lineno, rest.split())
        elif key in ("meet", "join"):
            if rest:
                raise ParseError(f"{key!r} rows must start on the following line", lineno, 1)
            if "elements" not in sections:
                raise ParseError(f"{key!r} section before 'elements'", lineno, 1)
            n = len(sections["elements"][1])
            rows = []
            for _ in range(n):
                rlineno, rline = take()
                rows.append((rlineno, rline.split()))
            sections[key] = (lineno, rows)
        elif key in ("neg", "opp"):
            sections[key] = (lineno, rest.split())
        elif key in ("top", "bot"):
            sections[key] = (lineno, rest.split())
        else:
            raise ParseError(f"unknown section {key!r}", lineno, 1)

    for required in ("elements", "meet", "join", "neg", "opp", "top", "bot"):
        if required not in sections:
            raise ParseError(f"missing section {required!r}")

    names = sections["elements"][1]
    if not names:
        raise ParseError("empty element list", sections["elements"][0], 1)
    index = {nm: i for i, nm in enumerate(names)}
    if len(index) != len(names):
        raise ParseError("duplicate element name", sections["elements"][0], 1)
    n = len(names)

    def resolve(nm, lineno):
        if nm not in index:
            raise ParseError(f"unknown element name {nm!r}", lineno, 1)
        return index[nm]

    def table2(key):
        rows = []
        for rlineno, toks in sections[key][1]:
            if len(toks) != n:
                raise ParseError(
                    f"{key} row has {len(toks)} entries, expected {n}", rlineno, 1)
            rows.append([resolve(t, rlineno) for t in toks])
        return rows

    def table1(key):
        lineno, toks = sections[key]
        if len(toks) != n:
            raise ParseError(f"{key} needs {n} entries, got {len(toks)}", lineno, 1)
        return [resolve(t, lineno) for t in toks]

    def const(key):
        lineno, toks = sections[key]
        if len(toks) != 1:
            raise ParseError(f"{key} needs exactly one element name", lineno, 1)
        return resolve(toks[0], lineno)

    return FiniteAlgebra(
        names, table2("meet"), table2("join"), table1("neg"), table1("opp"),
        const("top"), const("bot"),
    )


def render_algebra(alg: FiniteAlgebra) -> str:
    nm = alg.names
    out = ["elements: " + " ".join(nm)]
    out.append("meet:")
    out.extend(" ".join(nm[v] for v in row) for row in alg._rows_m)
    out.append("join:")
    out.extend(" ".join(nm[v] for v in row) for row in alg._rows_j)
    out.append("neg: " + " ".join(nm[v] for v in alg._lneg))
    out.append("opp: " + " ".join(nm[v] for v in alg._lopp))
    out.append(f"top: {nm[alg.top]}")
    out.append(f"bot: {nm[alg.bot]}")
    return "\n".join(out) + "\n"


def parse_context(text: str) -> FormalContext:
    lines = list(_logical_lines(text))
    if len(lines) < 2:
        raise ParseError("context file needs 'objects:' and 'attributes:' lines")
    (l1, first), (l2, second) = lines[0], lines[1]
    if not first.startswith("objects:"):
        raise ParseError("first line must start with 'objects:'", l1, 1)
    if not second.startswith("attributes:"):
        raise ParseError("second line must start with 'attributes:'", l2, 1)
    objects = first.split(":", 1)[1].split()
    attributes = second.split(":", 1)[1].split()
    rows = lines[2:]
    if len(rows) != len(objects):
        raise ParseError(
            f"expected {len(objects)} incidence rows, found {len(rows)}")
    incidence = []
    for lineno, row in rows:
        row = row.replace(" ", "")
        if len(row) != len(attributes):
            raise ParseError(
                f"incidence row has length {len(row)}, expected {len(attributes)}",
                lineno, 1)
        bits = []
        for ch in row:
            if ch == "X":
                bits.append(True)
            elif ch == ".":
                bits.append(False)
            else:
                raise ParseError(f"incidence cell must be 'X' or '.', got {ch!r}", lineno, 1)
        incidence.append(bits)
    return FormalContext(objects, attributes, incidence)


def render_context(ctx: FormalContext) -> str:
    out = ["objects: " + " ".join(ctx.objects),
           "attributes: " + " ".join(ctx.attributes)]
    for g in range(ctx.n_objects):
        out.append("".join("X" if ctx.incidence[g, m] else "." for m in range(ctx.n_attributes)))
    return "\n".join(out) + "\n"
