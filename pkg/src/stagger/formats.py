"""Parsing and serialization: module expressions and JSON codecs.

Grammar for module expressions (whitespace insensitive):

    expr  :=  '0'  |  term ('+' term)*
    term  :=  'F(' int ')'  |  'T(' int ',' int ')'  |  'V(' int ')'

V(n) is accepted as sugar for T(n,1); printing always uses the F/T form.
Formal objects read either a bare expression (placed in degree 0) or the
degree-annotated form '[k] expr; [k'] expr'.

Presentations travel as JSON {"generators": [w_i], "relations": rows},
where rows has one list per generator and each cell is null or
{"c": rational-string, "k": exponent}; the exponent is redundant (it is
forced by homogeneity) and is cross-checked on input.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Dict, List, Optional, Tuple

from .grmod import (
    GradedModule,
    MonoMatrix,
    Presentation,
    fmt_module,
    gm,
)
from .derived import ChainComplex, FormalObject, GradedMap, fmt_formal


class ParseError(ValueError):
    """Malformed input, annotated with a 1-based character position."""

    def __init__(self, msg: str, pos: int):
        super().__init__("position %d: %s" % (pos, msg))
        self.pos = pos


# ---------------------------------------------------------------------------
# module expressions
# ---------------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    @property
    def pos(self) -> int:
        return self.i + 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.i >= len(self.text) or self.text[self.i] != ch:
            raise ParseError("expected '%s'" % ch, self.pos)
        self.i += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.i
        if self.i < len(self.text) and self.text[self.i] in "+-":
            self.i += 1
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start or not self.text[start:self.i].lstrip("+-"):
            raise ParseError("expected an integer", start + 1)
        return int(self.text[start:self.i])

    def done(self) -> bool:
        self.skip_ws()
        return self.i >= len(self.text)


def _parse_term(sc: _Scanner) -> Tuple[str, int, int]:
    sc.skip_ws()
    pos = sc.pos
    head = sc.peek()
    if head not in ("F", "T", "V"):
        raise ParseError("expected F(..), T(..,..), V(..), or 0", pos)
    sc.i += 1
    sc.expect("(")
    a = sc.integer()
    if head == "T":
        sc.expect(",")
        n = sc.integer()
        if n < 1:
            raise ParseError("torsion length must be >= 1", pos)
        sc.expect(")")
        return ("T", a, n)
    sc.expect(")")
    if head == "V":
        return ("T", a, 1)
    return ("F", a, 0)


def parse_module(text: str) -> GradedModule:
    """Parse a module expression; raises ParseError with a position."""
    sc = _Scanner(text)
    if sc.peek() == "0":
        sc.i += 1
        if not sc.done():
            raise ParseError("unexpected input after '0'", sc.pos)
        return gm([])
    if sc.done():
        raise ParseError("empty expression", sc.pos)
    free: List[int] = []
    tors: List[Tuple[int, int]] = []
    while True:
        kind, a, n = _parse_term(sc)
        if kind == "F":
            free.append(a)
        else:
            tors.append((a, n))
        if sc.done():
            break
        sc.expect("+")
    return gm(free, tors)


def parse_formal(text: str, default_degree: int = 0) -> FormalObject:
    """Parse a formal object: '[k] expr; ...' or a bare expression."""
    if "[" not in text:
        m = parse_module(text)
        return FormalObject({default_degree: m} if not m.is_zero else {})
    comps: Dict[int, GradedModule] = {}
    offset = 0
    for chunk in text.split(";"):
        piece = chunk.strip()
        if not piece:
            offset += len(chunk) + 1
            continue
        sc = _Scanner(chunk)
        try:
            sc.expect("[")
            k = sc.integer()
            sc.expect("]")
        except ParseError as e:
            raise ParseError(str(e).split(": ", 1)[1], offset + e.pos) from None
        rest = chunk[sc.i:]
        try:
            m = parse_module(rest)
        except ParseError as e:
            raise ParseError(str(e).split(": ", 1)[1],
                             offset + sc.i + e.pos) from None
        if k in comps:
            raise ParseError("degree %d given twice" % k, offset + 1)
        if not m.is_zero:
            comps[k] = m
        offset += len(chunk) + 1
    return FormalObject(comps)


def module_to_expr(M: GradedModule) -> str:
    return fmt_module(M)


def formal_to_expr(F: FormalObject) -> str:
    return fmt_formal(F)


# ---------------------------------------------------------------------------
# JSON codecs
# ---------------------------------------------------------------------------


def _cell(c: Q, k: int) -> dict:
    return {"c": str(c), "k": k}


def matrix_to_json(m: MonoMatrix) -> dict:
    rows = []
    for i in range(m.nrows):
        row = []
        for j in range(m.ncols):
            c = m.get(i, j)
            row.append(_cell(c, m.exp(i, j)) if c != 0 else None)
        rows.append(row)
    return {
        "row_weights": list(m.row_weights),
        "col_weights": list(m.col_weights),
        "entries": rows,
    }


def matrix_from_json(obj: dict) -> MonoMatrix:
    m = MonoMatrix(obj["row_weights"], obj["col_weights"])
    for i, row in enumerate(obj["entries"]):
        for j, cell in enumerate(row):
            if cell is None:
                continue
            c = Q(cell["c"])
            if cell.get("k") is not None and cell["k"] != m.exp(i, j):
                raise ValueError(
                    "entry (%d,%d): stated exponent %d does not match the "
                    "forced one %d" % (i, j, cell["k"], m.exp(i, j))
                )
            m.set(i, j, c)
    return m


def presentation_to_json(p: Presentation) -> dict:
    rows = []
    for i in range(len(p.gens)):
        row = []
        for j in range(p.nrel):
            c = p.rel.get(i, j)
            row.append(_cell(c, p.rel.exp(i, j)) if c != 0 else None)
        rows.append(row)
    return {"generators": list(p.gens), "relations": rows}


def presentation_from_json(obj: dict) -> Presentation:
    gens = [int(g) for g in obj["generators"]]
    rows = obj.get("relations") or [[] for _ in gens]
    if len(rows) != len(gens):
        raise ValueError("relations must have one row per generator")
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged relation rows")
    # column weights are forced: w_col = w_row - k at any nonzero entry
    col_w: List[Optional[int]] = [None] * ncols
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            if cell is None:
                continue
            w = gens[i] - int(cell["k"])
            if col_w[j] is None:
                col_w[j] = w
            elif col_w[j] != w:
                raise ValueError(
                    "relation column %d is inhomogeneous (weights %d and %d)"
                    % (j, col_w[j], w)
                )
    for j, w in enumerate(col_w):
        if w is None:
            raise ValueError(
                "relation column %d has no entries; its weight is "
                "undetermined" % j
            )
    rel = MonoMatrix(gens, [w for w in col_w if w is not None])
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            if cell is not None:
                rel.set(i, j, Q(cell["c"]))
    return Presentation(gens, rel)


def formal_to_json(F: FormalObject) -> dict:
    return {str(k): fmt_module(m) for k, m in sorted(F.components.items())}


def formal_from_json(obj: dict) -> FormalObject:
    comps = {}
    for key, expr in obj.items():
        m = parse_module(expr)
        if not m.is_zero:
            comps[int(key)] = m
    return FormalObject(comps)


def complex_to_json(c: ChainComplex) -> dict:
    return {
        "terms": {str(k): presentation_to_json(c.terms[k])
                  for k in c.degrees()},
        "diffs": {str(k): matrix_to_json(d.mat)
                  for k, d in sorted(c.diffs.items())},
    }


def complex_from_json(obj: dict) -> ChainComplex:
    terms = {int(k): presentation_from_json(v)
             for k, v in obj.get("terms", {}).items()}
    cx = ChainComplex(terms=terms)
    for key, mat_obj in obj.get("diffs", {}).items():
        k = int(key)
        mat = matrix_from_json(mat_obj)
        src = cx.term(k)
        dst = cx.term(k + 1)
        if mat.col_weights != src.gens or mat.row_weights != dst.gens:
            raise ValueError("differential %d does not match its terms" % k)
        cx.diffs[k] = GradedMap(src, dst, mat)
    errs = cx.validate()
    if errs:
        raise ValueError("invalid complex: " + "; ".join(errs))
    return cx
