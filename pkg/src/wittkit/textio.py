"""Text and JSON formats for fields, polynomials, and result objects.

Grammar (EBNF), whitespace-insensitive, with unary minus allowed on the
first term; the bare literal "0" denotes the zero field / polynomial:

    field    := "0" | term (("+" | "-") term)*
    term     := [coeff "*"?] [monomial "*"?] "d" INT
    monomial := factor ("*" factor)*
    factor   := "x" INT ["^" INT]
    coeff    := INT ["/" INT]

Polynomials use the same term syntax without the trailing direction (at
least one of coeff / monomial must be present).

Printing is canonical: components in ascending direction order, monomials
within a component in descending graded-lex order, so parse(print(w)) == w
and print(parse(s)) is idempotent canonicalization.

JSON serialization is exact: rationals travel as decimal strings "p" or
"p/q".  Malformed documents raise SchemaError carrying the JSON path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .derivations import (
    InnerSolveResult,
    StabilizationReport,
    SubspaceSpec,
)
from .fields import TruncationWindow, VectorField, format_term
from .linalg import RationalMatrix, SolveOutcome
from .poly import Monomial, Polynomial, format_coeff, format_monomial, format_polynomial

# -- parsing ------------------------------------------------------------------


class ParseError(ValueError):
    """Syntax error with position and the token set that was expected."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...], found: str):
        super().__init__(f"{message} at line {line}, column {col}: expected {', '.join(expected)}, found {found}")
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found


class _Lexer:
    """Tokens: INT, 'x', 'd', '+', '-', '*', '/', '^', EOF."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens: list[tuple[str, str, int, int]] = []
        self._scan()

    def _advance(self, ch: str) -> None:
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        self.pos += 1

    def _scan(self) -> None:
        text = self.text
        digits = "0123456789"  # ASCII only; unicode digit lookalikes are errors
        while self.pos < len(text):
            ch = text[self.pos]
            if ch.isspace():
                self._advance(ch)
                continue
            line, col = self.line, self.col
            if ch in digits:
                start = self.pos
                while self.pos < len(text) and text[self.pos] in digits:
                    self._advance(text[self.pos])
                self.tokens.append(("INT", text[start : self.pos], line, col))
            elif ch in "xd+-*/^":
                self.tokens.append((ch, ch, line, col))
                self._advance(ch)
            else:
                raise ParseError(
                    "unexpected character", line, col,
                    ("INT", "x", "d", "+", "-", "*", "/", "^"), repr(ch),
                )
        self.tokens.append(("EOF", "", self.line, self.col))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Lexer(text).tokens
        self.k = 0

    def peek(self) -> str:
        return self.tokens[self.k][0]

    def take(self, kind: str) -> str:
        tok = self.tokens[self.k]
        if tok[0] != kind:
            self._fail((kind,))
        self.k += 1
        return tok[1]

    def _fail(self, expected: tuple[str, ...]) -> None:
        tok = self.tokens[self.k]
        found = "end of input" if tok[0] == "EOF" else repr(tok[1])
        raise ParseError("syntax error", tok[2], tok[3], expected, found)

    def int_at_least_one(self, what: str) -> int:
        tok = self.tokens[self.k]
        value = int(self.take("INT"))
        if value < 1:
            raise ParseError(f"{what} must be >= 1", tok[2], tok[3], ("INT >= 1",), str(value))
        return value

    def parse_field(self) -> VectorField:
        terms = self._parse_sum(self._field_term)
        self.take("EOF")
        out = VectorField.zero()
        for sign, (coeff, mono, direction) in terms:
            out = out + VectorField.term(mono, direction, coeff * sign)
        return out

    def parse_poly(self) -> Polynomial:
        terms = self._parse_sum(self._poly_term)
        self.take("EOF")
        out = Polynomial.zero()
        for sign, (coeff, mono, _) in terms:
            out = out + Polynomial.term(mono, coeff * sign)
        return out

    def _parse_sum(self, term_parser: Callable) -> list[tuple[int, tuple]]:
        if self.peek() == "INT" and self.tokens[self.k][1] == "0" and self.tokens[self.k + 1][0] == "EOF":
            self.k += 1
            return []
        terms = []
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        terms.append((sign, term_parser()))
        while self.peek() in ("+", "-"):
            sign = 1 if self.take(self.peek()) == "+" else -1
            terms.append((sign, term_parser()))
        return terms

    def _coeff(self) -> Fraction:
        num = int(self.take("INT"))
        if self.peek() == "/":
            self.take("/")
            tok = self.tokens[self.k]
            den = int(self.take("INT"))
            if den == 0:
                raise ParseError("zero denominator", tok[2], tok[3], ("INT >= 1",), "0")
            return Fraction(num, den)
        return Fraction(num)

    def _monomial(self) -> Monomial:
        exps: dict[int, int] = {}
        while True:
            self.take("x")
            var = self.int_at_least_one("variable index")
            exp = 1
            if self.peek() == "^":
                self.take("^")
                exp = self.int_at_least_one("exponent")
            exps[var] = exps.get(var, 0) + exp
            if self.peek() == "*" and self.tokens[self.k + 1][0] == "x":
                self.take("*")
                continue
            break
        return Monomial(exps)

    def _field_term(self) -> tuple[Fraction, Monomial, int]:
        coeff, mono = self._term_body()
        self.take("d")
        direction = self.int_at_least_one("direction index")
        return coeff, mono, direction

    def _poly_term(self) -> tuple[Fraction, Monomial, None]:
        tok = self.tokens[self.k]
        coeff, mono = self._term_body()
        if not self._saw_any:
            raise ParseError("empty term", tok[2], tok[3], ("INT", "x"), repr(tok[1] or "end of input"))
        return coeff, mono, None

    def _term_body(self) -> tuple[Fraction, Monomial]:
        self._saw_any = False
        coeff = Fraction(1)
        if self.peek() == "INT":
            coeff = self._coeff()
            self._saw_any = True
            if self.peek() == "*":
                self.take("*")
                if self.peek() not in ("x", "d"):
                    self._fail(("x", "d"))
        mono = Monomial.unit()
        if self.peek() == "x":
            mono = self._monomial()
            self._saw_any = True
            if self.peek() == "*":
                self.take("*")
                if self.peek() != "d":
                    self._fail(("d",))
        return coeff, mono


def parse_field(text: str) -> VectorField:
    """Parse the field grammar; raises ParseError on malformed input."""
    if not isinstance(text, str):
        raise ParseError("input is not text", 1, 1, ("field expression",), type(text).__name__)
    return _Parser(text).parse_field()


def parse_poly(text: str) -> Polynomial:
    """Parse the polynomial grammar (field terms without the direction)."""
    if not isinstance(text, str):
        raise ParseError("input is not text", 1, 1, ("polynomial expression",), type(text).__name__)
    return _Parser(text).parse_poly()


# -- printing -----------------------------------------------------------------


@dataclass(frozen=True)
class FieldExpression:
    """A parsed field together with its source and canonical rendering.

    ``parse(canonical)`` always returns ``field`` again, and re-rendering the
    canonical text is idempotent.
    """

    source: str
    field: VectorField
    canonical: str

    @staticmethod
    def parse(text: str) -> FieldExpression:
        field = parse_field(text)
        return FieldExpression(text, field, print_field(field))


def print_field(w: VectorField) -> str:
    """Canonical text: components ascending by direction, terms in descending
    graded-lex order; the zero field prints '0'."""
    if w.is_zero():
        return "0"
    parts: list[str] = []
    for direction, f in w.components():
        for mono, coeff in f.terms():
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            pieces = []
            if mag != 1:
                pieces.append(format_coeff(mag))
            if mono.pairs:
                pieces.append(format_monomial(mono))
            body = f"{'*'.join(pieces)} d{direction}" if pieces else f"d{direction}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
    return " ".join(parts)


def print_poly(p: Polynomial) -> str:
    return format_polynomial(p)


# -- JSON ---------------------------------------------------------------------


class SchemaError(ValueError):
    """Schema violation with the JSON path of the offending value."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{message} at {path}")
        self.path = path


def _rat_str(c: Fraction) -> str:
    return format_coeff(c)


def _rat_parse(value: Any, path: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError("rational must be a string like '3' or '1/2'", path)
    parts = value.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            num, den = int(parts[0]), int(parts[1])
            if den == 0:
                raise SchemaError("zero denominator", path)
            return Fraction(num, den)
    except ValueError:
        pass
    raise SchemaError(f"malformed rational {value!r}", path)


def _monomial_obj(m: Monomial) -> dict:
    return {str(v): e for v, e in m.pairs}


def _monomial_parse(obj: Any, path: str) -> Monomial:
    if not isinstance(obj, dict):
        raise SchemaError("monomial must be an object {var: exponent}", path)
    exps = {}
    for key, val in obj.items():
        if not (isinstance(key, str) and key.isdigit() and int(key) >= 1):
            raise SchemaError(f"variable index must be a positive integer string, got {key!r}", path)
        if not (isinstance(val, int) and not isinstance(val, bool) and val >= 1):
            raise SchemaError(f"exponent must be an integer >= 1, got {val!r}", f"{path}.{key}")
        exps[int(key)] = val
    return Monomial(exps)


def field_to_obj(w: VectorField) -> dict:
    comps = {}
    for direction, f in w.components():
        comps[str(direction)] = [
            {"monomial": _monomial_obj(mono), "coeff": _rat_str(coeff)} for mono, coeff in f.terms()
        ]
    return {"components": comps}


def field_from_obj(obj: Any, path: str = "$") -> VectorField:
    if not isinstance(obj, dict) or "components" not in obj:
        raise SchemaError("expected an object with a 'components' key", path)
    comps = obj["components"]
    if not isinstance(comps, dict):
        raise SchemaError("'components' must be an object", f"{path}.components")
    out = VectorField.zero()
    for key, terms in comps.items():
        cpath = f"{path}.components.{key}"
        if not (isinstance(key, str) and key.isdigit() and int(key) >= 1):
            raise SchemaError(f"direction must be a positive integer string, got {key!r}", cpath)
        if not isinstance(terms, list):
            raise SchemaError("component must be a list of terms", cpath)
        direction = int(key)
        for idx, term in enumerate(terms):
            tpath = f"{cpath}[{idx}]"
            if not isinstance(term, dict) or set(term) != {"monomial", "coeff"}:
                raise SchemaError("term must be {'monomial': ..., 'coeff': ...}", tpath)
            mono = _monomial_parse(term["monomial"], f"{tpath}.monomial")
            coeff = _rat_parse(term["coeff"], f"{tpath}.coeff")
            out = out + VectorField.term(mono, direction, coeff)
    return out


def poly_to_obj(p: Polynomial) -> dict:
    return {"terms": [{"monomial": _monomial_obj(m), "coeff": _rat_str(c)} for m, c in p.terms()]}


def poly_from_obj(obj: Any, path: str = "$") -> Polynomial:
    if not isinstance(obj, dict) or "terms" not in obj or not isinstance(obj["terms"], list):
        raise SchemaError("expected an object with a 'terms' list", path)
    out = Polynomial.zero()
    for idx, term in enumerate(obj["terms"]):
        tpath = f"{path}.terms[{idx}]"
        if not isinstance(term, dict) or set(term) != {"monomial", "coeff"}:
            raise SchemaError("term must be {'monomial': ..., 'coeff': ...}", tpath)
        out = out + Polynomial.term(
            _monomial_parse(term["monomial"], f"{tpath}.monomial"),
            _rat_parse(term["coeff"], f"{tpath}.coeff"),
        )
    return out


def window_to_obj(win: TruncationWindow) -> dict:
    return {
        "max_var": win.max_var,
        "degree_min": win.degree_min,
        "degree_max": win.degree_max,
        "mode": win.mode,
    }


def window_from_obj(obj: Any, path: str = "$") -> TruncationWindow:
    if not isinstance(obj, dict):
        raise SchemaError("window must be an object", path)
    try:
        return TruncationWindow(
            max_var=obj.get("max_var"),
            degree_min=obj.get("degree_min", -1),
            degree_max=obj.get("degree_max"),
            mode=obj.get("mode", "strict"),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"invalid window: {exc}", path) from None


def subspace_to_obj(spec: SubspaceSpec) -> dict:
    return {
        "basis": [field_to_obj(b) for b in spec.basis],
        "window": window_to_obj(spec.window),
    }


def subspace_from_obj(obj: Any, path: str = "$") -> SubspaceSpec:
    if not isinstance(obj, dict) or "basis" not in obj or "window" not in obj:
        raise SchemaError("expected an object with 'basis' and 'window'", path)
    if not isinstance(obj["basis"], list):
        raise SchemaError("'basis' must be a list", f"{path}.basis")
    basis = [field_from_obj(b, f"{path}.basis[{i}]") for i, b in enumerate(obj["basis"])]
    return SubspaceSpec(basis, window_from_obj(obj["window"], f"{path}.window"))


def outcome_to_obj(outcome: SolveOutcome) -> dict:
    return {
        "kind": outcome.kind,
        "particular": None if outcome.particular is None else [_rat_str(v) for v in outcome.particular],
        "kernel_basis": [[_rat_str(v) for v in vec] for vec in outcome.kernel_basis],
    }


def outcome_from_obj(obj: Any, path: str = "$") -> SolveOutcome:
    if not isinstance(obj, dict) or obj.get("kind") not in ("unique", "underdetermined", "inconsistent"):
        raise SchemaError("expected 'kind' of unique/underdetermined/inconsistent", path)
    particular = obj.get("particular")
    if particular is not None:
        if not isinstance(particular, list):
            raise SchemaError("'particular' must be a list or null", f"{path}.particular")
        particular = tuple(_rat_parse(v, f"{path}.particular[{i}]") for i, v in enumerate(particular))
    kb = obj.get("kernel_basis", [])
    if not isinstance(kb, list):
        raise SchemaError("'kernel_basis' must be a list", f"{path}.kernel_basis")
    kernel = tuple(
        tuple(_rat_parse(v, f"{path}.kernel_basis[{i}][{j}]") for j, v in enumerate(vec))
        for i, vec in enumerate(kb)
    )
    return SolveOutcome(obj["kind"], particular, kernel)


def inner_result_to_obj(result: InnerSolveResult) -> dict:
    cert = None
    if result.certificate is not None:
        cert = {
            "generator_index": result.certificate.generator_index,
            "term": format_term(result.certificate.mono, result.certificate.direction),
        }
    return {
        "kind": result.kind,
        "field": None if result.field is None else field_to_obj(result.field),
        "kernel": [field_to_obj(k) for k in result.kernel],
        "certificate": cert,
    }


def report_to_obj(report: StabilizationReport) -> dict:
    def key(term):
        return format_term(term[0], term[1])

    return {
        "task": report.task,
        "n_values": list(report.n_values),
        "dims": list(report.dims),
        "trajectories": {key(t): [_rat_str(v) for v in traj] for t, traj in report.trajectories.items()},
        "stabilized": {key(t): flag for t, flag in report.stabilized.items()},
        "first_stable_n": {key(t): n for t, n in report.first_stable_n.items()},
        "limit": None if report.limit is None else field_to_obj(report.limit),
        "all_stabilized": report.all_stabilized,
    }


def matrix_to_obj(m: RationalMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [_rat_str(v) for v in m.entries],
    }


_TO_OBJ: list[tuple[type, Callable[[Any], dict]]] = [
    (VectorField, field_to_obj),
    (Polynomial, poly_to_obj),
    (TruncationWindow, window_to_obj),
    (SubspaceSpec, subspace_to_obj),
    (SolveOutcome, outcome_to_obj),
    (InnerSolveResult, inner_result_to_obj),
    (StabilizationReport, report_to_obj),
    (RationalMatrix, matrix_to_obj),
]


def to_obj(value: Any) -> Any:
    for cls, conv in _TO_OBJ:
        if isinstance(value, cls):
            return conv(value)
    if isinstance(value, (list, tuple)):
        return [to_obj(v) for v in value]
    raise TypeError(f"no JSON form for {type(value).__name__}")


def to_json(value: Any, indent: int | None = None) -> str:
    return json.dumps(to_obj(value), indent=indent, sort_keys=True)


def from_json(text: str) -> Any:
    """Load a JSON document, dispatching on its top-level keys."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc.msg}", "$") from None
    return _sniff(obj)


def _sniff(obj: Any, path: str = "$") -> Any:
    if isinstance(obj, list):
        return [_sniff(v, f"{path}[{i}]") for i, v in enumerate(obj)]
    if not isinstance(obj, dict):
        raise SchemaError("expected an object or a list of objects", path)
    if "components" in obj:
        return field_from_obj(obj, path)
    if "terms" in obj:
        return poly_from_obj(obj, path)
    if "basis" in obj and "window" in obj:
        return subspace_from_obj(obj, path)
    if "max_var" in obj:
        return window_from_obj(obj, path)
    if "kind" in obj and "kernel_basis" in obj:
        return outcome_from_obj(obj, path)
    raise SchemaError("unrecognized document shape", path)


def field_from_json(text: str) -> VectorField:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc.msg}", "$") from None
    return field_from_obj(obj)
