"""Reader for ideal description files.

Format::

    # comments run to end of line
    vars: x0 x1 x2
    order: x2 x1        # optional, valuation comparison order
    dehom: x0           # optional, variable set to 1 (default: first)
    gens:
    x0*x1
    3/2*x0^2 - x1*x2

Expressions use ``+ - * ^``, parentheses, integer or ``p/q`` coefficients
and the declared variable names.  Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IdealSyntaxError, NotHomogeneous, TooFewVariables
from .polyring import HomogeneousIdeal, MultiPoly
from .valuation import ValuationConfig

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")


@dataclass(frozen=True)
class IdealFile:
    variables: tuple
    generators: tuple
    options: dict = field(default_factory=dict)
    generator_lines: tuple = ()
    generator_columns: tuple = ()


class _ExprParser:
    def __init__(self, text: str, names: dict[str, int], line: int, col_offset: int = 0):
        self.text = text
        self.names = names
        self.nvars = len(names)
        self.line = line
        self.col_offset = col_offset
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                col = pos + 1 + (len(stripped[pos:]) - len(stripped[pos:].lstrip()))
                raise IdealSyntaxError(f"unexpected character {stripped[col - 1]!r}",
                                       line, col + col_offset)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start + 1 + col_offset))
            pos = m.end()
        self.i = 0

    def _peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return (None, None, len(self.text.rstrip()) + 1 + self.col_offset)

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _fail(self, msg, col=None):
        if col is None:
            col = self._peek()[2]
        raise IdealSyntaxError(msg, self.line, col)

    def parse(self) -> MultiPoly:
        if not self.tokens:
            self._fail("empty expression", 1 + self.col_offset)
        p = self._expr()
        if self.i != len(self.tokens):
            kind, val, col = self._peek()
            self._fail(f"unexpected {val!r}", col)
        return p

    def _expr(self) -> MultiPoly:
        p = self._term()
        while self._peek()[1] in ("+", "-"):
            op = self._take()[1]
            q = self._term()
            p = p + q if op == "+" else p - q
        return p

    def _term(self) -> MultiPoly:
        sign = 1
        while self._peek()[1] in ("+", "-"):
            if self._take()[1] == "-":
                sign = -sign
        p = self._power()
        while self._peek()[1] == "*":
            self._take()
            p = p * self._power()
        return p * sign if sign < 0 else p

    def _power(self) -> MultiPoly:
        base = self._atom()
        if self._peek()[1] == "^":
            self._take()
            kind, val, col = self._take()
            if kind != "num":
                self._fail("exponent must be a nonnegative integer", col)
            out = MultiPoly.constant(1, self.nvars)
            for _ in range(int(val)):
                out = out * base
            return out
        return base

    def _atom(self) -> MultiPoly:
        kind, val, col = self._take()
        if kind == "num":
            c = Fraction(int(val))
            if self._peek()[1] == "/":
                self._take()
                k2, v2, c2 = self._take()
                if k2 != "num" or int(v2) == 0:
                    self._fail("expected a nonzero integer denominator", c2)
                c = c / int(v2)
            return MultiPoly.constant(c, self.nvars)
        if kind == "name":
            if val not in self.names:
                self._fail(f"undeclared variable {val!r}", col)
            return MultiPoly.variable(self.names[val], self.nvars)
        if val == "(":
            p = self._expr()
            k2, v2, c2 = self._take()
            if v2 != ")":
                self._fail("expected ')'", c2)
            return p
        if kind is None:
            self._fail("unexpected end of expression", col)
        self._fail(f"unexpected {val!r}", col)


def parse_polynomial(text: str, variables, line: int = 1, col_offset: int = 0) -> MultiPoly:
    names = {v: i for i, v in enumerate(variables)}
    return _ExprParser(text, names, line, col_offset).parse()


def _names(rest: str, line: int, key: str) -> list[str]:
    items = rest.replace(",", " ").split()
    for it in items:
        if not _NAME.fullmatch(it):
            raise IdealSyntaxError(f"bad name {it!r} in {key}", line)
    return items


def read_ideal_file(text: str) -> IdealFile:
    variables = None
    options: dict = {}
    gens: list[tuple[int, str, int]] = []
    in_gens = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head = re.match(r"\s*(vars|order|dehom|gens)\s*:(.*)$", line)
        if head:
            key, rest = head.group(1), head.group(2)
            if key == "vars":
                variables = _names(rest, lineno, key)
                if len(set(variables)) != len(variables):
                    raise IdealSyntaxError("duplicate variable name", lineno)
            elif key == "order":
                options["order"] = _names(rest, lineno, key)
            elif key == "dehom":
                ns = _names(rest, lineno, key)
                if len(ns) != 1:
                    raise IdealSyntaxError("dehom takes exactly one variable", lineno)
                options["dehom"] = ns[0]
            else:
                in_gens = True
                if rest.strip():
                    gens.append((lineno, rest, head.start(2)))
            continue
        if not in_gens:
            raise IdealSyntaxError("expected 'vars:', 'order:', 'dehom:' or 'gens:'", lineno, 1)
        gens.append((lineno, line, 0))
    if variables is None:
        raise IdealSyntaxError("missing 'vars:' header")
    if len(variables) < 2:
        raise TooFewVariables(f"need at least 2 variables, got {len(variables)}")
    if not gens:
        raise IdealSyntaxError("no generators after 'gens:'")
    return IdealFile(tuple(variables), tuple(g for _, g, _ in gens), options,
                     tuple(n for n, _, _ in gens), tuple(c for _, _, c in gens))


def parse_ideal(text: str, vars_order=None) -> tuple[HomogeneousIdeal, ValuationConfig, IdealFile]:
    """Parse and validate; returns the ideal, its valuation config and the raw file."""
    source = read_ideal_file(text)
    names = source.variables
    polys = []
    for k, expr in enumerate(source.generators):
        lineno = source.generator_lines[k] if source.generator_lines else None
        offset = source.generator_columns[k] if source.generator_columns else 0
        p = parse_polynomial(expr, names, lineno, offset)
        expr = expr.strip()
        if not p:
            raise IdealSyntaxError(f"generator {expr!r} is zero", lineno)
        if not p.is_homogeneous():
            raise NotHomogeneous(f"generator {k + 1} ({expr}) is not homogeneous")
        polys.append(p)
    ideal = HomogeneousIdeal(len(names), tuple(polys))
    cfg = config_from_names(names, source.options.get("dehom"), vars_order or source.options.get("order"))
    return ideal, cfg, source


def config_from_names(names, dehom=None, order=None) -> ValuationConfig:
    index = {v: i for i, v in enumerate(names)}
    if dehom is not None and dehom not in index:
        raise IdealSyntaxError(f"dehom variable {dehom!r} is not declared")
    dh = index[dehom] if dehom is not None else 0
    rest = [i for i in range(len(names)) if i != dh]
    if order:
        bad = [v for v in order if v not in index]
        if bad:
            raise IdealSyntaxError(f"order names undeclared variable {bad[0]!r}")
        chosen = [index[v] for v in order]
        if sorted(chosen) != rest:
            raise IdealSyntaxError("order must list every variable except the dehomogenized one")
        rest = chosen
    return ValuationConfig(len(names), dh, tuple(rest))
