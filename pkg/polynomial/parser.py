"""Reader and writer for the polynomial input language.

    # comment
    vars: x, y, z;
    (y - x^2)*(x^2 + y^2 + z^2 - 1)*(x - 0.5);
    (2+1i)*x*y^2 - 3;

Products are expanded on parse. Multiplication must be written explicitly.
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from errors import NegativeExponentError, PolynomialSyntaxError, UndeclaredVariableError
from polynomial.core import Polynomial, PolySystem

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),:;])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # number | imag | ident | op | end
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        lexeme = m.group()
        end = m.end()
        if kind == "number" and end < len(text) and text[end] == "i" \
                and not (end + 1 < len(text) and (text[end + 1].isalnum() or text[end + 1] == "_")):
            kind, lexeme, end = "imag", lexeme, end + 1
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, lexeme, line, column))
        newlines = text.count("\n", pos, end)
        if newlines:
            line += newlines
            line_start = text.rindex("\n", pos, end) + 1
        pos = end
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.names: List[str] = []
        self.index: Dict[str, int] = {}

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, message: str, token: Optional[Token] = None, cls=PolynomialSyntaxError):
        token = token or self.current
        return cls(message, token.line, token.column)

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.current
        if token.kind != "op" or token.text != text:
            found = token.text or "end of input"
            raise self._error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def at(self, text: str) -> bool:
        return self.current.kind == "op" and self.current.text == text

    # vars: a, b, c;
    def header(self):
        token = self.current
        if token.kind != "ident" or token.text != "vars":
            raise self._error("system must start with a 'vars:' declaration")
        self.advance()
        self.expect(":")
        while True:
            token = self.current
            if token.kind != "ident":
                raise self._error("expected a variable name")
            if token.text in self.index:
                raise self._error(f"variable {token.text!r} declared twice")
            self.index[token.text] = len(self.names)
            self.names.append(token.text)
            self.advance()
            if self.at(","):
                self.advance()
                continue
            self.expect(";")
            break

    def system(self) -> PolySystem:
        self.header()
        polynomials = []
        while self.current.kind != "end":
            polynomials.append(self.expression())
            self.expect(";")
        return PolySystem(tuple(polynomials), len(self.names), tuple(self.names))

    def expression(self) -> Polynomial:
        result = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.at("*"):
            self.advance()
            result = result * self.unary()
        token = self.current
        if token.kind in ("number", "imag", "ident") or (token.kind == "op" and token.text == "("):
            raise self._error("implicit multiplication is not allowed; write '*'")
        return result

    def unary(self) -> Polynomial:
        if self.at("-"):
            self.advance()
            return -self.unary()
        if self.at("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if not self.at("^"):
            return base
        self.advance()
        token = self.current
        if token.kind == "op" and token.text == "-":
            raise self._error("negative exponents are not polynomial", cls=NegativeExponentError)
        if token.kind != "number" or not token.text.isdigit():
            raise self._error("exponent must be a nonnegative integer literal")
        self.advance()
        return base ** int(token.text)

    def atom(self) -> Polynomial:
        n = max(len(self.names), 1)
        token = self.current
        if token.kind == "number":
            self.advance()
            return Polynomial.constant(float(token.text), n)
        if token.kind == "imag":
            self.advance()
            return Polynomial.constant(complex(0.0, float(token.text)), n)
        if token.kind == "ident":
            if token.text not in self.index:
                raise self._error(f"undeclared variable {token.text!r}", cls=UndeclaredVariableError)
            self.advance()
            return Polynomial.variable(self.index[token.text], n)
        if self.at("("):
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        found = token.text or "end of input"
        raise self._error(f"unexpected {found!r}")


def parse_system(text: str) -> PolySystem:
    """Parse a whole system; variable order is declaration order."""
    return _Parser(text).system()


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse one expression over already declared variables."""
    parser = _Parser(f"vars: {', '.join(names)}; {text};")
    return parser.system()[0]


# -- writer -------------------------------------------------------------------

def _real(v: float) -> str:
    return f"{v:.17g}"


def _coefficient_text(c: complex) -> str:
    if c.imag == 0:
        return _real(abs(c.real))
    sign = "+" if c.imag >= 0 else "-"
    return f"({_real(c.real)}{sign}{_real(abs(c.imag))}i)"


def format_polynomial(p: Polynomial, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for k, m in enumerate(p.monomials):
        c = m.coefficient
        negative = c.imag == 0 and c.real < 0
        factors = [names[j] if e == 1 else f"{names[j]}^{e}" for j, e in enumerate(m.exponents) if e]
        coeff = _coefficient_text(c)
        if factors and coeff == "1":
            body = "*".join(factors)
        else:
            body = "*".join([coeff] + factors)
        if k == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def format_system(system: PolySystem, comment: Optional[str] = None) -> str:
    names = list(system.names)
    lines = []
    if comment:
        lines.extend(f"# {row}" for row in comment.splitlines())
    lines.append(f"vars: {', '.join(names)};")
    lines.extend(f"{format_polynomial(p, names)};" for p in system)
    return "\n".join(lines) + "\n"
