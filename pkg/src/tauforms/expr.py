"""A small expression language over the named forms.

Grammar (whitespace insensitive; juxtaposition multiplies):

    expr     := ["-"] term (("+"|"-") term)*
    term     := factor ("*" factor | factor)*
    factor   := rational | atom | "D" ["^" int] "(" expr ")"
              | "(" expr ")" | "[" expr "," expr "]" "_" int
              | "Phi" "(" int ";" expr "," int "," int ";" expr "," int "," int ")"
    rational := int ["/" int]
    atom     := E2 | E4 | E6 | E8 | E10 | E12 | Delta

Syntax errors carry the byte offset and the set of expected tokens.
"""

from dataclasses import dataclass
from fractions import Fraction

from .brackets import quasi_bracket, rc_bracket
from .forms import GradedForm, delta_product, eisenstein
from .qseries import QSeries

__all__ = [
    "ParseError",
    "EvalError",
    "parse",
    "print_expr",
    "eval_expr",
    "ATOMS",
    "Lit",
    "Atom",
    "Deriv",
    "Add",
    "Sub",
    "Mul",
    "Bracket",
    "Phi",
]

ATOMS = ("E2", "E4", "E6", "E8", "E10", "E12", "Delta")


class ParseError(ValueError):
    def __init__(self, offset, expected, found):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"syntax error at offset {offset}: expected {exp}, found {found!r}")


class EvalError(TypeError):
    """Raised when an expression is structurally inadmissible (e.g. a
    modular bracket over a quasimodular operand)."""


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Deriv:
    times: int
    child: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object
    order: int


@dataclass(frozen=True)
class Phi:
    order: int
    left: object
    left_weight: int
    left_depth: int
    right: object
    right_weight: int
    right_depth: int


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, expected):
        found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
        raise ParseError(self.pos, expected, found)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, literal):
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal):
        if not self.accept(literal):
            self.error({repr(literal)})

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error({"integer"})
        return int(self.text[start : self.pos])

    def identifier(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def starts_factor(self):
        ch = self.peek()
        return bool(ch) and (ch.isdigit() or ch.isalpha() or ch in "([")

    def parse_expr(self):
        negate = self.accept("-")
        node = self.parse_term()
        if negate:
            node = Sub(Lit(Fraction(0)), node)
        while True:
            if self.accept("+"):
                node = Add(node, self.parse_term())
            elif self.accept("-"):
                node = Sub(node, self.parse_term())
            else:
                return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            if self.accept("*"):
                node = Mul(node, self.parse_factor())
            elif self.starts_factor():
                node = Mul(node, self.parse_factor())
            else:
                return node

    def parse_factor(self):
        ch = self.peek()
        if ch.isdigit():
            num = self.integer()
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    self.error({"nonzero denominator"})
                return Lit(Fraction(num, den))
            return Lit(Fraction(num))
        if ch == "(":
            self.expect("(")
            node = self.parse_expr()
            self.expect(")")
            return node
        if ch == "[":
            self.expect("[")
            left = self.parse_expr()
            self.expect(",")
            right = self.parse_expr()
            self.expect("]")
            self.expect("_")
            order = self.integer()
            return Bracket(left, right, order)
        if ch.isalpha():
            mark = self.pos
            name = self.identifier()
            if name == "D":
                times = 1
                if self.accept("^"):
                    times = self.integer()
                self.expect("(")
                node = self.parse_expr()
                self.expect(")")
                return Deriv(times, node)
            if name == "Phi":
                self.expect("(")
                order = self.integer()
                self.expect(";")
                left = self.parse_expr()
                self.expect(",")
                lw = self.integer()
                self.expect(",")
                ld = self.integer()
                self.expect(";")
                right = self.parse_expr()
                self.expect(",")
                rw = self.integer()
                self.expect(",")
                rd = self.integer()
                self.expect(")")
                return Phi(order, left, lw, ld, right, rw, rd)
            if name in ATOMS:
                return Atom(name)
            self.pos = mark
            self.error(set(ATOMS) | {"D", "Phi"})
        self.error({"rational", "atom", "D", "(", "[", "Phi"})


def parse(text):
    """Parse an expression; raises ParseError with offset and expectations."""
    parser = _Parser(text)
    node = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error({"+", "-", "*", "end of input"})
    return node


def print_expr(node):
    """Canonical text for an AST; parse(print_expr(t)) rebuilds t."""
    if isinstance(node, Lit):
        v = node.value
        return str(v) if v >= 0 else f"(0 - {-v})"
    if isinstance(node, Atom):
        return node.name
    if isinstance(node, Deriv):
        head = "D" if node.times == 1 else f"D^{node.times}"
        return f"{head}({print_expr(node.child)})"
    if isinstance(node, Add):
        return f"({print_expr(node.left)} + {print_expr(node.right)})"
    if isinstance(node, Sub):
        return f"({print_expr(node.left)} - {print_expr(node.right)})"
    if isinstance(node, Mul):
        return f"({print_expr(node.left)} * {print_expr(node.right)})"
    if isinstance(node, Bracket):
        return f"[{print_expr(node.left)}, {print_expr(node.right)}]_{node.order}"
    if isinstance(node, Phi):
        return (
            f"Phi({node.order}; {print_expr(node.left)}, {node.left_weight}, {node.left_depth};"
            f" {print_expr(node.right)}, {node.right_weight}, {node.right_depth})"
        )
    raise TypeError(f"not an expression node: {node!r}")


def eval_expr(node, truncation):
    """Evaluate to a GradedForm with weight/depth bookkeeping.

    Sums of unequal nonzero weights are marked weight-inhomogeneous
    (weight None); such values refuse bracket and decomposition use.
    """
    if isinstance(node, Lit):
        if node.value == 0:
            return GradedForm(QSeries.zero(truncation), None, 0)
        return GradedForm(QSeries.constant(node.value, truncation), 0, 0)
    if isinstance(node, Atom):
        if node.name == "Delta":
            return delta_product(truncation)
        return eisenstein(int(node.name[1:]), truncation)
    if isinstance(node, Deriv):
        return eval_expr(node.child, truncation).derive(node.times)
    if isinstance(node, (Add, Sub)):
        left = eval_expr(node.left, truncation)
        right = eval_expr(node.right, truncation)
        return left + right if isinstance(node, Add) else left - right
    if isinstance(node, Mul):
        return eval_expr(node.left, truncation) * eval_expr(node.right, truncation)
    if isinstance(node, Bracket):
        left = eval_expr(node.left, truncation)
        right = eval_expr(node.right, truncation)
        try:
            return rc_bracket(left, right, node.order)
        except TypeError as exc:
            raise EvalError(str(exc)) from None
    if isinstance(node, Phi):
        left = eval_expr(node.left, truncation)
        right = eval_expr(node.right, truncation)
        for declared, form, side in (
            ((node.left_weight, node.left_depth), left, "left"),
            ((node.right_weight, node.right_depth), right, "right"),
        ):
            if form.weight is not None and form.weight != declared[0]:
                raise EvalError(
                    f"declared {side} weight {declared[0]} but the operand has weight {form.weight}"
                )
        try:
            return quasi_bracket(
                node.order,
                left,
                right,
                left=(node.left_weight, node.left_depth),
                right=(node.right_weight, node.right_depth),
            )
        except (TypeError, ValueError) as exc:
            raise EvalError(str(exc)) from None
    raise TypeError(f"not an expression node: {node!r}")
