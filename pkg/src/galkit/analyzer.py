"""A small while-language: parser, abstract interpreter over carrier-level
connections with complete-lattice abstract sides, and a bounded concrete
interpreter used as a soundness oracle.

Grammar:
  program := stmt+
  stmt    := IDENT ":=" aexp ";"
           | "while" bexp "do" "{" stmt* "}"
           | "if" bexp "then" "{" stmt* "}" "else" "{" stmt* "}"
           | "skip" ";"
  aexp    := term (("+"|"-") term)* ;  term := factor ("*" factor)*
  factor  := INT | IDENT | "(" aexp ")"
  bexp    := aexp ("<"|"<="|"="|"!="|">"|">=") aexp
Comments run from "#" to end of line.  A leading "-" binds to an integer
literal only where a term cannot continue (so "x-1" is a subtraction).

Program points: every statement gets a label L1, L2, ... in syntactic order;
the analysis records the abstract state on entry to each statement (for a
while statement, the stabilized loop-head state) plus the final state under
the label "end".  Branch conditions do not refine abstract states; they only
steer the concrete oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    DomainMismatch,
    UnknownVariable,
    UseBeforeAssign,
    WhileSyntaxError,
)
from .functions import ConcreteFn, bca_pcgc_entry
from .galois import CarrierConn, check_pcgc
from .order import FinLattice

STEP_BUDGET = 10_000

KEYWORDS = {"while", "do", "if", "then", "else", "skip"}
CMP_OPS = ("<=", "!=", ">=", "<", "=", ">")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Cmp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Assign:
    var: str
    expr: object
    label: int = 0


@dataclass(frozen=True)
class Skip:
    label: int = 0


@dataclass(frozen=True)
class While:
    cond: Cmp
    body: tuple
    label: int = 0


@dataclass(frozen=True)
class If:
    cond: Cmp
    then: tuple
    els: tuple
    label: int = 0


@dataclass(frozen=True)
class Program:
    body: tuple
    n_labels: int


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "op" | "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    symbols = (":=", "<=", ">=", "!=", ";", "{", "}", "(", ")",
               "+", "-", "*", "<", ">", "=")
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit() or (
            ch == "-"
            and i + 1 < n
            and text[i + 1].isdigit()
            and (not tokens or tokens[-1].kind not in ("int", "ident")
                 and tokens[-1].text != ")")
        ):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for sym in symbols:
            if text.startswith(sym, i):
                tokens.append(Token("op", sym, line, col))
                col += len(sym)
                i += len(sym)
                break
        else:
            raise WhileSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.next_label = 1

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: str):
        tok = self.peek()
        got = tok.text or "end of input"
        raise WhileSyntaxError(f"expected {expected}, got {got!r}", tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            return self.advance()
        self.fail(f"'{text}'")

    def take_label(self) -> int:
        lbl = self.next_label
        self.next_label += 1
        return lbl

    def parse_program(self) -> Program:
        body = [self.parse_stmt()]
        while self.peek().kind != "eof":
            body.append(self.parse_stmt())
        return Program(tuple(body), self.next_label - 1)

    def parse_block(self) -> tuple:
        self.expect("{")
        body = []
        while not (self.peek().kind == "op" and self.peek().text == "}"):
            if self.peek().kind == "eof":
                self.fail("'}'")
            body.append(self.parse_stmt())
        self.expect("}")
        return tuple(body)

    def parse_stmt(self):
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "while":
            self.advance()
            label = self.take_label()
            cond = self.parse_bexp()
            kw = self.peek()
            if not (kw.kind == "ident" and kw.text == "do"):
                self.fail("'do'")
            self.advance()
            return While(cond, self.parse_block(), label)
        if tok.kind == "ident" and tok.text == "if":
            self.advance()
            label = self.take_label()
            cond = self.parse_bexp()
            kw = self.peek()
            if not (kw.kind == "ident" and kw.text == "then"):
                self.fail("'then'")
            self.advance()
            then = self.parse_block()
            kw = self.peek()
            if not (kw.kind == "ident" and kw.text == "else"):
                self.fail("'else'")
            self.advance()
            return If(cond, then, self.parse_block(), label)
        if tok.kind == "ident" and tok.text == "skip":
            self.advance()
            label = self.take_label()
            self.expect(";")
            return Skip(label)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.advance()
            label = self.take_label()
            self.expect(":=")
            expr = self.parse_aexp()
            self.expect(";")
            return Assign(tok.text, expr, label)
        self.fail("a statement")

    def parse_bexp(self) -> Cmp:
        left = self.parse_aexp()
        tok = self.peek()
        if tok.kind == "op" and tok.text in CMP_OPS:
            self.advance()
            return Cmp(tok.text, left, self.parse_aexp())
        self.fail("a comparison operator")

    def parse_aexp(self):
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.advance()
            node = BinOp("*", node, self.parse_factor())
        return node

    def parse_factor(self):
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return Lit(int(tok.text))
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.advance()
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.parse_aexp()
            self.expect(")")
            return node
        self.fail("an integer, a variable or '('")


def _expr_vars(expr):
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, (BinOp, Cmp)):
        return _expr_vars(expr.left) | _expr_vars(expr.right)
    return set()


def _check_assigned(stmts, assigned: set) -> set:
    for st in stmts:
        if isinstance(st, Assign):
            used = _expr_vars(st.expr) - assigned
            if used:
                raise UseBeforeAssign(
                    f"variable {sorted(used)[0]!r} used before assignment"
                )
            assigned = assigned | {st.var}
        elif isinstance(st, While):
            used = _expr_vars(st.cond) - assigned
            if used:
                raise UseBeforeAssign(
                    f"variable {sorted(used)[0]!r} used before assignment"
                )
            _check_assigned(st.body, set(assigned))
        elif isinstance(st, If):
            used = _expr_vars(st.cond) - assigned
            if used:
                raise UseBeforeAssign(
                    f"variable {sorted(used)[0]!r} used before assignment"
                )
            a1 = _check_assigned(st.then, set(assigned))
            a2 = _check_assigned(st.els, set(assigned))
            assigned = a1 & a2
    return assigned


def program_vars(program: Program) -> list[str]:
    out: list[str] = []

    def walk(stmts):
        for st in stmts:
            if isinstance(st, Assign):
                if st.var not in out:
                    out.append(st.var)
            elif isinstance(st, While):
                walk(st.body)
            elif isinstance(st, If):
                walk(st.then)
                walk(st.els)

    walk(program.body)
    return out


def parse_program(text: str) -> Program:
    program = _Parser(_tokenize(text)).parse_program()
    _check_assigned(program.body, set())
    return program


# ---------------------------------------------------------------------------
# abstract interpretation


class AbstractSemantics:
    """Transfer functions over a purely constructive connection whose
    abstract side is a complete lattice; binary operator tables are computed
    entry by entry and memoized."""

    def __init__(self, domain: CarrierConn):
        if not isinstance(domain.abstract, FinLattice):
            raise DomainMismatch("analysis domain needs a complete lattice")
        rep = check_pcgc(domain)
        if not rep.ok:
            raise DomainMismatch(f"analysis domain fails its conditions at {rep.witness}")
        self.domain = domain
        self.lat = domain.abstract
        carrier = domain.carrier
        if carrier.lo is None:
            raise DomainMismatch("analysis needs an integer carrier")
        self.ops = {
            op: ConcreteFn(2, _ArithTable(carrier, op)) for op in "+-*"
        }
        self._memo: dict = {}

    def op_entry(self, op: str, b1: str, b2: str) -> str:
        key = (op, b1, b2)
        if key not in self._memo:
            self._memo[key] = bca_pcgc_entry(self.domain, self.ops[op], b1, b2)
        return self._memo[key]

    def eval(self, expr, state: dict) -> str:
        if isinstance(expr, Lit):
            return self.domain.eta[self.domain.carrier.clamp(expr.value)]
        if isinstance(expr, Var):
            if expr.name not in state:
                raise UnknownVariable(f"variable {expr.name!r} has no value")
            return state[expr.name]
        left = self.eval(expr.left, state)
        right = self.eval(expr.right, state)
        return self.op_entry(expr.op, left, right)


class _ArithTable:
    """A lazy binary operation table over an integer carrier."""

    def __init__(self, carrier, op):
        self.carrier = carrier
        self.op = op

    def __getitem__(self, key):
        a, b = int(key[0]), int(key[1])
        if self.op == "+":
            return self.carrier.clamp(a + b)
        if self.op == "-":
            return self.carrier.clamp(a - b)
        return self.carrier.clamp(a * b)

    def keys(self):
        return iter(())


def abstract_eval(expr, state: dict, domain: CarrierConn) -> str:
    """Evaluate an arithmetic expression in an abstract state."""
    return AbstractSemantics(domain).eval(expr, state)


@dataclass
class AnalysisResult:
    points: dict  # label ("L1".."Lk", "end") -> dict var -> abstract element
    iterations: int


def analyze(program: Program, domain: CarrierConn) -> AnalysisResult:
    """Forward Kleene iteration; loop heads join the entry state with the
    body's exit until stabilization, recorded per program point."""
    sem = AbstractSemantics(domain)
    lat = sem.lat
    variables = program_vars(program)
    points: dict = {}
    iterations = 0

    def join_states(s1, s2):
        return {v: lat.join(s1[v], s2[v]) for v in variables}

    def run(stmts, state):
        nonlocal iterations
        for st in stmts:
            points[f"L{st.label}"] = dict(state)
            if isinstance(st, Assign):
                state = dict(state)
                state[st.var] = sem.eval(st.expr, state)
            elif isinstance(st, Skip):
                pass
            elif isinstance(st, If):
                out1 = run(st.then, state)
                out2 = run(st.els, state)
                state = join_states(out1, out2)
            elif isinstance(st, While):
                head = dict(state)
                while True:
                    iterations += 1
                    body_out = run(st.body, head)
                    grown = join_states(head, body_out)
                    if grown == head:
                        break
                    head = grown
                points[f"L{st.label}"] = dict(head)
                state = head
        return state

    init = {v: lat.bottom for v in variables}
    final = run(program.body, init)
    points["end"] = final
    # fixpoint post-check on every loop head
    def recheck(stmts):
        for st in stmts:
            if isinstance(st, While):
                head = points[f"L{st.label}"]
                silent = dict(points)
                body_out = run(st.body, head)
                points.clear()
                points.update(silent)
                assert join_states(head, body_out) == head, "loop head not a fixpoint"
                recheck(st.body)
            elif isinstance(st, If):
                recheck(st.then)
                recheck(st.els)

    recheck(program.body)
    return AnalysisResult(points, iterations)


def format_state(state: dict, variables: list[str], bottom: str) -> str:
    shown = [
        f"{v} ↦ {state[v]}" for v in variables
        if v in state and state[v] != bottom
    ]
    return "{" + ", ".join(shown) + "}"


def format_result(result: AnalysisResult, program: Program, domain: CarrierConn) -> str:
    variables = program_vars(program)
    bottom = domain.abstract.bottom
    lines = []
    for k in range(1, program.n_labels + 1):
        label = f"L{k}"
        if label in result.points:
            lines.append(
                f"{label}: {format_state(result.points[label], variables, bottom)}"
            )
    lines.append(f"end: {format_state(result.points['end'], variables, bottom)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# bounded concrete oracle


def concrete_run(program: Program, carrier, budget: int = STEP_BUDGET) -> dict:
    """Execute the program with clamped integer arithmetic, recording every
    variable valuation seen on entry to each program point; stops quietly
    when the step budget runs out."""
    seen: dict = {}
    steps = 0

    def note(label, env):
        seen.setdefault(label, []).append(dict(env))

    def ev(expr, env):
        if isinstance(expr, Lit):
            return int(carrier.clamp(expr.value))
        if isinstance(expr, Var):
            return env[expr.name]
        l, r = ev(expr.left, env), ev(expr.right, env)
        if expr.op == "+":
            return int(carrier.clamp(l + r))
        if expr.op == "-":
            return int(carrier.clamp(l - r))
        return int(carrier.clamp(l * r))

    def test(cond, env):
        l, r = ev(cond.left, env), ev(cond.right, env)
        return {
            "<": l < r, "<=": l <= r, "=": l == r,
            "!=": l != r, ">": l > r, ">=": l >= r,
        }[cond.op]

    def run(stmts, env):
        nonlocal steps
        for st in stmts:
            if steps >= budget:
                return env, False
            steps += 1
            note(f"L{st.label}", env)
            if isinstance(st, Assign):
                env = dict(env)
                env[st.var] = ev(st.expr, env)
            elif isinstance(st, Skip):
                pass
            elif isinstance(st, If):
                branch = st.then if test(st.cond, env) else st.els
                env, ok = run(branch, env)
                if not ok:
                    return env, False
            elif isinstance(st, While):
                while test(st.cond, env):
                    env, ok = run(st.body, env)
                    if not ok:
                        return env, False
                    if steps >= budget:
                        return env, False
                    steps += 1
                    note(f"L{st.label}", env)
        return env, True

    env, finished = run(program.body, {})
    if finished:
        note("end", env)
    return seen
