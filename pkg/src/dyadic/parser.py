"""Reader and writer for ``.dtgd`` programs.

Syntax, one statement per ``.``::

    % comment
    P(a, "b c").                      fact
    P(X), Q(X,Y) -> R(Y,Z).           rule; Z is existential (head only)
    ?- X, Y : P(X), R(X,Y).           conjunctive query with outputs X, Y
    ?- : P(a).                        boolean query

Identifiers starting with an uppercase letter are variables, those starting
with a lowercase letter or a digit are constants, as are double-quoted
strings.  Predicate names starting with ``__`` are reserved for auxiliary
predicates and ``_:`` (the null prefix) is rejected.
"""

from __future__ import annotations

import re

from .errors import ArityMismatch, NullInInput, TgdSyntaxError
from .model import Atom, ConjunctiveQuery, Constant, Null, Ontology, Program, Tgd, Variable

RESERVED_PREFIX = "__"

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<null>_:)
  | (?P<arrow>->)
  | (?P<query>\?-)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9][A-Za-z0-9_]*)
  | (?P<punct>[(),.:])
    """,
    re.VERBOSE,
)

_BARE_CONSTANT = re.compile(r"[a-z0-9][A-Za-z0-9_]*")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise TgdSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "null":
            raise NullInInput("nulls ('_:') are not allowed in input", line, col)
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), line, col))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text, allow_reserved):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved
        self.arity = {}

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        raise TgdSyntaxError(message, tok.line, tok.col)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind in ("string", "eof"):
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        self.i += 1

    def accept(self, text):
        if self.tok.text == text and self.tok.kind not in ("string", "eof"):
            self.i += 1
            return True
        return False

    def program(self):
        facts, rules, queries = [], [], []
        while self.tok.kind != "eof":
            if self.tok.kind == "query":
                queries.append(self.query())
                continue
            start = self.tok
            body = self.atoms()
            if self.accept("->"):
                head = self.atoms()
                self.expect(".")
                rules.append(Tgd(f"r{len(rules) + 1}", tuple(body), tuple(head)))
            else:
                self.expect(".")
                for a in body:
                    if not a.is_fact():
                        self.fail(f"fact {a} contains variables", start)
                facts.extend(a for a in body if a not in facts)
        return Program(tuple(facts), Ontology(tuple(rules)), tuple(queries))

    def query(self):
        start = self.tok
        self.i += 1
        output = []
        if self.tok.text != ":":
            while True:
                tok = self.tok
                term = self.term()
                if not isinstance(term, Variable):
                    self.fail("query outputs must be variables", tok)
                output.append(term)
                if not self.accept(","):
                    break
        self.expect(":")
        body = self.atoms()
        self.expect(".")
        try:
            return ConjunctiveQuery(tuple(output), tuple(body))
        except ValueError as exc:
            self.fail(str(exc), start)

    def atoms(self):
        out = [self.atom()]
        while self.accept(","):
            out.append(self.atom())
        return out

    def atom(self):
        tok = self.tok
        if tok.kind != "ident":
            self.fail(f"expected a predicate name, found {tok.text or 'end of input'!r}")
        name = tok.text
        if name.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            self.fail(f"predicate names starting with {RESERVED_PREFIX!r} are reserved")
        if name.startswith("_") and not name.startswith(RESERVED_PREFIX):
            self.fail(f"predicate names cannot start with '_': {name!r}")
        self.i += 1
        self.expect("(")
        args = []
        if not self.accept(")"):
            args.append(self.term())
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
        expected = self.arity.setdefault(name, len(args))
        if expected != len(args):
            raise ArityMismatch(name, len(args), expected, tok.line, tok.col)
        return Atom(name, tuple(args))

    def term(self):
        tok = self.tok
        if tok.kind == "string":
            self.i += 1
            return Constant(_unquote(tok.text))
        if tok.kind == "number":
            self.i += 1
            return Constant(tok.text)
        if tok.kind == "ident":
            if tok.text[0].isupper():
                self.i += 1
                return Variable(tok.text)
            if tok.text[0].islower():
                self.i += 1
                return Constant(tok.text)
            self.fail(f"identifiers cannot start with '_': {tok.text!r}")
        self.fail(f"expected a term, found {tok.text or 'end of input'!r}")


def _unquote(text):
    return re.sub(r"\\(.)", r"\1", text[1:-1])


def parse_program(text: str, *, allow_reserved: bool = False) -> Program:
    """Parse ``.dtgd`` text into a Program.

    Rules get ids ``r1, r2, ...`` in order of appearance.  Raises
    TgdSyntaxError, NullInInput or ArityMismatch, each with a location.
    """
    return _Parser(text, allow_reserved).program()


def parse_query(text: str, *, allow_reserved: bool = False) -> ConjunctiveQuery:
    """Parse a single query; the leading ``?-`` and trailing ``.`` are optional."""
    text = text.strip()
    if not text.startswith("?-"):
        text = "?- " + text
    if not text.endswith("."):
        text += "."
    program = parse_program(text, allow_reserved=allow_reserved)
    if len(program.queries) != 1 or program.database or len(program.ontology):
        raise TgdSyntaxError("expected exactly one query")
    return program.queries[0]


def format_term(term) -> str:
    if isinstance(term, Constant):
        if _BARE_CONSTANT.fullmatch(term.name):
            return term.name
        escaped = term.name.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(term, Null):
        return str(term)
    return term.name


def format_atom(atom: Atom) -> str:
    return f"{atom.predicate}({','.join(format_term(t) for t in atom.args)})"


def format_atoms(atoms) -> str:
    return ", ".join(format_atom(a) for a in atoms)


def format_rule(rule: Tgd) -> str:
    return f"{format_atoms(rule.body)} -> {format_atoms(rule.head)}."


def format_query(query: ConjunctiveQuery) -> str:
    outputs = ", ".join(v.name for v in query.output)
    sep = " : " if outputs else ": "
    return f"?- {outputs}{sep}{format_atoms(query.body)}."


def serialize_program(program: Program) -> str:
    lines = [format_atom(a) + "." for a in program.database]
    lines += [format_rule(r) for r in program.ontology.rules]
    lines += [format_query(q) for q in program.queries]
    return "".join(line + "\n" for line in lines)


def serialize_ontology(ontology: Ontology) -> str:
    return serialize_program(Program(ontology=ontology))
