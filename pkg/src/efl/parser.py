"""Recursive-descent parser for the ASCII concrete syntax.

Formulas::

    phi ::= IDENT | true | false | "~" phi | "(" phi BINOP phi ")"
          | ("K"|"F"|"A"|"D") phi | "<" ("K"|"F"|"A"|"D") ">" phi
          | "@" IDENT phi | "down" IDENT "." phi | "C" "{" IDENT,... "}" phi
          | "[" op "]" phi | "[[" pi "]]" phi | sugar
    BINOP ::= "&" | "|" | "->" | "<->"

Programs (";" binds tighter than "|", "*" is postfix)::

    pi ::= "K" | "F" | "A" | "D" | IDENT' | phi "?" | "(" pi ")" | pi ";" pi
         | pi "|" pi | pi "*" | cutK(phi) | cutF(n, m) | kbar(n) | ck(phi)

Operators inside brackets: ``K := pi, p := phi`` (simultaneous), several
joined by ``then`` (sequential), ``send(theta, psi)``, ``$name`` for an
operator supplied by the caller, or an inline action structure
``gddl *d0 = (K := pi), d1 = I ; K' = d0>d1 d1>d0 ; K := pi``.

Identifiers are nominals when declared, bound by ``down``/``@`` or used in a
nominal slot anywhere in the text; otherwise propositional variables.
"""
import re

from .errors import ParseError
from .syntax import (
    ASSIGNABLE, FALSE, IDENTITY, TRUE, AddFriend, And, Ask, At, Box, CommonC,
    CommonKnow, Composite, DelFriend, Down, Dyn, FriendRequest, GDDLOperator, Iff,
    Implies, Internal, KBarBox, Nom, Not, Or, PBox, PDLTransformation, Prop,
    ReceiverAnnounce, Rel, SenderAnnounce, Seq, Star, Test, Union,
)

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'?)
  | (?P<sym><->|<!!|!!>|<!|!>|->|\?\?|:=|\[|\]|\(|\)|\{|\}|<|>|~|&|\||;|\?|:|,|\.|@|\*|\$|=)
""", re.VERBOSE)

MODALITIES = ("K", "F", "A", "D")
KEYWORDS = set(MODALITIES) | {"down", "true", "false"}
ANNOUNCE = {"<!": (SenderAnnounce, False), "<!!": (SenderAnnounce, True),
            "!>": (ReceiverAnnounce, False), "!!>": (ReceiverAnnounce, True)}
BINOPS = ("&", "|", "->", "<->")


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text!r}"


def tokenize(text):
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        else:
            nl = m.group().count("\n")
            if nl:
                line += nl
                line_start = m.start() + m.group().rfind("\n") + 1
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


class _Fail(Exception):
    pass


def _nominal_slots(toks):
    """Identifiers sitting in syntactic nominal positions."""
    found = set()
    n = len(toks)
    for i, t in enumerate(toks):
        nxt = toks[i + 1] if i + 1 < n else None
        if t.text in ("@", "down", "Kbar", "request") and nxt is not None and nxt.kind == "ident":
            found.add(nxt.text)
        elif t.text in ("delF", "addF") and i + 2 < n:
            found.update(x.text for x in toks[i + 1:i + 3] if x.kind == "ident")
        elif t.text in ("cutF", "kbar") and nxt is not None and nxt.text == "(":
            j = i + 2
            while j < n and toks[j].text != ")":
                if toks[j].kind == "ident":
                    found.add(toks[j].text)
                j += 1
        elif t.text == "C" and nxt is not None and nxt.text == "{":
            j = i + 2
            while j < n and toks[j].text != "}":
                if toks[j].kind == "ident":
                    found.add(toks[j].text)
                j += 1
        elif (t.text == "[" and nxt is not None and nxt.kind == "ident" and i + 2 < n
              and not (i > 0 and toks[i - 1].text == "[")):  # [[p?]] is a program box
            if toks[i + 2].text in ANNOUNCE or toks[i + 2].text in ("?", "??"):
                found.add(nxt.text)
    return found


class Parser:
    def __init__(self, text, nominals=(), defs=None, operators=None):
        self.toks = tokenize(text)
        self.pos = 0
        self.nominals = set(nominals) | _nominal_slots(self.toks)
        self.defs = dict(defs or {})
        self.operators = dict(operators or {})
        self.best = (-1, set())

    # token helpers

    @property
    def tok(self):
        return self.toks[self.pos]

    def peek(self, k=1):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def fail(self, *expected):
        if self.pos > self.best[0]:
            self.best = (self.pos, set(expected))
        elif self.pos == self.best[0]:
            self.best[1].update(expected)
        raise _Fail()

    def accept(self, text):
        if self.tok.text == text and self.tok.kind != "eof":
            self.pos += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.fail(repr(text))

    def ident(self, what="identifier"):
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            self.fail(what)
        self.pos += 1
        return t.text

    def attempt(self, fn):
        save = self.pos
        try:
            return fn()
        except _Fail:
            self.pos = save
            return None

    def run(self, fn):
        try:
            result = fn()
            if self.tok.kind != "eof":
                self.fail("end of input")
            return result
        except _Fail:
            pos, expected = self.best
            t = self.toks[max(pos, 0)]
            found = t.text or "end of input"
            raise ParseError(f"syntax error near {found!r}", t.line, t.col, expected) from None

    # formulas

    def formula(self):
        t = self.tok
        if t.kind == "eof":
            self.fail("formula")
        x = t.text
        if x == "~":
            self.pos += 1
            return Not(self.formula())
        if x == "(":
            self.pos += 1
            left = self.formula()
            op = self.tok.text
            if op not in BINOPS:
                self.fail(*map(repr, BINOPS))
            self.pos += 1
            right = self.formula()
            self.expect(")")
            if op == "&":
                return And(left, right)
            if op == "|":
                return Or(left, right)
            if op == "->":
                return Implies(left, right)
            return Iff(left, right)
        if x in MODALITIES and t.kind == "ident":
            self.pos += 1
            return Box(x, self.formula())
        if x == "<":
            self.pos += 1
            op = self.tok.text
            if op not in MODALITIES:
                self.fail(*map(repr, MODALITIES))
            self.pos += 1
            self.expect(">")
            return Not(Box(op, Not(self.formula())))
        if x == "@":
            self.pos += 1
            n = self.ident("nominal")
            return At(n, self.formula())
        if x == "down":
            self.pos += 1
            n = self.ident("nominal")
            self.expect(".")
            return Down(n, self.formula())
        if x == "true":
            self.pos += 1
            return TRUE
        if x == "false":
            self.pos += 1
            return FALSE
        if x == "C" and self.peek().text == "{":
            self.pos += 2
            names = [self.ident("nominal")]
            while self.accept(","):
                names.append(self.ident("nominal"))
            self.expect("}")
            return CommonC(tuple(names), self.formula())
        if x == "[":
            return self.bracket()
        if t.kind == "ident" and x not in KEYWORDS:
            self.pos += 1
            if x in self.defs:
                return self.defs[x]
            return Nom(x) if x in self.nominals else Prop(x)
        self.fail("formula")

    def bracket(self):
        self.expect("[")
        t, t2 = self.tok, self.peek()
        if t.text == "[":
            self.pos += 1
            pi = self.program()
            self.expect("]")
            self.expect("]")
            return PBox(pi, self.formula())
        if t.kind == "ident" and t2.text in ANNOUNCE:
            cls, private = ANNOUNCE[t2.text]
            self.pos += 2
            psi = self.formula()
            self.expect(":")
            theta = self.formula()
            self.expect("]")
            return cls(t.text, psi, theta, self.formula(), private)
        if t.text == "request" and t2.text != ":=":
            self.pos += 1
            private = self.accept("??")
            m = self.ident("nominal")
            self.expect("]")
            return FriendRequest(m, self.formula(), private)
        if t.kind == "ident" and t2.text in ("?", "??"):
            self.pos += 2
            psi = self.formula()
            self.expect(":")
            m = self.ident("nominal")
            self.expect("]")
            return Ask(t.text, psi, m, self.formula(), t2.text == "??")
        if t.text in ("delF", "addF") and t2.text != ":=":
            self.pos += 1
            n, m = self.ident("nominal"), self.ident("nominal")
            self.expect("]")
            cls = DelFriend if t.text == "delF" else AddFriend
            return cls(n, m, self.formula())
        if t.text == "CK" and t2.text != ":=":
            self.pos += 1
            theta = self.formula()
            self.expect("]")
            return CommonKnow(theta, self.formula())
        if t.text == "Kbar" and t2.text != ":=":
            self.pos += 1
            a = self.ident("nominal")
            self.expect("]")
            return KBarBox(a, self.formula())
        op = self.operator()
        self.expect("]")
        return Dyn(op, self.formula())

    # dynamic operators

    def operator(self):
        t = self.tok
        if t.text == "$":
            self.pos += 1
            name = self.ident("operator name")
            if name not in self.operators:
                self.pos -= 1
                self.fail(f"a known operator (not {name!r})")
            return self.operators[name]
        if t.text == "gddl" and self.peek().text != ":=":
            return self.gddl()
        if t.text in ("delF", "addF") and self.peek().text != ":=":
            from .macros import add_friend, delete_friend
            self.pos += 1
            n, m = self.ident("nominal"), self.ident("nominal")
            self.nominals.update((n, m))
            return delete_friend(n, m) if t.text == "delF" else add_friend(n, m)
        steps = [self.transformation()]
        while self.tok.text == "then" and self.tok.kind == "ident":
            self.pos += 1
            steps.append(self.transformation())
        return steps[0] if len(steps) == 1 else Composite(tuple(steps))

    def transformation(self):
        if self.tok.text == "I" and self.peek().text != ":=":
            self.pos += 1
            return IDENTITY
        if self.tok.text == "send" and self.peek().text == "(":
            from .macros import send
            self.pos += 2
            theta = self.formula()
            self.expect(",")
            psi = self.formula()
            self.expect(")")
            return send(theta, psi)
        items = [self.assignment()]
        while self.accept(","):
            items.append(self.assignment())
        try:
            return PDLTransformation(tuple(items))
        except ValueError as e:
            self.fail(str(e))

    def assignment(self):
        t = self.tok
        if t.kind != "ident" or self.peek().text != ":=":
            self.fail("assignment target")
        self.pos += 2
        if t.text in ASSIGNABLE:
            return (t.text, self.program())
        if t.text in KEYWORDS:
            self.pos -= 2
            self.fail("assignable target")
        return (t.text, self.formula())

    def gddl(self):
        self.expect("gddl")
        actions, effects, actual = [], [], None
        while True:
            star = self.accept("*")
            name = self.ident("action")
            self.expect("=")
            if self.tok.text == "I" and self.peek().text != ":=":
                self.pos += 1
                eff = IDENTITY
            else:
                self.expect("(")
                eff = self.transformation()
                self.expect(")")
            actions.append(name)
            effects.append(eff)
            if star:
                if actual is not None:
                    self.fail("a single actual action")
                actual = name
            if not self.accept(","):
                break
        self.expect(";")
        internal = {}
        while self.tok.kind == "ident" and self.peek().text == "=":
            rel = self.tok.text
            self.pos += 2
            pairs = set()
            while self.tok.kind == "ident" and self.peek().text == ">":
                d = self.tok.text
                self.pos += 2
                pairs.add((d, self.ident("action")))
            internal[rel] = pairs
            if not self.accept(","):
                break
        self.expect(";")
        integrate = self.transformation()
        if actual is None:
            self.fail("an action marked actual with '*'")
        try:
            return GDDLOperator(tuple(actions), actual, tuple(effects), internal, integrate)
        except (ValueError, TypeError) as e:
            self.fail(str(e))

    # programs

    def program(self):
        left = self.program_seq()
        while self.accept("|"):
            left = Union(left, self.program_seq())
        return left

    def program_seq(self):
        left = self.program_post()
        while self.accept(";"):
            left = Seq(left, self.program_post())
        return left

    def program_post(self):
        p = self.program_atom()
        while self.accept("*"):
            p = Star(p)
        return p

    def _test(self):
        phi = self.formula()
        self.expect("?")
        return Test(phi)

    def program_atom(self):
        t = self.tok
        test = self.attempt(self._test)
        if test is not None:
            return test
        if t.kind == "ident":
            x = t.text
            if x in MODALITIES:
                self.pos += 1
                return Rel(x)
            if x.endswith("'"):
                self.pos += 1
                return Internal(x)
            if x in ("cutK", "ck", "cutF", "kbar") and self.peek().text == "(":
                from . import macros
                from .dynamics import cut_K
                self.pos += 2
                if x in ("cutK", "ck"):
                    phi = self.formula()
                    self.expect(")")
                    return cut_K(phi) if x == "cutK" else macros.ck(phi)
                n = self.ident("nominal")
                if x == "kbar":
                    self.expect(")")
                    return macros.kbar(n)
                self.expect(",")
                m = self.ident("nominal")
                self.expect(")")
                return macros.cut_F(n, m)
        if t.text == "(":
            self.pos += 1
            p = self.program()
            self.expect(")")
            return p
        self.fail("program term")


def parse_formula(text, nominals=(), defs=None, operators=None):
    """Parse a formula; ``nominals`` declares identifiers naming agents and
    ``defs`` maps abbreviations (such as ``d``) to formulas."""
    p = Parser(text, nominals, defs, operators)
    return p.run(p.formula)


def parse_program(text, nominals=(), defs=None):
    p = Parser(text, nominals, defs)
    return p.run(p.program)


def parse_operator(text, nominals=(), defs=None, operators=None):
    """Parse a dynamic operator, with or without its surrounding brackets."""
    text = text.strip()
    if text.startswith("[") and text.endswith("]") and not text.startswith("[["):
        text = text[1:-1]
    p = Parser(text, nominals, defs, operators)
    return p.run(p.operator)


def parse_defs(defs, nominals=()):
    """Parse a mapping of abbreviation name to formula text; later entries may
    use earlier ones."""
    out = {}
    for name, text in defs.items():
        out[name] = parse_formula(text, nominals=nominals, defs=out)
    return out
