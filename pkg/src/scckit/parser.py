"""Parser and pretty-printer for the `.scc` declaration syntax.

The surface syntax is s-expression flavored:

    (define-source Camera Picture)
    (define-action Screen Picture)
    (define-context MakeAd String [when-required get IP])
    (define-context ProcessPicture Picture [when-provided Camera always_publish])
    (define-controller Display [when-provided ComposeDisplay do Screen])

Comments run from ';' to end of line. Parsing never checks cross-references;
that is validate()'s job.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decls import (
    NAME_RE,
    ActionDecl,
    ContextDecl,
    ControllerDecl,
    DataType,
    Declaration,
    InteractionContract,
    PublishSpec,
    SourceDecl,
    Specification,
)
from .errors import ParseError

_KEYWORDS = ("define-source", "define-action", "define-context", "define-controller")
_PUNCT = "()[]"
_TYPE_NAMES = {t.value: t for t in DataType}


@dataclass(frozen=True)
class SourceText:
    content: str
    origin: str = "<memory>"


@dataclass(frozen=True)
class _Token:
    text: str  # one of "(", ")", "[", "]", a symbol, or "" for end of input
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.text == "" else f"'{self.text}'"


def _tokenize(src: SourceText) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i, text = 0, src.content
    while i < len(text):
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
        elif c.isspace():
            col += 1
            i += 1
        elif c == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif c in _PUNCT:
            tokens.append(_Token(c, line, col))
            col += 1
            i += 1
        else:
            start, start_col = i, col
            while i < len(text) and not text[i].isspace() and text[i] not in _PUNCT and text[i] != ";":
                i += 1
                col += 1
            tokens.append(_Token(text[start:i], line, start_col))
    tokens.append(_Token("", line, col))
    return tokens


class _Parser:
    def __init__(self, src: SourceText):
        self.origin = src.origin
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.text != "":
            self.pos += 1
        return tok

    def fail(self, tok: _Token, detail: str, code: str = "PARSE_ERROR"):
        raise ParseError(code, detail, self.origin, tok.line, tok.col)

    def expect(self, text: str) -> _Token:
        tok = self.advance()
        if tok.text != text:
            self.fail(tok, f"expected '{text}', found {tok.describe()}")
        return tok

    def symbol(self, what: str) -> _Token:
        tok = self.advance()
        if tok.text in _PUNCT or tok.text == "":
            self.fail(tok, f"expected {what}, found {tok.describe()}")
        return tok

    def name(self, what: str) -> str:
        tok = self.symbol(what)
        if not NAME_RE.fullmatch(tok.text):
            self.fail(tok, f"{tok.describe()} is not a valid {what}")
        return tok.text

    def data_type(self) -> DataType:
        tok = self.symbol("a type")
        if tok.text not in _TYPE_NAMES:
            expected = ", ".join(sorted(_TYPE_NAMES))
            self.fail(tok, f"unknown type {tok.describe()}; expected one of {expected}", code="UNKNOWN_TYPE")
        return _TYPE_NAMES[tok.text]

    def specification(self) -> Specification:
        decls = []
        while self.peek().text != "":
            decls.append(self.declaration())
        return Specification(tuple(decls))

    def declaration(self) -> Declaration:
        opener = self.expect("(")
        pos = (opener.line, opener.col)
        head = self.symbol("a declaration keyword")
        if head.text not in _KEYWORDS:
            self.fail(head, f"unknown declaration keyword {head.describe()}; "
                            f"expected one of {', '.join(_KEYWORDS)}", code="UNKNOWN_KEYWORD")
        if head.text == "define-source":
            decl = SourceDecl(self.name("component name"), self.data_type(), pos=pos)
        elif head.text == "define-action":
            decl = ActionDecl(self.name("component name"), self.data_type(), pos=pos)
        elif head.text == "define-context":
            name = self.name("component name")
            out_type = self.data_type()
            self.expect("[")
            contract = self.context_contract()
            self.expect("]")
            decl = ContextDecl(name, out_type, contract, pos=pos)
        else:
            name = self.name("component name")
            self.expect("[")
            self.expect("when-provided")
            trigger = self.name("component name")
            self.expect("do")
            action = self.name("component name")
            self.expect("]")
            decl = ControllerDecl(name, trigger, action, pos=pos)
        self.expect(")")
        return decl

    def context_contract(self) -> InteractionContract:
        head = self.advance()
        if head.text == "when-required":
            get = None
            if self.peek().text == "get":
                self.advance()
                get = self.name("component name")
            if self.peek().text != "]":
                self.fail(self.peek(), f"expected ']', found {self.peek().describe()}")
            return InteractionContract(None, get, PublishSpec.NO)
        if head.text == "when-provided":
            trigger = self.name("component name")
            get = None
            if self.peek().text == "get":
                self.advance()
                get = self.name("component name")
            pub = self.advance()
            if pub.text == "always_publish":
                publish = PublishSpec.ALWAYS
            elif pub.text == "maybe_publish":
                publish = PublishSpec.MAYBE
            else:
                self.fail(pub, f"expected 'always_publish' or 'maybe_publish', found {pub.describe()}")
            return InteractionContract(trigger, get, publish)
        self.fail(head, f"expected 'when-required' or 'when-provided', found {head.describe()}")


def parse(text: SourceText | str) -> Specification:
    src = text if isinstance(text, SourceText) else SourceText(text)
    return _Parser(src).specification()


def pretty_print(spec: Specification) -> SourceText:
    """Canonical one-declaration-per-line rendering; re-parses to an equal AST."""
    lines = [_format_declaration(d) for d in spec.declarations]
    return SourceText("".join(line + "\n" for line in lines))


def _format_declaration(decl: Declaration) -> str:
    if isinstance(decl, SourceDecl):
        return f"(define-source {decl.name} {decl.out_type})"
    if isinstance(decl, ActionDecl):
        return f"(define-action {decl.name} {decl.in_type})"
    if isinstance(decl, ContextDecl):
        return f"(define-context {decl.name} {decl.out_type} [{_format_contract(decl.contract)}])"
    return f"(define-controller {decl.name} [when-provided {decl.trigger} do {decl.action}])"


def _format_contract(c: InteractionContract) -> str:
    if c.trigger is None:
        if c.publish is not PublishSpec.NO:
            raise ValueError("when-required contract with a publish specification has no written form")
        return "when-required" + (f" get {c.get_target}" if c.get_target else "")
    if c.publish is PublishSpec.NO:
        raise ValueError("when-provided contract without a publish specification has no written form")
    words = ["when-provided", c.trigger]
    if c.get_target:
        words += ["get", c.get_target]
    words.append(c.publish.value)
    return " ".join(words)
