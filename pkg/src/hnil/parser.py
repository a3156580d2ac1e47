"""Line-oriented model files: parsing with positioned diagnostics, and the
canonical formatter.

Grammar (UTF-8, '#' starts a comment, statements fit on one line):

    document   := base_block fiber_block
    base_block := "base" "{" (gen_decl | d_decl | trunc_decl)* "}"
    fiber_block:= "fiber" "{" (gen_decl | D_decl)* "}"
    gen_decl   := "gen" IDENT ":" INT
    d_decl     := "d" IDENT "=" expr          (base generators only)
    D_decl     := "D" IDENT "=" expr          (fiber targets, base-only expr)
    trunc_decl := "truncate" INT
    expr       := "0" | ["-"] term (("+"|"-") term)*
    term       := [coeff "*"] factor ("*" factor)*
    coeff      := INT ["/" INT]
    factor     := IDENT ["^" INT]

Missing d/D declarations default to zero.  When no truncation is declared the
model gets the smallest budget that makes every exposed computation faithful:
max fiber degree + 2 (and at least every generator degree).
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSignature, Element, GeneratorSymbol, format_element
from .bundle import BundleModel
from .cdga import CDGA
from .errors import Diagnostic, ParseError

RESERVED = {"base", "fiber", "gen", "d", "D", "truncate"}

SYMBOLS = set("{}:=+-*/^")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "int" | "sym"
    text: str
    line: int
    column: int


def _tokenize(text: str, diagnostics: list[Diagnostic]) -> list[Token]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        while col < len(line):
            ch = line[col]
            if ch.isspace():
                col += 1
                continue
            start = col
            if ch.isdigit():
                while col < len(line) and line[col].isdigit():
                    col += 1
                tokens.append(Token("int", line[start:col], lineno, start + 1))
            elif ch.isalpha() or ch == "_":
                while col < len(line) and (line[col].isalnum() or line[col] == "_"):
                    col += 1
                tokens.append(Token("ident", line[start:col], lineno, start + 1))
            elif ch in SYMBOLS:
                tokens.append(Token("sym", ch, lineno, start + 1))
                col += 1
            else:
                diagnostics.append(
                    Diagnostic(lineno, start + 1, f"unexpected character {ch!r}")
                )
                col += 1
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.diagnostics: list[Diagnostic] = []
        self.tokens = _tokenize(text, self.diagnostics)
        self.pos = 0
        self.base_gens: list[tuple[str, int]] = []
        self.fiber_gens: list[tuple[str, int]] = []
        self.d_exprs: list[tuple[str, list[Token], Token]] = []
        self.D_exprs: list[tuple[str, list[Token], Token]] = []
        self.truncation: int | None = None

    # -- token helpers ----------------------------------------------------
    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token | None:
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def error(self, tok: Token | None, message: str):
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.column + len(last.text) if last else 1
            self.diagnostics.append(Diagnostic(line, col, message))
        else:
            self.diagnostics.append(Diagnostic(tok.line, tok.column, message))

    def expect(self, kind: str, text: str | None = None) -> Token | None:
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            self.error(tok, f"expected {want!r}")
            return None
        return self.advance()

    def skip_line(self, line: int):
        while self.peek() is not None and self.peek().line == line:
            self.advance()

    # -- statements --------------------------------------------------------
    def parse_document(self):
        self.parse_block("base")
        self.parse_block("fiber")
        trailing = self.peek()
        if trailing is not None:
            self.error(trailing, "unexpected content after the fiber block")

    def parse_block(self, which: str):
        head = self.expect("ident", which)
        if head is None:
            return
        if self.expect("sym", "{") is None:
            return
        while True:
            tok = self.peek()
            if tok is None:
                self.error(None, f"unterminated {which} block, expected '}}'")
                return
            if tok.kind == "sym" and tok.text == "}":
                self.advance()
                return
            self.parse_statement(which, tok)

    def parse_statement(self, which: str, tok: Token):
        if tok.kind != "ident":
            self.error(tok, "expected a declaration")
            self.skip_line(tok.line)
            return
        if tok.text == "gen":
            self.advance()
            self.parse_gen(which, tok)
        elif tok.text == "truncate" and which == "base":
            self.advance()
            number = self.expect("int")
            if number is not None:
                value = int(number.text)
                if value < 1:
                    self.error(number, "truncation degree must be positive")
                elif self.truncation is not None:
                    self.error(number, "duplicate truncate declaration")
                else:
                    self.truncation = value
            self.end_statement(tok.line)
        elif tok.text == "d" and which == "base":
            self.advance()
            self.parse_diff(which, tok, self.d_exprs)
        elif tok.text == "D" and which == "fiber":
            self.advance()
            self.parse_diff(which, tok, self.D_exprs)
        else:
            allowed = "gen, d, truncate" if which == "base" else "gen, D"
            self.error(tok, f"expected one of: {allowed}")
            self.skip_line(tok.line)

    def parse_gen(self, which: str, head: Token):
        name_tok = self.expect("ident")
        if name_tok is None:
            self.skip_line(head.line)
            return
        if name_tok.text in RESERVED:
            self.error(name_tok, f"{name_tok.text!r} is a reserved word")
        if self.expect("sym", ":") is None:
            self.skip_line(head.line)
            return
        deg_tok = self.expect("int")
        if deg_tok is None:
            self.skip_line(head.line)
            return
        degree = int(deg_tok.text)
        if degree < 1:
            self.error(deg_tok, "generator degree must be >= 1")
            degree = 1
        known = {n for n, _ in self.base_gens} | {n for n, _ in self.fiber_gens}
        if name_tok.text in known:
            self.error(name_tok, f"duplicate generator {name_tok.text!r}")
        elif name_tok.text not in RESERVED:
            target = self.base_gens if which == "base" else self.fiber_gens
            target.append((name_tok.text, degree))
        self.end_statement(head.line)

    def parse_diff(self, which: str, head: Token, store: list):
        name_tok = self.expect("ident")
        if name_tok is None:
            self.skip_line(head.line)
            return
        if self.expect("sym", "=") is None:
            self.skip_line(head.line)
            return
        expr_tokens = []
        while self.peek() is not None and self.peek().line == head.line:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in "{}":
                break
            expr_tokens.append(self.advance())
        if not expr_tokens:
            self.error(name_tok, "missing expression after '='")
            return
        store.append((name_tok.text, expr_tokens, name_tok))

    def end_statement(self, line: int):
        tok = self.peek()
        if tok is not None and tok.line == line and not (
            tok.kind == "sym" and tok.text in "{}"
        ):
            self.error(tok, "unexpected trailing tokens; one statement per line")
            self.skip_line(line)

    # -- expressions --------------------------------------------------------
    def eval_expr(self, tokens: list[Token], sig: AlgebraSignature, fiber_names) -> Element:
        state = {"pos": 0}

        def peek():
            return tokens[state["pos"]] if state["pos"] < len(tokens) else None

        def advance():
            tok = peek()
            if tok is not None:
                state["pos"] += 1
            return tok

        zero = sig.zero()
        if len(tokens) == 1 and tokens[0].kind == "int" and tokens[0].text == "0":
            return zero

        def parse_factor() -> Element | None:
            tok = peek()
            if tok is None or tok.kind != "ident":
                self.error(tok if tok else tokens[-1], "expected a generator name")
                return None
            advance()
            if tok.text in fiber_names:
                self.error(tok, f"D-values must lie in the base algebra: "
                                f"{tok.text!r} is a fiber generator")
                return None
            try:
                elem = sig.gen(tok.text)
            except Exception:
                self.error(tok, f"unknown generator {tok.text}")
                return None
            nxt = peek()
            if nxt is not None and nxt.kind == "sym" and nxt.text == "^":
                advance()
                exp_tok = peek()
                if exp_tok is None or exp_tok.kind != "int":
                    self.error(exp_tok if exp_tok else tok, "expected an exponent")
                    return None
                advance()
                e = int(exp_tok.text)
                if e < 1:
                    self.error(exp_tok, "exponent must be positive")
                    return None
                out = elem
                for _ in range(e - 1):
                    out = out * elem
                return out
            return elem

        def parse_term() -> Element | None:
            coeff = Fraction(1)
            tok = peek()
            if tok is not None and tok.kind == "int":
                advance()
                num = int(tok.text)
                den = 1
                nxt = peek()
                if nxt is not None and nxt.kind == "sym" and nxt.text == "/":
                    advance()
                    den_tok = peek()
                    if den_tok is None or den_tok.kind != "int":
                        self.error(den_tok if den_tok else tok, "expected a denominator")
                        return None
                    advance()
                    den = int(den_tok.text)
                    if den == 0:
                        self.error(den_tok, "denominator must be nonzero")
                        return None
                if self.expect_expr_sym(peek(), "*", tok):
                    advance()
                else:
                    return None
                coeff = Fraction(num, den)
            out = parse_factor()
            if out is None:
                return None
            while True:
                nxt = peek()
                if nxt is None or nxt.kind != "sym" or nxt.text != "*":
                    break
                advance()
                factor = parse_factor()
                if factor is None:
                    return None
                out = out * factor
            return out.scale(coeff)

        result = zero
        sign = 1
        first = peek()
        if first is not None and first.kind == "sym" and first.text in "+-":
            advance()
            sign = -1 if first.text == "-" else 1
        while True:
            term = parse_term()
            if term is None:
                return zero
            result = result + term.scale(sign)
            tok = peek()
            if tok is None:
                return result
            if tok.kind == "sym" and tok.text in "+-":
                advance()
                sign = -1 if tok.text == "-" else 1
                continue
            self.error(tok, "expected '+' or '-'")
            return result

    def expect_expr_sym(self, tok, text, anchor) -> bool:
        if tok is None or tok.kind != "sym" or tok.text != text:
            self.error(tok if tok else anchor, f"expected {text!r} after coefficient")
            return False
        return True

    # -- model construction --------------------------------------------------
    def build(self) -> BundleModel:
        max_fiber = max((d for _, d in self.fiber_gens), default=0)
        all_degrees = [d for _, d in self.base_gens] + [d for _, d in self.fiber_gens]
        minimum = max([max_fiber + 2, *all_degrees, 2])
        T = self.truncation if self.truncation is not None else minimum
        for name, degree in self.base_gens + self.fiber_gens:
            if degree > T:
                self.diagnostics.append(
                    Diagnostic(1, 1, f"truncation degree {T} below generator "
                                     f"{name!r} of degree {degree}")
                )
        if self.diagnostics:
            raise ParseError(self.diagnostics)
        base_sig = AlgebraSignature(
            tuple(GeneratorSymbol(n, d, "base") for n, d in self.base_gens),
            truncation=T,
        )
        base_names = {n for n, _ in self.base_gens}
        fiber_names = {n for n, _ in self.fiber_gens}
        d_values = {}
        for name, expr_tokens, anchor in self.d_exprs:
            if name not in base_names:
                self.error(anchor, f"unknown generator {name}")
                continue
            value = self.eval_expr(expr_tokens, base_sig, fiber_names)
            self.check_degree(value, dict(self.base_gens)[name], anchor)
            if not value.is_zero():
                d_values[name] = value
        D_values = {}
        for name, expr_tokens, anchor in self.D_exprs:
            if name not in fiber_names:
                self.error(anchor, f"unknown generator {name}")
                continue
            value = self.eval_expr(expr_tokens, base_sig, fiber_names)
            self.check_degree(value, dict(self.fiber_gens)[name], anchor)
            if not value.is_zero():
                D_values[name] = value
        if self.diagnostics:
            raise ParseError(self.diagnostics)
        base = CDGA(base_sig, d_values)
        return BundleModel(
            base=base,
            fiber=tuple(GeneratorSymbol(n, d, "fiber") for n, d in self.fiber_gens),
            D_values=D_values,
        )

    def check_degree(self, value: Element, gen_degree: int, anchor: Token):
        if value.is_zero():
            return
        degree = value.homogeneous_degree()
        if degree != gen_degree + 1:
            found = degree if degree is not None else "a mixed-degree expression"
            self.error(anchor, f"degree mismatch: expected {gen_degree + 1}, found {found}")


def parse_model(text: str) -> BundleModel:
    """Parse model text; raises ParseError carrying positioned diagnostics."""
    parser = _Parser(text)
    parser.parse_document()
    return parser.build()


@dataclass
class ModelDocument:
    """Source text together with the model it parses to."""

    source: str
    model: BundleModel

    @classmethod
    def parse(cls, text: str) -> "ModelDocument":
        return cls(source=text, model=parse_model(text))


def format_model(b: BundleModel) -> str:
    """Canonical text form; parse(format(b)) reproduces an equal model."""
    lines = ["base {"]
    T = b.base.signature.truncation
    if T is not None:
        lines.append(f"  truncate {T}")
    for g in b.base.signature.generators:
        lines.append(f"  gen {g.name}:{g.degree}")
    for g in b.base.signature.generators:
        value = b.base.d_values.get(g.name)
        if value is not None and not value.is_zero():
            lines.append(f"  d {g.name} = {format_element(value)}")
    lines.append("}")
    lines.append("fiber {")
    for g in b.fiber:
        lines.append(f"  gen {g.name}:{g.degree}")
    for g in b.fiber:
        value = b.D_values.get(g.name)
        if value is not None and not value.is_zero():
            lines.append(f"  D {g.name} = {format_element(value)}")
    lines.append("}")
    return "\n".join(lines) + "\n"
