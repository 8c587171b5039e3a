"""The subgoal policy language: Do/Until blocks of prioritized From rules.

Concrete syntax (whitespace-insensitive within lines, '#' comments):

    Do:
        From [(0, 0), (0, 2)] ->
            Target [(1, 0), (1, 2)], Preference: (1, 0)
            Else Target [(0, 0), (1, 0)], Preference: (0, 0)
            GO RIGHT
    Until([(1, 0), (1, 2)])

The first Target of a From has no Else, later ones require it; GO lines
never take Else.  The printer emits the canonical 4-space ladder above and
parse(print(p)) is the identity on ASTs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .geometry import Direction, Point, Segment, fmt_rat


class DslError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Target:
    segment: Segment
    preference: Point

    def __post_init__(self):
        if self.preference not in (self.segment.a, self.segment.b):
            raise ValueError(
                f"preference {self.preference} is not an endpoint of {self.segment}"
            )


@dataclass(frozen=True)
class Go:
    direction: Direction


Alt = Union[Target, Go]


@dataclass(frozen=True)
class FromInstr:
    source: Segment
    alternatives: Tuple[Alt, ...]

    def __post_init__(self):
        if not self.alternatives:
            raise ValueError("a From instruction needs at least one alternative")


@dataclass(frozen=True)
class DoUntil:
    body: Tuple[FromInstr, ...]
    goal: Segment


@dataclass(frozen=True)
class Program:
    blocks: Tuple[DoUntil, ...]


# -- printing ---------------------------------------------------------------


def _fmt_point(p: Point) -> str:
    return f"({fmt_rat(p.x)}, {fmt_rat(p.y)})"


def _fmt_segment(s: Segment) -> str:
    return f"[{_fmt_point(s.a)}, {_fmt_point(s.b)}]"


def print_program(program: Program) -> str:
    lines: List[str] = []
    for block in program.blocks:
        lines.append("Do:")
        for instr in block.body:
            lines.append(f"    From {_fmt_segment(instr.source)} ->")
            for k, alt in enumerate(instr.alternatives):
                if isinstance(alt, Go):
                    lines.append(f"        GO {alt.direction.name}")
                else:
                    prefix = "Else Target" if k > 0 else "Target"
                    lines.append(
                        f"        {prefix} {_fmt_segment(alt.segment)},"
                        f" Preference: {_fmt_point(alt.preference)}"
                    )
        lines.append(f"Until({_fmt_segment(block.goal)})")
    return "\n".join(lines) + ("\n" if lines else "")


def program_size(program: Program) -> dict:
    """instructions = Target/GO alternatives in total; bytes = printed length."""
    instructions = sum(
        len(instr.alternatives) for block in program.blocks for instr in block.body
    )
    return {
        "instructions": instructions,
        "bytes": len(print_program(program).encode("utf-8")),
    }


# -- parsing ----------------------------------------------------------------

_KEYWORDS = {"Do", "Until", "From", "Target", "Else", "Preference", "GO"}
_DIRECTIONS = {"LEFT", "RIGHT", "UP", "DOWN"}
_PUNCT = ("->", "[", "]", "(", ")", ",", ":")


@dataclass
class _Token:
    kind: str  # 'word', 'number', or the punctuation itself
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        i = 0
        while i < len(line):
            ch = line[i]
            if ch.isspace():
                i += 1
                continue
            if line.startswith("->", i):
                tokens.append(_Token("->", "->", lineno, i + 1))
                i += 2
                continue
            if ch in "[](),:":
                tokens.append(_Token(ch, ch, lineno, i + 1))
                i += 1
                continue
            if ch.isdigit() or (ch == "-" and i + 1 < len(line) and line[i + 1].isdigit()):
                j = i + 1
                while j < len(line) and (line[j].isdigit() or line[j] == "/"):
                    j += 1
                tokens.append(_Token("number", line[i:j], lineno, i + 1))
                i = j
                continue
            if ch.isalpha():
                j = i + 1
                while j < len(line) and line[j].isalpha():
                    j += 1
                tokens.append(_Token("word", line[i:j], lineno, i + 1))
                i = j
                continue
            raise DslError(lineno, i + 1, f"unexpected character {ch!r}")
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def _error(self, msg: str):
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            raise DslError(t.line, t.col, f"{msg}, found {t.text!r}")
        last = self.tokens[-1] if self.tokens else _Token("", "", 1, 1)
        raise DslError(last.line, last.col + len(last.text), f"{msg}, found end of input")

    def peek(self, kind: str, text: Optional[str] = None) -> bool:
        if self.pos >= len(self.tokens):
            return False
        t = self.tokens[self.pos]
        return t.kind == kind and (text is None or t.text == text)

    def take(self, kind: str, text: Optional[str] = None) -> _Token:
        if not self.peek(kind, text):
            expected = text if text is not None else kind
            self._error(f"expected {expected!r}")
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def rat(self) -> Fraction:
        t = self.take("number")
        try:
            value = Fraction(t.text)
        except (ValueError, ZeroDivisionError):
            raise DslError(t.line, t.col, f"bad rational {t.text!r}")
        if "/" in t.text and value.denominator < 0:
            raise DslError(t.line, t.col, "denominator must be positive")
        return value

    def point(self) -> Point:
        self.take("(")
        x = self.rat()
        self.take(",")
        y = self.rat()
        self.take(")")
        return Point(x, y)

    def segment(self) -> Segment:
        self.take("[")
        a = self.point()
        self.take(",")
        b = self.point()
        self.take("]")
        return Segment(a, b)

    def alternative(self, first: bool) -> Alt:
        if self.peek("word", "GO"):
            self.take("word", "GO")
            t = self.take("word")
            if t.text not in _DIRECTIONS:
                raise DslError(t.line, t.col, f"unknown direction {t.text!r}")
            return Go(Direction[t.text])
        if self.peek("word", "Else"):
            if first:
                self._error("the first alternative must not carry 'Else'")
            self.take("word", "Else")
        elif not first:
            self._error("expected 'Else' before a later Target")
        tok = self.take("word", "Target")
        segment = self.segment()
        self.take(",")
        self.take("word", "Preference")
        self.take(":")
        pref = self.point()
        try:
            return Target(segment, pref)
        except ValueError as exc:
            raise DslError(tok.line, tok.col, str(exc))

    def from_instr(self) -> FromInstr:
        self.take("word", "From")
        source = self.segment()
        self.take("->")
        alts: List[Alt] = [self.alternative(first=True)]
        while self.peek("word", "Target") or self.peek("word", "Else") or self.peek("word", "GO"):
            alts.append(self.alternative(first=False))
        return FromInstr(source, tuple(alts))

    def block(self) -> DoUntil:
        self.take("word", "Do")
        self.take(":")
        body: List[FromInstr] = []
        while self.peek("word", "From"):
            body.append(self.from_instr())
        self.take("word", "Until")
        self.take("(")
        goal = self.segment()
        self.take(")")
        return DoUntil(tuple(body), goal)

    def program(self) -> Program:
        blocks: List[DoUntil] = []
        while self.peek("word", "Do"):
            blocks.append(self.block())
        if self.pos != len(self.tokens):
            self._error("expected 'Do' or end of input")
        return Program(tuple(blocks))


def parse(text: str) -> Program:
    return _Parser(text).program()
