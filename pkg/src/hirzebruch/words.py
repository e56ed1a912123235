"""Words in the generators Tinf, T0, T1 of Gamma(2) and their free-group calculus.

Gamma(2) is presented as <Tinf, T0, T1 | Tinf T0 T1 = 1>, so it is free on
Tinf and T0.  Free-group computations eliminate T1 = T0^-1 Tinf^-1.
"""
from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

GENERATORS = ("Tinf", "T0", "T1")
FREE_BASIS = ("Tinf", "T0")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class InternalInconsistency(RuntimeError):
    pass


Letter = Tuple[str, int]


def _normalize(letters: Iterable[Letter]) -> tuple:
    stack: list = []
    for g, e in letters:
        if g not in GENERATORS:
            raise ValueError(f"unknown generator {g!r}")
        e = int(e)
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            merged = stack[-1][1] + e
            stack.pop()
            if merged:
                stack.append((g, merged))
        else:
            stack.append((g, e))
    return tuple(stack)


@dataclass(frozen=True)
class GenWord:
    """Normalized word: adjacent syllables have distinct generators."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _normalize(self.letters))

    def __mul__(self, other: "GenWord") -> "GenWord":
        return GenWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "GenWord":
        if k < 0:
            return invert(self) ** (-k)
        return GenWord(self.letters * k)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __str__(self):
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)

    def to_json(self) -> list:
        return [[g, e] for g, e in self.letters]


def word(*letters: Letter) -> GenWord:
    return GenWord(tuple(letters))


def gen(name: str, exponent: int = 1) -> GenWord:
    return GenWord(((name, exponent),))


def invert(w: GenWord) -> GenWord:
    return GenWord(tuple((g, -e) for g, e in reversed(w.letters)))


def commutator(a: GenWord, b: GenWord) -> GenWord:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * invert(a) * invert(b)


# -- parsing -----------------------------------------------------------------------

class _Parser:
    """Recursive descent over the term grammar plus [a,b] and (w)^k shorthand."""

    def __init__(self, text: str, shorthand: bool):
        self.text = text
        self.pos = 0
        self.shorthand = shorthand

    def error(self, message: str, pos: int = None):
        raise WordSyntaxError(message, self.pos if pos is None else pos, self.text)

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> GenWord:
        w = self.sequence()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return w

    def sequence(self) -> GenWord:
        letters: list = []
        while True:
            c = self.peek()
            if not c or c in "]),":
                return GenWord(tuple(letters))
            letters.extend(self.factor().letters)

    def _exponent(self) -> int:
        if self.peek() != "^":
            return 1
        m = re.compile(r"\^([+-]?\d+)").match(self.text, self.pos)
        if not m:
            self.error("malformed exponent")
        self.pos = m.end()
        return int(m.group(1))

    def factor(self) -> GenWord:
        start = self.pos
        m = re.compile(r"(Tinf|T0|T1)(?![A-Za-z0-9_])").match(self.text, self.pos)
        if m:
            self.pos = m.end()
            if self.text.startswith("^", self.pos):
                m2 = re.compile(r"\^([+-]?\d+)").match(self.text, self.pos)
                if not m2:
                    self.error("malformed exponent")
                self.pos = m2.end()
                e = int(m2.group(1))
                if e == 0:
                    self.error("exponent must be nonzero", start)
            else:
                e = 1
            return gen(m.group(1), e)
        c = self.peek()
        if self.shorthand and c == "(":
            self.pos += 1
            inner = self.sequence()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner ** self._exponent()
        if self.shorthand and c == "[":
            self.pos += 1
            a = self.sequence()
            if self.peek() != ",":
                self.error("expected ','")
            self.pos += 1
            b = self.sequence()
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            return commutator(a, b) ** self._exponent()
        self.error(f"unexpected {c!r}" if c else "unexpected end of input")


def parse(text: str, shorthand: bool = True) -> GenWord:
    """Parse a word such as ``"Tinf^2 T0"``.

    With ``shorthand`` the commutator ``[a,b]`` and powers ``(w)^k`` are
    expanded as well.  Errors carry the character position.
    """
    return _Parser(text, shorthand).parse()


def read_corpus(lines: Iterable[str]) -> list:
    """Yield (line number, text) for non-blank, non-comment corpus lines."""
    out = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


# -- PSL2(Z) ------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat2Z:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("Mat2Z must have determinant 1")

    def __mul__(self, o: "Mat2Z") -> "Mat2Z":
        return Mat2Z(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                     self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "Mat2Z":
        return Mat2Z(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return Mat2Z(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> "Mat2Z":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def trace(self) -> int:
        return self.a + self.d

    def normalized(self) -> "Mat2Z":
        """Representative of the PSL2 class with positive trace (or a > 0 at trace 0)."""
        if self.trace < 0 or (self.trace == 0 and (self.a, self.b, self.c) < (0, 0, 0)):
            return -self
        return self

    def psl_equal(self, other: "Mat2Z") -> bool:
        return self == other or self == -other

    def is_psl_identity(self) -> bool:
        return self.psl_equal(IDENTITY)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d})"


IDENTITY = Mat2Z(1, 0, 0, 1)
S = Mat2Z(0, -1, 1, 0)
T = Mat2Z(1, 1, 0, 1)
TS = T * S

GEN_MATRICES = {
    "Tinf": Mat2Z(1, 2, 0, 1),
    "T0": Mat2Z(1, 0, -2, 1),
    "T1": Mat2Z(-1, 2, -2, 3),
}

# index i in T_i = (TS)^i T^2 (TS)^-i
CUSP_INDEX = {"Tinf": 0, "T1": 1, "T0": 2}


def conjugated_square(i: int) -> Mat2Z:
    """(TS)^i T^2 (TS)^-i."""
    return TS ** i * T ** 2 * TS ** (-i)


def eval_sl2(w: GenWord) -> Mat2Z:
    m = IDENTITY
    for g, e in w.letters:
        m = m * GEN_MATRICES[g] ** e
    return m


def eval_psl2(w: GenWord) -> Mat2Z:
    return eval_sl2(w).normalized()


class NTTag(enum.Enum):
    IDENTITY = "identity"
    REDUCIBLE = "reducible"
    PSEUDO_ANOSOV = "pseudo-anosov"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class NTClass:
    tag: NTTag
    trace: int

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "trace": self.trace}


def nt_classify(w: GenWord) -> NTClass:
    m = eval_psl2(w)
    t = abs(m.trace)
    if m.is_psl_identity():
        return NTClass(NTTag.IDENTITY, m.trace)
    if t == 2:
        return NTClass(NTTag.REDUCIBLE, m.trace)
    if t > 2:
        return NTClass(NTTag.PSEUDO_ANOSOV, m.trace)
    raise InternalInconsistency(f"nonidentity element with |trace| < 2: {m}")


# -- free group on Tinf, T0 ----------------------------------------------------------

@dataclass(frozen=True)
class ReducedWord:
    letters: tuple = ()

    def __str__(self):
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)

    def as_genword(self) -> GenWord:
        return GenWord(self.letters)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)


def _free_letters(w: GenWord):
    for g, e in w.letters:
        if g != "T1":
            yield g, e
        elif e > 0:
            for _ in range(e):
                yield "T0", -1
                yield "Tinf", -1
        else:
            for _ in range(-e):
                yield "Tinf", 1
                yield "T0", 1


def reduce(w: GenWord) -> ReducedWord:
    return ReducedWord(_normalize(_free_letters(w)))


def cyclic_reduce(w: GenWord) -> ReducedWord:
    letters = list(reduce(w).letters)
    while len(letters) > 1 and letters[0][0] == letters[-1][0]:
        g = letters[0][0]
        e = letters[0][1] + letters[-1][1]
        middle = letters[1:-1]
        letters = ([(g, e)] if e else []) + middle
        if not e:
            letters = list(_normalize(letters))
    return ReducedWord(tuple(letters))


def free_conjugate(w1: GenWord, w2: GenWord) -> bool:
    a = cyclic_reduce(w1).letters
    b = cyclic_reduce(w2).letters
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a[i:] + a[:i] == b for i in range(len(a)))


# -- abelianization and the index-25 subgroup -----------------------------------------

_ABEL = {"Tinf": (1, 0), "T0": (0, 1), "T1": (-1, -1)}


def abelianize_mod5(w: GenWord, n: int = 5) -> tuple:
    x = y = 0
    for g, e in w.letters:
        dx, dy = _ABEL[g]
        x += dx * e
        y += dy * e
    return x % n, y % n


def in_pi1Cu(w: GenWord) -> bool:
    return abelianize_mod5(w) == (0, 0)


def pi1Cu_generating_set(n: int = 5) -> list:
    a, b = gen("Tinf"), gen("T0")
    out = [a ** n, b ** n]
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            out.append(commutator(a ** p, b ** q))
    return out


def free_kernel_rank(d: int, m: int) -> int:
    """Rank of an index-d subgroup of a free group of rank m."""
    return d * (m - 1) + 1


def pi1Cu_rank(n: int = 5) -> int:
    return free_kernel_rank(n * n, 2)


# -- random words --------------------------------------------------------------------

def random_word(rng: random.Random, max_length: int, alphabet: Sequence[str] = GENERATORS) -> GenWord:
    length = rng.randint(0, max_length)
    return GenWord(tuple((rng.choice(alphabet), rng.choice((-1, 1))) for _ in range(length)))


def random_pi1Cu_word(rng: random.Random, max_length: int) -> GenWord:
    """Random word in the kernel of the mod-5 abelianization, length at most max_length."""
    while True:
        w = random_word(rng, max_length)
        x, y = abelianize_mod5(w)
        # close up with a short correction when the budget allows
        fix = gen("Tinf", -x if x <= 2 else 5 - x) * gen("T0", -y if y <= 2 else 5 - y)
        w2 = w * fix
        if len(w2) <= max_length and in_pi1Cu(w2):
            return w2
