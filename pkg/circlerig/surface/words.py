"""Words in the standard presentation of the genus-g surface group.

Words are freely reduced tuples of (generator, exponent) pairs. A word is
read right to left: rho(x_1 ... x_n) = rho(x_1) o ... o rho(x_n), so
[a, b] = b^-1 a^-1 b a acts by a first.
"""

import re
from collections import Counter
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from circlerig.shared_libraries.errors import InvalidWord, MixedPresentations

_NAME = re.compile(r"^[abg][1-9][0-9]*$")
_TOKEN = re.compile(r"([aAbB])([0-9]*)(?:(')|\^(-?[0-9]+))?")
_SEPARATORS = re.compile(r"[\s*.]+")

Letter = tuple[str, int]


class Word(BaseModel):
    """A freely reduced word; generators are a<i>, b<i> or chain symbols g<i>."""
    model_config = ConfigDict(frozen=True)

    letters: tuple[Letter, ...] = Field(default=(), description="(generator, nonzero exponent) pairs.")
    genus: Optional[int] = Field(default=None, description="Genus of the presentation, when known.")

    @model_validator(mode="after")
    def _reduced(self):
        for i, (name, exp) in enumerate(self.letters):
            if not _NAME.match(name):
                raise InvalidWord(f"bad generator name {name!r}")
            if exp == 0:
                raise InvalidWord("zero exponent in a reduced word")
            if i and self.letters[i - 1][0] == name:
                raise InvalidWord(f"adjacent letters on {name} are not merged")
            if self.genus is not None and name[0] in "ab" and int(name[1:]) > self.genus:
                raise InvalidWord(f"{name} is not a generator in genus {self.genus}")
        return self

    @classmethod
    def of(cls, letters: Iterable[Letter], genus: Optional[int] = None) -> "Word":
        """Freely reduces the letters."""
        return cls(letters=reduce_letters(letters), genus=genus)

    def __str__(self) -> str:
        return format_word(self)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def generators(self) -> set[str]:
        return {name for name, _ in self.letters}

    def expanded(self) -> list[Letter]:
        """Single letters with exponent +1 or -1."""
        out = []
        for name, exp in self.letters:
            sign = 1 if exp > 0 else -1
            out.extend([(name, sign)] * abs(exp))
        return out

    def to_json(self) -> list[dict]:
        return [{"gen": name, "exp": exp} for name, exp in self.letters]


def reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[list] = []
    for name, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == name:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([name, exp])
    return tuple((name, exp) for name, exp in stack)


def _genus(*words: Word) -> Optional[int]:
    known = {w.genus for w in words if w.genus is not None}
    if len(known) > 1:
        raise MixedPresentations(f"words over genera {sorted(known)} combined")
    return known.pop() if known else None


def generator(name: str, genus: Optional[int] = None) -> Word:
    return Word(letters=((name, 1),), genus=genus)


def empty(genus: Optional[int] = None) -> Word:
    return Word(genus=genus)


def multiply(*words: Word) -> Word:
    """The product u v ...; as maps, v acts before u."""
    genus = _genus(*words)
    letters: list[Letter] = []
    for w in words:
        letters.extend(w.letters)
    return Word.of(letters, genus)


def invert(u: Word) -> Word:
    return Word(letters=tuple((name, -exp) for name, exp in reversed(u.letters)), genus=u.genus)


def power(u: Word, n: int) -> Word:
    if n < 0:
        return power(invert(u), -n)
    return multiply(*([u] * n)) if n else empty(u.genus)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = v^-1 u^-1 v u."""
    return multiply(invert(v), invert(u), v, u)


def conjugate(u: Word, by: Word) -> Word:
    """by^-1 u by."""
    return multiply(invert(by), u, by)


def exponent_sums(u: Word) -> Counter:
    sums: Counter = Counter()
    for name, exp in u.letters:
        sums[name] += exp
    return sums


def algebraic_intersection(u: Word, v: Word) -> int:
    """Symplectic pairing of homology classes with <a_i, b_i> = 1."""
    _genus(u, v)
    su, sv = exponent_sums(u), exponent_sums(v)
    indices = {int(name[1:]) for name in list(su) + list(sv) if name[0] in "ab"}
    return sum(su[f"a{i}"] * sv[f"b{i}"] - su[f"b{i}"] * sv[f"a{i}"] for i in indices)


def cyclically_reduce(u: Word) -> Word:
    letters = list(u.letters)
    while len(letters) > 1 and letters[0][0] == letters[-1][0]:
        name, total = letters[0][0], letters[0][1] + letters[-1][1]
        letters = ([(name, total)] if total else []) + letters[1:-1]
    return Word(letters=tuple(letters), genus=u.genus)


def are_conjugate(u: Word, v: Word) -> bool:
    """Free-group conjugacy: the cyclic reductions are cyclic rotations of each other."""
    cu = cyclically_reduce(u).expanded()
    cv = cyclically_reduce(v).expanded()
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    doubled = cu + cu
    return any(doubled[i : i + len(cv)] == cv for i in range(len(cu)))


def substitute(u: Word, images: dict[str, Word], genus: Optional[int] = None) -> Word:
    """Replaces every generator by its image word."""
    letters: list[Letter] = []
    for name, exp in u.letters:
        if name not in images:
            raise InvalidWord(f"no image given for {name}")
        image = images[name] if exp > 0 else invert(images[name])
        letters.extend(image.letters * abs(exp))
    return Word.of(letters, genus)


class SurfacePresentation(BaseModel):
    """<a_1, b_1, ..., a_g, b_g | [a_1, b_1] ... [a_g, b_g]>."""
    model_config = ConfigDict(frozen=True)

    genus: int = Field(ge=2, description="Genus of the closed surface.")

    @property
    def generators(self) -> list[str]:
        return [f"{x}{i}" for i in range(1, self.genus + 1) for x in "ab"]

    def a(self, i: int) -> Word:
        return generator(f"a{i}", self.genus)

    def b(self, i: int) -> Word:
        return generator(f"b{i}", self.genus)

    def handle_commutator(self, i: int) -> Word:
        return commutator(self.a(i), self.b(i))


def relator(pres: SurfacePresentation) -> Word:
    """[a_1, b_1] [a_2, b_2] ... [a_g, b_g]."""
    return multiply(*(pres.handle_commutator(i) for i in range(1, pres.genus + 1)))


def handle_pairs(pres: SurfacePresentation) -> list[tuple[Word, Word]]:
    return [(pres.a(i), pres.b(i)) for i in range(1, pres.genus + 1)]


def format_word(u: Word) -> str:
    """a-generators in lower case, b-generators in upper case, ' for inverses."""
    if u.is_empty:
        return "1"
    tokens = []
    for name, exp in u.letters:
        head = name.upper() if name[0] == "b" else name
        if exp == 1:
            tokens.append(head)
        elif exp == -1:
            tokens.append(head + "'")
        else:
            tokens.append(f"{head}^{exp}")
    return " ".join(tokens)


def parse_word(text: str, genus: Optional[int] = None) -> Word:
    """Parses strings such as "B a B' A'", "a1 b2^-1" or "a2^3".

    The family letter is case-insensitive; the index defaults to 1. "1" and
    the empty string denote the empty word.

    Raises:
        InvalidWord: the string is not a word.
    """
    body = _SEPARATORS.sub("", text)
    if body in ("", "1"):
        return empty(genus)
    letters: list[Letter] = []
    pos = 0
    while pos < len(body):
        match = _TOKEN.match(body, pos)
        if match is None or match.end() == pos:
            raise InvalidWord(f"cannot parse {text!r} at {body[pos:]!r}")
        family, index, prime, exp = match.groups()
        name = f"{family.lower()}{index or 1}"
        exponent = -1 if prime else (int(exp) if exp is not None else 1)
        letters.append((name, exponent))
        pos = match.end()
    return Word.of(letters, genus)


def word_from_json(record: Sequence[dict], genus: Optional[int] = None) -> Word:
    try:
        return Word.of(((str(item["gen"]), int(item["exp"])) for item in record), genus)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidWord(f"malformed word record: {e}") from e
