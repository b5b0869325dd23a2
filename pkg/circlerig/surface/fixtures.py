"""Shipped genus-2 fixtures: a directed 5-chain and a four-holed sphere."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from circlerig.shared_libraries.errors import InvalidDecomposition
from circlerig.surface import words
from circlerig.surface.chains import DirectedChain
from circlerig.surface.pants import Gluing, PantsDecomposition, pants
from circlerig.surface.words import SurfacePresentation, Word, parse_word


def builtin_chain_genus2() -> DirectedChain:
    """(a1, b1^-1, b2 a1^-1, a2, b2^-1), every consecutive intersection -1.

    gamma_3 gamma_1 gamma_5 = 1 in the free group, and a1 = g1, b1 = g2^-1,
    a2 = g4, b2 = g5^-1.
    """
    chain_words = tuple(parse_word(text, 2) for text in ("a1", "B1'", "B2 a1'", "a2", "B2'"))
    generator_words = {
        "a1": parse_word_symbols("g1"),
        "b1": parse_word_symbols("g2'"),
        "a2": parse_word_symbols("g4"),
        "b2": parse_word_symbols("g5'"),
    }
    return DirectedChain(words=chain_words, signs=(-1, -1, -1, -1), generator_words=generator_words)


def parse_word_symbols(text: str) -> Word:
    """A word in the chain symbols, e.g. "g2'" or "g1 g3^2"."""
    letters = []
    for token in text.split():
        inverse = token.endswith("'")
        body = token.rstrip("'")
        name, _, exp = body.partition("^")
        letters.append((name, -1 if inverse else int(exp or 1)))
    return Word.of(letters)


class FourHoledSphere(BaseModel):
    """Boundary words a, b, c, d with dcba conjugate to a power of the relator."""
    model_config = ConfigDict(frozen=True)

    a: Word
    b: Word
    c: Word
    d: Word
    decompositions: tuple[PantsDecomposition, ...] = Field(
        description="Pants decompositions differing by an elementary move."
    )

    @model_validator(mode="after")
    def _closes_up(self):
        genus = self.a.genus
        rel = words.relator(SurfacePresentation(genus=genus))
        product = words.multiply(self.d, self.c, self.b, self.a)
        if not (words.are_conjugate(product, rel) or words.are_conjugate(product, words.invert(rel))):
            raise InvalidDecomposition(f"dcba = {product} is not conjugate to the relator")
        return self

    @property
    def boundary(self) -> tuple[Word, Word, Word, Word]:
        return (self.a, self.b, self.c, self.d)


def four_holed_sphere_genus2() -> FourHoledSphere:
    """The complement of a1 and a2 in genus 2.

    a = b1^-1 a1 b1, b = a1^-1, c = b2^-1 a2 b2, d = a2^-1, so dcba is the
    inverse relator. The decompositions cut along ba and along cb.
    """
    pres = SurfacePresentation(genus=2)
    a = words.conjugate(pres.a(1), pres.b(1))
    b = words.invert(pres.a(1))
    c = words.conjugate(pres.a(2), pres.b(2))
    d = words.invert(pres.a(2))
    ba = words.multiply(b, a)
    cb = words.multiply(c, b)
    along_ba = PantsDecomposition(
        pants=(pants(a, b, "a b"), pants(ba, c, "ba c")),
        gluings=(Gluing(first=(0, 2), second=(1, 0)),),
        genus=2,
    )
    along_cb = PantsDecomposition(
        pants=(pants(b, c, "b c"), pants(a, cb, "a cb")),
        gluings=(Gluing(first=(0, 2), second=(1, 1)),),
        genus=2,
    )
    return FourHoledSphere(a=a, b=b, c=c, d=d, decompositions=(along_ba, along_cb))
