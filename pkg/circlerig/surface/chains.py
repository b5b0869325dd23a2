"""Directed chains of curves and the Dehn twists along their elements."""

import logging
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from circlerig.shared_libraries.errors import IndexOutOfRange, InvalidChain
from circlerig.surface import words
from circlerig.surface.words import Word

_logger = logging.getLogger(__name__)


def symbol(j: int) -> Word:
    """The chain symbol g_j standing for the j-th chain element."""
    return words.generator(f"g{j}")


class DirectedChain(BaseModel):
    """Curves gamma_1 ... gamma_k with consecutive intersection +-1 and zero otherwise."""
    model_config = ConfigDict(frozen=True)

    words: tuple[Word, ...] = Field(description="gamma_1 ... gamma_k.")
    signs: tuple[int, ...] = Field(description="Declared i(gamma_j, gamma_j+1), each +1 or -1.")
    generator_words: Optional[dict[str, Word]] = Field(
        default=None,
        description="Surface generators written in the chain symbols g_j, when they are expressible.",
    )

    @model_validator(mode="after")
    def _check_intersections(self):
        k = len(self.words)
        if k < 1 or len(self.signs) != k - 1:
            raise InvalidChain(f"{k} words need {max(k - 1, 0)} signs, got {len(self.signs)}")
        for i in range(k):
            for j in range(i + 1, k):
                value = words.algebraic_intersection(self.words[i], self.words[j])
                if j == i + 1:
                    if self.signs[i] not in (1, -1) or value != self.signs[i]:
                        raise InvalidChain(
                            f"i(gamma_{i + 1}, gamma_{j + 1}) = {value}, declared {self.signs[i]}"
                        )
                elif value != 0:
                    raise InvalidChain(f"i(gamma_{i + 1}, gamma_{j + 1}) = {value}, expected 0")
        if self.generator_words is not None:
            for name, expr in self.generator_words.items():
                if self.realize(expr).letters != ((name, 1),):
                    raise InvalidChain(f"{name} is not {expr} in the chain elements")
        return self

    @property
    def length(self) -> int:
        return len(self.words)

    @property
    def genus(self) -> Optional[int]:
        return words.multiply(*self.words).genus if self.words else None

    def realize(self, expr: Word) -> Word:
        """Replaces each chain symbol g_j by gamma_j."""
        images = {f"g{j + 1}": w for j, w in enumerate(self.words)}
        return words.substitute(expr, images, self.genus)

    def to_json(self) -> dict:
        record = {"words": [str(w) for w in self.words], "signs": list(self.signs)}
        if self.generator_words is not None:
            record["generators"] = {name: w.to_json() for name, w in sorted(self.generator_words.items())}
        return record


class ChainSubstitution(BaseModel):
    """An automorphism of the free group on the chain symbols, built from Dehn twists.

    The automorphism is steps[0] o steps[1] o ..., each step a twist (index, power).
    """
    model_config = ConfigDict(frozen=True)

    chain: DirectedChain
    images: tuple[Word, ...] = Field(description="Image of g_j as a word in the chain symbols.")
    steps: tuple[tuple[int, int], ...] = Field(default=(), description="Twists (index, power), outermost first.")

    @classmethod
    def identity(cls, chain: DirectedChain) -> "ChainSubstitution":
        return cls(chain=chain, images=tuple(symbol(j) for j in range(1, chain.length + 1)))

    def _images_map(self) -> dict[str, Word]:
        return {f"g{j + 1}": w for j, w in enumerate(self.images)}

    def on_symbols(self, expr: Word) -> Word:
        return words.substitute(expr, self._images_map())

    def compose(self, other: "ChainSubstitution") -> "ChainSubstitution":
        """self o other: other acts first on a word, then self."""
        if other.chain != self.chain:
            raise InvalidChain("substitutions over different chains")
        images = tuple(self.on_symbols(w) for w in other.images)
        return ChainSubstitution(chain=self.chain, images=images, steps=self.steps + other.steps)

    def inverse(self) -> "ChainSubstitution":
        result = ChainSubstitution.identity(self.chain)
        for index, n in reversed(self.steps):
            result = result.compose(dehn_twist(self.chain, index, -n))
        return result

    @property
    def is_identity(self) -> bool:
        return all(w == symbol(j + 1) for j, w in enumerate(self.images))

    def image_of_element(self, j: int) -> Word:
        """The image of gamma_j as a surface word."""
        return self.chain.realize(self.images[j - 1])

    def apply(self, u: Word) -> Word:
        """Image of a surface word.

        Uses the chain's generator_words when present; otherwise u must be a
        chain element or the inverse of one.

        Raises:
            InvalidChain: u is not expressible through the chain.
        """
        if self.chain.generator_words is not None:
            images = {
                name: self.chain.realize(self.on_symbols(expr))
                for name, expr in self.chain.generator_words.items()
            }
            return words.substitute(u, images, u.genus)
        for j, w in enumerate(self.chain.words, start=1):
            if w == u:
                return self.image_of_element(j)
        for j, w in enumerate(self.chain.words, start=1):
            if words.invert(w) == u:
                return words.invert(self.image_of_element(j))
        raise InvalidChain(f"{u} is not a chain element")


def dehn_twist(chain: DirectedChain, i: int, n: int) -> ChainSubstitution:
    """The N-th power of the twist along gamma_i.

    gamma_{i-1} -> gamma_i^-N gamma_{i-1} and gamma_{i+1} -> gamma_{i+1} gamma_i^N;
    every other element is fixed.

    Raises:
        IndexOutOfRange: i is not in 1..k.
    """
    k = chain.length
    if not 1 <= i <= k:
        raise IndexOutOfRange(f"twist index {i} outside 1..{k}")
    images = [symbol(j) for j in range(1, k + 1)]
    if n == 0:
        return ChainSubstitution(chain=chain, images=tuple(images))
    twist = words.power(symbol(i), n)
    if i > 1:
        images[i - 2] = words.multiply(words.invert(twist), symbol(i - 1))
    if i < k:
        images[i] = words.multiply(symbol(i + 1), twist)
    _logger.debug("twist along gamma_%d to the power %d", i, n)
    return ChainSubstitution(chain=chain, images=tuple(images), steps=((i, n),))
