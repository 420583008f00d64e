"""Morphisms, D0L-systems and morphism iteration.

Words are plain ``str`` values over the display characters of an alphabet.
An alphabet is always explicit: it is the ordered tuple of rule heads of the
morphism, so a letter's integer id is its position in that tuple.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

__all__ = [
    "MorphismError",
    "CapExceeded",
    "Morphism",
    "D0LSystem",
    "parse_morphism",
    "apply",
    "iterate",
    "binary_uniform_morphisms",
]

DEFAULT_MAX_WORD_LEN = 1_000_000

_RULE = re.compile(r"^\s*(\S)\s*->\s*(\S*)\s*$")


class MorphismError(ValueError):
    """Malformed or unsupported morphism / system description."""


class CapExceeded(RuntimeError):
    """A resource cap (word length, factor length, search depth) was hit."""


@dataclass(frozen=True)
class Morphism:
    alphabet: tuple[str, ...]
    images: dict[str, str] = field(hash=False, compare=False)
    _key: tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.alphabet:
            raise MorphismError("empty alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise MorphismError("duplicate letters in alphabet")
        if set(self.images) != set(self.alphabet):
            raise MorphismError("images must be given for exactly the alphabet letters")
        for c in self.alphabet:
            img = self.images[c]
            if not img:
                raise MorphismError(f"erasing image for letter {c!r}")
            bad = set(img) - set(self.alphabet)
            if bad:
                raise MorphismError(
                    f"image of {c!r} uses undeclared letter(s) {''.join(sorted(bad))!r}"
                )
        # compare/hash on the ordered image list; the dict stays a convenience view
        object.__setattr__(self, "_key", tuple(self.images[c] for c in self.alphabet))
        object.__setattr__(self, "images", dict(self.images))

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.alphabet == other.alphabet and self._key == other._key

    def __hash__(self):
        return hash((self.alphabet, self._key))

    def __call__(self, word: str) -> str:
        return apply(self, word)

    @classmethod
    def from_images(cls, images: dict[str, str] | list[tuple[str, str]]) -> "Morphism":
        pairs = list(images.items()) if isinstance(images, dict) else list(images)
        return cls(tuple(c for c, _ in pairs), dict(pairs))

    def index(self, letter: str) -> int:
        return self.alphabet.index(letter)

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def max_image_len(self) -> int:
        return max(len(w) for w in self._key)

    @property
    def min_image_len(self) -> int:
        return min(len(w) for w in self._key)

    @property
    def uniform_k(self) -> int | None:
        lo, hi = self.min_image_len, self.max_image_len
        return hi if lo == hi else None

    def is_injective_on_letters(self) -> bool:
        return len(set(self._key)) == len(self._key)

    def spec(self) -> str:
        """Serialize back to the ``c->w,...`` rule grammar accepted by :func:`parse_morphism`."""
        return ",".join(f"{c}->{self.images[c]}" for c in self.alphabet)

    def __str__(self):
        return self.spec()


@dataclass(frozen=True)
class D0LSystem:
    morphism: Morphism
    axiom: str

    def __post_init__(self):
        if not self.axiom:
            raise MorphismError("axiom must be non-empty")
        bad = set(self.axiom) - set(self.morphism.alphabet)
        if bad:
            raise MorphismError(f"axiom uses undeclared letter(s) {''.join(sorted(bad))!r}")

    @classmethod
    def parse(cls, spec: str, axiom: str | None = None) -> "D0LSystem":
        m = parse_morphism(spec)
        return cls(m, axiom if axiom else m.alphabet[0])

    def describe(self) -> str:
        return f"{self.morphism.spec()} ; axiom {self.axiom}"


def parse_morphism(spec: str) -> Morphism:
    """Parse ``"0->011,1->1120,2->120"`` (``;`` also separates rules).

    The alphabet is the sequence of rule heads in declaration order.
    """
    if not spec or not spec.strip():
        raise MorphismError("empty morphism specification")
    images: dict[str, str] = {}
    rules: dict[str, str] = {}
    for raw in re.split(r"[,;]", spec):
        if not raw.strip():
            continue
        match = _RULE.match(raw)
        if match is None:
            raise MorphismError(f"malformed rule {raw.strip()!r} (expected c->word)")
        head, image = match.groups()
        if head in images:
            raise MorphismError(f"rule {raw.strip()!r}: duplicate rule for letter {head!r}")
        if not image:
            raise MorphismError(f"rule {raw.strip()!r}: erasing image not allowed")
        images[head] = image
        rules[head] = raw.strip()
    if not images:
        raise MorphismError("no rules found")
    for head, image in images.items():
        extra = sorted(set(image) - images.keys())
        if extra:
            raise MorphismError(f"rule {rules[head]!r}: undeclared letter(s) {''.join(extra)!r}")
    return Morphism.from_images(images)


def apply(m: Morphism, word: str) -> str:
    try:
        return "".join([m.images[c] for c in word])
    except KeyError as exc:
        raise MorphismError(f"letter {exc.args[0]!r} outside the alphabet") from None


def iterate(sys: D0LSystem, n: int, max_len: int = DEFAULT_MAX_WORD_LEN) -> str:
    """Return ``phi^n(axiom)``; raise :class:`CapExceeded` once a word grows past ``max_len``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    word = sys.axiom
    for _ in range(n):
        word = apply(sys.morphism, word)
        if len(word) > max_len:
            raise CapExceeded(f"iterate exceeded max length {max_len}")
    return word


def binary_uniform_morphisms(k: int, letters: str = "ab"):
    """Yield every k-uniform morphism over a two-letter alphabet, ordered by (phi(a), phi(b))."""
    a, b = letters
    words = ["".join(t) for t in product(letters, repeat=k)]
    for wa in words:
        for wb in words:
            yield Morphism((a, b), {a: wa, b: wb})
