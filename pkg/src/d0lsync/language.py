"""Bounded factor sets S(L(G)) of D0L-systems and power queries."""
from __future__ import annotations

from dataclasses import dataclass

from .words import CapExceeded, D0LSystem, apply

__all__ = ["FactorSet", "factors_up_to", "is_factor", "max_power", "OverCap", "OVER_CAP"]

# Safety net for pathological inputs; the closure itself always terminates.
MAX_WINDOWS = 2_000_000


class OverCap:
    """Sentinel: the queried power is still a factor at the cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OVER_CAP"

    def __reduce__(self):
        return (OverCap, ())


OVER_CAP = OverCap()


@dataclass(frozen=True)
class FactorSet:
    system: D0LSystem
    max_len: int
    by_length: tuple[frozenset[str], ...]  # by_length[n] = length-n factors; index 0 unused

    def __contains__(self, word: str) -> bool:
        return is_factor(self, word)

    def layer(self, n: int) -> frozenset[str]:
        if not 1 <= n <= self.max_len:
            raise CapExceeded(f"length {n} outside factor set range 1..{self.max_len}")
        return self.by_length[n]

    def __len__(self):
        return sum(len(s) for s in self.by_length)

    def __iter__(self):
        for layer in self.by_length[1:]:
            yield from sorted(layer)


def factors_up_to(sys: D0LSystem, max_len: int) -> FactorSet:
    """All factors of the language with length in ``1..max_len``.

    Closure over "maximal" words: length-``max_len`` windows plus whole
    iterates that are still shorter than ``max_len``.  Any length-``L`` factor
    of phi^(n+1)(w) lies in phi(u) for a maximal word u of phi^n(w), so the
    fixpoint is exactly S(L(G)) restricted to lengths up to L.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    L = max_len
    m = sys.morphism
    windows: set[str] = set()
    short: set[str] = set()
    todo: list[str] = []

    def add(word: str):
        if len(word) >= L:
            for i in range(len(word) - L + 1):
                w = word[i:i + L]
                if w not in windows:
                    windows.add(w)
                    todo.append(w)
            if len(windows) > MAX_WINDOWS:
                raise CapExceeded("factor closure exceeded window budget")
        elif word not in short:
            short.add(word)
            todo.append(word)

    add(sys.axiom)
    while todo:
        add(apply(m, todo.pop()))

    layers: list[set[str]] = [set() for _ in range(L + 1)]
    layers[L] = set(windows)
    for n in range(L, 1, -1):
        below = layers[n - 1]
        for w in layers[n]:
            below.add(w[1:])
            below.add(w[:-1])
    for word in short:
        for n in range(1, len(word) + 1):
            layer = layers[n]
            for i in range(len(word) - n + 1):
                layer.add(word[i:i + n])
    return FactorSet(sys, L, tuple(frozenset(s) for s in layers))


def is_factor(fs: FactorSet, word: str) -> bool:
    if len(word) > fs.max_len:
        raise CapExceeded(
            f"query of length {len(word)} exceeds factor set max_len {fs.max_len}"
        )
    if not word:
        return True
    return word in fs.by_length[len(word)]


def max_power(sys: D0LSystem, v: str, cap: int, fs: FactorSet | None = None):
    """Largest l <= cap with v^l a factor, or :data:`OVER_CAP` when v^cap is one.

    ``fs`` is reused when it reaches ``cap * |v|``; otherwise a factor set of
    exactly that length is generated.
    """
    if not v:
        raise ValueError("v must be non-empty")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    need = cap * len(v)
    if fs is None or fs.max_len < need:
        fs = factors_up_to(sys, need)
    best = 0
    for ell in range(1, cap + 1):
        if v * ell not in fs.by_length[need if ell == cap else ell * len(v)]:
            break
        best = ell
    return OVER_CAP if best == cap else best
