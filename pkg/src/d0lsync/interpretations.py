"""Interpretations of factors, synchronizing points and the minimal synchronizing delay."""
from __future__ import annotations

import math
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import reduce

from .language import FactorSet, factors_up_to, is_factor
from .words import CapExceeded, D0LSystem

__all__ = [
    "Interpretation",
    "SyncReport",
    "ZMinResult",
    "enumerate_interpretations",
    "sync_report",
    "required_preimage_len",
    "injective_on_factors",
    "z_min",
]


@dataclass(frozen=True, order=True)
class Interpretation:
    p: str
    v: str
    s: str
    cuts: tuple[int, ...]


@dataclass(frozen=True)
class SyncReport:
    word: str
    interpretations: tuple[Interpretation, ...]
    sync_positions: frozenset[int]

    @property
    def has_sync_point(self) -> bool:
        return bool(self.sync_positions)


@dataclass(frozen=True)
class ZMinResult:
    z_min: int
    witness: str | None
    exceeded_cap: bool
    cap: int
    injective: bool = True
    level_counts: tuple[int, ...] = field(default=())  # level_counts[n-1] = #non-synchronized factors of length n

    @property
    def definitional(self) -> int:
        # a synchronizing delay is a positive integer
        return max(1, self.z_min)


def required_preimage_len(sys: D0LSystem, n: int) -> int:
    m = sys.morphism
    return math.ceil((n + 2 * m.max_image_len) / m.min_image_len)


def _cuts(m, p_len: int, v: str, n: int) -> tuple[int, ...]:
    out = []
    pos = -p_len
    if pos >= 0:
        out.append(pos)
    for c in v:
        pos += len(m.images[c])
        if 0 <= pos <= n:
            out.append(pos)
    return tuple(out)


def enumerate_interpretations(sys: D0LSystem, fs: FactorSet, u: str) -> list[Interpretation]:
    """All minimal covers (p, v, s) of ``u`` with phi(v) = p u s and v a factor.

    Minimal means |p| < |phi(v_1)| and |s| < |phi(v_last)|.  Partial preimages
    are pruned as soon as they stop being factors.
    """
    if not u:
        raise ValueError("u must be non-empty")
    m = sys.morphism
    images = m.images
    n = len(u)
    found: set[Interpretation] = set()

    def record(p: str, v: str, s: str):
        found.add(Interpretation(p, v, s, _cuts(m, len(p), v, n)))

    def extend(pos: int, v: str, p: str):
        rest = u[pos:]
        for d in m.alphabet:
            img = images[d]
            w = v + d
            if len(img) >= len(rest):
                if img.startswith(rest) and is_factor(fs, w):
                    record(p, w, img[len(rest):])
            elif rest.startswith(img) and is_factor(fs, w):
                extend(pos + len(img), w, p)

    for c in m.alphabet:
        if not is_factor(fs, c):
            continue
        img = images[c]
        for off in range(len(img)):
            seg = img[off:]
            if len(seg) >= n:
                if seg.startswith(u):
                    record(img[:off], c, seg[n:])
            elif u.startswith(seg):
                extend(len(seg), c, img[:off])
    return sorted(found)


def sync_report(sys: D0LSystem, fs: FactorSet, u: str) -> SyncReport:
    interps = enumerate_interpretations(sys, fs, u)
    if len(interps) < 2:
        positions = frozenset(range(len(u) + 1))
    else:
        positions = frozenset(reduce(set.intersection, (set(i.cuts) for i in interps)))
    return SyncReport(u, tuple(interps), positions)


def has_sync_point(sys: D0LSystem, fs: FactorSet, u: str) -> bool:
    return sync_report(sys, fs, u).has_sync_point


def injective_on_factors(fs: FactorSet) -> bool:
    """False iff two distinct stored factors share an image."""
    m = fs.system.morphism
    if m.uniform_k is not None:
        # equal-length images: a collision needs two letters with the same image
        seen = {}
        for c in fs.layer(1):
            img = m.images[c]
            if img in seen:
                return False
            seen[img] = c
        return True
    by_image = defaultdict(set)
    for word in fs:
        by_image[m(word)].add(word)
        if len(by_image[m(word)]) > 1:
            return False
    return True


def default_cap(sys: D0LSystem) -> int:
    """theorem_bound(k) + 2k for binary k-uniform systems; ``OVERHANG_CAP`` overrides."""
    from .classify import default_cap as uniform_cap

    env = os.environ.get("OVERHANG_CAP")
    if env:
        return int(env)
    k = sys.morphism.uniform_k
    if k is not None and k >= 2 and sys.morphism.size == 2:
        return uniform_cap(k)
    raise ValueError("no default cap for this system; pass cap explicitly")


def z_min(sys: D0LSystem, cap: int | None = None, fs: FactorSet | None = None) -> ZMinResult:
    """Length of the longest factor without a synchronizing point, searched up to ``cap``.

    Level n+1 holds the one-letter right extensions of level-n words that are
    still factors and still lack a synchronizing point; this is complete
    because having a synchronizing point is inherited by every extension.
    A system that is not injective on its factors has no synchronizing delay
    at all, which is reported as ``exceeded_cap`` with ``injective=False``.
    """
    if cap is None:
        cap = default_cap(sys)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    need = max(cap + 1, required_preimage_len(sys, cap + 1))
    if fs is None or fs.max_len < need:
        fs = factors_up_to(sys, need)
    injective = injective_on_factors(fs)

    level = sorted(c for c in fs.layer(1) if not has_sync_point(sys, fs, c))
    counts = []
    depth = 0
    witness = None
    while level:
        counts.append(len(level))
        depth += 1
        witness = level[0]
        if depth > cap:
            break
        nxt = []
        layer = fs.layer(depth + 1)
        for w in level:
            for c in sys.morphism.alphabet:
                x = w + c
                if x in layer and not has_sync_point(sys, fs, x):
                    nxt.append(x)
        level = sorted(nxt)
    exceeded = depth > cap
    if exceeded:
        depth = cap
    return ZMinResult(
        z_min=depth,
        witness=witness,
        exceeded_cap=exceeded or not injective,
        cap=cap,
        injective=injective,
        level_counts=tuple(counts),
    )


def check_z_min(sys: D0LSystem, result: ZMinResult, fs: FactorSet | None = None) -> bool:
    """Independent re-check by direct scan of the factor layers of lengths z and z+1."""
    n = result.z_min + 1
    if fs is None or fs.max_len < required_preimage_len(sys, n):
        fs = factors_up_to(sys, max(n, required_preimage_len(sys, n)))
    if not all(has_sync_point(sys, fs, u) for u in fs.layer(n)):
        return False
    if result.z_min == 0:
        return True
    return any(not has_sync_point(sys, fs, u) for u in fs.layer(result.z_min))
