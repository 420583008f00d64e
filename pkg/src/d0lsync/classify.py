"""Circularity classification for binary k-uniform systems and full per-system reports."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .interpretations import ZMinResult, required_preimage_len, z_min
from .language import OVER_CAP, FactorSet, factors_up_to, max_power
from .overhangs import build_graph, cycle_through, has_cycle
from .walks import Violation, WalkAnalysis, forbidden_subgraphs, l_max, two_cycles
from .words import D0LSystem, Morphism, MorphismError, apply, binary_uniform_morphisms

__all__ = [
    "Classification",
    "RValues",
    "CircularityReport",
    "classify_binary_uniform",
    "repetitivity_witness",
    "theorem_bound",
    "sharpened_bound",
    "least_divisor",
    "r_values",
    "analyze",
    "sweep",
    "CSV_COLUMNS",
]

CIRCULAR = "Circular"
NON_CIRCULAR = "NonCircular"


def least_divisor(k: int) -> int:
    """Least divisor of k greater than 1."""
    d = 2
    while d * d <= k:
        if k % d == 0:
            return d
        d += 1
    return k


def is_prime(k: int) -> bool:
    return k >= 2 and least_divisor(k) == k


def theorem_bound(k: int) -> int:
    if k < 2:
        raise ValueError("k must be >= 2")
    if k == 2:
        return 8
    if is_prime(k):
        return k * k + 3 * k - 4
    d = least_divisor(k)
    return k * k * (k // d - 1) + 5 * k - 4


def sharpened_bound(k: int) -> int | None:
    """k^2 (k/d - 1) + k (d - 1)/d + 1 for composite k; None where the formula degenerates."""
    d = least_divisor(k)
    if d == k:
        return None
    return k * k * (k // d - 1) + k * (d - 1) // d + 1


def _check_binary_uniform(sys: D0LSystem) -> tuple[str, str, int]:
    m = sys.morphism
    k = m.uniform_k
    if m.size != 2 or k is None or k < 2:
        raise MorphismError("binary k-uniform morphism with k >= 2 required")
    a, b = m.alphabet
    return a, b, k


@dataclass(frozen=True)
class Classification:
    verdict: str
    case: str | None = None
    witness: tuple[str, int, int] | None = None  # (u, j, l) with phi^j(u) = u^l

    @property
    def circular(self) -> bool:
        return self.verdict == CIRCULAR


def repetitivity_witness(sys: D0LSystem, fs: FactorSet | None = None):
    """First (u, j, l) with u in {a, b, ab, ba}, j in {1, 2}, phi^j(u) = u^l, l >= 2, u a factor."""
    m = sys.morphism
    if m.size != 2:
        raise MorphismError("binary system required")
    a, b = m.alphabet
    if fs is None or fs.max_len < 2:
        fs = factors_up_to(sys, 2)
    for u in (a, b, a + b, b + a):
        if u not in fs.by_length[len(u)]:
            continue
        img = u
        for j in (1, 2):
            img = apply(m, img)
            ell, rem = divmod(len(img), len(u))
            if rem == 0 and ell >= 2 and img == u * ell:
                return (u, j, ell)
    return None


def classify_binary_uniform(sys: D0LSystem) -> Classification:
    a, b, k = _check_binary_uniform(sys)
    if sys.axiom != a:
        raise MorphismError(f"axiom must be the first letter {a!r}")
    pa, pb = sys.morphism.images[a], sys.morphism.images[b]
    case = None
    if pa == pb:
        case = "i"
    elif pa == a * k or pb == b * k:
        case = "ii"
    elif pa == b * k and pb == a * k:
        case = "iii"
    elif k % 2 == 1:
        half = k // 2
        if pa == (a + b) * half + a and pb == (b + a) * half + b:
            case = "iv"
        elif pa == (b + a) * half + b and pb == (a + b) * half + a:
            case = "v"
    if case is None:
        return Classification(CIRCULAR)
    return Classification(NON_CIRCULAR, case, repetitivity_witness(sys))


@dataclass(frozen=True)
class RValues:
    r_a: object
    r_b: object
    r_ab: object
    r_ba: object
    r1: object = None  # loop-specific R_1, None when the graph has no loop
    r2: object = None  # min(R_ab, R_ba) when the graph has a two-vertex cycle
    r1_max_reading: object = None  # mixed-label loops evaluated with max(R_a, R_b)


def _min(*vals):
    if any(v is OVER_CAP for v in vals):
        finite = [v for v in vals if v is not OVER_CAP]
        return min(finite) if finite else OVER_CAP
    return min(vals)


def _max(*vals):
    return OVER_CAP if any(v is OVER_CAP for v in vals) else max(vals)


def r_values(sys: D0LSystem, cap: int, fs: FactorSet | None = None, graph=None) -> RValues:
    m = sys.morphism
    if m.size != 2:
        raise MorphismError("binary system required")
    a, b = m.alphabet
    if fs is None or fs.max_len < 2 * cap:
        fs = factors_up_to(sys, 2 * cap)
    r_a = max_power(sys, a, cap, fs)
    r_b = max_power(sys, b, cap, fs)
    r_ab = max_power(sys, a + b, cap, fs)
    r_ba = max_power(sys, b + a, cap, fs)
    by_letter = {a: r_a, b: r_b}

    g = graph if graph is not None else build_graph(m)
    r1 = r1_max = None
    for edges in g.loops().values():
        for e in edges:
            ul, vl = e.label.u_letters, e.label.v_letters
            if len(ul) != 1 or len(vl) != 1:
                continue
            if ul == vl:
                val = vmax = by_letter[ul]
            else:
                val, vmax = _min(r_a, r_b), _max(r_a, r_b)
            r1 = val if r1 is None else _max(r1, val)
            r1_max = vmax if r1_max is None else _max(r1_max, vmax)
    r2 = _min(r_ab, r_ba) if two_cycles(g) else None
    return RValues(r_a, r_b, r_ab, r_ba, r1, r2, r1_max)


def synthesis_bound(k: int, rv: RValues):
    """max{R_1 k + 4k - 4, 2k R_2 + 3k - 4} with absent R terms taken as 0."""
    r1 = rv.r1 or 0
    r2 = rv.r2 or 0
    if r1 is OVER_CAP or r2 is OVER_CAP:
        return OVER_CAP
    return max(r1 * k + 4 * k - 4, 2 * k * r2 + 3 * k - 4)


@dataclass(frozen=True)
class CircularityReport:
    system: D0LSystem
    k: int
    classification: Classification
    z: ZMinResult
    walks: WalkAnalysis
    r: RValues
    theorem_bound: int
    has_cycle: bool
    is_code: bool
    is_circular_code: bool
    violations: tuple[Violation, ...] = field(default=())
    synthesis: object = None

    @property
    def bound_satisfied(self) -> bool | None:
        if not self.classification.circular:
            return None
        return not self.z.exceeded_cap and self.z.z_min <= self.theorem_bound

    @property
    def sandwich_ok(self) -> bool | None:
        if self.z.exceeded_cap or self.walks.exceeded_cap:
            return None
        w = self.walks
        return w.l_max <= self.z.z_min <= w.l_max + 2 * w.max_image_len - 3

    def row(self) -> dict:
        m = self.system.morphism
        a, b = m.alphabet
        return {
            "k": self.k,
            "phi_a": m.images[a],
            "phi_b": m.images[b],
            "verdict": self.classification.verdict,
            "case": self.classification.case or "",
            "z_min": "overcap" if self.z.exceeded_cap else self.z.z_min,
            "l_max": "overcap" if self.walks.exceeded_cap else self.walks.l_max,
            "bound": self.theorem_bound,
            "bound_ok": "" if self.bound_satisfied is None else self.bound_satisfied,
            "r_a": _fmt(self.r.r_a),
            "r_b": _fmt(self.r.r_b),
            "r_ab": _fmt(self.r.r_ab),
            "r_ba": _fmt(self.r.r_ba),
            "has_cycle": self.has_cycle,
            "is_code": self.is_code,
            "is_circular_code": self.is_circular_code,
        }

    def to_dict(self) -> dict:
        w = self.walks
        return {
            "morphism": self.system.morphism.spec(),
            "axiom": self.system.axiom,
            "k": self.k,
            "verdict": self.classification.verdict,
            "case": self.classification.case,
            "repetitivity_witness": list(self.classification.witness)
            if self.classification.witness else None,
            "z_min": self.z.z_min,
            "z_min_definitional": self.z.definitional,
            "z_witness": self.z.witness,
            "z_exceeded_cap": self.z.exceeded_cap,
            "injective": self.z.injective,
            "cap": self.z.cap,
            "non_synchronized_counts": list(self.z.level_counts),
            "l_max": w.l_max,
            "l_max_multi_edge": w.l_max_multi,
            "l_max_exceeded_cap": w.exceeded_cap,
            "walk_witness": w.witness.labels() if w.witness else None,
            "sandwich_ok": self.sandwich_ok,
            "theorem_bound": self.theorem_bound,
            "bound_satisfied": self.bound_satisfied,
            "synthesis_bound": _fmt(self.synthesis),
            "r_values": {
                "r_a": _fmt(self.r.r_a),
                "r_b": _fmt(self.r.r_b),
                "r_ab": _fmt(self.r.r_ab),
                "r_ba": _fmt(self.r.r_ba),
                "r1": _fmt(self.r.r1),
                "r1_max_reading": _fmt(self.r.r1_max_reading),
                "r2": _fmt(self.r.r2),
            },
            "has_cycle": self.has_cycle,
            "is_code": self.is_code,
            "is_circular_code": self.is_circular_code,
            "forbidden_subgraphs": [
                {"pattern": v.pattern, "vertices": list(v.vertices)} for v in self.violations
            ],
        }


CSV_COLUMNS = [
    "k", "phi_a", "phi_b", "verdict", "case", "z_min", "l_max", "bound", "bound_ok",
    "r_a", "r_b", "r_ab", "r_ba", "has_cycle", "is_code", "is_circular_code",
]


def _fmt(v):
    if v is OVER_CAP:
        return "overcap"
    return v


def default_cap(k: int) -> int:
    env = os.environ.get("OVERHANG_CAP")
    if env:
        return int(env)
    return theorem_bound(k) + 2 * k


def analyze(sys: D0LSystem, cap: int | None = None) -> CircularityReport:
    a, b, k = _check_binary_uniform(sys)
    if cap is None:
        cap = default_cap(k)
    m = sys.morphism
    need = max(cap + 2 * k, required_preimage_len(sys, cap + 1), 2 * cap)
    fs = factors_up_to(sys, need)
    g = build_graph(m)
    cls = classify_binary_uniform(sys)
    z = z_min(sys, cap, fs)
    w = l_max(sys, g, cap, fs)
    rv = r_values(sys, cap, fs, g)
    cyc = has_cycle(g)
    code = "" not in g.vertices or not cycle_through(g, "")
    return CircularityReport(
        system=sys,
        k=k,
        classification=cls,
        z=z,
        walks=w,
        r=rv,
        theorem_bound=theorem_bound(k),
        has_cycle=cyc,
        is_code=code,
        is_circular_code=not cyc,
        violations=tuple(forbidden_subgraphs(g)),
        synthesis=synthesis_bound(k, rv),
    )


def _analyze_images(args):
    images, cap = args
    m = Morphism(("a", "b"), {"a": images[0], "b": images[1]})
    return analyze(D0LSystem(m, "a"), cap)


def sweep(k: int, cap: int | None = None, jobs: int = 1) -> list[CircularityReport]:
    """Reports for all (2^k)^2 binary k-uniform morphisms with axiom a, in lexicographic order."""
    if k < 2:
        raise ValueError("k must be >= 2")
    items = [((m.images["a"], m.images["b"]), cap) for m in binary_uniform_morphisms(k)]
    if jobs <= 1:
        return [_analyze_images(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_analyze_images, items, chunksize=8))
