from collections import defaultdict

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from d0lsync.interpretations import (
    Interpretation,
    check_z_min,
    enumerate_interpretations,
    injective_on_factors,
    required_preimage_len,
    sync_report,
    z_min,
)
from d0lsync.language import factors_up_to
from d0lsync.words import D0LSystem, Morphism

TM = D0LSystem.parse("a->ab,b->ba")


def system(a, b):
    return D0LSystem(Morphism.from_images({"a": a, "b": b}), "a")


def brute_interpretations(sys, fs, u):
    """Minimal covers by trying every factor v of the right length range."""
    m = sys.morphism
    out = set()
    for n in range(1, required_preimage_len(sys, len(u)) + 1):
        for v in fs.layer(n):
            img = m(v)
            first, last = len(m.images[v[0]]), len(m.images[v[-1]])
            for p in range(first):
                s = len(img) - p - len(u)
                if 0 <= s < last and img[p:p + len(u)] == u:
                    cuts, pos = [], 0
                    for c in [""] + list(v):
                        pos += len(m.images[c]) if c else 0
                        if p <= pos <= p + len(u):
                            cuts.append(pos - p)
                    out.add(Interpretation(img[:p], v, img[len(img) - s:], tuple(cuts)))
    return sorted(out)


def test_thue_morse_ba():
    fs = factors_up_to(TM, 8)
    rep = sync_report(TM, fs, "ba")
    assert [(i.p, i.v, i.s, i.cuts) for i in rep.interpretations] == [
        ("", "b", "", (0, 2)),
        ("a", "aa", "b", (1,)),
    ]
    assert not rep.has_sync_point


def test_thue_morse_abba_single_cover():
    fs = factors_up_to(TM, 8)
    rep = sync_report(TM, fs, "abba")
    assert len(rep.interpretations) == 1
    assert rep.has_sync_point


def test_thue_morse_z_min():
    z = z_min(TM, 12)
    assert (z.z_min, z.witness, z.exceeded_cap, z.level_counts) == (3, "aba", False, (2, 2, 2))
    assert check_z_min(TM, z)


def test_non_injective_has_no_delay():
    z = z_min(system("ab", "ab"), 10)
    assert not z.injective and z.exceeded_cap


def test_repetitive_exceeds_cap():
    z = z_min(system("aba", "bab"), 20)
    assert z.exceeded_cap and z.z_min == 20


def test_cap_validation():
    with pytest.raises(ValueError):
        z_min(TM, 0)


uniform = st.integers(2, 3).flatmap(
    lambda k: st.tuples(st.text("ab", min_size=k, max_size=k), st.text("ab", min_size=k, max_size=k))
)


@settings(max_examples=40, deadline=None)
@given(uniform, st.data())
def test_interpretations_match_brute_force(images, data):
    sys = system(*images)
    fs = factors_up_to(sys, 12)
    layer = sorted(fs.layer(data.draw(st.integers(1, 4))))
    assume(layer)
    u = data.draw(st.sampled_from(layer))
    assert enumerate_interpretations(sys, fs, u) == brute_interpretations(sys, fs, u)


@settings(max_examples=40, deadline=None)
@given(uniform, st.data())
def test_sync_point_inherited_by_extensions(images, data):
    sys = system(*images)
    fs = factors_up_to(sys, 14)
    layer = sorted(fs.layer(data.draw(st.integers(1, 5))))
    u = data.draw(st.sampled_from(layer))
    if sync_report(sys, fs, u).has_sync_point:
        for c in "ab":
            for w in (u + c, c + u):
                if w in fs:
                    assert sync_report(sys, fs, w).has_sync_point


@settings(max_examples=40, deadline=None)
@given(uniform)
def test_uniform_injectivity_shortcut(images):
    sys = system(*images)
    fs = factors_up_to(sys, 6)
    groups = defaultdict(set)
    for w in fs:
        groups[sys.morphism(w)].add(w)
    assert injective_on_factors(fs) == all(len(g) == 1 for g in groups.values())


@settings(max_examples=30, deadline=None)
@given(uniform)
def test_z_min_rescan(images):
    sys = system(*images)
    z = z_min(sys, 16)
    assume(not z.exceeded_cap)
    assert check_z_min(sys, z)
