import itertools
from collections import Counter

import pytest

from hirzebruch.errors import BoundsError
from hirzebruch.lattice import PointConfig, SurfaceModel, k_degree, self_intersection
from hirzebruch.negcurves import (AUTO, EXAMPLE_SURFACE, EnumBounds, Kind, auto_bounds, candidate_filter,
                                  effectivity_heuristic, enumerate_neg_classes, make_neg_class,
                                  seventy_seven_list, structural_filter, xu_filter)


def test_example_surface_counts():
    classes = enumerate_neg_classes(EXAMPLE_SURFACE)
    assert len(classes) == 480
    kinds = Counter(c.kind for c in classes)
    assert kinds[Kind.MINUS_ONE] == 240 and kinds[Kind.MINUS_TWO] == 240
    cands = [c for c in classes if candidate_filter(c, 3)]
    assert len(cands) == 77


def test_seventy_seven_families():
    fam = seventy_seven_list()
    assert [len(fam[i]) for i in range(1, 11)] == [6, 1, 6, 20, 15, 6, 1, 15, 6, 1]
    S = EXAMPLE_SURFACE
    assert [c.cls for c in fam[10]] == [S.cls(3, 9, [2] * 6, 2)]
    assert fam[2][0].cls == S.cls(0, 1, [0] * 6, 1)


def test_seventy_seven_needs_the_right_box():
    with pytest.raises(BoundsError):
        seventy_seven_list(EXAMPLE_SURFACE, EnumBounds(2, 6, 2, "manual"))


def test_solutions_are_exact_and_sorted():
    S = SurfaceModel(2, 4, with_x=True)
    classes = enumerate_neg_classes(S)
    keys = [c.sort_key() for c in classes]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for c in classes:
        sq, kd = self_intersection(c.cls, S), k_degree(c.cls, S)
        assert (sq, kd) == ((-1, -1) if c.kind is Kind.MINUS_ONE else (-2, 0))


def test_permutation_symmetry():
    S = SurfaceModel(1, 4)
    classes = {c.cls.key() for c in enumerate_neg_classes(S)}
    for perm in itertools.permutations(range(4)):
        moved = {k[:2] + tuple(k[2 + p] for p in perm) for k in classes}
        assert moved == classes


def test_small_examples():
    S = SurfaceModel(2, 0)
    # -H solves the same system on F_2; only H survives the structural filter
    two = [c for c in enumerate_neg_classes(S) if c.kind is Kind.MINUS_TWO]
    assert [c.cls for c in two] == [-S.H, S.H]
    assert [c.cls for c in two if structural_filter(c, S)] == [S.H]
    T = SurfaceModel(3, 2, with_x=True)
    diff = T.cls(0, 0, [-1, 0], 1)
    assert diff in {c.cls for c in enumerate_neg_classes(T) if c.kind is Kind.MINUS_TWO}


def test_auto_bounds_refuse_nonpositive_k2():
    with pytest.raises(BoundsError):
        auto_bounds(SurfaceModel(3, 8))
    with pytest.raises(BoundsError):
        enumerate_neg_classes(SurfaceModel(3, 7, with_x=True))
    assert enumerate_neg_classes(SurfaceModel(3, 8), EnumBounds(2, 8, 2, "manual"))
    assert not EnumBounds(2, 8, 2, "manual").certified
    assert EnumBounds.parse("auto") == AUTO


def test_structural_filter_examples():
    S = SurfaceModel(3, 2)
    assert not structural_filter(S.cls(2, 3, [1, 1]), S)
    assert structural_filter(S.H, S)
    assert structural_filter(S.cls(0, 1, [1, 0]), S)
    assert structural_filter(S.E(1), S)
    assert not structural_filter(S.cls(0, 2, [1, 1]), S)
    assert not structural_filter(S.cls(1, 3, [2, 0]), S)
    assert not structural_filter(S.cls(-1, 5, [0, 0]), S)


@pytest.mark.parametrize("e", range(0, 9))
def test_structural_invariant_small_r(e):
    # every class surviving the structural filter for r <= e+1 is F-, H-, (1,e)- or exceptional-type
    for r in range(0, e + 2):
        S = SurfaceModel(e, r)
        try:
            bounds = auto_bounds(S)
        except BoundsError:
            bounds = EnumBounds(3, 3 * e + 3, 3, "manual")
        for c in enumerate_neg_classes(S, bounds):
            if structural_filter(c, S):
                assert (c.cls.a, c.cls.b) in {(0, 0), (0, 1), (1, 0), (1, e)}, c.cls.pretty()


def test_effectivity_examples():
    for e in range(1, 7):
        S = SurfaceModel(e, e + 2)
        assert not effectivity_heuristic(S.cls(1, e, [1] * (e + 2)), S)
    X = EXAMPLE_SURFACE
    assert effectivity_heuristic(X.cls(3, 9, [2] * 6, 2), X)
    assert not effectivity_heuristic(X.cls(3, 9, [2] * 6, 3), X)
    assert effectivity_heuristic(X.E(4), X)
    assert not effectivity_heuristic(X.cls(0, 0, [-1, 0, 0, 0, 0, 0], 1), X)


def test_effectivity_configured_table():
    S = SurfaceModel(2, 3, PointConfig.configured([False, False, True], ["p", "p", "q"]))
    assert effectivity_heuristic(S.cls(0, 1, [1, 1, 0]), S)
    assert not effectivity_heuristic(S.cls(0, 1, [1, 0, 1]), S)
    assert effectivity_heuristic(S.cls(1, 0, [0, 0, 1]), S)
    assert not effectivity_heuristic(S.cls(1, 0, [1, 0, 0]), S)


def test_xu_bound_uses_the_image_curve():
    X = EXAMPLE_SURFACE
    # image of 3H+9F on F_3 squares to 27 >= 4*6 + 4 - 2
    assert xu_filter(X.cls(3, 9, [2] * 6, 2), X)
    assert xu_filter(X.cls(0, 1, [1, 0, 0, 0, 0, 0], 0), X)
    # a conic-type class through too many double points
    assert not xu_filter(X.cls(1, 3, [2, 2, 0, 0, 0, 0], 0), X)
    # recorded only: never used as a hard rejection
    nc = make_neg_class(X.cls(2, 6, [2, 2, 1, 1, 1, 1], 1), X)
    assert nc.kind is Kind.MINUS_ONE and nc.passes_irreducibility
    assert nc.passes_xu is xu_filter(nc.cls, X)


def test_make_neg_class_rejects_other_classes():
    S = SurfaceModel(1, 1)
    with pytest.raises(ValueError):
        make_neg_class(S.F, S)
