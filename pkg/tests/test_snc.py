from itertools import product

import pytest
from hypothesis import given, strategies as st

from refcob.snc import (
    FULL,
    BundleExpr,
    CartierDiv,
    FaceError,
    PreconditionError,
    SncConfig,
    SupportSet,
    admissibility_failure,
    divisor_admissible,
    divisorial,
    enumerate_configs,
    face_in_support,
    face_map_admissible,
    frame,
    global_pd,
    good_position,
    intersection_is_cartier,
    is_smooth,
    leading,
    pd_sum,
    prefix_intersection,
    split_component,
    supported_in,
    zero_pd,
)

full3 = frame(3, 3)


def minimal_generators(vectors):
    """Minimal monomials of the ideal generated by x^v, by walking the bounding box."""
    if not vectors:
        return []
    n = len(vectors[0])
    top = [max(v[i] for v in vectors) for i in range(n)]
    inside = lambda w: any(all(a <= b for a, b in zip(v, w)) for v in vectors)
    out = []
    for w in product(*(range(t + 1) for t in top)):
        if inside(w) and not any(w[i] and inside(w[:i] + (w[i] - 1,) + w[i + 1:]) for i in range(n)):
            out.append(w)
    return out


def principal_everywhere(cfg, J, vecs):
    for K in cfg.faces_over(J):
        coords = [k for k in K if k not in J]
        if len(minimal_generators([tuple(v[k] for k in coords) for v in vecs])) > 1:
            return False
    return True


def test_config_validation():
    with pytest.raises(FaceError):
        SncConfig(2, ("E1", "E2"), frozenset({(0, 1)}))
    with pytest.raises(FaceError):
        SncConfig(1, ("E1", "E2"), frozenset({(0,), (1,), (0, 1)}))
    with pytest.raises(FaceError):
        SncConfig(1, ("E1",), frozenset({(3,)}))
    with pytest.raises(ValueError):
        SncConfig(1, ("E1", "E1"), frozenset())
    assert () in frame(0, 2).faces


def test_digest_is_stable():
    assert frame(2, 2).digest() == frame(2, 2).digest()
    assert frame(2, 2).digest() != frame(2, 2, [(0,), (1,)]).digest()


def test_pd_sum():
    assert pd_sum(divisorial(1, 0), divisorial(0, 1)) == divisorial(1, 1)
    assert pd_sum(divisorial(1, 0), zero_pd(2)) == divisorial(1, 0)
    L = BundleExpr((0, 0), {"L": 1})
    assert pd_sum(divisorial(1, 0), global_pd(L)) == global_pd(BundleExpr((1, 0), {"L": 1}))


def test_supported_in():
    assert supported_in(divisorial(1, 0), divisorial(2, 1))
    assert not supported_in(divisorial(1, 0), divisorial(0, 1))
    assert supported_in(global_pd(BundleExpr((1, 1))), global_pd(BundleExpr((0, 0))))
    assert not supported_in(global_pd(BundleExpr((1, 1))), divisorial(1, 1))


def test_face_in_support():
    cfg = frame(2, 2)
    assert face_in_support(cfg, (0,), divisorial(1, 0))
    assert not face_in_support(cfg, (), divisorial(1, 0))
    assert face_in_support(cfg, (0, 1), global_pd(BundleExpr((0, 0))))
    with pytest.raises(FaceError):
        face_in_support(frame(2, 2, [(0,), (1,)]), (0, 1), divisorial(1, 0))


def test_leading_uses_zero_based_positions():
    cfg = frame(2, 2)
    assert leading(cfg, (), [divisorial(1, 0)]) == 0
    assert leading(cfg, (0,), [divisorial(1, 0), divisorial(0, 1)]) == 1
    assert leading(cfg, (0, 1), [divisorial(1, 0), divisorial(0, 1)]) is None


def test_intersection_is_cartier_examples():
    assert intersection_is_cartier(full3, (), [(2, 1, 0)])
    assert not intersection_is_cartier(full3, (), [(2, 1, 0), (1, 2, 0)])
    assert intersection_is_cartier(full3, (), [(1, 0, 0), (2, 0, 0)])
    assert intersection_is_cartier(full3, (), [FULL, (1, 2, 0)])
    assert intersection_is_cartier(full3, (), [(0, 0, 0), (1, 2, 0), (2, 1, 0)])
    # a least element suffices; the vectors need not form a chain
    assert intersection_is_cartier(frame(2, 2), (), [(1, 1), (2, 1), (1, 2)])
    # the same two vectors are fine when E1 and E2 never meet
    apart = frame(3, 3, [(0,), (1,), (2,), (0, 2), (1, 2)])
    assert intersection_is_cartier(apart, (), [(2, 1, 0), (1, 2, 0)])


def test_mixed_pair_is_not_principal_by_enumeration():
    assert len(minimal_generators([(2, 1), (1, 2)])) == 2
    assert len(minimal_generators([(1, 1), (2, 1)])) == 1


@given(
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=3),
    st.sampled_from(list(enumerate_configs(3, 3))[-19:]),
)
def test_cartier_test_matches_monomial_enumeration(vecs, cfg):
    if cfg.m != 3:
        return
    vecs = [tuple(v[k] if k in cfg.neighbours(()) else 0 for k in range(3)) for v in vecs]
    if any(not any(v) for v in vecs):
        assert intersection_is_cartier(cfg, (), vecs)
        return
    assert intersection_is_cartier(cfg, (), vecs) == principal_everywhere(cfg, (), vecs)


def test_face_map_admissible_examples():
    assert face_map_admissible(full3, (0,), [divisorial(0, 1, 1)])
    assert face_map_admissible(full3, (), [divisorial(1, 1, 0), divisorial(2, 1, 0)])
    assert not face_map_admissible(full3, (), [divisorial(2, 1, 0), divisorial(1, 2, 0)])
    assert admissibility_failure(full3, (), [divisorial(2, 1, 0), divisorial(1, 2, 0)]) == 2


def test_divisor_admissible_examples():
    bad = [divisorial(0, 0, 1), divisorial(0, 2, 1), divisorial(0, 1, 2)]
    assert divisor_admissible(full3, CartierDiv((0, 0, 0)), bad)
    assert divisor_admissible(full3, CartierDiv((1, 0, 0)), [divisorial(0, 1, 1)])
    # on the face E1 the restrictions (2,1) and (1,2) on E2, E3 clash
    assert not divisor_admissible(full3, CartierDiv((1, 0, 0)), [divisorial(0, 2, 1), divisorial(0, 1, 2)])


def test_good_position():
    assert good_position(full3, CartierDiv((1, 1, 0)), [])
    assert good_position(full3, CartierDiv((2, 1, 0)), [divisorial(0, 0, 1)])
    # a global entry contains the ambient, so it never leads
    assert good_position(full3, CartierDiv((1, 0, 0)), [global_pd(BundleExpr((0, 0, 0)))])
    with pytest.raises(PreconditionError):
        good_position(full3, CartierDiv((1, 0, 0)), [divisorial(2, 1, 0), divisorial(1, 2, 0)])


def test_prefix_intersection_shapes():
    seq = [divisorial(1, 1, 0), divisorial(2, 1, 0)]
    assert prefix_intersection(full3, (), seq, 2) == (1, 1, 0)
    assert prefix_intersection(full3, (0,), [divisorial(1, 0, 0)], 1) == FULL
    assert prefix_intersection(full3, (), [divisorial(2, 1, 0), divisorial(1, 2, 0)], 2) is None
    assert prefix_intersection(full3, (), [divisorial(1, 0, 0), divisorial(0, 0, 0)], 2) == (0, 0, 0)


def test_is_smooth():
    assert is_smooth(full3, CartierDiv((1, 0, 0)))
    assert not is_smooth(full3, CartierDiv((1, 1, 0)))
    assert not is_smooth(full3, CartierDiv((2, 0, 0)))
    assert is_smooth(frame(2, 2, [(0,), (1,)]), CartierDiv((1, 1)))


def test_support_sets_are_closed():
    for cfg in list(enumerate_configs(3, 3))[::5]:
        for v in product((0, 1), repeat=cfg.m):
            assert SupportSet.of(cfg, divisorial(v)).is_closed(cfg)


def test_split_lone_component():
    cfg = frame(2, 1)
    fine, tr = split_component(cfg, 0, 3)
    assert fine.sorted_faces() == [(), (0,), (1,), (2,)]
    assert fine.components == ("E1_1", "E1_2", "E1_3")
    assert tr.divisor(CartierDiv((2,))) == CartierDiv((2, 2, 2))


def test_split_keeps_parts_disjoint():
    cfg = frame(2, 2)
    fine, tr = split_component(cfg, 0, 2)
    assert (0, 2) in fine.faces and (1, 2) in fine.faces
    assert (0, 1) not in fine.faces
    assert tr.face_map[(0, 1)] == ((0, 2), (1, 2))


@pytest.mark.parametrize("p", [2, 3])
def test_split_face_counts(p):
    for cfg in enumerate_configs(3, 3):
        for k in range(cfg.m):
            fine, _ = split_component(cfg, k, p)
            with_k = sum(1 for J in cfg.faces if k in J)
            assert len(fine.faces) == len(cfg.faces) - with_k + p * with_k
            assert fine.dim == cfg.dim


def test_split_errors():
    with pytest.raises(IndexError):
        split_component(frame(1, 1), 2, 2)
    with pytest.raises(ValueError):
        split_component(frame(1, 1), 0, 1)


def test_enumeration_is_downward_closed_and_complete():
    configs = list(enumerate_configs(2, 2))
    assert len(configs) == 1 + 1 + 1 + 1 + 2 + 2 + 1 + 4 + 5
    assert len({c.digest() for c in configs}) == len(configs)


def test_contracts_on_full_frame():
    from refcob.verify import contract_sweep

    assert contract_sweep(full3).ok
