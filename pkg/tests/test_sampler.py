import random
from collections import Counter

import pytest

from schnyder_kit.errors import SamplerError
from schnyder_kit.planar_map import as_angulation
import schnyder_kit.orientation as O
import schnyder_kit.schnyder as S
import schnyder_kit.duality as D
import schnyder_kit.drawing as DR
import schnyder_kit.sampler as SA

import instances as I


def even_pairs(m):
    ang = as_angulation(m, 4)
    return [(ang, S.phi(S.psi_inverse(o)))
            for o in O.lattice_enumerate(ang) if O.is_even(o)]


def compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def all_sum_valid_triples(n):
    for r in range(1, n + 1):
        for alpha in compositions(n, r):
            for beta in compositions(n, n - r + 1):
                for gamma in compositions(n, n - r + 1):
                    yield SA.EncodingTriple(alpha, beta, gamma)


def test_encode_cube():
    triples = {(t.alpha, t.beta, t.gamma)
               for t in (SA.encode(a, s) for a, s in even_pairs(I.cube()))}
    assert triples == {((3, 2, 1), (1, 1, 2, 2), (2, 2, 1, 1)),
                       ((3, 2, 1), (1, 2, 1, 2), (2, 1, 2, 1))}
    for alpha, beta, gamma in triples:
        assert sum(alpha) == sum(beta) == sum(gamma) == 6


def test_round_trip_exhaustive_small_n():
    for n in range(2, 7):
        seen = set()
        for ang, s in SA.enumerate_pairs(n):
            t = SA.encode(ang, s)
            key = (t.alpha, t.beta, t.gamma)
            assert key not in seen      # encode is injective
            seen.add(key)
            ang2, s2 = SA.decode(t)
            assert SA.pair_code(ang, s) == SA.pair_code(ang2, s2)


def test_round_trip_handmade_instances():
    for m in (I.cube(), I.cube_plus(), I.concentric_quadrangulation(3),
              I.pseudo_double_wheel(4), I.pseudo_double_wheel(5)):
        for ang, s in even_pairs(m):
            ang2, s2 = SA.decode(SA.encode(ang, s))
            assert SA.pair_code(ang, s) == SA.pair_code(ang2, s2)


def test_decode_accepts_exactly_the_encodable_triples():
    n = 5
    image = {(t.alpha, t.beta, t.gamma)
             for t in (SA.encode(a, s) for a, s in SA.enumerate_pairs(n))}
    accepted = set()
    stages = Counter()
    for t in all_sum_valid_triples(n):
        try:
            SA.decode(t)
            accepted.add((t.alpha, t.beta, t.gamma))
        except SamplerError as exc:
            assert exc.kind == "Invalid"
            stages[exc.stage] += 1
    assert accepted == image
    assert set(stages) <= {"TreeReconstructionFailed", "ClosureFailed",
                           "ValidationFailed"}


def test_decode_error_stages():
    with pytest.raises(SamplerError) as ei:
        SA.decode(SA.EncodingTriple((2, 1), (1, 2), (2, 2)))
    assert ei.value.kind == "Invalid"
    assert ei.value.stage == "TreeReconstructionFailed"   # sum mismatch
    with pytest.raises(SamplerError) as ei:
        SA.decode(SA.EncodingTriple((1,), (1,), (1,)))    # u2 would equal u4
    assert ei.value.stage == "TreeReconstructionFailed"
    with pytest.raises(SamplerError) as ei:
        SA.decode(SA.EncodingTriple((2, 2), (1, 2, 1), (1, 2, 1)))
    assert ei.value.stage == "ClosureFailed"
    assert ei.value.as_object()["kind"] == "Invalid"


def test_triple_json_round_trip():
    t = SA.EncodingTriple((3, 2, 1), (1, 1, 2, 2), (2, 2, 1, 1))
    obj = t.to_json_obj()
    assert obj == {"alpha": [3, 2, 1], "beta": [1, 1, 2, 2],
                   "gamma": [2, 2, 1, 1]}
    assert SA.EncodingTriple.from_json_obj(obj) == t


def test_geometric_marginal_and_determinism():
    rng = random.Random(99)
    draws = [SA._geometric(rng) for _ in range(10 ** 5)]
    assert abs(draws.count(1) / len(draws) - 0.5) < 0.01
    t1 = SA.sample_geometric_triple(12, random.Random(5))
    t2 = SA.sample_geometric_triple(12, random.Random(5))
    assert t1 == t2
    assert t1.r <= 12 and len(t1.beta) == len(t1.gamma) == 12 - t1.r + 1
    assert sum(t1.alpha) >= 12


def test_fast_sampler_matches_reference_distribution():
    # both rejection paths accept with the same distribution; compare
    # accepted-triple frequencies at n = 4 (6 valid pairs)
    def histogram(fn, seed, k):
        rng = random.Random(seed)
        c = Counter()
        for _ in range(k):
            _, t, _ = fn(4, rng)
            c[(t.alpha, t.beta, t.gamma)] += 1
        return c
    k = 1500
    h_slow = histogram(SA.rejection_sample, 11, k)
    h_fast = histogram(SA.rejection_sample_fast, 11, k)
    assert set(h_slow) == set(h_fast) and len(h_slow) == 6
    for key in h_slow:
        assert abs(h_slow[key] - h_fast[key]) / k < 0.05


def test_rejection_sample_validates_and_limits():
    pair, t, attempts = SA.rejection_sample(6, random.Random(3))
    ang, s = pair
    assert attempts >= 1
    assert ang.map.n_faces == 6
    assert S.validate_schnyder(s) == []
    assert (t.alpha, t.beta, t.gamma) == \
        tuple((u.alpha, u.beta, u.gamma) for u in (SA.encode(ang, s),))[0]
    with pytest.raises(SamplerError) as ei:
        SA.rejection_sample(8, random.Random(0), max_attempts=1)
    assert ei.value.kind == "RejectionLimitExceeded"


def test_part_full_counts_triple_vs_pair_vs_geometry():
    assert SA.part_full_counts(
        SA.EncodingTriple((9,), (1, 1, 1, 1), (2, 1, 1,))) == (0, 0)
    assert SA.part_full_counts(
        SA.EncodingTriple((1,), (2, 3, 2), (2, 2, 3))) == (1, 2)
    for m in (I.pseudo_double_wheel(4), I.pseudo_double_wheel(5)):
        for ang, s in even_pairs(m):
            part, full = SA.part_full_counts((ang, s))
            fc = DR.classify_faces(DR.orthogonal_drawing(D.chi(s)))
            cls = [info.cls for info in fc.faces.values()]
            assert (part, full) == (cls.count("partly_reducible"),
                                    cls.count("fully_reducible"))


def test_enumerate_angulations_counts_and_validity():
    by_faces = Counter(m.n_faces for m in SA.enumerate_angulations(3, 8))
    assert by_faces == {2: 1, 4: 1, 6: 3, 8: 13}
    maps = list(SA.enumerate_angulations(4, 5))
    assert Counter(m.n_faces for m in maps) == {2: 1, 3: 2, 4: 6, 5: 22}
    codes = set()
    for m in maps:
        as_angulation(m, 4)
        assert m.girth() == 4
        code = m.rooted_code()
        assert code not in codes
        codes.add(code)


def test_enumerate_pairs_counts():
    # 1, 2, 6, 22, 92: the Baxter numbers, independently of the sampler
    assert [len(SA.enumerate_pairs(n)) for n in (2, 3, 4, 5, 6)] == \
        [1, 2, 6, 22, 92]
    with pytest.raises(SamplerError) as ei:
        SA.enumerate_pairs(SA.ENUMERATION_CAP + 1)
    assert ei.value.kind == "CapExceeded"


def test_concentration_experiment_reproducible_and_parallel():
    st1 = SA.concentration_experiment(8, 12, seed=5)
    st2 = SA.concentration_experiment(8, 12, seed=5, jobs=2)
    assert st1 == st2
    assert st1.accepted == 12 and len(st1.part_counts) == 12
    obj = st1.to_json_obj()
    assert obj["summary"]["acceptance_rate"] == 12 / st1.attempts
    lines = st1.to_csv().strip().splitlines()
    assert lines[0] == "index,part,full,reduced_width,reduced_height"
    assert len(lines) == 13
