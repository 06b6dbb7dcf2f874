import numpy as np

from phaselab.streams import spawn_streams, stream


def test_stream_reproducible():
    assert np.array_equal(stream(42).standard_normal(10), stream(42).standard_normal(10))


def test_stream_accepts_seedsequence():
    seq = np.random.SeedSequence(5)
    a = stream(seq).standard_normal(4)
    b = stream(np.random.SeedSequence(5)).standard_normal(4)
    assert np.array_equal(a, b)


def test_spawned_streams_are_distinct_and_stable():
    first = [g.standard_normal(8) for g in spawn_streams(0, 4)]
    second = [g.standard_normal(8) for g in spawn_streams(0, 4)]
    for a, b in zip(first, second):
        assert np.array_equal(a, b)
    for i in range(4):
        for j in range(i + 1, 4):
            assert not np.allclose(first[i], first[j])


def test_spawn_prefix_stable():
    # the first k streams do not depend on how many are spawned
    a = spawn_streams(1, 2)[0].standard_normal(5)
    b = spawn_streams(1, 6)[0].standard_normal(5)
    assert np.array_equal(a, b)


def test_counter_based_generator():
    assert isinstance(stream(0).bit_generator, np.random.Philox)
