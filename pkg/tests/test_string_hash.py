import random

import pytest
from hypothesis import given, settings, strategies as st

import reference
from fasthash.errors import InputError, ParameterError
from fasthash.mersenne import P89, m89_horner_step
from fasthash.seeding import SeedSource
from fasthash.string_hash import (
    ChunkedSeeds,
    PolySeeds,
    StringSeeds,
    bytes_to_words,
    chunk_reduce,
    chunked_hash,
    hash_string,
    pack_string,
    poly_hash,
    poly_hash_composed,
    reduced_string,
    uses_bounded_path,
)


@pytest.fixture(scope="module")
def string_seeds():
    return StringSeeds.draw(SeedSource.fixed(0))


@pytest.fixture(scope="module")
def chunk_seeds():
    return ChunkedSeeds.draw(SeedSource.fixed(5), 1 << 64)


def test_frozen_bounded_value(string_seeds):
    assert hash_string(string_seeds, b"hello") == 0x01AC7D7FD47C14FB


nilfree = st.binary(max_size=256).map(lambda b: b.replace(b"\0", b"\1"))


@given(nilfree)
def test_bounded_path_matches_reference(string_seeds, data):
    assert hash_string(string_seeds, data) == reference.bounded(0, data)


@settings(max_examples=50, deadline=None)
@given(st.binary(max_size=1100))
def test_chunked_matches_reference(chunk_seeds, data):
    ref = reference.draw_chunked(reference.Stream(5), 2**64)
    assert chunked_hash(chunk_seeds, data) == reference.chunked(ref, data)


def test_chunked_reference_on_one_mebibyte(chunk_seeds):
    data = random.Random(1).randbytes(1 << 20)
    ref = reference.draw_chunked(reference.Stream(5), 2**64)
    assert chunked_hash(chunk_seeds, data) == reference.chunked(ref, data)


def test_packing_is_little_endian():
    packed = pack_string(b"abcdefghi")
    assert packed.words == (0x6867666564636261, 0x69)
    assert packed.coords == (0x64636261, 0x68676665, 0x69, 0)
    assert bytes_to_words(b"") == ()


def test_packing_rejects_nil_and_long_input():
    with pytest.raises(InputError):
        pack_string(b"a\0b")
    with pytest.raises(InputError):
        pack_string(b"a" * 257)


def test_path_selection():
    assert uses_bounded_path(256, False)
    assert not uses_bounded_path(257, False)
    assert not uses_bounded_path(3, True)


def test_long_and_nil_strings_use_chunked_hash(string_seeds):
    for data in (b"a" * 257, b"a\0b", b"\0"):
        assert hash_string(string_seeds, data) == chunked_hash(string_seeds.chunked, data)


def test_chunks_differing_in_trailing_zeros(chunk_seeds):
    assert chunk_reduce(chunk_seeds, b"a") != chunk_reduce(chunk_seeds, b"a\0")
    assert chunk_reduce(chunk_seeds, b"") != chunk_reduce(chunk_seeds, b"\0" * 8)


def test_reduced_string_lengths(chunk_seeds):
    assert len(reduced_string(chunk_seeds, b"")) == 1
    assert len(reduced_string(chunk_seeds, b"x" * 256)) == 1
    assert len(reduced_string(chunk_seeds, b"x" * 257)) == 2


@given(st.integers(0, P89 - 1), st.lists(st.integers(0, P89 - 1), min_size=1, max_size=12))
def test_poly_hash_is_the_polynomial(a, xs):
    d = len(xs) - 1
    assert poly_hash(a, xs) == sum(x * pow(a, d - i, P89) for i, x in enumerate(xs)) % P89


def test_poly_leading_zeros_do_not_change_the_value():
    assert poly_hash(12345, [0, 0, 7, 9]) == poly_hash(12345, [7, 9])


def test_poly_input_checks():
    with pytest.raises(InputError):
        poly_hash(3, [])
    with pytest.raises(ParameterError):
        poly_hash(3, [P89])


@given(st.lists(st.integers(0, 16), min_size=1, max_size=6), st.integers(0, 16), st.integers(0, 16), st.integers(0, 16))
def test_composed_small_prime(xs, a, b, c):
    seeds = PolySeeds(a, b, c, 5, 17)
    inner = poly_hash(c, xs, 17)
    assert poly_hash_composed(seeds, xs) == (a * inner + b) % 17 % 5


def test_string_seed_validation():
    src = SeedSource.fixed(0)
    s = StringSeeds.draw(src, 32)
    assert s.chunked.poly.m == 1 << 32
    assert hash_string(s, b"abc") < 1 << 32
    with pytest.raises(ParameterError):
        StringSeeds(s.hi, s.lo, s.chunked, 64)
    with pytest.raises(ParameterError):
        ChunkedSeeds(s.hi, s.lo, s.chunked.poly)


def test_packing_is_injective():
    rng = random.Random(2)
    strings = {rng.randbytes(rng.randint(1, 256)).replace(b"\0", b"\1") for _ in range(100_000)}
    images = {(p.coord_count, p.coords) for p in map(pack_string, strings)}
    assert len(images) == len(strings)
    assert pack_string(b"a").words == (0x61,) and pack_string(b"a").coord_count == 2
    assert pack_string(b"").coord_count == 0


def test_incremental_horner():
    rng = random.Random(3)
    for _ in range(10_000):
        xs = [rng.getrandbits(64) for _ in range(rng.randint(1, 8))]
        a = rng.randrange(P89)
        h = xs[0]
        for x in xs[1:]:
            h = m89_horner_step(h, a, x)
        assert poly_hash(a, xs) == h


def test_small_polynomial_examples():
    assert poly_hash(2, (3, 5)) == 11
    assert poly_hash(0, (4, 8, 9)) == 9
    assert poly_hash(777, (42,)) == 42
    xs = (1, 2, 3)
    assert poly_hash_composed(PolySeeds(1, 0, 99, P89), xs) == poly_hash(99, xs)
    assert poly_hash_composed(PolySeeds(0, 12345, 99, 100), xs) == 45


def test_empty_bounded_string(string_seeds):
    assert hash_string(string_seeds, b"") == (
        (string_seeds.hi.a[0] >> 32) << 32 | string_seeds.lo.a[0] >> 32
    )
