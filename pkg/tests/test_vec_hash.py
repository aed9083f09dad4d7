import pytest
from hypothesis import given, strategies as st

from fasthash.errors import ParameterError
from fasthash.seeding import SeedSource
from fasthash.vec_hash import VectorSeeds, naive_vector_hash, pms_hash, prefix_pms_hash, vms_hash

u64 = st.integers(0, 2**64 - 1)
u32 = st.integers(0, 2**32 - 1)

A = (0x0123456789ABCDEF, 0xFEDCBA9876543210, 0x0F1E2D3C4B5A6978, 0x8796A5B4C3D2E1F0, 0x5555AAAA5555AAAA)
B = 0x1111222233334444


def test_frozen_pair_multiply_shift_value():
    seeds = VectorSeeds(A, B, 32, 32, 64)
    assert pms_hash(seeds, (0xDEADBEEF, 0x01234567, 0xFFFFFFFF, 0)) == 0x937A7EE5


@st.composite
def seeds_and_vector(draw, even=True):
    D = 2 * draw(st.integers(1, 8))
    a = tuple(draw(st.lists(u64, min_size=D + 1, max_size=D + 1)))
    n = draw(st.integers(0, D // 2)) * 2 if even else draw(st.integers(0, D))
    x = draw(st.lists(u32, min_size=n, max_size=n))
    return VectorSeeds(a, draw(u64), 32, 32, 64), x


@given(seeds_and_vector(even=False))
def test_vector_multiply_shift_oracle(sx):
    s, x = sx
    total = s.b + sum(ai * xi for ai, xi in zip(s.a, x))
    assert vms_hash(s, x) == (total % 2**64) >> 32


@given(seeds_and_vector())
def test_pair_multiply_shift_oracle(sx):
    s, x = sx
    total = sum((s.a[i] + x[i + 1]) * (s.a[i + 1] + x[i]) for i in range(0, len(x), 2))
    assert pms_hash(s, x) == ((total + s.b) % 2**64) >> 32
    assert prefix_pms_hash(s, x) == ((total + s.a[len(x)]) % 2**64) >> 32


def test_prefix_of_empty_vector():
    s = VectorSeeds(A, B, 32, 32, 64)
    assert prefix_pms_hash(s, ()) == A[0] >> 32


@given(st.lists(st.integers(0, 127).map(lambda v: 2 * v + 1), min_size=2, max_size=2), st.integers(0, 255))
def test_naive_scheme_always_collides_on_top_bits(a, b):
    assert naive_vector_hash(a, b, (0, 0), 8, 3) == naive_vector_hash(a, b, (128, 128), 8, 3)


def test_draw_and_validation():
    s = VectorSeeds.draw(SeedSource.fixed(0), 4)
    assert s.D == 4 and len(s.a) == 5
    with pytest.raises(ParameterError):
        VectorSeeds(A[:4], B, 32, 32, 64)
    with pytest.raises(ParameterError):
        VectorSeeds(A, B, 32, 40, 64)
    with pytest.raises(ParameterError):
        pms_hash(s, (1, 2, 3))
    with pytest.raises(ParameterError):
        vms_hash(s, (1, 2, 3, 4, 5, 6))
    with pytest.raises(ParameterError):
        vms_hash(s, (2**32,))
    with pytest.raises(ParameterError):
        naive_vector_hash((2, 3), 0, (1, 1), 8, 3)
