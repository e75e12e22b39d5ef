import pytest

from psmc.alphabet import Polynomial, make_field, poly_pretty
from psmc.cyclic import (
    all_cosets,
    bch_bound_from_defining_set,
    bch_redundancy_bound,
    build_cyclic_code,
    cyclotomic_coset,
    extension_degree,
    minimal_polynomial,
    root_context,
)

GF3 = make_field(3)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def coset_by_iteration(a, n, q):
    """Direct orbit iteration, independent of the library implementation."""
    out = {a}
    x = a * q % n
    while x != a:
        out.add(x)
        x = x * q % n
    return tuple(sorted(out))


def longest_run_bruteforce(members, n):
    """Longest cyclic run by checking every (start, length) pair."""
    best = 0
    s = set(members)
    for start in range(n):
        length = 0
        while length < n and (start + length) % n in s:
            length += 1
        best = max(best, length)
    return best


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------

def test_coset_fixed_point():
    assert cyclotomic_coset(0, 8, 3).members == (0,)


@pytest.mark.parametrize("a,expected", [(1, (1, 3)), (5, (5, 7)), (2, (2, 6)), (4, (4,))])
def test_coset_n8_q3(a, expected):
    c = cyclotomic_coset(a, 8, 3)
    assert c.members == expected == coset_by_iteration(a, 8, 3)
    assert c.representative == min(expected)


def test_cosets_partition():
    for n, q in [(8, 3), (13, 3), (7, 2), (15, 2), (5, 4)]:
        cosets = all_cosets(n, q)
        union = sorted(x for c in cosets for x in c.members)
        assert union == list(range(n))
        for c in cosets:
            assert set(m * q % n for m in c.members) == set(c.members)


def test_coset_requires_coprime():
    with pytest.raises(ValueError):
        cyclotomic_coset(1, 9, 3)


def test_extension_degree():
    assert extension_degree(8, 3) == 2
    assert extension_degree(13, 3) == 3
    assert extension_degree(7, 2) == 3
    assert extension_degree(2, 3) == 1


# ---------------------------------------------------------------------------
# minimal polynomials
# ---------------------------------------------------------------------------

def test_minpoly_of_one_is_x_minus_1():
    p = minimal_polynomial(0, 8, GF3)
    assert p.coeffs == (2, 1)  # x - 1


def test_minpoly_of_minus_one():
    # alpha^4 has order 2, so it is -1 and its minimal polynomial is x + 1.
    ctx = root_context(8, GF3)
    a4 = ctx.ext.pow(ctx.alpha, 4)
    assert ctx.ext.mul(a4, a4) == 1 and a4 != 1
    assert minimal_polynomial(4, 8, GF3).coeffs == (1, 1)


def test_minpoly_product_is_xn_minus_1():
    for n, q in [(8, 3), (13, 3), (7, 2)]:
        f = make_field(q)
        prod = Polynomial.one(f)
        for c in all_cosets(n, q):
            prod = prod * minimal_polynomial(c.representative, n, f)
        assert prod.coeffs == (f.neg(1),) + (0,) * (n - 1) + (1,)


def test_minpoly_n8_q3_factor_set():
    # The five ternary factors of x^8 - 1, as polynomials (labels are
    # alpha-dependent, the set of factors is not).
    factors = {minimal_polynomial(c.representative, 8, GF3).coeffs for c in all_cosets(8, 3)}
    assert factors == {
        (2, 1),  # x + 2
        (1, 1),  # x + 1
        (1, 0, 1),  # x^2 + 1
        (2, 1, 1),  # x^2 + x + 2
        (2, 2, 1),  # x^2 + 2x + 2
    }


def test_minpoly_roots_exactly_on_coset():
    ctx = root_context(8, GF3)
    for a in (0, 1, 2, 4, 5):
        mp = minimal_polynomial(a, 8, GF3)
        embedded = Polynomial(ctx.ext, (ctx.embed(c) for c in mp.coeffs))
        coset = set(cyclotomic_coset(a, 8, 3).members)
        for b in range(8):
            val = embedded(ctx.ext.pow(ctx.alpha, b))
            assert (val == 0) == (b in coset)


def test_minpoly_degree_equals_coset_size():
    for a in range(13):
        mp = minimal_polynomial(a, 13, GF3)
        assert mp.degree == len(cyclotomic_coset(a, 13, 3).members)
        assert mp.lc == 1


def test_minpoly_coeffs_frobenius_fixed():
    ctx = root_context(13, GF3)
    for a in (0, 1, 2, 4, 7):
        for c in minimal_polynomial(a, 13, GF3).coeffs:
            e = ctx.embed(c)
            assert ctx.ext.pow(e, GF3.q) == e


def test_minpoly_over_extension_base_field():
    # GF(4)-cyclic code machinery goes through the proper subfield embedding.
    gf4 = make_field(2, 2)
    prod = Polynomial.one(gf4)
    for c in all_cosets(5, 4):
        mp = minimal_polynomial(c.representative, 5, gf4)
        assert mp.degree == len(c.members)
        prod = prod * mp
    assert prod.coeffs == (1,) + (0,) * 4 + (1,)  # x^5 + 1 over GF(4)


# ---------------------------------------------------------------------------
# BCH bound
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "defining,n,expected",
    [
        ((), 8, 1),
        ((4,), 8, 2),
        ((0, 1, 3), 8, 3),
        ((0, 1, 2, 3, 6), 8, 5),
        ((0, 1, 3, 5, 7), 8, 4),  # run 7 -> 0 -> 1 wraps
        ((6, 7, 0), 8, 4),
    ],
)
def test_bch_bound_values(defining, n, expected):
    assert bch_bound_from_defining_set(defining, n) == expected
    assert expected == longest_run_bruteforce(defining, n) + 1


def test_bch_bound_rejects_full_set():
    with pytest.raises(ValueError):
        bch_bound_from_defining_set(range(8), 8)


def test_bch_redundancy_bound():
    assert bch_redundancy_bound(2, 3) == 2
    assert bch_redundancy_bound(2, 5) == 4
    assert bch_redundancy_bound(7, 1) == 0
    assert bch_redundancy_bound(3, 4) == 6


# ---------------------------------------------------------------------------
# code construction
# ---------------------------------------------------------------------------

def test_build_code_table_row3_shape():
    code = build_cyclic_code(8, GF3, [0, 1])
    assert code.defining_set == (0, 1, 3)
    assert code.g.degree == 3
    assert code.k == 5
    assert code.bch_bound == 3


def test_build_code_table_row5_shape():
    code = build_cyclic_code(8, GF3, [0, 1, 2])
    assert code.defining_set == (0, 1, 2, 3, 6)
    assert code.bch_bound == 5
    assert code.k == 3


def test_build_code_empty_defining_set():
    code = build_cyclic_code(8, GF3, [])
    assert code.g.coeffs == (1,)
    assert code.k == 8
    assert code.bch_bound == 1


def test_build_code_g_times_h():
    for reps in [(0,), (1,), (4, 5), (0, 1, 2), (2, 5), (1, 2, 5)]:
        code = build_cyclic_code(8, GF3, reps)
        prod = code.g * code.h
        assert prod.coeffs == (2,) + (0,) * 7 + (1,)
        assert code.g.degree == len(code.defining_set)


def test_build_code_rejects_zero_code():
    with pytest.raises(ValueError):
        build_cyclic_code(8, GF3, [0, 1, 2, 4, 5])


def test_generator_matrix_rows_are_shifts():
    code = build_cyclic_code(8, GF3, [4, 5])
    G = code.generator_matrix()
    assert G.shape == (5, 8)
    gv = code.g.vector(8)
    assert (G[0] == gv).all()
    assert (G[2] == list(gv[-2:]) + list(gv[:-2])).all()


def test_deterministic_alpha_labels():
    # Fixed alpha makes the label-to-polynomial map reproducible.
    assert poly_pretty(minimal_polynomial(1, 8, GF3)) == "x^2 + x + 2"
    assert poly_pretty(minimal_polynomial(5, 8, GF3)) == "x^2 + 2x + 2"
    assert poly_pretty(minimal_polynomial(2, 8, GF3)) == "x^2 + 1"
