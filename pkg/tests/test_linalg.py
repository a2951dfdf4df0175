import itertools

from hypothesis import given, settings, strategies as st

from gradednil.linalg import howell, howell_contains, rref, rref_contains
from gradednil.ringcore import fp, rat


def brute_span(rows, ncols, m):
    span = {(0,) * ncols}
    work = [(0,) * ncols]
    gens = [tuple(v % m for v in r) for r in rows]
    while work:
        v = work.pop()
        for g in gens:
            w = tuple((a + b) % m for a, b in zip(v, g))
            if w not in span:
                span.add(w)
                work.append(w)
    return span


@given(
    st.sampled_from([2, 3, 4, 6, 8, 9]),
    st.integers(1, 3),
    st.lists(st.lists(st.integers(0, 11), min_size=3, max_size=3), max_size=4),
)
@settings(max_examples=150, deadline=None)
def test_howell_membership_matches_bruteforce(m, _seed, rows):
    ncols = 3
    form = howell(rows, ncols, m)
    span = brute_span(rows, ncols, m)
    for vec in itertools.product(range(m), repeat=ncols):
        assert howell_contains(form, list(vec), m) == (vec in span)


@given(
    st.sampled_from([4, 6, 8]),
    st.lists(st.lists(st.integers(0, 11), min_size=2, max_size=2), min_size=1, max_size=3),
    st.randoms(use_true_random=False),
)
@settings(max_examples=100, deadline=None)
def test_howell_is_canonical(m, rows, rnd):
    ncols = 2
    form = howell(rows, ncols, m)
    span = brute_span(rows, ncols, m)
    regenerated = rnd.sample(sorted(span), min(len(span), 5))
    unit = m - 1  # -1 is always a unit
    regenerated += [tuple(unit * v % m for v in r) for r in rows]
    if brute_span(regenerated, ncols, m) == span:
        assert howell(regenerated, ncols, m) == form


def test_howell_pivots_divide_modulus():
    form = howell([[2, 1, 0], [0, 4, 2], [3, 3, 3]], 3, 12)
    for row in form:
        lead = next(v for v in row if v)
        assert 12 % lead == 0


def test_rref_over_f2():
    dom = fp(2)
    form = rref([[1, 1, 0], [0, 1, 1], [1, 0, 1]], 3, dom)
    assert form == ((1, 0, 1), (0, 1, 1))
    assert rref_contains(form, (1, 1, 0), dom)
    assert not rref_contains(form, (0, 0, 1), dom)


def test_rref_over_q_is_canonical():
    dom = rat()
    a = rref([[2, 4], [1, 3]], 2, dom)
    b = rref([[1, 2], [0, 1], [3, 7]], 2, dom)
    assert a == b == ((1, 0), (0, 1))


def test_empty_and_zero_rows():
    assert howell([], 3, 6) == ()
    assert howell([[0, 0, 0]], 3, 6) == ()
    assert rref([[0, 0]], 2, rat()) == ()
