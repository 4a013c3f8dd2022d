import numpy as np
from hypothesis import given, strategies as st

from ntrunc import exactla as la
from ntrunc.complexes import (
    ChainMap, Complex, GradedMap, betti, graded_differential, identity_map, interval, point,
    random_chain_map, random_complex, zero_map,
)
from ntrunc.homcomplex import (
    MapSpace, MapSystem, composition_matrix, hom_cohomology_dims, hom_complex,
    hom_differential_matrix, homotopy_equivalent, is_nullhomotopic, post_composition_on_classes,
    quasi_inverse, retract, solve_homotopy,
)

seeds = st.integers(0, 2**32 - 1)
primes = st.sampled_from([2, 3, 5])


def rand(seed, p, window=(-2, 1)):
    rng = np.random.default_rng(seed)
    X = random_complex(0, 3, window, p, rng=rng)
    Y = random_complex(0, 3, window, p, rng=rng)
    return rng, X, Y


def test_hom_examples():
    H = hom_complex(Complex(5), point(5))
    assert H.as_complex.is_zero()
    assert hom_cohomology_dims(point(5), point(5), range(-2, 3)) == {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}
    assert hom_complex(point(5, -1), point(5, 0)).as_complex.dims == {1: 1}
    assert hom_cohomology_dims(point(5, 0), point(5, -1), [-1, 0]) == {-1: 1, 0: 0}
    X = interval(5, -1, [[1]])
    assert not any(hom_cohomology_dims(X, X, range(-2, 3)).values())


def test_solve_homotopy_examples(k0, contractible):
    X = contractible
    assert solve_homotopy(identity_map(X), identity_map(X)).is_zero()
    h = solve_homotopy(identity_map(X), zero_map(X, X))
    assert h is not None and graded_differential(h).equals(-identity_map(X))
    assert solve_homotopy(identity_map(k0), zero_map(k0, k0)) is None
    assert is_nullhomotopic(identity_map(X)) and not is_nullhomotopic(identity_map(k0))


def test_quasi_inverse_examples(k0, contractible):
    X = interval(5, -2, [[1, 2]])
    g, hs, ht = quasi_inverse(identity_map(X))
    assert g.equals(identity_map(X)) and hs.is_zero() and ht.is_zero()
    q = quasi_inverse(ChainMap(contractible, Complex(5)))
    assert q is not None and q.g.is_zero()
    assert graded_differential(q.h_s).equals(identity_map(contractible))
    assert quasi_inverse(zero_map(k0, k0)) is None


def test_map_space_round_trip(rng):
    X = random_complex(1, 3, (-1, 1), 5)
    Y = random_complex(2, 3, (-1, 1), 5)
    sp = MapSpace(X, Y, -1)
    v = la.random_matrix(rng, sp.size, 1, 5)[:, 0]
    assert np.array_equal(sp.encode(sp.decode(v)), v)


def test_map_system_reports_inconsistency(k0):
    S = MapSystem(5)
    S.unknown("h", k0, k0, -1)
    S.equation(k0, k0, 0, [MapSystem.term("h", d=True)], identity_map(k0))
    assert S.solve() is None


@given(seeds, primes, st.integers(-2, 2))
def test_differential_matrix_matches_D(seed, p, k):
    rng, X, Y = rand(seed, p)
    sp = MapSpace(X, Y, k)
    v = la.random_matrix(rng, sp.size, 1, p)[:, 0]
    phi = sp.decode(v)
    M = hom_differential_matrix(X, Y, k)
    want = MapSpace(X, Y, k + 1).encode(graded_differential(phi))
    assert np.array_equal(la.matmul(M, v.reshape(-1, 1), p)[:, 0], want)
    assert not la.matmul(hom_differential_matrix(X, Y, k + 1), M, p).any()


@given(seeds, primes)
def test_composition_matrix(seed, p):
    rng, X, Y = rand(seed, p)
    g = random_chain_map(Y, X, rng=rng)
    sp = MapSpace(X, Y, -1)
    v = la.random_matrix(rng, sp.size, 1, p)[:, 0]
    C, out = composition_matrix(sp, left=g, right=g)
    got = out.decode(la.matmul(C, v.reshape(-1, 1), p)[:, 0])
    assert got.equals(g @ sp.decode(v) @ g)


@given(seeds, primes)
def test_hom_euler_characteristic(seed, p):
    _, X, Y = rand(seed, p)
    degs = range(-5, 6)
    dims = hom_cohomology_dims(X, Y, degs)
    bx, by = betti(X, range(-3, 3)), betti(Y, range(-3, 3))
    # over a field H^k(Hom(X, Y)) = prod_i Hom(H^i X, H^{i+k} Y)
    for k in degs:
        assert dims[k] == sum(bx[i] * by.get(i + k, 0) for i in bx)


@given(seeds, primes)
def test_retract_is_deformation(seed, p):
    _, X, _ = rand(seed, p)
    r = retract(X)
    assert (r.proj @ r.incl).equals(identity_map(r.H))
    assert graded_differential(r.h).equals(identity_map(X) - r.incl @ r.proj)
    assert r.H.dims == {i: b for i, b in betti(X).items() if b}


@given(seeds, primes)
def test_quasi_inverse_certificates(seed, p):
    rng, X, Y = rand(seed, p)
    f = random_chain_map(X, Y, rng=rng)
    q = quasi_inverse(f)
    from ntrunc.complexes import is_quasi_isomorphism
    assert (q is not None) == is_quasi_isomorphism(f)
    if q is not None:
        assert graded_differential(q.h_s).equals(identity_map(X) - q.g @ f)
        assert graded_differential(q.h_t).equals(identity_map(Y) - f @ q.g)
    assert homotopy_equivalent(X, X)


@given(seeds, primes)
def test_homotopy_solutions_verify(seed, p):
    rng, X, Y = rand(seed, p)
    f = random_chain_map(X, Y, rng=rng)
    sp = MapSpace(X, Y, -1)
    h0 = sp.decode(la.random_matrix(rng, sp.size, 1, p)[:, 0])
    g = f + graded_differential(h0)
    h = solve_homotopy(f, g)
    assert h is not None and graded_differential(h).equals(g - f)


@given(seeds, primes)
def test_post_composition_is_functorial(seed, p):
    rng, X, Y = rand(seed, p)
    T = random_complex(0, 2, (-1, 0), p, rng=rng)
    f = random_chain_map(X, Y, rng=rng)
    g = random_chain_map(Y, X, rng=rng)
    a = post_composition_on_classes(T, g @ f, 0)
    b = la.matmul(post_composition_on_classes(T, g, 0), post_composition_on_classes(T, f, 0), p)
    assert np.array_equal(a, b)
