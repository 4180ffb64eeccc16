import random
from fractions import Fraction

import pytest

from wfbraid.automorphisms import (
    aut_apply,
    aut_compose,
    identity_aut,
    identity_matrix,
    make_aut,
    random_aut,
    standard_form,
)
from wfbraid.exact_linalg import ExactMatrix
from wfbraid.heisenberg import (
    HeisElem,
    HeisParams,
    a_tilde,
    b_tilde,
    heis_inverse,
    identity,
    random_elem,
    u_elem,
    v_elem,
)
from wfbraid.representations import (
    CoefficientSystem,
    affine_slice,
    character_system,
    check_representation,
    element_from_slice,
    generator_elements,
    intertwiner,
    is_unitriangular,
    random_character,
    rho_L,
    rho_l_system,
    trivial_system,
    twist,
)

P22 = HeisParams(2, 2)


def apply_affine(h0: HeisElem, k, p, q):
    """Oracle: left multiplication written out coordinate-wise."""
    p0, q0 = h0.p, h0.q
    k2 = k + h0.k + sum(a * b for a, b in zip(p0, q)) - sum(a * b for a, b in zip(q0, p))
    return (k2, *[a + b for a, b in zip(p, p0)], *[a + b for a, b in zip(q, q0)])


def test_rho_identity_and_u():
    assert rho_L(identity(P22)) == ExactMatrix.identity(6)
    m = rho_L(u_elem(P22))
    expected = [[int(i == j) for j in range(6)] for i in range(6)]
    expected[0][5] = 1
    assert m == ExactMatrix(expected)
    assert m.apply([7, 1, 2, 3, 4, 5]) == (12, 1, 2, 3, 4, 5)


def test_rho_product_example():
    a1, b1 = a_tilde(P22, 1), b_tilde(P22, 1)
    assert rho_L(a1) @ rho_L(b1) == rho_L(HeisElem(P22, 2, (1, 0, 1, 0)))


def test_linearisation_of_affine_action():
    rng = random.Random(1)
    P = HeisParams(3, 4)
    for _ in range(200):
        h0 = random_elem(P, rng)
        k = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        p = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        q = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        got = rho_L(h0).apply([k, *p, *q, 1])
        assert got == (*apply_affine(h0, k, p, q), 1)


def test_affine_slice_examples():
    assert affine_slice(identity(P22)) == (0, 0, 0, 0, 0, 1)
    assert affine_slice(a_tilde(P22, 1)) == (0, 1, 0, 0, 0, 1)
    assert affine_slice(v_elem(P22)) == (Fraction(3, 2), 0, 0, 0, 0, 1)


def test_faithfulness_witness():
    rng = random.Random(2)
    P = HeisParams(2, 5)
    seen = {}
    for _ in range(500):
        h = random_elem(P, rng, 5, 1)
        s = affine_slice(h)
        assert element_from_slice(P, s) == h
        assert seen.setdefault(s, h) == h


@pytest.mark.parametrize("g,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_rho_homomorphism_inverse_unitriangular(g, n):
    P = HeisParams(g, n)
    rng = random.Random(g * n)
    for _ in range(200):
        h1, h2 = random_elem(P, rng), random_elem(P, rng)
        m1 = rho_L(h1)
        assert rho_L(h1 * h2) == m1 @ rho_L(h2)
        assert rho_L(heis_inverse(h1)) == m1.inverse()
        assert is_unitriangular(m1) and m1.det() == 1


def test_normal_form_evaluation_matches_rho_L():
    for g, n in ((2, 2), (2, 3), (3, 3)):
        P = HeisParams(g, n)
        images = {name: rho_L(h) for name, h in generator_elements(P).items()}
        generic = CoefficientSystem(P, images)
        rng = random.Random(g + n)
        for _ in range(50):
            h = random_elem(P, rng, 10, 3)
            assert generic(h) == rho_L(h)


def test_check_representation_examples():
    assert check_representation(rho_l_system(P22), 1000, seed=3).passed
    triv = CoefficientSystem(P22, {n: ExactMatrix([[1]]) for n in ("u", "v", "a1", "a2", "b1", "b2")})
    assert check_representation(triv, 50).passed

    def corrupted(h):
        m = [list(r) for r in rho_L(h).entries]
        m[1][5] += 1
        return ExactMatrix(m)

    bad = CoefficientSystem(P22, rho_l_system(P22).images, evaluator=corrupted)
    report = check_representation(bad, 20, seed=4)
    assert not report.passed
    witnesses = [c.detail for c in report.failures if c.name == "homomorphism"]
    assert witnesses and {"h1", "h2"} <= set(witnesses[0])


def test_construction_time_spot_check_rejects_non_rep():
    imgs = {name: ExactMatrix([[1]]) for name in ("u", "v", "a1", "a2", "b1", "b2")}
    imgs["a1"] = ExactMatrix([[2]])
    imgs["u"] = ExactMatrix([[3]])  # not compatible with u^3 = v^2 and commutators
    with pytest.raises(ValueError):
        CoefficientSystem(P22, imgs, check=10)


def test_characters_are_representations():
    rng = random.Random(5)
    for g, n in ((2, 2), (3, 3), (2, 5)):
        P = HeisParams(g, n)
        for _ in range(5):
            assert check_representation(random_character(P, rng), 100, rng=rng).passed
    with pytest.raises(ValueError):
        character_system(P22, [1, 2, 3, 4], center_sign=2)


def test_twist_examples():
    base = rho_l_system(P22)
    tw = twist(base, identity_aut(P22))
    rng = random.Random(6)
    for _ in range(20):
        h = random_elem(P22, rng)
        assert tw(h) == base(h)
    tc = make_aut(identity_matrix(4), [1, 2, 3, 4], P22)
    assert twist(base, tc)(u_elem(P22)) == rho_L(u_elem(P22))
    tJ = make_aut(standard_form(2), [0] * 4, P22)
    assert twist(base, tJ)(a_tilde(P22, 1)) == rho_L(HeisElem(P22, 0, (0, 0, -1, 0)))


def test_twist_composition_and_center():
    rng = random.Random(7)
    P = HeisParams(3, 2)
    base = rho_l_system(P)
    for _ in range(20):
        t1, t2 = random_aut(P, rng), random_aut(P, rng)
        lhs = twist(twist(base, t1), t2)
        rhs = twist(base, aut_compose(t1, t2))
        h = random_elem(P, rng)
        assert lhs(h) == rhs(h)
        z = HeisElem(P, h.m)
        assert twist(base, t1)(z) == base(z)


def test_intertwiner_examples():
    assert intertwiner(identity_aut(P22)) == ExactMatrix.identity(6)
    c = [1, 0, 2, -1]
    t = make_aut(identity_matrix(4), c, P22)
    T = intertwiner(t)
    a1 = a_tilde(P22, 1)
    assert T @ rho_L(a1) @ T.inverse() == rho_L(aut_apply(t, a1))
    assert T.apply([0, 1, 0, 0, 0, 0])[0] == P22.nu
    tJ = make_aut(standard_form(2), [0] * 4, P22)
    TJ = intertwiner(tJ)
    rng = random.Random(8)
    for _ in range(20):
        h = random_elem(P22, rng)
        assert TJ @ rho_L(h) @ TJ.inverse() == rho_L(aut_apply(tJ, h))


@pytest.mark.parametrize("g,n", [(2, 2), (3, 3)])
def test_intertwiner_property_random(g, n):
    P = HeisParams(g, n)
    rng = random.Random(9)
    for _ in range(100):
        t, h = random_aut(P, rng), random_elem(P, rng)
        T = intertwiner(t)
        assert T @ rho_L(h) @ T.inverse() == rho_L(aut_apply(t, h))


def test_file_round_trip():
    rep = random_character(P22, random.Random(10))
    again = CoefficientSystem.from_json(P22, rep.to_json())
    rng = random.Random(11)
    for _ in range(10):
        h = random_elem(P22, rng)
        assert again(h) == rep(h)
    assert trivial_system(P22, 3)(u_elem(P22)) == ExactMatrix.identity(3)
