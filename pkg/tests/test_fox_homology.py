import random

import pytest
from hypothesis import given, settings, strategies as st

from wfbraid.braid_presentation import (
    BraidWord,
    F,
    SurfaceParams,
    alpha,
    beta,
    build_presentation,
    generators,
    parse_word,
    sigma,
    word,
)
from wfbraid.exact_linalg import ExactMatrix, kernel_basis, rank, smith_normal_form
from wfbraid.fox_homology import (
    FreeGroupRingElem,
    abelianization_matrix,
    boundary_matrices,
    coinvariants_dim,
    fox_derivative,
    fox_identity_holds,
    homology_ranks,
    integral_homology_trivial,
    trivial_q_homology,
)
from wfbraid.heisenberg import HeisParams, heis_inverse, u_elem
from wfbraid.representations import (
    CoefficientSystem,
    generator_names,
    random_character,
    rho_L,
    rho_l_system,
    trivial_system,
)

S22 = SurfaceParams(2, 2)
GRID = [(g, n) for g in (2, 3) for n in (2, 3)]


def fg(*items, params=S22):
    return FreeGroupRingElem.of(word(params, *items))


def test_fox_examples():
    assert fox_derivative(word(S22, alpha(1), beta(1)), alpha(1)) == FreeGroupRingElem.one(S22)
    assert fox_derivative(word(S22, (sigma(1), -1)), sigma(1)) == -fg((sigma(1), -1))
    assert fox_derivative(word(S22, sigma(1), sigma(1)), sigma(1)) == FreeGroupRingElem.one(S22) + fg(sigma(1))
    assert fox_derivative(word(S22, beta(2)), alpha(1)).is_zero()


def test_fox_rejects_foreign_generator():
    with pytest.raises(ValueError):
        fox_derivative(word(S22, sigma(1)), sigma(2))
    with pytest.raises(ValueError):
        fox_derivative(word(S22, sigma(1)), alpha(1), generators=[sigma(1)])


def test_fox_augmentation_is_exponent_sum():
    w = parse_word("s1 a1 s1' f a1 a1 b2'", S22)
    assert fox_derivative(w, alpha(1)).augmentation() == 3
    assert fox_derivative(w, sigma(1)).augmentation() == 0
    assert fox_derivative(w, F).augmentation() == 1


_letters = st.lists(
    st.tuples(st.sampled_from(generators(S22)), st.sampled_from([1, -1])), max_size=14
)


@settings(max_examples=150, deadline=None)
@given(_letters, _letters)
def test_fox_identity_and_product_rule(l1, l2):
    u, v = BraidWord(S22, tuple(l1)), BraidWord(S22, tuple(l2))
    gens = generators(S22)
    assert fox_identity_holds(u, gens)
    for x in gens:
        lhs = fox_derivative(u * v, x)
        rhs = fox_derivative(u, x) + FreeGroupRingElem.of(u) * fox_derivative(v, x)
        assert lhs == rhs


@pytest.mark.parametrize("g,n", GRID)
def test_fox_identity_on_relators(g, n):
    pres = build_presentation(SurfaceParams(g, n))
    assert all(fox_identity_holds(r.word, pres.generators) for r in pres.relators)


def test_sizes_rho_l_22():
    P = HeisParams(2, 2)
    cx = boundary_matrices(build_presentation(S22), rho_l_system(P))
    assert cx.d2.shape == (36, 96)
    assert cx.d1.shape == (6, 36)
    assert cx.is_complex() and cx.failing_blocks() == []
    K = kernel_basis(cx.d1)
    assert K.cols == 36 - rank(cx.d1) and (cx.d1 @ K).is_zero()


def test_trivial_coefficients_give_exponent_matrix():
    P = HeisParams(2, 2)
    pres = build_presentation(S22)
    cx = boundary_matrices(pres, trivial_system(P))
    assert cx.d1.is_zero()
    assert cx.d2 == ExactMatrix(abelianization_matrix(pres)).T


def test_mutation_is_located():
    P = HeisParams(2, 2)
    pres = build_presentation(S22)
    idx = next(i for i, r in enumerate(pres.relators) if r.family == "SCR")
    broken = pres.replace_relator(idx, word(S22, alpha(1), beta(1)))
    cx = boundary_matrices(broken, rho_l_system(P))
    assert not cx.is_complex()
    assert [b["relator"] for b in cx.failing_blocks()] == [idx]
    with pytest.raises(ValueError):
        homology_ranks(P, rho_l_system(P), presentation=broken)


def test_boundary_matrices_spot_checks_representation():
    P = HeisParams(2, 2)
    names = generator_names(P)
    imgs = {nm: ExactMatrix([[1]]) for nm in names}
    imgs["a1"] = ExactMatrix([[2]])
    imgs["b1"] = ExactMatrix([[3]])
    imgs["u"] = ExactMatrix([[5]])
    bad = CoefficientSystem(P, imgs)
    with pytest.raises(ValueError):
        boundary_matrices(build_presentation(S22), bad, check=10)
    with pytest.raises(ValueError):
        boundary_matrices(build_presentation(SurfaceParams(2, 3)), rho_l_system(P))


def test_coinvariants_examples():
    P = HeisParams(2, 2)
    assert coinvariants_dim(trivial_system(P)) == 1
    assert coinvariants_dim(rho_l_system(P)) == 1
    eye = ExactMatrix.identity(6)
    frozen = CoefficientSystem(P, {nm: eye for nm in generator_names(P)})
    assert coinvariants_dim(frozen) == 6


def test_homology_examples_22():
    P = HeisParams(2, 2)
    triv = trivial_q_homology(P)
    assert (triv.h0, triv.h1) == (1, 4)
    rl = homology_ranks(P, rho_l_system(P))
    assert rl.h0 == 1
    assert rl.euler_rhs == 66 and rl.euler_ok
    cx = boundary_matrices(build_presentation(S22), rho_l_system(P))
    nullity_d1 = 36 - rank(cx.d1)
    assert rl.h1 == nullity_d1 - rank(cx.d2)
    assert rl.h2_presentation_complex == 96 - rank(cx.d2)
    assert "not claimed" in rl.to_json()["notes"][0]


@pytest.mark.parametrize("g,n", GRID)
def test_complex_and_euler_on_grid(g, n):
    P = HeisParams(g, n)
    pres = build_presentation(P.surface)
    rng = random.Random(100 * g + n)
    for rep in [trivial_system(P), rho_l_system(P)] + [random_character(P, rng) for _ in range(3)]:
        cx = boundary_matrices(pres, rep)
        assert cx.is_complex(), rep.label
        rep_h = homology_ranks(P, rep, presentation=pres)
        assert rep_h.h0 == coinvariants_dim(rep)
        assert rep_h.euler_ok


@pytest.mark.parametrize("g,n", [(2, 2), (2, 3), (3, 2), (3, 4)])
def test_integral_homology(g, n):
    rep = integral_homology_trivial(HeisParams(g, n))
    assert rep.integral["h1"] == {"free_rank": 2 * g, "torsion": [2, 4 * g - 4]}
    assert rep.integral["h0"] == {"free_rank": 1, "torsion": []}
    assert rep.euler_ok
    assert rep.to_json()["h1"]["torsion"] == [2, 4 * g - 4]


@pytest.mark.parametrize("g,n", [(2, 2), (2, 3), (3, 2)])
def test_hand_oracle_snf(g, n):
    # abelianised SCR and FR relations in the (sigma, F) coordinates
    hand = [[2, 0], [2 * (n - 1), 4 - 4 * g]]
    _, D, _ = smith_normal_form(hand)
    assert [D[0][0], D[1][1]] == [2, 4 * g - 4]
    assert integral_homology_trivial(HeisParams(g, n)).integral["h1"]["torsion"] == [D[0][0], D[1][1]]


def test_progress_callback():
    P = HeisParams(2, 2)
    seen = []
    homology_ranks(P, trivial_system(P), progress=lambda i, total: seen.append((i, total)))
    assert seen == [(i, 16) for i in range(1, 17)]


def test_rho_l_matrices_are_rho_l():
    # the d1 block for sigma_1 is rho_L(u^-1) - I
    P = HeisParams(2, 2)
    cx = boundary_matrices(build_presentation(S22), rho_l_system(P))
    idx = list(cx.generators).index(sigma(1))
    block = ExactMatrix([row[6 * idx : 6 * idx + 6] for row in cx.d1.entries])
    assert block == rho_L(heis_inverse(u_elem(P))) - ExactMatrix.identity(6)
