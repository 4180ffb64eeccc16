"""Randomised invariant checks shared by the ``selftest`` command."""

from __future__ import annotations

import random

from .automorphisms import (
    aut_apply,
    aut_compose,
    aut_inverse,
    identity_aut,
    random_aut,
)
from .braid_presentation import (
    SurfaceParams,
    build_presentation,
    expected_relator_count,
    free_reduce,
    parse_word,
    render,
)
from .exact_linalg import ExactMatrix, kernel_basis, rank, smith_normal_form, matmul
from .fox_homology import (
    boundary_matrices,
    coinvariants_dim,
    fox_identity_holds,
    homology_from_complex,
    integral_homology_trivial,
)
from .heisenberg import (
    HeisElem,
    HeisParams,
    bezout_center,
    heis_commutator,
    heis_mul,
    heis_pow,
    intersection,
    kernel_witnesses,
    random_elem,
    random_word,
    u_elem,
    v_elem,
    verify_presentation,
)
from .report import Report
from .representations import (
    affine_slice,
    check_representation,
    intertwiner,
    is_unitriangular,
    random_character,
    rho_L,
    rho_l_system,
    trivial_system,
    twist,
)


def run_selftest(seed: int = 0, samples: int = 50) -> list[Report]:
    rng = random.Random(seed)
    reports = []

    pres_report = Report("braid_presentation")
    for g in range(2, 6):
        for n in range(2, 7):
            S = SurfaceParams(g, n)
            pres = build_presentation(S)
            pres_report.add(f"count g={g} n={n}", len(pres.relators) == expected_relator_count(S))
            pres_report.add(f"phi g={g} n={n}", verify_presentation(S).passed)
    for _ in range(samples):
        w = random_word(HeisParams(2, 3), rng, 16)
        pres_report.add("reduce idempotent", free_reduce(free_reduce(w)) == free_reduce(w))
        pres_report.add("round trip", parse_word(render(w), w.params) == w)
    reports.append(pres_report)

    heis = Report("heisenberg_group")
    for g in range(2, 6):
        for n in range(2, 7):
            P = HeisParams(g, n)
            heis.add(f"u^(g+n-1)=v^(2g-2) g={g} n={n}", heis_pow(u_elem(P), g + n - 1) == heis_pow(v_elem(P), 2 * g - 2))
            s, t = bezout_center(P)
            heis.add(f"nu generated g={g} n={n}", heis_mul(heis_pow(u_elem(P), s), heis_pow(v_elem(P), t)) == HeisElem(P, 1))
    P = HeisParams(3, 2)
    for _ in range(samples):
        a, b, c = (random_elem(P, rng) for _ in range(3))
        heis.add("associative", (a * b) * c == a * (b * c))
        comm = heis_commutator(HeisElem(P, 0, a.x), HeisElem(P, 0, b.x))
        heis.add("commutator", comm == HeisElem(P, 2 * P.unit * intersection(a.x, b.x)))
    for g, n in ((2, 2), (3, 4)):
        P = HeisParams(g, n)
        words = [random_word(P, rng) for _ in range(samples // 5 or 1)]
        heis.add(f"kernel g={g} n={n}", kernel_witnesses(P, words).passed)
    reports.append(heis)

    aut = Report("heisenberg_automorphisms")
    P = HeisParams(2, 3)
    for _ in range(samples):
        t1, t2, t3 = (random_aut(P, rng) for _ in range(3))
        h1, h2 = random_elem(P, rng), random_elem(P, rng)
        aut.add("automorphism law", aut_apply(t1, h1 * h2) == aut_apply(t1, h1) * aut_apply(t1, h2))
        aut.add("crossed law", aut_apply(aut_compose(t2, t1), h1) == aut_apply(t2, aut_apply(t1, h1)))
        aut.add("associative", aut_compose(aut_compose(t3, t2), t1) == aut_compose(t3, aut_compose(t2, t1)))
        aut.add("inverse", aut_compose(t1, aut_inverse(t1)) == identity_aut(P) == aut_compose(aut_inverse(t1), t1))
        aut.add("center fixed", aut_apply(t1, HeisElem(P, h1.m)) == HeisElem(P, h1.m))
    reports.append(aut)

    reps = Report("representations")
    for g, n in ((2, 2), (3, 3)):
        P = HeisParams(g, n)
        reps.add(f"rho_L hom g={g} n={n}", check_representation(rho_l_system(P), samples, rng=rng).passed)
        for _ in range(samples):
            h = random_elem(P, rng)
            m = rho_L(h)
            reps.add("unitriangular", is_unitriangular(m) and m.det() == 1)
            reps.add("slice", affine_slice(h) == (h.k, *h.x, 1))
            t = random_aut(P, rng)
            T = intertwiner(t)
            reps.add("intertwiner", T @ m @ T.inverse() == rho_L(aut_apply(t, h)))
        t1, t2 = random_aut(P, rng), random_aut(P, rng)
        base = rho_l_system(P)
        lhs, rhs = twist(twist(base, t1), t2), twist(base, aut_compose(t1, t2))
        h = random_elem(P, rng)
        reps.add("twist composition", lhs(h) == rhs(h))
    reports.append(reps)

    fox = Report("fox_homology")
    for g, n in ((2, 2), (2, 3)):
        P = HeisParams(g, n)
        pres = build_presentation(P.surface)
        fox.add(f"fox identity g={g} n={n}", all(fox_identity_holds(r.word, pres.generators) for r in pres.relators))
        for rep in (trivial_system(P), rho_l_system(P), random_character(P, rng)):
            cx = boundary_matrices(pres, rep)
            ok = cx.is_complex()
            fox.add(f"d1 d2 = 0 {rep.label} g={g} n={n}", ok)
            if ok:
                rep_h = homology_from_complex(cx, rep.label)
                fox.add(f"H0 = coinvariants {rep.label}", rep_h.h0 == coinvariants_dim(rep))
                fox.add(f"euler {rep.label}", rep_h.euler_ok)
                if rep.label == "trivial-q":
                    fox.add("trivial H1 = 2g", rep_h.h1 == 2 * g)
        integral = integral_homology_trivial(P).integral["h1"]
        fox.add(f"integral H1 g={g} n={n}", integral == {"free_rank": 2 * g, "torsion": [2, 4 * g - 4]})
    reports.append(fox)

    lin = Report("exact_linalg")
    for _ in range(samples):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        K = kernel_basis(ExactMatrix(A))
        lin.add("rank-nullity", rank(A) + K.cols == cols and (ExactMatrix(A) @ K).is_zero())
        lin.add("rank transpose", rank(A) == rank([list(c) for c in zip(*A)]))
        U, D, W = smith_normal_form(A)
        lin.add("snf", matmul(matmul(U, A), W) == D)
    reports.append(lin)
    return reports
