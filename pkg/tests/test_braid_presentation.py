import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wfbraid.braid_presentation import (
    F,
    BraidWord,
    IndexOutOfBounds,
    SurfaceParams,
    WordSyntaxError,
    alpha,
    beta,
    build_presentation,
    expected_relator_count,
    free_reduce,
    parse_presentation_text,
    parse_word,
    render,
    sigma,
    word,
)

P22 = SurfaceParams(2, 2)
P23 = SurfaceParams(2, 3)


def test_params_rejected():
    for g, n in ((1, 2), (2, 1), (0, 5)):
        with pytest.raises(ValueError):
            SurfaceParams(g, n)


def test_parse_examples():
    assert len(parse_word("", P22)) == 0
    assert len(parse_word("a1 a1'", P22)) == 0
    w = parse_word("s1 b1 s1 a1 s1", P22)
    assert w.letters == ((sigma(1), 1), (beta(1), 1), (sigma(1), 1), (alpha(1), 1), (sigma(1), 1))
    assert parse_word("s1 b1' f'", P22).letters == ((sigma(1), 1), (beta(1), -1), (F, -1))
    assert parse_word("F", P22) == parse_word("f", P22)


def test_parse_errors():
    with pytest.raises(WordSyntaxError) as err:
        parse_word("s1 x2", P22)
    assert err.value.position == 3
    with pytest.raises(WordSyntaxError):
        parse_word("s1b1", P22)
    with pytest.raises(IndexOutOfBounds) as err:
        parse_word("a1 s2", P22)
    assert err.value.token == "s2"
    with pytest.raises(IndexOutOfBounds):
        parse_word("b3", P22)


def test_free_reduce_examples():
    assert len(free_reduce(word(P22, alpha(1), (alpha(1), -1)))) == 0
    ss = word(P22, sigma(1), sigma(1))
    assert free_reduce(ss) == ss and len(ss) == 2
    fa = word(P22, F, alpha(1), (F, -1))
    assert len(free_reduce(fa)) == 3


def test_free_reduce_nested_cancellation():
    w = parse_word("a1 b1 s1 s1' b1' a1' f", P22)
    assert render(w) == "f"


words = st.lists(
    st.tuples(st.sampled_from([alpha(1), alpha(2), beta(1), beta(2), sigma(1), sigma(2), F]), st.sampled_from([1, -1])),
    max_size=30,
)


@given(words)
@settings(max_examples=300)
def test_free_reduce_properties(letters):
    w = BraidWord(P23, tuple(letters))
    assert len(w) <= len(letters)
    assert free_reduce(free_reduce(w)) == free_reduce(w)
    for (a, e), (b, f) in zip(w.letters, w.letters[1:]):
        assert not (a == b and e == -f)
    assert parse_word(render(w), P23) == w
    assert len(w * w.inverse()) == 0


def test_family_counts_g2_n2():
    pres = build_presentation(P22)
    assert len(pres.relators) == 16
    assert pres.family_counts() == {
        "FCENTRAL": 5, "BR1": 0, "BR2": 0, "CR1": 0, "CR2": 4, "CR3": 4, "SCR": 2, "FR": 1,
    }


def test_family_counts_g2_n3():
    pres = build_presentation(P23)
    counts = pres.family_counts()
    assert counts["BR2"] == 1 and counts["CR1"] == 4
    br2 = [r.word for r in pres.relators if r.family == "BR2"]
    assert render(br2[0]) == "s1 s2 s1 s2' s1' s2'"


def test_fr_word_g2_n2():
    pres = build_presentation(P22)
    fr = [r for r in pres.relators if r.family == "FR"]
    assert render(fr[0].word) == "b2 a2' b2' a2 b1 a1' b1' a1 s1 s1 f' f' f' f'"


def test_scr_and_commutator_words():
    pres = build_presentation(P22)
    scr = [render(r.word) for r in pres.relators if r.family == "SCR"]
    assert scr[0] == "s1 b1 s1 a1 s1 b1' s1' a1'"
    cr2 = [render(r.word) for r in pres.relators if r.family == "CR2"]
    assert cr2[0] == "a1 s1 a1 s1 a1' s1' a1' s1'"
    cr3 = [render(r.word) for r in pres.relators if r.family == "CR3"]
    assert cr3[0] == "a1 s1' a2 s1 a1' s1' a2' s1"


def _far_pairs(n):
    # independent count of BR1 pairs: C(n-1, 2) minus adjacent pairs
    m = n - 1
    return m * (m - 1) // 2 - max(m - 1, 0)


@pytest.mark.parametrize("g", range(2, 6))
@pytest.mark.parametrize("n", range(2, 7))
def test_relator_count_formula(g, n):
    params = SurfaceParams(g, n)
    pres = build_presentation(params)
    counts = pres.family_counts()
    assert len(pres.relators) == expected_relator_count(params)
    assert counts["BR1"] == _far_pairs(n)
    assert counts["FCENTRAL"] == 2 * g + n - 1
    assert counts["CR3"] == 2 * g * (g - 1)
    for rel in pres.relators:
        assert len(rel.word) > 0
        assert free_reduce(rel.word) == rel.word


def test_export_formats():
    pres = build_presentation(P23)
    text = pres.to_text()
    assert text.splitlines()[0] == "wfbraid g=2 n=3"
    assert len(text.splitlines()) == 1 + len(pres.relators)
    back = parse_presentation_text(text)
    assert back == pres
    data = json.loads(pres.dumps())
    assert data["params"] == {"g": 2, "n": 3}
    assert data["generators"] == ["a1", "a2", "b1", "b2", "s1", "s2", "f"]
    assert data["relators"][-1]["family"] == "FR"
