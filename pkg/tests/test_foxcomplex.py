import random

import pytest

from relcert.errors import ParameterError
from relcert.freewords import (
    EMPTY_WORD,
    FreeWord,
    PresentationParams,
    agen,
    bgen,
    commutator_relator,
    power_relator,
    random_word,
)
from relcert.foxcomplex import (
    RingMatrix,
    RingVector,
    apply,
    c1_labels,
    c2_labels,
    column_index,
    compose,
    d1_contract,
    d1_vector,
    d2_matrix,
    fox_derivative,
    fundamental_identity_holds,
    starred_fox_row,
)
from relcert.groupring import (
    free_term,
    group_term,
    norm_element,
    one,
    ring_mul,
    torsion_term,
    zero,
)
from relcert.normalform import project

P23 = PresentationParams((2, 3))
P235 = PresentationParams((2, 3, 5))


def test_fox_axioms():
    a, b = agen(1), bgen(1)
    assert fox_derivative(FreeWord(((a, 1),)), a, P235) == one()
    assert fox_derivative(FreeWord(((a, -1),)), a, P235) == torsion_term(1, -1, P235, -1)
    assert fox_derivative(FreeWord(((b, 1),)), a, P235).is_zero
    assert fox_derivative(EMPTY_WORD, a, P235).is_zero


def test_fox_of_relators():
    # d[a1,b1]/da1 = 1 - b1 once a1 b1 a1^-1 collapses to b1 in the quotient
    assert fox_derivative(commutator_relator(1), agen(1), P235) == one() - free_term(
        1, 1, P235
    )
    assert fox_derivative(commutator_relator(1), bgen(1), P235) == torsion_term(
        1, 1, P235
    ) - one()
    # d(a1^r)/da1 telescopes to the norm element
    assert fox_derivative(power_relator(1, P235), agen(1), P235) == norm_element(1, P235)
    assert fox_derivative(power_relator(1, P235), bgen(1), P235).is_zero


def test_fox_product_rule_random():
    rng = random.Random(41)
    for _ in range(300):
        u = random_word(rng, 3, max_len=8)
        v = random_word(rng, 3, max_len=8)
        x = rng.choice([agen, bgen])(rng.randint(1, 3))
        left = fox_derivative(u * v, x, P235)
        right = fox_derivative(u, x, P235) + ring_mul(
            group_term(project(u, P235)), fox_derivative(v, x, P235), P235
        )
        assert left == right


def test_d2_entries():
    d2 = d2_matrix(P23)
    assert d2.nrows == 4 and d2.ncols == 4
    # commutator row 1
    assert d2[0][0] == one() - free_term(1, -1, P23)
    assert d2[0][1] == torsion_term(1, -1, P23) - one()
    assert d2[0][2].is_zero and d2[0][3].is_zero
    # power row 1 has only the norm element, in the a1 column
    assert d2[2][0] == norm_element(1, P23)
    assert d2[2][1].is_zero and d2[2][2].is_zero and d2[2][3].is_zero
    # factor-2 rows have no factor-1 support
    assert d2[1][0].is_zero and d2[1][1].is_zero


def test_d1_entries():
    d1 = d1_vector(P23)
    assert d1[0] == torsion_term(1, -1, P23) - one()
    assert d1[1] == free_term(1, -1, P23) - one()
    assert d1[3] == free_term(2, -1, P23) - one()


def test_chain_condition():
    for p in (P23, P235, PresentationParams((7,))):
        d2 = d2_matrix(p)
        for row in d2.rows:
            assert d1_contract(row, p).is_zero


def test_fundamental_identity_random():
    rng = random.Random(43)
    for _ in range(300):
        w = random_word(rng, 3)
        assert fundamental_identity_holds(w, P235)


def test_fundamental_identity_on_relators():
    # for relators the right-hand side is zero
    for i in range(1, 4):
        row = starred_fox_row(commutator_relator(i), P235)
        assert d1_contract(row, P235).is_zero
        row = starred_fox_row(power_relator(i, P235), P235)
        assert d1_contract(row, P235).is_zero


def test_apply():
    d2 = d2_matrix(P23)
    unit = RingVector.unit(4, 0)
    assert apply(d2, unit, P23) == d2[0]
    assert apply(d2, RingVector.zeros(4), P23).is_zero
    with pytest.raises(ParameterError):
        apply(d2, RingVector.zeros(3), P23)


def test_apply_is_right_linear():
    from relcert.groupring import from_terms

    rng = random.Random(47)
    d2 = d2_matrix(P23)

    def rand_ring():
        pairs = []
        for _ in range(rng.randint(0, 3)):
            g = project(random_word(rng, 2, max_len=4), P23)
            pairs.append((g, rng.randint(-3, 3)))
        return from_terms(pairs)

    for _ in range(40):
        u = RingVector(tuple(rand_ring() for _ in range(4)))
        v = RingVector(tuple(rand_ring() for _ in range(4)))
        lam = rand_ring()
        assert apply(d2, u + v, P23) == apply(d2, u, P23) + apply(d2, v, P23)
        assert apply(d2, u.act(lam, P23), P23) == apply(d2, u, P23).act(lam, P23)


def test_compose_consistency_random():
    # apply(compose(A, B), v) = apply(B, apply(A, v))
    rng = random.Random(53)
    from relcert.groupring import from_terms

    def rand_ring():
        pairs = []
        for _ in range(rng.randint(0, 3)):
            g = project(random_word(rng, 2, max_len=4), P23)
            pairs.append((g, rng.randint(-3, 3)))
        return from_terms(pairs)

    def rand_matrix(rows, cols):
        return RingMatrix(
            tuple(
                RingVector(tuple(rand_ring() for _ in range(cols)))
                for _ in range(rows)
            )
        )

    for _ in range(40):
        a = rand_matrix(3, 3)
        b = rand_matrix(3, 3)
        v = RingVector(tuple(rand_ring() for _ in range(3)))
        assert apply(compose(a, b, P23), v, P23) == apply(b, apply(a, v, P23), P23)
        # identity is neutral on both sides
        ident = RingMatrix.identity(3)
        assert compose(a, ident, P23) == a
        assert compose(ident, a, P23) == a


def test_labels():
    assert c1_labels(2) == ["a1", "b1", "a2", "b2"]
    assert c2_labels(2) == ["D1", "D2", "E1", "E2"]
    assert column_index(agen(1)) == 0
    assert column_index(bgen(1)) == 1
    assert column_index(agen(2)) == 2
    assert column_index(bgen(2)) == 3
