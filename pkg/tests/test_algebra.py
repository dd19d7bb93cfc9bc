import json
import random
from fractions import Fraction

import pytest

from conftest import random_element
from ut2gpi import (
    E11,
    E12,
    E22,
    IDENT,
    SANDWICH,
    UTElement,
    ZERO,
    action_from_dict,
    action_to_dict,
    builtin_action,
    check_axioms,
    codimension,
    evaluate,
    is_trivial_linear,
    lr_span_dim,
    operator_of,
    parse_poly,
)
from ut2gpi.algebra import LinearOperator


def test_matrix_unit_products():
    assert E11 * E12 == E12
    assert E12 * E12 == ZERO
    assert E12 * E22 == E12
    assert E22 * E12 == ZERO
    assert E22 * E22 == E22
    assert E11 * E22 == ZERO


def test_identity_element():
    rng = random.Random(11)
    for _ in range(20):
        x = random_element(rng)
        assert IDENT * x == x
        assert x * IDENT == x


def test_sandwich_coordinates_roundtrip():
    rng = random.Random(5)
    for _ in range(30):
        x = random_element(rng)
        assert UTElement.from_sandwich_coords(*x.sandwich_coords()) == x
    assert E11.sandwich_coords() == (1, -1, 0)  # e11 = 1 - e22


def test_builtin_regular_action_entries(reg):
    assert reg.left_apply(E22, E12) == ZERO
    assert reg.right_apply(E12, E22) == E12


def test_builtin_d_kills_e12(act_d):
    for u in (E11, E12, E22):
        assert act_d.left_apply(E12, u) == ZERO
        assert act_d.right_apply(u, E12) == ZERO
    # 1 and e22 still act by multiplication
    assert act_d.left_apply(E22, E22) == E22


def test_builtin_f_kills_e22(act_f):
    assert act_f.left_apply(E22, E22) == ZERO
    assert act_f.left_apply(E12, E11) == ZERO
    assert act_f.right_apply(E22, E22) == ZERO
    rng = random.Random(2)
    for _ in range(10):
        x = random_element(rng)
        assert act_f.left_apply(IDENT, x) == x


def test_axioms_pass_for_builtins(all_actions):
    for act in all_actions.values():
        report = check_axioms(act)
        assert report.ok, str(report)


def test_axioms_fail_on_corrupted_entry(reg):
    data = action_to_dict(reg)
    data["left"]["e22"]["e12"] = ["0/1", "1/1", "0/1"]  # e22 . e12 forced to e12
    bad = action_from_dict(data)
    report = check_axioms(bad)
    assert not report.ok
    assert len(report.violations) >= 1
    axiom, triple = report.violations[0]
    assert "==" in axiom and len(triple) == 3


def test_unknown_builtin_tag():
    with pytest.raises(ValueError):
        builtin_action("bogus")


def test_operator_of_regular_e22_pair(reg):
    # x -> (e22 x) e22 keeps only the e22 coordinate
    op = operator_of(E22, E22, reg)
    rng = random.Random(3)
    for _ in range(10):
        x = random_element(rng)
        assert op.apply(x) == UTElement(0, 0, x.c)


def test_operator_of_identity_pair(reg):
    assert operator_of(IDENT, IDENT, reg) == LinearOperator.identity()


def test_operator_of_zero_under_d(act_d):
    assert operator_of(E12, IDENT, act_d).is_zero()


def test_operator_bilinearity(reg):
    rng = random.Random(7)
    for _ in range(10):
        w1, w2, v = (random_element(rng) for _ in range(3))
        lhs = operator_of(w1 + w2, v, reg)
        rhs = operator_of(w1, v, reg) + operator_of(w2, v, reg)
        assert lhs == rhs


def test_left_right_composition_laws(reg):
    # L_{w1 w2} = L_{w1} L_{w2} and R_{v1 v2} = R_{v2} R_{v1}
    for w1 in SANDWICH:
        for w2 in SANDWICH:
            lhs = operator_of(w1 * w2, IDENT, reg)
            rhs = operator_of(w1, IDENT, reg).compose(operator_of(w2, IDENT, reg))
            assert lhs == rhs
            lhs = operator_of(IDENT, w1 * w2, reg)
            rhs = operator_of(IDENT, w2, reg).compose(operator_of(IDENT, w1, reg))
            assert lhs == rhs


@pytest.mark.parametrize("tag,expected", [("regular", 5), ("D", 3), ("F", 1)])
def test_lr_span_dim(tag, expected):
    assert lr_span_dim(builtin_action(tag)) == expected


@pytest.mark.parametrize("tag", ["regular", "D", "F"])
def test_operator_span_matches_arity_one_quotient(tag):
    # The operator span has the same dimension as the arity-1 quotient,
    # for all three builtin actions (checked, not assumed).
    act = builtin_action(tag)
    assert lr_span_dim(act) == codimension(act, 1).value


@pytest.mark.parametrize(
    "src,expected",
    [
        ("E22*x1*E22 - E22*x1", True),
        ("E12*x1*E12", True),
        ("x1", False),
    ],
)
def test_is_trivial_linear_examples(src, expected):
    assert is_trivial_linear(parse_poly(src)) is expected


def test_is_trivial_linear_rejects_bad_shapes():
    with pytest.raises(ValueError):
        is_trivial_linear(parse_poly("x1*x2"))
    with pytest.raises(ValueError):
        is_trivial_linear(parse_poly("x1 + x2"))


def test_trivial_implies_vanishing_everywhere(reg):
    f = parse_poly("E22*x1*E22 - E22*x1")
    assert is_trivial_linear(f)
    rng = random.Random(99)
    for _ in range(1000):
        assert evaluate(f, {1: random_element(rng)}, reg).is_zero()


def test_action_json_roundtrip(all_actions, tmp_path):
    from ut2gpi import load_action, save_action

    for tag, act in all_actions.items():
        data = action_to_dict(act)
        again = action_from_dict(json.loads(json.dumps(data)))
        assert action_to_dict(again) == data
        path = tmp_path / ("%s.json" % tag)
        save_action(act, path)
        assert action_to_dict(load_action(path)) == data


def test_action_json_rejects_malformed(reg):
    data = action_to_dict(reg)
    del data["left"]["e22"]
    with pytest.raises(ValueError):
        action_from_dict(data)
    data2 = action_to_dict(reg)
    data2["left"]["e22"]["e11"] = ["1/1", "0/1"]
    with pytest.raises(ValueError):
        action_from_dict(data2)
