import random
from itertools import product

import pytest

from kripkelewis import (
    And,
    Atom,
    Bel,
    Box,
    Cond,
    Iff,
    Implies,
    Not,
    Or,
    SyntacticClass,
    atoms,
    classify,
    desugar,
    evaluate,
    is_tautology,
)

import helpers

P, Q, R = Atom("p"), Atom("q"), Atom("r")


def test_classify_goldens():
    assert classify(Or(P, Not(Q))) is SyntacticClass.PHI0
    assert classify(Cond(P, Cond(Q, R))) is SyntacticClass.ILLFORMED
    assert classify(Bel(And(Cond(P, Q), R))) is SyntacticClass.PHI_B
    assert classify(Cond(P, Q)) is SyntacticClass.PHI_COND
    assert classify(Not(Cond(P, Q))) is SyntacticClass.PHI1
    assert classify(Box(P)) is SyntacticClass.PHI_BOX
    assert classify(Or(Bel(P), Q)) is SyntacticClass.PHI
    assert classify(Bel(Bel(P))) is SyntacticClass.ILLFORMED
    assert classify(Bel(Box(P))) is SyntacticClass.ILLFORMED
    assert classify(Box(Cond(P, Q))) is SyntacticClass.ILLFORMED
    # mixed operand under the conditional is outside every clause
    assert classify(Cond(Box(P), Q)) is SyntacticClass.ILLFORMED


def test_classify_matches_membership_oracle():
    rng = random.Random(101)
    for _ in range(2500):
        f = helpers.gen_any_tree(rng, depth=rng.randrange(1, 5))
        assert classify(f) is helpers.oracle_classify(f), f


def test_classify_nesting_invariant():
    rng = random.Random(102)
    for _ in range(300):
        f = helpers.gen_phi0(rng)
        assert classify(f) is SyntacticClass.PHI0
        assert classify(Bel(f)) is SyntacticClass.PHI_B
        assert classify(Box(f)) is SyntacticClass.PHI_BOX


def test_atoms_goldens():
    assert atoms(Or(P, Not(Q))) == {"p", "q"}
    assert atoms(Bel(Cond(P, P))) == {"p"}
    assert atoms(Implies(Box(Not(And(P, Q))), Bel(Cond(P, R)))) == {"p", "q", "r"}


def test_is_tautology_goldens():
    assert is_tautology(Or(P, Not(P)))
    assert not is_tautology(Implies(P, Q))
    # 4-row table: rows (p, q) in {TT, TF, FT, FF} all satisfy it
    assert is_tautology(Implies(And(P, Implies(P, Q)), Q))


def test_is_tautology_rejects_modal_input():
    with pytest.raises(ValueError):
        is_tautology(Bel(P))
    with pytest.raises(ValueError):
        is_tautology(Cond(P, Q))


def test_tautological_iff_means_equal_truth_tables():
    rng = random.Random(103)
    for _ in range(300):
        f = helpers.gen_phi0(rng, depth=3, names=("p", "q", "r"))
        g = helpers.gen_phi0(rng, depth=3, names=("p", "q", "r"))
        names = sorted(atoms(f) | atoms(g))
        tables_equal = all(
            evaluate(f, dict(zip(names, bits))) == evaluate(g, dict(zip(names, bits)))
            for bits in product((False, True), repeat=len(names))
        )
        assert is_tautology(Iff(f, g)) == tables_equal


def test_derived_connectives_match_expansions():
    rng = random.Random(104)
    for _ in range(300):
        f = helpers.gen_phi0(rng, depth=4)
        g = desugar(f)
        # the rewrite eliminates every derived connective
        stack = [g]
        while stack:
            node = stack.pop()
            assert not isinstance(node, (And, Implies, Iff)), g
            if isinstance(node, Not):
                stack.append(node.body)
            elif isinstance(node, Or):
                stack.extend((node.left, node.right))
        names = sorted(atoms(f))
        for bits in product((False, True), repeat=len(names)):
            sigma = dict(zip(names, bits))
            assert evaluate(f, sigma) == evaluate(g, sigma)


def test_evaluate_missing_atoms_default_false():
    assert evaluate(P, {}) is False
    assert evaluate(Not(P), {}) is True


def test_operator_sugar_builds_nodes():
    assert ~P == Not(P)
    assert (P & Q) == And(P, Q)
    assert (P | Q) == Or(P, Q)
