"""3-SAT to matching: structure, solver, brute-force cross-checks."""

import random
from itertools import product

import pytest

from itu import (
    MatchBudget,
    Sat3Instance,
    Substitution,
    const,
    encode_constants_unary,
    extract_valuation,
    parse_constraints,
    parse_dimacs,
    sat3_to_matching,
    sat_brute_force,
    solve_matching_bounded,
    type_constants,
    verify,
)


def inst(nvars, clauses):
    return Sat3Instance(
        tuple(f"x{i + 1}" for i in range(nvars)),
        tuple(tuple(c) for c in clauses),
    )


TRIVIAL_SAT = inst(1, [[("x1", True), ("x1", True), ("x1", True)]])
TRIVIAL_UNSAT = inst(
    1,
    [
        [("x1", True), ("x1", True), ("x1", True)],
        [("x1", False), ("x1", False), ("x1", False)],
    ],
)


class TestStructure:
    def test_constraint_counts(self):
        cs = sat3_to_matching(TRIVIAL_SAT)
        # one consistency constraint per variable, one validity per clause
        assert len(cs) == 2

    def test_constants(self):
        cs = sat3_to_matching(TRIVIAL_SAT)
        seen = set()
        for c in cs:
            seen |= type_constants(c.lhs) | type_constants(c.rhs)
        assert seen == {"x1", "not_x1", "mark"}

    def test_custom_bullet(self):
        cs = sat3_to_matching(TRIVIAL_SAT, bullet=const("dot"))
        seen = set()
        for c in cs:
            seen |= type_constants(c.lhs) | type_constants(c.rhs)
        assert "dot" in seen and "mark" not in seen

    def test_counts_general(self):
        f = inst(
            3,
            [
                [("x1", True), ("x2", False), ("x3", True)],
                [("x1", False), ("x2", True), ("x3", True)],
            ],
        )
        assert len(sat3_to_matching(f)) == 3 + 2


class TestSolverGoldens:
    def test_sat_instance_solved(self):
        cs = sat3_to_matching(TRIVIAL_SAT)
        s = solve_matching_bounded(cs)
        assert s is not None and verify(s, cs)
        assert extract_valuation(s, TRIVIAL_SAT) == {"x1": True}

    def test_unsat_instance_none(self):
        assert solve_matching_bounded(sat3_to_matching(TRIVIAL_UNSAT)) is None

    def test_rejects_non_matching(self):
        with pytest.raises(ValueError):
            solve_matching_bounded(parse_constraints("'x <= 'y"))

    def test_extract_requires_solution(self):
        with pytest.raises(ValueError):
            extract_valuation(Substitution({"alpha": const("x1")}), TRIVIAL_UNSAT)


def random_instance(rng, nvars, nclauses):
    names = [f"x{i + 1}" for i in range(nvars)]
    clauses = []
    for _ in range(nclauses):
        clauses.append(
            tuple(
                (rng.choice(names), rng.random() < 0.5) for _ in range(3)
            )
        )
    return Sat3Instance(tuple(names), tuple(clauses))


class TestEquivalence:
    def test_exhaustive_up_to_two_vars(self):
        # all clause sets over <=2 variables, <=2 clauses
        names = ("x1", "x2")
        lits = [(n, p) for n in names for p in (True, False)]
        all_clauses = list(product(lits, repeat=3))
        rng = random.Random(7)
        picked = rng.sample(all_clauses, 20)
        for c1 in picked:
            for c2 in picked[:6]:
                f = Sat3Instance(names, (c1, c2))
                want = sat_brute_force(f) is not None
                cs = sat3_to_matching(f)
                s = solve_matching_bounded(cs)
                got = s is not None
                assert got == want, f
                if s is not None:
                    v = extract_valuation(s, f)
                    assert all(
                        any(v[n] == p for n, p in clause) for clause in f.clauses
                    )

    def test_random_corpus(self, rng):
        for _ in range(25):
            f = random_instance(rng, rng.randint(1, 4), rng.randint(1, 5))
            want = sat_brute_force(f) is not None
            s = solve_matching_bounded(sat3_to_matching(f))
            assert (s is not None) == want
            if s is not None:
                extract_valuation(s, f)  # must not raise


class TestSingleConstantVariant:
    def test_unary_encoding_preserves_solvability(self):
        for f, want in ((TRIVIAL_SAT, True), (TRIVIAL_UNSAT, False)):
            cs = sat3_to_matching(f)
            enc = encode_constants_unary(cs, const("mark"))
            seen = set()
            for c in enc:
                seen |= type_constants(c.lhs) | type_constants(c.rhs)
            assert seen == {"mark"}
            depth = 2 * len(f.variables)
            s = solve_matching_bounded(
                enc, MatchBudget(tower_depth=depth)
            )
            assert (s is not None) == want


class TestDimacs:
    def test_parse(self):
        f = parse_dimacs("c comment\np cnf 2 2\n1 -2 2 0\n-1 1 2 0\n")
        assert f.variables == ("x1", "x2")
        assert f.clauses[0] == (("x1", True), ("x2", False), ("x2", True))

    def test_bad_clause(self):
        with pytest.raises(ValueError):
            parse_dimacs("p cnf 1 1\n1 1 0\n")

    def test_missing_header(self):
        with pytest.raises(ValueError):
            parse_dimacs("1 2 3 0\n")
