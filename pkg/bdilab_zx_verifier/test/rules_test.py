from fractions import Fraction

import pytest

from bdilab_zx_verifier.constants import DEFAULT_SEED as SEED, VIOLATION_RESIDUAL
from bdilab_zx_verifier.errors import ArityMismatch, ParseError
from bdilab_zx_verifier.rules import (
    A_VARIABLES,
    Constraint,
    as_assignment,
    check_rule,
    check_soundness,
    constraint_residual,
    evaluate_instance,
    falsify_constraint_A,
    incompleteness_witness,
    load_rule_file,
    load_rules,
    resolve_rules_path,
    sample_constraint_A,
    sample_violations_A,
    solve_constraint_A,
)
from bdilab_zx_verifier.semantics import Functor


@pytest.fixture(scope="module")
def clifford_t():
    return load_rule_file("clifford_t")


@pytest.fixture(scope="module")
def zxc():
    return load_rule_file("zxc.rules")


@pytest.fixture(scope="module")
def a_rule(zxc):
    return next(r for r in zxc if r.constraint is Constraint.A)


class TestLoading:
    def test_shipped_files(self, clifford_t, zxc):
        assert len(clifford_t) == 15
        assert len(zxc) == 16
        assert [r.name for r in zxc].count("A") == 1

    def test_resolve_path(self, tmp_path):
        path = tmp_path / "own.rules"
        path.write_text("rule r\nvars\nlhs: H ; H\nrhs: id\n")
        assert resolve_rules_path(str(path)) == str(path)
        assert resolve_rules_path("clifford_t").endswith("clifford_t.rules")
        with pytest.raises(FileNotFoundError):
            resolve_rules_path("no_such_rules")

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            load_rules("rule r\nvars\nlhs: H\nrhs: cap\n")

    def test_non_integer_coefficient(self):
        with pytest.raises(ParseError):
            load_rules("rule r\nvars a\nlhs: Z[1,1](1/2 a)\nrhs: id\n")

    def test_undeclared_variable(self):
        with pytest.raises(ParseError) as info:
            load_rules("rule r\nvars a\nlhs: Z[1,1](a + b)\nrhs: id\n")
        assert "undeclared" in str(info.value)

    def test_unknown_constraint(self):
        with pytest.raises(ParseError):
            load_rules("rule r\nvars a\nconstraint B\nlhs: Z[1,1](a)\nrhs: Z[1,1](a)\n")

    def test_constraint_needs_its_variables(self):
        with pytest.raises(ParseError):
            load_rules("rule r\nvars alpha\nconstraint A\nlhs: Z[1,1](alpha)\nrhs: Z[1,1](alpha)\n")

    def test_syntax_error(self):
        with pytest.raises(ParseError):
            load_rules("rule r\nlhs: H\nrhs: H\n")


class TestConstraintSampling:
    def test_satisfying_samples(self):
        samples = sample_constraint_A(1000, SEED)
        assert len(samples) == 1000
        assert max(constraint_residual(s) for s in samples) <= 1e-12

    def test_seed_is_reproducible(self):
        assert sample_constraint_A(5, 7) == sample_constraint_A(5, 7)

    def test_degenerate_sum(self):
        # cos(alpha) e^{i theta1} cancels cos(beta) e^{i theta2}
        sample = solve_constraint_A(0.0, 0.0, 0.0, 3.141592653589793)
        assert sample[5] == 0.0
        assert constraint_residual(sample) <= 1e-12

    def test_violations(self):
        samples = sample_violations_A(200, SEED)
        assert all(constraint_residual(s) >= VIOLATION_RESIDUAL for s in samples)

    def test_assignment(self):
        assert list(as_assignment(tuple(range(6)))) == list(A_VARIABLES)


class TestSoundness:
    @pytest.mark.parametrize("functor", [Functor(), Functor(9)])
    def test_clifford_t_is_sound(self, clifford_t, functor):
        report = check_soundness(clifford_t, functor)
        assert report.sound, [c.rule for c in report.failures]
        assert all(c.method == "exact" for c in report.checks)

    def test_zxc_is_sound(self, zxc):
        report = check_soundness(zxc, Functor(), budget=1000, seed=SEED)
        assert report.sound, [c.rule for c in report.failures]
        a_check = next(c for c in report.checks if c.rule == "A")
        assert a_check.method == "sampled"
        assert a_check.samples == 1000
        assert a_check.approximate

    def test_a_rule_fails_when_scaled(self, a_rule):
        check = check_rule(a_rule, Functor(9), budget=200, seed=SEED)
        assert not check.holds
        assert check.witness is not None
        assert check.discrepancy > 1e-6
        assert set(check.witness) == set(A_VARIABLES)

    def test_a_rule_on_sampled_tuples(self, a_rule):
        samples = sample_constraint_A(1000, SEED)
        assert max(constraint_residual(s) for s in samples) <= 1e-12
        for sample in samples:
            assert evaluate_instance(a_rule, as_assignment(sample)) <= 1e-9

    def test_violations_falsify(self, a_rule):
        report = falsify_constraint_A(a_rule, 1000, SEED)
        assert report.sound
        assert report.checks[0].method == "falsified"
        assert report.checks[0].samples == 1000

    def test_each_violation_separates_the_sides(self, a_rule):
        samples = sample_violations_A(1000, SEED + 1)
        assert min(constraint_residual(s) for s in samples) >= VIOLATION_RESIDUAL
        for sample in samples:
            assert evaluate_instance(a_rule, as_assignment(sample)) > 1e-6

    def test_falsify_needs_constraint(self, clifford_t):
        with pytest.raises(ValueError):
            falsify_constraint_A(clifford_t[0])

    def test_closures(self, clifford_t):
        chosen = [r for r in clifford_t if r.name in ("s1", "h", "k1")]
        report = check_soundness(chosen, include_closures=True)
        assert len(report.checks) == 12
        assert {c.rule for c in report.checks} >= {"s1/flip", "h/colour", "k1/flip/colour"}
        assert report.sound

    def test_unsound_rule(self):
        (rule,) = load_rules("rule neg\nvars a\nlhs: Z[1,1](a)\nrhs: Z[1,1](-a)\n")
        check = check_rule(rule)
        assert not check.holds
        assert isinstance(check.witness["a"], Fraction)
        data = check.to_json()
        assert data["holds"] is False
        assert isinstance(data["witness"]["a"], float)

    def test_report_json(self, clifford_t):
        data = check_soundness(clifford_t[:2]).to_json()
        assert data["functor"] == "std"
        assert data["sound"] is True
        assert [r["rule"] for r in data["rules"]] == ["s1", "s2"]


class TestIncompleteness:
    def test_witness_separates(self):
        report = incompleteness_witness()
        assert report.separates
        standard, scaled = report.rows
        assert standard.functor == "std" and standard.lhs == 1 and standard.equal
        assert scaled.functor == "scaled:9" and scaled.lhs == 4 and scaled.rhs == 1

    def test_other_scale(self):
        report = incompleteness_witness(17)
        assert report.rows[1].functor == "scaled:17"

    def test_json(self):
        data = incompleteness_witness().to_json()
        assert data["separates"] is True
        assert data["rows"][1]["lhs"] == "4"
