"""
Rule sets: loading, soundness checking under an interpretation functor, sampling of the
A-rule side condition and the incompleteness witness.
"""
import logging
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from bdilab_zx_verifier import env_utils, gadgets
from bdilab_zx_verifier.constants import (
    CONSTRAINT_TOLERANCE,
    DEFAULT_SCALE,
    FALSIFY_TOLERANCE,
    FLOAT_TOLERANCE,
    VIOLATION_RESIDUAL,
)
from bdilab_zx_verifier.diagram import (
    Diagram,
    color_swap,
    flip,
    phases,
    substitute,
    tensor,
    variables,
    z,
)
from bdilab_zx_verifier.dsl import parse_document
from bdilab_zx_verifier.errors import ArityMismatch, ParseError
from bdilab_zx_verifier.exactnum import Cyclotomic
from bdilab_zx_verifier.projector import Method, decide_forall
from bdilab_zx_verifier.semantics import Backend, Functor

logger = logging.getLogger(__name__)

RULES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "rulesets")

A_VARIABLES = ("alpha", "beta", "gamma", "theta1", "theta2", "theta3")

ConstraintSample = Tuple[float, float, float, float, float, float]


class Constraint(Enum):
    none = "none"
    A = "A"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Rule:
    name: str
    variables: Tuple[str, ...]
    lhs: Diagram
    rhs: Diagram
    constraint: Constraint = Constraint.none

    def flipped(self) -> "Rule":
        return Rule(f"{self.name}/flip", self.variables, flip(self.lhs), flip(self.rhs), self.constraint)

    def color_swapped(self) -> "Rule":
        return Rule(f"{self.name}/colour", self.variables, color_swap(self.lhs), color_swap(self.rhs),
                    self.constraint)

    def closure_variants(self) -> List["Rule"]:
        """The upside-down, colour-swapped and doubly transformed versions of the rule."""
        return [self.flipped(), self.color_swapped(), self.flipped().color_swapped()]


def load_rules(source: str) -> List[Rule]:
    """
    Parse a rule file.

    Raises ParseError for syntax errors, non-integer variable coefficients, undeclared variables
    and malformed constraints; ArityMismatch when the two sides of a rule differ in arity.
    """
    document = parse_document(source, "rules")
    rules = []
    for parsed in document.rules:
        line, column = parsed.span
        if parsed.lhs.arity != parsed.rhs.arity:
            raise ArityMismatch(parsed.lhs.inputs + parsed.lhs.outputs,
                                parsed.rhs.inputs + parsed.rhs.outputs, parsed.span)
        for side in (parsed.lhs, parsed.rhs):
            for phase in phases(side):
                if not phase.is_linear():
                    raise ParseError(f"rule {parsed.name}: non-integer coefficient in phase '{phase}'",
                                     line, column)
        undeclared = (variables(parsed.lhs) | variables(parsed.rhs)) - set(parsed.variables)
        if undeclared:
            raise ParseError(f"rule {parsed.name}: undeclared variables {sorted(undeclared)}", line, column)
        constraint = Constraint.none
        if parsed.constraint is not None:
            if parsed.constraint != Constraint.A.value:
                raise ParseError(f"rule {parsed.name}: unknown constraint '{parsed.constraint}'", line, column)
            constraint = Constraint.A
            missing = set(A_VARIABLES) - set(parsed.variables)
            if missing:
                raise ParseError(f"rule {parsed.name}: constraint A needs variables {sorted(missing)}",
                                 line, column)
        rules.append(Rule(parsed.name, parsed.variables, parsed.lhs, parsed.rhs, constraint))
    logger.debug("Loaded %d rules", len(rules))
    return rules


def resolve_rules_path(name: str) -> str:
    """A path to a rule file, or the name of a rule file shipped with the package."""
    if os.path.exists(name):
        return name
    shipped = os.path.join(RULES_DIR, name)
    if os.path.exists(shipped):
        return shipped
    if os.path.exists(shipped + ".rules"):
        return shipped + ".rules"
    raise FileNotFoundError(f"no rule file {name}")


def load_rule_file(name: str) -> List[Rule]:
    with open(resolve_rules_path(name), encoding="utf-8") as f:
        return load_rules(f.read())


# the A-rule side condition 2 e^{i theta3} cos(gamma) = e^{i theta1} cos(alpha) + e^{i theta2} cos(beta)

def constraint_residual(sample: ConstraintSample) -> float:
    alpha, beta, gamma, theta1, theta2, theta3 = sample
    lhs = 2 * np.exp(1j * theta3) * np.cos(gamma)
    rhs = np.exp(1j * theta1) * np.cos(alpha) + np.exp(1j * theta2) * np.cos(beta)
    return float(abs(lhs - rhs))


def solve_constraint_A(alpha: float, beta: float, theta1: float, theta2: float) -> ConstraintSample:
    """Complete (alpha, beta, theta1, theta2) with the gamma and theta3 satisfying the side condition."""
    w = (np.exp(1j * theta1) * np.cos(alpha) + np.exp(1j * theta2) * np.cos(beta)) / 2
    rho = float(abs(w))
    theta3 = 0.0 if rho < CONSTRAINT_TOLERANCE else float(np.angle(w)) % (2 * math.pi)
    gamma = math.acos(min(1.0, rho))
    return alpha, beta, gamma, theta1, theta2, theta3


def sample_constraint_A(count: int, seed: Optional[int] = None) -> List[ConstraintSample]:
    rng = np.random.default_rng(env_utils.get_seed() if seed is None else seed)
    samples = []
    for alpha, beta, theta1, theta2 in rng.uniform(0, 2 * math.pi, size=(count, 4)):
        samples.append(solve_constraint_A(float(alpha), float(beta), float(theta1), float(theta2)))
    return samples


def sample_violations_A(count: int, seed: Optional[int] = None,
                        threshold: float = VIOLATION_RESIDUAL) -> List[ConstraintSample]:
    """Uniform 6-angle tuples whose side-condition residual is at least ``threshold``."""
    rng = np.random.default_rng(env_utils.get_seed() if seed is None else seed)
    samples = []
    while len(samples) < count:
        sample = tuple(float(v) for v in rng.uniform(0, 2 * math.pi, size=6))
        if constraint_residual(sample) >= threshold:
            samples.append(sample)
    return samples


def as_assignment(sample: ConstraintSample) -> Dict[str, float]:
    return dict(zip(A_VARIABLES, sample))


# soundness

@dataclass
class RuleCheck:
    """
    Verdict on one rule. ``method`` is ``exact`` for rules decided by decide_forall, ``sampled``
    for constrained rules and ``falsified`` for side-condition violation runs.
    """
    rule: str
    holds: bool
    method: str
    functor: str
    witness: Optional[Dict[str, Union[Fraction, float]]] = None
    discrepancy: float = 0.0
    samples: int = 0
    approximate: bool = False

    def to_json(self) -> Dict:
        witness = None
        if self.witness is not None:
            witness = {k: float(v) * math.pi if isinstance(v, Fraction) else v for k, v in self.witness.items()}
        return {
            "rule": self.rule,
            "holds": self.holds,
            "method": self.method,
            "functor": self.functor,
            "witness": witness,
            "discrepancy": self.discrepancy,
            "samples": self.samples,
            "approximate": self.approximate,
        }


@dataclass
class SoundnessReport:
    functor: str
    checks: List[RuleCheck] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def failures(self) -> List[RuleCheck]:
        return [c for c in self.checks if not c.holds]

    def to_json(self) -> Dict:
        return {"functor": self.functor, "sound": self.sound, "rules": [c.to_json() for c in self.checks]}


def evaluate_instance(rule: Rule, assignment: Dict[str, Union[Fraction, float]],
                      functor: Functor = Functor()) -> float:
    """Max-abs difference between the two sides of a rule at one assignment, in floats."""
    left = functor(substitute(rule.lhs, assignment), Backend.float)
    right = functor(substitute(rule.rhs, assignment), Backend.float)
    return left.max_abs_diff(right)


def _check_sampled(rule: Rule, functor: Functor, budget: int, seed: Optional[int]) -> RuleCheck:
    samples = sample_constraint_A(budget, seed)
    for count, sample in enumerate(samples, start=1):
        assignment = as_assignment(sample)
        discrepancy = evaluate_instance(rule, assignment, functor)
        if discrepancy > FLOAT_TOLERANCE:
            logger.info("Rule %s fails under %s at %s", rule.name, functor, assignment)
            return RuleCheck(rule.name, False, "sampled", str(functor), assignment, discrepancy, count, True)
    return RuleCheck(rule.name, True, "sampled", str(functor), samples=len(samples), approximate=True)


def check_rule(rule: Rule, functor: Functor = Functor(), budget: Optional[int] = None,
               seed: Optional[int] = None) -> RuleCheck:
    if rule.constraint is Constraint.A:
        return _check_sampled(rule, functor, env_utils.get_sample_budget() if budget is None else budget, seed)
    verdict = decide_forall(rule.lhs, rule.rhs, Method.grid, functor)
    return RuleCheck(rule.name, verdict.holds, "exact", str(functor), verdict.witness, verdict.discrepancy,
                     approximate=verdict.approximate)


def check_soundness(rules: Sequence[Rule], functor: Functor = Functor(), budget: Optional[int] = None,
                    seed: Optional[int] = None, include_closures: bool = False) -> SoundnessReport:
    """
    Check every rule under ``functor``: linear rules exactly with decide_forall, rules with the A
    side condition on ``budget`` sampled satisfying tuples.

    Parameters
    ----------
    rules
         rules to check, in report order
    functor
         the interpretation; scaled functors need k = 1 mod 8
    budget
         samples per constrained rule, default from ZXV_SAMPLE_BUDGET
    seed
         sampling seed, default from ZXV_SEED
    include_closures
         also check the flipped and colour-swapped variants of each rule

    Returns
    -------
         SoundnessReport with one RuleCheck per checked rule
    """
    report = SoundnessReport(str(functor))
    for rule in rules:
        variants = [rule] + (rule.closure_variants() if include_closures else [])
        for variant in variants:
            check = check_rule(variant, functor, budget, seed)
            logger.info("Rule %s under %s: %s", variant.name, functor, "sound" if check.holds else "UNSOUND")
            report.checks.append(check)
    return report


def falsify_constraint_A(rule: Rule, count: Optional[int] = None, seed: Optional[int] = None,
                         functor: Functor = Functor()) -> SoundnessReport:
    """
    Evaluate the rule on tuples violating its side condition; the sides must differ on each.

    A tuple on which the sides agree is reported as a failing check.
    """
    if rule.constraint is not Constraint.A:
        raise ValueError(f"rule {rule.name} carries no side condition")
    count = env_utils.get_sample_budget() if count is None else count
    report = SoundnessReport(str(functor))
    for sample in sample_violations_A(count, seed):
        assignment = as_assignment(sample)
        discrepancy = evaluate_instance(rule, assignment, functor)
        if discrepancy <= FALSIFY_TOLERANCE:
            logger.error("Rule %s holds at violating tuple %s", rule.name, assignment)
            report.checks.append(RuleCheck(rule.name, False, "falsified", str(functor), assignment,
                                           discrepancy, count, True))
            return report
    report.checks.append(RuleCheck(rule.name, True, "falsified", str(functor), samples=count, approximate=True))
    return report


# incompleteness

@dataclass
class WitnessRow:
    functor: str
    lhs: Cyclotomic
    rhs: Cyclotomic

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class IncompletenessReport:
    lhs: Diagram
    rhs: Diagram
    rows: List[WitnessRow]

    @property
    def separates(self) -> bool:
        """The equation holds under the standard interpretation and fails under a scaled one."""
        return self.rows[0].equal and not all(row.equal for row in self.rows[1:])

    def to_json(self) -> Dict:
        return {
            "separates": self.separates,
            "rows": [{"functor": r.functor, "lhs": str(r.lhs), "rhs": str(r.rhs), "equal": r.equal}
                     for r in self.rows],
        }


def incompleteness_witness(scale: int = DEFAULT_SCALE) -> IncompletenessReport:
    """
    (1 + e^{2i pi/3})(1 + e^{4i pi/3}) = 1 holds in the standard interpretation but the scaled
    interpretation sends the left side to 4 while the unit scalar stays 1.
    """
    lhs = tensor(z(0, 0, Fraction(2, 3)), z(0, 0, Fraction(4, 3)))
    rhs = gadgets.unit()
    rows = []
    for functor in (Functor.standard(), Functor(scale)):
        rows.append(WitnessRow(str(functor), functor(lhs).scalar(), functor(rhs).scalar()))
    return IncompletenessReport(lhs, rhs, rows)
