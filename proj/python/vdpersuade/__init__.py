"""Exact solver and verifier for persuasion games with verifiable messages.

Games, outcomes and equilibria are plain dicts in the JSON file formats used by
the ``vdp`` command-line tool. Rationals are ``"p/q"`` strings; convert with
``fractions.Fraction`` when arithmetic is needed.
"""

import json
from fractions import Fraction

from . import _core
from ._core import AnalysisRefusal, BudgetExceeded, ParseError, ValidationError

__all__ = [
    "AnalysisRefusal",
    "BudgetExceeded",
    "ParseError",
    "ValidationError",
    "load",
    "validate_game",
    "solve_commitment",
    "check",
    "decide_commitment_in_equilibrium",
    "enumerate_equilibrium_outcomes",
    "construct_recommendation_equilibrium",
    "verify_equilibrium",
    "smm",
    "evaluate_interval_outcome",
    "purify_interval_outcome",
    "discretize_game",
    "lp_solve",
    "fraction",
]

_DEFAULT_BUDGET = 10_000_000


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def fraction(value):
    """Fraction from a "p/q" string."""
    return Fraction(value)


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def validate_game(game):
    return json.loads(_core.validate_game(_text(game)))


def solve_commitment(game):
    return json.loads(_core.solve_commitment(_text(game)))


def check(game, outcome):
    return json.loads(_core.check(_text(game), _text(outcome)))


def decide_commitment_in_equilibrium(game, budget=_DEFAULT_BUDGET):
    return json.loads(_core.decide_commitment_in_equilibrium(_text(game), budget))


def enumerate_equilibrium_outcomes(game, budget=_DEFAULT_BUDGET):
    """Deterministic equilibrium outcomes as 0-based action lists."""
    return _core.enumerate_equilibrium_outcomes(_text(game), budget)


def construct_recommendation_equilibrium(game, partition):
    return json.loads(_core.construct_recommendation_equilibrium(_text(game), list(partition)))


def verify_equilibrium(game, equilibrium):
    return json.loads(_core.verify_equilibrium(_text(game), _text(equilibrium)))


def smm(game, outcome):
    return json.loads(_core.smm(_text(game), _text(outcome)))


def evaluate_interval_outcome(game, outcome):
    return json.loads(_core.evaluate_interval_outcome(_text(game), _text(outcome)))


def purify_interval_outcome(game, outcome):
    return json.loads(_core.purify_interval_outcome(_text(game), _text(outcome)))


def discretize_game(game, n):
    return json.loads(_core.discretize_game(_text(game), n))


def lp_solve(objective, rows, senses, rhs):
    """Maximize objective.x subject to rows[i].x (senses[i]) rhs[i], x >= 0."""
    return _core.lp_solve([str(c) for c in objective], [[str(a) for a in r] for r in rows],
                          list(senses), [str(b) for b in rhs])
