"""Constructive walk behind the soundness direction of the determinacy check.

Starting from a tuple sequence t drawn from I that produces `row`, each
position r is swapped for a tuple of I' that the views force to exist and
that keeps the query predicate and projected output intact. After m steps
the sequence lives entirely in I'.
"""

import logging
from typing import Optional

from qdet.models.predicate import eval_predicate
from qdet.models.problem import NormalizedProblem
from qdet.models.tuples import Instance, Tuple, TupleSeq, seq_except, sub_tuple
from qdet.services.evaluator import matching_sequences

logger = logging.getLogger(__name__)


def _ordered(rows) -> list[Tuple]:
    return sorted(rows, key=lambda t: tuple(v.sort_key() for _, v in t.items))


def _agrees(a: Tuple, b: Tuple, refs) -> bool:
    return sub_tuple(a, refs) == sub_tuple(b, refs)


def replace_position(
    problem: NormalizedProblem, current: TupleSeq, r: int, inst_prime: Instance
) -> Optional[TupleSeq]:
    rel = problem.schema.relation_at(r)
    t_r = current.at(r)
    query = problem.query
    for view in problem.views_for(r):
        if not eval_predicate(view.predicate, t_r.as_dict()):
            continue
        for candidate in _ordered(inst_prime.get(rel.name)):
            # Phi: the view admits the candidate and it shows the same projection
            if not eval_predicate(view.predicate, candidate.as_dict()):
                continue
            if not _agrees(candidate, t_r, view.projection):
                continue
            # Psi: swapping it in keeps theta and the projected row
            swapped = seq_except(current, r, candidate)
            if eval_predicate(query.predicate, swapped.binding()) and _agrees(
                swapped.joined(), current.joined(), query.projection
            ):
                return swapped
    return None


def replay_row(
    problem: NormalizedProblem, inst: Instance, inst_prime: Instance, row: Tuple
) -> Optional[TupleSeq]:
    query = problem.query
    start = next(
        (
            seq
            for seq in sorted(matching_sequences(query, inst), key=lambda s: str(s.joined()))
            if sub_tuple(seq.joined(), query.projection) == row
        ),
        None,
    )
    if start is None:
        logger.debug(f"Row {row} is not produced by the first instance")
        return None

    current = start
    for r in range(1, problem.m + 1):
        replaced = replace_position(problem, current, r, inst_prime)
        if replaced is None:
            logger.debug(f"No replacement found for position {r} while replaying {row}")
            return None
        current = replaced
    return current
