"""
Iterated elimination of strictly dominated strategies in nested, universal and GKZ mode.

A successor step removes from each R_i strategies dominated relative to R_{-i} by
  nested:    some member of R_i
  universal: some member of A_i
  gkz:       some member of the surviving S_i
Limit stages are the intersection of the chain so far, computed from a detected affine
pattern when the game can certify it.
"""

import logging
from typing import Dict, List, Mapping, Optional, Tuple

from algebra.codec import encode_strategy
from algebra.patterns import Certificate, chain_limit, detect_affine_pattern
from algebra.symbolic_set import SymbolicSet
from engine.modes import Budget, Mode, Stage
from engine.policies import Policy, Removal
from engine.trace import EliminationTrace, StepJustification, Verdict, Witness
from games import dominance
from games.game import Game, Reduction
from utils.errors import BudgetExhaustedError, IllegalStepError, UnsupportedQueryError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


def scope_of(g: Game, R: Reduction, S: Reduction, player: str, mode: Mode) -> SymbolicSet:
    if mode is Mode.UNIVERSAL:
        return g.space(player)
    if mode is Mode.GKZ:
        return S[player]
    return R[player]


def removable_sets(g: Game, R: Reduction, mode: Mode) -> Dict[str, SymbolicSet]:
    """Strategies of each R_i that the mode lets a step remove (GKZ candidates use the nested scope)."""
    if R.is_empty:
        return {p: SymbolicSet.empty() for p in g.players}
    out = {}
    for p in g.players:
        scope = g.space(p) if mode is Mode.UNIVERSAL else R[p]
        out[p] = dominance.dominated_elements(g, p, R[p], scope, R)
    return out


def validate_step(g: Game, R: Reduction, S: Reduction, mode: Mode) -> Verdict:
    if not S.issubset(R):
        return Verdict(holds=False, clause="successor is contained in its predecessor", detail=f"{S} is not inside {R}")
    if R.is_empty:
        return Verdict.ok()
    for p in g.players:
        removed = R[p] - S[p]
        if removed.is_empty:
            continue
        scope = scope_of(g, R, S, p, mode)
        covered = dominance.dominated_elements(g, p, removed, scope, R)
        bad = removed - covered
        if not bad.is_empty:
            a = bad.representative()
            return Verdict(
                holds=False,
                clause=f"every removed strategy is dominated within the {mode.value} scope",
                detail=f"{a} removed for player {p} has no dominator in {scope}",
                player=p,
                strategy=encode_strategy(a),
            )
    return Verdict.ok()


def is_maximal(g: Game, R: Reduction, mode: Mode) -> bool:
    """No non-trivial step of this mode leaves R. The empty reduction is maximal."""
    if R.is_empty:
        return True
    return all(X.is_empty for X in removable_sets(g, R, mode).values())


def _legalize_gkz(g: Game, R: Reduction, removal: Removal) -> Removal:
    out: Removal = {}
    for p, Rm in removal.items():
        Rm = Rm & R[p]
        custom = g.oracle.gkz_removal(p, Rm, R)
        if custom is not None:
            out[p] = custom
            continue
        for _ in range(64):
            survivors = R[p] - Rm
            covered = dominance.dominated_elements(g, p, Rm, survivors, R) if not survivors.is_empty else SymbolicSet.empty()
            stranded = Rm - covered
            if stranded.is_empty:
                break
            keep = dominance.undominated_elements(g, p, stranded, stranded, R)
            if keep.is_empty:
                raise UnsupportedQueryError(f"no GKZ survivor rule for {stranded} of player {p}", entry=g.oracle.entry)
            Rm = Rm - keep
        else:
            raise UnsupportedQueryError(f"GKZ repair for player {p} did not settle", entry=g.oracle.entry)
        out[p] = Rm
    return out


def _witnesses(g: Game, R: Reduction, S: Reduction, removal: Removal, mode: Mode) -> Tuple[Witness, ...]:
    found: List[Witness] = []
    for p in g.players:
        X = removal.get(p, SymbolicSet.empty())
        if X.is_empty:
            continue
        scope = scope_of(g, R, S, p, mode)
        reps = g.ordered(p, X) if X.is_finite else [SymbolicSet([prim]).representative() for prim in X.primitives]
        for a in reps:
            candidates = dominance.dominating_set(g, p, a, R) & scope
            dominator = None
            if not candidates.is_empty:
                dominator = g.ordered(p, candidates)[-1] if candidates.is_finite else candidates.representative()
            found.append(Witness(p, a, dominator))
    return tuple(found)


def step(g: Game, R: Reduction, mode: Mode, policy: Policy, step_index: int = 0) -> Tuple[Reduction, StepJustification]:
    """
    One successor step from R chosen by the policy.

    Raises:
        IllegalStepError: a scripted removal breaks the mode's condition.
    """
    if R.is_empty:
        return R, StepJustification.empty()
    removable = removable_sets(g, R, mode)
    removal = {p: X & R[p] for p, X in policy.select(g, R, mode, removable, step_index).items() if not X.is_empty}
    scripted = policy.scripted and getattr(policy, "is_scripted_step", lambda _: True)(step_index)
    if mode is Mode.GKZ and not scripted:
        removal = _legalize_gkz(g, R, removal)
    S = R.minus(removal)
    verdict = validate_step(g, R, S, mode)
    if not verdict.holds:
        logger.error(f"Illegal {mode.value} step at {step_index}: {verdict.detail}")
        raise IllegalStepError(verdict.detail or "illegal step", player=verdict.player, strategy=verdict.strategy, mode=mode.value)
    return S, StepJustification(removal, _witnesses(g, R, S, removal, mode))


def run(g: Game, mode: Mode, policy: Policy, budget: Optional[Budget] = None) -> EliminationTrace:
    """
    Step from A until a maximal reduction, taking limit stages when a segment uses up its successor budget.

    Raises:
        BudgetExhaustedError: carries the partial trace.
    """
    budget = budget or Budget.from_settings()
    trace = EliminationTrace(game=g.name, mode=mode)
    trace.stages.append((Stage(0, 0), g.full_reduction()))
    segment_start = 0
    successor_steps = 0
    logger.info(f"Running {mode.value} elimination on '{g.name}' with {policy.describe()}")

    while True:
        stage, R = trace.stages[-1]
        if is_maximal(g, R, mode):
            trace.terminal_maximal = True
            break

        if len(trace.stages) - 1 - segment_start >= budget.max_successor_steps:
            if len(trace.certificates) >= budget.max_limits:
                raise BudgetExhaustedError(f"no maximal reduction within {budget.max_limits} limit stages", trace)
            history = [r.components for r in trace.reductions()[segment_start:]]
            pattern = detect_affine_pattern(history, budget.window, g.registry, budget.max_period, base_index=segment_start)
            if pattern is None:
                raise BudgetExhaustedError(
                    f"no affine pattern after {budget.max_successor_steps} steps from stage {trace.stages[segment_start][0]}",
                    trace,
                )
            if g.oracle.certify_pattern(pattern):
                pattern = pattern.with_certificate(Certificate.INDUCTIVE)
            elif budget.strict:
                raise BudgetExhaustedError(
                    f"pattern from stage {pattern.base_stage} has only a window-only certificate", trace
                )
            limit = chain_limit(pattern)
            limit_stage = Stage(stage.k + 1, 0)
            trace.stages.append((limit_stage, g.reduction(limit.components)))
            trace.certificates[len(trace.stages) - 1] = pattern
            segment_start = len(trace.stages) - 1
            logger.info(f"Limit stage {limit_stage}: {trace.final}")
            continue

        S, just = step(g, R, mode, policy, successor_steps)
        successor_steps += 1
        trace.stages.append((stage.successor(), S))
        trace.justifications[len(trace.stages) - 1] = just

    logger.info(f"{mode.value} elimination on '{g.name}' ended at stage {trace.final_stage}: {trace.final}")
    return trace


def validate_sequence(g: Game, trace: EliminationTrace, mode: Optional[Mode] = None, strict: bool = True) -> Verdict:
    """Check that a recorded trace is an elimination sequence of the given mode ending at a maximal reduction."""
    mode = mode or trace.mode
    if not trace.stages:
        return Verdict(holds=False, clause="the sequence is non-empty")
    if trace.stages[0][1] != g.full_reduction():
        return Verdict(holds=False, clause="the sequence starts at the full strategy space", stage=str(trace.stages[0][0]))
    if trace.stages[0][0] != Stage(0, 0):
        return Verdict(holds=False, clause="stage labels follow ordinal order", stage=str(trace.stages[0][0]))

    for idx in range(1, len(trace.stages)):
        stage, R = trace.stages[idx]
        prev_stage, prev = trace.stages[idx - 1]
        expected = Stage(prev_stage.k + 1, 0) if stage.is_limit else prev_stage.successor()
        if stage != expected:
            return Verdict(
                holds=False,
                clause="stage labels follow ordinal order",
                stage=str(stage),
                detail=f"expected {expected} after {prev_stage}",
            )
        if not R.issubset(prev):
            return Verdict(holds=False, clause="reductions are non-increasing", stage=str(stage))
        if stage.is_limit:
            pattern = trace.certificates.get(idx)
            if pattern is None:
                return Verdict(holds=False, clause="limit stages carry a certificate", stage=str(stage))
            if strict and pattern.certificate is not Certificate.INDUCTIVE:
                return Verdict(holds=False, clause="limit certificates are inductive", stage=str(stage))
            for t in range(pattern.verified_window):
                pos = pattern.stage_of(t)
                if pos >= idx or g.reduction(pattern.instance(t)) != trace.stages[pos][1]:
                    return Verdict(
                        holds=False,
                        clause="the certificate reproduces the recorded chain",
                        stage=str(stage),
                        detail=f"instance {t} does not match stage {pos}",
                    )
            if g.reduction(chain_limit(pattern).components) != R:
                return Verdict(holds=False, clause="a limit stage is the intersection of its chain", stage=str(stage))
            continue
        verdict = validate_step(g, prev, R, mode)
        if not verdict.holds:
            return verdict.model_copy(update={"stage": str(stage)})

    if not is_maximal(g, trace.final, mode):
        return Verdict(holds=False, clause="the sequence ends at a maximal reduction", stage=str(trace.final_stage))
    return Verdict.ok()
