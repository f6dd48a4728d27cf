"""
Bit-wise search shared by OBV-BS and OFP-BS.

Bits of the objective are fixed MSB to LSB. Bit i is first tried at the
attractor's value; if the current model already has it, no solver call is
made, otherwise one call under the assumptions "prefix so far + bit i =
target" decides it. On unsat the complement is fixed. The model kept is
always consistent with the prefix, so after the last bit it is optimal.

The only difference between the two: the BV attractor is static, the FP
one is recomputed from the prefix each time a bit goes against it, and FP
runs the NaN prechecks first.
"""

from src.core.bitvec import BvConst, Direction, bv_attractor, xor_objective
from src.core.fp import DynamicAttractor, initial_dynamic_attractor, update_dynamic_attractor
from src.core.prefix import PrefixAssignment, Trajectory, TrajectoryRecord
from src.engines.base_engine import BaseEngine, SearchState
from src.engines.context import OptContext
from src.engines.enhancements import apply_enhancements
from src.engines.result import OptStatus
from src.utils.logger import logger


class BitSearchEngine(BaseEngine):

    def _initial_attractor(self, ctx: OptContext):
        objective = ctx.objective
        if objective.is_fp:
            return initial_dynamic_attractor(objective.sort, objective.direction)
        reference = bv_attractor(objective.sort, objective.signedness, Direction.MINIMIZE)
        targets = xor_objective(ctx.cost_vars, reference, objective.direction).targets
        return BvConst(objective.sort, targets)

    @staticmethod
    def _pattern(attractor):
        return attractor.pattern if isinstance(attractor, DynamicAttractor) else attractor

    def search(self, ctx: OptContext, state: SearchState) -> None:
        state.trajectory = Trajectory()
        if not self.first_model(ctx, state):
            return

        objective = ctx.objective
        direction = objective.direction
        attractor = self._initial_attractor(ctx)
        tau = PrefixAssignment(objective.sort)

        for i in range(ctx.width):
            target = attractor.bits[i]
            current = ctx.cost_of(state.model).bits
            pattern = self._pattern(attractor)

            if current[i] == target:
                tau = tau.extend(target)
                state.trajectory.append(TrajectoryRecord(i, target, "sat", False, pattern))
                continue

            apply_enhancements(ctx.solver, self.config, ctx.cost_vars, attractor.bits, tau, direction)
            assumptions = [ctx.bit_literal(k, b) for k, b in enumerate(tau.decided)]
            assumptions.append(ctx.bit_literal(i, target))
            model = ctx.check(assumptions)
            if model is not None:
                state.model = model
                tau = tau.extend(target)
                state.trajectory.append(TrajectoryRecord(i, target, "sat", True, pattern))
                logger.debug(f"bit {i}: target {target} sat")
                continue

            tau = tau.extend(1 - target)
            state.trajectory.append(TrajectoryRecord(i, target, "unsat", True, pattern))
            logger.debug(f"bit {i}: target {target} unsat, fixing {1 - target}")
            if isinstance(attractor, DynamicAttractor):
                attractor = update_dynamic_attractor(tau, direction)
                logger.debug(f"dynamic attractor now {attractor.pattern}")

        state.status = OptStatus.OPTIMUM
