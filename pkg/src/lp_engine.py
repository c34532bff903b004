import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.linalg
from scipy import sparse
from scipy.sparse.linalg import splu

from config import LpSettings
from exceptions import IterationLimitException, NumericalFailureException
from linear_model import GE, LE, LinearModel
from logger import get_logger
from utils import Deadline

logger: logging.Logger = get_logger()

OPTIMAL: str = "optimal"
INFEASIBLE: str = "infeasible"
UNBOUNDED: str = "unbounded"
ITERATION_LIMIT: str = "iteration-limit"
TIME_LIMIT: str = "time-limit"

# Nonbasic position of a column
AT_LOWER: int = 0
AT_UPPER: int = 1
AT_ZERO: int = 2
BASIC: int = 3

# Devex reference weights are reset once one grows past this
DEVEX_RESET: float = 1e8


@dataclass
class LpSolution:
    """
    Result of an LP solve. Arrays follow the model's variable and row order.

    Attributes:
        status (str): optimal, infeasible, unbounded, iteration-limit or time-limit.
        objective (float): Objective including the model offset, the current basis value when a limit stopped the solve.
        primal (np.ndarray): Variable values.
        dual (np.ndarray): Row duals, non-positive on <= rows and non-negative on >= rows at optimality.
        reduced_costs (np.ndarray): Reduced cost of every variable.
        iterations (int): Pivots and bound flips performed.
        basis (list[str]): Names of basic model variables, usable as a warm-start hint.
    """

    status: str
    objective: float
    primal: np.ndarray
    dual: np.ndarray
    reduced_costs: np.ndarray
    iterations: int = 0
    basis: list[str] = field(default_factory=list)

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class BasisFactor:
    """
    Sparse LU of a basis matrix followed by one product-form eta per pivot. An eta stores the pivot position,
    the pivot element and the other nonzeros of the entering column in the previous basis.
    """

    def __init__(self, matrix: sparse.csc_matrix, pivot_tolerance: float) -> None:
        self.size: int = matrix.shape[0]
        self.etas: list[tuple[int, float, np.ndarray, np.ndarray]] = []
        self.lu = None
        if self.size == 0:
            return
        try:
            self.lu = splu(matrix)
        except RuntimeError as e:
            raise NumericalFailureException(f"Basis matrix is singular: {e}")
        diagonal: np.ndarray = np.abs(self.lu.U.diagonal())
        if diagonal.min() <= pivot_tolerance * max(1.0, float(diagonal.max())):
            raise NumericalFailureException("Basis matrix is singular.")

    def ftran(self, column: np.ndarray) -> np.ndarray:
        """
        Solves B w = column for the current basis.
        """
        if self.lu is None:
            return np.zeros(0)
        w: np.ndarray = self.lu.solve(np.asarray(column, dtype=float))
        for position, pivot, rows, values in self.etas:
            ratio: float = w[position] / pivot
            if ratio != 0.0:
                w[rows] -= ratio * values
            w[position] = ratio
        return w

    def btran(self, row: np.ndarray) -> np.ndarray:
        """
        Solves y B = row for the current basis.
        """
        if self.lu is None:
            return np.zeros(0)
        z: np.ndarray = np.array(row, dtype=float)
        for position, pivot, rows, values in reversed(self.etas):
            z[position] = (z[position] - z[rows] @ values) / pivot
        return self.lu.solve(z, trans="T")

    def update(self, position: int, alpha: np.ndarray) -> None:
        nonzero: np.ndarray = alpha != 0.0
        nonzero[position] = False
        rows: np.ndarray = np.flatnonzero(nonzero)
        self.etas.append((position, float(alpha[position]), rows, alpha[rows].copy()))


class SimplexSolver:
    """
    Bounded-variable revised simplex on a sparse LU factorization with eta updates.

    Column layout is [row logicals | phase-one artificials | model variables]. Every row owns one logical
    (bounds [0, inf) on <= rows, (-inf, 0] on >= rows, [0, 0] on = rows) and one artificial that is only
    unfixed during phase one. The solver keeps its basis between calls, so bound changes and added
    columns re-optimize from the previous basis.

    Primal pricing is devex with a Harris ratio test. After stall_threshold degenerate pivots in a row both
    the primal and the dual loop switch to Bland's rule and return to normal pricing after the next
    pivot that makes progress.
    """

    def __init__(self, model: LinearModel, settings: Optional[LpSettings] = None) -> None:
        self.model: LinearModel = model
        self.settings: LpSettings = settings if settings else LpSettings()
        self.m: int = model.num_rows
        self.b: np.ndarray = model.rhs()
        self.matrix: sparse.csc_matrix = model.matrix()
        self.art_sign: np.ndarray = np.ones(self.m)

        log_lower: np.ndarray = np.zeros(self.m)
        log_upper: np.ndarray = np.zeros(self.m)
        for i, row in enumerate(model.rows):
            if row.sense == LE:
                log_upper[i] = math.inf
            elif row.sense == GE:
                log_lower[i] = -math.inf
        self.lower: np.ndarray = np.concatenate([log_lower, np.zeros(self.m), model.lower_bounds()])
        self.upper: np.ndarray = np.concatenate([log_upper, np.zeros(self.m), model.upper_bounds()])
        self.costs: np.ndarray = np.concatenate([np.zeros(2 * self.m), model.costs()])

        self.state: np.ndarray = np.full(self.lower.size, AT_LOWER, dtype=int)
        self.basis: Optional[np.ndarray] = None
        self.factor: Optional[BasisFactor] = None
        self._iterations: int = 0
        self._since_refactor: int = 0

    @property
    def offset(self) -> int:
        return 2 * self.m

    def set_bounds(self, lower: np.ndarray, upper: np.ndarray) -> None:
        self.lower[self.offset :] = lower
        self.upper[self.offset :] = upper

    def add_columns(
        self, columns: Sequence[tuple[str, float, dict[int, float]]], upper: float = math.inf
    ) -> list[int]:
        """
        Appends non-negative columns to the model and to the solver. New columns enter nonbasic at zero,
        so a primal feasible basis stays primal feasible.

        Args:
            columns (Sequence[tuple[str, float, dict[int, float]]]): Name, cost and row coefficients.
            upper (float): Upper bound of every new column.

        Returns:
            Model indices of the new variables.
        """
        indices: list[int] = []
        data: list[float] = []
        row_ids: list[int] = []
        col_ids: list[int] = []
        for k, (name, cost, coefficients) in enumerate(columns):
            index: int = self.model.add_variable(name, 0.0, upper, cost)
            for i, value in coefficients.items():
                self.model.rows[i].coefficients[index] = float(value)
                row_ids.append(i)
                col_ids.append(k)
                data.append(float(value))
            indices.append(index)
        block: sparse.csc_matrix = sparse.csc_matrix((data, (row_ids, col_ids)), shape=(self.m, len(columns)))
        self.matrix = sparse.hstack([self.matrix, block], format="csc")
        count: int = len(columns)
        self.lower = np.concatenate([self.lower, np.zeros(count)])
        self.upper = np.concatenate([self.upper, np.full(count, upper)])
        self.costs = np.concatenate([self.costs, [cost for _, cost, _ in columns]])
        self.state = np.concatenate([self.state, np.full(count, AT_LOWER, dtype=int)])
        return indices

    def solve(
        self,
        basis_hint: Optional[Iterable[str]] = None,
        force_bland: bool = False,
        deadline: Optional[Deadline] = None,
    ) -> LpSolution:
        """
        Optimizes from the current basis when it is primal or dual feasible, otherwise from scratch.

        Args:
            basis_hint (Optional[Iterable[str]]): Names of variables to start basic.
            force_bland (bool): Start with Bland's rule instead of waiting for a stall.
            deadline (Optional[Deadline]): Checked before every pivot, the solve stops with time-limit once it expires.

        Returns:
            LP solution.
        """
        self._iterations = 0
        status: Optional[str] = None
        if basis_hint is not None:
            self._install_hint(basis_hint)
        if self.basis is not None:
            try:
                self._refactor()
                status = self._warm_start(force_bland, deadline)
            except NumericalFailureException:
                logger.debug("Warm basis is singular, starting over.")
                status = None
        if status is None:
            status = self._cold_start(force_bland, deadline)
        return self._solution(status)

    def basis_names(self) -> list[str]:
        if self.basis is None:
            return []
        return [self.model.variables[j - self.offset].name for j in self.basis if j >= self.offset]

    def _column(self, j: int) -> np.ndarray:
        column: np.ndarray = np.zeros(self.m)
        if j < self.m:
            column[j] = 1.0
        elif j < self.offset:
            column[j - self.m] = self.art_sign[j - self.m]
        else:
            k: int = j - self.offset
            start, end = self.matrix.indptr[k], self.matrix.indptr[k + 1]
            column[self.matrix.indices[start:end]] = self.matrix.data[start:end]
        return column

    def _matvec(self, x: np.ndarray) -> np.ndarray:
        return x[: self.m] + self.art_sign * x[self.m : self.offset] + self.matrix @ x[self.offset :]

    def _rmatvec(self, y: np.ndarray) -> np.ndarray:
        return np.concatenate([y, self.art_sign * y, self.matrix.T @ y])

    def _basis_matrix(self) -> sparse.csc_matrix:
        assert self.basis is not None
        positions: np.ndarray = np.arange(self.m)
        logical: np.ndarray = self.basis < self.m
        artificial: np.ndarray = (self.basis >= self.m) & (self.basis < self.offset)
        structural: np.ndarray = self.basis >= self.offset
        block: sparse.coo_matrix = self.matrix[:, self.basis[structural] - self.offset].tocoo()
        rows: np.ndarray = np.concatenate([self.basis[logical], self.basis[artificial] - self.m, block.row])
        columns: np.ndarray = np.concatenate(
            [positions[logical], positions[artificial], positions[structural][block.col]]
        )
        data: np.ndarray = np.concatenate(
            [np.ones(int(logical.sum())), self.art_sign[self.basis[artificial] - self.m], block.data]
        )
        return sparse.csc_matrix((data, (rows, columns)), shape=(self.m, self.m))

    def _refactor(self) -> None:
        self.factor = BasisFactor(self._basis_matrix(), self.settings.pivot_tolerance)
        self._since_refactor = 0

    def _normalize_states(self) -> None:
        finite_lower: np.ndarray = np.isfinite(self.lower)
        finite_upper: np.ndarray = np.isfinite(self.upper)
        nonbasic: np.ndarray = self.state != BASIC
        lower_bad = nonbasic & (self.state == AT_LOWER) & ~finite_lower
        upper_bad = nonbasic & (self.state == AT_UPPER) & ~finite_upper
        zero_bad = nonbasic & (self.state == AT_ZERO) & (finite_lower | finite_upper)
        for mask in (lower_bad, upper_bad, zero_bad):
            self.state[mask & finite_lower] = AT_LOWER
            self.state[mask & ~finite_lower & finite_upper] = AT_UPPER
            self.state[mask & ~finite_lower & ~finite_upper] = AT_ZERO

    def _values(self) -> np.ndarray:
        x: np.ndarray = np.zeros(self.lower.size)
        x[self.state == AT_LOWER] = self.lower[self.state == AT_LOWER]
        x[self.state == AT_UPPER] = self.upper[self.state == AT_UPPER]
        if self.basis is not None and self.m > 0:
            x[self.basis] = self.factor.ftran(self.b - self._matvec(x))
        return x

    def _reduced_costs(self, costs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        assert self.basis is not None
        y: np.ndarray = self.factor.btran(costs[self.basis]) if self.m > 0 else np.zeros(0)
        return y, costs - self._rmatvec(y)

    def _pivot_row(self, position: int) -> np.ndarray:
        unit: np.ndarray = np.zeros(self.m)
        unit[position] = 1.0
        return self._rmatvec(self.factor.btran(unit))

    def _primal_infeasibility(self, x: np.ndarray) -> np.ndarray:
        assert self.basis is not None
        values: np.ndarray = x[self.basis]
        return np.maximum(self.lower[self.basis] - values, values - self.upper[self.basis])

    def _dual_infeasible(self, d: np.ndarray) -> np.ndarray:
        tolerance: float = self.settings.optimality_tolerance
        movable: np.ndarray = self.upper > self.lower
        return movable & (
            ((self.state == AT_LOWER) & (d < -tolerance))
            | ((self.state == AT_UPPER) & (d > tolerance))
            | ((self.state == AT_ZERO) & (np.abs(d) > tolerance))
        )

    def _limit(self, deadline: Optional[Deadline]) -> Optional[str]:
        if self._iterations >= self.settings.max_iterations:
            return ITERATION_LIMIT
        if deadline is not None and deadline.expired():
            return TIME_LIMIT
        return None

    def _warm_start(self, force_bland: bool, deadline: Optional[Deadline]) -> Optional[str]:
        self._normalize_states()
        x: np.ndarray = self._values()
        if self._primal_infeasibility(x).max(initial=0.0) <= self.settings.feasibility_tolerance:
            return self._primal(self.costs, force_bland, deadline)
        _, d = self._reduced_costs(self.costs)
        # Boxed columns become dual feasible by sitting at the bound their reduced cost favours
        boxed: np.ndarray = np.isfinite(self.lower) & np.isfinite(self.upper) & (self.state != BASIC)
        self.state[boxed & (d < 0)] = AT_UPPER
        self.state[boxed & (d > 0)] = AT_LOWER
        if self._dual_infeasible(d).any():
            return None
        status: str = self._dual(self.costs, force_bland, deadline)
        if status == OPTIMAL:
            status = self._primal(self.costs, force_bland, deadline)
        return status

    def _cold_start(self, force_bland: bool, deadline: Optional[Deadline]) -> str:
        self.basis = None
        self.lower[self.m : self.offset] = 0.0
        self.upper[self.m : self.offset] = 0.0
        self.art_sign = np.ones(self.m)
        self.state[:] = AT_LOWER
        self.state[: self.m][~np.isfinite(self.lower[: self.m])] = AT_UPPER
        self._normalize_states()

        x: np.ndarray = self._values()
        residual: np.ndarray = self.b - self.matrix @ x[self.offset :]
        basis: list[int] = []
        artificials: list[int] = []
        tolerance: float = self.settings.feasibility_tolerance
        for i in range(self.m):
            if self.lower[i] - tolerance <= residual[i] <= self.upper[i] + tolerance:
                basis.append(i)
            else:
                self.art_sign[i] = 1.0 if residual[i] >= 0 else -1.0
                self.upper[self.m + i] = math.inf
                basis.append(self.m + i)
                artificials.append(self.m + i)
        self.basis = np.array(basis, dtype=int)
        self.state[self.basis] = BASIC
        self._refactor()

        if artificials:
            logger.debug(f"Phase one with {len(artificials)} artificials on {self.m} rows.")
            phase_one: np.ndarray = np.zeros(self.costs.size)
            phase_one[artificials] = 1.0
            status: str = self._primal(phase_one, force_bland, deadline)
            infeasibility: float = float(self._values()[self.m : self.offset].sum())
            self.upper[self.m : self.offset] = 0.0
            if status in (ITERATION_LIMIT, TIME_LIMIT):
                return status
            scale: float = max(1.0, float(np.abs(self.b).max(initial=0.0)))
            if infeasibility > self.settings.feasibility_tolerance * scale:
                return INFEASIBLE
        return self._primal(self.costs, force_bland, deadline)

    def _primal(self, costs: np.ndarray, force_bland: bool, deadline: Optional[Deadline]) -> str:
        bland: bool = force_bland
        stalled: int = 0
        weights: np.ndarray = np.ones(self.lower.size)
        while True:
            limit: Optional[str] = self._limit(deadline)
            if limit is not None:
                return limit
            x: np.ndarray = self._values()
            _, d = self._reduced_costs(costs)
            eligible: np.ndarray = self._dual_infeasible(d)
            if not eligible.any():
                return OPTIMAL
            candidates: np.ndarray = np.flatnonzero(eligible)
            if bland:
                entering: int = int(candidates[0])
            else:
                entering = int(candidates[np.argmax(d[candidates] ** 2 / weights[candidates])])
            direction: float = 1.0 if d[entering] < 0 else -1.0
            alpha: np.ndarray = self.factor.ftran(self._column(entering)) if self.m > 0 else np.zeros(0)

            step, position, to_upper = self._ratio_test(x, alpha, direction, bland)
            flip: float = self.upper[entering] - self.lower[entering]
            if flip <= step:
                if math.isinf(flip):
                    return UNBOUNDED
                self.state[entering] = AT_UPPER if direction > 0 else AT_LOWER
                step, position = flip, -1
            self._iterations += 1
            if position >= 0:
                if not bland:
                    self._update_devex(weights, position, entering, alpha)
                self._pivot(position, entering, alpha, to_upper)

            if step > self.settings.feasibility_tolerance:
                if bland and stalled:
                    logger.debug("Primal simplex made progress, leaving Bland's rule.")
                bland, stalled = False, 0
            else:
                stalled += 1
                if not bland and stalled >= self.settings.stall_threshold:
                    logger.debug(f"Primal simplex stalled for {stalled} pivots, switching to Bland's rule.")
                    bland = True

    def _update_devex(self, weights: np.ndarray, position: int, entering: int, alpha: np.ndarray) -> None:
        assert self.basis is not None
        pivot: float = float(alpha[position])
        reference: float = float(weights[entering])
        ratios: np.ndarray = self._pivot_row(position) / pivot
        nonbasic: np.ndarray = self.state != BASIC
        weights[nonbasic] = np.maximum(weights[nonbasic], ratios[nonbasic] ** 2 * reference)
        weights[int(self.basis[position])] = max(reference / pivot**2, 1.0)
        if weights.max() > DEVEX_RESET:
            weights[:] = 1.0

    def _ratio_test(self, x: np.ndarray, alpha: np.ndarray, direction: float, bland: bool) -> tuple[float, int, bool]:
        """
        Leaving position of a primal step. Bland takes the lowest basic index among the tied minimum ratios.
        Otherwise a Harris pass first bounds the step with every bound relaxed by half the feasibility
        tolerance, then takes the largest pivot among the rows whose exact ratio fits under that bound.

        Returns:
            Step length, leaving position or -1 when no basic variable blocks, and whether it leaves at its upper bound.
        """
        assert self.basis is not None
        movement: np.ndarray = direction * alpha
        values: np.ndarray = x[self.basis]
        lower: np.ndarray = self.lower[self.basis]
        upper: np.ndarray = self.upper[self.basis]
        decreasing: np.ndarray = movement > self.settings.pivot_tolerance
        increasing: np.ndarray = movement < -self.settings.pivot_tolerance
        if not (decreasing.any() or increasing.any()):
            return math.inf, -1, False

        def ratios(slack: float) -> np.ndarray:
            result: np.ndarray = np.full(self.m, math.inf)
            with np.errstate(invalid="ignore"):
                result[decreasing] = (values[decreasing] - lower[decreasing] + slack) / movement[decreasing]
                result[increasing] = (upper[increasing] + slack - values[increasing]) / -movement[increasing]
            return np.where(np.isnan(result), math.inf, result)

        exact: np.ndarray = np.maximum(ratios(0.0), 0.0)
        if bland:
            step: float = float(exact.min())
            if math.isinf(step):
                return step, -1, False
            ties: np.ndarray = np.flatnonzero(exact <= step + self.settings.feasibility_tolerance)
            position: int = int(ties[np.argmin(self.basis[ties])])
        else:
            bound: float = max(float(ratios(0.5 * self.settings.feasibility_tolerance).min()), 0.0)
            if math.isinf(bound):
                return bound, -1, False
            ties = np.flatnonzero(exact <= bound)
            position = int(ties[np.argmax(np.abs(alpha[ties]))])
        return float(exact[position]), position, bool(increasing[position])

    def _dual(self, costs: np.ndarray, force_bland: bool, deadline: Optional[Deadline]) -> str:
        assert self.basis is not None
        bland: bool = force_bland
        stalled: int = 0
        tolerance: float = self.settings.pivot_tolerance
        optimality: float = self.settings.optimality_tolerance
        while True:
            limit: Optional[str] = self._limit(deadline)
            if limit is not None:
                return limit
            x: np.ndarray = self._values()
            infeasibility: np.ndarray = self._primal_infeasibility(x)
            violated: np.ndarray = np.flatnonzero(infeasibility > self.settings.feasibility_tolerance)
            if violated.size == 0:
                return OPTIMAL
            if bland:
                position: int = int(violated[np.argmin(self.basis[violated])])
            else:
                position = int(violated[np.argmax(infeasibility[violated])])
            leaving: int = int(self.basis[position])
            above: bool = x[leaving] > self.upper[leaving]

            _, d = self._reduced_costs(costs)
            row: np.ndarray = self._pivot_row(position)
            sign: float = 1.0 if above else -1.0
            signed: np.ndarray = sign * row
            movable: np.ndarray = (self.upper > self.lower) & (self.state != BASIC)
            candidates: np.ndarray = movable & (
                ((self.state == AT_LOWER) & (signed > tolerance))
                | ((self.state == AT_UPPER) & (signed < -tolerance))
                | ((self.state == AT_ZERO) & (np.abs(row) > tolerance))
            )
            indices: np.ndarray = np.flatnonzero(candidates)
            if indices.size == 0:
                return INFEASIBLE
            magnitude: np.ndarray = np.abs(row[indices])
            ratios: np.ndarray = np.abs(d[indices]) / magnitude
            if bland:
                ties: np.ndarray = indices[ratios <= float(ratios.min()) + optimality]
                entering: int = int(ties.min())
            else:
                # Harris pass on the dual side: bound the step with relaxed reduced costs, then take the largest pivot
                bound: float = float(((np.abs(d[indices]) + optimality) / magnitude).min())
                fits: np.ndarray = np.flatnonzero(ratios <= bound)
                entering = int(indices[fits[np.argmax(magnitude[fits])]])
            step: float = float(abs(d[entering]) / abs(row[entering]))

            alpha: np.ndarray = self.factor.ftran(self._column(entering))
            self._iterations += 1
            self._pivot(position, entering, alpha, above)

            if step > optimality:
                if bland and stalled:
                    logger.debug("Dual simplex made progress, leaving Bland's rule.")
                bland, stalled = False, 0
            else:
                stalled += 1
                if not bland and stalled >= self.settings.stall_threshold:
                    logger.debug(f"Dual simplex stalled for {stalled} pivots, switching to Bland's rule.")
                    bland = True

    def _pivot(self, position: int, entering: int, alpha: np.ndarray, leave_to_upper: bool) -> None:
        assert self.basis is not None
        if abs(alpha[position]) <= self.settings.pivot_tolerance:
            raise NumericalFailureException(f"Pivot element {alpha[position]:.3e} is too small.")
        leaving: int = int(self.basis[position])
        self.state[leaving] = AT_UPPER if leave_to_upper else AT_LOWER
        self.basis[position] = entering
        self.state[entering] = BASIC
        self.factor.update(position, alpha)
        self._since_refactor += 1
        if self._since_refactor >= self.settings.refactor_period:
            self._refactor()

    def _install_hint(self, names: Iterable[str]) -> None:
        columns: list[int] = []
        for name in names:
            index: Optional[int] = self.model.find_variable(name)
            if index is not None and self.offset + index not in columns:
                columns.append(self.offset + index)
        selected: list[int] = []
        pivot_rows: list[int] = []
        if columns and self.m > 0:
            hinted: np.ndarray = np.column_stack([self._column(j) for j in columns])
            _, r, order = scipy.linalg.qr(hinted, mode="economic", pivoting=True)
            diagonal: np.ndarray = np.abs(np.diag(r))
            threshold: float = self.settings.pivot_tolerance * max(1.0, float(diagonal.max(initial=0.0)))
            rank: int = int(np.sum(diagonal > threshold))
            selected = [columns[k] for k in sorted(order[:rank])]
            if selected:
                permutation, _, _ = scipy.linalg.lu(np.column_stack([self._column(j) for j in selected]))
                pivot_rows = [int(np.argmax(permutation[:, k])) for k in range(len(selected))]
        covered: set[int] = set(pivot_rows)
        basis: list[int] = selected + [i for i in range(self.m) if i not in covered]

        self.lower[self.m : self.offset] = 0.0
        self.upper[self.m : self.offset] = 0.0
        self.state[:] = AT_LOWER
        self.state[: self.m][~np.isfinite(self.lower[: self.m])] = AT_UPPER
        self.basis = np.array(basis, dtype=int)
        self.state[self.basis] = BASIC

    def _solution(self, status: str) -> LpSolution:
        model_size: int = self.costs.size - self.offset
        if self.basis is None:
            zeros: np.ndarray = np.zeros(model_size)
            return LpSolution(status, math.nan, zeros, np.zeros(self.m), zeros.copy(), self._iterations)
        x: np.ndarray = self._values()
        y, d = self._reduced_costs(self.costs)
        primal: np.ndarray = x[self.offset :]
        objective: float = float(self.costs[self.offset :] @ primal) + self.model.objective_offset
        if status == INFEASIBLE:
            objective = math.inf
        elif status == UNBOUNDED:
            objective = -math.inf
        logger.debug(f"LP {self.model.name}: {status} after {self._iterations} iterations, objective {objective}.")
        return LpSolution(
            status=status,
            objective=objective,
            primal=primal.copy(),
            dual=y.copy(),
            reduced_costs=d[self.offset :].copy(),
            iterations=self._iterations,
            basis=self.basis_names(),
        )


def solve_lp(
    model: LinearModel,
    basis_hint: Optional[Iterable[str]] = None,
    settings: Optional[LpSettings] = None,
) -> LpSolution:
    """
    Solves the continuous relaxation of a model, integrality flags are ignored.

    Args:
        model (LinearModel): Model to solve.
        basis_hint (Optional[Iterable[str]]): Variables to start basic.
        settings (Optional[LpSettings]): Tolerances and limits.

    Returns:
        LP solution with status optimal, infeasible or unbounded.
    """
    solution: LpSolution = SimplexSolver(model, settings).solve(basis_hint)
    if solution.status == ITERATION_LIMIT:
        raise IterationLimitException(f"Model {model.name} stopped after {solution.iterations} iterations.")
    return solution
