import copy
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

import numpy as np
from scipy import sparse

from exceptions import MalformedModelException

LE: str = "<="
EQ: str = "="
GE: str = ">="
SENSES: tuple[str, ...] = (LE, EQ, GE)

Coefficients = Union[Mapping[int, float], Iterable[tuple[int, float]]]


@dataclass
class Variable:
    name: str
    lower: float = 0.0
    upper: float = math.inf
    cost: float = 0.0
    integer: bool = False

    @property
    def is_binary(self) -> bool:
        return self.integer and self.lower == 0.0 and self.upper == 1.0


@dataclass
class Row:
    name: str
    sense: str
    rhs: float
    coefficients: dict[int, float] = field(default_factory=dict)


@dataclass(frozen=True)
class ModelStats:
    variables: int
    binaries: int
    integers: int
    rows: int
    nonzeros: int

    def __str__(self) -> str:
        return (
            f"{self.variables} variables ({self.binaries} binary, {self.integers} integer), "
            f"{self.rows} rows, {self.nonzeros} nonzeros"
        )


class LinearModel:
    """
    Minimization model with bounded variables and sparse rows, independent of any solver.
    """

    def __init__(self, name: str = "model") -> None:
        self.name: str = name
        self.variables: list[Variable] = []
        self.rows: list[Row] = []
        self.objective_offset: float = 0.0
        self._variable_index: dict[str, int] = {}
        self._row_index: dict[str, int] = {}

    def add_variable(
        self,
        name: str,
        lower: float = 0.0,
        upper: float = math.inf,
        cost: float = 0.0,
        integer: bool = False,
    ) -> int:
        if name in self._variable_index:
            raise MalformedModelException(f"Duplicate variable '{name}'.")
        if not name or any(c.isspace() for c in name):
            raise MalformedModelException(f"Invalid variable name '{name}'.")
        if lower > upper or lower == math.inf or upper == -math.inf:
            raise MalformedModelException(f"Variable '{name}' has bounds [{lower}, {upper}].")
        self._variable_index[name] = len(self.variables)
        self.variables.append(Variable(name, float(lower), float(upper), float(cost), integer))
        return len(self.variables) - 1

    def add_binary(self, name: str, cost: float = 0.0) -> int:
        return self.add_variable(name, 0.0, 1.0, cost, True)

    def add_row(self, name: str, sense: str, rhs: float, coefficients: Coefficients) -> int:
        if name in self._row_index:
            raise MalformedModelException(f"Duplicate row '{name}'.")
        if not name or any(c.isspace() for c in name):
            raise MalformedModelException(f"Invalid row name '{name}'.")
        if sense not in SENSES:
            raise MalformedModelException(f"Row '{name}' has unknown sense '{sense}'.")
        items: Iterable[tuple[int, float]] = (
            coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        )
        merged: dict[int, float] = {}
        for index, value in items:
            if not 0 <= index < len(self.variables):
                raise MalformedModelException(f"Row '{name}' references unknown variable {index}.")
            merged[index] = merged.get(index, 0.0) + float(value)
        self._row_index[name] = len(self.rows)
        self.rows.append(Row(name, sense, float(rhs), {k: v for k, v in merged.items() if v != 0.0}))
        return len(self.rows) - 1

    def variable(self, name: str) -> int:
        return self._variable_index[name]

    def find_variable(self, name: str) -> Optional[int]:
        return self._variable_index.get(name)

    def row(self, name: str) -> int:
        return self._row_index[name]

    def set_cost(self, index: int, cost: float) -> None:
        self.variables[index].cost = float(cost)

    def copy(self) -> "LinearModel":
        return copy.deepcopy(self)

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def integer_indices(self) -> list[int]:
        return [j for j, var in enumerate(self.variables) if var.integer]

    def binary_indices(self) -> list[int]:
        return [j for j, var in enumerate(self.variables) if var.is_binary]

    def costs(self) -> np.ndarray:
        return np.array([var.cost for var in self.variables], dtype=float)

    def lower_bounds(self) -> np.ndarray:
        return np.array([var.lower for var in self.variables], dtype=float)

    def upper_bounds(self) -> np.ndarray:
        return np.array([var.upper for var in self.variables], dtype=float)

    def rhs(self) -> np.ndarray:
        return np.array([row.rhs for row in self.rows], dtype=float)

    def matrix(self) -> sparse.csc_matrix:
        """
        Constraint matrix with one column per variable, in compressed sparse column form.
        """
        data: list[float] = []
        row_ids: list[int] = []
        col_ids: list[int] = []
        for i, row in enumerate(self.rows):
            for j, value in row.coefficients.items():
                row_ids.append(i)
                col_ids.append(j)
                data.append(value)
        return sparse.csc_matrix((data, (row_ids, col_ids)), shape=(self.num_rows, self.num_variables))

    def objective_value(self, values: np.ndarray) -> float:
        return float(self.costs() @ values) + self.objective_offset

    def is_feasible(self, values: np.ndarray, tolerance: float = 1e-6, integrality: bool = True) -> bool:
        if np.any(values < self.lower_bounds() - tolerance) or np.any(values > self.upper_bounds() + tolerance):
            return False
        if integrality:
            for j in self.integer_indices():
                if abs(values[j] - round(values[j])) > tolerance:
                    return False
        activity: np.ndarray = self.matrix() @ values
        for row, value in zip(self.rows, activity):
            if row.sense == LE and value > row.rhs + tolerance:
                return False
            if row.sense == GE and value < row.rhs - tolerance:
                return False
            if row.sense == EQ and abs(value - row.rhs) > tolerance:
                return False
        return True

    def stats(self) -> ModelStats:
        return ModelStats(
            variables=self.num_variables,
            binaries=len(self.binary_indices()),
            integers=len(self.integer_indices()),
            rows=self.num_rows,
            nonzeros=sum(len(row.coefficients) for row in self.rows),
        )
