import logging
import math
from typing import Optional

from exceptions import EmptyModelException, FailedToReadException, MalformedModelException
from linear_model import EQ, GE, LE, LinearModel, Variable
from logger import get_logger
from utils import write_text_file

logger: logging.Logger = get_logger()

OBJECTIVE_ROW: str = "obj"
FIXED_NAME_LENGTH: int = 8

_SENSE_CODES: dict[str, str] = {LE: "L", GE: "G", EQ: "E"}
_CODE_SENSES: dict[str, str] = {code: sense for sense, code in _SENSE_CODES.items()}


def _number(value: float) -> str:
    if value == 0.0:
        return "0"
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _field(*parts: str) -> str:
    # Fixed-format positions 2-3, 5-12, 15-22 and 25-36, a longer name pushes the next field right
    line: str = f" {parts[0]:<2} {parts[1]:<8}"
    for index, part in enumerate(parts[2:]):
        line += f"  {part:<8}" if index % 2 == 0 else f"  {part:>12}"
    return line.rstrip()


def _marker(index: int, start: bool) -> str:
    tag: str = "'INTORG'" if start else "'INTEND'"
    return f"    M{index:<7}  'MARKER'                 {tag}"


def export_mps(model: LinearModel) -> str:
    """
    Writes a model as MPS. Rows follow model order, columns follow variable order, integer columns are wrapped
    in MARKER blocks and the objective constant goes to the RHS of the objective row.

    Fields sit at the fixed-format positions while every name fits in eight characters. Longer names push the
    following fields right, so such files are free-format MPS. Names containing whitespace fit neither format.

    Args:
        model (LinearModel): Model to export.

    Returns:
        File content.
    """
    if model.num_variables == 0:
        raise EmptyModelException(model.name)
    names: list[str] = [model.name] + [var.name for var in model.variables] + [row.name for row in model.rows]
    for name in names:
        if not name or any(character.isspace() for character in name):
            raise MalformedModelException(f"Name '{name}' cannot be written to MPS.")
    if max(len(name) for name in names[1:]) > FIXED_NAME_LENGTH:
        logger.debug(f"{model.name} has names longer than {FIXED_NAME_LENGTH} characters, writing free-format MPS.")

    column_rows: list[list[tuple[str, float]]] = [[] for _ in model.variables]
    for row in model.rows:
        for j, value in row.coefficients.items():
            column_rows[j].append((row.name, value))

    lines: list[str] = [f"NAME          {model.name}", "ROWS", f" N  {OBJECTIVE_ROW}"]
    lines += [f" {_SENSE_CODES[row.sense]}  {row.name}" for row in model.rows]

    lines.append("COLUMNS")
    in_integer_block: bool = False
    markers: int = 0
    for j, var in enumerate(model.variables):
        if var.integer != in_integer_block:
            lines.append(_marker(markers, var.integer))
            markers += 1
            in_integer_block = var.integer
        entries: list[tuple[str, float]] = []
        if var.cost != 0.0 or not column_rows[j]:
            entries.append((OBJECTIVE_ROW, var.cost))
        entries += column_rows[j]
        for row_name, value in entries:
            lines.append(_field("", var.name, row_name, _number(value)))
    if in_integer_block:
        lines.append(_marker(markers, False))

    lines.append("RHS")
    if model.objective_offset != 0.0:
        lines.append(_field("", "RHS", OBJECTIVE_ROW, _number(-model.objective_offset)))
    for row in model.rows:
        if row.rhs != 0.0:
            lines.append(_field("", "RHS", row.name, _number(row.rhs)))

    lines.append("BOUNDS")
    for var in model.variables:
        lines += _bound_lines(var)
    lines.append("ENDATA")
    logger.debug(f"Exported {model.name} to MPS: {model.stats()}")
    return "\n".join(lines) + "\n"


def _bound_lines(var: Variable) -> list[str]:
    def bound(kind: str, value: Optional[float] = None) -> str:
        if value is None:
            return _field(kind, "BND", var.name)
        return _field(kind, "BND", var.name, _number(value))

    if var.is_binary:
        return [bound("BV")]
    if var.lower == var.upper:
        return [bound("FX", var.lower)]
    if var.integer:
        lines: list[str] = [bound("LI", var.lower)] if math.isfinite(var.lower) else [bound("MI")]
        lines.append(bound("UI", var.upper) if math.isfinite(var.upper) else bound("PL"))
        return lines
    if var.lower == -math.inf and var.upper == math.inf:
        return [bound("FR")]
    lines = []
    if var.lower == -math.inf:
        lines.append(bound("MI"))
    elif var.lower != 0.0:
        lines.append(bound("LO", var.lower))
    if math.isfinite(var.upper):
        lines.append(bound("UP", var.upper))
    return lines


def write_mps(model: LinearModel, path: str) -> None:
    write_text_file(path, export_mps(model))
    logger.info(f"Model {model.name} written to {path}.")


def read_mps(content: str) -> LinearModel:
    """
    Parses MPS written by export_mps or any other writer using whitespace-separated fields.
    RANGES and maximization are not supported.

    Args:
        content (str): File content.

    Returns:
        Parsed model.
    """
    name: str = "model"
    objective: Optional[str] = None
    row_order: list[str] = []
    senses: dict[str, str] = {}
    columns: dict[str, dict[str, float]] = {}
    integer: dict[str, bool] = {}
    rhs: dict[str, float] = {}
    bounds: dict[str, list[float]] = {}
    section: Optional[str] = None
    in_integer_block: bool = False

    for number, raw in enumerate(content.splitlines(), start=1):
        if not raw.strip() or raw.startswith("*"):
            continue
        tokens: list[str] = raw.split()
        if not raw[0].isspace():
            section = tokens[0].upper()
            if section == "NAME":
                name = tokens[1] if len(tokens) > 1 else name
            elif section == "OBJSENSE" and len(tokens) > 1 and tokens[1].upper() in ("MAX", "MAXIMIZE"):
                raise MalformedModelException("Maximization models are not supported.")
            elif section == "RANGES":
                raise MalformedModelException("RANGES section is not supported.")
            elif section == "ENDATA":
                break
            continue

        if section == "OBJSENSE":
            if tokens[0].upper() in ("MAX", "MAXIMIZE"):
                raise MalformedModelException("Maximization models are not supported.")
        elif section == "ROWS":
            code, row_name = tokens[0].upper(), tokens[1]
            if code == "N":
                if objective is None:
                    objective = row_name
            elif code in _CODE_SENSES:
                senses[row_name] = _CODE_SENSES[code]
                row_order.append(row_name)
            else:
                raise MalformedModelException(f"Line {number}: unknown row type '{code}'.")
        elif section == "COLUMNS":
            if len(tokens) >= 3 and tokens[1].strip("'").upper() == "MARKER":
                in_integer_block = tokens[2].strip("'").upper() == "INTORG"
                continue
            column: str = tokens[0]
            if column not in columns:
                columns[column] = {}
                integer[column] = in_integer_block
            for row_name, value in _pairs(tokens[1:], number):
                columns[column][row_name] = columns[column].get(row_name, 0.0) + value
        elif section == "RHS":
            values: list[str] = tokens[1:] if len(tokens) % 2 == 1 else tokens
            for row_name, value in _pairs(values, number):
                rhs[row_name] = value
        elif section == "BOUNDS":
            _apply_bound(tokens, bounds, integer, columns, number)
        else:
            raise MalformedModelException(f"Line {number}: data outside of a known section.")

    model: LinearModel = LinearModel(name)
    for column, entries in columns.items():
        lower, upper = bounds.get(column, [0.0, math.inf])
        cost: float = entries.get(objective, 0.0) if objective else 0.0
        model.add_variable(column, lower, upper, cost, integer[column])
    for row_name in row_order:
        coefficients: list[tuple[int, float]] = [
            (model.variable(column), entries[row_name]) for column, entries in columns.items() if row_name in entries
        ]
        model.add_row(row_name, senses[row_name], rhs.get(row_name, 0.0), coefficients)
    if objective and objective in rhs:
        model.objective_offset = -rhs[objective]
    return model


def _pairs(tokens: list[str], number: int) -> list[tuple[str, float]]:
    if len(tokens) % 2 != 0:
        raise MalformedModelException(f"Line {number}: expected name and value pairs.")
    try:
        return [(tokens[k], float(tokens[k + 1])) for k in range(0, len(tokens), 2)]
    except ValueError as e:
        raise MalformedModelException(f"Line {number}: {e}")


def _apply_bound(
    tokens: list[str],
    bounds: dict[str, list[float]],
    integer: dict[str, bool],
    columns: dict[str, dict[str, float]],
    number: int,
) -> None:
    kind: str = tokens[0].upper()
    # Bound set name is optional for types without a value
    if kind in ("FR", "MI", "PL", "BV") and len(tokens) == 2:
        column: str = tokens[1]
        value: float = 0.0
    elif kind in ("FR", "MI", "PL", "BV") and len(tokens) >= 3 and tokens[2] in columns:
        column = tokens[2]
        value = 0.0
    elif len(tokens) >= 4:
        column = tokens[2]
        value = float(tokens[3])
    elif len(tokens) == 3:
        column = tokens[1]
        value = float(tokens[2])
    else:
        raise MalformedModelException(f"Line {number}: malformed bound.")
    if column not in columns:
        raise MalformedModelException(f"Line {number}: bound on unknown column '{column}'.")
    current: list[float] = bounds.setdefault(column, [0.0, math.inf])

    match kind:
        case "UP" | "UI":
            if value < 0 and current[0] == 0.0:
                logger.warning(f"Negative upper bound on {column} with zero lower bound, lower set to -inf.")
                current[0] = -math.inf
            current[1] = value
        case "LO" | "LI":
            current[0] = value
        case "FX":
            current[0] = current[1] = value
        case "FR":
            current[0], current[1] = -math.inf, math.inf
        case "MI":
            current[0] = -math.inf
        case "PL":
            current[1] = math.inf
        case "BV":
            current[0], current[1] = 0.0, 1.0
        case _:
            raise MalformedModelException(f"Line {number}: unknown bound type '{kind}'.")
    if kind in ("UI", "LI", "BV"):
        integer[column] = True


def read_mps_file(path: str) -> LinearModel:
    try:
        with open(path, "r", encoding="utf-8") as file:
            content: str = file.read()
    except OSError as e:
        raise FailedToReadException(path, str(e))
    return read_mps(content)
