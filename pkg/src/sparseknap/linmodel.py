"""Small exact-coefficient linear model container with LP-format round trip.

Just enough structure to carry the emitted inequality systems: named bounded
variables, named linear rows, an optional objective, and free-text notes that
become comments.  Coefficients are rationals; the writer renders integers
plainly and anything else as an exact fraction-free decimal when possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NameCollision

SENSES = ("<=", "=", ">=")


@dataclass(frozen=True)
class Variable:
    name: str
    lb: Fraction
    ub: Fraction


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[str, Fraction], ...]
    sense: str
    rhs: Fraction


@dataclass
class LinearModel:
    name: str = "model"
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: tuple[tuple[str, Fraction], ...] = ()
    minimize: bool = True
    notes: list[str] = field(default_factory=list)
    _var_names: set[str] = field(default_factory=set, repr=False)
    _row_names: set[str] = field(default_factory=set, repr=False)

    def add_var(self, name: str, lb=0, ub=1) -> str:
        if name in self._var_names:
            raise NameCollision(f"variable {name!r} declared twice")
        self._var_names.add(name)
        self.variables.append(Variable(name, Fraction(lb), Fraction(ub)))
        return name

    def add_constraint(self, name: str, terms: Iterable, sense: str, rhs) -> None:
        if sense not in SENSES:
            raise ValueError(f"unknown sense {sense!r}")
        if name in self._row_names:
            raise NameCollision(f"constraint {name!r} declared twice")
        clean = tuple((var, Fraction(coeff)) for var, coeff in terms)
        for var, _ in clean:
            if var not in self._var_names:
                raise ValueError(f"constraint {name!r} references unknown variable {var!r}")
        self._row_names.add(name)
        self.constraints.append(Constraint(name, clean, sense, Fraction(rhs)))

    def var_count(self) -> int:
        return len(self.variables)

    def row_count(self) -> int:
        return len(self.constraints)


def satisfies(model: LinearModel, assignment: dict[str, Fraction]) -> bool:
    """Exact feasibility of a full variable assignment (bounds and rows)."""
    for var in model.variables:
        value = Fraction(assignment[var.name])
        if value < var.lb or value > var.ub:
            return False
    for row in model.constraints:
        value = sum(
            (coeff * Fraction(assignment[name]) for name, coeff in row.terms),
            Fraction(0),
        )
        if row.sense == "<=" and value > row.rhs:
            return False
        if row.sense == ">=" and value < row.rhs:
            return False
        if row.sense == "=" and value != row.rhs:
            return False
    return True


def _render_number(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    as_float = float(value)
    if Fraction(as_float) == value:
        return repr(as_float)
    return f"{value.numerator}/{value.denominator}"


def _render_terms(terms: Sequence[tuple[str, Fraction]]) -> str:
    if not terms:
        return ""
    parts = []
    for pos, (var, coeff) in enumerate(terms):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        magnitude = -coeff if coeff < 0 else coeff
        body = var if magnitude == 1 else f"{_render_number(magnitude)} {var}"
        if not parts:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0 " + terms[0][0]


def write_lp(model: LinearModel) -> str:
    """Deterministic LP-format text for the model."""
    lines = [f"\\ {model.name}"]
    for note in model.notes:
        lines.append(f"\\ {note}")
    lines.append("Minimize" if model.minimize else "Maximize")
    lines.append(f" obj: {_render_terms(model.objective)}".rstrip())
    lines.append("Subject To")
    for row in model.constraints:
        lines.append(
            f" {row.name}: {_render_terms(row.terms)} {row.sense} {_render_number(row.rhs)}"
        )
    lines.append("Bounds")
    for var in model.variables:
        lines.append(
            f" {_render_number(var.lb)} <= {var.name} <= {_render_number(var.ub)}"
        )
    lines.append("End")
    return "\n".join(lines) + "\n"


def _parse_number(token: str) -> Fraction:
    if "/" in token:
        num, den = token.split("/")
        return Fraction(int(num), int(den))
    return Fraction(token)


def _parse_terms(text: str) -> tuple[tuple[str, Fraction], ...]:
    tokens = text.split()
    terms = []
    sign = Fraction(1)
    coeff: Fraction | None = None
    for token in tokens:
        if token == "+":
            sign, coeff = Fraction(1), None
        elif token == "-":
            sign, coeff = Fraction(-1), None
        elif token[0].isdigit() or token[0] in "+-.":
            coeff = sign * _parse_number(token)
        else:
            terms.append((token, sign * Fraction(1) if coeff is None else coeff))
            sign, coeff = Fraction(1), None
    return tuple(terms)


def parse_lp(text: str) -> LinearModel:
    """Reference parser for the dialect emitted by :func:`write_lp`."""
    name = "model"
    notes: list[str] = []
    minimize = True
    objective: tuple[tuple[str, Fraction], ...] = ()
    rows: list[tuple[str, tuple, str, Fraction]] = []
    bounds: list[tuple[str, Fraction, Fraction]] = []
    section = None
    first_comment = True
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            note = line[1:].strip()
            if first_comment:
                name = note
                first_comment = False
            else:
                notes.append(note)
            continue
        lowered = line.lower()
        if lowered in ("minimize", "maximize"):
            minimize = lowered == "minimize"
            section = "objective"
            continue
        if lowered == "subject to":
            section = "rows"
            continue
        if lowered == "bounds":
            section = "bounds"
            continue
        if lowered == "end":
            break
        if section == "objective":
            _, _, expr = line.partition(":")
            objective = _parse_terms(expr)
        elif section == "rows":
            row_name, _, body = line.partition(":")
            for sense in ("<=", ">=", "="):
                left, found, right = body.partition(sense)
                if found:
                    rows.append(
                        (row_name.strip(), _parse_terms(left), sense, _parse_number(right.strip()))
                    )
                    break
        elif section == "bounds":
            lb_text, _, rest = line.partition("<=")
            var_name, _, ub_text = rest.partition("<=")
            bounds.append(
                (var_name.strip(), _parse_number(lb_text.strip()), _parse_number(ub_text.strip()))
            )
    model = LinearModel(name=name, minimize=minimize, notes=notes)
    for var_name, lb, ub in bounds:
        model.add_var(var_name, lb, ub)
    for row_name, terms, sense, rhs in rows:
        model.add_constraint(row_name, terms, sense, rhs)
    model.objective = objective
    return model
