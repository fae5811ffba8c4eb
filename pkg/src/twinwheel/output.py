"""CSV and JSON emitters with exact integers and fixed-precision rationals."""
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

SCHEMA_VERSION = "1"
DEFAULT_PRECISION = 3
MAX_PRECISION = 15  # JSON numbers are doubles; more digits would not survive


def to_decimal(value, precision=DEFAULT_PRECISION):
    """Round a rational or float to ``precision`` significant digits."""
    ctx = Context(prec=precision, rounding=ROUND_HALF_EVEN)
    if isinstance(value, float):
        return ctx.plus(Decimal(repr(value)))
    frac = Fraction(value)
    return ctx.divide(Decimal(frac.numerator), Decimal(frac.denominator))


def render_cell(value, precision=DEFAULT_PRECISION):
    """Text for one cell: ints verbatim, rationals and floats rounded, booleans lower-case."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (Fraction, float)):
        return format(to_decimal(value, precision), "f")
    return str(value)


def _json_cell(value, precision):
    if isinstance(value, (Fraction, float)) and not isinstance(value, bool):
        return float(render_cell(value, precision))
    return value


@dataclass
class OutputRecord:
    command: str
    rows: list
    provenance: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def columns(self):
        cols = []
        for row in self.rows:
            for key in row:
                if key not in cols:
                    cols.append(key)
        return cols

    def to_json(self, precision=DEFAULT_PRECISION):
        body = {
            "schema_version": self.schema_version,
            "command": self.command,
            "rows": [{k: _json_cell(v, precision) for k, v in row.items()} for row in self.rows],
            "provenance": self.provenance,
        }
        return json.dumps(body, indent=2) + "\n"

    def to_csv(self, precision=DEFAULT_PRECISION):
        cols = ["schema_version", *self.columns()]
        lines = [",".join(_quote(c) for c in cols)]
        for row in self.rows:
            cells = [_quote(self.schema_version)]
            for c in cols[1:]:
                v = row.get(c)
                text = render_cell(v, precision)
                cells.append(_quote(text) if isinstance(v, str) else text)
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def render(self, fmt, precision=DEFAULT_PRECISION):
        if fmt == "json":
            return self.to_json(precision)
        if fmt == "csv":
            return self.to_csv(precision)
        raise ValueError(f"unknown format {fmt!r}")


def _quote(text):
    return '"' + text.replace('"', '""') + '"'
