import csv
import dataclasses
import datetime
import json
import math
import typing

import click
import numpy as np

from jtd.model.validation import ValidationReport


def to_jsonable(obj: typing.Any) -> typing.Any:
    """
    Converts results to plain JSON types. Objects with an `as_dict` method are converted through it.
    """
    if hasattr(obj, 'as_dict'):
        return to_jsonable(obj.as_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def format_float(value: float) -> str:
    return format(float(value), '.17g')


class JSONEncoder(json.JSONEncoder):
    """
    JSON encoder writing floats with 17 significant digits, the same as the CSV output.
    """

    def iterencode(self, o, _one_shot=False):
        def floatstr(value: float) -> str:
            if math.isnan(value):
                return 'NaN'
            if math.isinf(value):
                return 'Infinity' if value > 0 else '-Infinity'
            return format_float(value)

        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        iterencode = json.encoder._make_iterencode({} if self.check_circular else None, self.default, encoder,
                                                   self.indent, floatstr, self.key_separator, self.item_separator,
                                                   self.sort_keys, self.skipkeys, _one_shot)
        return iterencode(o, 0)


def format_json(obj: typing.Any) -> str:
    """
    Reading the output back gives the exact values.
    """
    return json.dumps(to_jsonable(obj), indent=2, cls=JSONEncoder)


def _cell(value) -> str:
    if isinstance(value, (str, int, np.integer)):
        return str(value)
    return format_float(value)


def write_csv(stream: typing.TextIO, header: typing.Sequence[str], rows: typing.Iterable[typing.Sequence]) -> None:
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])


def write_gnuplot(stream: typing.TextIO, header: typing.Sequence[str], rows: typing.Iterable[typing.Sequence]) -> None:
    """
    Writes whitespace separated columns with a commented header, as read by gnuplot's `plot ... using 1:2`.
    """
    stream.write(f"# {' '.join(header)}\n")
    for row in rows:
        stream.write(' '.join(_cell(v) for v in row))
        stream.write('\n')


class JTDFormatter(click.HelpFormatter):
    """
    Formatter for human readable command output.
    """

    def write_heading(self, heading):
        self.write(click.style('%*s%s:\n' % (self.current_indent, '', heading), bold=True))

    def write_report(self, report: ValidationReport):
        with self.section("Validation"):
            if report.is_valid:
                self.write_text("All model invariants hold.")
            else:
                self.write_dl([(violation.subject, violation.message) for violation in report])

    def write_times(self, times: typing.Mapping[str, datetime.timedelta]):
        with self.section("Timing results"):
            self.write_dl([(key, f"{value.total_seconds():7.3f}") for key, value in times.items()])
