"""Readers and writers for pair files, ground-truth tables and result CSVs."""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from pathlib import Path

from .inference import CausalVerdict, Direction

RESULTS_HEADER = ["pair_id", "ground_truth", "direction", "s_xy", "s_yx", "delta", "elapsed_s"]
CURVE_HEADER = ["rate", "accuracy"]

_DECIMAL = re.compile(r"^([+-]?)(\d*)\.(\d*)$")
_INTEGER = re.compile(r"^([+-]?)(\d+)$")


class PairFileError(ValueError):
    """A pair file could not be parsed into two equal-length columns."""


def normalize_token(token: str) -> str:
    """Canonical form of a token; numerals drop trailing fractional zeros.

    ``"1.0"``, ``"1."`` and ``"+1"`` all become ``"1"``; ``"-0.0"`` becomes ``"0"``.
    Non-numeric tokens are returned stripped but otherwise untouched.
    """
    tok = token.strip()
    m = _DECIMAL.match(tok)
    if m and (m.group(2) or m.group(3)):
        sign, whole, frac = m.groups()
        frac = frac.rstrip("0")
        whole = whole.lstrip("0") or "0"
        body = f"{whole}.{frac}" if frac else whole
    else:
        m = _INTEGER.match(tok)
        if not m:
            return tok
        sign, body = m.group(1), m.group(2).lstrip("0") or "0"
    if body == "0" or sign != "-":
        return body
    return "-" + body


def format_bits(value: float) -> str:
    """Six decimals, with negative zero printed as ``0.000000``."""
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def split_fields(line: str) -> list[str]:
    if "," in line:
        return [f.strip() for f in line.split(",")]
    return line.split()


@dataclass(frozen=True)
class PairFile:
    path: Path
    column_x: int
    column_y: int
    x: tuple
    y: tuple

    @property
    def n(self) -> int:
        return len(self.x)


def parse_pair_text(
    text: str, column_x: int = 0, column_y: int = 1, header: bool = False, path: Path | str = "<text>"
) -> PairFile:
    rows = []
    width = None
    skipped_header = not header
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not skipped_header:
            skipped_header = True
            continue
        fields = split_fields(stripped)
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise PairFileError(f"{path}:{lineno}: expected {width} fields, found {len(fields)}")
        rows.append(fields)
    if not rows:
        raise PairFileError(f"{path}: no data rows")
    need = max(column_x, column_y)
    if min(column_x, column_y) < 0 or need >= width:
        raise PairFileError(f"{path}: column {need} requested but rows have {width} fields")
    x = tuple(normalize_token(r[column_x]) for r in rows)
    y = tuple(normalize_token(r[column_y]) for r in rows)
    return PairFile(Path(path), column_x, column_y, x, y)


def read_pair_file(path: Path | str, column_x: int = 0, column_y: int = 1, header: bool = False) -> PairFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise PairFileError(f"{path}: {exc.strerror or exc}") from exc
    return parse_pair_text(text, column_x, column_y, header, path)


def write_pair_file(path: Path | str, x, y) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for a, b in zip(x, y):
            fh.write(f"{a} {b}\n")


def read_ground_truth(path: Path | str) -> dict[str, Direction]:
    """Read ``pair_id<TAB>direction`` lines.

    A Tuebingen ``pairmeta.txt`` (``id cause_first cause_last effect_first
    effect_last weight``) is also accepted; its univariate entries map to
    ids ``pairNNNN`` and multivariate ones are dropped.
    """
    truth: dict[str, Direction] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t") if "\t" in line else line.split()
        if len(fields) == 2:
            truth[fields[0].strip()] = Direction.parse(fields[1])
            continue
        if len(fields) == 6:
            pid, cf, cl, ef, el = (int(float(v)) for v in fields[:5])
            if cf != cl or ef != el:
                continue
            if (cf, ef) == (1, 2):
                truth[f"pair{pid:04d}"] = Direction.X_TO_Y
            elif (cf, ef) == (2, 1):
                truth[f"pair{pid:04d}"] = Direction.Y_TO_X
            continue
        raise ValueError(f"{path}: cannot parse ground-truth line {line!r}")
    return truth


def write_ground_truth(path: Path | str, truth: dict[str, Direction]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pid, direction in truth.items():
            fh.write(f"{pid}\t{direction.value}\n")


def results_csv(results, timing: bool = False) -> str:
    """Results table; ``elapsed_s`` stays empty unless ``timing`` is set."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULTS_HEADER)
    for r in results:
        v = r.verdict
        elapsed = f"{r.elapsed:.6f}" if timing and r.elapsed is not None else ""
        writer.writerow(
            [r.pair_id, r.ground_truth.value, v.direction.value,
             format_bits(v.s_x_to_y), format_bits(v.s_y_to_x), format_bits(v.delta), elapsed]
        )
    return buf.getvalue()


def read_results_csv(text: str):
    from .evaluation import EvalResult
    from .inference import decide

    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not set(RESULTS_HEADER[:6]) <= set(reader.fieldnames):
        raise ValueError("not a results CSV: header must be " + ",".join(RESULTS_HEADER))
    out = []
    for row in reader:
        s_xy, s_yx = float(row["s_xy"]), float(row["s_yx"])
        delta = float(row["delta"])
        direction = Direction.parse(row["direction"]) if row["direction"] else decide(delta)
        elapsed = float(row["elapsed_s"]) if row.get("elapsed_s") else None
        out.append(
            EvalResult(row["pair_id"], Direction.parse(row["ground_truth"]),
                       CausalVerdict(s_xy, s_yx, delta, direction), elapsed)
        )
    return out


def curve_csv(curve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for rate, acc in curve.points:
        writer.writerow([f"{rate:.6f}", f"{acc:.6f}"])
    return buf.getvalue()
