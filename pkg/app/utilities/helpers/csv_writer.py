# app/utilities/helpers/csv_writer.py
import csv
import shlex
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from loguru import logger

from app.config.setting import settings


def metadata_line(tokens: Sequence[str]) -> str:
    """# <title> <version> | args: <flags that reproduce the run>"""
    slug = settings.TITLE.lower().replace(" ", "-")
    return f"# {slug} {settings.VERSION} | args: {shlex.join(tokens)}"


def parse_metadata_line(line: str) -> List[str]:
    """Flag tokens recorded in a metadata comment line"""
    if not line.startswith("#") or "| args:" not in line:
        raise ValueError("not a metadata line")
    return shlex.split(line.split("| args:", 1)[1])


def emit_csv(header: Sequence[str], rows: Iterable[Sequence[str]], path: str | Path,
             metadata_tokens: Optional[Sequence[str]] = None) -> Path:
    """
    Write UTF-8 CSV with an optional metadata comment, the header and the
    already formatted rows, in the order given. Parent directories are created.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="") as handle:
        if metadata_tokens is not None:
            handle.write(metadata_line(metadata_tokens) + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    logger.info(f"Wrote {count} rows to {path}")
    return path


def read_csv(path: str | Path) -> tuple[Optional[List[str]], List[str], List[List[str]]]:
    """(metadata tokens or None, header, rows) of a file written by emit_csv"""
    with Path(path).open(encoding="utf-8", newline="") as handle:
        lines = handle.read().splitlines()
    tokens = None
    if lines and lines[0].startswith("#"):
        tokens = parse_metadata_line(lines[0])
        lines = lines[1:]
    table = list(csv.reader(lines))
    return tokens, table[0], table[1:]
