"""
Result files.

Every CSV starts with a metadata block of ``# key: value`` lines (tool
version, command, dataset, method, config hash, seed, rng, generation time)
followed by the header row. Only the metadata block carries run-dependent
values such as the timestamp; everything below it is a pure function of the
config, which is what the determinism check compares.
"""
import csv
import logging
import math
from contextlib import contextmanager
from pathlib import Path

import openpyxl
from django.utils import timezone
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

from network.types import RNG_ALGORITHM
from pinvnet import __version__

logger = logging.getLogger(__name__)

COMMENT_PREFIX = "# "


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def strip_metadata(path) -> list[str]:
    """Lines of a result CSV without the metadata block."""
    with Path(path).open(encoding="utf-8") as handle:
        return [line for line in handle.read().splitlines() if not line.startswith(COMMENT_PREFIX.rstrip())]


def read_metadata(path) -> dict:
    metadata = {}
    with Path(path).open(encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith(COMMENT_PREFIX):
                break
            key, _, value = line[len(COMMENT_PREFIX):].rstrip("\n").partition(": ")
            metadata[key] = value
    return metadata


class ExportService:
    """
    Writes the result files of one command run into ``out_dir`` and keeps
    track of them, so that a failed run can take its partial outputs back.
    """

    def __init__(self, out_dir, *, command: str, dataset: str, config_hash: str, seed):
        self.out_dir = Path(out_dir)
        self.written: list[Path] = []
        self.base_metadata = {
            "version": f"pinvnet {__version__}",
            "command": command,
            "dataset": dataset,
            "config_hash": config_hash,
            "seed": seed,
            "rng": RNG_ALGORITHM,
        }

    def metadata(self, method=None, extra=None) -> dict:
        metadata = dict(self.base_metadata)
        if method is not None:
            metadata["method"] = method
        metadata.update(extra or {})
        metadata["generated_at"] = timezone.now().isoformat(timespec="seconds")
        return metadata

    def _target(self, filename) -> Path:
        path = Path(filename)
        if not path.is_absolute():
            path = self.out_dir / path
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def write_csv(self, filename, headers, rows, *, method=None, extra=None) -> Path:
        path = self._target(filename)
        self.written.append(path)
        with path.open("w", encoding="utf-8", newline="") as handle:
            for key, value in self.metadata(method, extra).items():
                handle.write(f"{COMMENT_PREFIX}{key}: {_cell(value)}\n")
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(headers)
            for row in rows:
                writer.writerow([_cell(value) for value in row])
        logger.info(f"wrote {path}")
        return path

    def write_xlsx(self, filename, sheets: dict, *, extra=None) -> Path:
        """
        One worksheet per entry of ``sheets`` (title -> (headers, rows)), each
        headed by the run metadata.
        """
        path = self._target(filename)
        self.written.append(path)

        wb = openpyxl.Workbook()
        wb.remove(wb.active)

        header_fill = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
        header_font = Font(bold=True, color="FFFFFF")
        info_font = Font(size=10, italic=True, color="666666")
        border = Border(
            left=Side(style="thin", color="D3D3D3"),
            right=Side(style="thin", color="D3D3D3"),
            top=Side(style="thin", color="D3D3D3"),
            bottom=Side(style="thin", color="D3D3D3"),
        )

        for title, (headers, rows) in sheets.items():
            # Worksheet titles are limited to 31 characters.
            ws = wb.create_sheet(title=title[:31])
            current_row = 1
            for key, value in self.metadata(extra=extra).items():
                ws.cell(row=current_row, column=1, value=f"{key}: {_cell(value)}").font = info_font
                current_row += 1
            current_row += 1

            for col_num, header in enumerate(headers, 1):
                cell = ws.cell(row=current_row, column=col_num, value=header)
                cell.fill = header_fill
                cell.font = header_font
                cell.alignment = Alignment(horizontal="center")
                cell.border = border

            for row_num, row in enumerate(rows, current_row + 1):
                for col_num, value in enumerate(row, 1):
                    if isinstance(value, float) and not math.isfinite(value):
                        value = _cell(value)
                    cell = ws.cell(row=row_num, column=col_num, value=value)
                    cell.border = border

            for col_num, header in enumerate(headers, 1):
                letter = get_column_letter(col_num)
                ws.column_dimensions[letter].width = min(max(len(header) + 2, 12), 40)
            ws.freeze_panes = f"A{current_row + 1}"

        wb.save(path)
        logger.info(f"wrote {path}")
        return path

    def discard(self) -> None:
        for path in self.written:
            try:
                path.unlink()
                logger.warning(f"removed partial output {path}")
            except FileNotFoundError:
                pass
        self.written = []

    @contextmanager
    def guard(self):
        """Remove every file written inside the block if the block raises."""
        try:
            yield self
        except BaseException:
            self.discard()
            raise
