# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import csv
import logging
import sys
from typing import Optional, TextIO

from psmear.output.Output import Output, MAIN_TABLE
from psmear.util.file import sibling
from psmear.util.string import format_number

logger = logging.getLogger(__name__)


class OutputCsv(Output):
    """
    Writes each table as CSV with a one-line header, numbers formatted by
    :py:func:`~psmear.util.string.format_number` and '\\n' line endings. Without a path all tables go to the stream,
    separated by an empty line.

    Example:

    >>> import io
    >>> stream = io.StringIO()
    >>> with OutputCsv(stream=stream) as output:
    ...     output.table('', ['n', 'x'], [(1, 0.5), (2, 1 / 3)])
    >>> print(stream.getvalue(), end='')
    n,x
    1,0.5
    2,0.333333333333333
    """

    def __init__(self, path: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
        super().__init__()
        self._path = path
        self._stream = stream

    @staticmethod
    def _write_table(handle: TextIO, header, rows):
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(value) for value in row])

    def _write(self, tables):
        if self._path is None:
            stream = sys.stdout if self._stream is None else self._stream
            for index, (_, header, rows) in enumerate(tables):
                if index > 0:
                    stream.write('\n')
                self._write_table(stream, header, rows)
            return
        for name, header, rows in tables:
            path = self._path if name == MAIN_TABLE else sibling(self._path, name)
            with open(path, 'w', encoding='utf8', newline='') as handle:
                self._write_table(handle, header, rows)
            logger.debug('Wrote %d rows to %s.', len(rows), path)
