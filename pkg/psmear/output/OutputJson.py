# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import json
import logging
import sys
from typing import Optional, TextIO

from psmear.output.Output import Output, MAIN_TABLE

logger = logging.getLogger(__name__)


def _plain(value):
    if isinstance(value, (bool, int, str)):
        return value
    return float(value)


class OutputJson(Output):
    """
    Writes all tables into one JSON document that maps each table name to its list of records. The main table is
    stored under the key ``data``. Matrices keep their row-major form with dimension header.

    Example:

    >>> import io
    >>> stream = io.StringIO()
    >>> with OutputJson(stream=stream) as output:
    ...     output.table('', ['n', 'x'], [(1, 0.5)])
    >>> print(stream.getvalue(), end='')
    {"data": [{"n": 1, "x": 0.5}]}
    """

    def __init__(self, path: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
        super().__init__()
        self._path = path
        self._stream = stream

    def matrix(self, name: str, document: dict, key: str = 'data'):
        """
        Keeps the matrix document as it is, row-major with its dimension header.
        """
        if len(document[key]) != document['rows']:
            raise ValueError('Matrix does not match its {:d}x{:d} header.'.format(document['rows'], document['cols']))
        self._tables.append((name, None, dict(document)))

    def _write(self, tables):
        document = {}
        for name, header, rows in tables:
            key = 'data' if name == MAIN_TABLE else name
            if header is None:
                document[key] = rows
            else:
                document[key] = [dict(zip(header, map(_plain, row))) for row in rows]
        text = json.dumps(document) + '\n'
        if self._path is None:
            (sys.stdout if self._stream is None else self._stream).write(text)
        else:
            with open(self._path, 'w', encoding='utf8', newline='') as handle:
                handle.write(text)
            logger.debug('Wrote %d tables to %s.', len(tables), self._path)
