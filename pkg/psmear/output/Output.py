# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

from abc import ABC, abstractmethod
from typing import Any, Iterable, List, Sequence

MAIN_TABLE = ''
"""
Name of the table that goes to the output path itself. Further tables go to siblings ``<stem>_<name>``.
"""


class Output(ABC):
    """
    Sink for the tables produced by a command. Tables are collected and written once on :py:meth:`close`.
    """

    def __init__(self) -> None:
        super().__init__()
        self._tables = []

    def table(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]):
        rows = [list(row) for row in rows]
        for row in rows:
            if len(row) != len(header):
                raise ValueError('Row of length {:d} does not match header of length {:d}.'.format(
                    len(row), len(header)
                ))
        self._tables.append((name, list(header), rows))

    def matrix(self, name: str, document: dict, key: str = 'data'):
        """
        Adds a matrix given in its row-major form with dimension header, as produced by
        :py:meth:`~psmear.BandMatrix.BandMatrix.to_dict` or :py:meth:`~psmear.DysonMap.DysonMap.to_dict`.
        Tabular writers store one record per matrix row.

        :param name: Table name.
        :param document: Dictionary with the keys ``rows``, ``cols`` and the row-major ``key``.
        :param key: Entry of ``document`` that holds the rows.
        """
        rows = document[key]
        if len(rows) != document['rows'] or any(len(row) != document['cols'] for row in rows):
            raise ValueError('Matrix does not match its {:d}x{:d} header.'.format(document['rows'], document['cols']))
        header = ['row'] + ['col_{:d}'.format(j) for j in range(document['cols'])]
        self.table(name, header, [[i] + list(row) for i, row in enumerate(rows)])

    @property
    def tables(self) -> List[str]:
        return [name for name, _, _ in self._tables]

    def close(self):
        self._write(self._tables)
        self._tables = []

    @abstractmethod
    def _write(self, tables):
        pass

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is None:
            self.close()
        return False
