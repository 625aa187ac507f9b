# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import os
from typing import Optional

OUTPUT_DIR_VARIABLE = 'PSMEAR_OUTPUT_DIR'


def get_content(file: str) -> str:
    with open(file, 'r', encoding='utf8') as file_handle:
        content = file_handle.read()
    return content


def resolve_output(path: Optional[str]) -> Optional[str]:
    """
    Relative output paths are placed below the directory named by the environment variable PSMEAR_OUTPUT_DIR when
    it is set. ``None`` stays ``None`` and means standard output.

    Example:

    >>> resolve_output('/tmp/grid.csv')
    '/tmp/grid.csv'
    """
    if path is None or os.path.isabs(path):
        return path
    base = os.environ.get(OUTPUT_DIR_VARIABLE)
    if base:
        return os.path.join(base, path)
    return path


def sibling(file: str, name: str) -> str:
    """
    A file next to ``file`` whose stem carries the suffix ``_name``.

    Example:

    >>> sibling('out/figure3.csv', 'boundary')
    'out/figure3_boundary.csv'
    """
    stem, extension = os.path.splitext(file)
    return '{:s}_{:s}{:s}'.format(stem, name, extension)
