# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import glob
import os
import tempfile


class TempFile:
    """
    Temporary output path. The file and every sibling ``<stem>_*`` written next to it are removed on exit.

    Example:

    >>> import os
    >>> from psmear.util.TempFile import TempFile
    >>> with TempFile('.csv') as f:
    ...     f.endswith('.csv')
    True
    >>> os.path.exists(f)
    False
    """

    def __init__(self, suffix='', prefix='psmear_') -> None:
        self._suffix = suffix
        self._prefix = prefix
        self._file = None

    def __enter__(self):
        file_handle, self._file = tempfile.mkstemp(suffix=self._suffix, prefix=self._prefix)
        os.close(file_handle)
        return self._file

    def __exit__(self, exc_type, exc_val, exc_tb):
        stem, extension = os.path.splitext(self._file)
        for file in [self._file] + glob.glob(glob.escape(stem) + '_*' + extension):
            if os.path.exists(file):
                os.remove(file)
        return False
