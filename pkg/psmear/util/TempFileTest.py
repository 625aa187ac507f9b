# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import os

from psmear.util.TempFile import TempFile
from psmear.util.file import sibling


def test_tempfile_is_removed():
    with TempFile() as f:
        assert 'psmear_' in f
        assert os.path.exists(f)

    assert not os.path.exists(f)


def test_tempfile_is_removed_on_exception():
    try:
        with TempFile('.csv') as f:
            open(f, 'w').close()
            raise ValueError
    except ValueError:
        pass

    assert not os.path.exists(f)


def test_siblings_are_removed():
    with TempFile('.csv') as f:
        open(sibling(f, 'boundary'), 'w').close()
        assert os.path.exists(sibling(f, 'boundary'))

    assert not os.path.exists(sibling(f, 'boundary'))
