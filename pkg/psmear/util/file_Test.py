# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import os

from psmear.util.TempFile import TempFile
from psmear.util.file import get_content, resolve_output, sibling


def test_get_content():
    content = 'mu,eig_1\n' * 1000
    with TempFile('.csv') as tmp:
        with open(tmp, 'w') as fh:
            fh.write(content)
        assert get_content(tmp) == content


def test_resolve_output_uses_environment(monkeypatch):
    monkeypatch.setenv('PSMEAR_OUTPUT_DIR', '/data')

    assert resolve_output('scan.csv') == os.path.join('/data', 'scan.csv')
    assert resolve_output('/abs/scan.csv') == '/abs/scan.csv'
    assert resolve_output(None) is None


def test_resolve_output_without_environment(monkeypatch):
    monkeypatch.delenv('PSMEAR_OUTPUT_DIR', raising=False)

    assert resolve_output('scan.csv') == 'scan.csv'


def test_sibling():
    assert sibling('/x/scan.json', 'width') == '/x/scan_width.json'
    assert sibling('scan', 'width') == 'scan_width'
