# Copyright 2026 psmear contributors
#
# SPDX-License-Identifier: MIT

import sys

from psmear.cli import main

if __name__ == '__main__':
    sys.exit(main())
