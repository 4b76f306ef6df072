#!/usr/bin/env python

import sys

from cellkey_dp.core.app import main

if __name__ == "__main__":
    sys.exit(main())
