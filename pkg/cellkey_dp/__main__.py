import sys

from .core.app import main

sys.exit(main())
