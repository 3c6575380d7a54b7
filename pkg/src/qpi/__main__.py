import sys

from qpi.cli import main

sys.exit(main())
