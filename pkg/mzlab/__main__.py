import sys

from mzlab.cli import main

sys.exit(main())
