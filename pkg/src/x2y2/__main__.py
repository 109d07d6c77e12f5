import sys

from x2y2.cli import main

sys.exit(main())
