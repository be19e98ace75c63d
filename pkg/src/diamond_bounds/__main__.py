import sys

from diamond_bounds.cli import main

sys.exit(main())
