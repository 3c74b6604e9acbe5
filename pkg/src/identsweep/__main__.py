import sys

from identsweep.cli import main

sys.exit(main())
