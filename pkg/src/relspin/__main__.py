import sys

from relspin.cli import main

sys.exit(main())
