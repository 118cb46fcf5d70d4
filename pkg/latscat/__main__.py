import sys

from latscat.cli import main

sys.exit(main())
