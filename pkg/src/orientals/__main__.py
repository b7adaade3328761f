import sys

from orientals.cli import main

sys.exit(main())
