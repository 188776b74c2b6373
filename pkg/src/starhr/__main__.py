import sys

from starhr.cli import main

sys.exit(main())
