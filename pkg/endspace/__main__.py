import sys

from endspace.cli import main

sys.exit(main())
