import sys

from locality_lab.cli import main

sys.exit(main())
