import sys

from affect.cli import main

sys.exit(main())
