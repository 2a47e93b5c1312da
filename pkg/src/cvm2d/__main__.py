import sys

from cvm2d.cli import main

sys.exit(main())
