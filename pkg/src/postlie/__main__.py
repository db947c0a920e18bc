import sys

from postlie.cli import main

sys.exit(main())
