import sys

from crankshaft.cli import main

sys.exit(main())
