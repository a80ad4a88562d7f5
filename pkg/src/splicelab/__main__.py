"""Allow ``python -m splicelab`` as an alternative to the console script."""

import sys

from splicelab.cli import main

if __name__ == "__main__":
    sys.exit(main())
