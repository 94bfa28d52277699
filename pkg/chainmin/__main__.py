import sys

from chainmin.cli import main


if __name__ == "__main__":
    sys.exit(main())
