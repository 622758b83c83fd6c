import sys

from PTSpectra.run import main

if __name__ == "__main__":
    sys.exit(main())
