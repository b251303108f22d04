import sys

from lcdist.cli import main

sys.exit(main())
