import sys

from learnspace.cli import main

sys.exit(main())
