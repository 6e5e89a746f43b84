# pprtopk/__main__.py

import sys

from pprtopk.main import main

sys.exit(main())
