import sys

from diamond_relay.cli import main

sys.exit(main())
