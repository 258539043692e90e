import sys

from QNDGate.cli import main

# entry point; subcommands live in QNDGate/cli.py
sys.exit(main())
