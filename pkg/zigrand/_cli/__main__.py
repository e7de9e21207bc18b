#!/usr/bin/python3

import importlib
import sys
from pathlib import Path

from docopt import DocoptExit, docopt, levenshtein_norm

from zigrand._config import CONFIG, __version__
from zigrand.exceptions import ZigguratError
from zigrand.utils import color, notify

__doc__ = """Usage:  zigrand <command> [<args>...] [options <args>]

Commands:
  sample             Draw variates from a distribution
  table              Show the ziggurat table built for a distribution
  kstest             Run the Kolmogorov-Smirnov meta-test on a sampler
  bench              Time ziggurat samplers against classical methods

Options:
  --help -h          Display this message
  --version          Show version and exit

Type 'zigrand <command> --help' for specific options and more information about
each command.

Data is written to stdout, diagnostics to stderr. The exit code is 0 on success,
1 when a meta-test rejects the sampler and 2 on usage or setup errors."""

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_ERROR = 2


def main():
    if "--version" in sys.argv:
        print(f"zigrand v{__version__}")
        sys.exit(EXIT_OK)

    if len(sys.argv) < 2 or sys.argv[1].startswith("-"):
        # this call triggers a SystemExit
        docopt(__doc__, ["-h"])

    cmd = sys.argv[1]
    cmd_list = [i.stem for i in Path(__file__).parent.glob("[!_]*.py")]
    if cmd not in cmd_list:
        distances = sorted([(i, levenshtein_norm(cmd, i)) for i in cmd_list], key=lambda k: k[1])
        if distances[0][1] <= 0.2:
            notify("ERROR", f"Invalid command. Did you mean 'zigrand {distances[0][0]}'?")
        else:
            notify("ERROR", "Invalid command. Try 'zigrand --help' for available commands.")
        sys.exit(EXIT_ERROR)

    CONFIG.argv["cli"] = cmd

    try:
        code = importlib.import_module(f"zigrand._cli.{cmd}").main()
    except DocoptExit as e:
        print(e, file=sys.stderr)
        sys.exit(EXIT_ERROR)
    except ZigguratError as e:
        notify("ERROR", color.format_tb(e))
        sys.exit(EXIT_ERROR)
    except Exception as e:
        print(color.format_tb(e, show_traceback=True), file=sys.stderr)
        sys.exit(EXIT_ERROR)
    sys.exit(code or EXIT_OK)


if __name__ == "__main__":
    main()
