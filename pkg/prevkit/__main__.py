from __future__ import absolute_import, print_function, unicode_literals

import sys

if __name__ == "__main__":

    from prevkit.utils.cli import main
    sys.exit(main(args=sys.argv[1:]))
