import logging
import sys
from sys import exit
from core.cli import run


def main() -> int:
    if sys.version_info < (3, 10):
        logging.error("This application requires Python 3.10 or higher.")
        return 1
    return run(sys.argv[1:])


if __name__ == "__main__":
    def exception_hook(exctype, value, traceback):
        logging.error("Unhandled exception", exc_info=value)
        sys.exit(1)
    sys.excepthook = exception_hook
    try:
        exit(main())
    except BaseException as e:
        if isinstance(e, SystemExit):
            raise
        logging.exception("Exception in main()")
        raise
