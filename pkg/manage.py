#!/usr/bin/env python
"""Command-line entry point for the Bell behavior toolkit."""
import sys


def main():
    try:
        import django  # noqa: F401
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    from cli.runner import run

    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
