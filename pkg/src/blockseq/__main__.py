"""Module entry point: ``python -m blockseq``."""

from .cli import main

if __name__ == "__main__":
    main()
