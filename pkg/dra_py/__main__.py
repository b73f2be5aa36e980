"""Entry point for running dra_py as a module."""

from .cli import main

if __name__ == "__main__":
    main()
