"""Local configuration management (.dra_py.local)."""

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

LOCAL_CONFIG_NAME = ".dra_py.local"


@dataclass
class LocalConfig:
    """
    Per-project CLI defaults stored at .dra_py.local.
    Command-line flags override every value here.
    """

    threads: int = 1
    format: str = "json"
    eig_backend: str = "jacobi"

    @classmethod
    def load(cls, path: Optional[Path] = None) -> Optional["LocalConfig"]:
        """
        Load local config from file.
        If path is not specified, searches upward from current directory.
        """
        if path is None:
            path = cls.find_config()

        if path is None or not path.exists():
            return None

        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
            defaults = cls()
            return cls(
                threads=int(data.get("threads", defaults.threads)),
                format=str(data.get("format", defaults.format)),
                eig_backend=str(data.get("eig_backend", defaults.eig_backend)),
            )
        except (json.JSONDecodeError, IOError, TypeError, ValueError, AttributeError):
            return None

    def save(self, path: Optional[Path] = None) -> None:
        """Save local config to file."""
        if path is None:
            path = Path.cwd() / LOCAL_CONFIG_NAME

        with open(path, "w", encoding="utf-8") as f:
            json.dump(asdict(self), f, indent=2, ensure_ascii=False)

    @staticmethod
    def find_config(start: Optional[Path] = None) -> Optional[Path]:
        """
        Search for .dra_py.local starting from ``start`` (default: current
        directory), walking up to root.
        """
        current = (start or Path.cwd()).resolve()

        while True:
            config_path = current / LOCAL_CONFIG_NAME
            if config_path.exists():
                return config_path

            if current == current.parent:
                return None

            current = current.parent
