"""Method table shared by the config layer and the experiment runner."""

from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError

BASELINES = ("NFS", "DLRC-baseline", "EuclidSelect-baseline")
DRA_METHODS = tuple(f"DRA-{m}-{r}" for m in ("PE", "TE") for r in ("eig", "exp"))
METHODS = BASELINES + DRA_METHODS + tuple(f"PCA+{name}" for name in DRA_METHODS)


@dataclass(frozen=True)
class MethodSpec:
    """
    Parsed method name.

    Baselines classify without training: ``decision`` is ``ratio`` (d_r / d_u)
    or ``related`` (d_r alone) and ``strategy`` fixes the unrelated group.
    """

    name: str
    trains: bool
    decision: str = "ratio"
    strategy: Optional[str] = None
    model: str = "PE"
    reg: str = "eig"
    pca: bool = False


def parse_method(name: str) -> MethodSpec:
    if name == "NFS":
        return MethodSpec(name=name, trains=False, strategy="nfs")
    if name == "DLRC-baseline":
        return MethodSpec(name=name, trains=False, decision="related", strategy="nfs")
    if name == "EuclidSelect-baseline":
        return MethodSpec(name=name, trains=False, strategy="euclid")
    if isinstance(name, str) and name in METHODS:
        pca = name.startswith("PCA+")
        _, model, reg = name[len("PCA+") if pca else 0 :].split("-")
        return MethodSpec(name=name, trains=True, model=model, reg=reg, pca=pca)
    raise ConfigError(f"unknown method {name!r}; expected one of {', '.join(METHODS)}")
