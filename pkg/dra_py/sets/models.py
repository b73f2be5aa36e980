"""Data models for labeled image sets."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ClassMismatch, DimensionMismatch, InvalidInput, NonFinite

Origin = Tuple[int, int]


@dataclass(frozen=True)
class ImageSet:
    """
    One labeled set of feature vectors.

    ``samples`` is d x m, one feature vector per column. ``origin`` records
    (class_id, sample_index) of every column in the pool it was drawn from.
    """

    class_id: int
    samples: np.ndarray
    origin: Tuple[Origin, ...] = ()

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 2 or samples.shape[1] == 0:
            raise DimensionMismatch(
                f"samples must be a non-empty d x m matrix, got {samples.shape}"
            )
        if not np.all(np.isfinite(samples)):
            raise NonFinite(f"set of class {self.class_id} contains non-finite values")
        if self.class_id < 0:
            raise InvalidInput(f"class_id must be non-negative, got {self.class_id}")
        samples.setflags(write=False)
        origin = tuple(self.origin) or tuple((self.class_id, j) for j in range(samples.shape[1]))
        if len(origin) != samples.shape[1]:
            raise DimensionMismatch(
                f"{len(origin)} provenance entries for {samples.shape[1]} columns"
            )
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "origin", origin)

    @property
    def d(self) -> int:
        return self.samples.shape[0]

    @property
    def m(self) -> int:
        return self.samples.shape[1]

    def mean(self) -> np.ndarray:
        return self.samples.mean(axis=1)

    def reordered(self, order: Sequence[int]) -> "ImageSet":
        order = list(order)
        return ImageSet(
            class_id=self.class_id,
            samples=self.samples[:, order],
            origin=tuple(self.origin[j] for j in order),
        )

    def with_anchor_first(self) -> "ImageSet":
        """Move the first column to the end so it becomes the anchor."""
        return self.reordered(list(range(1, self.m)) + [0])

    def mapped(self, transform) -> "ImageSet":
        """Apply a column-wise linear map (callable on d x m matrices)."""
        return ImageSet(class_id=self.class_id, samples=transform(self.samples), origin=self.origin)


@dataclass(frozen=True)
class AnchoredDesign:
    """Columns of a set minus its anchor column (the last one)."""

    design: np.ndarray
    anchor: np.ndarray


@dataclass(frozen=True)
class Dataset:
    """
    A collection of image sets over classes 0..c-1 with uniform dimension.

    Classes may own several sets; ``class_set`` merges them in stored order.
    """

    sets: Tuple[ImageSet, ...]
    c: int = 0

    def __post_init__(self):
        sets = tuple(self.sets)
        if not sets:
            raise InvalidInput("a dataset needs at least one image set")
        dims = {s.d for s in sets}
        if len(dims) != 1:
            raise DimensionMismatch(f"sets disagree on feature dimension: {sorted(dims)}")
        c = self.c or max(s.class_id for s in sets) + 1
        present = {s.class_id for s in sets}
        if max(present) >= c:
            raise ClassMismatch(f"class id {max(present)} outside [0, {c})")
        missing = sorted(set(range(c)) - present)
        if missing:
            raise ClassMismatch(f"classes without any set: {missing}")
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "c", c)

    @property
    def d(self) -> int:
        return self.sets[0].d

    def class_ids(self) -> List[int]:
        return list(range(self.c))

    def class_set(self, k: int) -> ImageSet:
        members = [s for s in self.sets if s.class_id == k]
        if not members:
            raise ClassMismatch(f"no set for class {k}")
        if len(members) == 1:
            return members[0]
        return ImageSet(
            class_id=k,
            samples=np.hstack([s.samples for s in members]),
            origin=tuple(o for s in members for o in s.origin),
        )

    def sample_count(self, k: Optional[int] = None) -> int:
        return sum(s.m for s in self.sets if k is None or s.class_id == k)

    def all_samples(self) -> np.ndarray:
        return np.hstack([self.class_set(k).samples for k in self.class_ids()])

    def mapped(self, transform) -> "Dataset":
        return Dataset(sets=tuple(s.mapped(transform) for s in self.sets), c=self.c)

    def with_anchor_first(self) -> "Dataset":
        return Dataset(sets=tuple(s.with_anchor_first() for s in self.sets), c=self.c)


@dataclass
class FeaturePools:
    """
    Per-class sample pools (d x n_k matrices keyed by class id) with the
    optional per-sample ``set_hint`` strings of the dataset file.
    """

    pools: Dict[int, np.ndarray]
    hints: Dict[int, List[str]] = field(default_factory=dict)
    names: Dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.pools:
            raise InvalidInput("no sample pools")
        dims = {p.shape[0] for p in self.pools.values()}
        if len(dims) != 1:
            raise DimensionMismatch(f"pools disagree on feature dimension: {sorted(dims)}")
        for k, pool in self.pools.items():
            self.hints.setdefault(k, [""] * pool.shape[1])
            self.names.setdefault(k, str(k))

    @property
    def d(self) -> int:
        return next(iter(self.pools.values())).shape[0]

    def class_ids(self) -> List[int]:
        return sorted(self.pools)

    def counts(self) -> Dict[int, int]:
        return {k: self.pools[k].shape[1] for k in self.class_ids()}

    def mapped(self, transform) -> "FeaturePools":
        return FeaturePools(
            pools={k: transform(p) for k, p in self.pools.items()},
            hints={k: list(h) for k, h in self.hints.items()},
            names=dict(self.names),
        )
