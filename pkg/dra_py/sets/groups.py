"""Difference-form designs and unrelated-group construction."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ClassMismatch, InvalidInput, NotEnoughSamples, SingleClass, TooFewSamples
from .models import AnchoredDesign, Dataset, ImageSet


def difference_transform(image_set: ImageSet) -> AnchoredDesign:
    """Subtract the last column (the anchor) from every other column."""
    if image_set.m < 2:
        raise TooFewSamples(
            f"set of class {image_set.class_id} has {image_set.m} sample(s); at least 2 needed"
        )
    anchor = image_set.samples[:, -1].copy()
    design = image_set.samples[:, :-1] - anchor[:, None]
    return AnchoredDesign(design=design, anchor=anchor)


def _check_class(train: Dataset, k: int) -> None:
    if train.c < 2:
        raise SingleClass("unrelated groups need at least two training classes")
    if not 0 <= k < train.c:
        raise ClassMismatch(f"class {k} outside [0, {train.c})")


def nfs_unrelated(train: Dataset, k: int) -> ImageSet:
    """
    Every training sample not labeled k, in class-then-sample order.

    The group ignores the probe entirely.
    """
    _check_class(train, k)
    others = [train.class_set(j) for j in train.class_ids() if j != k]
    return ImageSet(
        class_id=k,
        samples=np.hstack([s.samples for s in others]),
        origin=tuple(o for s in others for o in s.origin),
    )


def euclid_select_unrelated(train: Dataset, k: int, probe: ImageSet, count: int) -> ImageSet:
    """
    The ``count`` non-k training samples nearest (Euclidean) to the probe mean.

    Ties go to the smaller (class_id, sample index). Selected columns are
    returned in class-then-sample order, so selecting everything reproduces
    the NFS group column for column.
    """
    _check_class(train, k)
    if count < 1:
        raise InvalidInput(f"count must be positive, got {count}")
    candidates = nfs_unrelated(train, k)
    if count > candidates.m:
        raise NotEnoughSamples(
            f"asked for {count} unrelated samples but only {candidates.m} lie outside class {k}"
        )
    if probe.d != train.d:
        raise InvalidInput(f"probe dimension {probe.d} differs from training dimension {train.d}")
    distances = np.linalg.norm(candidates.samples - probe.mean()[:, None], axis=0)
    classes = np.array([o[0] for o in candidates.origin])
    indices = np.array([o[1] for o in candidates.origin])
    ranked = np.lexsort((indices, classes, distances))
    chosen = np.sort(ranked[:count])
    return candidates.reordered(chosen)


class UnrelatedStrategy:
    """How the unrelated group of class k is formed for a given probe."""

    name = ""

    def build(self, train: Dataset, k: int, probe: ImageSet) -> ImageSet:
        raise NotImplementedError


class NFS(UnrelatedStrategy):
    name = "nfs"

    def build(self, train: Dataset, k: int, probe: ImageSet) -> ImageSet:
        return nfs_unrelated(train, k)

    def __repr__(self) -> str:
        return "NFS()"


@dataclass(frozen=True)
class EuclidSelect(UnrelatedStrategy):
    """Euclidean nearest-sample selection; ``count=None`` takes m_k samples."""

    count: Optional[int] = None
    name = "euclid"

    def build(self, train: Dataset, k: int, probe: ImageSet) -> ImageSet:
        count = self.count if self.count is not None else train.sample_count(k)
        return euclid_select_unrelated(train, k, probe, count)


def make_strategy(name: str, count: Optional[int] = None) -> UnrelatedStrategy:
    if name == "nfs":
        return NFS()
    if name == "euclid":
        return EuclidSelect(count)
    raise InvalidInput(f"unknown unrelated-group strategy {name!r}")
