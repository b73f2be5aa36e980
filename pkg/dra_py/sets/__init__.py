"""Image sets, group construction and experiment splits."""

from .groups import (
    NFS,
    EuclidSelect,
    UnrelatedStrategy,
    difference_transform,
    euclid_select_unrelated,
    make_strategy,
    nfs_unrelated,
)
from .models import AnchoredDesign, Dataset, FeaturePools, ImageSet
from .splits import SPLIT_ROLES, fixed_split, pools_as_dataset, random_split

__all__ = [
    "SPLIT_ROLES",
    "NFS",
    "AnchoredDesign",
    "Dataset",
    "EuclidSelect",
    "FeaturePools",
    "ImageSet",
    "UnrelatedStrategy",
    "difference_transform",
    "euclid_select_unrelated",
    "fixed_split",
    "make_strategy",
    "nfs_unrelated",
    "pools_as_dataset",
    "random_split",
]
