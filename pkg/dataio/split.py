import math

import numpy as np

from .errors import GroupCoverageError, SplitError
from .schema import Dataset, GroupSplit


def _stratified_test_counts(class_counts: dict[int, int], test_fraction: float) -> dict[int, int]:
    """
    Largest-remainder apportionment: every class gets floor(count * fraction), the leftover rows of the
    rounded total go to the classes with the largest remainders (smaller label first on ties).
    """
    total = sum(class_counts.values())
    target = math.floor(total * test_fraction + 0.5)
    quotas = {label: count * test_fraction for label, count in class_counts.items()}
    counts = {label: math.floor(quota) for label, quota in quotas.items()}
    leftover = target - sum(counts.values())
    for label in sorted(quotas, key=lambda label: (-(quotas[label] - counts[label]), label))[: max(leftover, 0)]:
        counts[label] += 1
    return counts


def stratified_split(data: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    if not 0 < test_fraction < 1:
        raise SplitError(f"test_fraction must lie in (0, 1), got {test_fraction}")

    labels = np.unique(data.labels)
    class_counts = {int(label): int((data.labels == label).sum()) for label in labels}
    for label, count in class_counts.items():
        if count < 2:
            raise SplitError(f"Label {label} has {count} instance(s), at least 2 are required")

    test_counts = _stratified_test_counts(class_counts, test_fraction)
    rng = np.random.default_rng(seed)
    test_positions = []
    for label in sorted(class_counts):
        n_test = test_counts[label]
        if n_test == 0 or n_test == class_counts[label]:
            raise SplitError(
                f"Label {label} has {class_counts[label]} instance(s), too few for a non-empty "
                f"{'test' if n_test == 0 else 'train'} side at test_fraction={test_fraction}",
            )
        positions = np.flatnonzero(data.labels == label)
        test_positions.append(rng.permutation(positions)[:n_test])

    test_mask = np.zeros(len(data), dtype=bool)
    test_mask[np.concatenate(test_positions)] = True
    return data.take(np.flatnonzero(~test_mask)), data.take(np.flatnonzero(test_mask))


def partition_by_group(test: Dataset) -> GroupSplit:
    if len(test) == 0:
        raise GroupCoverageError("Cannot partition an empty test set")
    split = GroupSplit(
        d0=tuple(int(i) for i in np.flatnonzero(test.groups == 0)),
        d1=tuple(int(i) for i in np.flatnonzero(test.groups == 1)),
    )
    for name, indices in (("group 0", split.d0), ("group 1", split.d1)):
        if not indices:
            raise GroupCoverageError(f"Test set has no instances of {name}, disparity test is undefined")
    return split
