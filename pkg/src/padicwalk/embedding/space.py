"""
Finite ultrametric spaces: readers, validation and merge heights.

Distances are exact Fractions; the level ladder delta_1 < delta_2 < ... is
their sorted set of distinct positive values.
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union
import csv
import logging

import numpy as np
from scipy.cluster.hierarchy import cophenet, linkage
from scipy.spatial.distance import squareform

from ..exceptions import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """One broken axiom, naming the points involved."""
    kind: str
    points: Tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind} {self.points}: {self.message}"


@dataclass(frozen=True)
class FiniteUltrametricSpace:
    labels: Tuple[str, ...]
    distances: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        if len(set(labels)) != len(labels):
            raise ConfigError("Point labels must be distinct")
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.distances)
        if len(rows) != len(labels) or any(len(row) != len(labels) for row in rows):
            raise ConfigError(
                f"Distance matrix must be {len(labels)}x{len(labels)} to match the labels"
            )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "distances", rows)

    @classmethod
    def from_matrix(cls, labels: Sequence[str], matrix) -> "FiniteUltrametricSpace":
        return cls(tuple(labels), tuple(tuple(row) for row in matrix))

    @property
    def size(self) -> int:
        return len(self.labels)

    def delta(self, u: str, v: str) -> Fraction:
        return self.distances[self.labels.index(u)][self.labels.index(v)]

    def ladder(self) -> List[Fraction]:
        """Distinct positive distances, ascending."""
        return sorted({d for row in self.distances for d in row if d > 0})

    def rank_matrix(self) -> np.ndarray:
        """Integer matrix of ladder positions (1 for the smallest distance, 0 on the diagonal)."""
        rank: Dict[Fraction, int] = {d: i + 1 for i, d in enumerate(self.ladder())}
        rank[Fraction(0)] = 0
        return np.array(
            [[rank[d] for d in row] for row in self.distances], dtype=int
        ).reshape(self.size, self.size)

    def as_float(self) -> np.ndarray:
        return np.array([[float(d) for d in row] for row in self.distances]).reshape(self.size, self.size)


def validate_ultrametric(space: FiniteUltrametricSpace) -> List[Violation]:
    """Report every broken axiom; an empty list means the space is ultrametric."""
    violations: List[Violation] = []
    labels = space.labels
    d = space.distances
    n = space.size

    for i in range(n):
        if d[i][i] != 0:
            violations.append(Violation("diagonal", (labels[i],), f"delta(u, u) = {d[i][i]}"))
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                violations.append(Violation(
                    "asymmetric", (labels[i], labels[j]), f"{d[i][j]} != {d[j][i]}"
                ))
            if d[i][j] <= 0 or d[j][i] <= 0:
                violations.append(Violation(
                    "nonpositive", (labels[i], labels[j]), f"distance {d[i][j]} between distinct points"
                ))
    if violations:
        return violations

    # ranks preserve order, so the strong triangle inequality can be checked on integers
    ranks = space.rank_matrix()
    bound = np.full_like(ranks, np.iinfo(ranks.dtype).max)
    witness = np.zeros_like(ranks)
    for j in range(n):
        through = np.maximum(ranks[:, j, None], ranks[None, j, :])
        better = through < bound
        bound[better] = through[better]
        witness[better] = j
    for i, k in zip(*np.nonzero(ranks > bound)):
        if i < k:
            j = int(witness[i, k])
            triple = tuple(labels[m] for m in sorted((int(i), j, int(k))))
            violations.append(Violation(
                "triangle", triple,
                f"delta({labels[i]}, {labels[k]}) = {d[i][k]} exceeds "
                f"max({d[i][j]}, {d[j][k]}) through {labels[j]}",
            ))
    if violations:
        logger.debug(f"Found {len(violations)} ultrametric violations")
    return violations


def merge_heights(space: FiniteUltrametricSpace) -> np.ndarray:
    """
    Cophenetic distances of the single-linkage dendrogram. For an ultrametric
    space this reproduces the input matrix.
    """
    if space.size < 2:
        return np.zeros((space.size, space.size))
    tree = linkage(squareform(space.as_float(), checks=False), method="single")
    return squareform(cophenet(tree))


# -- readers ---------------------------------------------------------------

def load_distance_csv(path: Union[str, Path]) -> FiniteUltrametricSpace:
    """
    Read a CSV distance matrix: a header row of labels, then one row per
    point. A leading label column in the body is accepted and dropped.
    """
    with open(path, newline="") as handle:
        rows = [row for row in csv.reader(handle) if any(cell.strip() for cell in row)]
    if not rows:
        raise ConfigError(f"{path} is empty")

    header = [cell.strip() for cell in rows[0]]
    body = rows[1:]
    if header and header[0] == "" and len(header) == len(body) + 1:
        header = header[1:]
    labels = header

    matrix = []
    for row in body:
        cells = [cell.strip() for cell in row]
        if len(cells) == len(labels) + 1:
            cells = cells[1:]
        if len(cells) != len(labels):
            raise ConfigError(f"{path}: row {row!r} does not have {len(labels)} entries")
        try:
            matrix.append([Fraction(cell) for cell in cells])
        except ValueError as e:
            raise ConfigError(f"{path}: non-numeric distance in row {row!r}") from e
    return FiniteUltrametricSpace.from_matrix(labels, matrix)


class _DendrogramParser:
    """Recursive descent over `node := label | '(' node (',' node)* ')' ':' height`."""

    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def parse(self) -> Tuple[List[str], List[Tuple[List[str], List[str], Fraction]]]:
        leaves, merges = self._node()
        if self.pos != len(self.text):
            raise ConfigError(f"Unexpected {self.text[self.pos:]!r} after dendrogram")
        return leaves, merges

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _node(self):
        if self._peek() != "(":
            return [self._label()], []

        self.pos += 1
        groups, merges = [], []
        while True:
            leaves, inner = self._node()
            groups.append(leaves)
            merges.extend(inner)
            if self._peek() == ",":
                self.pos += 1
                continue
            if self._peek() == ")":
                self.pos += 1
                break
            raise ConfigError(f"Expected ',' or ')' at position {self.pos}")
        if self._peek() != ":":
            raise ConfigError(f"Group ending at position {self.pos} needs a ':height'")
        self.pos += 1
        height = self._height()
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                merges.append((groups[a], groups[b], height))
        return [label for group in groups for label in group], merges

    def _label(self) -> str:
        start = self.pos
        while self._peek() not in ("", "(", ")", ",", ":"):
            self.pos += 1
        if start == self.pos:
            raise ConfigError(f"Expected a label at position {start}")
        return self.text[start:self.pos]

    def _height(self) -> Fraction:
        start = self.pos
        while self._peek() not in ("", "(", ")", ","):
            self.pos += 1
        try:
            return Fraction(self.text[start:self.pos])
        except ValueError as e:
            raise ConfigError(f"Invalid merge height {self.text[start:self.pos]!r}") from e


def parse_dendrogram(text: str) -> FiniteUltrametricSpace:
    """Build the space whose distances are the merge heights, e.g. `((a,b):1,c):2`."""
    labels, merges = _DendrogramParser(text).parse()
    index = {label: i for i, label in enumerate(labels)}
    if len(index) != len(labels):
        raise ConfigError("Dendrogram repeats a label")

    matrix = [[Fraction(0)] * len(labels) for _ in labels]
    for left, right, height in merges:
        for u in left:
            for v in right:
                matrix[index[u]][index[v]] = matrix[index[v]][index[u]] = height
    return FiniteUltrametricSpace.from_matrix(labels, matrix)
