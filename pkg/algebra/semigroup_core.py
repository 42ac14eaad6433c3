import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)


class SemigroupError(Exception):
    """Custom exception for semigroup errors."""
    pass

class TableFormatError(SemigroupError):
    pass

class IndexOutOfRange(SemigroupError):
    pass

class CarrierMismatch(SemigroupError):
    pass

class CommutativityViolation(SemigroupError):
    def __init__(self, a: int, b: int):
        super().__init__(f"table is not commutative: {a}*{b} != {b}*{a}")
        self.a, self.b = a, b

    def witness(self) -> dict:
        return {"a": self.a, "b": self.b}

class AssociativityViolation(SemigroupError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.a, self.b, self.c = a, b, c

    def witness(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}

class EmptySet(SemigroupError):
    pass

class NoZeroElement(SemigroupError):
    pass

class NoIdentity(SemigroupError):
    pass

class TooSmall(SemigroupError):
    pass

class NotAnIdeal(SemigroupError):
    pass

class NotProper(SemigroupError):
    pass

class NotMaximal(SemigroupError):
    pass

class NotACongruence(SemigroupError):
    pass

class EmptySeparator(SemigroupError):
    pass

class QuotientNotStar(SemigroupError):
    pass

class NonzeroNotClosed(SemigroupError):
    pass

class SizeLimitExceeded(SemigroupError):
    pass

class InternalCheckFailure(SemigroupError):
    """Raised when a result that always holds fails to hold; signals a bug."""
    pass


def _frozen_bool(mask) -> np.ndarray:
    mask = np.array(mask, dtype=bool)
    mask.setflags(write=False)
    return mask


class ElementSet:
    """
    Subset of a finite carrier {0, ..., n-1}, stored as a boolean bitset.

    Example:
    --------
    >>> A = ElementSet.from_indices(3, [2, 1])
    >>> A.members()
    (1, 2)
    >>> A.complement().members()
    (0,)
    """
    __slots__ = ("mask",)

    def __init__(self, mask):
        self.mask = _frozen_bool(mask)
        if self.mask.ndim != 1:
            raise CarrierMismatch("an element set is a one-dimensional bitset")

    @classmethod
    def from_indices(cls, n: int, indices) -> "ElementSet":
        mask = np.zeros(n, dtype=bool)
        for i in indices:
            i = int(i)
            if not 0 <= i < n:
                raise IndexOutOfRange(f"element {i} is outside the carrier of order {n}")
            mask[i] = True
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(np.ones(n, dtype=bool))

    @classmethod
    def empty(cls, n: int) -> "ElementSet":
        return cls(np.zeros(n, dtype=bool))

    @property
    def order(self) -> int:
        return self.mask.shape[0]

    def members(self) -> tuple:
        return tuple(int(i) for i in np.flatnonzero(self.mask))

    def is_empty(self) -> bool:
        return not self.mask.any()

    def is_full(self) -> bool:
        return bool(self.mask.all())

    def complement(self) -> "ElementSet":
        return ElementSet(~self.mask)

    def _other(self, other: "ElementSet") -> np.ndarray:
        if not isinstance(other, ElementSet) or other.order != self.order:
            raise CarrierMismatch("element sets live on different carriers")
        return other.mask

    def __or__(self, other):
        return ElementSet(self.mask | self._other(other))

    def __and__(self, other):
        return ElementSet(self.mask & self._other(other))

    def __sub__(self, other):
        return ElementSet(self.mask & ~self._other(other))

    def issubset(self, other: "ElementSet") -> bool:
        return not (self.mask & ~self._other(other)).any()

    def __contains__(self, i) -> bool:
        return 0 <= i < self.order and bool(self.mask[i])

    def __iter__(self):
        return iter(self.members())

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.mask, other.mask)

    def __hash__(self) -> int:
        return hash((self.order, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"ElementSet({self.order}, {list(self.members())})"


class PairContext:
    """
    Subset of S x S stored as an n x n boolean matrix; bit (x, y) sits at
    flat position x*n + y.
    """
    __slots__ = ("mask",)

    def __init__(self, mask):
        self.mask = _frozen_bool(mask)
        if self.mask.ndim != 2 or self.mask.shape[0] != self.mask.shape[1]:
            raise CarrierMismatch("a pair context is a square bit matrix")

    @property
    def order(self) -> int:
        return self.mask.shape[0]

    @property
    def bits(self) -> np.ndarray:
        return self.mask.reshape(-1)

    def pairs(self) -> list:
        return [(int(x), int(y)) for x, y in np.argwhere(self.mask)]

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.mask[x, y])

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairContext):
            return NotImplemented
        return np.array_equal(self.mask, other.mask)

    def __hash__(self) -> int:
        return hash(self.mask.tobytes())


class Partition:
    """
    Equivalence on {0, ..., n-1} in canonical form: classes are numbered in
    the order of their least members, so two partitions are equal exactly
    when their `class_of` tuples are equal.
    """
    __slots__ = ("class_of", "num_classes", "representatives", "is_congruence")

    def __init__(self, class_of, is_congruence: bool = False):
        class_of = tuple(int(c) for c in class_of)
        representatives = []
        for i, c in enumerate(class_of):
            if c == len(representatives):
                representatives.append(i)
            elif c > len(representatives) or c < 0:
                raise SemigroupError("class indices must be numbered by least member")
        self.class_of = class_of
        self.num_classes = len(representatives)
        self.representatives = tuple(representatives)
        self.is_congruence = is_congruence

    @classmethod
    def from_keys(cls, keys, is_congruence: bool = False) -> "Partition":
        """Group positions with equal (hashable) keys."""
        first = {}
        return cls([first.setdefault(k, len(first)) for k in keys], is_congruence)

    @classmethod
    def from_classes(cls, n: int, classes) -> "Partition":
        keys = [None] * n
        for c, members in enumerate(classes):
            for i in members:
                if keys[i] is not None:
                    raise SemigroupError(f"element {i} lies in two classes")
                keys[i] = c
        if any(k is None for k in keys):
            raise SemigroupError("classes do not cover the carrier")
        return cls.from_keys(keys)

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls([0] * n, is_congruence=True)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(range(n), is_congruence=True)

    @property
    def order(self) -> int:
        return len(self.class_of)

    def as_array(self) -> np.ndarray:
        return np.array(self.class_of, dtype=np.int64)

    def classes(self) -> list:
        out = [[] for _ in range(self.num_classes)]
        for i, c in enumerate(self.class_of):
            out[c].append(i)
        return out

    def class_set(self, c: int) -> ElementSet:
        return ElementSet(self.as_array() == c)

    def class_containing(self, i: int) -> ElementSet:
        return self.class_set(self.class_of[i])

    def same_class(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def to_json(self) -> list:
        return self.classes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.class_of == other.class_of

    def __hash__(self) -> int:
        return hash(self.class_of)

    def __repr__(self) -> str:
        return f"Partition({self.classes()})"


@dataclass(frozen=True, eq=False)
class CommSemigroup:
    """
    Finite commutative semigroup given by its Cayley table.

    Build instances with `validate`; the constructor trusts its arguments.
    """
    table: np.ndarray
    labels: tuple | None = None
    identity_idx: int | None = None
    zero_idx: int | None = None

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def describe(self, A: ElementSet) -> list:
        return [self.label(i) for i in A.members()]

    def full_set(self) -> ElementSet:
        return ElementSet.full(self.order)

    def subset(self, indices) -> ElementSet:
        return ElementSet.from_indices(self.order, indices)

    def same_table(self, other: "CommSemigroup") -> bool:
        return np.array_equal(self.table, other.table)

    def __repr__(self) -> str:
        return (f"CommSemigroup(order={self.order}, identity={self.identity_idx}, "
                f"zero={self.zero_idx})")


def _check_commutative(table: np.ndarray) -> None:
    bad = np.argwhere(table != table.T)
    if bad.size:
        a, b = bad[0]
        raise CommutativityViolation(int(a), int(b))

def _check_associative(table: np.ndarray) -> None:
    # One n x n slab per left factor keeps memory quadratic.
    for a in range(table.shape[0]):
        left = table[table[a]]      # (a*b)*c
        right = table[a][table]     # a*(b*c)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            raise AssociativityViolation(a, int(b), int(c))

def find_identity(table: np.ndarray) -> int | None:
    hits = np.flatnonzero((table == np.arange(table.shape[0])).all(axis=1))
    return int(hits[0]) if hits.size else None

def find_zero(table: np.ndarray) -> int | None:
    n = table.shape[0]
    hits = np.flatnonzero((table == np.arange(n)[:, None]).all(axis=1))
    return int(hits[0]) if hits.size else None

def validate(raw_table, labels=None, check_laws: bool = True) -> CommSemigroup:
    """
    Checks a raw Cayley table and returns it as a CommSemigroup.

    Parameters:
    raw_table (array-like): n x n array of element indices in [0, n); row i holds i*0 ... i*(n-1).
    labels (list of str, optional): display names of the n elements.
    check_laws (bool): verify commutativity and associativity. Only callers that build a
        table from a structure known to be a commutative semigroup (residue rings) switch it off.

    Returns:
    CommSemigroup: the table with identity and zero detected and cached.

    Raises:
    TableFormatError: If the table is not a non-empty square integer array or the labels do not fit.
    IndexOutOfRange: If an entry lies outside [0, n).
    CommutativityViolation: With the first pair (a, b) such that a*b != b*a.
    AssociativityViolation: With the first triple (a, b, c) such that (ab)c != a(bc).

    Example:
    --------
    >>> S = validate([[0, 1, 2], [1, 2, 2], [2, 2, 2]], labels=["1", "2", "0"])
    >>> S.label(S.identity_idx), S.label(S.zero_idx)
    ('1', '0')
    """
    table = np.array(raw_table)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise TableFormatError("a Cayley table must be a non-empty square array")
    if table.dtype == bool or not np.issubdtype(table.dtype, np.integer):
        raise TableFormatError("Cayley table entries must be integers")
    table = table.astype(np.int64)
    n = table.shape[0]
    bad = np.argwhere((table < 0) | (table >= n))
    if bad.size:
        i, j = bad[0]
        raise IndexOutOfRange(f"entry {i}*{j} = {table[i, j]} is outside [0, {n})")
    if labels is not None:
        labels = tuple(str(label) for label in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise TableFormatError(f"expected {n} distinct labels, got {list(labels)}")
    if check_laws:
        _check_commutative(table)
        _check_associative(table)
    table.setflags(write=False)
    S = CommSemigroup(table, labels, find_identity(table), find_zero(table))
    logger.debug("validated %r", S)
    return S


def parse_table(text: str, check_laws: bool = True) -> CommSemigroup:
    """
    Reads the Cayley table text format: a line with n, n rows of n integers,
    and an optional trailing `labels: l0 ... l(n-1)` line.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise TableFormatError("empty table text")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise TableFormatError(f"first line must be the order, got {lines[0]!r}") from exc
    if n <= 0 or len(lines) < n + 1:
        raise TableFormatError(f"expected {n} table rows")
    rows = []
    for line in lines[1:n + 1]:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise TableFormatError(f"non-integer entry in row {line!r}") from exc
        if len(row) != n:
            raise TableFormatError(f"row {line!r} does not have {n} entries")
        rows.append(row)
    labels = None
    rest = lines[n + 1:]
    if rest:
        if len(rest) > 1 or not rest[0].startswith("labels:"):
            raise TableFormatError(f"unexpected trailing lines {rest!r}")
        labels = rest[0][len("labels:"):].split()
    return validate(rows, labels, check_laws)

def load_table(path) -> CommSemigroup:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())

def format_table(S: CommSemigroup) -> str:
    lines = [str(S.order)]
    lines += [" ".join(str(int(v)) for v in row) for row in S.table]
    if S.labels is not None:
        lines.append("labels: " + " ".join(S.labels))
    return "\n".join(lines) + "\n"

def parse_subset(S: CommSemigroup, text: str) -> ElementSet:
    """
    Parses a comma-separated list of elements. A token naming a label is that
    element; otherwise it is read as an index. `#k` always means index k.
    An empty string or `{}` is the empty set.
    """
    lookup = {label: i for i, label in enumerate(S.labels or ())}
    indices = []
    for token in text.strip().strip("{}").split(","):
        token = token.strip()
        if not token:
            continue
        if token.startswith("#"):
            raw = token[1:]
        elif token in lookup:
            indices.append(lookup[token])
            continue
        else:
            raw = token
        try:
            indices.append(int(raw))
        except ValueError as exc:
            raise TableFormatError(f"unknown element {token!r}") from exc
    return ElementSet.from_indices(S.order, indices)
