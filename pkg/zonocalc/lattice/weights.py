from typing import Any, Iterable, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator

Vector = Tuple[int, ...]
IndexSet = Tuple[int, ...]


class WeightList(BaseModel):
    """
    The ordered multiset X = [a_1, ..., a_N] of nonzero integer vectors.

    Sublists are always addressed by index sets so that repeated weights stay
    distinct.

    Attributes:
        dim: The ambient rank s.
        weights: The vectors a_i, each of length ``dim``.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    dim: int = Field(ge=1)
    weights: Tuple[Tuple[StrictInt, ...], ...]

    @model_validator(mode="before")
    @classmethod
    def _wrap_scalars(cls, data: Any) -> Any:
        # rank one lists may be written as [1, 1] instead of [[1], [1]]
        if isinstance(data, dict) and data.get("dim") == 1:
            weights = data.get("weights")
            if isinstance(weights, (list, tuple)) and all(type(w) is int for w in weights):
                data = {**data, "weights": [[w] for w in weights]}
        return data

    @model_validator(mode="after")
    def _check_vectors(self) -> "WeightList":
        for i, vector in enumerate(self.weights):
            if len(vector) != self.dim:
                raise ValueError(f"weight {i} has length {len(vector)}, expected {self.dim}")
            if not any(vector):
                raise ValueError(f"weight {i} is the zero vector")
        return self

    # ------------------------------------------
    # Constructors
    # ------------------------------------------

    @classmethod
    def of(cls, vectors: Iterable[Sequence[int]], dim: int = None) -> "WeightList":
        vectors = [tuple(int(x) for x in v) if isinstance(v, (list, tuple)) else (int(v),) for v in vectors]
        if dim is None:
            if not vectors:
                raise ValueError("dimension of an empty weight list must be given")
            dim = len(vectors[0])
        return cls(dim=dim, weights=tuple(vectors))

    # ------------------------------------------
    # Sequence protocol
    # ------------------------------------------

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, index: int) -> Vector:
        return self.weights[index]

    @property
    def indices(self) -> IndexSet:
        return tuple(range(len(self.weights)))

    # ------------------------------------------
    # Derived lists
    # ------------------------------------------

    def sublist(self, indices: Iterable[int]) -> "WeightList":
        return WeightList(dim=self.dim, weights=tuple(self.weights[i] for i in indices))

    def complement(self, indices: Iterable[int]) -> IndexSet:
        chosen = set(indices)
        return tuple(i for i in self.indices if i not in chosen)

    def negated(self, indices: Iterable[int] = None) -> "WeightList":
        """Negates the weights at ``indices`` (all of them by default), keeping positions."""
        flip = set(self.indices if indices is None else indices)
        return WeightList(
            dim=self.dim,
            weights=tuple(tuple(-x for x in w) if i in flip else w for i, w in enumerate(self.weights)),
        )

    def doubled(self) -> "WeightList":
        """X_R = X followed by -X."""
        return WeightList(dim=self.dim, weights=self.weights + tuple(tuple(-x for x in w) for w in self.weights))

    def sublist_sum(self, indices: Iterable[int]) -> Vector:
        total = [0] * self.dim
        for i in indices:
            for k, x in enumerate(self.weights[i]):
                total[k] += x
        return tuple(total)

    def total(self) -> Vector:
        return self.sublist_sum(self.indices)

    def vectors(self, indices: Iterable[int] = None) -> List[Vector]:
        if indices is None:
            return list(self.weights)
        return [self.weights[i] for i in indices]

    def to_json(self) -> dict:
        return {"dim": self.dim, "weights": [list(w) for w in self.weights]}

    def __str__(self) -> str:
        if self.dim == 1:
            return "[" + ", ".join(str(w[0]) for w in self.weights) + "]"
        return "[" + ", ".join("(" + ",".join(str(x) for x in w) + ")" for w in self.weights) + "]"
