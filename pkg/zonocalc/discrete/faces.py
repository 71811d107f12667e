import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from sympy import QQ

from ..errors import NotRegularFace
from ..exactnum.rational import Rat, dot, format_point, rat
from ..geometry.arrangement import chambers
from ..lattice.weights import IndexSet, WeightList

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegularFace:
    """
    A chamber of the dual arrangement {phi : <phi, a> = 0}, given by a
    representative functional.

    Attributes:
        functional: A point phi of the chamber.
    """
    functional: Tuple[Rat, ...]

    @classmethod
    def of(cls, functional: Sequence, X: WeightList) -> "RegularFace":
        face = cls(tuple(rat(x) for x in functional))
        face.split(X)
        return face

    @classmethod
    def positive(cls, dim: int) -> "RegularFace":
        return cls(tuple(QQ(1) for _ in range(dim)))

    def split(self, X: WeightList) -> Tuple[IndexSet, IndexSet]:
        """(A, B): the weights on which the functional is positive, resp. negative."""
        A, B = [], []
        for i in X.indices:
            value = dot(self.functional, X[i])
            if value == 0:
                raise NotRegularFace(format_point(self.functional), list(X[i]))
            (A if value > 0 else B).append(i)
        return tuple(A), tuple(B)

    def negative_count(self, X: WeightList) -> int:
        return len(self.split(X)[1])

    def stable_under_perturbation(self, X: WeightList) -> bool:
        """The split is unchanged when the representative moves inside its chamber."""
        smallest = min(abs(dot(self.functional, a)) for a in X.vectors())
        bound = max(sum(abs(x) for x in a) for a in X.vectors())
        step = smallest / (2 * bound)
        for i in range(len(self.functional)):
            for sign in (1, -1):
                moved = list(self.functional)
                moved[i] += sign * step
                if RegularFace(tuple(moved)).split(X) != self.split(X):
                    return False
        return True

    def to_json(self) -> dict:
        return {"functional": format_point(self.functional)}

    def __str__(self) -> str:
        return "F(" + ",".join(format_point(self.functional)) + ")"


def regular_faces(X: WeightList) -> List[RegularFace]:
    """
    One face per dual chamber, the faces with fewer negative weights first.
    """
    faces = [RegularFace(c.interior_point) for c in chambers(X.vectors(), X.dim)]
    faces.sort(key=lambda f: (f.negative_count(X), tuple(-x for x in f.functional)))
    logger.debug(f"{len(faces)} regular faces for {X}")
    return faces


def resolve_face(X: WeightList, face) -> RegularFace:
    """A face given as an index into regular_faces, a functional, or a face."""
    if isinstance(face, RegularFace):
        face.split(X)
        return face
    if face is None:
        return regular_faces(X)[0]
    if isinstance(face, int):
        faces = regular_faces(X)
        if not 0 <= face < len(faces):
            raise NotRegularFace(face, None)
        return faces[face]
    return RegularFace.of(face, X)
