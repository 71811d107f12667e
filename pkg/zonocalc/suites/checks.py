"""
Identity suites. Every suite turns one weight list into a small graph of
CheckNodes; the orchestrator runs them.
"""
import logging
import random
from typing import Any, Callable, Dict, List, Sequence

from sympy import QQ

from ..discrete.dm import (annihilation_failure, certifying_grid, d_space_basis, dimension_counts, dm_space_basis,
                           interpolation_basis, linear_combination)
from ..discrete.faces import regular_faces
from ..discrete.functions import FiniteFunction, MappedFunction, cube
from ..discrete.partition import brute_force_table, partition_function, polarized_partition
from ..errors import IrregularPoint
from ..exactnum.cyclotomic import as_cyclo
from ..exactnum.rational import ceil_rat, floor_rat, format_point, parse_rat
from ..geometry.arrangement import alcoves, is_pointed
from ..geometry.oracle import OracleKind, spline_point_oracle
from ..geometry.polyhedron import Window
from ..geometry.zonotope import alcoves_at_origin, base_alcove, delta_set, zonotope, zonotope_box
from ..inversion.brion_vergne import brion_vergne_partition
from ..inversion.general import components_match, invert_general, twisted_kernel_check
from ..inversion.index import (atiyah_index_report, bott_delta_identity, general_index_reconstruction,
                               verify_box_index, vertex_index_identity)
from ..inversion.unimodular import action_on_d_space, invert_unimodular
from ..lattice.combinatorics import is_unimodular
from ..lattice.toric import fixed_sublist, toric_vertices
from ..lattice.weights import WeightList
from ..model.types import SuiteName
from ..piecewise.builders import PartKind, build_T_polarized, build_box, build_spline
from ..piecewise.functions import first_mismatch, integrate, is_single_polynomial, lim_alcove, reflect, semidiscrete_convolve
from ..piecewise.polynomials import MultiPoly
from .orchestrator import CheckNode

logger = logging.getLogger(__name__)

# Known profiles of the one dimensional B-splines: a value at a regular point,
# read off the piece on a nearby cell, and the two one-sided limits at 0.
FIGURE_PROFILES = {
    ((1,),): {"sample_at": ("1/2", "1/2"), "expected": 1, "lim_right": 1, "lim_left": 0},
    ((1,), (1,)): {"sample_at": ("1/2", "1"), "expected": 1, "lim_right": 0, "lim_left": 0},
}


class SystemChecks:
    """
    Builds the check nodes of every suite for one weight list.

    Attributes:
        name: Label used as the id prefix, e.g. "U2".
        X: The weight list.
        tunables: Resolved command tunables (seed, radii, trial counts, truncation margin).
    """

    def __init__(self, name: str, X: WeightList, tunables: Dict[str, Any]):
        self.name = name
        self.X = X
        self.tunables = tunables
        self.margin = tunables["truncation_margin"]
        self.seed = tunables["seed"]

    def _node(self, key: str, identity: str, run: Callable, depends: Sequence[str] = ()) -> CheckNode:
        return CheckNode(
            check_id=f"{self.name}/{key}",
            identity=identity,
            system=self.name,
            run=run,
            depends_on=[f"{self.name}/{d}" for d in depends],
        )

    def _box(self) -> Window:
        r = self.tunables["box_radius"]
        return Window.cube(self.X.dim, -r, r)

    def _random_data(self, trial: int) -> FiniteFunction:
        return FiniteFunction.random(self.X.dim, self.tunables["random_radius"], self.seed + trial)

    def _spline_window(self) -> Window:
        lower, upper = zonotope_box(self.X)
        return Window(lower, upper).padded(self.tunables["window_padding"])

    def build(self, suite: SuiteName) -> List[CheckNode]:
        builders = {
            SuiteName.INVERSION: self.inversion,
            SuiteName.PARTITION: self.partition,
            SuiteName.DM: self.dm,
            SuiteName.INDEX: self.index,
        }
        return builders[suite]()

    # ------------------------------------------
    # Inversion suite
    # ------------------------------------------

    def inversion(self) -> List[CheckNode]:
        X = self.X
        box = self._box()
        nodes = []
        unimodular = is_unimodular(X)

        def inversion_runs(invert, trials: int) -> Callable:
            def run():
                reports = [invert(X, FiniteFunction.delta(X.dim), box, self.margin)]
                for t in range(trials):
                    reports.append(invert(X, self._random_data(t), box, self.margin))
                failed = [r for r in reports if not r.verdict]
                detail = {"runs": len(reports), "alcove": reports[0].alcove}
                if failed:
                    detail["mismatch"] = failed[0].mismatch
                    detail["data"] = failed[0].reconstructed
                return not failed, detail
            return run

        if unimodular:
            nodes.append(self._node("unimodular-inversion", "lim_c Todd(X) (B_X *_d K) = K",
                                    inversion_runs(invert_unimodular, self.tunables["unimodular_trials"])))
        nodes.append(self._node("general-inversion", "sum_g g^ lim_c (D^-1 Todd)(omega_g K) = K",
                                inversion_runs(invert_general, self.tunables["random_trials"])))

        def agreement():
            K = self._random_data(100)
            first = invert_unimodular(X, K, box, self.margin).function
            second = invert_general(X, K, box, self.margin).function
            mismatch = first.agrees_with(second, box.lattice_points())
            return mismatch is None, {"mismatch": list(mismatch) if mismatch else None}

        if unimodular:
            nodes.append(self._node("inversion-agreement", "unimodular and vertex formulas agree", agreement,
                                    depends=["unimodular-inversion", "general-inversion"]))

        def linearity():
            shift = (1,) + (0,) * (X.dim - 1)
            K1, K2 = self._random_data(200), self._random_data(201)
            combined = invert_general(X, K1 + K2.translate(shift).scale(2), box, self.margin).function
            separate = (invert_general(X, K1, box, self.margin).function
                        + invert_general(X, K2, box, self.margin).function.translate(shift).scale(2))
            inner = [lam for lam in box.lattice_points() if box.contains([a - b for a, b in zip(lam, shift)], strict=False)]
            mismatch = combined.agrees_with(separate, inner)
            return mismatch is None, {"points": len(inner), "mismatch": list(mismatch) if mismatch else None}

        nodes.append(self._node("linearity", "reconstruction is linear and translation equivariant", linearity,
                                depends=["general-inversion"]))
        return nodes

    # ------------------------------------------
    # Partition suite
    # ------------------------------------------

    def partition(self) -> List[CheckNode]:
        X = self.X
        nodes = []
        pointed = is_pointed(X.vectors(), X.dim)

        def oracle():
            points = cube(X.dim, -self.tunables["oracle_radius"], self.tunables["oracle_radius"])
            P = partition_function(X)
            expected = brute_force_table(X, points)
            for lam in points:
                if P.count(lam) != expected[lam]:
                    return False, {"lambda": list(lam), "recursive": P.count(lam), "enumerated": expected[lam]}
            return True, {"points": len(points)}

        if pointed:
            nodes.append(self._node("partition-oracle", "recursive P_X = enumeration", oracle))

        convolution_window = Window.cube(X.dim, -1, 4)

        def convolution():
            b = build_box(X, convolution_window)
            left = semidiscrete_convolve(b, partition_function(X), convolution_window)
            right = build_spline([(a, PartKind.RAY) for a in X.vectors()], convolution_window, label=f"T{X}")
            cell = first_mismatch(left, right, convolution_window)
            return cell is None, {"cell": cell.to_json() if cell else None}

        def polarized():
            faces = regular_faces(X)[:self.tunables["faces_per_system"]]
            b = build_box(X, convolution_window)
            for face in faces:
                left = semidiscrete_convolve(b, polarized_partition(X, face), convolution_window)
                right = build_T_polarized(X, face, convolution_window)
                cell = first_mismatch(left, right, convolution_window)
                if cell is not None:
                    return False, {"face": face.to_json(), "cell": cell.to_json()}
            return True, {"faces": [face.to_json() for face in faces]}

        if pointed:
            nodes.append(self._node("box-partition-convolution", "B_X *_d P_X = T_X", convolution,
                                    depends=["partition-oracle"]))
        nodes.append(self._node("polarized-convolution", "B_X *_d P_X^F = T_X^F", polarized))

        def brion_vergne():
            box = Window.cube(X.dim, 0, self.tunables["vertex_sum_radius"])
            _, report = brion_vergne_partition(X, box, self.margin)
            return report.verdict, {"mismatch": report.mismatch, "vertices": len(report.contributions)}

        if pointed:
            nodes.append(self._node("brion-vergne", "vertex sum of multisplines = P_X", brion_vergne,
                                    depends=["partition-oracle"]))

        nodes.append(self._node("spline-oracle", "engine values = point oracle", self._spline_oracle))
        nodes.append(self._node("box-integral", "integral of B_X = 1", self._integral))
        nodes.append(self._node("partition-of-unity", "sum_lambda B_X(x - lambda) = 1", self._unity))
        nodes.append(self._node("central-symmetry", "B_X(v) = B_X(a_X - v)", self._symmetry))
        if tuple(X.vectors()) in FIGURE_PROFILES:
            nodes.append(self._node("figure-profile", "B-spline profile and one-sided limits at 0", self._figure))
        return nodes

    def _random_points(self, window: Window, count: int, rng: random.Random, denominator: int = 7):
        # open window: the pieces are only defined strictly inside
        for _ in range(count):
            yield tuple(QQ(rng.randint(floor_rat(lo * denominator) + 1, ceil_rat(hi * denominator) - 1), denominator)
                        for lo, hi in zip(window.lower, window.upper))

    def _spline_oracle(self):
        X = self.X
        rng = random.Random(self.seed)
        samples = self.tunables["oracle_samples"]
        window = self._spline_window()
        b = build_box(X, window)
        checked = 0
        for v in self._random_points(window, samples, rng):
            try:
                expected = spline_point_oracle(X, OracleKind.BOX, v)
                found = b.value(v)
            except IrregularPoint:
                continue
            checked += 1
            if found != as_cyclo(expected):
                return False, {"kind": "box", "point": format_point(v), "oracle": str(expected)}
        if is_pointed(X.vectors(), X.dim):
            cone_window = Window.cube(X.dim, -1, 3)
            T = build_spline([(a, PartKind.RAY) for a in X.vectors()], cone_window)
            for v in self._random_points(cone_window, samples, rng):
                try:
                    expected = spline_point_oracle(X, OracleKind.CONE, v)
                    found = T.value(v)
                except IrregularPoint:
                    continue
                checked += 1
                if found != as_cyclo(expected):
                    return False, {"kind": "cone", "point": format_point(v), "oracle": str(expected)}
        return True, {"points": checked}

    def _integral(self):
        window = self._spline_window()
        total = integrate(build_box(self.X, window), window)
        return total == as_cyclo(1), {"integral": total.to_json()}

    def _unity(self):
        X = self.X
        window = self._spline_window()
        ones = MappedFunction(X.dim, lambda lam: 1, None, "1")
        convolved = semidiscrete_convolve(build_box(X, window), ones, window)
        found = is_single_polynomial(convolved)
        return found is not None and found == MultiPoly.constant(X.dim, 1), {"found": found.to_json() if found else None}

    def _symmetry(self):
        window = self._spline_window()
        b = build_box(self.X, window)
        cell = first_mismatch(b, reflect(b, self.X.total()), window)
        return cell is None, {"cell": cell.to_json() if cell else None}

    def _figure(self):
        X = self.X
        profile = FIGURE_PROFILES[tuple(X.vectors())]
        b = build_box(X, Window.cube(1, -2, 3))
        near, at = profile["sample_at"]
        apex = b.piece_near((parse_rat(near),)).evaluate((parse_rat(at),))
        limits = {}
        for c in alcoves_at_origin(X):
            side = "lim_right" if c.interior_point[0] > 0 else "lim_left"
            limits[side] = lim_alcove(b, c, [(0,)]).value((0,))
        verdict = (apex == as_cyclo(profile["expected"])
                   and limits["lim_right"] == as_cyclo(profile["lim_right"])
                   and limits["lim_left"] == as_cyclo(profile["lim_left"]))
        return verdict, {"value": apex.to_json(), **{k: v.to_json() for k, v in limits.items()}}

    # ------------------------------------------
    # Dahmen-Micchelli suite
    # ------------------------------------------

    def dm(self) -> List[CheckNode]:
        X = self.X
        window = Window.cube(X.dim, -1, 2)

        def dimensions():
            counts = dimension_counts(X)
            counts["delta_set"] = len(delta_set(base_alcove(X), X))
            verdict = (counts["dim_D"] == counts["bases"]
                       and counts["dim_DM"] == counts["sum_abs_det"] == counts["zonotope_volume"] == counts["delta_set"])
            return verdict, counts

        def interpolation():
            Z = zonotope(X)
            lower, upper = zonotope_box(X)
            inside = [c for c in alcoves(X, Window(lower, upper)) if Z.contains(c.interior_point, strict=True)]
            for c in inside:
                basis = interpolation_basis(X, c)
                for xi, k in basis.items():
                    for eta in basis:
                        if k.value(eta) != as_cyclo(int(eta == xi)):
                            return False, {"alcove": format_point(c.interior_point), "xi": list(xi), "eta": list(eta)}
            return True, {"alcoves": len(inside)}

        def annihilation():
            grid = certifying_grid(X, self.tunables["grid_dilation"])
            for K in dm_space_basis(X):
                failure = annihilation_failure(X, K, grid)
                if failure is not None:
                    Y, lam = failure
                    return False, {"element": K.label, "cocircuit": list(Y), "lambda": list(lam)}
            return True, {"grid": len(grid)}

        def convolution_into_d():
            basis = d_space_basis(X)
            failed = [p.to_json() for p in basis if not action_on_d_space(X, p, window, self.margin)]
            return not failed, {"basis": len(basis), "failed": failed}

        def twisted_kernel():
            checked = 0
            for g in toric_vertices(X):
                if g.is_identity():
                    continue
                for p in d_space_basis(X.sublist(fixed_sublist(X, g))):
                    checked += 1
                    if not twisted_kernel_check(X, g, p, window):
                        return False, {"vertex": g.to_json(), "polynomial": p.to_json()}
            return True, {"checked": checked}

        def components():
            basis = dm_space_basis(X)
            rng = random.Random(self.seed)
            K = linear_combination(X.dim, [rng.randint(-3, 3) for _ in basis], basis, label="random DM element")
            return components_match(X, K, window, self.margin), {"dim_DM": len(basis)}

        return [
            self._node("dimensions", "dim D = #bases, dim DM = sum |det| = vol Z = |delta(c|X)|", dimensions),
            self._node("interpolation", "delta(c|X) evaluation is invertible on DM(X)", interpolation,
                       depends=["dimensions"]),
            self._node("annihilation", "nabla_Y kills DM(X) on the certifying grid", annihilation,
                       depends=["dimensions"]),
            self._node("convolution-into-d", "B_X *_d p = I(X) p for p in D(X)", convolution_into_d),
            self._node("twisted-kernel", "B_X *_d g^ p = 0 for g != 1", twisted_kernel, depends=["dimensions"]),
            self._node("components", "vertex components recovered from convolution data", components,
                       depends=["dimensions", "twisted-kernel"]),
        ]

    # ------------------------------------------
    # Index suite
    # ------------------------------------------

    def index(self) -> List[CheckNode]:
        X = self.X
        faces = regular_faces(X)
        chosen = faces[:self.tunables["faces_per_system"]]
        r = self.tunables["index_radius"]
        box = Window.cube(X.dim, -r, r)

        def formulas():
            wide = Window.cube(X.dim, -self.tunables["atiyah_radius"], self.tunables["atiyah_radius"])
            for face in faces:
                report = atiyah_index_report(X, face, wide)
                if not report.verdict:
                    return False, {"face": face.to_json(), "mismatch": report.mismatch}
            return True, {"faces": len(faces)}

        def box_index():
            for face in faces:
                verdict, mismatch = verify_box_index(X, face, box)
                if not verdict:
                    return False, {"face": face.to_json(), **mismatch}
            return True, {"faces": len(faces)}

        def reconstruction():
            for face in chosen:
                report = general_index_reconstruction(X, face, box, self.margin)
                if not report.verdict:
                    return False, {"face": face.to_json(), "mismatch": report.mismatch}
            return True, {"faces": [face.to_json() for face in chosen]}

        def vertex_index():
            window = Window.cube(X.dim, -2, 2)
            signs = []
            for face in chosen:
                for g in toric_vertices(X.doubled()):
                    report = vertex_index_identity(X, face, g, window)
                    signs.append({"face": face.to_json(), "vertex": g.to_json(), "sign": report.notes["sign"]})
            return all(row["sign"] != 0 for row in signs), {"signs": signs}

        nodes = [
            self._node("atiyah-formulas", "P_{-X}^F = (-1)^|X| t_{a_X} P_X^F", formulas),
            self._node("box-index", "B_{X u -X} *_d ind = B_X *_c T_{-X}^F", box_index),
            self._node("index-reconstruction", "vertex formula over X u -X recovers ind", reconstruction,
                       depends=["atiyah-formulas"]),
            self._node("vertex-index", "omega_g(ind) = nabla(g) (B_{X^g} *_c T_{-X^g}^F)", vertex_index,
                       depends=["box-index"]),
        ]
        if is_unimodular(X):
            def bott():
                report = bott_delta_identity(X, box, self.margin)
                return report.verdict, {"mismatch": report.mismatch, **report.notes}
            nodes.append(self._node("bott-delta", "lim_c Todd(X u -X) B_{X u -X} = delta_0", bott))
        return nodes
