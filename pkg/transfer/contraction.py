"""
Contraction data for homotopy transfer.

Per degree i the space splits as L^i = H^i ⊕ B^i ⊕ C^i, where H^i
represents cohomology, B^i = d(C^{i-1}) and C^i is a complement of the
cycles. C^i is chosen inside the annihilator of H^{d-i} and then corrected
by boundaries until ae(C^i, C^{d-i}) = 0. η inverts d from B to C and
vanishes on H and C.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from algebra.errors import AxiomError, InternalError, StructuralError
from algebra.linalg import columns_matrix, extend_basis, inverse, is_invertible, nullspace, solve_square
from linfty.axioms import check_cyclic
from linfty.cohomology import DegreeSplit, differential, name_representatives, split_degrees
from linfty.graded import GradedSpace, LinearMap, Vector, basis_vector, coordinates, from_coordinates
from linfty.structure import CyclicPairing, LInftyStructure


@dataclass(frozen=True)
class Contraction:
    space: GradedSpace
    h_space: GradedSpace
    d: LinearMap
    eta: LinearMap
    pi: LinearMap
    iota: LinearMap
    proj: LinearMap

    @property
    def minimal(self) -> bool:
        return self.d.is_zero()


def _vec(coords: list[Fraction], names: tuple[str, ...]) -> Vector:
    return from_coordinates(coords, names)


def _complement(split: DegreeSplit, annihilated: list[Vector], ae: CyclicPairing) -> list[list[Fraction]]:
    """Complement of Z^i inside the annihilator of the partner cohomology."""
    rows = [[ae.pair(h, basis_vector(n)) for n in split.names] for h in annihilated]
    w = nullspace(rows, len(split.names))
    c0 = extend_basis(split.boundaries, w, len(split.names))
    expected = len(split.names) - len(split.cycles)
    if len(c0) != expected:
        raise StructuralError(
            f"no pairing-compatible splitting in degree {split.degree}: "
            f"complement of dimension {len(c0)}, expected {expected}"
        )
    return c0


def _isotropic_correction(
    deg: int,
    c_here: list[Vector],
    c_there: list[Vector],
    b_here: list[Vector],
    ae: CyclicPairing,
) -> list[Vector]:
    """Shift C^i by boundaries so that ae(C^i, C^{d-i}) = 0."""
    if not c_here or not c_there:
        return c_here
    gram = [[ae.pair(b, c2) for b in b_here] for c2 in c_there]
    if len(gram) != len(b_here) or not is_invertible(gram):
        raise StructuralError(f"boundaries and complements are not dual in degree {deg}")
    corrected = []
    for c in c_here:
        rhs = [-Fraction(1, 2) * ae.pair(c, c2) for c2 in c_there]
        beta = solve_square(gram, rhs)
        vec = dict(c)
        for coeff, b in zip(beta, b_here):
            for n, v in b.items():
                vec[n] = vec.get(n, Fraction(0)) + coeff * v
        corrected.append({n: v for n, v in vec.items() if v})
    return corrected


def build_contraction(S: LInftyStructure, ae: CyclicPairing) -> Contraction:
    """η, Π, ι, p for S, compatible with ae; every identity is re-verified."""
    space = S.space
    d = differential(S)
    if not d.compose(d).is_zero():
        raise AxiomError("μ_1∘μ_1 ≠ 0; no contraction exists (jacobi[n=1])")
    gram = ae.gram(space.basis, space.basis)
    if not is_invertible(gram):
        raise StructuralError("the pairing is degenerate on the total space")
    compat = check_cyclic(S.restricted(1), ae, 1)
    if not compat.ok:
        raise AxiomError(f"the differential is not compatible with the pairing: {compat.violations[0]}")

    splits = split_degrees(space, d)
    h_names = name_representatives(space, splits)
    h_space = GradedSpace({deg: h_names[deg] for deg in splits})
    iota_cols = {
        h: _vec(vec, split.names)
        for deg, split in splits.items()
        for h, vec in zip(h_names[deg], split.harmonic)
    }
    iota = LinearMap(h_space.basis, space.basis, iota_cols)

    complements: dict[int, list[Vector]] = {}
    for deg, split in splits.items():
        partner = [iota.image(h) for h in h_space.names_in(ae.dimension - deg)]
        complements[deg] = [_vec(c, split.names) for c in _complement(split, partner, ae)]

    corrected: dict[int, list[Vector]] = {}
    for deg, split in splits.items():
        boundaries = [_vec(b, split.names) for b in split.boundaries]
        corrected[deg] = _isotropic_correction(
            deg, complements[deg], complements.get(ae.dimension - deg, []), boundaries, ae
        )

    eta_cols: dict[str, Vector] = {}
    proj_cols: dict[str, Vector] = {}
    for deg, split in splits.items():
        names = split.names
        hs = [coordinates(iota.image(h), names) for h in h_names[deg]]
        sources = corrected.get(deg - 1, [])
        bs = [coordinates(d(c), names) for c in sources]
        cs = [coordinates(c, names) for c in corrected[deg]]
        adapted = hs + bs + cs
        if len(adapted) != len(names):
            raise InternalError(f"adapted basis in degree {deg} has {len(adapted)} vectors for {len(names)} dimensions")
        try:
            inv = inverse(columns_matrix(adapted))
        except StructuralError as exc:
            raise InternalError(f"adapted basis in degree {deg} is singular") from exc
        nh = len(hs)
        for j, n in enumerate(names):
            image: Vector = {}
            for k, c in enumerate(sources):
                coeff = inv[nh + k][j]
                if coeff:
                    for m, v in c.items():
                        image[m] = image.get(m, Fraction(0)) + coeff * v
            eta_cols[n] = {m: v for m, v in image.items() if v}
            proj_cols[n] = {h_names[deg][i]: inv[i][j] for i in range(nh) if inv[i][j]}

    eta = LinearMap(space.basis, space.basis, eta_cols)
    proj = LinearMap(space.basis, h_space.basis, proj_cols)
    identity = LinearMap.identity(space.basis)
    pi = identity - (d.compose(eta) + eta.compose(d))
    C = Contraction(space, h_space, d, eta, pi, iota, proj)
    verify_contraction(C, ae)
    return C


def verify_contraction(C: Contraction, ae: CyclicPairing) -> None:
    """Raise InternalError unless every contraction identity holds exactly."""
    eta, d, pi = C.eta, C.d, C.pi
    if not eta.compose(eta).is_zero():
        raise InternalError("η∘η ≠ 0")
    if eta.compose(d).compose(eta) != eta:
        raise InternalError("η∘d∘η ≠ η")
    if pi.compose(pi) != pi:
        raise InternalError("Π is not idempotent")
    if pi != C.iota.compose(C.proj):
        raise InternalError("Π differs from ι∘p")
    if C.proj.compose(C.iota) != LinearMap.identity(C.h_space.basis):
        raise InternalError("p∘ι is not the identity")
    if pi.rank() != C.h_space.dim:
        raise InternalError("rank of Π differs from the dimension of cohomology")
    space = C.space
    for x in space.basis:
        ex = basis_vector(x)
        sign = -1 if space.degree(x) % 2 else 1
        for y in space.basis:
            lhs = ae.pair(eta.image(x), basis_vector(y))
            rhs = ae.pair(ex, eta.image(y))
            if lhs - sign * rhs:
                raise InternalError(f"η is not compatible with the pairing on ({x}, {y})")
