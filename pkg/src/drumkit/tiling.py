"""Combinatorial tilings and transplantation maps.

A tiling is a set of triangular tiles glued edge-to-edge along three edge
colors by involutions; fixed points of a gluing are boundary edges.  From a
pair of tilings of equal size, a transplantation map is grown by propagating
a single seed label across the gluings; its rows describe how to assemble
each tile of one domain from signed copies of the other domain's pieces.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt

import numpy as np

from .catalog import Perm
from .errors import (
    BadGluing,
    DegreeMismatch,
    Disconnected,
    InconsistentTiling,
    NoSolution,
    NotBipartite,
    NotHomophonicMap,
    NotReducible,
    NoTransplant,
    SignObstruction,
)
from .permgroup import OrbifoldSignature

STYLE_NAMES = ("dotted", "dashed", "solid")

DIRICHLET = "dirichlet"
NEUMANN = "neumann"


@dataclass(frozen=True)
class Tiling:
    """Tiles 0..n-1 glued along 3 edge colors by involutions."""

    n: int
    glue: tuple[Perm, Perm, Perm]
    parity: tuple[int, ...]

    def is_boundary(self, tile: int, color: int) -> bool:
        return self.glue[color](tile) == tile

    def neighbor(self, tile: int, color: int) -> int:
        return self.glue[color](tile)

    def boundary_edges(self) -> list[tuple[int, int]]:
        return [
            (t, c)
            for t in range(self.n)
            for c in range(3)
            if self.is_boundary(t, c)
        ]

    def interior_edge_count(self) -> int:
        return (3 * self.n - len(self.boundary_edges())) // 2


def build_tiling(gens) -> Tiling:
    """Validate three involutions and attach boundary flags and a 2-coloring."""
    gens = tuple(gens)
    if len(gens) != 3:
        raise BadGluing("a tiling needs exactly three edge gluings")
    n = gens[0].degree
    if any(g.degree != n for g in gens):
        raise DegreeMismatch("gluings act on different tile sets")
    for c, g in enumerate(gens):
        if not g.is_involution():
            raise BadGluing(f"gluing for color {c} is not an involution")

    parity = [0] * n
    parity[0] = 1
    queue = [0]
    while queue:
        t = queue.pop()
        for g in gens:
            u = g(t)
            if u == t:
                continue
            if parity[u] == 0:
                parity[u] = -parity[t]
                queue.append(u)
            elif parity[u] != -parity[t]:
                raise NotBipartite("glued neighbors cannot be 2-colored")
    if any(p == 0 for p in parity):
        raise Disconnected("tile adjacency graph is not connected")
    return Tiling(n=n, glue=gens, parity=tuple(parity))


@dataclass(frozen=True)
class VertexCycle:
    """Tiles met in order around one vertex of a tiling.

    ``corner_type`` is the pair of edge colors meeting at the vertex.  An
    interior cycle closes up (even length); a boundary chain ends on boundary
    edges at both ends.
    """

    corner_type: tuple[int, int]
    tiles: tuple[int, ...]
    interior: bool

    @property
    def corner_index(self) -> int:
        """Triangle corner sitting at this vertex (opposite the third color)."""
        return 3 - self.corner_type[0] - self.corner_type[1]


def _component_at(tiling: Tiling, t0: int, c1: int, c2: int) -> VertexCycle:
    glue = tiling.glue
    tiles_f = []
    cur, col = t0, c1
    closed = False
    for _ in range(2 * tiling.n + 1):
        nxt = glue[col](cur)
        if nxt == cur:
            break
        tiles_f.append(nxt)
        cur = nxt
        col = c1 if col == c2 else c2
        if cur == t0 and col == c1:
            closed = True
            tiles_f.pop()
            break
    if closed:
        return VertexCycle((c1, c2), tuple([t0] + tiles_f), True)
    tiles_b = []
    cur, col = t0, c2
    for _ in range(2 * tiling.n + 1):
        nxt = glue[col](cur)
        if nxt == cur:
            break
        tiles_b.append(nxt)
        cur = nxt
        col = c1 if col == c2 else c2
    return VertexCycle((c1, c2), tuple(tiles_b[::-1] + [t0] + tiles_f), False)


def vertex_cycles(tiling: Tiling) -> list[VertexCycle]:
    """Partition all (tile, corner) incidences into vertex cycles and chains."""
    out = []
    for c1 in range(3):
        for c2 in range(c1 + 1, 3):
            assigned: set[int] = set()
            for t0 in range(tiling.n):
                if t0 in assigned:
                    continue
                comp = _component_at(tiling, t0, c1, c2)
                assigned.update(comp.tiles)
                out.append(comp)
    return out


def corner_orders(tiling: Tiling) -> dict[tuple[int, int], int]:
    """Rotation order of each corner type: order of the two gluings' product."""
    return {
        (c1, c2): (tiling.glue[c1] * tiling.glue[c2]).order()
        for c1 in range(3)
        for c2 in range(c1 + 1, 3)
    }


def boundary_loop(tiling: Tiling) -> list[dict]:
    """Walk the boundary once, edge by edge.

    Each step records the boundary edge ``(tile, color)`` and the vertex chain
    that carries the walk from this edge to the next: corner type, the tiles
    of the chain, and the chain length.  Raises if the tiling has no boundary
    or the boundary splits into several loops.
    """
    edges = tiling.boundary_edges()
    if not edges:
        raise InconsistentTiling("tiling has no boundary")
    t0, c0 = edges[0]
    w0 = min(c for c in range(3) if c != c0)

    steps = []
    tile, color, pivot = t0, c0, w0
    glue = tiling.glue
    while True:
        # follow the corner chain between `color` and `pivot`, starting at `tile`
        chain = [tile]
        cur, nxt = tile, pivot
        while glue[nxt](cur) != cur:
            cur = glue[nxt](cur)
            chain.append(cur)
            nxt = color if nxt == pivot else pivot
        steps.append(
            {
                "tile": tile,
                "color": color,
                "corner_type": (min(color, pivot), max(color, pivot)),
                "chain": tuple(chain),
            }
        )
        third = 3 - color - pivot
        tile, color, pivot = cur, nxt, third
        if (tile, color, pivot) == (t0, c0, w0):
            break
        if len(steps) > 3 * tiling.n:
            raise InconsistentTiling("boundary walk failed to close")
    if len(steps) != len(edges):
        raise InconsistentTiling("boundary is not a single closed loop")
    return steps


def quotient_signature(tiling: Tiling, g0_sig) -> OrbifoldSignature:
    """Reflection signature of the domain boundary.

    A chain of m tiles at a corner whose ambient rotation order is p leaves a
    boundary corner of order p/m (order 1 means the boundary continues
    straight through and is dropped).
    """
    if isinstance(g0_sig, str):
        g0_sig = OrbifoldSignature.parse(g0_sig)
    orders = corner_orders(tiling)
    if sorted(orders.values()) != sorted(g0_sig.corner_orders):
        raise InconsistentTiling(
            f"corner rotation orders {sorted(orders.values())} do not match "
            f"signature {g0_sig}"
        )
    out = []
    for step in boundary_loop(tiling):
        p = orders[step["corner_type"]]
        m = len(step["chain"])
        if p % m != 0:
            raise InconsistentTiling(
                f"chain of {m} tiles at corner of order {p}: no integer reflector"
            )
        if p // m > 1:
            out.append(p // m)
    return OrbifoldSignature(corner_orders=tuple(out))


def continuation_matrix(tiling: Tiling, color: int, bc: str) -> np.ndarray:
    """Signed permutation matrix extending function elements across one color.

    Interior edge: entry (j, i) = +1 where j is i's neighbor.  Boundary edge:
    diagonal -1 under Dirichlet reflection, +1 under Neumann.
    """
    n = tiling.n
    mat = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        j = tiling.glue[color](i)
        if j == i:
            mat[i, i] = -1 if bc == DIRICHLET else 1
        else:
            mat[j, i] = 1
    return mat


@dataclass(frozen=True)
class TransplantMap:
    """Signed 0/±1 matrix; row r lists which source tiles feed target tile r."""

    matrix: np.ndarray
    bc: str

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def stencil_size(self) -> int:
        counts = np.count_nonzero(self.matrix, axis=1)
        if not np.all(counts == counts[0]):
            raise NoTransplant("rows have unequal stencil sizes")
        return int(counts[0])

    def support(self) -> np.ndarray:
        return self.matrix != 0

    def to_text(self) -> str:
        return "\n".join(
            " ".join(f"{v:2d}" for v in row) for row in self.matrix.tolist()
        )

    def to_json_dict(self) -> dict:
        entries = [
            [int(r), int(x), int(self.matrix[r, x])]
            for r, x in zip(*np.nonzero(self.matrix))
        ]
        return {
            "n": self.n,
            "k": self.stencil_size,
            "bc": self.bc,
            "entries": entries,
        }


def integer_determinant(matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(v) for v in row] for row in np.asarray(matrix)]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _propagate(left: Tiling, right: Tiling, seed: tuple[int, int]) -> list[set[int]]:
    """Close the seed under simultaneous continuation across every color.

    If label x sits in target tile r, then for each color c the continuation
    of x (its glued neighbor, or x itself across a boundary edge) sits in the
    target tile across r's c-edge (r itself if that edge is boundary).
    """
    r0, x0 = seed
    stencils: list[set[int]] = [set() for _ in range(right.n)]
    stencils[r0].add(x0)
    frontier = [(r0, x0)]
    while frontier:
        r, x = frontier.pop()
        for c in range(3):
            x2 = left.glue[c](x)
            r2 = right.glue[c](r)
            if x2 not in stencils[r2]:
                stencils[r2].add(x2)
                frontier.append((r2, x2))
    return stencils


def derive_transplant(
    left: Tiling,
    right: Tiling,
    seed: tuple[int, int] | None = None,
    bc: str = DIRICHLET,
) -> TransplantMap:
    """Grow a transplantation map from a seed (target tile, source label).

    With ``seed=None`` the seed is chosen canonically: target tile 0 together
    with the smallest source label whose propagation gives the smallest
    stencil.  Signs come from the two parity colorings (positive when source
    and target tiles have equal parity, after normalizing the seed entry to
    +1); Neumann maps are unsigned.  The intertwining identity against the
    continuation operators is verified before returning.
    """
    if left.n != right.n:
        raise DegreeMismatch("tilings have different tile counts")
    n = left.n
    if seed is None:
        best: tuple[int, int] | None = None
        for x in range(n):
            k = len(_propagate(left, right, (0, x))[0])
            if best is None or k < best[0]:
                best = (k, x)
        seed = (0, best[1])
    r0, x0 = seed
    if not (0 <= r0 < n and 0 <= x0 < n):
        raise NoTransplant(f"seed {seed} out of range")

    stencils = _propagate(left, right, seed)
    k = len(stencils[r0])
    if any(len(s) != k for s in stencils):
        raise NoTransplant("propagation left unequal stencil sizes")

    matrix = np.zeros((n, n), dtype=np.int64)
    if bc == DIRICHLET:
        s0 = left.parity[x0] * right.parity[r0]
        for r, labels in enumerate(stencils):
            for x in labels:
                matrix[r, x] = left.parity[x] * right.parity[r] * s0
    else:
        for r, labels in enumerate(stencils):
            for x in labels:
                matrix[r, x] = 1
    tmap = TransplantMap(matrix=matrix, bc=bc)
    if not check_intertwining(tmap, left, right, bc):
        if bc == DIRICHLET:
            raise SignObstruction("parity signs fail the intertwining identity")
        raise NoTransplant("unsigned map fails the intertwining identity")
    return tmap


def complement_map(tmap: TransplantMap, left: Tiling, right: Tiling) -> TransplantMap:
    """Map supported exactly on the complement of ``tmap``'s support.

    Signs follow the same parity rule with the same overall orientation as
    the input map, so complementary pairs combine consistently.
    """
    n = tmap.n
    if tmap.stencil_size >= n:
        raise NoTransplant("complement of a full stencil is empty")
    rows, cols = np.nonzero(tmap.matrix)
    r0, x0 = int(rows[0]), int(cols[0])
    sigma = int(tmap.matrix[r0, x0]) * left.parity[x0] * right.parity[r0]

    matrix = np.zeros((n, n), dtype=np.int64)
    support = tmap.support()
    for r in range(n):
        for x in range(n):
            if not support[r, x]:
                if tmap.bc == DIRICHLET:
                    matrix[r, x] = left.parity[x] * right.parity[r] * sigma
                else:
                    matrix[r, x] = 1
    out = TransplantMap(matrix=matrix, bc=tmap.bc)
    if not check_intertwining(out, left, right, out.bc):
        raise NoTransplant("complement support does not intertwine")
    return out


def check_intertwining(
    tmap: TransplantMap | np.ndarray, left: Tiling, right: Tiling, bc: str
) -> bool:
    """Integer-exact test of T B_c(left) == B_c(right) T for all three colors."""
    mat = tmap.matrix if isinstance(tmap, TransplantMap) else np.asarray(tmap)
    for c in range(3):
        bl = continuation_matrix(left, c, bc)
        br = continuation_matrix(right, c, bc)
        if not np.array_equal(mat @ bl, br @ mat):
            return False
    return True


def central_tile(tiling: Tiling) -> int | None:
    """The unique tile with no boundary edge, if there is exactly one."""
    inner = [
        t for t in range(tiling.n) if all(not tiling.is_boundary(t, c) for c in range(3))
    ]
    return inner[0] if len(inner) == 1 else None


def _sqrt_fraction(value: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, if it exists."""
    p, q = value.numerator, value.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _two_value_reduce(grams: list[np.ndarray]) -> tuple[list[int], list[int]]:
    """Reduce Gram coefficient matrices to (diagonal, off-diagonal) constants.

    Each matrix must have a constant diagonal and off-diagonal entries of one
    absolute value, and the off-diagonal sign patterns must agree across all
    matrices (signs come from the parity colorings, common to every map on
    the same pair of tilings).
    """
    n = grams[0].shape[0]
    off_mask = ~np.eye(n, dtype=bool)
    diags, offs = [], []
    pattern: np.ndarray | None = None
    for g in grams:
        d = np.diag(g)
        if not np.all(d == d[0]):
            raise NotReducible("diagonal of Gram coefficient is not constant")
        diags.append(int(d[0]))
        vals = g[off_mask]
        mags = np.unique(np.abs(vals))
        if len(mags) > 1:
            raise NotReducible("off-diagonal magnitudes are not constant")
        mag = int(mags[0])
        if mag == 0:
            offs.append(0)
            continue
        signs = np.sign(g) * off_mask
        if pattern is None:
            pattern = signs
            offs.append(mag)
        else:
            if np.array_equal(signs, pattern):
                offs.append(mag)
            elif np.array_equal(signs, -pattern):
                offs.append(-mag)
            else:
                raise NotReducible("off-diagonal sign patterns disagree")
    return diags, offs


def norm_preserving_coefficients(
    tk: TransplantMap, tm: TransplantMap
) -> list[tuple[Fraction | float, Fraction | float]]:
    """All real (a, b) making a*tk + b*tm an isometry.

    The Gram matrix of the combination expands into three integer coefficient
    matrices; after the two-value reduction this leaves one quadratic for the
    ratio a/b and one normalization, solved exactly over the rationals when
    the discriminant is a perfect square and in floating point otherwise.
    """
    if tk.matrix.shape != tm.matrix.shape:
        raise DegreeMismatch("maps have different shapes")
    if np.any(tk.support() & tm.support()) or not np.all(tk.support() | tm.support()):
        raise NotReducible("maps are not complementary")
    a_kk = tk.matrix.T @ tk.matrix
    a_km = tk.matrix.T @ tm.matrix + tm.matrix.T @ tk.matrix
    a_mm = tm.matrix.T @ tm.matrix
    (d1, d12, d2), (o1, o12, o2) = _two_value_reduce([a_kk, a_km, a_mm])

    # rays (alpha, beta) solving o1 a^2 + o12 ab + o2 b^2 = 0
    rays: list[tuple[Fraction, Fraction] | tuple[float, float]] = []
    if o1 == 0 and o12 == 0 and o2 == 0:
        raise NotReducible("off-diagonal condition is vacuous")
    if o1 == 0:
        rays.append((Fraction(1), Fraction(0)))
        if o12 != 0:
            rays.append((Fraction(-o2, o12), Fraction(1)))
    else:
        disc = o12 * o12 - 4 * o1 * o2
        if disc < 0:
            raise NoSolution("no real ray directions")
        root = isqrt(disc) if disc >= 0 else 0
        if root * root == disc:
            ts = {Fraction(-o12 + root, 2 * o1), Fraction(-o12 - root, 2 * o1)}
            rays.extend((t, Fraction(1)) for t in sorted(ts))
        else:
            fr = sqrt(disc)
            ts = sorted({(-o12 + fr) / (2 * o1), (-o12 - fr) / (2 * o1)})
            rays.extend((t, 1.0) for t in ts)

    solutions = []
    for alpha, beta in rays:
        quad = d1 * alpha * alpha + d12 * alpha * beta + d2 * beta * beta
        if quad <= 0:
            continue
        if isinstance(alpha, Fraction):
            scale = _sqrt_fraction(Fraction(1) / Fraction(quad))
            if scale is None:
                scale = 1.0 / sqrt(float(quad))
                alpha, beta = float(alpha), float(beta)
        else:
            scale = 1.0 / sqrt(quad)
        a, b = alpha * scale, beta * scale
        solutions.extend([(a, b), (-a, -b)])
    if not solutions:
        raise NoSolution("normalization has no real solution")
    return solutions


def special_value_multiplier(
    tmap: TransplantMap | np.ndarray,
    left: Tiling,
    right: Tiling,
    cycle_left: VertexCycle,
    cycle_right: VertexCycle,
):
    """Factor applied to the common value at an interior vertex.

    Around the target vertex, each tile's assembled function element picks up
    the source elements whose matching corner sits at the source vertex; the
    signed count of those must agree for every tile around the vertex and is
    the multiplier.
    """
    mat = tmap.matrix if isinstance(tmap, TransplantMap) else np.asarray(tmap)
    if isinstance(tmap, TransplantMap) and tmap.bc != DIRICHLET:
        raise NotHomophonicMap("special values are a Dirichlet notion")
    if not (cycle_left.interior and cycle_right.interior):
        raise NotHomophonicMap("both vertex cycles must be interior")
    if len(cycle_left.tiles) != len(cycle_right.tiles):
        raise NotHomophonicMap("vertex cycles have different lengths")
    if cycle_left.corner_type != cycle_right.corner_type:
        raise NotHomophonicMap("vertex cycles sit at different corner types")
    if len(set(cycle_left.tiles)) != len(cycle_left.tiles):
        raise NotHomophonicMap("source cycle revisits a tile")

    source = sorted(set(cycle_left.tiles))
    values = [sum(mat[r, x] for x in source) for r in cycle_right.tiles]
    first = values[0]
    exact = not isinstance(first, float)
    for v in values[1:]:
        if (exact and v != first) or (not exact and abs(v - first) > 1e-9):
            raise NotHomophonicMap(f"multiplier differs around the vertex: {values}")
    block = [mat[r, x] for r in cycle_right.tiles for x in source]
    if all((v == 0) if exact else (abs(v) <= 1e-9) for v in block):
        raise NotHomophonicMap("target vertex tiles touch no source-vertex labels")
    return first
