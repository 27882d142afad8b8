"""
Pair Catalog
Explicit lattice data of the standard local-model pairs: GL_n with a
fundamental coweight, symplectic and spinor similitude groups, division
algebras, ramified restrictions of scalars, ramified unitary groups, a
non-Iwahori parahoric of GL_n, Hilbert-Siegel, fake and split unitary groups.

All constructors take the prime as a keyword and return an LMPair.
"""

from collections import deque
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Callable, Dict, List, Sequence, Tuple

from ..errors import InvalidInputError
from ..lattice_galois import GaloisLattice, Matrix, Vector, identity
from ..root_data import RootSystem
from .base import LMPair


def _unit(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def _cyclic(n: int, positions: Sequence[Sequence[int]]) -> Matrix:
    """Permutation matrix with sigma(e_j) = e_{next(j)} along each cycle"""
    M = [list(row) for row in identity(n)]
    for cycle in positions:
        if len(cycle) < 2:
            continue
        for j in cycle:
            M[j][j] = 0
        for k, j in enumerate(cycle):
            M[cycle[(k + 1) % len(cycle)]][j] = 1
    return tuple(tuple(row) for row in M)


def _distinct_permutations(v: Sequence[int]) -> List[Vector]:
    return sorted(set(permutations(v)), reverse=True)


def _subset_vectors(n: int, r: int) -> List[Vector]:
    return sorted((tuple(1 if i in U else 0 for i in range(n)) for U in combinations(range(n), r)),
                  reverse=True)


def _require(condition: bool, message: str):
    if not condition:
        raise InvalidInputError(message)


# ---------------------------------------------------------------------------
# Split and unramified families
# ---------------------------------------------------------------------------

def gl(n: int, j: int, p: int = 3) -> LMPair:
    """GL_n, Iwahori level, mu = (1^j, 0^{n-j})"""
    _require(n >= 2 and 1 <= j <= n - 1, f"gl needs n >= 2 and 1 <= j <= n-1, got n={n}, j={j}")
    ones = (1,) * n
    return LMPair(
        name=f"gl:{n}:{j}",
        N=GaloisLattice.split(n),
        e=1,
        orbit=tuple(_subset_vectors(n, j)),
        p=p,
        ab_character=ones,
        central_vector=ones,
        root_system=RootSystem.gl(n),
        split_ranks=(n - 1,),
        naming='ef' if j == 2 and n >= 3 else 'x',
        free_generators=tuple(_unit(n, i) for i in range(n)),
        family='gl',
        params=(n, j),
    )


def gsp(g: int, p: int = 3) -> LMPair:
    """GSp_2g, Iwahori level, mu_std, coordinates (r_1..r_g, c)"""
    _require(g >= 1, f"gsp needs g >= 1, got {g}")
    n = g + 1
    orbit = tuple(a + (1,) for a in product((0, 1), repeat=g))
    f1 = tuple(-1 if k == 0 else 0 for k in range(g)) + (1,)
    return LMPair(
        name=f"gsp:{g}",
        N=GaloisLattice.split(n),
        e=1,
        orbit=orbit,
        p=p,
        ab_character=_unit(n, g),
        central_vector=(1,) * g + (2,),
        root_system=RootSystem.gsp(g),
        split_ranks=(g,),
        naming='ef',
        free_generators=tuple(_unit(n, i) for i in range(g)) + (f1,),
        family='gsp',
        params=(g,),
    )


def gspin(g: int, p: int = 3) -> LMPair:
    """
    GSpin_{2g+1}, Iwahori level, the spin-minuscule coweight

    The orbit is {e_i, c - e_i}; the dual cone is the cone over the unit
    cube, with Hilbert basis x_U = (1_U, 1) for all subsets U.
    """
    _require(g >= 1, f"gspin needs g >= 1, got {g}")
    n = g + 1
    orbit = [_unit(n, i) for i in range(g)]
    orbit += [tuple(-1 if k == i else 0 for k in range(g)) + (1,) for i in range(g)]
    return LMPair(
        name=f"gspin:{g}",
        N=GaloisLattice.split(n),
        e=1,
        orbit=tuple(orbit),
        p=p,
        ab_character=(1,) * g + (2,),
        central_vector=_unit(n, g),
        root_system=RootSystem.gspin(g),
        split_ranks=(g,),
        naming='subset',
        free_generators=(_unit(n, g),) + tuple(_unit(n, i)[:g] + (1,) for i in range(g)),
        family='gspin',
        params=(g,),
    )


def division_algebra(d: int, p: int = 3) -> LMPair:
    """D^* for a central division algebra of invariant 1/d, mu = (1, 0^{d-1})"""
    _require(d >= 1, f"division algebra needs d >= 1, got {d}")
    return LMPair(
        name=f"da:{d}",
        N=GaloisLattice.with_frobenius(_cyclic(d, [list(range(d))])),
        e=1,
        orbit=tuple(_unit(d, i) for i in range(d)),
        p=p,
        ab_character=(1,) * d,
        central_vector=(1,) * d,
        root_system=RootSystem.gl(d) if d >= 2 else None,
        split_ranks=(d - 1,),
        free_generators=tuple(_unit(d, i) for i in range(d)),
        family='da',
        params=(d,),
    )


def hilbert_siegel(g: int, d: int, p: int = 3) -> LMPair:
    """
    Res_{F/Q_p} GSp_2g restricted to similitudes in Q_p, p inert of degree d

    Coordinates: index a*g + i holds r_{i,a}; the last one is c. Frobenius
    moves the block of embedding a to a+1.
    """
    _require(g >= 1 and d >= 1, f"hilbert_siegel needs g, d >= 1, got g={g}, d={d}")
    n = g * d + 1
    cycles = [[a * g + i for a in range(d)] for i in range(g)]
    orbit = tuple(a + (1,) for a in product((0, 1), repeat=g * d))
    return LMPair(
        name=f"hs:{g}:{d}",
        N=GaloisLattice.with_frobenius(_cyclic(n, cycles)),
        e=1,
        orbit=orbit,
        p=p,
        ab_character=_unit(n, n - 1),
        central_vector=(1,) * (g * d) + (2,),
        root_system=RootSystem.gsp(g, d),
        split_ranks=(g,) * d,
        naming='ef_block',
        family='hs',
        params=(g, d),
    )


def fake_unitary(d: int, p: int = 3) -> LMPair:
    """D^* x G_m, the Drinfeld-type fake unitary group; N = Z^d x Z"""
    _require(d >= 1, f"fake_unitary needs d >= 1, got {d}")
    n = d + 1
    orbit = tuple(_unit(d, i) + (1,) for i in range(d))
    return LMPair(
        name=f"fu:{d}",
        N=GaloisLattice.with_frobenius(_cyclic(n, [list(range(d))])),
        e=1,
        orbit=orbit,
        p=p,
        ab_character=_unit(n, d),
        root_system=RootSystem.gl(d).padded(1) if d >= 2 else None,
        split_ranks=(d - 1,),
        family='fu',
        params=(d,),
    )


def split_unitary(n: int, r: int, p: int = 3) -> LMPair:
    """GL_n x G_m at a split prime, mu = ((1^r, 0^{n-r}), 1)"""
    _require(n >= 2 and 1 <= r <= n - 1, f"split_unitary needs n >= 2 and 1 <= r <= n-1, got n={n}, r={r}")
    m = n + 1
    orbit = tuple(v + (1,) for v in _subset_vectors(n, r))
    free = None
    if r == 1:
        units = tuple(_unit(m, i) for i in range(n))
        free = units + ((1,) * n + (-1,), (-1,) * n + (1,))
    return LMPair(
        name=f"su:{n}:{r}",
        N=GaloisLattice.split(m),
        e=1,
        orbit=orbit,
        p=p,
        ab_character=_unit(m, n),
        root_system=RootSystem.gl(n).padded(1),
        split_ranks=(n - 1,),
        free_generators=free,
        family='su',
        params=(n, r),
    )


# ---------------------------------------------------------------------------
# Ramified and non-Iwahori families
# ---------------------------------------------------------------------------

def res_ramified_gl(n: int, s: Sequence[int], p: int = 3) -> LMPair:
    """
    Res_{F/Q_p} GL_n, F totally ramified, Iwahori level

    The orbit is the S_n-orbit of (s_1, ..., s_n), s_i counting the
    embeddings whose coweight has at least i ones.
    """
    s = tuple(int(x) for x in s)
    _require(len(s) == n and n >= 2, f"res-gl needs {n} multiplicities, got {len(s)}")
    _require(all(a >= b for a, b in zip(s, s[1:])) and s[-1] >= 0, "multiplicities must be decreasing and >= 0")
    _require(s[0] > 0 and len(set(s)) > 1, "multiplicities must be nonzero and not all equal")
    return LMPair(
        name=f"res-gl:{n}:{','.join(map(str, s))}",
        N=GaloisLattice.split(n),
        e=1,
        orbit=tuple(_distinct_permutations(s)),
        p=p,
        ab_character=(1,) * n,
        central_vector=(1,) * n,
        root_system=RootSystem.gl(n),
        split_ranks=(n - 1,),
        naming='x',
        free_generators=tuple(_unit(n, i) for i in range(n)),
        family='res-gl',
        params=(n, s),
    )


def _unitary_involution(n: int) -> Matrix:
    """tau(x, y) = (y - x_n, ..., y - x_1, y) on Z^n x Z"""
    M = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n):
        M[k][n - 1 - k] = -1
        M[k][n] = 1
    M[n][n] = 1
    return tuple(tuple(row) for row in M)


def _paired_orbit(start: Vector, n: int) -> List[Vector]:
    """Orbit under permutations of the pairs {i, n+1-i} and swaps inside each pair"""
    pairs = [(k, n - 1 - k) for k in range(n // 2)]
    moves: List[Callable[[list], None]] = []

    def swap_inside(k):
        a, b = pairs[k]

        def move(v):
            v[a], v[b] = v[b], v[a]
        return move

    def swap_pairs(k):
        (a, b), (c, d) = pairs[k], pairs[k + 1]

        def move(v):
            v[a], v[c] = v[c], v[a]
            v[b], v[d] = v[d], v[b]
        return move

    moves += [swap_inside(k) for k in range(len(pairs))]
    moves += [swap_pairs(k) for k in range(len(pairs) - 1)]
    seen = {tuple(start)}
    queue = deque([tuple(start)])
    while queue:
        v = queue.popleft()
        for move in moves:
            w = list(v)
            move(w)
            w = tuple(w)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen, reverse=True)


def gu_ramified(n: int, r: int, s: int, p: int = 3) -> LMPair:
    """
    GU_n for a ramified quadratic extension, Iwahori level, signature (r, s)

    X_*(T) = Z^n x Z with inertia tau; the invariants are identified with
    Z^{m+1} by projecting to (x_1..x_{m+1}) when n = 2m+1 and to
    (x_1..x_m, y) when n = 2m.
    """
    _require(n >= 2 and r >= 1 and s >= 1 and r + s == n, f"gu needs r, s >= 1 with r+s = n, got {n}:{r},{s}")
    m = n // 2
    source = GaloisLattice(n + 1, _unitary_involution(n), identity(n + 1))
    if n % 2:
        keep = list(range(m + 1))
        ab = (0,) * m + (2,)
    else:
        keep = list(range(m)) + [n]
        ab = (0,) * m + (1,)
    phi = tuple(tuple(1 if j == k else 0 for j in range(n + 1)) for k in keep)
    start = (1,) * r + (0,) * s + (1,)
    source_orbit = tuple(v + (1,) for v in _paired_orbit(start[:n], n))
    draft = LMPair(f"gu:{n}:{r},{s}", GaloisLattice.split(m + 1), 2, ((0,) * (m + 1),),
                   source=source, phi=phi)
    orbit = tuple(draft.image_of(v) for v in source_orbit)
    return LMPair(
        name=f"gu:{n}:{r},{s}",
        N=GaloisLattice.split(m + 1),
        e=2,
        orbit=orbit,
        p=p,
        phi=phi,
        source=source,
        source_orbit=source_orbit,
        ab_character=ab,
        split_ranks=(m,),
        naming='x_interior_first',
        family='gu',
        params=(n, r, s),
    )


def gl_two_step_parahoric(n: int, r: int, p: int = 3) -> LMPair:
    """GL_n at the parahoric of p*L_0 < L_1 < L_0 with L_0/L_1 = Z/p; T_G = G_m^2"""
    _require(n > 2 and 1 <= r <= n - 1, f"gl2p needs n > 2 and 1 <= r <= n-1, got n={n}, r={r}")
    phi = ((1,) + (0,) * (n - 1), (0,) + (1,) * (n - 1))
    source_orbit = tuple(_subset_vectors(n, r))
    orbit = tuple(sorted({(v[0], sum(v[1:])) for v in source_orbit}, reverse=True))
    return LMPair(
        name=f"gl2p:{n}:{r}",
        N=GaloisLattice.split(2),
        e=1,
        orbit=orbit,
        p=p,
        phi=phi,
        source=GaloisLattice.split(n),
        source_orbit=source_orbit,
        ab_character=(1, 1),
        central_vector=(1, n - 1),
        split_ranks=(n - 1,),
        iwahori=False,
        free_generators=((1, 0), (0, 1)),
        family='gl2p',
        params=(n, r),
    )


def res_gl_ramified_example(n: int, p: int = 3) -> LMPair:
    """
    Res_{F/Q_p} GL_n for F cyclic totally ramified of degree 4, Iwahori level

    mu has (1, 0^{n-1}) at the first two embeddings and 0 at the others;
    e = 4 and e * phi(mu') = 2 * nu is divisible.
    """
    _require(n >= 1, f"res4 needs n >= 1, got {n}")
    rank = 4 * n
    shift = [[0] * rank for _ in range(rank)]
    for b in range(4):
        for i in range(n):
            shift[((b + 1) % 4) * n + i][b * n + i] = 1
    source = GaloisLattice(rank, tuple(tuple(row) for row in shift), identity(rank))
    phi = tuple(tuple(1 if j == i else 0 for j in range(rank)) for i in range(n))
    source_orbit = []
    for a in range(n):
        v = [0] * rank
        v[a] = v[n + a] = 1
        source_orbit.append(tuple(v))
    orbit = tuple(tuple(Fraction(1, 2) if k == a else Fraction(0) for k in range(n)) for a in range(n))
    return LMPair(
        name=f"res4:{n}",
        N=GaloisLattice.split(n),
        e=4,
        orbit=orbit,
        p=p,
        phi=phi,
        source=source,
        source_orbit=tuple(source_orbit),
        ab_character=(1,) * n,
        central_vector=(1,) * n,
        split_ranks=(n - 1,),
        free_generators=tuple(_unit(n, i) for i in range(n)),
        family='res4',
        params=(n,),
    )


RAMIFIED_FAMILIES = frozenset({'res-gl', 'gu', 'res4'})

FAMILIES: Dict[str, Tuple[str, str]] = {
    'gl': ('gl:<n>:<j>', 'GL_n, Iwahori, fundamental coweight (1^j, 0^{n-j})'),
    'gsp': ('gsp:<g>', 'GSp_2g, Iwahori, standard coweight'),
    'gspin': ('gspin:<g>', 'GSpin_{2g+1}, Iwahori, spin coweight'),
    'da': ('da:<d>', 'units of a division algebra of invariant 1/d'),
    'res-gl': ('res-gl:<n>:<s1,...,sn>', 'Res_{F/Q_p} GL_n, F totally ramified'),
    'gu': ('gu:<n>:<r>,<s>', 'ramified unitary similitudes, signature (r,s)'),
    'gl2p': ('gl2p:<n>:<r>', 'GL_n at a two-step parahoric (not Iwahori)'),
    'hs': ('hs:<g>:<d>', 'Hilbert-Siegel, p inert of degree d'),
    'res4': ('res4:<n>', 'Res_{F/Q_p} GL_n, F cyclic totally ramified of degree 4'),
    'fu': ('fu:<d>', 'fake unitary group D^* x G_m (Drinfeld case)'),
    'su': ('su:<n>:<r>', 'unitary group at a split prime, GL_n x G_m'),
}

EXAMPLES = (
    'gl:2:1', 'gl:3:1', 'gl:3:2', 'gl:4:2', 'gsp:1', 'gsp:2', 'gsp:3', 'gspin:2', 'gspin:3',
    'da:2', 'da:3', 'res-gl:3:5,2,1', 'gu:3:2,1', 'gu:4:3,1', 'gl2p:4:2', 'hs:1:2', 'hs:2:2',
    'res4:2', 'fu:2', 'fu:3', 'su:3:1',
)
