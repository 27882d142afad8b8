"""
Local-model pairs
Defines LMPair, the lattice shadow of a (parahoric, minuscule coweight, p)
datum that every analysis section consumes.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..errors import InvalidInputError, InvariantViolation
from ..lattice_galois import (
    GaloisLattice, Matrix, RationalVector, Vector, average, mat_vec, to_matrix,
)
from ..root_data import RootSystem

NAMING_SCHEMES = ('x', 'ef', 'ef_block', 'subset', 'x_interior_first')


def _as_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _rational(v: Sequence) -> RationalVector:
    return tuple(_as_fraction(x) for x in v)


def _json_scalar(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LMPair:
    """
    Lattice data of a local-model pair

    Attributes:
        name: catalog name, e.g. 'gsp:2'
        N: X_*(T_G) with its Frobenius
        e: ramification index of the reflex field
        orbit: images of the Weyl orbit in N_Q, canonically ordered
        p: prime
        phi: parahoric projection from the source invariants to N (rows index N)
        source: X_*(T) with inertia, when the orbit was produced by averaging
        source_orbit: the Weyl orbit in the source lattice
        ab_character: dual vector computing the abelianization pairing
        central_vector: central cocharacter z for free_action_values
        root_system: split root datum on N, when the group splits over the
            maximal unramified extension and the level is Iwahori
        split_ranks: split ranks of the simple factors of G_ad
        iwahori: level is an Iwahori subgroup
        naming: variable naming scheme for Hilbert-basis elements
        free_generators: generators of the catalog's free sub-semigroup
    """
    name: str
    N: GaloisLattice
    e: int
    orbit: Tuple[RationalVector, ...]
    p: int = 3
    phi: Optional[Matrix] = None
    source: Optional[GaloisLattice] = None
    source_orbit: Tuple[Vector, ...] = ()
    ab_character: Optional[Vector] = None
    central_vector: Optional[Vector] = None
    root_system: Optional[RootSystem] = None
    split_ranks: Tuple[int, ...] = ()
    iwahori: bool = True
    naming: str = 'x'
    free_generators: Optional[Tuple[Vector, ...]] = None
    family: str = 'custom'
    params: Tuple[Any, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.N.rank
        if self.e < 1:
            raise InvalidInputError(f"ramification index must be positive, got {self.e}")
        if self.p < 2:
            raise InvalidInputError(f"p must be a prime, got {self.p}")
        if self.naming not in NAMING_SCHEMES:
            raise InvalidInputError(f"unknown naming scheme '{self.naming}'")
        orbit = tuple(sorted({_rational(v) for v in self.orbit}, reverse=True))
        if not orbit:
            raise InvalidInputError(f"pair {self.name} has an empty orbit")
        if any(len(v) != n for v in orbit):
            raise InvalidInputError(f"orbit vectors of {self.name} must have length {n}")
        object.__setattr__(self, 'orbit', orbit)

        for v in orbit:
            if any((self.e * x).denominator != 1 for x in v):
                raise InvariantViolation(f"e*{v} is not integral in pair {self.name}")
        members = set(orbit)
        for v in orbit:
            if mat_vec(self.N.frobenius, v) not in members:
                raise InvariantViolation(f"orbit of {self.name} is not Frobenius-stable")
        if self.root_system is not None:
            if self.root_system.ambient_rank != n:
                raise InvalidInputError("root system and lattice ranks differ")
            for v in orbit:
                for i in range(self.root_system.rank):
                    if self.root_system.reflect(i, v) not in members:
                        raise InvariantViolation(f"orbit of {self.name} is not Weyl-stable")

        for label, vec in (('ab_character', self.ab_character), ('central_vector', self.central_vector)):
            if vec is not None:
                if len(vec) != n:
                    raise InvalidInputError(f"{label} must have length {n}")
                object.__setattr__(self, label, tuple(int(x) for x in vec))
        if self.free_generators is not None:
            gens = tuple(tuple(int(x) for x in g) for g in self.free_generators)
            if any(len(g) != n for g in gens):
                raise InvalidInputError(f"free generators must have length {n}")
            object.__setattr__(self, 'free_generators', gens)

        if self.source is not None:
            if self.phi is None:
                raise InvalidInputError("a pair with a source lattice needs phi")
            phi = to_matrix(self.phi)
            if len(phi) != n or any(len(r) != self.source.rank for r in phi):
                raise InvalidInputError(f"phi must be {n}x{self.source.rank}")
            object.__setattr__(self, 'phi', phi)
            object.__setattr__(self, 'source_orbit', tuple(tuple(v) for v in self.source_orbit))
            images = {self.image_of(v) for v in self.source_orbit}
            if self.source_orbit and images != members:
                raise InvariantViolation(f"averaged source orbit of {self.name} does not match its orbit")

    # -- accessors -----------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.N.rank

    @property
    def e_orbit(self) -> List[Vector]:
        """e * orbit as integer vectors of N"""
        return [tuple(int(self.e * x) for x in v) for v in self.orbit]

    @property
    def is_split(self) -> bool:
        return self.N.is_split

    def image_of(self, lam: Sequence) -> RationalVector:
        """
        phi(lam^avg) in N_Q

        A vector of the source lattice is averaged over inertia and
        projected; a vector of length rank N is taken as already in N_Q.
        """
        if self.source is not None and len(lam) == self.source.rank:
            if any(_as_fraction(x).denominator != 1 for x in lam):
                raise InvalidInputError("source vectors must be integral")
            avg = average(self.source, [int(x) for x in lam])
            return tuple(sum((Fraction(a) * b for a, b in zip(row, avg)), Fraction(0)) for row in self.phi)
        if len(lam) == self.N.rank:
            return _rational(lam)
        raise InvalidInputError(f"vector of length {len(lam)} fits neither X_*(T) nor X_*(T_G) of {self.name}")

    def with_prime(self, p: int) -> 'LMPair':
        return replace(self, p=p)

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'name': self.name,
            'family': self.family,
            'lattice': self.N.to_dict(),
            'e': self.e,
            'p': self.p,
            'orbit': [[_json_scalar(x) for x in v] for v in self.orbit],
            'iwahori': self.iwahori,
            'split_ranks': list(self.split_ranks),
            'naming': self.naming,
        }
        if self.ab_character is not None:
            data['ab_character'] = list(self.ab_character)
        if self.central_vector is not None:
            data['central_vector'] = list(self.central_vector)
        if self.free_generators is not None:
            data['free_generators'] = [list(g) for g in self.free_generators]
        if self.root_system is not None:
            data['root_system'] = self.root_system.to_dict()
        if self.source is not None:
            data['source'] = self.source.to_dict()
            data['phi'] = [list(r) for r in self.phi]
            data['source_orbit'] = [list(v) for v in self.source_orbit]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LMPair':
        """
        Build a pair from the JSON pair-file format

        Either 'orbit' (vectors of N, rationals as "a/b" strings) or
        'source' + 'phi' + 'source_orbit' must be present.

        Raises:
            InvalidInputError: missing or malformed fields
            InvariantViolation: integrality or stability checks fail
        """
        try:
            N = GaloisLattice.from_dict(data['lattice'])
            source = GaloisLattice.from_dict(data['source']) if data.get('source') else None
            phi = to_matrix(data['phi']) if data.get('phi') else None
            source_orbit = tuple(tuple(int(x) for x in v) for v in data.get('source_orbit', []))
            if data.get('orbit'):
                orbit = tuple(_rational(v) for v in data['orbit'])
            elif source is not None and source_orbit:
                draft = cls(str(data.get('name', 'custom')), N, int(data.get('e', 1)),
                            ((0,) * N.rank,), source=source, phi=phi)
                orbit = tuple(draft.image_of(v) for v in source_orbit)
            else:
                raise InvalidInputError("pair file needs 'orbit' or 'source' with 'source_orbit'")
            rs = RootSystem.from_dict(data['root_system']) if data.get('root_system') else None
            return cls(
                name=str(data.get('name', 'custom')),
                N=N,
                e=int(data.get('e', 1)),
                orbit=orbit,
                p=int(data.get('p', 3)),
                phi=phi,
                source=source,
                source_orbit=source_orbit,
                ab_character=tuple(data['ab_character']) if data.get('ab_character') is not None else None,
                central_vector=tuple(data['central_vector']) if data.get('central_vector') is not None else None,
                root_system=rs,
                split_ranks=tuple(int(x) for x in data.get('split_ranks', [])),
                iwahori=bool(data.get('iwahori', True)),
                naming=str(data.get('naming', 'x')),
                free_generators=tuple(tuple(g) for g in data['free_generators'])
                if data.get('free_generators') else None,
                family=str(data.get('family', 'custom')),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InvalidInputError(f"invalid pair description: {e}")
