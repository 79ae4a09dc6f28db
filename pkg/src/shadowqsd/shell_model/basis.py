"""Slater-determinant bases for fixed proton and neutron numbers."""

import csv
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from shadowqsd.shell_model.interaction import NEUTRON, PROTON, InteractionData


@dataclass(frozen=True, order=True)
class SlaterDeterminant:
    """Occupation state ``c+_{k1} ... c+_{kp} |vacuum>`` with k1 > k2 > ... > kp."""

    occupied: tuple[int, ...]

    def __post_init__(self):
        occ = self.occupied
        if any(occ[i] <= occ[i + 1] for i in range(len(occ) - 1)):
            raise ValueError(f"occupation list must be strictly descending, got {occ}")
        if occ and occ[-1] < 0:
            raise ValueError(f"negative orbital index in {occ}")

    @classmethod
    def from_orbitals(cls, orbitals) -> "SlaterDeterminant":
        occ = tuple(sorted(orbitals, reverse=True))
        return cls(occ)

    @classmethod
    def from_mask(cls, mask: int) -> "SlaterDeterminant":
        occ = []
        k = 0
        while mask >> k:
            if (mask >> k) & 1:
                occ.append(k)
            k += 1
        return cls(tuple(reversed(occ)))

    @property
    def mask(self) -> int:
        m = 0
        for k in self.occupied:
            m |= 1 << k
        return m

    @property
    def n_particles(self) -> int:
        return len(self.occupied)


def enumerate_basis(
    interaction: InteractionData,
    n_protons: int,
    n_neutrons: int,
    jz_restriction: int | None = None,
) -> list[SlaterDeterminant]:
    """Enumerate all determinants with the requested particle content.

    Determinants are returned in lexicographic order of their descending
    occupation lists, which fixes the basis ordering across runs.  When
    ``jz_restriction`` (a doubled Jz value) is given, only determinants with
    ``sum(2m) == jz_restriction`` are kept.
    """
    protons = interaction.orbital_indices(PROTON)
    neutrons = interaction.orbital_indices(NEUTRON)
    if n_protons < 0 or n_neutrons < 0:
        raise ValueError("particle numbers must be non-negative")
    if n_protons > len(protons):
        raise ValueError(f"{n_protons} protons do not fit in {len(protons)} proton orbitals")
    if n_neutrons > len(neutrons):
        raise ValueError(f"{n_neutrons} neutrons do not fit in {len(neutrons)} neutron orbitals")

    twice_m = {o.index: o.twice_m for o in interaction.orbitals}
    dets = []
    for pocc in combinations(protons, n_protons):
        for nocc in combinations(neutrons, n_neutrons):
            det = SlaterDeterminant.from_orbitals(pocc + nocc)
            if jz_restriction is not None:
                if sum(twice_m[k] for k in det.occupied) != jz_restriction:
                    continue
            dets.append(det)
    dets.sort(key=lambda d: d.occupied)
    if not dets:
        raise ValueError("no determinants satisfy the requested particle content and restriction")
    return dets


def dump_basis_csv(basis, path) -> None:
    """Write ``index,occupied_orbitals`` rows for debugging."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "occupied_orbitals"])
        for i, det in enumerate(basis):
            writer.writerow([i, " ".join(str(k) for k in det.occupied)])
