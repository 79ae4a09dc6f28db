"""Shell-model interaction data: file format, validation and m-scheme expansion.

File format (UTF-8, line oriented, ``#`` starts a comment)::

    SHELL <label> <2j> <parity> <2tz>
    SPE   <label> <energy_MeV>
    TBME  <a> <b> <c> <d> <2J> <2T> <V_MeV>

``SHELL`` declares one spherical shell for one isospin species; ``2tz = +1``
labels neutrons and ``2tz = -1`` protons.  The 2j+1 magnetic substates of each
shell become orbitals automatically, numbered in declaration order with 2m
ascending within a shell.  ``SPE`` attaches a single-particle energy to every
declared species of the label (missing labels default to 0).  ``TBME`` records
coupled two-body matrix elements on normalised antisymmetric pair states; the
shell pairs must be in declaration order (a <= b, c <= d).  A record with
(ab) != (cd) implies its Hermitian mirror; listing both is allowed when the
values agree.

At load time the coupled records are expanded once, through spin and isospin
Clebsch-Gordan coefficients, into proton-neutron-resolved m-scheme strings
``coef * c+_{p1} c+_{p2} c_{q2} c_{q1}`` (p1 > p2, q1 > q2).  Expansion terms
whose orbitals refer to an undeclared species are dropped: they annihilate
every state of the model space.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

from shadowqsd.shell_model.angular import clebsch_gordan

NEUTRON = 1
PROTON = -1

_COEF_CUTOFF = 1e-14


class InteractionParseError(ValueError):
    """Raised for malformed file content; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class InteractionValidationError(ValueError):
    """Raised when parsed records violate the interaction invariants."""


class UndeclaredShellError(InteractionValidationError):
    """Raised when SPE or TBME records reference an undeclared shell label."""


@dataclass(frozen=True)
class ShellSpec:
    """One declared shell of one isospin species."""

    label: str
    twice_j: int
    parity: int
    twice_tz: int


@dataclass(frozen=True)
class Orbital:
    """A single-particle magnetic substate."""

    index: int
    twice_j: int
    twice_m: int
    twice_tz: int
    shell_label: str


@dataclass(frozen=True)
class TbmeRecord:
    """Coupled two-body matrix element V_JT(ab;cd) on normalised pair states."""

    a: str
    b: str
    c: str
    d: str
    twice_jj: int
    twice_tt: int
    value: float


@dataclass(frozen=True)
class TwoBodyTerm:
    """Uncoupled m-scheme string ``coef * c+_{p1} c+_{p2} c_{q2} c_{q1}``.

    Orbital indices satisfy p1 > p2 and q1 > q2; applied to a ket the
    rightmost operator acts first.
    """

    p1: int
    p2: int
    q1: int
    q2: int
    coef: float


@dataclass(frozen=True)
class InteractionData:
    """Validated shell-model input with its m-scheme expansion."""

    shells: tuple[ShellSpec, ...]
    orbitals: tuple[Orbital, ...]
    spe: dict[str, float]
    tbme: tuple[TbmeRecord, ...]
    terms: tuple[TwoBodyTerm, ...] = field(repr=False)

    def orbital_indices(self, twice_tz: int) -> tuple[int, ...]:
        return tuple(o.index for o in self.orbitals if o.twice_tz == twice_tz)

    def single_particle_energy(self, orbital_index: int) -> float:
        return self.spe.get(self.orbitals[orbital_index].shell_label, 0.0)


def _tokenize(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InteractionParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def _parse_float(token: str, lineno: int, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise InteractionParseError(lineno, f"{what} must be a number, got {token!r}") from None


def parse_interaction(text: str) -> InteractionData:
    """Parse interaction-file content and return validated ``InteractionData``."""
    shells: list[ShellSpec] = []
    declared: dict[tuple[str, int], ShellSpec] = {}
    spe: dict[str, float] = {}
    records: list[TbmeRecord] = []

    for lineno, tokens in _tokenize(text):
        kind = tokens[0].upper()
        if kind == "SHELL":
            if len(tokens) != 5:
                raise InteractionParseError(lineno, "SHELL expects: label 2j parity 2tz")
            label = tokens[1]
            twice_j = _parse_int(tokens[2], lineno, "2j")
            parity = _parse_int(tokens[3], lineno, "parity")
            twice_tz = _parse_int(tokens[4], lineno, "2tz")
            if twice_j < 0 or twice_j % 2 == 0:
                raise InteractionParseError(lineno, f"2j must be a positive odd integer, got {twice_j}")
            if parity not in (-1, 1):
                raise InteractionParseError(lineno, f"parity must be +1 or -1, got {parity}")
            if twice_tz not in (PROTON, NEUTRON):
                raise InteractionParseError(lineno, f"2tz must be +1 (neutron) or -1 (proton), got {twice_tz}")
            if (label, twice_tz) in declared:
                raise InteractionParseError(lineno, f"shell {label!r} declared twice for 2tz = {twice_tz}")
            prior = next((s for s in shells if s.label == label), None)
            if prior is not None and (prior.twice_j != twice_j or prior.parity != parity):
                raise InteractionParseError(
                    lineno, f"shell {label!r} re-declared with different quantum numbers"
                )
            spec = ShellSpec(label, twice_j, parity, twice_tz)
            shells.append(spec)
            declared[(label, twice_tz)] = spec
        elif kind == "SPE":
            if len(tokens) != 3:
                raise InteractionParseError(lineno, "SPE expects: label energy_MeV")
            label = tokens[1]
            if label in spe:
                raise InteractionParseError(lineno, f"duplicate SPE for shell {label!r}")
            spe[label] = _parse_float(tokens[2], lineno, "energy")
        elif kind == "TBME":
            if len(tokens) != 8:
                raise InteractionParseError(lineno, "TBME expects: a b c d 2J 2T V_MeV")
            a, b, c, d = tokens[1:5]
            twice_jj = _parse_int(tokens[5], lineno, "2J")
            twice_tt = _parse_int(tokens[6], lineno, "2T")
            value = _parse_float(tokens[7], lineno, "V")
            records.append(TbmeRecord(a, b, c, d, twice_jj, twice_tt, value))
        else:
            raise InteractionParseError(lineno, f"unknown directive {tokens[0]!r}")

    return _validate_and_expand(shells, spe, records)


def load_interaction(path) -> InteractionData:
    """Read and parse an interaction file from disk."""
    return parse_interaction(Path(path).read_text(encoding="utf-8"))


def _validate_and_expand(
    shells: list[ShellSpec],
    spe: dict[str, float],
    records: list[TbmeRecord],
) -> InteractionData:
    labels_in_order: list[str] = []
    for s in shells:
        if s.label not in labels_in_order:
            labels_in_order.append(s.label)
    label_rank = {label: i for i, label in enumerate(labels_in_order)}
    twice_j_of = {s.label: s.twice_j for s in shells}

    for label in spe:
        if label not in label_rank:
            raise UndeclaredShellError(f"SPE references undeclared shell {label!r}")

    seen: dict[tuple, float] = {}
    for rec in records:
        for label in (rec.a, rec.b, rec.c, rec.d):
            if label not in label_rank:
                raise UndeclaredShellError(f"TBME references undeclared shell {label!r}")
        if label_rank[rec.a] > label_rank[rec.b] or label_rank[rec.c] > label_rank[rec.d]:
            raise InteractionValidationError(
                f"TBME ({rec.a} {rec.b}; {rec.c} {rec.d}) violates the a <= b, c <= d ordering"
            )
        if rec.twice_jj < 0 or rec.twice_jj % 2 != 0:
            raise InteractionValidationError(
                f"TBME 2J must be an even non-negative integer, got {rec.twice_jj}"
            )
        if rec.twice_tt not in (0, 2):
            raise InteractionValidationError(f"TBME 2T must be 0 or 2, got {rec.twice_tt}")
        for x, y in ((rec.a, rec.b), (rec.c, rec.d)):
            ja, jb = twice_j_of[x], twice_j_of[y]
            if rec.twice_jj > ja + jb or rec.twice_jj < abs(ja - jb):
                raise InteractionValidationError(
                    f"TBME ({rec.a} {rec.b}; {rec.c} {rec.d}) J = {rec.twice_jj // 2} "
                    f"violates the triangle rule for shells ({x}, {y})"
                )
        key = (rec.a, rec.b, rec.c, rec.d, rec.twice_jj, rec.twice_tt)
        if key in seen:
            raise InteractionValidationError(f"duplicate TBME record {key}")
        seen[key] = rec.value

    # Hermitian closure: a record with (ab) != (cd) implies the mirrored one.
    closed = dict(seen)
    for (a, b, c, d, jj, tt), v in seen.items():
        if (a, b) == (c, d):
            continue
        mirror = (c, d, a, b, jj, tt)
        if mirror in seen:
            if abs(seen[mirror] - v) > 1e-9:
                raise InteractionValidationError(
                    f"records {(a, b, c, d, jj, tt)} and {mirror} disagree; "
                    "a real Hamiltonian needs V(ab;cd) = V(cd;ab)"
                )
        else:
            closed[mirror] = v

    orbitals: list[Orbital] = []
    lookup: dict[tuple[str, int, int], int] = {}
    for s in shells:
        for twice_m in range(-s.twice_j, s.twice_j + 1, 2):
            idx = len(orbitals)
            orbitals.append(Orbital(idx, s.twice_j, twice_m, s.twice_tz, s.label))
            lookup[(s.label, twice_m, s.twice_tz)] = idx

    terms = _expand_m_scheme(closed, twice_j_of, lookup)
    return InteractionData(
        shells=tuple(shells),
        orbitals=tuple(orbitals),
        spe=dict(spe),
        tbme=tuple(records),
        terms=terms,
    )


def _pair_components(
    label_x: str,
    label_y: str,
    twice_jj: int,
    twice_jz: int,
    twice_tt: int,
    twice_tz: int,
    twice_j_of: dict[str, int],
    lookup: dict[tuple[str, int, int], int],
) -> list[tuple[int, int, float]]:
    """Expand a coupled pair-creation operator into c+ c+ components.

    Returns (orbital_x, orbital_y, coefficient) triples for
    ``sum CG_spin * CG_isospin * c+_x c+_y`` restricted to declared orbitals.
    """
    jx, jy = twice_j_of[label_x], twice_j_of[label_y]
    out = []
    for twice_mx in range(-jx, jx + 1, 2):
        twice_my = twice_jz - twice_mx
        if abs(twice_my) > jy:
            continue
        cg_j = clebsch_gordan(jx, twice_mx, jy, twice_my, twice_jj, twice_jz)
        if abs(cg_j) < _COEF_CUTOFF:
            continue
        for twice_mux in (-1, 1):
            twice_muy = twice_tz - twice_mux
            if twice_muy not in (-1, 1):
                continue
            cg_t = clebsch_gordan(1, twice_mux, 1, twice_muy, twice_tt, twice_tz)
            if abs(cg_t) < _COEF_CUTOFF:
                continue
            ix = lookup.get((label_x, twice_mx, twice_mux))
            iy = lookup.get((label_y, twice_my, twice_muy))
            if ix is None or iy is None:
                continue
            out.append((ix, iy, cg_j * cg_t))
    return out


def _expand_m_scheme(
    closed_records: dict[tuple, float],
    twice_j_of: dict[str, int],
    lookup: dict[tuple[str, int, int], int],
) -> tuple[TwoBodyTerm, ...]:
    acc: dict[tuple[int, int, int, int], float] = {}
    for (a, b, c, d, jj, tt), value in sorted(closed_records.items()):
        norm = math.sqrt((1.0 + (a == b)) * (1.0 + (c == d)))
        for twice_jz in range(-jj, jj + 1, 2):
            for twice_tz in range(-tt, tt + 1, 2):
                creators = _pair_components(a, b, jj, twice_jz, tt, twice_tz, twice_j_of, lookup)
                killers = _pair_components(c, d, jj, twice_jz, tt, twice_tz, twice_j_of, lookup)
                for ix, iy, u in creators:
                    for iw, iz, v in killers:
                        # A+(ab) A(cd) component: c+_ix c+_iy c_iz c_iw
                        _accumulate(acc, ix, iy, iw, iz, value / norm * u * v)
    terms = [
        TwoBodyTerm(p1, p2, q1, q2, coef)
        for (p1, p2, q1, q2), coef in sorted(acc.items())
        if abs(coef) > _COEF_CUTOFF
    ]
    return tuple(terms)


def _accumulate(acc, ix: int, iy: int, iw: int, iz: int, coef: float) -> None:
    """Fold ``coef * c+_ix c+_iy c_iz c_iw`` into canonical term storage.

    Canonical form is c+_{p1} c+_{p2} c_{q2} c_{q1} with p1 > p2, q1 > q2;
    each transposition of identical-species fermion operators flips the sign.
    """
    if ix == iy or iw == iz:
        return
    sign = 1.0
    p1, p2 = ix, iy
    if p1 < p2:
        p1, p2 = p2, p1
        sign = -sign
    # written annihilator order is (iz, iw); canonical writes (q2, q1) with q2 < q1
    q2, q1 = iz, iw
    if q2 > q1:
        q2, q1 = q1, q2
        sign = -sign
    key = (p1, p2, q1, q2)
    acc[key] = acc.get(key, 0.0) + sign * coef
