"""Decision procedure for eventual simultaneous ampleness.

The certified route: screen every action for quasi-unipotence, pass to the
periods where all actions become unipotent, split the exponent lattice into
residue branches, and run the certified positivity search on every cone
functional of every branch polynomial.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from math import lcm

from .bimodule_system import BimoduleSystem, branch_class_polys, class_at
from .errors import (ArityError, GeometricRealizabilityWarning,
                     NotQuasiUnipotent)
from .lattice_algebra import Matrix, is_quasi_unipotent, nilpotency_degree
from .numeric_polynomials import MultiPoly, eventually_positive

DEFAULT_SEARCH_BOUND = 16


def nilpotency_ceiling(rho: int) -> int:
    """Largest nilpotency exponent an automorphism action can realize, minus one."""
    return 2 * ((rho - 1) // 2)


@dataclass(frozen=True)
class ScreenEntry:
    index: int
    quasi_unipotent: bool
    order: int | None
    nilpotency: int | None
    realizability_warning: str | None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "quasi_unipotent": self.quasi_unipotent,
            "order": self.order,
            "nilpotency": self.nilpotency,
            "realizability_warning": self.realizability_warning,
        }


@dataclass(frozen=True)
class ScreenReport:
    entries: tuple[ScreenEntry, ...]
    ell: int

    @property
    def all_quasi_unipotent(self) -> bool:
        return all(e.quasi_unipotent for e in self.entries)

    @property
    def first_failure(self) -> int | None:
        for e in self.entries:
            if not e.quasi_unipotent:
                return e.index
        return None

    @property
    def orders(self) -> tuple:
        return tuple(e.order for e in self.entries)

    @property
    def combined_order(self) -> int | None:
        if not self.all_quasi_unipotent:
            return None
        return lcm(*(e.order for e in self.entries))

    @property
    def warnings(self) -> tuple[str, ...]:
        return tuple(e.realizability_warning for e in self.entries
                     if e.realizability_warning)

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "ell": self.ell,
            "all_quasi_unipotent": self.all_quasi_unipotent,
            "combined_order": self.combined_order,
        }


def quasi_unipotent_screen(sys: BimoduleSystem) -> ScreenReport:
    """Per-bimodule quasi-unipotence, orders, and realizability diagnostics.

    A unipotent power whose nilpotent part survives past exponent ell + 1
    cannot come from an automorphism of a projective model; that raises
    GeometricRealizabilityWarning but is not an error.
    """
    rho = sys.scheme.rho
    ell = nilpotency_ceiling(rho)
    entries = []
    for i, bim in enumerate(sys.bimodules):
        flag, order = is_quasi_unipotent(bim.action)
        nilp = None
        message = None
        if flag:
            n = (bim.action ** order) - Matrix.identity(rho)
            nilp = nilpotency_degree(n)
            if not (n ** (ell + 1)).is_zero():
                message = (f"bimodule {i}: unipotent part fails nilpotency bound "
                           f"{ell + 1} for rank {rho}; no automorphism of a "
                           f"projective model acts this way")
                warnings.warn(GeometricRealizabilityWarning(message))
        entries.append(ScreenEntry(i, flag, order, nilp, message))
    return ScreenReport(tuple(entries), ell)


@dataclass(frozen=True)
class RayWitness:
    """Cofinal ray on which a cone functional of the class stays negative."""

    residue: tuple[int, ...]
    functional_index: int
    functional: tuple[int, ...]
    base: tuple[int, ...]
    direction: tuple[int, ...]
    threshold: int

    def to_json(self) -> dict:
        return {
            "residue": list(self.residue),
            "functional_index": self.functional_index,
            "functional": list(self.functional),
            "base": list(self.base),
            "direction": list(self.direction),
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class BranchRecord:
    residue: tuple[int, ...]
    functional_index: int
    kind: str
    shift: int | None = None

    def to_json(self) -> dict:
        out = {"residue": list(self.residue),
               "functional_index": self.functional_index,
               "kind": self.kind}
        if self.shift is not None:
            out["shift"] = self.shift
        return out


@dataclass(frozen=True)
class EventualAmplenessResult:
    kind: str  # yes | no | unknown
    m0: tuple[int, ...] | None = None
    witness: RayWitness | None = None
    bound: int | None = None
    records: tuple[BranchRecord, ...] = ()

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.m0 is not None:
            out["m0"] = list(self.m0)
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.bound is not None:
            out["bound"] = self.bound
        out["records"] = [r.to_json() for r in self.records]
        return out


def eventual_ampleness(sys: BimoduleSystem,
                       search_bound: int = DEFAULT_SEARCH_BOUND,
                       screen: ScreenReport | None = None) -> EventualAmplenessResult:
    """Certified search for a corner beyond which every class is ample.

    Branches are scanned in lexicographic residue order and functionals in
    declaration order; the first falsified pair is reported.
    """
    if screen is None:
        screen = quasi_unipotent_screen(sys)
    if not screen.all_quasi_unipotent:
        raise NotQuasiUnipotent(screen.first_failure)
    periods = screen.orders
    s = sys.s
    cone = sys.scheme.cone
    records: list[BranchRecord] = []
    branch_shifts: dict[tuple[int, ...], int] = {}
    saw_unknown = False
    for residue in itertools.product(*(range(r) for r in periods)):
        polys = branch_class_polys(sys, residue, periods)
        shift = 0
        for k, row in enumerate(cone):
            h = MultiPoly.zero(s)
            for coeff, poly in zip(row, polys):
                h = h + poly.scale(coeff)
            outcome = eventually_positive(h, search_bound)
            if outcome.is_no:
                witness = RayWitness(
                    residue=residue,
                    functional_index=k,
                    functional=row,
                    base=tuple(c + r * b for c, r, b in
                               zip(residue, periods, outcome.base)),
                    direction=tuple(r * v for r, v in
                                    zip(periods, outcome.direction)),
                    threshold=outcome.threshold,
                )
                records.append(BranchRecord(residue, k, "no"))
                return EventualAmplenessResult(
                    "no", witness=witness, bound=search_bound,
                    records=tuple(records))
            if outcome.is_yes:
                t = max(outcome.m0) if outcome.m0 else 0
                shift = max(shift, t)
                records.append(BranchRecord(residue, k, "yes", shift=t))
            else:
                saw_unknown = True
                records.append(BranchRecord(residue, k, "unknown"))
        branch_shifts[residue] = shift
    if saw_unknown:
        return EventualAmplenessResult("unknown", bound=search_bound,
                                       records=tuple(records))
    # assemble the corner: a branch certified from diagonal shift t covers
    # its residue class beyond c_i + r_i*(t-1), so the corner is the
    # componentwise max of those cutoffs plus one
    m0 = [0] * s
    for residue, t in branch_shifts.items():
        if t >= 1:
            for i in range(s):
                m0[i] = max(m0[i], residue[i] + periods[i] * (t - 1) + 1)
    return EventualAmplenessResult("yes", m0=tuple(m0), bound=search_bound,
                                   records=tuple(records))


@dataclass(frozen=True)
class Verdict:
    """Outcome of the ampleness decision, with its certificate data."""

    kind: str  # NCAmple | SigmaAmple | QuasiUnipotentFail |
    #            EventualAmplenessFail | Undetermined
    search_bound: int
    screen: ScreenReport
    m0: tuple[int, ...] | None = None
    power: int | None = None
    fail_index: int | None = None
    witness: RayWitness | None = None
    supplementary_witness: RayWitness | None = None
    records: tuple[BranchRecord, ...] = ()
    star_flags: tuple[bool, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def decisive(self) -> bool:
        return self.kind != "Undetermined"

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "search_bound": self.search_bound,
            "screen": self.screen.to_json(),
            "star_flags": list(self.star_flags),
            "notes": list(self.notes),
        }
        if self.m0 is not None:
            out["m0"] = list(self.m0)
        if self.power is not None:
            out["power"] = self.power
        if self.fail_index is not None:
            out["fail_index"] = self.fail_index
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.supplementary_witness is not None:
            out["supplementary_witness"] = self.supplementary_witness.to_json()
        out["branch_records"] = [r.to_json() for r in self.records]
        return out


_CONE_NOTE = "ampleness judged relative to the declared polyhedral cone"


def nc_ample_verdict(sys: BimoduleSystem,
                     search_bound: int = DEFAULT_SEARCH_BOUND) -> Verdict:
    """Full decision: quasi-unipotence screen, then eventual ampleness."""
    screen = quasi_unipotent_screen(sys)
    stars = tuple(b.star for b in sys.bimodules)
    notes = (_CONE_NOTE,) + screen.warnings
    if not screen.all_quasi_unipotent:
        return Verdict("QuasiUnipotentFail", search_bound, screen,
                       fail_index=screen.first_failure, star_flags=stars,
                       notes=notes)
    outcome = eventual_ampleness(sys, search_bound, screen=screen)
    if outcome.kind == "yes":
        return Verdict("NCAmple", search_bound, screen, m0=outcome.m0,
                       records=outcome.records, star_flags=stars, notes=notes)
    if outcome.kind == "no":
        return Verdict("EventualAmplenessFail", search_bound, screen,
                       witness=outcome.witness, records=outcome.records,
                       star_flags=stars, notes=notes)
    return Verdict("Undetermined", search_bound, screen,
                   records=outcome.records, star_flags=stars, notes=notes)


def sigma_ample_verdict(sys: BimoduleSystem,
                        search_bound: int = DEFAULT_SEARCH_BOUND) -> Verdict:
    """Single-factor variant: search for one power with an ample class."""
    if sys.s != 1:
        raise ArityError(f"sigma_ample_verdict needs one bimodule, got {sys.s}")
    screen = quasi_unipotent_screen(sys)
    stars = tuple(b.star for b in sys.bimodules)
    notes = (_CONE_NOTE,) + screen.warnings
    if not screen.all_quasi_unipotent:
        return Verdict("QuasiUnipotentFail", search_bound, screen,
                       fail_index=screen.first_failure, star_flags=stars,
                       notes=notes)
    for m in range(1, search_bound + 1):
        if sys.scheme.is_ample(class_at(sys, (m,))):
            return Verdict("SigmaAmple", search_bound, screen, power=m,
                           star_flags=stars, notes=notes)
    supplementary = None
    outcome = eventual_ampleness(sys, search_bound, screen=screen)
    if outcome.kind == "no":
        supplementary = outcome.witness
        notes = notes + ("no sampled power is ample and a cofinal negative "
                         "ray exists",)
    return Verdict("Undetermined", search_bound, screen,
                   supplementary_witness=supplementary, star_flags=stars,
                   notes=notes)
