"""The ring of invariant canonical classes on a Kum3-type sixfold.

Everything here is driven by one table of fourteen generalized Fujiki
constants C(m) for monomials m in qbar, c2, c4, c6.  The table determines
a canonical degree-4 class z = c2 - (C(c2)/C(qbar)) qbar with C(z) = 0,
and closed bases {qbar, z} in degree 4 and {qbar^2, qbar*z} in degree 8.
:func:`derive_z_relations` reproduces the expansion of z^2, c2^2 and c4
in those bases exactly from the table, and :func:`multiply` evaluates
graded products against the derived relations.

Degrees are real cohomological degrees; the top degree is 12.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .linalg import RationalLike, format_rational, rat

Monomial = tuple[int, int, int, int]

GENERATOR_NAMES = ("qbar", "c2", "c4", "c6")
GENERATOR_DEGREES = (4, 4, 8, 12)

ONE: Monomial = (0, 0, 0, 0)
QBAR_KEY: Monomial = (1, 0, 0, 0)

REQUIRED_MONOMIALS: tuple[Monomial, ...] = (
    (0, 0, 0, 0),
    (1, 0, 0, 0),
    (2, 0, 0, 0),
    (3, 0, 0, 0),
    (0, 1, 0, 0),
    (1, 1, 0, 0),
    (2, 1, 0, 0),
    (0, 2, 0, 0),
    (1, 2, 0, 0),
    (0, 0, 1, 0),
    (1, 0, 1, 0),
    (0, 3, 0, 0),
    (0, 1, 1, 0),
    (0, 0, 0, 1),
)


class FujikiTableError(ValueError):
    """The constant table is missing data or fails an internal identity."""


def monomial_degree(m: Monomial) -> int:
    return sum(e * d for e, d in zip(m, GENERATOR_DEGREES))


def format_monomial(m: Monomial) -> str:
    if m == ONE:
        return "1"
    parts = []
    for name, e in zip(GENERATOR_NAMES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE
    exps = [0, 0, 0, 0]
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            name, _, power = factor.partition("^")
            e = int(power)
        else:
            name, e = factor, 1
        if name not in GENERATOR_NAMES or e < 1:
            raise FujikiTableError(f"unrecognised monomial factor {factor!r}")
        exps[GENERATOR_NAMES.index(name)] += e
    return tuple(exps)  # type: ignore[return-value]


def multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))  # type: ignore[return-value]


@dataclass(frozen=True)
class FujikiTable:
    """The fourteen tabulated constants, keyed by monomial exponents."""

    constants: tuple[tuple[Monomial, Fraction], ...]

    def __post_init__(self):
        keys = [m for m, _ in self.constants]
        if len(set(keys)) != len(keys):
            raise FujikiTableError("duplicate monomial in constant table")
        missing = [m for m in REQUIRED_MONOMIALS if m not in set(keys)]
        if missing:
            names = ", ".join(format_monomial(m) for m in missing)
            raise FujikiTableError(f"constant table is missing C({names})")

    @staticmethod
    def from_entries(entries: Mapping[str, RationalLike]) -> "FujikiTable":
        """Build from spelled keys such as ``C(qbar^2*c2)``."""
        items = []
        for key, value in entries.items():
            key = key.strip()
            if not (key.startswith("C(") and key.endswith(")")):
                raise FujikiTableError(f"constant key {key!r} is not of the form C(...)")
            items.append((parse_monomial(key[2:-1]), rat(value)))
        items.sort()
        return FujikiTable(tuple(items))

    def as_map(self) -> dict[Monomial, Fraction]:
        return dict(self.constants)

    def c(self, m: Monomial | str) -> Fraction:
        if isinstance(m, str):
            m = m.strip()
            if m.startswith("C(") and m.endswith(")"):
                m = m[2:-1]
            m = parse_monomial(m)
        try:
            return self.as_map()[m]
        except KeyError:
            raise FujikiTableError(f"no constant C({format_monomial(m)}) in table") from None

    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self.constants)


def evaluate_fujiki(
    c_omega: RationalLike,
    deg_omega: int,
    q_gamma: RationalLike,
    complex_dim: int = 6,
) -> Fraction:
    """Evaluate integral omega * gamma^(complex_dim - deg/2).

    The generalized Fujiki relation gives C(omega) * q(gamma, gamma)^e with
    e = (2*complex_dim - deg_omega) / 4 for omega of real degree deg_omega.
    """
    if deg_omega % 4 != 0 or deg_omega < 0:
        raise ValueError("degree of omega must be a nonnegative multiple of 4")
    twice = 2 * complex_dim - deg_omega
    if twice < 0 or twice % 4 != 0:
        raise ValueError(
            f"no Fujiki power for degree {deg_omega} in complex dimension {complex_dim}"
        )
    return rat(c_omega) * rat(q_gamma) ** (twice // 4)


def qbar_factor(table: FujikiTable, degree: int) -> Fraction:
    """The common ratio C(qbar * m) / C(m) over table monomials of a degree."""
    pairs = []
    for m in table.monomials():
        if monomial_degree(m) != degree:
            continue
        up = multiply_monomials(QBAR_KEY, m)
        if up in table.as_map():
            pairs.append((m, table.c(m), table.c(up)))
    if not pairs:
        raise FujikiTableError(f"no monomial pair (m, qbar*m) in degree {degree}")
    ratios = [(high / low, m) for m, low, high in pairs]
    first = ratios[0][0]
    bad = [m for r, m in ratios if r != first]
    if bad:
        names = ", ".join(format_monomial(m) for m in bad)
        raise FujikiTableError(
            f"qbar multiplication factors disagree in degree {degree}: "
            f"C(qbar*{names}) breaks the ratio {format_rational(first)}"
        )
    return first


@dataclass(frozen=True)
class Deg4:
    """Degree-4 class a*qbar + b*z in the canonical basis."""

    qbar: Fraction
    z: Fraction


@dataclass(frozen=True)
class Deg8:
    """Degree-8 class a*qbar^2 + b*qbar*z in the canonical basis."""

    qbar2: Fraction
    qbarz: Fraction


def deg4(qbar: RationalLike, z: RationalLike) -> Deg4:
    return Deg4(rat(qbar), rat(z))


def deg8(qbar2: RationalLike, qbarz: RationalLike) -> Deg8:
    return Deg8(rat(qbar2), rat(qbarz))


QBAR = deg4(1, 0)
Z = deg4(0, 1)


@dataclass(frozen=True)
class ZRelations:
    """Derived structure constants of the canonical basis.

    top_* values are integrals of top-degree monomials; z2, c2_squared and
    c4 are expansions in the degree-8 basis {qbar^2, qbar*z}.
    """

    ratio: Fraction                 # C(c2)/C(qbar), the coefficient in z = c2 - ratio*qbar
    factor_deg4: Fraction
    factor_deg8: Fraction
    c_z: Fraction
    c_z2: Fraction
    c_qbar_z2: Fraction
    top_qbar3: Fraction
    top_qbar2_z: Fraction
    top_qbar_z2: Fraction
    z3: Fraction
    c2: Deg4
    z2: Deg8
    c2_squared: Deg8
    c4: Deg8
    c_qbar: Fraction
    c_qbar2: Fraction
    c_qbarz: Fraction
    trail: tuple[str, ...]


def derive_z_relations(table: FujikiTable) -> ZRelations:
    """Reproduce the z-basis relations exactly from the constant table.

    Raises FujikiTableError when the table violates one of the identities
    used along the way (disagreeing qbar factors, or the two independent
    routes to C(z^2) not matching).
    """
    trail = []
    c = table.c
    ratio = c("C(c2)") / c("C(qbar)")
    trail.append(f"z = c2 - ({format_rational(ratio)})*qbar")

    factor4 = qbar_factor(table, 4)
    factor8 = qbar_factor(table, 8)

    c_z = c("C(c2)") - ratio * c("C(qbar)")
    c_qbarz = c("C(qbar*c2)") - ratio * c("C(qbar^2)")
    top_qbar2_z = c("C(qbar^2*c2)") - ratio * c("C(qbar^3)")
    top_qbar3 = c("C(qbar^3)")
    # both vanish whenever the qbar factors are consistent; everything below
    # leans on that, so fail loudly rather than return wrong expansions
    if c_qbarz != 0 or top_qbar2_z != 0:
        raise FujikiTableError(
            "C(qbar*z) or integral qbar^2*z is nonzero despite consistent "
            "qbar factors; the z-basis derivation does not apply"
        )
    trail.append(
        f"C(z) = {format_rational(c_z)}, C(qbar*z) = {format_rational(c_qbarz)}, "
        f"integral qbar^2*z = {format_rational(top_qbar2_z)}"
    )

    # integral qbar*c2^2 expands through (ratio*qbar + z)^2; the qbar^2*z term drops out
    top_qbar_z2 = (
        c("C(qbar*c2^2)")
        - ratio**2 * top_qbar3
        - 2 * ratio * top_qbar2_z
    )
    trail.append(f"integral qbar*z^2 = {format_rational(top_qbar_z2)}")

    z3 = (
        c("C(c2^3)")
        - ratio**3 * top_qbar3
        - 3 * ratio**2 * top_qbar2_z
        - 3 * ratio * top_qbar_z2
    )
    trail.append(f"z^3 = {format_rational(z3)}")

    c_qbar_z2 = top_qbar_z2  # degree 12: the constant is the integral
    c_z2 = c_qbar_z2 / factor8
    direct_c_z2 = c("C(c2^2)") - ratio**2 * c("C(qbar^2)") - 2 * ratio * c_qbarz
    if direct_c_z2 != c_z2:
        raise FujikiTableError(
            "C(z^2) disagrees between the qbar-factor route "
            f"({format_rational(c_z2)}) and direct expansion of C(c2^2) "
            f"({format_rational(direct_c_z2)})"
        )
    trail.append(f"C(z^2) = {format_rational(c_z2)} (both routes)")

    if top_qbar_z2 == 0:
        raise FujikiTableError("integral qbar*z^2 vanishes; z-basis expansions are singular")

    lam = z3 / top_qbar_z2
    z2 = Deg8(c_z2 / c("C(qbar^2)"), lam)
    trail.append(
        f"z^2 = ({format_rational(z2.qbar2)})*qbar^2 + ({format_rational(z2.qbarz)})*qbar*z"
    )

    c2_lead = c("C(c2^2)") / c("C(qbar^2)")
    a = (c("C(c2^3)") - ratio * c2_lead * top_qbar3 - c2_lead * top_qbar2_z) / top_qbar_z2
    c2_squared = Deg8(c2_lead, a)
    trail.append(
        f"c2^2 = ({format_rational(c2_lead)})*qbar^2 + ({format_rational(a)})*qbar*z"
    )

    c4_lead = c("C(c4)") / c("C(qbar^2)")
    b = (c("C(c2*c4)") - ratio * c4_lead * top_qbar3 - c4_lead * top_qbar2_z) / top_qbar_z2
    c4 = Deg8(c4_lead, b)
    trail.append(
        f"c4 = ({format_rational(c4_lead)})*qbar^2 + ({format_rational(b)})*qbar*z"
    )

    return ZRelations(
        ratio=ratio,
        factor_deg4=factor4,
        factor_deg8=factor8,
        c_z=c_z,
        c_z2=c_z2,
        c_qbar_z2=c_qbar_z2,
        top_qbar3=top_qbar3,
        top_qbar2_z=top_qbar2_z,
        top_qbar_z2=top_qbar_z2,
        z3=z3,
        c2=Deg4(ratio, Fraction(1)),
        z2=z2,
        c2_squared=c2_squared,
        c4=c4,
        c_qbar=c("C(qbar)"),
        c_qbar2=c("C(qbar^2)"),
        c_qbarz=c_qbarz,
        trail=tuple(trail),
    )


def multiply(a: Deg4 | Deg8, b: Deg4 | Deg8, rel: ZRelations) -> Deg8 | Fraction:
    """Graded product; degree 4 x 4 gives Deg8, degree 4 x 8 gives the top integral."""
    if isinstance(a, Deg8) and isinstance(b, Deg4):
        a, b = b, a
    if isinstance(a, Deg4) and isinstance(b, Deg4):
        # (a1 qbar + a2 z)(b1 qbar + b2 z), with z^2 rewritten in the basis
        qbar2 = a.qbar * b.qbar + a.z * b.z * rel.z2.qbar2
        qbarz = a.qbar * b.z + a.z * b.qbar + a.z * b.z * rel.z2.qbarz
        return Deg8(qbar2, qbarz)
    if isinstance(a, Deg4) and isinstance(b, Deg8):
        return (
            a.qbar * b.qbar2 * rel.top_qbar3
            + (a.z * b.qbar2 + a.qbar * b.qbarz) * rel.top_qbar2_z
            + a.z * b.qbarz * rel.top_qbar_z2
        )
    raise FujikiTableError("degree overflow: product exceeds the top degree")


def c_of(x: Deg4 | Deg8 | Fraction, rel: ZRelations) -> Fraction:
    """The Fujiki constant of a graded class, linear in the basis constants."""
    if isinstance(x, Deg4):
        return x.qbar * rel.c_qbar + x.z * rel.c_z
    if isinstance(x, Deg8):
        return x.qbar2 * rel.c_qbar2 + x.qbarz * rel.c_qbarz
    return rat(x)


@dataclass(frozen=True)
class WVClasses:
    """The invariant sum classes w (degree 4) and v (degree 8)."""

    w: Deg4
    v: Deg8
    c_w: Fraction
    c_v: Fraction
    c2_dot_v: Fraction
    w_dot_v: Fraction
    w_cube: Fraction
    w_component_cube: Fraction
    integral_w: Deg4           # 8*qbar - 3*c2, for the identity check
    integral_3v: Deg8          # 7*c4 - c2^2
    trail: tuple[str, ...]


@dataclass(frozen=True)
class WVInputs:
    """Geometric intersection inputs feeding the w/v expansions."""

    w_sq_w_other: Fraction      # w_tau^2 * w_tau' for tau != tau'
    w_triple_distinct: Fraction  # w * w' * w'' for three distinct labels
    c2_v_pair: Fraction         # c2 * (one v component)
    c_w_component: Fraction     # C(w_tau)
    c_v_pair: Fraction          # C(one v component)
    label_count: int = 16


def express_w_v(
    table: FujikiTable,
    rel: ZRelations,
    data: WVInputs,
    w_dot_v: Fraction,
    w_component_cube_solver,
) -> WVClasses:
    """Expand w and v in the canonical bases from their Fujiki constants.

    ``w_dot_v`` is the orbit-counted value of w * v and
    ``w_component_cube_solver(total)`` recovers w_tau^3 from w^3; both are
    computed by the torsion-label module and injected here.
    """
    n = data.label_count
    pair_count = n * (n - 1) // 2
    trail = []

    c_w = n * data.c_w_component
    c_v = pair_count * data.c_v_pair
    c2_dot_v = pair_count * data.c2_v_pair
    trail.append(
        f"C(w) = {n}*{format_rational(data.c_w_component)} = {format_rational(c_w)}; "
        f"C(v) = {pair_count}*{format_rational(data.c_v_pair)} = {format_rational(c_v)}; "
        f"c2*v = {pair_count}*{format_rational(data.c2_v_pair)} = {format_rational(c2_dot_v)}"
    )

    # v = (C(v)/C(qbar^2)) qbar^2 + gamma qbar z, gamma fixed by c2*v
    v_lead = c_v / rel.c_qbar2
    base = multiply(rel.c2, Deg8(v_lead, Fraction(0)), rel)
    slope = multiply(rel.c2, Deg8(Fraction(0), Fraction(1)), rel)
    gamma = (c2_dot_v - base) / slope
    v = Deg8(v_lead, gamma)
    trail.append(
        f"c2*v equation: {format_rational(c2_dot_v)} = {format_rational(base)} "
        f"+ gamma*{format_rational(slope)} -> gamma = {format_rational(gamma)}"
    )

    # w = (C(w)/C(qbar)) qbar + lambda z, lambda fixed by w*v
    w_lead = c_w / rel.c_qbar
    base_w = multiply(Deg4(w_lead, Fraction(0)), v, rel)
    slope_w = multiply(Deg4(Fraction(0), Fraction(1)), v, rel)
    lam = (w_dot_v - base_w) / slope_w
    w = Deg4(w_lead, lam)
    trail.append(
        f"w*v equation: {format_rational(w_dot_v)} = {format_rational(base_w)} "
        f"+ lambda*{format_rational(slope_w)} -> lambda = {format_rational(lam)}"
    )

    w_cube = multiply(w, multiply(w, w, rel), rel)
    w_component_cube = w_component_cube_solver(w_cube)
    trail.append(
        f"w^3 = {format_rational(w_cube)}; "
        f"component cube = {format_rational(w_component_cube)}"
    )

    integral_w = Deg4(8 - 3 * rel.ratio, Fraction(-3))
    integral_3v = Deg8(
        7 * rel.c4.qbar2 - rel.c2_squared.qbar2,
        7 * rel.c4.qbarz - rel.c2_squared.qbarz,
    )

    return WVClasses(
        w=w,
        v=v,
        c_w=c_w,
        c_v=c_v,
        c2_dot_v=c2_dot_v,
        w_dot_v=w_dot_v,
        w_cube=w_cube,
        w_component_cube=w_component_cube,
        integral_w=integral_w,
        integral_3v=integral_3v,
        trail=tuple(trail),
    )


@dataclass(frozen=True)
class AuxiliaryValues:
    """Second-order invariants of one fixed-fourfold class w_tau."""

    c_w_sq: Fraction            # C(w^2)
    c_w_component_sq: Fraction  # C(w_tau^2)
    c4_w_component: Fraction    # c4 * w_tau
    qbar_w_sq: Fraction         # qbar * w_tau^2
    qbar_w_pair: Fraction       # qbar * w_tau * w_tau'
    c_v_pair: Fraction
    trail: tuple[str, ...]


def auxiliary_values(rel: ZRelations, wv: WVClasses, data: WVInputs) -> AuxiliaryValues:
    n = data.label_count
    c_w_sq = c_of(multiply(wv.w, wv.w, rel), rel)
    c_w_component_sq = (c_w_sq - n * (n - 1) * data.c_v_pair) / n
    c4_w_component = multiply(wv.w, rel.c4, rel) / n
    qbar_w_sq = rel.factor_deg8 * c_w_component_sq
    qbar_w_pair = rel.factor_deg8 * data.c_v_pair
    trail = (
        f"C(w^2) = {format_rational(c_w_sq)} = {n}*C(w_tau^2) "
        f"+ {n * (n - 1)}*{format_rational(data.c_v_pair)}",
        f"c4*w_tau = (c4*w)/{n} = {format_rational(c4_w_component)}",
        f"qbar products by the degree-8 factor {format_rational(rel.factor_deg8)}",
    )
    return AuxiliaryValues(
        c_w_sq=c_w_sq,
        c_w_component_sq=c_w_component_sq,
        c4_w_component=c4_w_component,
        qbar_w_sq=qbar_w_sq,
        qbar_w_pair=qbar_w_pair,
        c_v_pair=data.c_v_pair,
        trail=trail,
    )
