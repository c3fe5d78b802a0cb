import cmath
import math
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from askey.arith import pochhammer_ratio
from askey.error_handler import DomainError, NonConvergence
from askey.families import (
    CdhParams,
    ChahnParams,
    Family,
    FamilyParams,
    MpParams,
    WilsonParams,
    family_of,
    params_to_dict,
    scaled_value,
)
from askey.hypergeom import DEFAULT_TOL, PfqSpec, SeriesValue, pfq
from askey.records import (
    Outcome,
    RecordKind,
    VerificationRecord,
    encode_value,
    relative_error,
)

TOL = 1e-8
K_START = 16
K_CAP = 2048
RHO_RADIUS = 0.5
BOUND_FRACTION = 0.9
MAX_ATTEMPTS = 64
SERIES_LIMIT = 0.95
IMAG_EPS = 1e-12
COEFFICIENT_TERMS = 64
COEFFICIENT_POINTS = 32


class RhoDomain(Enum):
    UNIT_DISK = "unit-disk"
    ENTIRE = "entire"
    # |rho| (sin phi + |sin(psi - phi)|) < sin psi
    ANGLE = "angle"


@dataclass(frozen=True)
class IdentityDescriptor:
    family: Family
    aux: Tuple[str, ...]
    rho_domain: RhoDomain
    anchor: str
    # (free auxiliary parameter, the parameter it equals at degeneration)
    free: Optional[Tuple[str, str]] = None
    # a side carries a principal power of 1 - rho
    power_of_one_minus_rho: bool = False

    @property
    def aux_arity(self) -> int:
        return len(self.aux)


class IdentityId(Enum):
    W_GF1 = "w-gf1"
    W_GF2 = "w-gf2"
    W_T1 = "w-t1"
    W_T2 = "w-t2"
    CDH_GF1 = "cdh-gf1"
    CDH_L6 = "cdh-l6"
    CDH_T1 = "cdh-t1"
    CDH_T2 = "cdh-t2"
    CDH_T3 = "cdh-t3"
    CH_T1 = "ch-t1"
    CH_T2 = "ch-t2"
    MP_T1 = "mp-t1"
    MP_T1E = "mp-t1e"
    MP_T2 = "mp-t2"
    MP_T3 = "mp-t3"

    @property
    def descriptor(self) -> IdentityDescriptor:
        return CATALOG[self]


CATALOG: Dict[IdentityId, IdentityDescriptor] = {
    IdentityId.W_GF1: IdentityDescriptor(
        Family.WILSON, (), RhoDomain.UNIT_DISK,
        "Wilson: product of two 2F1 as generating function",
    ),
    IdentityId.W_GF2: IdentityDescriptor(
        Family.WILSON, (), RhoDomain.UNIT_DISK,
        "Wilson: 4F3 generating function with argument -4rho/(1-rho)^2",
        power_of_one_minus_rho=True,
    ),
    IdentityId.W_T1: IdentityDescriptor(
        Family.WILSON, ("h",), RhoDomain.UNIT_DISK,
        "Wilson: 2F1 product re-expanded in W_k(a, b, c, h), inner 4F3",
        free=("h", "d"),
    ),
    IdentityId.W_T2: IdentityDescriptor(
        Family.WILSON, ("h",), RhoDomain.UNIT_DISK,
        "Wilson: quadratic 4F3 re-expanded in W_k(a, b, c, h), inner 3F2",
        free=("h", "d"),
        power_of_one_minus_rho=True,
    ),
    IdentityId.CDH_GF1: IdentityDescriptor(
        Family.CDH, (), RhoDomain.UNIT_DISK,
        "continuous dual Hahn: (1-rho)^(-c+ix) 2F1 generating function",
        power_of_one_minus_rho=True,
    ),
    IdentityId.CDH_L6: IdentityDescriptor(
        Family.CDH, ("b", "c", "d", "f"), RhoDomain.UNIT_DISK,
        "continuous dual Hahn: Maclaurin series of (1-rho)^(d-c) 2F1(b-f, d; b; rho)",
        free=("f", "b"),
        power_of_one_minus_rho=True,
    ),
    IdentityId.CDH_T1: IdentityDescriptor(
        Family.CDH, ("f",), RhoDomain.UNIT_DISK,
        "continuous dual Hahn: 2F1 generating function re-expanded in S_k(a, d, f)",
        free=("f", "b"),
        power_of_one_minus_rho=True,
    ),
    IdentityId.CDH_T2: IdentityDescriptor(
        Family.CDH, ("d",), RhoDomain.ENTIRE,
        "continuous dual Hahn: e^rho 2F2 re-expanded in S_k(a, b, d), inner 1F1",
        free=("d", "c"),
    ),
    IdentityId.CDH_T3: IdentityDescriptor(
        Family.CDH, ("d", "gamma"), RhoDomain.UNIT_DISK,
        "continuous dual Hahn: gamma 3F2 re-expanded in S_k(a, b, d), inner 2F1",
        free=("d", "c"),
        power_of_one_minus_rho=True,
    ),
    IdentityId.CH_T1: IdentityDescriptor(
        Family.CHAHN, ("c",), RhoDomain.ENTIRE,
        "continuous Hahn: 1F1 product re-expanded in p_k(a, c), inner 4F5",
        free=("c", "b"),
    ),
    IdentityId.CH_T2: IdentityDescriptor(
        Family.CHAHN, ("c",), RhoDomain.UNIT_DISK,
        "continuous Hahn: quadratic 3F2 re-expanded in p_k(a, c), inner 2F1",
        free=("c", "b"),
        power_of_one_minus_rho=True,
    ),
    IdentityId.MP_T1: IdentityDescriptor(
        Family.MP, ("psi",), RhoDomain.ANGLE,
        "Meixner-Pollaczek: power generating function re-expanded at angle psi",
        free=("psi", "phi"),
    ),
    IdentityId.MP_T1E: IdentityDescriptor(
        Family.MP, ("psi",), RhoDomain.ANGLE,
        "Meixner-Pollaczek: closed form of the angle psi re-expansion",
        free=("psi", "phi"),
    ),
    IdentityId.MP_T2: IdentityDescriptor(
        Family.MP, ("psi",), RhoDomain.ENTIRE,
        "Meixner-Pollaczek: e^rho 1F1 re-expanded at angle psi",
        free=("psi", "phi"),
    ),
    IdentityId.MP_T3: IdentityDescriptor(
        Family.MP, ("psi", "gamma"), RhoDomain.ANGLE,
        "Meixner-Pollaczek: gamma 2F1 re-expanded at angle psi",
        free=("psi", "phi"),
        power_of_one_minus_rho=True,
    ),
}


@dataclass(frozen=True)
class IdentityInput:
    """One evaluation point of a catalog member

    For cdh-t1 the source triple (a, b, d) is stored as CdhParams(a, b, c=d).
    cdh-l6 carries no family parameters, only its auxiliary b, c, d, f.
    """

    id: IdentityId
    params: Optional[FamilyParams]
    aux: Dict[str, complex] = field(default_factory=dict)
    x: float = 0.0
    rho: complex = 0j

    def __post_init__(self):
        identity = IdentityId(self.id)
        descriptor = identity.descriptor
        object.__setattr__(self, "id", identity)

        if set(self.aux) != set(descriptor.aux):
            raise DomainError(
                f"{identity.value} takes auxiliary {list(descriptor.aux)}, "
                f"got {sorted(self.aux)}"
            )
        aux = {
            name: float(value) if name == "psi" else complex(value)
            for name, value in self.aux.items()
        }
        object.__setattr__(self, "aux", aux)

        if identity is IdentityId.CDH_L6:
            if self.params is not None:
                raise DomainError("cdh-l6 takes no family parameters")
        elif family_of(self.params) is not descriptor.family:
            raise DomainError(
                f"{identity.value} needs {descriptor.family.value} parameters"
            )

        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "rho", complex(self.rho))


def input_echo(inp: IdentityInput) -> dict:
    params = params_to_dict(inp.params) if inp.params is not None else {}
    return encode_value(
        {"params": params, "aux": dict(inp.aux), "x": inp.x, "rho": inp.rho}
    )


# domain


def rho_bound(inp: IdentityInput) -> float:
    """Supremum of |rho| allowed by the member's hypotheses"""
    domain = inp.id.descriptor.rho_domain
    if domain is RhoDomain.UNIT_DISK:
        return 1.0
    if domain is RhoDomain.ENTIRE:
        return math.inf
    phi, psi = inp.params.phi, inp.aux["psi"]
    return math.sin(psi) / (math.sin(phi) + abs(math.sin(psi - phi)))


def target_params(inp: IdentityInput) -> Optional[FamilyParams]:
    """Parameters of the polynomials on the right side"""
    identity, p = inp.id, inp.params
    if identity in (IdentityId.W_T1, IdentityId.W_T2):
        return WilsonParams(p.a, p.b, p.c, inp.aux["h"])
    if identity is IdentityId.CDH_T1:
        # S_k(a, d, f), stored as (a, f, d) so that f = b gives back (a, b, d)
        return CdhParams(p.a, inp.aux["f"], p.c)
    if identity in (IdentityId.CDH_T2, IdentityId.CDH_T3):
        return CdhParams(p.a, p.b, inp.aux["d"])
    if identity in (IdentityId.CH_T1, IdentityId.CH_T2):
        return ChahnParams(p.a, inp.aux["c"])
    if identity in (IdentityId.MP_T1, IdentityId.MP_T1E, IdentityId.MP_T2, IdentityId.MP_T3):
        return MpParams(p.lam, inp.aux["psi"])
    return p


def check_hypotheses(inp: IdentityInput) -> None:
    """Raise DomainError unless the member's hypotheses hold"""
    descriptor = inp.id.descriptor
    if descriptor.family in (Family.WILSON, Family.CDH) and inp.x < 0:
        raise DomainError(f"{inp.id.value} takes x >= 0, got {inp.x}")

    if abs(inp.rho) >= rho_bound(inp):
        raise DomainError(
            f"rho={inp.rho} outside the {descriptor.rho_domain.value} domain "
            f"of {inp.id.value}"
        )

    if inp.id is IdentityId.CDH_L6:
        for name in ("b", "c"):
            if inp.aux[name].real <= 0:
                raise DomainError(f"{name}={inp.aux[name]} needs a positive real part")
        return

    if descriptor.family is Family.CHAHN:
        shifted = (inp.params.b, inp.aux["c"])
        if any(abs(v.imag - inp.params.a.imag) > IMAG_EPS for v in shifted):
            raise DomainError(f"{inp.id.value} needs Im a = Im b = Im c")
        if inp.aux["c"].real <= 0:
            raise DomainError(f"c={inp.aux['c']} needs a positive real part")

    # validates positivity, conjugate pairs and psi in (0, pi)
    target_params(inp)


def _quadratic(rho: complex) -> complex:
    return -4 * rho / (1 - rho) ** 2


def series_arguments(inp: IdentityInput) -> List[complex]:
    """Arguments of the p = q + 1 series on either side"""
    identity, rho = inp.id, inp.rho
    if identity in (
        IdentityId.W_GF1,
        IdentityId.W_T1,
        IdentityId.CDH_GF1,
        IdentityId.CDH_L6,
        IdentityId.CDH_T1,
    ):
        return [rho]
    if identity is IdentityId.W_GF2:
        return [_quadratic(rho)]
    if identity is IdentityId.W_T2:
        return [_quadratic(rho), rho]
    if identity is IdentityId.CDH_T3:
        return [rho / (rho - 1), rho]
    if identity is IdentityId.CH_T2:
        return [_quadratic(rho), rho**2]
    if identity is IdentityId.MP_T3:
        return [(1 - cmath.exp(-2j * inp.params.phi)) * rho / (rho - 1)]
    return []


def skip_reason(inp: IdentityInput) -> Optional[str]:
    """Why a hypothesis-satisfying input cannot be summed by series, or None"""
    for z in series_arguments(inp):
        if abs(z) > SERIES_LIMIT:
            return f"series argument |z|={abs(z):.4g} outside |z| <= {SERIES_LIMIT}"
    if inp.id.descriptor.power_of_one_minus_rho and (1 - inp.rho).real <= 0:
        return "1 - rho outside the right half-plane"
    return None


def in_domain(inp: IdentityInput) -> bool:
    try:
        check_hypotheses(inp)
    except DomainError:
        return False
    return skip_reason(inp) is None


def _check_domain(inp: IdentityInput) -> None:
    check_hypotheses(inp)
    reason = skip_reason(inp)
    if reason is not None:
        raise DomainError(reason)


# left sides


def _series(numerator: Sequence[complex], denominator: Sequence[complex], z: complex, tol: float) -> complex:
    result = pfq(PfqSpec(tuple(numerator), tuple(denominator), z), tol)
    if not result.converged:
        raise NonConvergence(
            f"{len(numerator)}F{len(denominator)} at z={z:.4g} did not converge"
        )
    return result.value


def _power(base: complex, exponent: complex) -> complex:
    """Principal branch of base**exponent"""
    base = complex(base)
    if base.real <= 0:
        raise DomainError(f"principal power needs Re(base) > 0, got {base}")
    return cmath.exp(exponent * cmath.log(base))


def _lhs_wilson_product(inp, tol):
    a, b, c, d = inp.params.as_tuple()
    y, rho = 1j * inp.x, inp.rho
    return _series([a + y, c + y], [a + c], rho, tol) * _series(
        [b - y, d - y], [b + d], rho, tol
    )


def _lhs_wilson_quadratic(inp, tol):
    a, b, c, d = inp.params.as_tuple()
    y, rho = 1j * inp.x, inp.rho
    s = a + b + c + d
    series = _series(
        [(s - 1) / 2, s / 2, a + y, a - y], [a + b, a + c, a + d], _quadratic(rho), tol
    )
    return _power(1 - rho, 1 - s) * series


def _lhs_cdh_power(inp, tol):
    a, b, c = inp.params.as_tuple()
    y, rho = 1j * inp.x, inp.rho
    return _power(1 - rho, -c + y) * _series([a + y, b + y], [a + b], rho, tol)


def _lhs_cdh_lemma(inp, tol):
    b, c, d, f = (inp.aux[name] for name in ("b", "c", "d", "f"))
    return _power(1 - inp.rho, d - c) * _series([b - f, d], [b], inp.rho, tol)


def _lhs_cdh_exponential(inp, tol):
    a, b, c = inp.params.as_tuple()
    y, rho = 1j * inp.x, inp.rho
    return cmath.exp(rho) * _series([a + y, a - y], [a + b, a + c], -rho, tol)


def _lhs_cdh_gamma(inp, tol):
    a, b, c = inp.params.as_tuple()
    y, rho, g = 1j * inp.x, inp.rho, inp.aux["gamma"]
    series = _series([g, a + y, a - y], [a + b, a + c], rho / (rho - 1), tol)
    return _power(1 - rho, -g) * series


def _lhs_chahn_product(inp, tol):
    a, b = inp.params.as_tuple()
    y, rho = 1j * inp.x, inp.rho
    return _series([a + y], [2 * a.real], -1j * rho, tol) * _series(
        [b.conjugate() - y], [2 * b.real], 1j * rho, tol
    )


def _lhs_chahn_quadratic(inp, tol):
    a, b = inp.params.as_tuple()
    y, rho = 1j * inp.x, inp.rho
    ra, rb = a.real, b.real
    series = _series(
        [ra + rb - 0.5, ra + rb, a + y], [2 * ra, a + b.conjugate()], _quadratic(rho), tol
    )
    return _power(1 - rho, 1 - 2 * ra - 2 * rb) * series


def _lhs_mp_power(inp, tol):
    lam, phi = inp.params.as_tuple()
    return _mp_closed(lam, phi, inp.x, inp.rho)


def _lhs_mp_exponential(inp, tol):
    lam, phi = inp.params.as_tuple()
    rho = inp.rho
    z = (cmath.exp(-2j * phi) - 1) * rho
    return cmath.exp(rho) * _series([lam + 1j * inp.x], [2 * lam], z, tol)


def _lhs_mp_gamma(inp, tol):
    lam, phi = inp.params.as_tuple()
    rho, g = inp.rho, inp.aux["gamma"]
    z = (1 - cmath.exp(-2j * phi)) * rho / (rho - 1)
    return _power(1 - rho, -g) * _series([g, lam + 1j * inp.x], [2 * lam], z, tol)


def _mp_closed(lam: float, angle: float, x: float, z: complex) -> complex:
    """(1 - e^{i angle} z)^{-lam + ix} (1 - e^{-i angle} z)^{-lam - ix}"""
    turn = cmath.exp(1j * angle)
    return _power(1 - turn * z, -lam + 1j * x) * _power(1 - z / turn, -lam - 1j * x)


_LHS = {
    IdentityId.W_GF1: _lhs_wilson_product,
    IdentityId.W_T1: _lhs_wilson_product,
    IdentityId.W_GF2: _lhs_wilson_quadratic,
    IdentityId.W_T2: _lhs_wilson_quadratic,
    IdentityId.CDH_GF1: _lhs_cdh_power,
    IdentityId.CDH_T1: _lhs_cdh_power,
    IdentityId.CDH_L6: _lhs_cdh_lemma,
    IdentityId.CDH_T2: _lhs_cdh_exponential,
    IdentityId.CDH_T3: _lhs_cdh_gamma,
    IdentityId.CH_T1: _lhs_chahn_product,
    IdentityId.CH_T2: _lhs_chahn_quadratic,
    IdentityId.MP_T1: _lhs_mp_power,
    IdentityId.MP_T1E: _lhs_mp_power,
    IdentityId.MP_T2: _lhs_mp_exponential,
    IdentityId.MP_T3: _lhs_mp_gamma,
}


def lhs(inp: IdentityInput, tol: float = DEFAULT_TOL) -> complex:
    """Closed-form left side of the identity

    Example:
        >>> p = WilsonParams(1, 1, 1, 1)
        >>> round(lhs(IdentityInput(IdentityId.W_GF1, p, x=0, rho=0.3)).real, 6)
        1.413522
    """
    _check_domain(inp)
    return complex(_LHS[inp.id](inp, tol))


# right sides


def _mp_angles(inp: IdentityInput) -> Tuple[float, float, float, float]:
    lam, phi = inp.params.as_tuple()
    return lam, phi, inp.aux["psi"], math.sin(inp.aux["psi"])


def _mp_shift(inp: IdentityInput) -> complex:
    """rho sin(psi - phi) / sin psi"""
    _, phi, psi, sin_psi = _mp_angles(inp)
    return inp.rho * math.sin(psi - phi) / sin_psi


def rho_tilde(inp: IdentityInput) -> complex:
    """rho sin phi / (sin psi - rho sin(psi - phi))"""
    _, phi, psi, sin_psi = _mp_angles(inp)
    return inp.rho * math.sin(phi) / (sin_psi - inp.rho * math.sin(psi - phi))


def rhs_prefactor(inp: IdentityInput) -> complex:
    identity = inp.id
    if identity in (IdentityId.MP_T1, IdentityId.MP_T1E):
        return _power(1 - _mp_shift(inp), -2 * inp.params.lam)
    if identity is IdentityId.MP_T2:
        return cmath.exp(_mp_shift(inp) * cmath.exp(-1j * inp.params.phi))
    if identity is IdentityId.MP_T3:
        return _power(1 - _mp_shift(inp) * cmath.exp(-1j * inp.params.phi), -inp.aux["gamma"])
    return 1 + 0j


def _coef_w_gf1(inp, k, tol):
    a, b, c, d = inp.params.as_tuple()
    return pochhammer_ratio([1, 1], [a + c, b + d], k, z=inp.rho)


def _coef_w_gf2(inp, k, tol):
    a, b, c, d = inp.params.as_tuple()
    abc = a + b + c
    return pochhammer_ratio([abc + d - 1, 1, 1], [a + b, a + c, a + d], k, z=inp.rho)


def _coef_w_t1(inp, k, tol):
    a, b, c, d = inp.params.as_tuple()
    h, rho = inp.aux["h"], inp.rho
    abc = a + b + c
    coefficient = pochhammer_ratio(
        [k + abc + d - 1, 1, 1], [k + abc + h - 1, a + c, b + d], k, z=rho
    )
    inner = _series(
        [d - h, 2 * k + abc + d - 1, k + a + b, k + b + c],
        [k + abc + d - 1, 2 * k + abc + h, k + b + d],
        rho,
        tol / 10,
    )
    return coefficient * inner


def _coef_w_t2(inp, k, tol):
    a, b, c, d = inp.params.as_tuple()
    h, rho = inp.aux["h"], inp.rho
    abc = a + b + c
    coefficient = pochhammer_ratio(
        [k + abc + d - 1, abc + d - 1, 1, 1],
        [k + abc + h - 1, a + b, a + c, a + d],
        k,
        z=rho,
    )
    inner = _series(
        [2 * k + abc + d - 1, d - h, k + b + c], [2 * k + abc + h, a + d + k], rho, tol / 10
    )
    return coefficient * inner


def _coef_cdh_gf1(inp, k, tol):
    a, b, _ = inp.params.as_tuple()
    return pochhammer_ratio([1], [a + b], k, z=inp.rho)


def _term_cdh_lemma(inp, m, tol):
    b, c, d, f = (inp.aux[name] for name in ("b", "c", "d", "f"))
    coefficient = pochhammer_ratio([c], [1], m, z=inp.rho)
    return coefficient * _series([-m, d, f], [b, c], 1, tol / 10)


def _coef_cdh_t1(inp, k, tol):
    a, b, d = inp.params.as_tuple()
    f, rho = inp.aux["f"], inp.rho
    coefficient = pochhammer_ratio([1], [a + b], k, z=rho)
    inner = _series([b - f, k + a + d], [k + a + b], rho, tol / 10)
    return coefficient * inner


def _coef_cdh_t2(inp, k, tol):
    a, b, c = inp.params.as_tuple()
    d, rho = inp.aux["d"], inp.rho
    coefficient = pochhammer_ratio([1], [a + b, a + c], k, z=rho)
    inner = _series([c - d], [k + a + c], rho, tol / 10)
    return coefficient * inner


def _coef_cdh_t3(inp, k, tol):
    a, b, c = inp.params.as_tuple()
    d, g, rho = inp.aux["d"], inp.aux["gamma"], inp.rho
    coefficient = pochhammer_ratio([g, 1], [a + b, a + c], k, z=rho)
    inner = _series([c - d, g + k], [k + a + c], rho, tol / 10)
    return coefficient * inner


def _coef_ch_t1(inp, k, tol):
    ra, rb, rc = inp.params.a.real, inp.params.b.real, inp.aux["c"].real
    rho = inp.rho
    coefficient = pochhammer_ratio(
        [k + 2 * ra + 2 * rb - 1, 1], [2 * ra, 2 * rb, k + 2 * ra + 2 * rc - 1], k, z=rho
    )
    inner = _series(
        [(ra + rb + k) / 2, (ra + rb + k + 1) / 2, ra + rb + k - 0.5, rb - rc],
        [ra + rb + (k - 1) / 2, ra + rb + k / 2, rb + k / 2, rb + (k + 1) / 2, ra + rc + k + 0.5],
        -(rho**2) / 4,
        tol / 10,
    )
    return coefficient * inner


def _coef_ch_t2(inp, k, tol):
    ra, rb, rc = inp.params.a.real, inp.params.b.real, inp.aux["c"].real
    rho = inp.rho
    # (2A+2B-1)_{2k} = 4^k (A+B-1/2)_k (A+B)_k, the (A+B)_k cancels
    coefficient = pochhammer_ratio(
        [ra + rb - 0.5, 1], [2 * ra, k + 2 * ra + 2 * rc - 1], k, z=-4j * rho
    )
    inner = _series([ra + rb + k - 0.5, rb - rc], [ra + rc + k + 0.5], rho**2, tol / 10)
    return coefficient * inner


def _coef_mp_t1(inp, k, tol):
    return rho_tilde(inp) ** k


def _coef_mp_t2(inp, k, tol):
    lam, phi, _, sin_psi = _mp_angles(inp)
    z = inp.rho * math.sin(phi) / (sin_psi * cmath.exp(1j * phi))
    return pochhammer_ratio([], [2 * lam], k, z=z)


def _coef_mp_t3(inp, k, tol):
    lam, phi, _, sin_psi = _mp_angles(inp)
    turn = cmath.exp(1j * phi)
    z = inp.rho * math.sin(phi) / (sin_psi * turn * (1 - _mp_shift(inp) / turn))
    return pochhammer_ratio([inp.aux["gamma"]], [2 * lam], k, z=z)


# coefficient of P_k / (k!)^g in the right-hand series, prefactor excluded
_COEFFICIENT = {
    IdentityId.W_GF1: _coef_w_gf1,
    IdentityId.W_GF2: _coef_w_gf2,
    IdentityId.W_T1: _coef_w_t1,
    IdentityId.W_T2: _coef_w_t2,
    IdentityId.CDH_GF1: _coef_cdh_gf1,
    IdentityId.CDH_T1: _coef_cdh_t1,
    IdentityId.CDH_T2: _coef_cdh_t2,
    IdentityId.CDH_T3: _coef_cdh_t3,
    IdentityId.CH_T1: _coef_ch_t1,
    IdentityId.CH_T2: _coef_ch_t2,
    IdentityId.MP_T1: _coef_mp_t1,
    IdentityId.MP_T1E: _coef_mp_t1,
    IdentityId.MP_T2: _coef_mp_t2,
    IdentityId.MP_T3: _coef_mp_t3,
}


def _term(inp: IdentityInput, k: int, tol: float) -> complex:
    if inp.id is IdentityId.CDH_L6:
        return _term_cdh_lemma(inp, k, tol)
    return scaled_value(k, inp.x, target_params(inp)) * _COEFFICIENT[inp.id](inp, k, tol)


def rhs_terms(inp: IdentityInput, K: int, tol: float = TOL, start: int = 0) -> List[complex]:
    """Terms k = start..K of the right-hand series, without the prefactor"""
    return [complex(_term(inp, k, tol)) for k in range(start, K + 1)]


def rhs_coefficient(inp: IdentityInput, k: int, tol: float = TOL) -> complex:
    """Coefficient of P_k / (k!)^g on the right side, prefactor included

    The polynomial carries target_params(inp); x plays no part.
    """
    if inp.id is IdentityId.CDH_L6:
        raise DomainError("cdh-l6 is a power series in rho with no polynomial factor")
    check_hypotheses(inp)
    return complex(rhs_prefactor(inp) * _COEFFICIENT[inp.id](inp, k, tol))


def _summed(prefactor: complex, terms: List[complex], tol: float) -> SeriesValue:
    value = prefactor * sum(terms)
    tail = abs(prefactor) * max(abs(t) for t in terms[-2:])
    return SeriesValue(value, tail, len(terms), tail <= tol * max(1.0, abs(value)))


def _closed_rhs(inp: IdentityInput) -> complex:
    lam, _, psi, _ = _mp_angles(inp)
    return rhs_prefactor(inp) * _mp_closed(lam, psi, inp.x, rho_tilde(inp))


def rhs_truncated(inp: IdentityInput, K: int, tol: float = TOL) -> SeriesValue:
    """Right side summed over k = 0..K

    Inner hypergeometric factors run at tol / 10. The tail estimate is the
    larger of the last two term magnitudes; mp-t1e is a closed form and
    needs no truncation.
    """
    if not 0 <= K <= K_CAP:
        raise DomainError(f"K={K} outside [0, {K_CAP}]")
    _check_domain(inp)

    if inp.id is IdentityId.MP_T1E:
        return SeriesValue(_closed_rhs(inp), 0.0, 0, True)
    return _summed(rhs_prefactor(inp), rhs_terms(inp, K, tol), tol)


def adaptive_rhs(
    inp: IdentityInput, tol: float = TOL, k_start: int = K_START, k_cap: int = K_CAP
) -> SeriesValue:
    """Double K from k_start until the tail estimate falls below tol / 10"""
    _check_domain(inp)
    if inp.id is IdentityId.MP_T1E:
        return SeriesValue(_closed_rhs(inp), 0.0, 0, True)

    prefactor = rhs_prefactor(inp)
    K = min(k_start, k_cap)
    terms = rhs_terms(inp, K, tol)
    while True:
        result = _summed(prefactor, terms, tol / 10)
        if result.converged or K >= k_cap:
            return result
        new_K = min(2 * K, k_cap)
        terms += rhs_terms(inp, new_K, tol, start=K + 1)
        K = new_K


def verify(
    inp: IdentityInput,
    tol: float = TOL,
    k_start: int = K_START,
    k_cap: int = K_CAP,
    trial: int = 0,
) -> VerificationRecord:
    """Compare both sides; failures and series-argument skips are recorded, not raised"""
    started = time.perf_counter()
    check_hypotheses(inp)
    record = VerificationRecord(RecordKind.IDENTITY, inp.id.value, trial, input_echo(inp))

    reason = skip_reason(inp)
    if reason is not None:
        record.outcome, record.reason = Outcome.SKIP, reason
    else:
        try:
            record.lhs = lhs(inp)
            result = adaptive_rhs(inp, tol, k_start, k_cap)
            record.rhs = result.value
        except (ArithmeticError, DomainError, NonConvergence) as e:
            record.outcome = Outcome.FAIL
            record.reason = f"{type(e).__name__}: {e}"
        else:
            record.rel_err = relative_error(record.lhs, record.rhs)
            if record.rel_err is not None and record.rel_err <= tol:
                record.outcome = Outcome.PASS
            else:
                record.outcome = Outcome.FAIL
                record.reason = "relative error above tolerance"
                if not result.converged:
                    record.reason = f"truncation unconverged at K={result.terms_used - 1}"

    record.wall_time_ms = (time.perf_counter() - started) * 1000
    return record


# degeneration and base generating functions


def degenerate(inp: IdentityInput) -> IdentityInput:
    """The input with its free parameter set back to the source parameter"""
    free = inp.id.descriptor.free
    if free is None:
        return inp
    name, source = free
    if inp.id is IdentityId.CDH_L6:
        value = inp.aux[source]
    else:
        value = getattr(inp.params, source)
    return replace(inp, aux={**inp.aux, name: value})


def _base_wilson_product(inp, k, tol):
    return scaled_value(k, inp.x, inp.params) * _coef_w_gf1(inp, k, tol)


def _base_wilson_quadratic(inp, k, tol):
    return scaled_value(k, inp.x, inp.params) * _coef_w_gf2(inp, k, tol)


def _base_cdh_power(inp, k, tol):
    return scaled_value(k, inp.x, inp.params) * _coef_cdh_gf1(inp, k, tol)


def _base_cdh_lemma(inp, m, tol):
    c, d = inp.aux["c"], inp.aux["d"]
    return pochhammer_ratio([c - d], [1], m, z=inp.rho)


def _base_cdh_exponential(inp, k, tol):
    a, b, c = inp.params.as_tuple()
    coefficient = pochhammer_ratio([1], [a + b, a + c], k, z=inp.rho)
    return scaled_value(k, inp.x, inp.params) * coefficient


def _base_cdh_gamma(inp, k, tol):
    a, b, c = inp.params.as_tuple()
    coefficient = pochhammer_ratio([inp.aux["gamma"], 1], [a + b, a + c], k, z=inp.rho)
    return scaled_value(k, inp.x, inp.params) * coefficient


def _base_chahn_product(inp, k, tol):
    ra, rb = inp.params.a.real, inp.params.b.real
    coefficient = pochhammer_ratio([1], [2 * ra, 2 * rb], k, z=inp.rho)
    return scaled_value(k, inp.x, inp.params) * coefficient


def _base_chahn_quadratic(inp, k, tol):
    a, b = inp.params.as_tuple()
    ra, rb = a.real, b.real
    coefficient = pochhammer_ratio(
        [2 * ra + 2 * rb - 1, 1], [2 * ra, a + b.conjugate()], k, z=-1j * inp.rho
    )
    return scaled_value(k, inp.x, inp.params) * coefficient


def _base_mp_power(inp, k, tol):
    return scaled_value(k, inp.x, inp.params) * inp.rho**k


def _base_mp_exponential(inp, k, tol):
    lam, phi = inp.params.as_tuple()
    z = inp.rho / cmath.exp(1j * phi)
    return scaled_value(k, inp.x, inp.params) * pochhammer_ratio([], [2 * lam], k, z=z)


def _base_mp_gamma(inp, k, tol):
    lam, phi = inp.params.as_tuple()
    z = inp.rho / cmath.exp(1j * phi)
    coefficient = pochhammer_ratio([inp.aux["gamma"]], [2 * lam], k, z=z)
    return scaled_value(k, inp.x, inp.params) * coefficient


_BASE = {
    IdentityId.W_GF1: _base_wilson_product,
    IdentityId.W_T1: _base_wilson_product,
    IdentityId.W_GF2: _base_wilson_quadratic,
    IdentityId.W_T2: _base_wilson_quadratic,
    IdentityId.CDH_GF1: _base_cdh_power,
    IdentityId.CDH_T1: _base_cdh_power,
    IdentityId.CDH_L6: _base_cdh_lemma,
    IdentityId.CDH_T2: _base_cdh_exponential,
    IdentityId.CDH_T3: _base_cdh_gamma,
    IdentityId.CH_T1: _base_chahn_product,
    IdentityId.CH_T2: _base_chahn_quadratic,
    IdentityId.MP_T1: _base_mp_power,
    IdentityId.MP_T1E: _base_mp_power,
    IdentityId.MP_T2: _base_mp_exponential,
    IdentityId.MP_T3: _base_mp_gamma,
}


def base_terms(inp: IdentityInput, K: int, tol: float = TOL) -> List[complex]:
    """Terms k = 0..K of the generating function the member generalizes"""
    base = _BASE[inp.id]
    return [complex(base(inp, k, tol)) for k in range(K + 1)]


# coefficient extraction


def series_coefficient(
    inp: IdentityInput,
    m: int,
    K: int = COEFFICIENT_TERMS,
    radius: Optional[float] = None,
    points: int = COEFFICIENT_POINTS,
) -> complex:
    """m-th Maclaurin coefficient in rho of the truncated right side

    A discrete Cauchy integral on |rho| = radius, taken with the FFT.
    """
    if not 0 <= m < points:
        raise DomainError(f"coefficient index m={m} needs 0 <= m < points={points}")
    if radius is None:
        radius = 0.1 * min(1.0, rho_bound(inp))

    nodes = radius * np.exp(2j * np.pi * np.arange(points) / points)
    values = np.array(
        [rhs_truncated(replace(inp, rho=complex(z)), K).value for z in nodes]
    )
    return complex(np.fft.fft(values)[m] / points / radius**m)


def lhs_derivative_at_zero(inp: IdentityInput, step: float = 1e-3) -> complex:
    """d lhs / d rho at 0 by central differences, Richardson-extrapolated twice"""

    def central(h):
        forward = lhs(replace(inp, rho=h))
        backward = lhs(replace(inp, rho=-h))
        return (forward - backward) / (2 * h)

    def once(h):
        return (4 * central(h / 2) - central(h)) / 3

    return (16 * once(step / 2) - once(step)) / 15


# sampling


def _uniform(rng: np.random.Generator, bounds: Sequence[float]) -> float:
    return float(rng.uniform(bounds[0], bounds[1]))


def _positive(rng, sampling) -> float:
    return _uniform(rng, sampling["RE_RANGE"])


def _complex(rng, sampling) -> complex:
    return complex(_positive(rng, sampling), _uniform(rng, sampling["IM_RANGE"]))


def _paired(rng, sampling) -> bool:
    return bool(rng.random() < sampling["PAIR_PROBABILITY"])


def _draw(identity: IdentityId, rng: np.random.Generator, sampling: dict):
    family = identity.descriptor.family
    aux: Dict[str, complex] = {}

    if family is Family.WILSON:
        a, b, c, d = (_positive(rng, sampling) for _ in range(4))
        if _paired(rng, sampling):
            a = _complex(rng, sampling)
            b = a.conjugate()
        params = WilsonParams(a, b, c, d)
        if "h" in identity.descriptor.aux:
            aux["h"] = _positive(rng, sampling)

    elif identity is IdentityId.CDH_L6:
        params = None
        aux["b"], aux["c"] = _positive(rng, sampling), _positive(rng, sampling)
        for name in ("d", "f"):
            paired = _paired(rng, sampling)
            aux[name] = _complex(rng, sampling) if paired else _positive(rng, sampling)

    elif family is Family.CDH:
        a, b, c = (_positive(rng, sampling) for _ in range(3))
        if _paired(rng, sampling):
            a = _complex(rng, sampling)
            # cdh-t1 needs the pair inside both (a, b, d) and (a, d, f)
            if identity is IdentityId.CDH_T1:
                c = a.conjugate()
            else:
                b = a.conjugate()
        params = CdhParams(a, b, c)
        for name in identity.descriptor.aux:
            aux[name] = _complex(rng, sampling) if name == "gamma" else _positive(rng, sampling)

    elif family is Family.CHAHN:
        shift = _uniform(rng, sampling["IM_RANGE"])
        a, b, c = (complex(_positive(rng, sampling), shift) for _ in range(3))
        params = ChahnParams(a, b)
        aux["c"] = c
        # a common imaginary part only translates x; keep x + shift on the line
        return params, aux, _uniform(rng, sampling["WHOLE_LINE_X"]) - shift

    else:
        params = MpParams(_positive(rng, sampling), _uniform(rng, sampling["ANGLE_RANGE"]))
        aux["psi"] = _uniform(rng, sampling["ANGLE_RANGE"])
        if "gamma" in identity.descriptor.aux:
            aux["gamma"] = _complex(rng, sampling)

    line = "WHOLE_LINE_X" if family.whole_line else "HALF_LINE_X"
    return params, aux, _uniform(rng, sampling[line])


def sample_input(
    identity: IdentityId,
    rng: np.random.Generator,
    sampling: dict,
    radius: float = RHO_RADIUS,
    bound_fraction: float = BOUND_FRACTION,
    max_attempts: int = MAX_ATTEMPTS,
) -> IdentityInput:
    """Random admissible input, rho within bound_fraction of the member's bound

    Draws with a series argument outside the 0.95 disk are rejected; after
    max_attempts the last draw is returned and verify records it as a skip.
    """
    identity = IdentityId(identity)
    inp = None
    for _ in range(max_attempts):
        params, aux, x = _draw(identity, rng, sampling)
        inp = IdentityInput(identity, params, aux, x)
        r = min(radius, bound_fraction * rho_bound(inp))
        rho = r * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
        inp = replace(inp, rho=rho)
        if skip_reason(inp) is None:
            return inp
    return inp
