import math
from dataclasses import dataclass, fields
from enum import Enum
from typing import Dict, Sequence, Union

from askey.error_handler import DomainError

PAIR_EPS = 1e-12


class Family(Enum):
    WILSON = "wilson"
    CDH = "cdh"
    CHAHN = "chahn"
    MP = "mp"

    @property
    def growth_order(self) -> int:
        """g in |P_n| <= K (n!)^g (1+n)^sigma"""
        return {"wilson": 3, "cdh": 2, "chahn": 1, "mp": 0}[self.value]

    @property
    def whole_line(self) -> bool:
        return self in (Family.CHAHN, Family.MP)


def check_conjugate_pairs(values: Sequence[complex], eps: float = PAIR_EPS) -> None:
    """Every non-real value must be matched by its conjugate

    Values are sorted by (Re, |Im|) and matched greedily, so the outcome
    does not depend on the argument order.
    """
    pending = sorted(
        (complex(v) for v in values if abs(complex(v).imag) > eps),
        key=lambda v: (v.real, abs(v.imag), v.imag),
    )
    while pending:
        head = pending.pop(0)
        for index, other in enumerate(pending):
            if abs(other - head.conjugate()) <= eps:
                pending.pop(index)
                break
        else:
            raise DomainError(f"parameter {head} has no conjugate partner")


def _check_positive_real_parts(record) -> None:
    for field in fields(record):
        value = getattr(record, field.name)
        if value.real <= 0:
            raise DomainError(f"{field.name}={value} needs a positive real part")


@dataclass(frozen=True)
class WilsonParams:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for field in fields(self):
            object.__setattr__(self, field.name, complex(getattr(self, field.name)))
        _check_positive_real_parts(self)
        check_conjugate_pairs(self.as_tuple())

    def as_tuple(self):
        return self.a, self.b, self.c, self.d

    @property
    def total(self) -> complex:
        return self.a + self.b + self.c + self.d


@dataclass(frozen=True)
class CdhParams:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for field in fields(self):
            object.__setattr__(self, field.name, complex(getattr(self, field.name)))
        _check_positive_real_parts(self)
        check_conjugate_pairs(self.as_tuple())

    def as_tuple(self):
        return self.a, self.b, self.c


@dataclass(frozen=True)
class ChahnParams:
    """Continuous Hahn parameters a, b; the other pair is conj(a), conj(b)"""

    a: complex
    b: complex

    def __post_init__(self):
        for field in fields(self):
            object.__setattr__(self, field.name, complex(getattr(self, field.name)))
        _check_positive_real_parts(self)

    def as_tuple(self):
        return self.a, self.b


@dataclass(frozen=True)
class MpParams:
    lam: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "phi", float(self.phi))
        if not self.lam > 0:
            raise DomainError(f"lambda={self.lam} must be positive")
        if not 0 < self.phi < math.pi:
            raise DomainError(f"phi={self.phi} must lie in (0, pi)")

    def as_tuple(self):
        return self.lam, self.phi


FamilyParams = Union[WilsonParams, CdhParams, ChahnParams, MpParams]

PARAMS_OF: Dict[Family, type] = {
    Family.WILSON: WilsonParams,
    Family.CDH: CdhParams,
    Family.CHAHN: ChahnParams,
    Family.MP: MpParams,
}


def family_of(params: FamilyParams) -> Family:
    for family, record in PARAMS_OF.items():
        if isinstance(params, record):
            return family
    raise DomainError(f"not a family parameter record: {params!r}")


def params_to_dict(params: FamilyParams) -> Dict[str, Union[complex, float]]:
    return {field.name: getattr(params, field.name) for field in fields(params)}
