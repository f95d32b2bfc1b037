"""
Named constructions and the value realizer.

Each construction is a base element G with a shift t(X) = c*t_c + Σ x*t_x.
The engine supplies the affine maps (c, a, b) -> (A, B(ω)); the published
closed forms are only compared against, never trusted.
"""
import math
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

from ..conditions import DecisionStatus, decide
from ..config import settings
from ..detengine import DetReport, direct_determinant, factored_determinant
from ..exact import CyclotomicInt, QuadField, QuadInt, legendre, quad_embed, quad_from_surd, smallest_nonresidue
from ..exceptions import (
    BadResidue,
    BadS,
    InternalInconsistency,
    NotAchievable,
    PredictionMismatch,
    TagGroupMismatch,
    UnknownDecision,
    UnsupportedGroup,
)
from ..groups import GroupRingElement, GroupSpec, element_from_components, format_element, identity
from ..logging_config import get_logger
from .shift import ShiftSpec, neg_y, shift_construct, shift_predicted_A, shift_predicted_blocks

logger = get_logger(__name__)

BlockValue = Union[int, QuadInt]


class ConstructionTag(str, Enum):
    LEMMA_EX = "LemmaEx"
    GA_N2 = "GA_n2"
    GA7_MULT4 = "GA7_mult4"
    GA7_MULT9 = "GA7_mult9"
    G21_MULT9 = "G21_mult9"
    G55_MULT25 = "G55_mult25"
    G78_MULT6 = "G78_mult6"
    G78_MULT4 = "G78_mult4"
    G78_MULT9 = "G78_mult9"
    P_POWER = "PPower"
    NEG_Y = "NegY"


# Presentations the closed forms were derived for
TAG_GROUPS: Dict[ConstructionTag, Tuple[int, int, int]] = {
    ConstructionTag.GA7_MULT4: (7, 3, 6),
    ConstructionTag.GA7_MULT9: (7, 3, 6),
    ConstructionTag.G21_MULT9: (7, 2, 3),
    ConstructionTag.G55_MULT25: (11, 4, 5),
    ConstructionTag.G78_MULT6: (13, 4, 6),
    ConstructionTag.G78_MULT4: (13, 4, 6),
    ConstructionTag.G78_MULT9: (13, 4, 6),
}


class ConstructionParams(BaseModel):
    """Shift parameters: t = c*t_c + a*t_a + b*t_b, m copies of h; s, u, v for LemmaEx."""

    model_config = ConfigDict(frozen=True)

    c: int = 0
    a: int = 0
    b: int = 0
    m: int = 0
    s: int = 1
    u: Optional[int] = None
    v: Optional[int] = None


class Realization(BaseModel):
    """An element together with its verified factored determinant."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    element: GroupRingElement
    report: DetReport
    tag: ConstructionTag
    params: ConstructionParams
    negated: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.report.group.key,
            "tag": self.tag.value,
            "params": self.params.model_dump(exclude_none=True),
            "negated": self.negated,
            "element": format_element(self.element),
            "report": self.report.to_dict(),
        }


def _poly(p: int, terms: Dict[int, int]) -> List[int]:
    poly = [0] * p
    for exponent, coefficient in terms.items():
        poly[exponent % p] += coefficient
    return poly


def _element(g: GroupSpec, components: Dict[int, Dict[int, int]]) -> GroupRingElement:
    """Element from {j: {i: a_ij}}, i.e. Σ_j f_j(X) Y^j."""
    return element_from_components([_poly(g.p, components.get(j, {})) for j in range(g.n)], g)


def _check_tag_group(tag: ConstructionTag, g: GroupSpec) -> None:
    required = TAG_GROUPS.get(tag)
    if required is not None and (g.p, g.r, g.n) != required:
        raise TagGroupMismatch(f"{tag.value} needs the group {required}, got {g}")
    if tag is ConstructionTag.GA_N2 and not g.is_affine:
        raise TagGroupMismatch(f"{tag.value} needs n = p-1, got {g}")
    if tag is ConstructionTag.LEMMA_EX and not (g.is_affine or g.is_half):
        raise TagGroupMismatch(f"{tag.value} needs n = p-1 or n = (p-1)/2, got {g}")


def _lemma_ex_params(g: GroupSpec, params: ConstructionParams) -> ConstructionParams:
    """Validate s and fill in the default u = 1, v = smallest non-residue."""
    s, n, p = params.s, g.n, g.p
    if not 1 <= s < n and not (s == 1 and n == 1):
        raise BadS(f"s={s} must satisfy 1 <= s < n={n}")
    if math.gcd(s, n) != 1:
        raise BadS(f"gcd(s={s}, n={n}) != 1")
    if not g.is_half:
        return params
    u = 1 if params.u is None else params.u
    v = smallest_nonresidue(p) if params.v is None else params.v
    if legendre(u, p) != 1:
        raise BadResidue(f"u={u} is not a quadratic residue mod {p}")
    if legendre(v, p) != -1:
        raise BadResidue(f"v={v} is not a quadratic non-residue mod {p}")
    return params.model_copy(update={"u": u, "v": v})


def _recipe(tag: ConstructionTag, g: GroupSpec, params: ConstructionParams
            ) -> Tuple[GroupRingElement, List[int], Dict[str, List[int]]]:
    """(G, t_c, {name: t_name}) for the tag."""
    p = g.p
    one = _poly(p, {0: 1})
    T = ConstructionTag
    if tag is T.LEMMA_EX:
        base = _element(g, {j: {0: 1} for j in range(params.s)})
        if g.is_affine:
            return base, one, {"b": _poly(p, {0: 1, 1: -1})}
        return base, one, {
            "a": _poly(p, {0: 1, params.u: -1}),
            "b": _poly(p, {0: 1, params.v: -1}),
        }
    if tag is T.GA_N2:
        k = -pow(g.r - 1, -1, p) % p
        return _element(g, {0: {0: 1}, 1: {1: -1}}), one, {"a": _poly(p, {k: 1, 0: -1})}
    if tag is T.GA7_MULT4:
        base = _element(g, {0: {0: 1}, 1: {0: 1, 1: -1}, 2: {0: 1}})
        return base, _poly(p, {1: 1}), {"b": _poly(p, {1: 1, 6: -1})}
    if tag is T.GA7_MULT9:
        base = _element(g, {0: {0: 1}, 2: {1: 1}, 3: {0: 1}})
        return base, one, {"b": _poly(p, {0: 1, 3: -1})}
    if tag is T.G21_MULT9:
        base = _element(g, {0: {0: -1, 1: 1, 2: 1}, 1: {0: -1}})
        return base, one, {"a": _poly(p, {5: 1, 3: -1}), "b": _poly(p, {6: 1, 3: -1})}
    if tag is T.G55_MULT25:
        base = _element(g, {0: {5: 1}, 1: {3: 1, 0: -1}, 2: {0: -1}})
        return base, one, {"a": _poly(p, {0: 1, 5: -1}), "b": _poly(p, {2: 1, 5: -1})}
    if tag is T.G78_MULT6:
        base = _element(g, {0: {0: 1}, 1: {0: -1}, 3: {10: 1, 0: -1}})
        return base, one, {"a": _poly(p, {3: 1, 10: -1}), "b": _poly(p, {1: 1, 3: -1})}
    if tag is T.G78_MULT4:
        base = _element(g, {0: {0: 1}, 1: {0: 1, 1: -1}, 2: {0: 1}})
        return base, one, {"a": _poly(p, {11: 1, 0: -1}), "b": _poly(p, {11: 1, 4: -1})}
    if tag is T.G78_MULT9:
        base = _element(g, {0: {0: 1}, 2: {1: 1}, 3: {0: 1}})
        return base, one, {"a": _poly(p, {0: 1, 7: -1}), "b": _poly(p, {0: 2, 3: -1, 7: -1})}
    if tag is T.P_POWER:
        components: Dict[int, Dict[int, int]] = {}
        for k in range(p):
            slot = components.setdefault(k % g.n, {0: 0})
            slot[0] += 1
        return _element(g, components), one, {}
    raise ValueError(f"{tag.value} is not a shift construction")


def construction_base(tag: ConstructionTag, g: GroupSpec, params: Optional[ConstructionParams] = None
                      ) -> GroupRingElement:
    """The unshifted element G of a construction."""
    params = params or ConstructionParams()
    _check_tag_group(tag, g)
    if tag is ConstructionTag.NEG_Y:
        return neg_y(identity(g), g)
    if tag is ConstructionTag.LEMMA_EX:
        params = _lemma_ex_params(g, params)
    return _recipe(tag, g, params)[0]


def _combine(p: int, weighted: Sequence[Tuple[int, List[int]]]) -> Tuple[int, ...]:
    t = [0] * p
    for weight, poly in weighted:
        for i, c in enumerate(poly):
            t[i] += weight * c
    return tuple(t)


def _shift_spec(tag: ConstructionTag, g: GroupSpec, params: ConstructionParams) -> ShiftSpec:
    base, t_c, free = _recipe(tag, g, params)
    weighted = [(params.c, t_c)] + [(getattr(params, name), poly) for name, poly in free.items()]
    return ShiftSpec(G_base=base, t_poly=_combine(g.p, weighted), m=params.m)


# Closed forms as printed; B is the block at ω


def _surd(g: GroupSpec, a2: int, b2: int) -> QuadInt:
    return quad_from_surd(QuadField(g.p), a2, b2)


def published_form(tag: ConstructionTag, g: GroupSpec, params: ConstructionParams
                   ) -> Optional[Tuple[int, BlockValue]]:
    """(A, B(ω)) from the printed formulas, or None where none is printed."""
    T = ConstructionTag
    p, n = g.p, g.n
    c, a, b, m, s = params.c, params.a, params.b, params.m, params.s
    if tag is T.LEMMA_EX:
        A = s + c * n + m * n * p
        if g.is_affine:
            return A, s + n * c + b * p
        return A, _surd(g, 2 * (s + n * c) + p * (a + b), b - a)
    if tag is T.GA_N2:
        return n * n * (c + m * p), c - a * p
    if params.m:
        return None
    if tag is T.GA7_MULT4:
        return 4 * (1 + 3 * c), -3 + 12 * c + 7 * b
    if tag is T.GA7_MULT9:
        return 9 * (1 + 2 * c), 2 + 4 * c + 7 * b
    if tag is T.G21_MULT9:
        return 9 * c, _surd(g, 4 * c + 7 * a + 7 * b, 4 * (1 - c) - a + b)
    if tag is T.G55_MULT25:
        return 25 * c, _surd(g, 2 * (25 * c + 11 * (a - 1 - 2 * c)) + 11 * (b + c + 1), b + c + 1)
    if tag is T.G78_MULT6:
        return 36 * c, _surd(g, 2 * (36 * c + 13 * (a + c - 1)) + 13 * (b - 2 * c + 1), b - 2 * c + 1)
    if tag is T.G78_MULT4:
        A = 4 * (1 + 3 * c)
        return A, _surd(g, 2 * A + 13 * (b - 1 - 2 * c), 2 * (a - c) - (b - 1 - 2 * c))
    if tag is T.G78_MULT9:
        A = 9 * (1 + 2 * c)
        return A, _surd(g, 2 * A + 13 * (b - 2 - 2 * c), 2 * (a - c - 1) - (b - 2 - 2 * c))
    return None


def _p_power_form(g: GroupSpec, params: ConstructionParams) -> Tuple[int, BlockValue]:
    return g.p + params.m * g.p * g.n, g.p


def _engine_block(report: DetReport, like: BlockValue) -> BlockValue:
    block = report.B_blocks[0]
    if isinstance(like, QuadInt):
        return quad_embed(block, like.field)
    return block.rational_value() if block.is_rational_integer() else block


def _compare_published(tag: ConstructionTag, g: GroupSpec, params: ConstructionParams,
                       report: DetReport) -> bool:
    if tag is ConstructionTag.P_POWER:
        form = _p_power_form(g, params)
    elif tag is ConstructionTag.NEG_Y:
        form = (-1, -1)
    else:
        form = published_form(tag, g, params)
    if form is None:
        return True
    A, block = form
    engine = _engine_block(report, block)
    if A == report.A and engine == block:
        return True
    logger.warning(
        "Published closed form differs from the engine",
        tag=tag.value,
        group=g.key,
        params=params.model_dump(exclude_none=True),
        published_A=A,
        published_B=str(block),
        engine_A=report.A,
        engine_B=str(engine),
    )
    return False


def _verify_prediction(tag: ConstructionTag, g: GroupSpec, report: DetReport,
                       A: int, blocks: Sequence[CyclotomicInt]) -> None:
    if report.A != A or tuple(report.B_blocks) != tuple(blocks):
        logger.error(
            "Shift prediction failed",
            tag=tag.value,
            group=g.key,
            predicted_A=A,
            engine_A=report.A,
            predicted_blocks=[str(x) for x in blocks],
            engine_blocks=[str(x) for x in report.B_blocks],
        )
        raise PredictionMismatch(f"{tag.value} on {g}: engine (A={report.A}) differs from the shift prediction (A={A})")


def _coerce_params(params: Union[ConstructionParams, Sequence[int], None]) -> ConstructionParams:
    if params is None:
        return ConstructionParams()
    if isinstance(params, ConstructionParams):
        return params
    names = ("c", "a", "b", "m")
    values = tuple(params)
    if len(values) > len(names):
        raise ValueError(f"expected at most (c, a, b, m), got {values}")
    return ConstructionParams(**dict(zip(names, values)))


def realize_class(g: GroupSpec, tag: ConstructionTag,
                  params: Union[ConstructionParams, Sequence[int], None] = None) -> Realization:
    """Build the construction, verify it against the shift prediction and compare the printed form."""
    prm = _coerce_params(params)
    _check_tag_group(tag, g)
    if tag is ConstructionTag.LEMMA_EX:
        prm = _lemma_ex_params(g, prm)

    if tag is ConstructionTag.NEG_Y:
        element = construction_base(tag, g)
        predicted_A = -1
        predicted_blocks: Tuple[CyclotomicInt, ...] = tuple(
            CyclotomicInt.from_int(g.p, -1) for _ in g.coset_reps
        )
    else:
        spec = _shift_spec(tag, g, prm)
        element = shift_construct(spec, g)
        predicted_A = shift_predicted_A(spec, g)
        predicted_blocks = shift_predicted_blocks(spec, g)

    report = factored_determinant(element, g)
    _verify_prediction(tag, g, report, predicted_A, predicted_blocks)
    _compare_published(tag, g, prm, report)
    logger.debug("Construction built", tag=tag.value, group=g.key, A=report.A, B=report.B)
    return Realization(element=element, report=report, tag=tag, params=prm)


def realize_lemma_ex(g: GroupSpec, s: int, params: Sequence[int], m: int = 0
                     ) -> Tuple[GroupRingElement, int, BlockValue]:
    """G = 1 + Y + ... + Y^(s-1) shifted by t = c + b(1-x), or c + a(1-x^u) + b(1-x^v) when n = (p-1)/2.

    Returns the element, A = s + cn + mnp and the predicted B(ω).
    """
    values = tuple(params)
    if g.is_affine:
        if len(values) != 2:
            raise ValueError(f"n = p-1 takes (c, b), got {values}")
        c, b = values
        prm = ConstructionParams(c=c, b=b, m=m, s=s)
    elif g.is_half:
        if len(values) != 5:
            raise ValueError(f"n = (p-1)/2 takes (c, a, b, u, v), got {values}")
        c, a, b, u, v = values
        prm = ConstructionParams(c=c, a=a, b=b, m=m, s=s, u=u, v=v)
    else:
        raise TagGroupMismatch(f"LemmaEx needs n = p-1 or n = (p-1)/2, got {g}")

    prm = _lemma_ex_params(g, prm)
    A, predicted_B = published_form(ConstructionTag.LEMMA_EX, g, prm)
    result = realize_class(g, ConstructionTag.LEMMA_EX, prm)
    engine_B = _engine_block(result.report, predicted_B)
    if result.report.A != A or engine_B != predicted_B:
        raise PredictionMismatch(
            f"LemmaEx on {g}: engine gives A={result.report.A}, B(ω)={engine_B}; expected A={A}, B(ω)={predicted_B}"
        )
    return result.element, A, predicted_B


# Solving for parameters


def _exact_div(numerator: int, denominator: int, what: str) -> int:
    if denominator == 0 or numerator % denominator:
        raise InternalInconsistency(f"{what}: {numerator} is not divisible by {denominator}")
    return numerator // denominator


def _first_block(spec: ShiftSpec, g: GroupSpec) -> CyclotomicInt:
    return shift_predicted_blocks(spec, g)[0]


def solve_params(g: GroupSpec, tag: ConstructionTag, A: int, block: BlockValue,
                 params: Optional[ConstructionParams] = None) -> ConstructionParams:
    """Parameters (c, a, b) of a construction with A and B(ω) equal to the targets, m = 0."""
    prm = (params or ConstructionParams()).model_copy(update={"c": 0, "a": 0, "b": 0, "m": 0})
    if tag is ConstructionTag.LEMMA_EX:
        prm = _lemma_ex_params(g, prm.model_copy(update={"s": A % g.n or g.n}))
    base, t_c, free = _recipe(tag, g, prm)

    zero = ShiftSpec(G_base=base)
    A0 = shift_predicted_A(zero, g)
    A1 = shift_predicted_A(ShiftSpec(G_base=base, t_poly=t_c), g) - A0
    c = _exact_div(A - A0, A1, f"{tag.value} parameter c")

    start = _first_block(ShiftSpec(G_base=base, t_poly=_combine(g.p, [(c, t_c)])), g)
    origin = _first_block(zero, g)
    directions = {name: _first_block(ShiftSpec(G_base=base, t_poly=poly), g) - origin for name, poly in free.items()}

    solved: Dict[str, int] = {"c": c}
    if isinstance(block, QuadInt):
        field = block.field
        residual = block - quad_embed(start, field)
        (name_a, dir_a), (name_b, dir_b) = [(name, quad_embed(d, field)) for name, d in directions.items()]
        det = dir_a.a * dir_b.b - dir_b.a * dir_a.b
        solved[name_a] = _exact_div(residual.a * dir_b.b - dir_b.a * residual.b, det, f"{tag.value} parameter {name_a}")
        solved[name_b] = _exact_div(dir_a.a * residual.b - residual.a * dir_a.b, det, f"{tag.value} parameter {name_b}")
    else:
        ((name, direction),) = directions.items()
        residual = block - start.rational_value()
        solved[name] = _exact_div(residual, direction.rational_value(), f"{tag.value} parameter {name}")
    return prm.model_copy(update=solved)


def tag_for(g: GroupSpec, m: int) -> ConstructionTag:
    """The construction covering A = m for g."""
    T = ConstructionTag
    n = g.n
    if math.gcd(m, n) == 1:
        return T.LEMMA_EX
    if g.is_affine and m % (n * n) == 0:
        return T.GA_N2
    key = (g.p, g.r, g.n)
    if key == TAG_GROUPS[T.GA7_MULT4]:
        return T.GA7_MULT4 if m % 4 == 0 else T.GA7_MULT9
    if key == TAG_GROUPS[T.G21_MULT9]:
        return T.G21_MULT9
    if key == TAG_GROUPS[T.G55_MULT25]:
        return T.G55_MULT25
    if key == TAG_GROUPS[T.G78_MULT6]:
        if m % 36 == 0:
            return T.G78_MULT6
        return T.G78_MULT4 if m % 4 == 0 else T.G78_MULT9
    raise UnsupportedGroup(f"no construction covers A={m} on {g}")


def realize_value(g: GroupSpec, D: int) -> Realization:
    """An element of Z[G] whose group determinant is exactly D."""
    T = ConstructionTag
    if D == -1:
        result = realize_class(g, T.NEG_Y)
    else:
        decision = decide(D, g)
        if decision.status is DecisionStatus.NOT_ACHIEVABLE:
            raise NotAchievable(f"{D} is not an integer group determinant of {g}: {decision.reason}")
        if decision.status is DecisionStatus.UNKNOWN:
            raise UnknownDecision(f"{D} on {g}: {decision.reason}")
        witness = decision.witness
        tag = tag_for(g, witness.m)
        A, block, negate = witness.m, witness.b, False
        if tag in (T.GA7_MULT4, T.G78_MULT4) and (A // 4) % 3 != 1:
            A, block, negate = -A, -block, True
        params = solve_params(g, tag, A, block)
        result = realize_class(g, tag, params)
        if negate:
            element = neg_y(result.element, g)
            result = result.model_copy(
                update={"element": element, "report": factored_determinant(element, g), "negated": True}
            )

    if result.report.D != D:
        raise InternalInconsistency(f"{result.tag.value} on {g} produced D={result.report.D}, wanted {D}")
    if settings.verify_direct:
        direct = direct_determinant(result.element, g)
        if direct != D:
            logger.error("Direct oracle rejected a realization", group=g.key, value=D, direct=direct)
            raise InternalInconsistency(f"direct determinant {direct} differs from {D} on {g}")
    logger.info("Value realized", group=g.key, value=D, tag=result.tag.value, negated=result.negated)
    return result


__all__ = [
    "ConstructionParams",
    "ConstructionTag",
    "Realization",
    "TAG_GROUPS",
    "construction_base",
    "published_form",
    "realize_class",
    "realize_lemma_ex",
    "realize_value",
    "solve_params",
    "tag_for",
]
