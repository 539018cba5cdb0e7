"""JSON wire formats.

Rationals travel only as strings, "p" or "p/q"; vectors are arrays of such
strings. Every ``*_from_dict`` raises ``SerializationError`` on malformed
input, while domain validation errors (bad delta, duplicate vectors, ...)
propagate from the constructors they come from.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from deltaset.bounds import BoundReport
from deltaset.constructions import ErratumRow, LiftResult
from deltaset.duality import Instance, Witness, WitnessFound, WitnessInfeasible, WitnessResult
from deltaset.errors import SerializationError
from deltaset.exact import QVector
from deltaset.lp import (
    Constraint,
    Feasible,
    Infeasible,
    LinearProgram,
    LPResult,
    Objective,
    Optimal,
    Relation,
    Sense,
    Unbounded,
)
from deltaset.norms import AdditivityReport, L1Norm, LInfNorm, Norm, PolytopeNorm
from deltaset.search import CliqueResult

_RATIONAL = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Any) -> Fraction:
    """Parse "p", "-p" or "p/q"; decimals and zero denominators are rejected."""
    if not isinstance(text, str):
        raise SerializationError(f"Rationals must be strings, got: {text!r}")
    text = text.strip()
    if not _RATIONAL.match(text):
        raise SerializationError(f"Malformed rational: {text!r}")
    if "/" in text and int(text.split("/", 1)[1]) == 0:
        raise SerializationError(f"Zero denominator in rational: {text!r}")
    return Fraction(text)


def vector_to_list(x: Sequence[Fraction]) -> List[str]:
    return [format_rational(a) for a in x]


def vector_from_list(data: Any) -> QVector:
    if not isinstance(data, list):
        raise SerializationError(f"Vectors must be arrays, got: {type(data).__name__}")
    return tuple(parse_rational(a) for a in data)


def vectors_from_list(data: Any) -> Tuple[QVector, ...]:
    if not isinstance(data, list):
        raise SerializationError(f"Expected an array of vectors, got: {type(data).__name__}")
    return tuple(vector_from_list(v) for v in data)


def _require(data: Any, key: str) -> Any:
    if not isinstance(data, dict):
        raise SerializationError(f"Expected a JSON object, got: {type(data).__name__}")
    if key not in data:
        raise SerializationError(f"Missing field '{key}'")
    return data[key]


def _require_int(data: Any, key: str) -> int:
    value = _require(data, key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SerializationError(f"Field '{key}' must be an integer, got: {value!r}")
    return value


def _require_bool(data: Any, key: str) -> bool:
    value = _require(data, key)
    if not isinstance(value, bool):
        raise SerializationError(f"Field '{key}' must be a boolean, got: {value!r}")
    return value


def _optional_int(data: Dict[str, Any], key: str) -> Optional[int]:
    value = data.get(key)
    if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
        raise SerializationError(f"Field '{key}' must be an integer or null, got: {value!r}")
    return value


# -- norms ---------------------------------------------------------------


def norm_to_dict(norm: Norm) -> Dict[str, Any]:
    data: Dict[str, Any] = {"kind": norm.kind, "dimension": norm.dimension}
    if isinstance(norm, PolytopeNorm):
        data["generators"] = [vector_to_list(g) for g in norm.generators]
    return data


def norm_from_dict(data: Any) -> Norm:
    kind = _require(data, "kind")
    dimension = _require_int(data, "dimension")
    if dimension < 1:
        raise SerializationError(f"Norm dimension must be positive, got: {dimension}")
    if kind == "linf":
        return LInfNorm(dimension)
    if kind == "l1":
        return L1Norm(dimension)
    if kind == "polytope":
        generators = vectors_from_list(_require(data, "generators"))
        return PolytopeNorm(dimension=dimension, generators=generators)
    raise SerializationError(f"Unknown norm kind '{kind}'. Available: linf, l1, polytope")


# -- instances and witnesses ---------------------------------------------


@dataclass(frozen=True)
class InstanceFile:
    """An Instance as exchanged between commands, with optional norm and witness."""

    instance: Instance
    norm: Optional[Norm] = None
    witness: Optional[Witness] = None


def witness_to_dict(witness: Witness) -> Dict[str, Any]:
    return {"ys": [vector_to_list(y) for y in witness.ys]}


def witness_from_dict(data: Any) -> Witness:
    return Witness(vectors_from_list(_require(data, "ys")))


def instance_to_dict(
    instance: Instance, norm: Optional[Norm] = None, witness: Optional[Witness] = None
) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "dimension": instance.dimension,
        "delta": format_rational(instance.delta),
        "vectors": [vector_to_list(x) for x in instance.xs],
    }
    if norm is not None:
        data["norm"] = norm_to_dict(norm)
    if witness is not None:
        data["witness"] = witness_to_dict(witness)
    return data


def instance_file_to_dict(document: InstanceFile) -> Dict[str, Any]:
    return instance_to_dict(document.instance, document.norm, document.witness)


def instance_file_from_dict(data: Any) -> InstanceFile:
    """Parse an InstanceFile; its declared dimension must match every vector."""
    dimension = _require_int(data, "dimension")
    delta = parse_rational(_require(data, "delta"))
    xs = vectors_from_list(_require(data, "vectors"))
    for i, x in enumerate(xs):
        if len(x) != dimension:
            raise SerializationError(
                f"Vector {i} has {len(x)} coordinates, file declares dimension {dimension}"
            )
    instance = Instance(delta=delta, xs=xs)
    norm = norm_from_dict(data["norm"]) if data.get("norm") is not None else None
    if norm is not None and norm.dimension != dimension:
        raise SerializationError(
            f"Norm dimension {norm.dimension} does not match file dimension {dimension}"
        )
    witness = witness_from_dict(data["witness"]) if data.get("witness") is not None else None
    return InstanceFile(instance=instance, norm=norm, witness=witness)


# -- linear programs -------------------------------------------------------


def lp_to_dict(lp: LinearProgram) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "variables": lp.num_vars,
        "constraints": [
            {
                "coefficients": vector_to_list(row.coefficients),
                "relation": row.relation.value,
                "rhs": format_rational(row.rhs),
            }
            for row in lp.constraints
        ],
        "nonnegative": list(lp.nonnegative),
    }
    if lp.objective is not None:
        data["objective"] = {
            "coefficients": vector_to_list(lp.objective.coefficients),
            "sense": lp.objective.sense.value,
        }
    return data


def lp_from_dict(data: Any) -> LinearProgram:
    num_vars = _require_int(data, "variables")
    rows = _require(data, "constraints")
    if not isinstance(rows, list):
        raise SerializationError("Field 'constraints' must be an array")
    constraints = []
    for row in rows:
        try:
            relation = Relation(_require(row, "relation"))
        except ValueError as e:
            raise SerializationError(f"Unknown relation: {e}") from e
        constraints.append(
            Constraint(
                coefficients=vector_from_list(_require(row, "coefficients")),
                relation=relation,
                rhs=parse_rational(_require(row, "rhs")),
            )
        )
    objective = None
    if data.get("objective") is not None:
        raw = data["objective"]
        try:
            sense = Sense(_require(raw, "sense"))
        except ValueError as e:
            raise SerializationError(f"Unknown objective sense: {e}") from e
        objective = Objective(vector_from_list(_require(raw, "coefficients")), sense)
    nonnegative = data.get("nonnegative", [])
    if not isinstance(nonnegative, list) or not all(isinstance(f, bool) for f in nonnegative):
        raise SerializationError("Field 'nonnegative' must be an array of booleans")
    return LinearProgram(
        num_vars=num_vars,
        constraints=tuple(constraints),
        objective=objective,
        nonnegative=tuple(nonnegative),
    )


def lp_result_to_dict(result: LPResult) -> Dict[str, Any]:
    if isinstance(result, Optimal):
        return {
            "status": "optimal",
            "point": vector_to_list(result.point),
            "value": format_rational(result.value),
            "duals": vector_to_list(result.duals),
        }
    if isinstance(result, Feasible):
        return {"status": "feasible", "point": vector_to_list(result.point)}
    if isinstance(result, Infeasible):
        return {"status": "infeasible", "farkas": vector_to_list(result.farkas)}
    return {
        "status": "unbounded",
        "point": vector_to_list(result.point),
        "ray": vector_to_list(result.ray),
    }


def lp_result_from_dict(data: Any) -> LPResult:
    status = _require(data, "status")
    if status == "optimal":
        return Optimal(
            point=vector_from_list(_require(data, "point")),
            value=parse_rational(_require(data, "value")),
            duals=vector_from_list(_require(data, "duals")),
        )
    if status == "feasible":
        return Feasible(point=vector_from_list(_require(data, "point")))
    if status == "infeasible":
        return Infeasible(farkas=vector_from_list(_require(data, "farkas")))
    if status == "unbounded":
        return Unbounded(
            point=vector_from_list(_require(data, "point")),
            ray=vector_from_list(_require(data, "ray")),
        )
    raise SerializationError(f"Unknown LP status '{status}'")


def witness_result_to_dict(result: WitnessResult) -> Dict[str, Any]:
    if isinstance(result, WitnessFound):
        return {"status": "feasible", "witness": witness_to_dict(result.witness)}
    return {
        "status": "infeasible",
        "index": result.index,
        "farkas": vector_to_list(result.certificate.farkas),
        "program": lp_to_dict(result.program),
    }


def witness_result_from_dict(data: Any) -> WitnessResult:
    status = _require(data, "status")
    if status == "feasible":
        return WitnessFound(witness_from_dict(_require(data, "witness")))
    if status == "infeasible":
        return WitnessInfeasible(
            index=_require_int(data, "index"),
            certificate=Infeasible(farkas=vector_from_list(_require(data, "farkas"))),
            program=lp_from_dict(_require(data, "program")),
        )
    raise SerializationError(f"Unknown witness status '{status}'")


# -- reports ---------------------------------------------------------------


def additivity_report_to_dict(report: AdditivityReport) -> Dict[str, Any]:
    return {
        "pass": report.passed,
        "delta": format_rational(report.delta),
        "unit_violations": [
            {"index": i, "gauge": format_rational(value)} for i, value in report.unit_violations
        ],
        "pair_violations": [
            {"i": i, "j": j, "gauge": format_rational(value)}
            for i, j, value in report.pair_violations
        ],
        "tight_pairs": [[i, j] for i, j in report.tight_pairs],
    }


def additivity_report_from_dict(data: Any) -> AdditivityReport:
    units = _require(data, "unit_violations")
    pairs = _require(data, "pair_violations")
    tight = _require(data, "tight_pairs")
    if not all(isinstance(x, list) for x in (units, pairs, tight)):
        raise SerializationError("Report violation fields must be arrays")
    report = AdditivityReport(
        unit_violations=[
            (_require_int(u, "index"), parse_rational(_require(u, "gauge"))) for u in units
        ],
        pair_violations=[
            (_require_int(p, "i"), _require_int(p, "j"), parse_rational(_require(p, "gauge")))
            for p in pairs
        ],
        tight_pairs=[_pair(t) for t in tight],
        delta=parse_rational(_require(data, "delta")),
    )
    if "pass" in data and data["pass"] != report.passed:
        raise SerializationError("Field 'pass' disagrees with the violation lists")
    return report


def _pair(value: Any) -> Tuple[int, int]:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(i, int) and not isinstance(i, bool) for i in value)
    ):
        raise SerializationError(f"Expected an index pair, got: {value!r}")
    return value[0], value[1]


def bound_report_to_dict(report: BoundReport) -> Dict[str, Any]:
    return {
        "d": report.d,
        "delta": format_rational(report.delta),
        "closed_form": report.closed_form,
        "sharp": report.sharp,
        "radius_used": format_rational(report.radius_used),
        "agreement": report.agreement,
        "trivial": report.trivial,
        "ellipsoid_inner_product": format_rational(report.ellipsoid),
        "gram": report.gram,
        "threshold": report.threshold,
        "regime": report.regime,
    }


def bound_report_from_dict(data: Any) -> BoundReport:
    return BoundReport(
        d=_require_int(data, "d"),
        delta=parse_rational(_require(data, "delta")),
        closed_form=_require_int(data, "closed_form"),
        sharp=_optional_int(data, "sharp"),
        radius_used=parse_rational(_require(data, "radius_used")),
        agreement=_require_bool(data, "agreement"),
        trivial=_optional_int(data, "trivial"),
        ellipsoid=parse_rational(_require(data, "ellipsoid_inner_product")),
        gram=_optional_int(data, "gram"),
        threshold=_optional_int(data, "threshold"),
        regime=str(_require(data, "regime")),
    )


def clique_result_to_dict(
    result: CliqueResult, vertices: Optional[Sequence[QVector]] = None
) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "size": result.size,
        "members": list(result.members),
        "exhaustive": result.exhaustive,
        "nodes": result.nodes,
    }
    if vertices is not None:
        data["vectors"] = [vector_to_list(vertices[i]) for i in result.members]
    return data


def clique_result_from_dict(data: Any) -> CliqueResult:
    members = _require(data, "members")
    if not isinstance(members, list) or not all(
        isinstance(i, int) and not isinstance(i, bool) for i in members
    ):
        raise SerializationError("Field 'members' must be an array of integers")
    return CliqueResult(
        size=_require_int(data, "size"),
        members=tuple(members),
        exhaustive=_require_bool(data, "exhaustive"),
        nodes=_require_int(data, "nodes"),
    )


def erratum_row_to_dict(row: ErratumRow) -> Dict[str, Any]:
    return {
        "delta": format_rational(row.delta),
        "threshold": format_rational(row.threshold),
        "corrected_weight": format_rational(row.corrected),
        "printed_weight": format_rational(row.printed),
        "required_upper": format_rational(row.required_upper),
        "required_lower": format_rational(row.required_lower),
        "corrected_upper": format_rational(row.corrected_upper),
        "corrected_lower": format_rational(row.corrected_lower),
        "printed_upper": format_rational(row.printed_upper),
        "printed_lower": format_rational(row.printed_lower),
        "corrected_holds": row.corrected_holds,
        "printed_holds": row.printed_holds,
    }


def lift_result_to_dict(result: LiftResult) -> Dict[str, Any]:
    data = instance_to_dict(result.instance, witness=result.witness)
    data["shortfall"] = result.shortfall
    data["tries"] = result.tries
    return data
