"""JSON (de)serialization for matrices, traces, polytopes, families, certificates.

Formats:
  matrix    {"cols": [labels], "frozen": [labels], "d": [ints], "rows": {"label": [ints]}}
  trace     {"seq": [label, ...]}
  polytope  {"vertices": [["p/q", ...], ...]}
  family    {"matrix": ..., "polytope": ..., "stages": [{"seq": [...], "r": k, "s": k}]}

Rationals serialize as "p/q" strings (plain "p" for integers); all writers are
deterministic so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction as Q

from .mutation import ExtendedExchangeMatrix, MutationTrace, Quiver, exchange_matrix
from .polytopes import RationalPolytope, hull
from .tropical import DistinguishCertificate, FamilySpec, Stage


class FormatError(ValueError):
    pass


def _need(obj: dict, key: str):
    if key not in obj:
        raise FormatError(f"missing field {key!r}")
    return obj[key]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- rationals --------------------------------------------------------------


def rat_to_str(x) -> str:
    return str(Q(x))


def rat_from_str(s) -> Q:
    try:
        return Q(str(s))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"cannot parse rational {s!r}") from None


# -- matrices ---------------------------------------------------------------


def matrix_to_obj(eps: ExtendedExchangeMatrix) -> dict:
    return {
        "cols": list(eps.cols),
        "frozen": sorted(eps.frozen),
        "d": list(eps.d),
        "rows": {str(r): list(row) for r, row in zip(eps.mutable, eps.rows)},
    }


def matrix_from_obj(obj: dict) -> ExtendedExchangeMatrix:
    try:
        cols = [int(c) for c in _need(obj, "cols")]
        frozen = [int(c) for c in _need(obj, "frozen")]
        d = [int(x) for x in _need(obj, "d")]
        rows_map = {int(k): [int(x) for x in v] for k, v in _need(obj, "rows").items()}
    except FormatError:
        raise
    except (TypeError, ValueError, AttributeError):
        raise FormatError("malformed matrix object") from None
    mutable = [c for c in cols if c not in set(frozen)]
    if set(rows_map) != set(mutable):
        raise FormatError(f"rows keys {sorted(rows_map)} do not match mutable labels {mutable}")
    rows = [rows_map[r] for r in mutable]
    return exchange_matrix(cols, frozen, d, rows)


def trace_to_obj(trace: MutationTrace) -> dict:
    return {"seq": list(trace.seq)}


def seq_from_obj(obj: dict) -> tuple[int, ...]:
    try:
        return tuple(int(k) for k in _need(obj, "seq"))
    except (TypeError, ValueError):
        raise FormatError("malformed trace object") from None


# -- quivers ----------------------------------------------------------------


def quiver_to_obj(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "frozen": sorted(q.frozen),
        "arrows": [list(a) for a in q.arrows],
        "frozen_entries": [list(t) for t in q.frozen_entries],
    }


# -- polytopes ---------------------------------------------------------------


def polytope_to_obj(P: RationalPolytope) -> dict:
    return {"vertices": [[rat_to_str(x) for x in v] for v in P.vertices]}


def polytope_from_obj(obj: dict, full_dim: bool = True) -> RationalPolytope:
    verts = _need(obj, "vertices")
    if not isinstance(verts, list) or not verts:
        raise FormatError("polytope needs a nonempty vertex list")
    pts = [tuple(rat_from_str(x) for x in v) for v in verts]
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise FormatError("polytope vertices of mixed dimension")
    from .polytopes import hull_any

    return hull(pts) if full_dim else hull_any(pts, dims.pop())


# -- families and certificates ----------------------------------------------


def family_to_obj(f: FamilySpec) -> dict:
    return {
        "matrix": matrix_to_obj(f.matrix),
        "polytope": polytope_to_obj(f.polytope),
        "stages": [{"seq": list(st.seq), "r": st.r, "s": st.s} for st in f.stages],
    }


def family_from_obj(obj: dict) -> FamilySpec:
    eps = matrix_from_obj(_need(obj, "matrix"))
    P = polytope_from_obj(_need(obj, "polytope"))
    stages = []
    for raw in _need(obj, "stages"):
        try:
            stages.append(Stage(tuple(int(k) for k in _need(raw, "seq")), int(_need(raw, "r")), int(_need(raw, "s"))))
        except (TypeError, ValueError):
            raise FormatError("malformed stage entry") from None
    return FamilySpec(eps, P, tuple(stages))


def certificate_to_obj(c: DistinguishCertificate) -> dict:
    return {
        "origin_in_polytope": c.origin_ok,
        "initial_qgf": c.initial_qgf,
        "center": [rat_to_str(x) for x in c.center] if c.center else None,
        "size": c.size,
        "center_fixed": c.center_fixed,
        "q": c.q,
        "stages": [
            {
                "seq": list(st.seq),
                "r": st.r,
                "s": st.s,
                "entry": st.entry,
                "entry_nonpositive": st.entry_nonpositive,
                "polytope_in_halfspace": st.cond_polytope,
                "image_in_halfspace": st.cond_image,
                "qgf": st.qgf_ok,
                "size_preserved": st.size_ok,
                "center_preserved": st.center_ok,
                "a_s": rat_to_str(st.a_s) if st.a_s is not None else None,
                "q": st.q,
                "lower_bound": st.lower_bound,
                "segment_count": st.segment_count,
                "dual_count": st.dual_count,
                "valid": st.valid,
                "notes": list(st.notes),
            }
            for st in c.stages
        ],
        "counts_strictly_increasing": c.counts_strictly_increasing,
        "pairwise_distinct": c.pairwise_distinct,
        "notes": list(c.notes),
    }
