"""Pipeline orchestration: configuration in, certificate out.

Each stage builds a JSON-ready report plus named check entries; mandatory
check failures flip the certificate to failed (CLI exit 1) but the
certificate is always produced. Structural problems with the configuration
itself raise ConfigError (CLI exit 2) before any heavy work starts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ambient, certificate as cert, domain as dom, fans, units as un
from .config import RunConfig
from .errors import (CollapseFailed, ConfigError, FancertError, NotAUnit,
                     RayNotInFan, WrongSignature)
from .fields import EmbeddingTable, NumberField, embeddings, validate_field


@dataclass
class PipelineResult:
    certificate: cert.Certificate
    exit_code: int


def run_pipeline(cfg: RunConfig) -> PipelineResult:
    reports: dict = {"mode": cfg.mode, "checks": {}, "warnings": []}
    checks = reports["checks"]
    try:
        field, table = _field_stage(cfg, reports)
        if cfg.mode == "construction" and cfg.b >= table.s:
            raise ConfigError(
                f"construction mode needs b < s; got b = {cfg.b} with "
                f"s = {table.s}")
        if cfg.mode == "ot":
            return _run_ot(cfg, field, table, reports)
        if cfg.mode == "lvmb":
            return _run_lvmb(cfg, field, table, reports)
        return _run_construction(cfg, field, table, reports)
    except ConfigError:
        raise
    except FancertError as exc:
        checks.setdefault("pipeline", {})
        checks["pipeline"] = {
            "passed": False, "mandatory": True,
            "error_type": type(exc).__name__, "detail": str(exc),
        }
        payload = {
            "schema_version": cert.SCHEMA_VERSION,
            "mode": cfg.mode,
            "passed": False,
            "failure": {"error_type": type(exc).__name__, "message": str(exc)},
            **{k: v for k, v in reports.items() if k != "mode"},
        }
        return PipelineResult(cert.Certificate(payload), 1)


# --- stages -------------------------------------------------------------------


def _field_stage(cfg: RunConfig, reports: dict) -> tuple[NumberField, EmbeddingTable]:
    checks = reports["checks"]
    field = validate_field(cfg.min_poly, cfg.basis)
    s, t = field.signature
    reports["field"] = {
        "min_poly": list(cfg.min_poly),
        "degree": field.degree,
        "signature": {"s": s, "t": t},
        "basis": "power" if cfg.basis is None else cfg.basis,
        "irreducibility": {
            "certified": field.witness_prime is not None,
            "witness_prime": field.witness_prime,
        },
    }
    checks["field_validation"] = {
        "passed": True, "mandatory": True,
        "detail": "monic, squarefree, ring-closed basis containing 1",
    }
    checks["irreducibility_witness"] = {
        "passed": field.witness_prime is not None, "mandatory": False,
        "witness_prime": field.witness_prime,
    }
    if field.witness_prime is None:
        reports["warnings"].append(
            "no small-prime irreducibility witness; the defining polynomial "
            "may be reducible")

    table = embeddings(field, cfg.tol)
    poly = field.min_poly.float_coeffs()

    def presid(z):
        acc = 0j
        for c in reversed(poly):
            acc = acc * z + c
        return abs(acc)

    values = list(table.values)
    resid = max(presid(z) for z in values)
    minsep = min(abs(a - b) for i, a in enumerate(values)
                 for b in values[i + 1:])
    prod = np.prod(np.array(values, dtype=complex))
    expected = (-1) ** field.degree * float(field.min_poly.coeffs[0])
    reports["embeddings"] = {
        "values": [[z.real, z.imag] for z in values],
        "tol": cfg.tol,
        "max_residual": resid,
        "min_separation": minsep,
        "ordering": "real-descending, then upper-half by real part, "
                    "then conjugates",
    }
    checks["embedding_residual"] = {
        "passed": True, "mandatory": True, "max_residual": resid,
        "tolerance": cfg.tol,
    }
    checks["embedding_product"] = {
        "passed": bool(abs(prod - expected) < 1e-9 * max(1.0, abs(expected))),
        "mandatory": True,
        "detail": "product of embedding values equals (-1)^n * constant term",
    }
    return field, table


def _unit_stage(cfg: RunConfig, field: NumberField, table: EmbeddingTable,
                reports: dict) -> list[un.UnitElt]:
    out = []
    unit_reports = []
    for coords in cfg.units:
        if len(coords) != field.degree:
            raise ConfigError(f"unit {coords} has wrong length")
        u = un.make_unit(field, table, coords)  # NotAUnit propagates
        violations = [i + 1 for i, sg in enumerate(u.signs) if sg < 0]
        unit_reports.append({
            "coords": list(coords),
            "is_unit": True,
            "norm_constant": u.norm_constant,
            "totally_positive": u.totally_positive,
            "sign_violations": violations,
            "reciprocal": un.is_reciprocal(u),
            "profile": list(u.eta_profile),
        })
        out.append(u)
    reports["units"] = unit_reports
    reports["checks"]["unit_validation"] = {
        "passed": True, "mandatory": True,
        "detail": f"{len(out)} unit(s) verified (minimal-polynomial "
                  "constant term +-1)",
    }
    return out


def _build_subgroup(cfg: RunConfig, field, table, unit_elts,
                    words: list[list[int]],
                    require_independent: bool = True) -> tuple[un.SubgroupW, dict]:
    gens = []
    squared_flags = []
    final_words = []
    for wrd in words:
        cand = un._make_candidate(field, table, unit_elts, tuple(wrd))
        if cand is None:
            raise ConfigError(f"subgroup word {wrd} is the identity")
        gens.append(cand.unit)
        squared_flags.append(cand.squared)
        final_words.append(list(cand.exponents))
    w = un.SubgroupW(gens, len(gens), words=final_words)
    logs = np.array([un.log_embedding(g) for g in gens])
    independent = bool(
        np.linalg.matrix_rank(logs, tol=1e-9) == len(gens))
    if require_independent and not independent:
        raise ConfigError(f"subgroup generators {words} are multiplicatively "
                          "dependent")
    if independent:
        report = un.check_dominance(w, table, cfg.c_window)
    else:
        report = un.DominanceReport(un.REFUTED, None, 0.0, None, cfg.c_window)
        w.dominance = report
    block = {
        "requested_words": [list(wd) for wd in words],
        "generator_words": final_words,
        "squared": squared_flags,
        "generator_coords": [[int(c) for c in g.elt.coords] for g in gens],
        "b": w.b,
        "labeling": None if w.labeling is None
        else [p + 1 for p in w.labeling],
        "dominance": {
            "status": report.status,
            "margin": report.margin,
            "witness": list(report.witness) if report.witness else None,
            "window": report.window,
        },
        "reciprocal": [un.is_reciprocal(g) for g in gens],
        "invariant_pairs": sorted(un.invariant_pair_detector(w, table)),
    }
    block["contains_nonreciprocal"] = not all(block["reciprocal"])
    block.update(cert.gated_invariants(block, w.b))
    return w, block


def _subgroup_stage(cfg: RunConfig, field, table, unit_elts,
                    reports: dict) -> tuple[list[un.SubgroupW], int]:
    checks = reports["checks"]
    blocks = []
    groups = []
    if cfg.subgroups is not None:
        for words in cfg.subgroups:
            if len(words) != cfg.b:
                raise ConfigError(
                    f"subgroup {words} has rank {len(words)}, config b = {cfg.b}")
            w, block = _build_subgroup(cfg, field, table, unit_elts, words)
            groups.append(w)
            blocks.append(block)
    else:
        found = un.search_w(field, table, unit_elts, cfg.b, cfg.c_window)
        if found is None:
            checks["dominance"] = {
                "passed": False, "mandatory": True,
                "detail": "no rank-b subgroup satisfying the dominance "
                          "condition was found in the word window",
            }
            reports["subgroups"] = []
            raise FancertError("subgroup search failed")
        w, block = _build_subgroup(cfg, field, table, unit_elts,
                                   [list(wd) for wd in found.words])
        groups.append(w)
        blocks.append(block)

    selected = next((i for i, blk in enumerate(blocks)
                     if blk["dominance"]["status"] != un.REFUTED), None)
    checks["dominance"] = {
        "passed": selected is not None, "mandatory": True,
        "status": None if selected is None
        else blocks[selected]["dominance"]["status"],
        "selected": selected,
    }
    reports["subgroups"] = blocks
    reports["selected_subgroup"] = selected if selected is not None else -1
    if selected is None:
        raise FancertError("every requested subgroup was refuted by the "
                           "dominance check")
    return groups, selected


def _ambient_stage(cfg: RunConfig, field, table, w: un.SubgroupW,
                   reports: dict) -> ambient.AmbientFrame:
    checks = reports["checks"]
    frame = ambient.build_frame(field, table)
    pi_h = ambient.check_pi_h_injective(frame, min(cfg.samples, 1000), 20,
                                        cfg.seed)
    pi_ht = ambient.check_pi_htilde_injective(frame, min(cfg.samples, 1000),
                                              20, cfg.seed)
    block_dev = max((ambient.block_structure_deviation(frame, g)
                     for g in w.generators), default=0.0)
    conj = ambient.conjugation_check(frame, w)
    nullity = ambient.circle_intersection_nullity(frame)
    ord_resid = ambient.ord_span_residual(frame, seed=cfg.seed)
    iota = ambient.iota_params(frame)
    reports["ambient"] = {
        "condition_number": frame.condition_number,
        "max_imag_entry": frame.max_imag_entry,
        "pi_h_injectivity": pi_h,
        "pi_htilde_injectivity": pi_ht,
        "block_structure_max_deviation": block_dev,
        "conjugation_residual": conj,
        "circle_intersection_nullity": nullity,
        "ord_span_residual": ord_resid,
        "iota_exponents": [[ [z.real, z.imag] for z in row] for row in iota],
        "paper_quartic_h_tuple": ambient.quartic_h_tuple_report(frame),
    }
    checks["basis_change_real"] = {
        "passed": frame.max_imag_entry < 1e-9, "mandatory": True,
        "max_imag": frame.max_imag_entry, "tolerance": 1e-9,
    }
    checks["pi_h_injective"] = {
        "passed": pi_h.passed, "mandatory": True,
        "min_separation": pi_h.min_separation, "tolerance": 1e-6,
    }
    checks["pi_htilde_injective"] = {
        "passed": pi_ht.passed, "mandatory": True,
        "min_separation": pi_ht.min_separation, "tolerance": 1e-6,
    }
    checks["block_structure"] = {
        "passed": block_dev < 1e-9, "mandatory": True,
        "max_deviation": block_dev, "tolerance": 1e-9,
    }
    checks["iota_conjugation"] = {
        "passed": conj < 1e-9, "mandatory": True, "residual": conj,
        "tolerance": 1e-9,
    }
    checks["circle_intersection_trivial"] = {
        "passed": nullity == 0, "mandatory": True, "nullity": nullity,
    }
    checks["ord_spans_h_shadow"] = {
        "passed": ord_resid < 1e-9, "mandatory": True, "residual": ord_resid,
        "tolerance": 1e-9,
    }
    checks["condition_number"] = {
        "passed": True, "mandatory": False,
        "value": frame.condition_number,
    }
    if frame.condition_number > 1e6:
        reports["warnings"].append(
            f"lattice basis condition number {frame.condition_number:.3e}")
    return frame


def _fan_stage(cfg: RunConfig, table, w: un.SubgroupW,
               reports: dict) -> fans.QuotientFan:
    checks = reports["checks"]
    if table.s == 2 and cfg.b == 1:
        fan = fans.build_fan_s2(w, table, cfg.window)
    else:
        fan = _fan_from_config(cfg, table, w)

    action = fans.check_action(fan)
    checks["fan_action_free"] = {
        "passed": action.free, "mandatory": True}
    checks["fan_action_properly_discontinuous"] = {
        "passed": action.properly_discontinuous, "mandatory": True,
        "overlap_words": action.overlap_words}
    checks["fan_action_invariant"] = {
        "passed": action.invariant, "mandatory": True,
        "violations": action.violations}

    support = None
    collapse_reports = []
    divisors = []
    lift = fans.lift_injectivity_check(fan)
    checks["fan_lift_injective"] = {
        "passed": lift.passed, "mandatory": True,
        "min_image_separation": lift.min_image_separation,
        "tolerance": 1e-6}
    if table.s == 2 and fan.w.b == 1:
        support = fans.support_sampling_check(fan, min(cfg.samples, 1000),
                                              cfg.seed)
        checks["fan_support_sampling"] = {
            "passed": support.passed, "mandatory": True,
            "detail": support.detail}
        for g in fan.w.generators:
            try:
                rep = fans.cone_collapse_check(fan, g, 1.0, 8,
                                               seed=cfg.seed)
                collapse_reports.append(rep)
                ok = True
            except CollapseFailed as exc:
                collapse_reports.append({"error": str(exc)})
                ok = False
            checks["cone_collapse"] = {
                "passed": ok, "mandatory": True,
                "fitted_n": None if not ok else rep.fitted_n}
        divisors = _divisor_stage(fan, reports)

    reports["fan"] = {
        "window": fan.window,
        "sigma": [_cone_json(c) for c in fan.sigma],
        "omega": {"s": fan.omega.s, "b": fan.omega.b},
        "action": {
            "free": action.free,
            "properly_discontinuous": action.properly_discontinuous,
            "invariant": action.invariant,
            "overlap_words": action.overlap_words,
            "violations": action.violations,
        },
        "support_sampling": support,
        "lift_injectivity": lift,
        "collapse": collapse_reports,
    }
    reports["divisors"] = divisors
    return fan


def _fan_from_config(cfg: RunConfig, table, w: un.SubgroupW) -> fans.QuotientFan:
    if not cfg.sigma_rays:
        raise ConfigError(
            "no built-in fan generation for this signature/rank; supply "
            "sigma_rays in the config")
    labeling = w.labeling if w.labeling is not None else tuple(range(table.s))
    cones = []
    for rayset in cfg.sigma_rays:
        rays, tags = [], []
        for ray in rayset:
            if isinstance(ray, dict) and "tag" in ray:
                elt = table.field.element(ray["tag"])
                vals = table.evaluate(elt)
                rays.append([vals[p].real for p in labeling])
                tags.append(elt)
            else:
                rays.append([float(v) for v in ray])
                tags.append(None)
        cones.append(fans.Cone(np.array(rays), tuple(tags)))
    return fans.QuotientFan(cones, w, fans.OmegaCone(table.s, w.b), table,
                            cfg.window)


def _cone_json(c: fans.Cone) -> dict:
    return {
        "rays": [[float(v) for v in r] for r in c.rays],
        "tags": [None if t is None else [int(x) for x in t.coords]
                 for t in c.tags],
    }


def _divisor_stage(fan: fans.QuotientFan, reports: dict) -> list:
    """One divisor certificate per ray orbit of the base cones."""
    checks = reports["checks"]
    shift = fans._s2_shift(fan)
    seen: list[tuple[int, float]] = []
    out = []
    ok = True
    for c in fan.sigma:
        for idx in range(c.n_rays):
            data = fans._ray_log_ratio(c.rays[idx])
            if data is None:
                continue
            sgn, lam = data
            if any(sg == sgn and
                   abs((lam - l0) / shift - round((lam - l0) / shift)) < 1e-9
                   for sg, l0 in seen):
                continue
            seen.append((sgn, lam))
            try:
                rep = fans.divisor_certificate(
                    fan, fans.Cone(c.rays[idx:idx + 1], (c.tags[idx],)))
                out.append(rep)
                ok = ok and rep.complete
            except RayNotInFan as exc:
                out.append({"error": str(exc)})
                ok = False
    checks["divisor_quotients_complete"] = {
        "passed": ok, "mandatory": True, "count": len(out)}
    return out


def _domain_stage(cfg: RunConfig, fan: fans.QuotientFan,
                  reports: dict) -> None:
    checks = reports["checks"]
    spec = dom.make_domain_spec(fan, cfg.window)
    tiling = dom.tiling_check(spec, cfg.samples, cfg.seed)
    btiling = dom.tiling_of_Bb(spec, min(cfg.samples, 1000), cfg.seed)
    reports["domain"] = {
        "vertices": [[float(v) for v in row] for row in spec.vertices],
        "c_constant": spec.lower_bound_c,
        "tiling": tiling,
        "b_projection_tiling": btiling,
    }
    checks["tiling"] = {
        "passed": not tiling.failures, "mandatory": True,
        "tiled": tiling.n_tiled, "samples": tiling.n_samples,
        "failures": len(tiling.failures),
    }
    checks["norm_lower_bound"] = {
        "passed": tiling.norm_bound_ok, "mandatory": True,
        "min_norm": tiling.norm_bound_min, "c_constant": tiling.c_constant,
    }
    checks["b_projection_tiling"] = {
        "passed": btiling.passed, "mandatory": True,
        "covered": btiling.n_covered, "samples": btiling.n_samples,
    }


# --- mode drivers ---------------------------------------------------------------


def _run_construction(cfg: RunConfig, field, table, reports) -> PipelineResult:
    unit_elts = _unit_stage(cfg, field, table, reports)
    groups, selected = _subgroup_stage(cfg, field, table, unit_elts, reports)
    w = groups[selected]
    _ambient_stage(cfg, field, table, w, reports)
    fan = _fan_stage(cfg, table, w, reports)
    _domain_stage(cfg, fan, reports)
    c = cert.assemble(reports)
    return PipelineResult(c, 0 if c.passed else 1)


def _run_ot(cfg: RunConfig, field, table, reports) -> PipelineResult:
    checks = reports["checks"]
    unit_elts = _unit_stage(cfg, field, table, reports)
    s = table.s
    if len(unit_elts) != s:
        raise ConfigError(
            f"full-rank mode needs exactly s = {s} units, got {len(unit_elts)}")
    words = [[int(i == j) for i in range(len(unit_elts))]
             for j in range(len(unit_elts))]
    a, block = _build_subgroup(cfg, field, table, unit_elts, words,
                               require_independent=False)
    admissible = un.check_ot_admissible(a, table)
    mat = np.array([un.log_embedding(g)[:s] for g in a.generators])
    block["admissible"] = admissible
    block["log_projection_det"] = float(np.linalg.det(mat))
    reports["subgroups"] = [block]
    reports["selected_subgroup"] = 0
    checks["ot_admissible"] = {
        "passed": admissible, "mandatory": True,
        "abs_det": abs(block["log_projection_det"]), "tolerance": 1e-9,
    }
    c = cert.ot_certificate(reports)
    return PipelineResult(c, 0 if c.passed else 1)


def _run_lvmb(cfg: RunConfig, field, table, reports) -> PipelineResult:
    if cfg.units:
        _unit_stage(cfg, field, table, reports)
    c = cert.lvmb_certificate(reports)
    return PipelineResult(c, 0 if c.passed else 1)
