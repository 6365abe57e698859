"""Scenario files, experiment dispatch, and deterministic report emission.

A scenario is a UTF-8 JSON file declaring one experiment kind (compat,
drift, fidelity, kernel, group) plus the operators it needs, written with
the literal formats from ``literals``. Reports carry every number at 17
significant digits and rerunning a scenario reproduces the bytes exactly;
seeded sampling flows through the counter-based Philox generator named in
the report.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, clocks, grouprep, opcore, sync
from .clocks import ClockObservable, _philox
from .literals import (
    ScenarioError,
    _expect_mapping,
    _fail,
    _real_list,
    character_table_from_literal,
    clock_from_literal,
    group_from_literal,
    matrix_from_literal,
    matrix_to_literal,
    representation_from_literal,
)

KINDS = ("compat", "drift", "fidelity", "kernel", "group")
SERIES_KINDS = ("drift", "fidelity")
GENERATOR_NAME = "philox"

DEFAULT_TOLERANCES = {
    "kernel_tol": opcore.KERNEL_TOL,
    "compat_tol": clocks.COMPAT_TOL,
    "bound_slack": sync.BOUND_SLACK,
    "init_tol": sync.INIT_TOL,
    "equivar_tol": grouprep.EQUIVAR_TOL,
    "match_tol": grouprep.MATCH_TOL,
    "schur_tol": grouprep.SCHUR_TOL,
}


# ---------------------------------------------------------------------------
# scenario model

@dataclass(frozen=True, eq=False)
class Perturbation:
    base: "HamiltonianSpec"
    direction: np.ndarray | None   # None means seeded random Hermitian
    strength: float
    seed: int | None


@dataclass(frozen=True, eq=False)
class HamiltonianSpec:
    matrix: np.ndarray | None = None
    local: tuple | None = None          # (H_A, H_B)
    perturbation: Perturbation | None = None


@dataclass(eq=False)
class Scenario:
    name: str
    kind: str
    digest: str
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    format: str | None = None
    # compat
    clock: ClockObservable | None = None
    hamiltonians: list | None = None
    # kernel / drift / fidelity
    clock_a: ClockObservable | None = None
    clock_b: ClockObservable | None = None
    hamiltonian: HamiltonianSpec | None = None
    times: list | None = None
    initial_state: dict | None = None
    # group
    group: grouprep.FiniteGroup | None = None
    characters: grouprep.CharacterTable | None = None
    rep_a: grouprep.Representation | None = None
    rep_b: grouprep.Representation | None = None
    class_function_a: list | None = None
    class_function_b: list | None = None


def _parse_hamiltonian_spec(obj, path: str) -> HamiltonianSpec:
    obj = _expect_mapping(obj, path)
    if "local" in obj:
        local = _expect_mapping(obj["local"], f"{path}.local")
        for key in ("a", "b"):
            if key not in local:
                _fail(f"{path}.local", f'missing local term "{key}"')
        return HamiltonianSpec(local=(
            matrix_from_literal(local["a"], f"{path}.local.a"),
            matrix_from_literal(local["b"], f"{path}.local.b"),
        ))
    if "base" in obj:
        strength = obj.get("strength")
        if isinstance(strength, bool) or not isinstance(strength, (int, float)):
            _fail(f"{path}.strength", "perturbation strength must be a number")
        if strength < 0:
            _fail(f"{path}.strength", f"strength must be >= 0, got {strength}")
        direction = obj.get("direction", "random")
        if direction == "random":
            parsed_dir = None
        else:
            parsed_dir = matrix_from_literal(direction, f"{path}.direction")
        seed = obj.get("seed")
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
            _fail(f"{path}.seed", "seed must be an integer")
        return HamiltonianSpec(perturbation=Perturbation(
            base=_parse_hamiltonian_spec(obj["base"], f"{path}.base"),
            direction=parsed_dir, strength=float(strength), seed=seed))
    if "diag" in obj or "entries" in obj:
        return HamiltonianSpec(matrix=matrix_from_literal(obj, path))
    _fail(path, 'Hamiltonian spec needs a matrix literal, "local", or a perturbation "base"')


def _parse_tolerances(obj, path: str) -> dict:
    obj = _expect_mapping(obj, path)
    out = {}
    for name, value in obj.items():
        if name not in DEFAULT_TOLERANCES:
            _fail(f"{path}.{name}", f"unknown tolerance (known: {sorted(DEFAULT_TOLERANCES)})")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
            _fail(f"{path}.{name}", "tolerance must be a finite number")
        out[name] = float(value)
    return out


def _parse_initial_state(obj, path: str) -> dict:
    obj = _expect_mapping(obj, path)
    if "kernel_seed" in obj:
        seed = obj["kernel_seed"]
        if isinstance(seed, bool) or not isinstance(seed, int):
            _fail(f"{path}.kernel_seed", "seed must be an integer")
        return {"kernel_seed": seed}
    if "vector" in obj:
        vec = obj["vector"]
        if not isinstance(vec, list) or not vec:
            _fail(f"{path}.vector", "expected a nonempty list of [re, im] pairs")
        values = []
        for i, pair in enumerate(vec):
            if not isinstance(pair, list) or len(pair) != 2:
                _fail(f"{path}.vector[{i}]", "expected an [re, im] pair")
            values.append(complex(pair[0], pair[1]))
        return {"vector": np.asarray(values, dtype=np.complex128)}
    _fail(path, 'initial state needs "kernel_seed" or "vector"')


def parse_scenario(path) -> Scenario:
    """Load and validate one scenario file."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ScenarioError("", f"cannot read scenario file {path}: {exc}") from exc
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        obj = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ScenarioError("", f"scenario file {path} is not valid JSON: {exc}") from exc
    obj = _expect_mapping(obj, "scenario")

    name = obj.get("name")
    if not isinstance(name, str) or not name:
        _fail("name", "scenario needs a nonempty string name")
    kind = obj.get("kind")
    if kind not in KINDS:
        _fail("kind", f"unknown kind {kind!r} (known: {', '.join(KINDS)})")

    s = Scenario(name=name, kind=kind, digest=digest)
    seed = obj.get("seed")
    if seed is not None:
        if isinstance(seed, bool) or not isinstance(seed, int):
            _fail("seed", "seed must be an integer")
        s.seed = seed
    if "tolerances" in obj:
        s.tolerances = _parse_tolerances(obj["tolerances"], "tolerances")
    out = obj.get("out")
    if out is not None and not isinstance(out, str):
        _fail("out", "output path must be a string")
    s.out = out
    fmt = obj.get("format")
    if fmt is not None and fmt not in ("csv", "json", "text"):
        _fail("format", f"unknown format {fmt!r}")
    s.format = fmt

    if kind == "compat":
        if "clock" not in obj:
            _fail("clock", "compat scenario needs a clock")
        s.clock = clock_from_literal(obj["clock"], "clock")
        hams = obj.get("hamiltonians")
        if not isinstance(hams, list) or not hams:
            _fail("hamiltonians", "compat scenario needs a nonempty hamiltonians list")
        s.hamiltonians = []
        for i, item in enumerate(hams):
            item = _expect_mapping(item, f"hamiltonians[{i}]")
            h_name = item.get("name", f"H{i}")
            spec = {k: v for k, v in item.items() if k != "name"}
            s.hamiltonians.append((str(h_name),
                                   _parse_hamiltonian_spec(spec, f"hamiltonians[{i}]")))
    elif kind in ("kernel",) + SERIES_KINDS:
        for key in ("clock_a", "clock_b"):
            if key not in obj:
                _fail(key, f"{kind} scenario needs {key}")
        s.clock_a = clock_from_literal(obj["clock_a"], "clock_a")
        s.clock_b = clock_from_literal(obj["clock_b"], "clock_b")
        if kind == "kernel":
            if "hamiltonian" in obj:
                s.hamiltonian = _parse_hamiltonian_spec(obj["hamiltonian"], "hamiltonian")
        else:
            if "hamiltonian" not in obj:
                _fail("hamiltonian", f"{kind} scenario needs a hamiltonian")
            s.hamiltonian = _parse_hamiltonian_spec(obj["hamiltonian"], "hamiltonian")
            if "times" not in obj:
                _fail("times", f"{kind} scenario needs times")
            s.times = _real_list(obj["times"], "times")
            if "initial_state" in obj:
                s.initial_state = _parse_initial_state(obj["initial_state"], "initial_state")
            else:
                s.initial_state = {"kernel_seed": s.seed if s.seed is not None else 0}
    elif kind == "group":
        if "group" not in obj:
            _fail("group", "group scenario needs a group")
        s.group, builtin_chars = group_from_literal(obj["group"], "group")
        if "characters" in obj:
            s.characters = character_table_from_literal(s.group, obj["characters"], "characters")
        elif builtin_chars is not None:
            s.characters = builtin_chars
        else:
            _fail("characters", "custom groups need an explicit character table")
        if "rep" in obj and "rep_a" not in obj:
            obj = dict(obj)
            obj["rep_a"] = obj.pop("rep")
        if "rep_a" not in obj:
            _fail("rep_a", "group scenario needs rep_a (or rep)")
        s.rep_a = representation_from_literal(s.group, obj["rep_a"], "rep_a")
        if "rep_b" in obj:
            s.rep_b = representation_from_literal(s.group, obj["rep_b"], "rep_b")
        else:
            s.rep_b = s.rep_a
        n_classes = len(s.group.conjugacy_classes)
        for key in ("class_function_a", "class_function_b"):
            if key in obj:
                values = _real_list(obj[key], key)
                if len(values) != n_classes:
                    _fail(key, f"expected one value per conjugacy class ({n_classes})")
                setattr(s, key, values)
        if s.class_function_b is not None and s.class_function_a is None:
            _fail("class_function_a", "class_function_b given without class_function_a")
        if s.class_function_a is not None and s.class_function_b is None:
            s.class_function_b = list(s.class_function_a)
        if "hamiltonian" in obj:
            if s.class_function_a is None:
                _fail("hamiltonian", "membership checks need class functions to build K")
            s.hamiltonian = _parse_hamiltonian_spec(obj["hamiltonian"], "hamiltonian")
    return s


# ---------------------------------------------------------------------------
# running

@dataclass(eq=False)
class Report:
    scenario: str
    kind: str
    passed: bool
    payload: dict
    series: sync.DriftReport | None = None


def _random_hermitian(dim: int, seed: int) -> np.ndarray:
    rng = _philox(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = (g + g.conj().T) / 2.0
    return h / opcore.operator_norm(h)


def _resolve_hamiltonian(spec: HamiltonianSpec, dim_a: int, dim_b: int,
                         seed_override: int | None, fallback_seed: int | None):
    """Concrete Hermitian matrix on the product space, plus the seed used."""
    dim = dim_a * dim_b
    if spec.matrix is not None:
        h = spec.matrix
        if h.shape[0] != dim:
            raise ScenarioError("hamiltonian", f"dimension {h.shape[0]} does not match "
                                               f"{dim_a}x{dim_b} product space")
        return opcore.require_hermitian(h), None
    if spec.local is not None:
        h_a, h_b = spec.local
        if h_a.shape[0] != dim_a or h_b.shape[0] != dim_b:
            raise ScenarioError("hamiltonian.local", "local term dimensions do not match clocks")
        h = np.kron(opcore.require_hermitian(h_a), np.eye(dim_b)) \
            + np.kron(np.eye(dim_a), opcore.require_hermitian(h_b))
        return h, None
    pert = spec.perturbation
    base, _ = _resolve_hamiltonian(pert.base, dim_a, dim_b, seed_override, fallback_seed)
    if pert.direction is not None:
        direction = opcore.require_hermitian(pert.direction)
        if direction.shape[0] != dim:
            raise ScenarioError("hamiltonian.direction",
                                f"dimension {direction.shape[0]} does not match product space")
        seed_used = None
    else:
        seed_used = seed_override
        if seed_used is None:
            seed_used = pert.seed if pert.seed is not None else (fallback_seed or 0)
        direction = _random_hermitian(dim, seed_used)
    return base + pert.strength * direction, seed_used


def _verdict_payload(name: str, verdict: clocks.CompatibilityVerdict) -> dict:
    return {
        "name": name,
        "class": verdict.kind,
        "residual": verdict.residual,
        "off_block_mass": verdict.off_block_mass,
    }


def _subspace_payload(sub: opcore.Subspace) -> dict:
    vectors = [[[float(v.real), float(v.imag)] for v in sub.basis[:, j]]
               for j in range(sub.dim)]
    return {"ambient_dim": sub.ambient_dim, "dim": sub.dim,
            "tol_used": sub.tol_used, "vectors": vectors}


def _validation_payload(v: grouprep.RepresentationValidation) -> dict:
    return {
        "max_homomorphism_residual": v.max_homomorphism_residual,
        "max_unitarity_residual": v.max_unitarity_residual,
        "identity_residual": v.identity_residual,
        "pairs_checked": v.pairs_checked,
        "exhaustive": v.exhaustive,
        "passed": v.passed,
    }


def _schur_payload(report: grouprep.SchurReport) -> dict:
    entries = []
    for e in report.entries:
        entry = {"irrep": e.irrep, "multiplicity": e.multiplicity}
        if e.scalar is not None:
            entry["scalar"] = [e.scalar.real, e.scalar.imag]
            entry["residual"] = e.residual
        entries.append(entry)
    return {"equivariance_residual": report.equivariance_residual, "entries": entries}


def run_scenario(s: Scenario, seed_override: int | None = None,
                 tol_overrides: dict | None = None) -> Report:
    """Dispatch a parsed scenario and assemble its deterministic report."""
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(s.tolerances)
    if tol_overrides:
        for name in tol_overrides:
            if name not in DEFAULT_TOLERANCES:
                raise ScenarioError("tol", f"unknown tolerance {name!r}")
        tol.update(tol_overrides)

    payload: dict = {
        "scenario": s.name,
        "kind": s.kind,
        "library_version": __version__,
        "input_digest": s.digest,
        "generator": GENERATOR_NAME,
        "tolerances": tol,
    }
    series = None

    if s.kind == "compat":
        verdicts = []
        for h_name, spec in s.hamiltonians:
            h, _ = _resolve_hamiltonian(spec, s.clock.dim, 1, seed_override, s.seed)
            verdict = clocks.classify_compatibility(h, s.clock, compat_tol=tol["compat_tol"])
            verdicts.append(_verdict_payload(h_name, verdict))
        payload["clock_labels"] = [float(x) for x in s.clock.labels]
        payload["verdicts"] = verdicts
        passed = True

    elif s.kind == "kernel":
        k = sync.sync_operator(s.clock_a, s.clock_b)
        kernel = opcore.null_space(k, tol=tol["kernel_tol"])
        payload["kernel"] = _subspace_payload(kernel)
        payload["projector"] = matrix_to_literal(opcore.projector(kernel))
        if s.hamiltonian is not None:
            h, _ = _resolve_hamiltonian(s.hamiltonian, s.clock_a.dim, s.clock_b.dim,
                                        seed_override, s.seed)
            payload["epsilon"] = opcore.operator_norm(opcore.commutator(h, k))
        passed = True

    elif s.kind in SERIES_KINDS:
        h, pert_seed = _resolve_hamiltonian(s.hamiltonian, s.clock_a.dim, s.clock_b.dim,
                                            seed_override, s.seed)
        system = sync.make_system(s.clock_a, s.clock_b, h)
        bundle = sync.sync_bundle(system, kernel_tol=tol["kernel_tol"])
        if "vector" in s.initial_state:
            psi0 = s.initial_state["vector"]
            if psi0.shape[0] != system.dim:
                raise ScenarioError("initial_state.vector",
                                    f"dimension {psi0.shape[0]} does not match {system.dim}")
            state_seed = None
        else:
            state_seed = seed_override
            if state_seed is None:
                state_seed = s.initial_state["kernel_seed"]
            psi0 = sync.sample_kernel_state(bundle, state_seed)
        report = sync.drift_trace(system, psi0, s.times, bundle=bundle,
                                  bound_slack=tol["bound_slack"], init_tol=tol["init_tol"])
        series = report
        payload["seeds"] = {"perturbation": pert_seed, "initial_state": state_seed}
        payload["epsilon"] = report.epsilon
        payload["kernel_dim"] = bundle.kernel.dim
        payload["times"] = [float(x) for x in report.times]
        payload["drift"] = [float(x) for x in report.drift]
        payload["fidelity"] = [float(x) for x in report.fidelity]
        payload["bound_drift"] = [float(x) for x in report.drift_bound()]
        payload["bound_fidelity"] = [float(x) for x in report.fidelity_bound()]
        payload["drift_bound_ok"] = report.drift_bound_ok
        payload["fidelity_bound_ok"] = report.fidelity_bound_ok
        payload["max_bound_slack"] = report.max_bound_slack
        passed = report.drift_bound_ok and report.fidelity_bound_ok

    elif s.kind == "group":
        payload["group"] = {"name": s.group.name, "order": s.group.order,
                            "elements": list(s.group.elements)}
        val_a = grouprep.validate_representation(s.rep_a)
        val_b = grouprep.validate_representation(s.rep_b)
        payload["validation"] = {"rep_a": _validation_payload(val_a),
                                 "rep_b": _validation_payload(val_b)}
        mult_a = grouprep.multiplicities(s.rep_a, s.characters)
        mult_b = grouprep.multiplicities(s.rep_b, s.characters)
        payload["multiplicities"] = {"rep_a": [[n, m] for n, m in mult_a],
                                     "rep_b": [[n, m] for n, m in mult_b]}
        passed = val_a.passed and val_b.passed
        schur_ok = True
        if s.class_function_a is not None:
            t_a = grouprep.observable_from_class_function(s.class_function_a, s.rep_a)
            t_b = grouprep.observable_from_class_function(s.class_function_b, s.rep_b)
            dec_a = grouprep.isotypic_projectors(s.rep_a, s.characters)
            dec_b = grouprep.isotypic_projectors(s.rep_b, s.characters)
            schur_a = grouprep.schur_scalars(t_a, s.rep_a, dec_a, equivar_tol=tol["equivar_tol"])
            schur_b = grouprep.schur_scalars(t_b, s.rep_b, dec_b, equivar_tol=tol["equivar_tol"])
            payload["schur"] = {"rep_a": _schur_payload(schur_a), "rep_b": _schur_payload(schur_b)}
            for rep_schur in (schur_a, schur_b):
                for e in rep_schur.entries:
                    if e.residual is not None and e.residual > tol["schur_tol"]:
                        schur_ok = False
            containment = grouprep.verify_kernel_containment(
                s.rep_a, s.rep_b, t_a, t_b, s.characters, match_tol=tol["match_tol"])
            payload["containment"] = {
                "entries": [{
                    "irrep": e.irrep, "alpha": e.alpha, "beta": e.beta,
                    "matched": e.matched, "max_kernel_norm": e.max_kernel_norm,
                    "max_deviation": e.max_deviation, "ok": e.ok,
                } for e in containment.entries],
                "contained": containment.contained,
                "all_matched": containment.all_matched,
                "passed": containment.passed,
            }
            passed = passed and schur_ok and containment.passed
            if s.hamiltonian is not None:
                h, _ = _resolve_hamiltonian(s.hamiltonian, s.rep_a.dim, s.rep_b.dim,
                                            seed_override, s.seed)
                joint = grouprep.tensor_representation(s.rep_a, s.rep_b)
                k = np.kron(t_a, np.eye(s.rep_b.dim)) - np.kron(np.eye(s.rep_a.dim), t_b)
                verdict = grouprep.hsync_membership(h, joint, k,
                                                    equivar_tol=tol["equivar_tol"],
                                                    compat_tol=tol["compat_tol"])
                payload["membership"] = {
                    "equivariance_residual": verdict.equivariance_residual,
                    "kernel_commutation_residual": verdict.kernel_commutation_residual,
                    "member": verdict.member,
                }
    else:  # pragma: no cover - parse_scenario rejects unknown kinds
        raise ScenarioError("kind", f"unknown kind {s.kind!r}")

    payload["seed_override"] = seed_override
    payload["passed"] = passed
    return Report(scenario=s.name, kind=s.kind, passed=passed, payload=payload, series=series)


# ---------------------------------------------------------------------------
# emission

def _format_float(x: float) -> str:
    if math.isnan(x):
        raise ValueError("cannot serialize NaN")
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _write_json(obj, out: io.StringIO, indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        items = sorted(obj.items())
        for i, (key, value) in enumerate(items):
            out.write(f'{pad}  {json.dumps(str(key))}: ')
            _write_json(value, out, indent + 1)
            out.write(",\n" if i + 1 < len(items) else "\n")
        out.write(pad + "}")
    elif isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            out.write("[]")
            return
        out.write("[")
        for i, value in enumerate(seq):
            _write_json(value, out, indent)
            if i + 1 < len(seq):
                out.write(", ")
        out.write("]")
    elif isinstance(obj, bool) or obj is None:
        out.write(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(_format_float(float(obj)))
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(payload: dict) -> str:
    """Deterministic JSON text: sorted keys, floats at 17 significant digits."""
    out = io.StringIO()
    _write_json(payload, out, 0)
    out.write("\n")
    return out.getvalue()


def _csv_bytes(report: Report) -> bytes:
    r = report.series
    lines = ["t,drift,fidelity,bound_drift,bound_fidelity"]
    bound_d = r.drift_bound()
    bound_f = r.fidelity_bound()
    for i in range(r.times.size):
        lines.append(",".join(format(v, ".17g") for v in
                              (r.times[i], r.drift[i], r.fidelity[i], bound_d[i], bound_f[i])))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _text_bytes(report: Report) -> bytes:
    p = report.payload
    lines = [f"scenario: {report.scenario}  (kind: {report.kind})",
             f"passed: {report.passed}"]
    if report.kind == "compat":
        lines.append(f"{'hamiltonian':<16}{'class':<16}{'residual':<26}off_block_mass")
        for v in p["verdicts"]:
            lines.append(f"{v['name']:<16}{v['class']:<16}"
                         f"{format(v['residual'], '.17g'):<26}"
                         f"{format(v['off_block_mass'], '.17g')}")
    elif report.kind == "kernel":
        lines.append(f"kernel dimension: {p['kernel']['dim']}")
        if "epsilon" in p:
            lines.append(f"epsilon: {format(p['epsilon'], '.17g')}")
    elif report.kind in SERIES_KINDS:
        lines.append(f"epsilon: {format(p['epsilon'], '.17g')}")
        lines.append(f"drift_bound_ok: {p['drift_bound_ok']}  "
                     f"fidelity_bound_ok: {p['fidelity_bound_ok']}")
        lines.append(f"{'t':<26}{'drift':<26}fidelity")
        for t, d, f in zip(p["times"], p["drift"], p["fidelity"]):
            lines.append(f"{format(t, '.17g'):<26}{format(d, '.17g'):<26}{format(f, '.17g')}")
    elif report.kind == "group":
        lines.append(f"group: {p['group']['name']} (order {p['group']['order']})")
        lines.append(f"rep_a multiplicities: {p['multiplicities']['rep_a']}")
        lines.append(f"rep_b multiplicities: {p['multiplicities']['rep_b']}")
        if "containment" in p:
            c = p["containment"]
            lines.append(f"containment (matched part): {c['contained']}  "
                         f"all matched: {c['all_matched']}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_report(report: Report, fmt: str = "json") -> bytes:
    """Serialize a report; csv only exists for the series kinds."""
    if fmt == "json":
        return dumps_report(report.payload).encode("utf-8")
    if fmt == "csv":
        if report.series is None:
            raise ScenarioError("format", f"csv output is only defined for kinds "
                                          f"{SERIES_KINDS}, not {report.kind!r}")
        return _csv_bytes(report)
    if fmt == "text":
        return _text_bytes(report)
    raise ScenarioError("format", f"unknown format {fmt!r}")
