"""Command-line front end.

Every subcommand prints a JSON report on standard output and a one-line
human summary on standard error.  Reports are deterministic given the
inputs and seed, except for the volatile ``timestamp`` and ``timing``
fields; ``report verify`` replays a stored report from its echoed
parameters and compares everything else byte for byte.

Exit codes: 0 success / all checks pass, 1 a property violation was found,
2 usage or input error, 3 window truncation.
"""
from __future__ import annotations

import datetime
import hashlib
import json
import sys
import time

import click

from . import __version__
from . import coxeter as cx
from . import garside as G
from . import instances as I
from .diagram import (CoxeterDiagram, DiagramError, PathError, PathP,
                      canonical_json, parse_diagram)
from .mincut import MincutError, enumerate_mincuts
from .order import (OrderError, build_CP, check_admissible,
                    check_partial_cyclic, localize)

SCHEMA_VERSION = 1
DOT_VERTEX_LIMIT = 5000
VOLATILE_FIELDS = ("timestamp", "timing")

_EXIT = {"pass": 0, "violation": 1, "truncated": 3}

_COMPUTE = {}


def _register(name):
    def deco(fn):
        _COMPUTE[name] = fn
        return fn
    return deco


# ---------------------------------------------------------------------------
# serialization helpers


def jsonable(obj):
    """Deterministic JSON form: sets sorted, tuples listed, complex and
    group objects rendered through repr."""
    if isinstance(obj, (frozenset, set)):
        return sorted((jsonable(x) for x in obj), key=json.dumps)
    if isinstance(obj, (tuple, list)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in sorted(
            obj.items(), key=lambda kv: _key(kv[0]))}
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return repr(obj)


def _key(k):
    return k if isinstance(k, str) else repr(jsonable(k))


def _params_hash(params) -> str:
    blob = json.dumps(jsonable(params), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _graph_param(path: str) -> dict:
    with open(path) as fh:
        diagram = parse_diagram(json.load(fh))
    return json.loads(canonical_json(diagram))


def _diagram(params_graph: dict) -> CoxeterDiagram:
    return parse_diagram(params_graph)


def _csv(text: str) -> list:
    return [t for t in text.split(",") if t]


def _int_csv(text: str) -> tuple:
    return tuple(int(t) for t in _csv(text))


def _parse_instance(spec: str):
    """'zn:3' or 'braid:4' -> provider plus a vertex parser for words or
    coordinate tuples."""
    kind, _, arg = spec.partition(":")
    if kind == "zn" and arg.isdigit():
        provider = I.zn_provider(int(arg))
        return provider, lambda text: _int_csv(text)
    if kind == "braid" and arg.isdigit():
        provider = I.braid_provider(int(arg))
        return provider, lambda text: provider.from_word(_int_csv(text))
    raise click.UsageError(f"unknown instance {spec!r}; use zn:N or braid:N")


def _write_dot(path: str, vertices, edges) -> None:
    if len(vertices) > DOT_VERTEX_LIMIT:
        raise click.UsageError(
            f"refusing DOT export of {len(vertices)} vertices "
            f"(limit {DOT_VERTEX_LIMIT})"
        )
    names = {v: f"v{i}" for i, v in enumerate(
        sorted(vertices, key=repr))}
    lines = ["graph G {"]
    for v, name in names.items():
        label = repr(v).replace('"', "'")
        lines.append(f'  {name} [label="{label}"];')
    for e in sorted(edges, key=lambda e: sorted(map(repr, e))):
        u, v = sorted(e, key=repr)
        lines.append(f"  {names[u]} -- {names[v]};")
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# compute layer: params -> (body, status); replayable by `report verify`


@_register("mincut.enum")
def _mincut_enum(params):
    fam = enumerate_mincuts(_diagram(params["graph"]),
                            params["A"], params["B"])
    body = {
        "cuts": [sorted(c) for c in fam.cuts],
        "hasse": [[sorted(a), sorted(b)] for a, b in fam.hasse_edges()],
        "verdicts": [{"case": "enumeration", "count": len(fam),
                      "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("mincut.lattice-check")
def _mincut_lattice_check(params):
    fam = enumerate_mincuts(_diagram(params["graph"]),
                            params["A"], params["B"])
    bad = []
    cuts = fam.cuts
    for c1 in cuts:
        for c2 in cuts:
            meet, join = fam.meet(c1, c2), fam.join(c1, c2)
            lower = [z for z in cuts
                     if fam.compare(z, c1) in ("less", "equal")
                     and fam.compare(z, c2) in ("less", "equal")]
            upper = [z for z in cuts
                     if fam.compare(c1, z) in ("less", "equal")
                     and fam.compare(c2, z) in ("less", "equal")]
            checks = [
                ("meet is greatest lower bound",
                 meet in lower and all(
                     fam.compare(z, meet) in ("less", "equal")
                     for z in lower)),
                ("join is least upper bound",
                 join in upper and all(
                     fam.compare(join, z) in ("less", "equal")
                     for z in upper)),
                ("bounds inside the union",
                 meet <= c1 | c2 and join <= c1 | c2),
            ]
            for name, ok in checks:
                if not ok:
                    bad.append({"case": name,
                                "pair": [sorted(c1), sorted(c2)]})
    body = {
        "pairs": len(cuts) ** 2,
        "verdicts": [{"case": "lattice laws", "pairs": len(cuts) ** 2,
                      "outcome": "violation" if bad else "pass"}],
        "counterexamples": bad,
    }
    return body, ("violation" if bad else "pass")


def _family(params):
    diagram = _diagram(params["graph"])
    return build_CP(diagram, PathP(diagram, tuple(params["path"])))


@_register("order.cp")
def _order_cp(params):
    fam = _family(params)
    body = {
        "closed": fam.closed,
        "type_i": [sorted(e) for e in fam.type_i],
        "type_ii": [sorted(e) for e in fam.type_ii],
        "rank": {repr(sorted(e)): r for e, r in fam.rank_map().items()},
        "verdicts": [{"case": "family build",
                      "elements": len(fam.elements), "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("order.cyclic-check")
def _order_cyclic_check(params):
    fam = _family(params)
    bad = check_partial_cyclic(fam.cyclic.ground, fam.cyclic.triples)
    body = {
        "triples": len(fam.cyclic.triples),
        "verdicts": [{"case": "partial cyclic axioms",
                      "outcome": "violation" if bad else "pass"}],
        "counterexamples": jsonable(bad),
    }
    return body, ("violation" if bad else "pass")


@_register("order.admissible")
def _order_admissible(params):
    fam = _family(params)
    if params.get("localize"):
        loc = localize(fam, frozenset(params["localize"]))
        poset = loc.localized_poset()
        bad = check_admissible(poset.elements, poset.less_pairs,
                               loc.lambda_t)
        scope = "localized"
    else:
        pairs = [
            (c1, c2) for c1 in fam.type_ii for c2 in fam.type_ii
            if fam.mincuts.compare(c1, c2) == "less"
        ]
        bad = check_admissible(fam.type_ii, pairs, fam.diagram_minus_p)
        scope = "type II"
    body = {
        "scope": scope,
        "verdicts": [{"case": "admissibility",
                      "outcome": "violation" if bad else "pass"}],
        "counterexamples": jsonable(bad),
    }
    return body, ("violation" if bad else "pass")


@_register("coxeter.ball")
def _coxeter_ball(params):
    engine = cx.build_group(_diagram(params["graph"]))
    ball = engine.ball(params["radius"], cache_dir=params.get("cache_dir"))
    by_length = {}
    for length in ball.values():
        by_length[length] = by_length.get(length, 0) + 1
    body = {
        "size": len(ball),
        "by_length": {str(k): by_length[k] for k in sorted(by_length)},
        "verdicts": [{"case": "ball", "size": len(ball),
                      "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("coxeter.gate")
def _coxeter_gate(params):
    engine = cx.build_group(_diagram(params["graph"]))
    x = engine.from_word(params["word"])
    coset = cx.coset_min_rep(engine.from_word(params["coset_word"]),
                             params["subset"])
    g = cx.gate(x, coset)
    body = {
        "gate_word": list(g.word),
        "distance": len((x.inverse() * g).reduced_word()),
        "verdicts": [{"case": "gate", "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("coxeter.window")
def _coxeter_window(params):
    window = I.coxeter_shadow_provider(
        _diagram(params["graph"]), params["types"], params["radius"],
        cache_dir=params.get("cache_dir"))
    sizes = {}
    for o in window.simplex_orders:
        sizes[len(o)] = sizes.get(len(o), 0) + 1
    body = {
        "vertices": len(window.vertices),
        "edges": len(window.edges),
        "maximal_simplices": {str(k): sizes[k] for k in sorted(sizes)},
        "verdicts": [{"case": "window",
                      "vertices": len(window.vertices), "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("coxeter.spherical")
def _coxeter_spherical(params):
    diagram = _diagram(params["graph"])
    body = {
        "spherical": cx.is_spherical(diagram),
        "spherical_subsets": [sorted(s)
                              for s in cx.spherical_subsets(diagram)],
        "verdicts": [{"case": "sphericity",
                      "spherical": cx.is_spherical(diagram),
                      "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


def _nf_payload(provider, nf):
    steps = [jsonable(provider.mult(provider.inv(u), v))
             if hasattr(provider, "mult") else None
             for u, v in nf.simples]
    if steps and steps[0] is None:
        steps = [[b - a for a, b in zip(u, v)] for u, v in nf.simples]
    return {"k": nf.k, "simples": steps,
            "path": [jsonable(v) for v in nf.path]}


@_register("garside.nf")
def _garside_nf(params):
    provider, parse = _parse_instance(params["instance"])
    x, y = parse(params["from"]), parse(params["to"])
    nf = G.left_nf(provider, x, y)
    G.verify_left_nf(provider, nf)
    right = G.right_nf(provider, x, y)
    G.verify_right_nf(provider, right)
    body = {
        "left": _nf_payload(provider, nf),
        "right": _nf_payload(provider, right),
        "verdicts": [{"case": "greedy certificates",
                      "length": len(nf.simples) + abs(nf.k),
                      "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("garside.bgeo")
def _garside_bgeo(params):
    provider, parse = _parse_instance(params["instance"])
    a = provider.base(parse(params["from"]))
    b = provider.base(parse(params["to"]))
    path = G.b_geodesic(provider, a, b, params["side"])
    body = {
        "side": params["side"],
        "path": [jsonable(v) for v in path],
        "length": len(path) - 1,
        "verdicts": [{"case": "b-geodesic", "length": len(path) - 1,
                      "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("garside.dist")
def _garside_dist(params):
    provider, parse = _parse_instance(params["instance"])
    a = provider.base(parse(params["from"]))
    b = provider.base(parse(params["to"]))
    body = {
        "forward": G.bestvina_dist(provider, a, b),
        "backward": G.bestvina_dist(provider, b, a),
        "base_distance": provider.base_distance(a, b),
        "verdicts": [{"case": "distances", "outcome": "pass"}],
        "counterexamples": [],
    }
    return body, "pass"


@_register("garside.check")
def _garside_check(params):
    kind, _, arg = params["instance"].partition(":")
    if kind != "zn" or not arg.isdigit():
        raise click.UsageError("garside check expects --instance zn:N")
    complex_ = I.zn_base_complex(int(arg), params["radius"])
    report = G.check_an_like(complex_)
    bad = report["violations"]
    body = {
        "vertices": len(complex_.vertices),
        "connectivity": jsonable(report.get("connectivity")),
        "h1_trivial": G.h1_trivial(complex_),
        "verdicts": [{"case": "an-like axioms",
                      "outcome": "violation" if bad else "pass"}],
        "counterexamples": jsonable(bad),
    }
    return body, ("violation" if bad else "pass")


@_register("garside.convex")
def _garside_convex(params):
    provider, parse = _parse_instance(params["instance"])
    members = [provider.base(parse(text))
               for text in params["members"].split(";") if text]
    report = G.check_local_convex(provider, members, params["side"],
                                  seed=params["seed"])
    bad = report["local_violations"] + report["geodesic_violations"]
    body = {
        "side": params["side"],
        "members": len(members),
        "verdicts": [{"case": "local convexity",
                      "outcome": "violation" if bad else "pass"}],
        "counterexamples": jsonable(bad),
    }
    return body, ("violation" if bad else "pass")


@_register("instance.build")
def _instance_build(params):
    kind = params["kind"]
    if kind == "zn":
        complex_ = I.zn_base_complex(params["n"], params["radius"])
        body = {"vertices": len(complex_.vertices),
                "edges": len(complex_.edges),
                "period": complex_.period}
    elif kind == "braid":
        provider = I.braid_provider(params["n"])
        body = {"strands": params["n"],
                "simples": len(provider.t.perms) - 1,
                "delta_length": provider.t.length[provider.t.w0]}
    elif kind == "coxeter":
        window = I.coxeter_shadow_provider(
            _diagram(params["graph"]), params["types"], params["radius"],
            cache_dir=params.get("cache_dir"))
        body = {"vertices": len(window.vertices),
                "edges": len(window.edges),
                "period": window.period}
    elif kind == "mincut-shadow":
        diagram = _diagram(params["graph"])
        shadow = I.mincut_complex_shadow(
            diagram, PathP(diagram, tuple(params["path"])),
            params["radius"], cache_dir=params.get("cache_dir"))
        link = shadow.link_report()
        body = {"vertices": len(shadow.complex.vertices),
                "edges": len(shadow.complex.edges),
                "link_report": jsonable(link)}
        bad = link["failed"] > 0
        body["verdicts"] = [{"case": "link meets and joins",
                             "passed": link["passed"],
                             "failed": link["failed"],
                             "inconclusive": link["inconclusive"],
                             "outcome": "violation" if bad else "pass"}]
        body["counterexamples"] = jsonable(link.get("failures", []))
        return body, ("violation" if bad else "pass")
    else:
        raise click.UsageError(f"unknown kind {kind!r}")
    body["verdicts"] = [{"case": "build", "outcome": "pass"}]
    body["counterexamples"] = []
    return body, "pass"


@_register("experiment.four-cycle")
def _experiment_four_cycle(params):
    diagram = _diagram(params["graph"])
    complex_ = I.coxeter_shadow_provider(
        diagram, params["types"], params["radius"],
        cache_dir=params.get("cache_dir"))
    sub = diagram.induced(params["subdiagram"])
    report = I.four_cycle_search(complex_, params["s"], params["t"], sub,
                                 seed=params["seed"])
    body = {
        "cycles": report["cycles"],
        "centered": report["centered"],
        "exact": report["exact"],
        "subdiagram_connected": report["subdiagram_connected"],
        "verdicts": jsonable(report["verdicts"]),
        "counterexamples": [],
    }
    return body, "pass"


# ---------------------------------------------------------------------------
# report envelope


def _run(ctx, command: str, params: dict, seed=None):
    """Execute a registered compute function, emit the report, exit."""
    started = time.perf_counter()
    status = "pass"
    body = {}
    message = None
    try:
        body, status = _COMPUTE[command](params)
    except (cx.TruncationError, G.TruncationError) as exc:
        status, message = "truncated", str(exc)
    except (DiagramError, PathError, OrderError, MincutError,
            I.InstanceError, cx.CoxeterError, G.GarsideError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        raise click.UsageError(str(exc)) from exc
    report = {
        "schema": SCHEMA_VERSION,
        "tool": "gwb",
        "version": __version__,
        "command": command,
        "params": jsonable(params),
        "input_hash": _params_hash(params),
        "seed": seed,
        "status": status,
        "verdicts": body.pop("verdicts", []),
        "counterexamples": body.pop("counterexamples", []),
        "result": body,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "timing": {"elapsed_s": round(time.perf_counter() - started, 6)},
    }
    if message:
        report["message"] = message
    click.echo(json.dumps(report, sort_keys=True, indent=2))
    failures = sum(1 for v in report["verdicts"]
                   if v.get("outcome") not in (None, "pass"))
    click.echo(f"{command}: {status}"
               + (f" ({failures} failing verdict(s))" if failures else "")
               + (f" - {message}" if message else ""),
               err=True)
    ctx.exit(_EXIT[status])


# ---------------------------------------------------------------------------
# click wiring


@click.group()
@click.version_option(__version__, prog_name="gwb")
@click.option("--cache-dir", default=None,
              help="Ball cache directory (falls back to GARSIDE_WB_CACHE, "
                   "then the platform cache directory).")
@click.pass_context
def main(ctx, cache_dir):
    """Combinatorial workbench for minimal-cut lattices, cyclic orders,
    Coxeter complexes and Garside normal forms."""
    ctx.ensure_object(dict)
    ctx.obj["cache_dir"] = cx.resolve_cache_dir(cache_dir)


@main.group()
def mincut():
    """Minimal vertex cuts and their lattice."""


@mincut.command("enum")
@click.option("--graph", required=True, type=click.Path(exists=True))
@click.option("--A", "a_side", required=True)
@click.option("--B", "b_side", required=True)
@click.pass_context
def mincut_enum(ctx, graph, a_side, b_side):
    """Enumerate Mincut(A, B)."""
    _run(ctx, "mincut.enum", {"graph": _graph_param(graph),
                              "A": _csv(a_side), "B": _csv(b_side)})


@mincut.command("lattice-check")
@click.option("--graph", required=True, type=click.Path(exists=True))
@click.option("--A", "a_side", required=True)
@click.option("--B", "b_side", required=True)
@click.pass_context
def mincut_lattice_check(ctx, graph, a_side, b_side):
    """Check meet/join against the brute-force order bounds."""
    _run(ctx, "mincut.lattice-check", {"graph": _graph_param(graph),
                                       "A": _csv(a_side),
                                       "B": _csv(b_side)})


@main.group()
def order():
    """The family C_P and partial cyclic orders."""


def _path_options(fn):
    fn = click.option("--path", required=True,
                      help="Comma-separated path vertices a,...,b.")(fn)
    fn = click.option("--graph", required=True,
                      type=click.Path(exists=True))(fn)
    return fn


@order.command("cp")
@_path_options
@click.pass_context
def order_cp(ctx, graph, path):
    """Build C_P and print its elements and rank map."""
    _run(ctx, "order.cp", {"graph": _graph_param(graph),
                           "path": _csv(path)})


@order.command("cyclic-check")
@_path_options
@click.pass_context
def order_cyclic_check(ctx, graph, path):
    """Check the partial cyclic order axioms on C_P."""
    _run(ctx, "order.cyclic-check", {"graph": _graph_param(graph),
                                     "path": _csv(path)})


@order.command("admissible")
@_path_options
@click.option("--localize", default=None,
              help="Localize at this element (comma-separated vertex set).")
@click.pass_context
def order_admissible(ctx, graph, path, localize):
    """Check the admissibility conditions, optionally after localization."""
    params = {"graph": _graph_param(graph), "path": _csv(path)}
    if localize:
        params["localize"] = _csv(localize)
    _run(ctx, "order.admissible", params)


@main.group()
def coxeter():
    """Exact Coxeter group computations."""


@coxeter.command("ball")
@click.option("--graph", required=True, type=click.Path(exists=True))
@click.option("--radius", required=True, type=int)
@click.option("--dot", default=None, type=click.Path(),
              help="Write the Cayley ball as a DOT graph.")
@click.pass_context
def coxeter_ball(ctx, graph, radius, dot):
    """Sizes of the word-length ball."""
    params = {"graph": _graph_param(graph), "radius": radius,
              "cache_dir": ctx.obj["cache_dir"]}
    if dot:
        engine = cx.build_group(_diagram(params["graph"]))
        ball = engine.ball(radius, cache_dir=params["cache_dir"])
        edges = {frozenset((g, g.times_gen(s)))
                 for g in ball for s in engine.gens
                 if g.times_gen(s) in ball}
        _write_dot(dot, list(ball), edges)
    _run(ctx, "coxeter.ball", params)


@coxeter.command("gate")
@click.option("--graph", required=True, type=click.Path(exists=True))
@click.option("--word", required=True,
              help="Comma-separated generator word for the vertex.")
@click.option("--subset", required=True,
              help="Generators of the standard parabolic.")
@click.option("--coset-word", default="",
              help="Word for a coset representative (default: identity).")
@click.pass_context
def coxeter_gate(ctx, graph, word, subset, coset_word):
    """Gate of a vertex in a standard parabolic coset."""
    _run(ctx, "coxeter.gate", {"graph": _graph_param(graph),
                               "word": _csv(word),
                               "subset": _csv(subset),
                               "coset_word": _csv(coset_word)})


@coxeter.command("window")
@click.option("--graph", required=True, type=click.Path(exists=True))
@click.option("--types", required=True,
              help="Comma-separated vertex types.")
@click.option("--radius", required=True, type=int)
@click.option("--dot", default=None, type=click.Path())
@click.pass_context
def coxeter_window(ctx, graph, types, radius, dot):
    """Window of the relative Coxeter complex."""
    params = {"graph": _graph_param(graph), "types": _csv(types),
              "radius": radius, "cache_dir": ctx.obj["cache_dir"]}
    if dot:
        window = I.coxeter_shadow_provider(
            _diagram(params["graph"]), params["types"], radius,
            cache_dir=params["cache_dir"])
        _write_dot(dot, list(window.vertices), window.edges)
    _run(ctx, "coxeter.window", params)


@coxeter.command("spherical")
@click.option("--graph", required=True, type=click.Path(exists=True))
@click.pass_context
def coxeter_spherical(ctx, graph):
    """Finiteness of the group and its spherical subsets."""
    _run(ctx, "coxeter.spherical", {"graph": _graph_param(graph)})


@main.group()
def garside():
    """Greedy normal forms, B-geodesics and the asymmetric metric."""


def _garside_options(fn):
    fn = click.option("--to", "to_", required=True)(fn)
    fn = click.option("--from", "from_", required=True)(fn)
    fn = click.option("--instance", required=True,
                      help="zn:N (coordinates) or braid:N (words).")(fn)
    return fn


@garside.command("nf")
@_garside_options
@click.pass_context
def garside_nf(ctx, instance, from_, to_):
    """Left and right greedy normal forms with certificates."""
    _run(ctx, "garside.nf", {"instance": instance,
                             "from": from_, "to": to_})


@garside.command("bgeo")
@_garside_options
@click.option("--side", default="left",
              type=click.Choice(["left", "right"]))
@click.pass_context
def garside_bgeo(ctx, instance, from_, to_, side):
    """B-geodesic between two base vertices."""
    _run(ctx, "garside.bgeo", {"instance": instance, "from": from_,
                               "to": to_, "side": side})


@garside.command("dist")
@_garside_options
@click.pass_context
def garside_dist(ctx, instance, from_, to_):
    """Asymmetric distance in both directions, plus the base distance."""
    _run(ctx, "garside.dist", {"instance": instance,
                               "from": from_, "to": to_})


@garside.command("check")
@click.option("--instance", required=True, help="zn:N")
@click.option("--radius", required=True, type=int)
@click.pass_context
def garside_check(ctx, instance, radius):
    """Flag-complex axioms on a windowed base complex."""
    _run(ctx, "garside.check", {"instance": instance, "radius": radius})


@garside.command("convex")
@click.option("--instance", required=True)
@click.option("--members", required=True,
              help="Semicolon-separated vertex list.")
@click.option("--side", default="left",
              type=click.Choice(["left", "right"]))
@click.option("--seed", required=True, type=int)
@click.pass_context
def garside_convex(ctx, instance, members, side, seed):
    """Local convexity of a full subcomplex (sampled geodesic check)."""
    _run(ctx, "garside.convex",
         {"instance": instance, "members": members, "side": side,
          "seed": seed},
         seed=seed)


@main.group()
def instance():
    """Build the bundled instances."""


@instance.command("build")
@click.option("--kind", required=True,
              type=click.Choice(["zn", "braid", "coxeter",
                                 "mincut-shadow"]))
@click.option("--n", type=int, default=None)
@click.option("--graph", type=click.Path(exists=True), default=None)
@click.option("--types", default=None)
@click.option("--path", default=None)
@click.option("--radius", type=int, default=None)
@click.pass_context
def instance_build(ctx, kind, n, graph, types, path, radius):
    """Build an instance and print its summary (and checks, for the
    minimal-cut complex shadow)."""
    params = {"kind": kind}
    if kind in ("zn", "braid"):
        if n is None:
            raise click.UsageError(f"--n is required for kind {kind}")
        params["n"] = n
        if kind == "zn":
            if radius is None:
                raise click.UsageError("--radius is required for kind zn")
            params["radius"] = radius
    else:
        if graph is None or radius is None:
            raise click.UsageError(
                f"--graph and --radius are required for kind {kind}")
        params["graph"] = _graph_param(graph)
        params["radius"] = radius
        params["cache_dir"] = ctx.obj["cache_dir"]
        if kind == "coxeter":
            if types is None:
                raise click.UsageError("--types is required for kind coxeter")
            params["types"] = _csv(types)
        else:
            if path is None:
                raise click.UsageError(
                    "--path is required for kind mincut-shadow")
            params["path"] = _csv(path)
    _run(ctx, "instance.build", params)


@main.group()
def experiment():
    """Exploratory searches; findings are reported, not asserted."""


@experiment.command("four-cycle")
@click.option("--graph", required=True, type=click.Path(exists=True))
@click.option("--types", required=True)
@click.option("--radius", required=True, type=int)
@click.option("--s", "s_type", required=True)
@click.option("--t", "t_type", required=True)
@click.option("--subdiagram", required=True,
              help="Allowed center types, comma-separated.")
@click.option("--seed", required=True, type=int)
@click.pass_context
def experiment_four_cycle(ctx, graph, types, radius, s_type, t_type,
                          subdiagram, seed):
    """Search for alternating 4-cycles of types s,t and their centers."""
    _run(ctx, "experiment.four-cycle",
         {"graph": _graph_param(graph), "types": _csv(types),
          "radius": radius, "s": s_type, "t": t_type,
          "subdiagram": _csv(subdiagram), "seed": seed,
          "cache_dir": ctx.obj["cache_dir"]},
         seed=seed)


@main.group()
def report():
    """Stored report handling."""


@report.command("verify")
@click.option("--report", "report_file", required=True,
              type=click.Path(exists=True))
@click.pass_context
def report_verify(ctx, report_file):
    """Replay a stored report from its echoed parameters and compare
    everything except the volatile fields."""
    with open(report_file) as fh:
        stored = json.load(fh)
    command = stored.get("command")
    if command not in _COMPUTE:
        raise click.UsageError(f"report has unknown command {command!r}")
    params = stored["params"]
    if _params_hash(params) != stored.get("input_hash"):
        click.echo("report verify: input hash mismatch", err=True)
        ctx.exit(1)
    try:
        body, status = _COMPUTE[command](params)
    except (cx.TruncationError, G.TruncationError):
        body, status = {}, "truncated"
    fresh = {
        "status": status,
        "verdicts": body.pop("verdicts", []),
        "counterexamples": body.pop("counterexamples", []),
        "result": body,
    }
    mismatches = [key for key in fresh
                  if jsonable(fresh[key]) != stored.get(key)]
    summary = {
        "schema": SCHEMA_VERSION,
        "command": "report.verify",
        "target": command,
        "input_hash": stored.get("input_hash"),
        "reproduced": not mismatches,
        "mismatched_fields": mismatches,
    }
    click.echo(json.dumps(summary, sort_keys=True, indent=2))
    if mismatches:
        click.echo(f"report verify: MISMATCH in {mismatches}", err=True)
        ctx.exit(1)
    click.echo("report verify: reproduced", err=True)
    ctx.exit(0)


if __name__ == "__main__":
    main()
