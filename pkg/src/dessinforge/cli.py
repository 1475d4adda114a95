"""Command-line front end.

Subcommands: ``graph``, ``aut``, ``geometry``, ``dessin``, ``lift`` and
``verify-all``. Reports are canonical JSON on stdout (and in ``--out`` when
given). Exit status is 0 on success, 1 when a verification fails and 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .autgraph import automorphism_group, embedding_is_homomorphism, left_action_embedding
from .cayley_trivalent import (build_trivalent, cayley_graph, digraph_isomorphism,
                               recover_cayley, validate_cubic)
from .cover import (negative_control_search, quotient_round_trip, random_admissible_instance,
                    verify_theorem2)
from .dessin import (PantsTemplateConfig, build_dessin_G, build_dessin_H, canonical_inclusion,
                     dessin_automorphisms, dessin_genus, explicit_action, is_subdessin)
from .errors import DessinForgeError
from .geometry import (PantsMetric, build_pants_complex, find_admissible, genus, hexagon_from,
                       length_report)
from .group_core import normalize_generators, resolve_group, subgroups

log = logging.getLogger("dessinforge")

MAX_AUT_DARTS = 200_000


class UsageError(DessinForgeError):
    pass


# --- argument helpers --------------------------------------------------------

def parse_gens(text: str | None, default):
    if not text:
        return list(default)
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"--gens expects comma-separated element ids, got {text!r}") from exc


def parse_template(text: str | None) -> PantsTemplateConfig:
    if not text or text == "default":
        cfg = PantsTemplateConfig()
    elif text == "reduced":
        cfg = PantsTemplateConfig.reduced()
    elif text.endswith(".json"):
        data = json.loads(Path(text).read_text())
        b, s = data["boundary"], data["seams"]
        cfg = PantsTemplateConfig(dict(zip((1, 2, 3), b)), dict(zip(((1, 2), (1, 3), (2, 3)), s)),
                                  data.get("pendant_position", 1))
    else:
        parts = text.split("/")
        try:
            b = [int(x) for x in parts[0].split(",")]
            s = [int(x) for x in parts[1].split(",")]
            pend = int(parts[2]) if len(parts) > 2 else 1
        except (IndexError, ValueError) as exc:
            raise UsageError("--template expects default, reduced, a JSON path or "
                             "'b1,b2,b3/s12,s13,s23[/pendant]'") from exc
        if len(b) != 3 or len(s) != 3:
            raise UsageError("--template needs three boundary and three seam lengths")
        cfg = PantsTemplateConfig(dict(zip((1, 2, 3), b)), dict(zip(((1, 2), (1, 3), (2, 3)), s)), pend)
    cfg.validate()
    return cfg


def select_subgroups(G, selector: str | None):
    subs = subgroups(G)
    if not selector or selector == "all":
        return subs
    if selector.startswith("gens:"):
        elems = [int(x) for x in selector[5:].split(",") if x]
        closure = tuple(sorted(G.closure(elems)))
        return [H for H in subs if H.elements == closure]
    try:
        k = int(selector)
    except ValueError as exc:
        raise UsageError(f"--subgroup expects all, an index or gens:a,b; got {selector!r}") from exc
    if not 0 <= k < len(subs):
        raise UsageError(f"subgroup index {k} out of range (0..{len(subs) - 1})")
    return [subs[k]]


def resolve_hexagon(l, eps):
    if l is None and eps is None:
        l, eps = find_admissible()
    elif l is None or eps is None:
        raise UsageError("--l and --eps must be given together (or neither for auto)")
    return hexagon_from(l, eps)


def _setup(args):
    G, default = resolve_group(args.group)
    gens = normalize_generators(G, parse_gens(args.gens, default))
    return G, gens


def _write(out: Path | None, name: str, text: str) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


# --- subcommands -------------------------------------------------------------

def cmd_graph(args):
    G, gens = _setup(args)
    C = cayley_graph(G, gens)
    g = build_trivalent(G, gens)
    rep = validate_cubic(g)
    recovered = digraph_isomorphism(recover_cayley(g), C) is not None
    report = {
        "group": args.group, "order": G.order,
        "generators": list(gens.entries), "padded": gens.padded,
        "cayley": {"vertices": len(C.vertices), "arcs": len(C.arcs)},
        "trivalent": {"vertices": g.num_vertices, "edges": len(g.edges),
                      "ladder_constant": g.ladder_constant, "validation": rep.to_json()},
        "recovered_matches": recovered,
    }
    if args.format == "dot":
        dot = io.graph_to_dot(g)
        _write(args.out, "trivalent.dot", dot)
        _write(args.out, "cayley.dot", io.digraph_to_dot(C))
        if args.out is None:
            sys.stdout.write(dot)
            return None, 0 if rep.ok and recovered else 1
    else:
        _write(args.out, "trivalent.json", io.dumps(io.graph_to_json(g)))
        _write(args.out, "cayley.json", io.dumps(io.digraph_to_json(C)))
    return report, 0 if rep.ok and recovered else 1


def _graph_checks(G, gens):
    g = build_trivalent(G, gens)
    aut = automorphism_group(g)
    emb = left_action_embedding(G, gens, g)
    report = {
        "order": aut.order,
        "free_action": aut.acts_freely(),
        "matches_left_action": aut.as_set() == {e.images for e in emb}
        and embedding_is_homomorphism(G, emb),
    }
    return g, aut, emb, report


def cmd_aut(args):
    G, gens = _setup(args)
    _, _, _, report = _graph_checks(G, gens)
    if args.out is not None:
        _write(args.out, "aut.json", io.dumps(report))
    ok = report["order"] == G.order and report["free_action"] and report["matches_left_action"]
    return report, 0 if ok else 1


def cmd_geometry(args):
    h = resolve_hexagon(args.l, args.eps)
    metric = PantsMetric.from_hexagon(h)
    lengths = length_report(metric)
    report = {"hexagon": h.to_json(), "lengths": lengths.to_json()}
    if args.group:
        G, gens = _setup(args)
        pc = build_pants_complex(build_trivalent(G, gens), metric)
        report["complex"] = pc.to_json()
    _write(args.out, "geometry.json", io.dumps(report))
    return report, 0 if lengths.ok else 1


def _check_size(d, force):
    if d.num_darts > MAX_AUT_DARTS and not force:
        raise UsageError(f"{d.num_darts} darts exceeds {MAX_AUT_DARTS}; pass --force to compute Aut")


def _dessin_checks(G, gens, g, emb, metric, cfg, selector, v0, force, out=None, fmt="json"):
    pc = build_pants_complex(g, metric)
    dG = build_dessin_G(pc, cfg)
    _check_size(dG, force)
    gen_ok = dessin_genus(dG) == genus(pc)
    autG = dessin_automorphisms(dG)
    if out is not None:
        if fmt == "dot":
            _write(out, "dessin_G.dot", io.dessin_to_dot(dG))
        else:
            _write(out, "dessin_G.json", io.dumps(io.dessin_to_json(dG)))
    subs = select_subgroups(G, selector)
    rows = []
    built = {}
    for H in subs:
        dH = build_dessin_H(dG, G, H, v0)
        aut = dessin_automorphisms(dH)
        aut_set = {a.images for a in aut}
        acts = explicit_action(dH, [emb[h].images for h in H.elements])
        contained = all(a is not None and a.commutes_with(dH) and a.images in aut_set for a in acts)
        rows.append({"subgroup": list(H.elements), "order": H.order, "darts": dH.num_darts,
                     "aut_order": len(aut), "action_contained": contained,
                     "genus": dessin_genus(dH)})
        built[H.elements] = (H, dH)
    monotone = True
    for H1, d1 in built.values():
        for H2, d2 in built.values():
            if H1.issubset(H2):
                inc = canonical_inclusion(d1, d2)
                if inc is None or not is_subdessin(d1, d2, inc):
                    monotone = False
    report = {
        "darts": dG.num_darts,
        "genus": dessin_genus(dG),
        "faces": len(dG.faces()),
        "aut_order": len(autG),
        "genus_matches_surface": gen_ok,
        "template": cfg.to_json(),
        "v0": v0,
        "subgroups": rows,
        "monotone": monotone,
    }
    ok = (gen_ok and len(autG) == G.order and monotone
          and all(r["aut_order"] == r["order"] and r["action_contained"] for r in rows))
    return report, ok


def cmd_dessin(args):
    G, gens = _setup(args)
    h = resolve_hexagon(args.l, args.eps)
    g = build_trivalent(G, gens)
    emb = left_action_embedding(G, gens, g)
    report, ok = _dessin_checks(G, gens, g, emb, PantsMetric.from_hexagon(h), parse_template(args.template),
                                args.subgroup, args.v0, args.force, args.out, args.format)
    _write(args.out, "dessin.json", io.dumps(report))
    return report, 0 if ok else 1


def cmd_lift(args):
    G, _ = resolve_group(args.group)
    rows = []
    if args.base:
        base = io.load_dessin(args.base)
        if not args.xi:
            raise UsageError("--base needs --xi")
        xi = io.load_voltages(args.xi)
        r = verify_theorem2(base, G, xi)
        rows.append(dict(r.to_json(), darts=base.num_darts, round_trip=quotient_round_trip(base, G, xi)))
    else:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.instances):
            base, v = random_admissible_instance(rng, G, args.max_darts)
            r = verify_theorem2(base, G, v)
            rows.append(dict(r.to_json(), darts=base.num_darts, xi=list(v.xi),
                             round_trip=quotient_round_trip(base, G, v)))
    ok = all(r["aut_order"] == G.order and r["deck_equals_aut"] and r["round_trip"] for r in rows)
    report = {"group": args.group, "order": G.order, "seed": args.seed, "instances": rows, "all_ok": ok}
    if args.negative_control:
        found = negative_control_search(G, np.random.default_rng(args.seed))
        report["negative_control"] = None if found is None else {
            "base": found[0].to_json(), "xi": list(found[1].xi), "aut_order": found[2]}
        ok = ok and found is not None
    _write(args.out, "lift.json", io.dumps(report))
    return report, 0 if ok else 1


def cmd_verify_all(args):
    G, gens = _setup(args)
    checks = {}
    C = cayley_graph(G, gens)
    g, aut, emb, graph_report = _graph_checks(G, gens)
    rep = validate_cubic(g)
    checks["cubic_valid"] = rep.ok
    checks["aut_order_equals_group"] = aut.order == G.order
    checks["free_action"] = graph_report["free_action"]
    checks["matches_left_action"] = graph_report["matches_left_action"]
    checks["recover_round_trip"] = digraph_isomorphism(recover_cayley(g), C) is not None

    h = resolve_hexagon(args.l, args.eps)
    metric = PantsMetric.from_hexagon(h)
    lengths = length_report(metric)
    checks["hexagon_lengths"] = lengths.ok
    pc = build_pants_complex(g, metric)

    dessin_report, dessin_ok = _dessin_checks(G, gens, g, emb, metric, parse_template(args.template),
                                              args.subgroup, args.v0, args.force, args.out, args.format)
    checks["dessins"] = dessin_ok
    ok = all(checks.values())
    report = {
        "group": args.group,
        "order": G.order,
        "generators": list(gens.entries),
        "graph": {"vertices": g.num_vertices, "edges": len(g.edges), "aut": graph_report},
        "hexagon": h.to_json(),
        "lengths": lengths.to_json(),
        "complex": pc.to_json(),
        "dessin": dessin_report,
        "checks": checks,
        "ok": ok,
    }
    _write(args.out, "report.json", io.dumps(report))
    return report, 0 if ok else 1


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dessinforge",
                                description="Realise finite groups as automorphisms of cubic graphs, "
                                            "pants complexes and dessins.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, group_default="cyclic:2"):
        sp.add_argument("--group", default=group_default,
                        help="cyclic:n, dihedral:n, symmetric:n, quaternion:8, klein:4 or a JSON file")
        sp.add_argument("--gens", help="comma-separated generator ids (default: the family's generators)")
        sp.add_argument("--out", type=Path, help="directory for report and exports")
        sp.add_argument("--format", choices=("json", "dot"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--force", action="store_true", help="allow Aut computations on huge dessins")
        sp.add_argument("-v", "--verbose", action="store_true")

    def shape(sp):
        sp.add_argument("--l", type=float)
        sp.add_argument("--eps", type=float)
        sp.add_argument("--template", default="default",
                        help="default, reduced, JSON path or 'b1,b2,b3/s12,s13,s23[/pendant]'")
        sp.add_argument("--subgroup", default="all", help="all, an index into the subgroup list, or gens:a,b")
        sp.add_argument("--v0", type=int, default=0, help="pants marking the subgroup orbit")

    common(sub.add_parser("graph", help="export the Cayley graph and the cubic graph"))
    common(sub.add_parser("aut", help="automorphism group of the cubic graph"))
    sp = sub.add_parser("geometry", help="hexagon and pants complex")
    common(sp, group_default=None)
    sp.add_argument("--l", type=float)
    sp.add_argument("--eps", type=float)
    sp = sub.add_parser("dessin", help="dessins D_G and D_H")
    common(sp)
    shape(sp)
    sp = sub.add_parser("lift", help="voltage-lift covers")
    common(sp)
    sp.add_argument("--base", help="hypermap JSON for a single instance")
    sp.add_argument("--xi", help="voltage JSON for --base")
    sp.add_argument("--instances", type=int, default=25)
    sp.add_argument("--max-darts", type=int, default=8)
    sp.add_argument("--negative-control", action="store_true")
    sp = sub.add_parser("verify-all", help="full pipeline; exit 0 iff every check passes")
    common(sp)
    shape(sp)
    return p


COMMANDS = {
    "graph": cmd_graph,
    "aut": cmd_aut,
    "geometry": cmd_geometry,
    "dessin": cmd_dessin,
    "lift": cmd_lift,
    "verify-all": cmd_verify_all,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        report, code = COMMANDS[args.command](args)
    except (DessinForgeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if report is not None:
        sys.stdout.write(io.dumps(report))
    if code:
        log.warning("verification failed")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
