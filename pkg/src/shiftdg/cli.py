"""Batch command-line front end: JSON in, JSON out.

Exit codes: 0 the command computed its result; 1 the command is a
predicate (or dichotomy) and the mathematical answer is negative; 2 the
input was malformed or violated a precondition; 3 an enumeration or search
budget was exceeded.  Diagnostics go to standard error.

The environment variable SHIFTDG_BUDGET overrides the default enumeration
caps, e.g. SHIFTDG_BUDGET="vertices=4,period=6,atoms=6,seed=0".
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import oracle
from .digraph import (
    Digraph,
    EventuallyPeriodicWalk,
    backward_extend,
    covering_closed_walk,
    diligent_schedule,
    is_diligent,
    is_strongly_connected,
    strongly_connected_components,
)
from .errors import BudgetExceeded, SearchTooLarge, ShiftdgError
from .lifting import Lift, diligent_dichotomy, verify_outcome, weak_dichotomy
from .morphism import (
    DigraphMap,
    compatible_exact,
    compatible_fast,
    epimorphism_failure,
    pullback,
)
from .realization import (
    OmegaPartitionSpec,
    VirtualRefinement,
    Realized,
    fixture_nogo,
    induced_realization,
    polarize_virtual_refinement,
    realize_digraph,
    shift_hitting_digraph,
)
from .state_space import (
    build_state_space,
    extract_projecting_walk,
    never_empty_from,
    state_trajectory,
)

SCHEMAS = {
    "digraph": {"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]},
    "walk": {"steps": ["a", "b", "a"]},
    "epwalk": {"preamble": ["a"], "period": ["b", "a"]},
    "map": {"dom": "<digraph>", "cod": "<digraph>", "map": {"x": "a"}},
    "spec": {"preamble": [], "period": ["a", "b"]},
    "virtual-refinement": {"base": "<digraph>", "cover": "<digraph>", "map": {}},
    "witness": {"vertices": ["(u,v)"], "proj1": {}, "proj2": {}},
    "report": {"instances": 0, "checks": 0, "failures": [], "seeds": {}},
}


def _load(arg: str) -> dict:
    """File path or inline JSON (starts with '{')."""
    try:
        if arg.lstrip().startswith("{"):
            return json.loads(arg)
        with open(arg) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read JSON input {arg!r}: {exc}") from exc


def _emit(obj, dot: str | None = None) -> None:
    if dot is not None:
        print(dot)
    else:
        print(json.dumps(obj, indent=2))


def _budget_from_env() -> oracle.EnumerationBudget:
    raw = os.environ.get("SHIFTDG_BUDGET")
    if not raw:
        return oracle.DEFAULT_BUDGET
    fields = {"vertices": 4, "period": 6, "atoms": 6, "seed": 0}
    for piece in raw.split(","):
        key, _, value = piece.partition("=")
        key = key.strip()
        if key not in fields:
            raise ValueError(f"unknown budget field {key!r} in SHIFTDG_BUDGET")
        fields[key] = int(value)
    return oracle.EnumerationBudget(
        fields["vertices"], fields["period"], fields["atoms"], fields["seed"]
    )


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="shiftdg", description=__doc__)
    top.add_argument("--schema", action="store_true", help="print the JSON schemas")
    top.add_argument("--jobs", type=int, default=1, help="accepted for compatibility")
    sub = top.add_subparsers(dest="command")

    p = sub.add_parser("scc", help="strongly connected components")
    p.add_argument("digraph")
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("walk", help="covering/diligent/backward walks, diligence check")
    p.add_argument("mode", choices=["covering", "diligent", "backward", "check"])
    p.add_argument("digraph")
    p.add_argument("--from", dest="source")
    p.add_argument("--to", dest="target")
    p.add_argument("--length", type=int)
    p.add_argument("--epwalk")

    p = sub.add_parser("epi-check", help="is the map an epimorphism")
    p.add_argument("map")

    p = sub.add_parser("pullback", help="fiber product of two maps")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("compat", help="compatibility of two epimorphisms")
    p.add_argument("left")
    p.add_argument("right")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fast", action="store_true")
    group.add_argument("--exact", action="store_true")

    p = sub.add_parser("statespace", help="subset-construction state space")
    p.add_argument("map")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--trajectory", metavar="EPWALK")
    p.add_argument("--never-empty", metavar="EPWALK")
    p.add_argument("--extract", metavar="EPWALK")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--horizon", type=int, default=16)

    p = sub.add_parser("lift", help="walk-lifting dichotomy")
    p.add_argument("map")
    p.add_argument("epwalk")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--weak", action="store_true")
    group.add_argument("--diligent", action="store_true")
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("realize", help="digraph to eventually periodic coloring")
    p.add_argument("digraph")

    p = sub.add_parser("recover", help="shift hitting digraph of a coloring")
    p.add_argument("spec")
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("polarize", help="realize or refute a virtual refinement")
    p.add_argument("spec")
    p.add_argument("refinement", help='{"base":…,"cover":…,"map":…}')

    p = sub.add_parser("fixture", help="the incompatible-pair fixture")
    p.add_argument("which", choices=["nogo", "verify"])
    p.add_argument("--json", action="store_true", dest="as_json")
    p.add_argument("--mutate", choices=["pullback-edge"], default=None)

    p = sub.add_parser("crosscheck", help="fast/exact agreement suite")
    p.add_argument("--mutate", choices=["pullback-edge"], default=None)
    p.add_argument("--pairs", type=int, default=2000)

    return top


def _cmd_walk(args) -> int:
    g = Digraph.from_obj(_load(args.digraph))
    if args.mode == "covering":
        if not args.source or not args.target:
            raise ValueError("covering walks need --from and --to")
        _emit(covering_closed_walk(g, args.source, args.target).to_obj())
    elif args.mode == "diligent":
        _emit(diligent_schedule(g).to_obj())
    elif args.mode == "backward":
        if not args.target or args.length is None:
            raise ValueError("backward walks need --to and --length")
        _emit(backward_extend(g, args.target, args.length).to_obj())
    else:  # check
        if not args.epwalk:
            raise ValueError("check needs --epwalk")
        w = EventuallyPeriodicWalk.from_obj(_load(args.epwalk))
        ok = is_diligent(g, w)
        _emit({"diligent": ok})
        return 0 if ok else 1
    return 0


def _cmd_statespace(args) -> int:
    phi = DigraphMap.from_obj(_load(args.map))
    chosen = [
        opt for opt in (args.trajectory, args.never_empty, args.extract) if opt
    ]
    if len(chosen) > 1:
        raise ValueError("choose at most one of --trajectory/--never-empty/--extract")
    if args.trajectory:
        walk = EventuallyPeriodicWalk.from_obj(_load(args.trajectory))
        states = state_trajectory(phi, walk, args.start, args.horizon)
        order = phi.dom._index
        _emit({"trajectory": [sorted(s, key=order.get) for s in states]})
        return 0
    if args.never_empty:
        walk = EventuallyPeriodicWalk.from_obj(_load(args.never_empty))
        ok = never_empty_from(phi, walk, args.start)
        _emit({"never_empty": ok})
        return 0 if ok else 1
    if args.extract:
        walk = EventuallyPeriodicWalk.from_obj(_load(args.extract))
        _emit(extract_projecting_walk(phi, walk, args.start).to_obj())
        return 0
    space = build_state_space(phi)
    _emit(space.to_obj(), dot=space.to_dot() if args.dot else None)
    return 0


def _fixture_rows(mutate: str | None):
    fx = fixture_nogo()
    pb = pullback(fx.fold, fx.cycle)
    pb_digraph = pb.digraph
    if mutate == "pullback-edge":
        from .oracle import mutated_pullback_digraph

        pb_digraph = mutated_pullback_digraph(fx.fold, fx.cycle)
    rows = [
        ("fold is epimorphism", epimorphism_failure(fx.fold) is None),
        ("cycle is epimorphism", epimorphism_failure(fx.cycle) is None),
        ("pullback has 6 vertices", len(pb.digraph.vertices) == 6),
        ("pullback not strongly connected", not is_strongly_connected(pb_digraph)),
        ("exact search finds no witness", compatible_exact(fx.fold, fx.cycle) is None),
    ]
    # The base coloring for the polarization demo is the realization of the
    # three-vertex digraph induced by the fold's own cover, over which the
    # fold realizes and the directed-cycle cover still obstructs.
    spec = induced_realization(fx.fold)
    fold_out = polarize_virtual_refinement(spec, VirtualRefinement(fx.a3, fx.b4, fx.fold))
    rows.append(("fold branch realized", isinstance(fold_out, Realized)))
    if isinstance(fold_out, Realized):
        from .realization import spec_refines

        natural = spec_refines(fold_out.fine, spec)
        rows.append(("fold refinement natural map exists", natural is not None))
        if natural is not None:
            rows.append(
                (
                    "fold triangle commutes",
                    all(
                        natural(fold_out.iso[v]) == fx.fold(v)
                        for v in fx.b4.vertices
                    ),
                )
            )
    cycle_out = polarize_virtual_refinement(
        spec, VirtualRefinement(fx.a3, fx.v4, fx.cycle)
    )
    rows.append(("cycle branch incompatible", not isinstance(cycle_out, Realized)))
    if not isinstance(cycle_out, Realized):
        rows.append(
            (
                "cycle witness validated",
                compatible_exact(fx.cycle, cycle_out.psi, max_vertices=10**6) is None,
            )
        )
    return rows


def _cmd_fixture(args) -> int:
    if args.which == "nogo":
        fx = fixture_nogo()
        _emit(
            {
                "a3": fx.a3.to_obj(),
                "b4": fx.b4.to_obj(),
                "fold": dict(fx.fold.assignment),
                "v4": fx.v4.to_obj(),
                "cycle": dict(fx.cycle.assignment),
            }
        )
        return 0
    rows = _fixture_rows(args.mutate)
    if args.as_json:
        _emit({"rows": [{"check": n, "ok": ok} for n, ok in rows]})
    else:
        width = max(len(n) for n, _ in rows)
        for name, ok in rows:
            print(f"{name:<{width}}  {'pass' if ok else 'FAIL'}")
    return 0 if all(ok for _, ok in rows) else 1


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse rejects unknown flags with code 2
        return int(exc.code or 0)

    try:
        if args.schema:
            _emit(SCHEMAS)
            return 0
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2

        if args.command == "scc":
            g = Digraph.from_obj(_load(args.digraph))
            _emit(
                {
                    "components": strongly_connected_components(g),
                    "strongly_connected": is_strongly_connected(g),
                },
                dot=g.to_dot() if args.dot else None,
            )
            return 0

        if args.command == "walk":
            return _cmd_walk(args)

        if args.command == "epi-check":
            m = DigraphMap.from_obj(_load(args.map))
            reason = epimorphism_failure(m)
            _emit({"epimorphism": reason is None, "reason": reason})
            return 0 if reason is None else 1

        if args.command == "pullback":
            phi = DigraphMap.from_obj(_load(args.left))
            psi = DigraphMap.from_obj(_load(args.right))
            pb = pullback(phi, psi)
            _emit(
                {
                    "digraph": pb.digraph.to_obj(),
                    "proj1": dict(pb.proj1.assignment),
                    "proj2": dict(pb.proj2.assignment),
                },
                dot=pb.digraph.to_dot() if args.dot else None,
            )
            return 0

        if args.command == "compat":
            phi = DigraphMap.from_obj(_load(args.left))
            psi = DigraphMap.from_obj(_load(args.right))
            if args.fast:
                ok = compatible_fast(phi, psi)
                _emit({"compatible": ok, "method": "fast"})
            else:
                witness = compatible_exact(phi, psi)
                ok = witness is not None
                _emit(
                    {
                        "compatible": ok,
                        "method": "exact",
                        "witness": witness.to_obj() if witness else None,
                    }
                )
            return 0 if ok else 1

        if args.command == "statespace":
            return _cmd_statespace(args)

        if args.command == "lift":
            phi = DigraphMap.from_obj(_load(args.map))
            walk = EventuallyPeriodicWalk.from_obj(_load(args.epwalk))
            outcome = (
                weak_dichotomy(phi, walk) if args.weak else diligent_dichotomy(phi, walk)
            )
            payload = outcome.to_obj()
            if args.verify:
                payload["verification"] = verify_outcome(phi, walk, outcome).to_obj()
            _emit(payload)
            return 0 if isinstance(outcome, Lift) else 1

        if args.command == "realize":
            g = Digraph.from_obj(_load(args.digraph))
            _emit(realize_digraph(g).to_obj())
            return 0

        if args.command == "recover":
            spec = OmegaPartitionSpec.from_obj(_load(args.spec))
            g = shift_hitting_digraph(spec)
            _emit(g.to_obj(), dot=g.to_dot() if args.dot else None)
            return 0

        if args.command == "polarize":
            spec = OmegaPartitionSpec.from_obj(_load(args.spec))
            obj = _load(args.refinement)
            base = Digraph.from_obj(obj["base"])
            cover = Digraph.from_obj(obj["cover"])
            vr = VirtualRefinement(base, cover, DigraphMap(cover, base, obj["map"]))
            outcome = polarize_virtual_refinement(spec, vr)
            _emit(outcome.to_obj())
            return 0 if isinstance(outcome, Realized) else 1

        if args.command == "fixture":
            return _cmd_fixture(args)

        if args.command == "crosscheck":
            budget = _budget_from_env()
            report = oracle.crosscheck_suite(budget, mutate=args.mutate)
            _emit(report.to_obj())
            return 0 if not report.failures else 1

        parser.print_usage(sys.stderr)
        return 2
    except (BudgetExceeded, SearchTooLarge) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ShiftdgError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
