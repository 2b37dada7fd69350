"""Command-line front end: generate graphs, compute spectra and partitions,
emit metrics and figure-reproduction CSVs.

Every invocation writes one JSON-line run report to stderr (command echo,
input digest, config, outputs, timing).  Vertex labels in human-facing
output are 1-based; graph files store 0-based indices.  Exit codes: 0 ok,
2 bad parameters, 3 I/O failure, 4 solver failure, 5 disconnected graph.
Warnings never change the exit code.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .eigen import (
    SolverConfig,
    dense_spectrum,
    dense_spectrum_deflated,
    lobpcg_smallest,
)
from .errors import (
    BasisDegenerateError,
    DegenerateVectorError,
    MultiComponentError,
    SignedCutError,
    SolverFailedError,
)
from .experiments import gap_study, truncated_iteration_study
from .generators import (
    DEFAULT_SPECIAL_EDGE,
    DEFAULT_STRING_LENGTH,
    NEGATIVE_EDGE_WEIGHT,
    WEAK_LINK_WEIGHT,
    StringSpec,
    cobra,
    dumbbell,
    noisy_string,
    path_string,
)
from .graph import SignedGraph, nullify_negative
from .io import load_graph, save_graph
from .laplacian import LaplacianKind, laplacian
from .partition import Partition, bisect, confidence, cut_metrics, fiedler, partition_json

DEMO_NAMES = (
    "string-modes",
    "weak-link",
    "negative-edge",
    "noisy-string",
    "cobra",
    "dumbbell",
    "gap-study",
    "lobpcg-30",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signedcut",
        description="Spectral bisection of signed graphs.",
    )
    parser.add_argument("--version", action="version", version=f"signedcut {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an example graph file")
    p_gen.add_argument("kind", choices=["path", "noisy-string", "cobra", "dumbbell"])
    p_gen.add_argument("--n", type=int, default=None,
                       help="vertex count (default: 75 for path, 12 for noisy-string)")
    p_gen.add_argument("--override", action="append", default=[], metavar="EDGE:W",
                       help="path edge override; EDGE is the 1-based edge number "
                            "(edge k joins vertices k and k+1)")
    p_gen.add_argument("--neg-edge", default="8:-0.5", metavar="EDGE:W",
                       help="noisy-string replaced edge, 1-based edge number")
    p_gen.add_argument("--noise-amp", type=float, default=1e-2)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True, help="output graph file (.mtx/.mm/.csv)")

    for name in ("spectrum", "partition", "compare"):
        p = sub.add_parser(name, help=f"{name} of a graph file")
        p.add_argument("graph", help="input graph file (.mtx/.mm/.csv)")
        if name != "compare":
            p.add_argument("--laplacian", choices=["standard", "signed"], default="standard")
            p.add_argument("--solver", choices=["dense", "lobpcg"], default="dense")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--max-iter", type=int, default=200)
        p.add_argument("--block-size", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        if name == "spectrum":
            p.add_argument("--k", type=int, default=5)
            p.add_argument("--deflate-ones", action="store_true",
                           help="constrain iterates orthogonal to the ones vector (lobpcg)")
        if name == "partition":
            p.add_argument("--k", type=int, default=2)
            p.add_argument("--emit-confidence", action="store_true")
            p.add_argument("--zero-policy", choices=["positive-side", "negative-side"],
                           default="positive-side")

    p_met = sub.add_parser("metrics", help="cut metrics of a stored partition")
    p_met.add_argument("graph")
    p_met.add_argument("--partition", required=True, help="partition JSON file")
    p_met.add_argument("--out", default=None)

    p_demo = sub.add_parser("demo", help="run a named end-to-end experiment")
    p_demo.add_argument("name", choices=list(DEMO_NAMES))
    p_demo.add_argument("--out", default=None, help="output directory (default: demo-<name>)")
    p_demo.add_argument("--n", type=int, default=None, help="string length where applicable")
    p_demo.add_argument("--seed", type=int, default=0)
    return parser


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _emit_text(text: str, out: str | None, outputs: list[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
        outputs.append(out)


def _emit_json(doc: dict, out: str | None, outputs: list[str]) -> None:
    _emit_text(json.dumps(doc, indent=2) + "\n", out, outputs)


def _modes_csv(eigenvalues: np.ndarray, vectors: np.ndarray) -> str:
    k = len(eigenvalues)
    lines = ["vertex," + ",".join(f"mode_{c}" for c in range(k))]
    lines.append("eigenvalue," + ",".join(repr(float(v)) for v in eigenvalues))
    for row in range(vectors.shape[0]):
        lines.append(
            f"{row + 1}," + ",".join(repr(float(vectors[row, c])) for c in range(k))
        )
    return "\n".join(lines) + "\n"


def _parse_edge_weight(text: str, flag: str) -> tuple[int, float]:
    """Parse a 1-based EDGE:WEIGHT argument into a 0-based edge index."""
    try:
        idx_s, w_s = text.split(":", 1)
        idx, w = int(idx_s), float(w_s)
    except ValueError:
        raise SignedCutError(f"{flag} expects EDGE:WEIGHT, got {text!r}") from None
    if idx < 1:
        raise SignedCutError(f"{flag} edge numbers are 1-based, got {idx}")
    return idx - 1, w


def _solver_config(args, k: int) -> SolverConfig:
    return SolverConfig(
        k=k,
        block_size=args.block_size,
        tol=args.tol,
        max_iter=args.max_iter,
        seed=args.seed,
    )


def cmd_gen(args, outputs: list[str], warnings: list[str]) -> dict:
    if args.kind == "path":
        overrides = tuple(_parse_edge_weight(o, "--override") for o in args.override)
        g = path_string(StringSpec(n=args.n or DEFAULT_STRING_LENGTH, overrides=overrides))
    elif args.kind == "noisy-string":
        idx, w = _parse_edge_weight(args.neg_edge, "--neg-edge")
        g = noisy_string(args.n or 12, (idx, w), args.noise_amp, args.seed)
    elif args.kind == "cobra":
        g = cobra()
    else:
        g = dumbbell()
    save_graph(g, args.out)
    outputs.append(args.out)
    return {"n": g.n, "edges": g.m}


def cmd_spectrum(args, outputs: list[str], warnings: list[str]) -> dict:
    g = load_graph(args.graph)
    if args.k < 1 or args.k > g.n:
        raise SignedCutError(f"k={args.k} outside [1, n={g.n}]")
    op = laplacian(g, LaplacianKind(args.laplacian))
    if args.solver == "dense":
        s = dense_spectrum(op)
        evals = s.eigenvalues[: args.k]
        evecs = s.eigenvectors[:, : args.k]
    else:
        cfg = SolverConfig(
            k=args.k,
            block_size=args.block_size,
            tol=args.tol,
            max_iter=args.max_iter,
            seed=args.seed,
            deflate_ones=args.deflate_ones,
        )
        s, _ = lobpcg_smallest(op, cfg)
        evals, evecs = s.eigenvalues, s.eigenvectors
        if not s.converged.all():
            warnings.append(
                f"{int((~s.converged).sum())} of {args.k} eigenpairs unconverged "
                f"after {args.max_iter} iterations"
            )
    _emit_text(_modes_csv(evals, evecs), args.out, outputs)
    return {"eigenvalues": [float(v) for v in evals]}


def cmd_partition(args, outputs: list[str], warnings: list[str]) -> dict:
    g = load_graph(args.graph)
    solver = None if args.solver == "dense" else _solver_config(args, args.k)
    f = fiedler(g, LaplacianKind(args.laplacian), solver=solver)
    p = bisect(f, zero_policy=args.zero_policy)
    conf = confidence(f) if args.emit_confidence else None
    if f.clustered_warning:
        warnings.append(
            "clustered eigenvalues: the Fiedler vector is numerically unstable "
            f"(gap {f.gap:.3e})"
        )
    doc = partition_json(f, p, conf)
    _emit_json(doc, args.out, outputs)
    return {"side_a_size": len(p.set_a), "side_b_size": len(p.set_b)}


def cmd_metrics(args, outputs: list[str], warnings: list[str]) -> dict:
    g = load_graph(args.graph)
    with open(args.partition) as fh:
        pdoc = json.load(fh)
    side = pdoc.get("side")
    if not isinstance(side, list) or pdoc.get("n") != g.n or len(side) != g.n:
        raise SignedCutError(
            f"partition file does not match graph size n={g.n}"
        )
    p = Partition(side=np.asarray(side, dtype=np.int8))
    m = cut_metrics(g, p)
    doc = {
        "n": g.n,
        "size_a": len(p.set_a),
        "size_b": len(p.set_b),
        "cut": m.cut,
        "cut_plus": m.cut_plus,
        "cut_minus_cross": m.cut_minus_cross,
        "cut_minus_within_a": m.cut_minus_within_a,
        "cut_minus_within_b": m.cut_minus_within_b,
        "signed_cut": m.signed_cut,
        "ratio_cut": m.ratio_cut,
        "signed_ratio_cut": m.signed_ratio_cut,
        "total_negative": m.total_negative,
    }
    _emit_json(doc, args.out, outputs)
    return doc


def _gap_block(g: SignedGraph, kind: LaplacianKind) -> dict:
    """Fiedler gap and condition number from the dense oracle.

    The standard kind works on the ones-deflated spectrum, so it stays
    defined even for graphs that are disconnected (where the zero eigenvalue
    is multiple); the signed kind uses the full spectrum.
    """
    op = laplacian(g, kind)
    if kind is LaplacianKind.STANDARD:
        s = dense_spectrum_deflated(op)
        lam = float(s.eigenvalues[0])
        gap = float(s.eigenvalues[1] - s.eigenvalues[0])
        spread = float(s.eigenvalues[-1] - s.eigenvalues[0])
    else:
        s = dense_spectrum(op)
        from .partition import _select_signed

        sel = _select_signed(s, kind)
        lam, gap = sel.eigenvalue, sel.gap
        lo = 1 if sel.skipped_constant else 0
        spread = float(s.eigenvalues[-1] - s.eigenvalues[lo])
    return {
        "fiedler_eigenvalue": lam,
        "gap": gap,
        "condition_number": math.inf if gap == 0 else spread / gap,
        "smallest_eigenvalues": [float(v) for v in s.eigenvalues[:5]],
    }


def _partition_block(g: SignedGraph, kind: LaplacianKind, warnings: list[str]) -> dict:
    f = fiedler(g, kind)
    block = _gap_block(g, kind)
    block["clustered_warning"] = f.clustered_warning
    if f.clustered_warning:
        warnings.append(f"{kind.value}: clustered eigenvalues, unstable Fiedler vector")
    try:
        p = bisect(f)
        m = cut_metrics(g, p)
        block["side"] = [int(x) for x in p.side]
        block["cut"] = m.cut
        block["signed_cut"] = m.signed_cut
        block["ratio_cut"] = m.ratio_cut
    except DegenerateVectorError:
        block["side"] = None
        warnings.append(f"{kind.value}: Fiedler components all one sign; no bisection")
    return block


def cmd_compare(args, outputs: list[str], warnings: list[str]) -> dict:
    g = load_graph(args.graph)
    doc = {"n": g.n, "edges": g.m}
    doc["standard"] = _partition_block(g, LaplacianKind.STANDARD, warnings)
    doc["signed"] = _partition_block(g, LaplacianKind.SIGNED, warnings)
    base = nullify_negative(g)
    doc["baseline"] = _gap_block(base, LaplacianKind.STANDARD)
    doc["baseline"]["removed_edges"] = g.m - base.m
    gs, gb = doc["standard"]["gap"], doc["baseline"]["gap"]
    gsg = doc["signed"]["gap"]
    cs, csg = doc["standard"]["condition_number"], doc["signed"]["condition_number"]
    doc["ratios"] = {
        "gap_standard_over_baseline": gs / gb if gb else math.inf,
        "gap_signed_over_baseline": gsg / gb if gb else math.inf,
        "condition_signed_over_standard": csg / cs if cs else math.inf,
    }
    _emit_json(doc, args.out, outputs)
    return doc["ratios"]


# --- demos -----------------------------------------------------------------


def _demo_dir(args) -> str:
    out = args.out or f"demo-{args.name}"
    os.makedirs(out, exist_ok=True)
    return out


def _write_modes(g: SignedGraph, kind: LaplacianKind, k: int, path: str,
                 outputs: list[str]) -> np.ndarray:
    s = dense_spectrum(laplacian(g, kind))
    text = _modes_csv(s.eigenvalues[:k], s.eigenvectors[:, :k])
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    outputs.append(path)
    return s.eigenvalues[:k]


def demo_string_modes(args, outputs, warnings) -> dict:
    n = args.n or DEFAULT_STRING_LENGTH
    g = path_string(StringSpec(n=n))
    ev = _write_modes(g, LaplacianKind.STANDARD, 5,
                      os.path.join(_demo_dir(args), "string-modes.csv"), outputs)
    return {"n": n, "eigenvalues": [float(v) for v in ev]}


def demo_weak_link(args, outputs, warnings) -> dict:
    n = args.n or DEFAULT_STRING_LENGTH
    g = path_string(StringSpec(n=n, overrides=((DEFAULT_SPECIAL_EDGE, WEAK_LINK_WEIGHT),)))
    ev = _write_modes(g, LaplacianKind.STANDARD, 5,
                      os.path.join(_demo_dir(args), "weak-link-modes.csv"), outputs)
    return {"n": n, "weak_weight": WEAK_LINK_WEIGHT, "eigenvalues": [float(v) for v in ev]}


def demo_negative_edge(args, outputs, warnings) -> dict:
    n = args.n or DEFAULT_STRING_LENGTH
    g = path_string(StringSpec(n=n, overrides=((DEFAULT_SPECIAL_EDGE, NEGATIVE_EDGE_WEIGHT),)))
    out = _demo_dir(args)
    ev_std = _write_modes(g, LaplacianKind.STANDARD, 5,
                          os.path.join(out, "negative-edge-standard.csv"), outputs)
    ev_sgn = _write_modes(g, LaplacianKind.SIGNED, 5,
                          os.path.join(out, "negative-edge-signed.csv"), outputs)
    return {
        "n": n,
        "negative_weight": NEGATIVE_EDGE_WEIGHT,
        "standard_eigenvalues": [float(v) for v in ev_std],
        "signed_eigenvalues": [float(v) for v in ev_sgn],
    }


def demo_noisy_string(args, outputs, warnings) -> dict:
    n = args.n or 12
    g = noisy_string(n, (7, -0.5), 1e-2, args.seed)
    out = _demo_dir(args)
    save_graph(g, os.path.join(out, "noisy-string.mtx"))
    outputs.append(os.path.join(out, "noisy-string.mtx"))
    _write_modes(g, LaplacianKind.STANDARD, 3,
                 os.path.join(out, "noisy-string-standard.csv"), outputs)
    _write_modes(g, LaplacianKind.SIGNED, 2,
                 os.path.join(out, "noisy-string-signed.csv"), outputs)
    f_std = fiedler(g, LaplacianKind.STANDARD)
    p = bisect(f_std)
    with open(os.path.join(out, "noisy-string-partition.json"), "w", newline="\n") as fh:
        json.dump(partition_json(f_std, p), fh, indent=2)
    outputs.append(os.path.join(out, "noisy-string-partition.json"))
    f_sgn = fiedler(g, LaplacianKind.SIGNED)
    if f_sgn.clustered_warning:
        warnings.append("signed: two smallest eigenvalues form a cluster")
    return {
        "n": n,
        "standard_side_a": sorted(v + 1 for v in p.set_a),
        "signed_clustered_warning": f_sgn.clustered_warning,
        "signed_gap": f_sgn.gap,
    }


def demo_cobra(args, outputs, warnings) -> dict:
    g = cobra()
    out = _demo_dir(args)
    save_graph(g, os.path.join(out, "cobra.mtx"))
    outputs.append(os.path.join(out, "cobra.mtx"))
    doc: dict = {"n": g.n}
    p_std = bisect(fiedler(g, LaplacianKind.STANDARD))
    doc["standard_side_a"] = sorted(v + 1 for v in p_std.set_a)
    m = cut_metrics(g, p_std)
    doc["standard_metrics"] = {"cut": m.cut, "signed_cut": m.signed_cut}
    p_null = bisect(fiedler(nullify_negative(g), LaplacianKind.STANDARD))
    doc["nullified_side_a"] = sorted(v + 1 for v in p_null.set_a)
    s = dense_spectrum(laplacian(g, LaplacianKind.SIGNED))
    try:
        f_sgn = fiedler(g, LaplacianKind.SIGNED)
        bisect(f_sgn)
        doc["signed_first_bisects"] = True
    except DegenerateVectorError:
        doc["signed_first_bisects"] = False
        warnings.append("signed: first eigenvector has one sign, bisection degenerate")
    second = s.eigenvectors[:, 1]
    doc["signed_second_signs"] = [int(v) for v in np.sign(np.round(second, 12))]
    with open(os.path.join(out, "cobra.json"), "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
    outputs.append(os.path.join(out, "cobra.json"))
    return doc


def demo_dumbbell(args, outputs, warnings) -> dict:
    g = dumbbell()
    out = _demo_dir(args)
    save_graph(g, os.path.join(out, "dumbbell.mtx"))
    outputs.append(os.path.join(out, "dumbbell.mtx"))
    p_std = bisect(fiedler(g, LaplacianKind.STANDARD))
    p_sgn = bisect(fiedler(g, LaplacianKind.SIGNED))
    m = cut_metrics(g, p_std)
    doc = {
        "n": g.n,
        "standard_side_a": sorted(v + 1 for v in p_std.set_a),
        "signed_side_a": sorted(v + 1 for v in p_sgn.set_a),
        "standard_metrics": {
            "cut": m.cut,
            "cut_plus": m.cut_plus,
            "cut_minus_cross": m.cut_minus_cross,
            "signed_cut": m.signed_cut,
        },
    }
    with open(os.path.join(out, "dumbbell.json"), "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
    outputs.append(os.path.join(out, "dumbbell.json"))
    return doc


def demo_gap_study(args, outputs, warnings) -> dict:
    n = args.n or 100
    doc = gap_study(n, DEFAULT_SPECIAL_EDGE, (-0.01, -0.05, -0.1))
    out = os.path.join(_demo_dir(args), "gap-study.json")
    with open(out, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
    outputs.append(out)
    return {
        "n": n,
        "ratios_at_-0.05": {
            k: v
            for k, v in doc["sweep"][1].items()
            if k.startswith(("gap_s", "condition_s"))
        },
    }


def demo_lobpcg_30(args, outputs, warnings) -> dict:
    n = args.n or DEFAULT_STRING_LENGTH
    doc = truncated_iteration_study(n, DEFAULT_SPECIAL_EDGE, NEGATIVE_EDGE_WEIGHT)
    out = os.path.join(_demo_dir(args), "lobpcg-30.json")
    with open(out, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
    outputs.append(out)
    return doc["sign_change_counts"]


_DEMOS = {
    "string-modes": demo_string_modes,
    "weak-link": demo_weak_link,
    "negative-edge": demo_negative_edge,
    "noisy-string": demo_noisy_string,
    "cobra": demo_cobra,
    "dumbbell": demo_dumbbell,
    "gap-study": demo_gap_study,
    "lobpcg-30": demo_lobpcg_30,
}


def cmd_demo(args, outputs: list[str], warnings: list[str]) -> dict:
    return _DEMOS[args.name](args, outputs, warnings)


_HANDLERS = {
    "gen": cmd_gen,
    "spectrum": cmd_spectrum,
    "partition": cmd_partition,
    "metrics": cmd_metrics,
    "compare": cmd_compare,
    "demo": cmd_demo,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    outputs: list[str] = []
    warnings: list[str] = []
    code = 0
    summary: dict = {}
    error: str | None = None
    try:
        summary = _HANDLERS[args.command](args, outputs, warnings)
        if args.command in ("gen", "demo") and summary:
            print(json.dumps(summary))
    except MultiComponentError as exc:
        code, error = 5, str(exc)
    except (SolverFailedError, BasisDegenerateError, DegenerateVectorError) as exc:
        code, error = 4, str(exc)
    except (SignedCutError, ValueError) as exc:
        # includes empty partition sides, size mismatches, bad flags
        code, error = 2, str(exc)
    except OSError as exc:
        code, error = 3, str(exc)
    finally:
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        if error is not None:
            print(f"error: {error}", file=sys.stderr)
        graph_path = getattr(args, "graph", None)
        digest = None
        if graph_path is not None and os.path.exists(graph_path):
            try:
                digest = _digest(graph_path)
            except OSError:
                digest = None
        report = {
            "command": ["signedcut"] + argv,
            "input_digest": digest,
            "config": {
                k: v
                for k, v in sorted(vars(args).items())
                if k != "command" and not callable(v)
            },
            "outputs": outputs,
            "warnings": warnings,
            "error": error,
            "exit_code": code,
            "elapsed_s": round(time.perf_counter() - started, 6),
        }
        print(json.dumps(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
