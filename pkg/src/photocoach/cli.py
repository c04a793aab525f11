"""Command-line interface.

Subcommands: score, guide, train, eval, serve, stats. Every command has a
--json mode for machine-checkable output. Exit codes: 0 success, 1 domain
error (bad image, bad manifest, missing file), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import PhotoCoachError
from .guidance import analyze_frame, suggestions_from_scores
from .imagecore import Colorspace, load_image
from .model import (
    ATTRIBUTES,
    NetworkConfig,
    ScoringNetwork,
    display_score,
    evaluate_manifest,
    forward_score,
    train_network,
)
from .study import check_claims, load_agreement_table, load_claims, load_score_table, replay_report

_COLORSPACES = {cs.value: cs for cs in Colorspace}


def _load_model(path: str | None, colorspace: str) -> ScoringNetwork:
    if path:
        return ScoringNetwork.load(path)
    return ScoringNetwork(NetworkConfig(colorspace=_COLORSPACES[colorspace]))


def _emit(payload: dict, as_json: bool, lines):
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_score(args) -> int:
    img = load_image(args.image)
    net = _load_model(args.model, args.colorspace)
    scores = forward_score(img, net)
    suggestions = suggestions_from_scores(scores)

    attr_ranked = [(k, v) for k, v in scores.ranked() if k != "overall"]
    lines = [f"{'overall':<20}{display_score(scores.overall):>4}"]
    lines += [f"{name:<20}{display_score(value):>4}" for name, value in attr_ranked]
    for prompt in suggestions:
        lines.append(f"suggestion [{prompt.token}]: {prompt.detail}")
    payload = {
        "scores": scores.all_scores(),
        "display": scores.display(),
        "attributes_ranked": [name for name, _ in attr_ranked],
        "suggestions": [p.to_dict() for p in suggestions],
    }
    _emit(payload, args.json, lines)
    return 0


def cmd_guide(args) -> int:
    img = load_image(args.image)
    analysis = analyze_frame(img)

    lines = []
    for prompt in analysis.prompts:
        lines.append(f"{prompt.kind.value}: {prompt.token}")
        if prompt.detail:
            lines.append(f"  {prompt.detail}")
    if analysis.verdict is not None:
        v = analysis.verdict
        state = "matched" if v.matched else "not matched"
        lines.append(f"best rule: {v.best.value} ({state}, score {v.scores[v.best.value]:.2f})")
        for rule, score in v.scores.items():
            lines.append(f"  {rule:<16}{score:.3f}")
    else:
        lines.append("no subject found; composition skipped")
    payload = {
        "prompts": [p.to_dict() for p in analysis.prompts],
        "verdict": None
        if analysis.verdict is None
        else {
            "scores": analysis.verdict.scores,
            "best": analysis.verdict.best.value if analysis.verdict.best else None,
            "matched": analysis.verdict.matched,
        },
        "subject": None
        if analysis.subject is None
        else {
            "bbox": list(analysis.subject.bbox),
            "centroid": list(analysis.subject.centroid),
            "area_frac": analysis.subject.area_frac,
        },
    }
    _emit(payload, args.json, lines)
    return 0


def cmd_train(args) -> int:
    cfg = NetworkConfig(
        colorspace=_COLORSPACES[args.colorspace],
        seed=args.seed,
        lr=args.lr,
        momentum=args.momentum,
        epochs=args.epochs,
        loss_weight_overall=args.loss_weight,
    )
    progress = None
    if not args.quiet:
        progress = lambda epoch, loss: print(f"epoch {epoch}: loss {loss:.6f}", file=sys.stderr)
    net, report = train_network(args.data, cfg, stop_loss=args.stop_loss, on_epoch=progress)
    if args.out:
        net.save(args.out)
    for reason in report.skipped:
        print(f"warning: skipped {reason}", file=sys.stderr)

    lines = [
        f"trained {report.epochs_run} epochs on {report.train_size} examples "
        f"({report.val_size} held out, {len(report.skipped)} skipped)",
        f"final train loss: {report.final_loss:.6g}",
    ]
    if args.out:
        lines.append(f"checkpoint written to {args.out}")
    payload = {
        "epochs_run": report.epochs_run,
        "final_loss": report.final_loss,
        "train_size": report.train_size,
        "val_size": report.val_size,
        "skipped": len(report.skipped),
        "validation": report.validation.to_dict() if report.validation else None,
        "checkpoint": args.out,
    }
    _emit(payload, args.json, lines)
    return 0


def cmd_eval(args) -> int:
    net = ScoringNetwork.load(args.model)
    report, skipped = evaluate_manifest(net, args.data)
    for reason in skipped:
        print(f"warning: skipped {reason}", file=sys.stderr)

    def fmt(v):
        return "undefined" if v is None else f"{v:.4f}"

    lines = [f"evaluated {report.count} examples ({len(skipped)} skipped)"]
    lines.append(f"spearman overall: {fmt(report.spearman_overall)}")
    for name in ATTRIBUTES:
        lines.append(f"spearman {name}: {fmt(report.spearman_attributes[name])}")
    lines.append(f"agreement overall: {report.agreement_overall:.4f}")
    for name in ATTRIBUTES:
        lines.append(f"agreement {name}: {report.agreement_attributes[name]:.4f}")
    payload = {**report.to_dict(), "skipped": len(skipped)}
    _emit(payload, args.json, lines)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    store = args.store or os.environ.get("PHOTOCOACH_STORE", "./photocoach-store")
    app = create_app(store, checkpoint=args.model)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_stats(args) -> int:
    scores = load_score_table(args.table1)
    agreement = load_agreement_table(args.table2)
    claims = load_claims(args.claims)
    report = replay_report(scores, agreement, claims)

    lines = [f"score change over {scores.count} subjects:"]
    for row in scores.rows:
        lines.append(
            f"  subject {row.subject:>2}: {row.before:g} -> {row.after:g}  diff {row.diff:+g}"
        )
    lines.append(f"  mean diff: {scores.mean_diff:.4g}")
    lines.append(f"  max diff: {scores.max_diff:g}")
    lines.append(
        f"  improved: {scores.improved_count}/{scores.count} "
        f"({scores.improved_rate_percent:.1f}%)"
    )
    lines.append("reviewer agreement:")
    for rater in agreement.raters:
        lines.append(
            f"  {rater.name}: {rater.agree_count}/{rater.count} ({rater.rate_percent:.1f}%)"
        )
    lines.append(
        f"  overall: {agreement.overall_agree}/{agreement.overall_count} "
        f"({agreement.overall_rate_percent:.1f}%)"
    )
    lines.append("claim checks:")
    for c in check_claims(scores, agreement, claims):
        mark = "ok  " if c.matches else "FLAG"
        lines.append(f"  {mark} {c.claim}: claimed {c.claimed:g}, computed {c.computed:.6g}")
    _emit(report, args.json, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photocoach",
        description="Score photos, get shooting guidance, train models, run the community service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score one image and print suggestions")
    p.add_argument("image", type=Path)
    p.add_argument("--model", help="checkpoint path (default: fresh seeded network)")
    p.add_argument("--colorspace", choices=sorted(_COLORSPACES), default="hsv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("guide", help="print composition and lighting prompts for one frame")
    p.add_argument("image", type=Path)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_guide)

    p = sub.add_parser("train", help="train a model from a manifest CSV")
    p.add_argument("--data", required=True, help="manifest CSV path")
    p.add_argument("--out", help="checkpoint output path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--lambda", dest="loss_weight", type=float, default=6.0,
                   help="weight of the overall-score term in the loss")
    p.add_argument("--lr", type=float, default=0.01)
    p.add_argument("--momentum", type=float, default=0.9)
    p.add_argument("--colorspace", choices=sorted(_COLORSPACES), default="hsv")
    p.add_argument("--stop-loss", type=float, default=None,
                   help="stop once mean epoch loss reaches this value")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a checkpoint over a manifest")
    p.add_argument("--data", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the community service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--store", help="store directory (default: $PHOTOCOACH_STORE)")
    p.add_argument("--model", help="checkpoint path (default: fresh seeded network)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("stats", help="replay the bundled study tables and check claims")
    p.add_argument("--table1", help="before/after score CSV (default: bundled)")
    p.add_argument("--table2", help="reviewer agreement CSV (default: bundled)")
    p.add_argument("--claims", help="claims JSON (default: bundled)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PhotoCoachError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
