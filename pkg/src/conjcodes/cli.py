"""Command-line front end.

JSON reports go to stdout (or ``--json PATH``); human-readable tables go to
stderr.  Exit status: 0 success, 1 validation or domain failure (with a JSON
error object), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import catalog, quantum_sim
from .conjugate_pair import ConjugatePair, expand_pair, load_pair, message_representatives, save_pair
from .crypto_scheme import ChannelSpec, SchemeInstance, decrypt, encrypt, fidelity_accounting, leakage_bound, simulate
from .errors import CodingError
from .symplectic import correctable_error_set, css_lift, error_set


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _resolve_pair(ref: str) -> ConjugatePair:
    """A manifest path or the name of a built-in pair."""
    if ref in catalog.BUILTIN:
        return catalog.load_builtin(ref)
    path = Path(ref)
    if not path.is_file():
        raise UsageError(f"no pair manifest at {ref!r} (built-ins: {', '.join(catalog.BUILTIN)})")
    return load_pair(path)


def _simulable(pair: ConjugatePair) -> ConjugatePair:
    return pair if pair.field.is_prime_field else expand_pair(pair)


def _table(rows: list[tuple[str, object]]) -> None:
    width = max(len(k) for k, _ in rows)
    for key, value in rows:
        print(f"{key:<{width}}  {value}", file=sys.stderr)


def _vec(v) -> str:
    return "".join(str(int(a)) if a < 10 else f"({int(a)})" for a in v)


# subcommands


def cmd_verify(args) -> tuple[dict, int]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pair = _resolve_pair(args.pair)
    info = pair.summary()
    _table([(k, v) for k, v in info.items() if k != "warnings"])
    for w in info["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    return {"valid": True, **info}, 0


def cmd_expand(args) -> tuple[dict, int]:
    pair = _resolve_pair(args.pair)
    if pair.field.is_prime_field:
        raise UsageError("pair is already over a prime field")
    out = expand_pair(pair)
    name = args.name or f"{pair.name or 'pair'}-expanded"
    manifest = save_pair(out, args.out, name)
    info = {"manifest": str(manifest), **out.summary()}
    _table([("written", manifest), ("field", out.field), ("n", out.n), ("k", out.k)])
    return info, 0


def cmd_encode_demo(args) -> tuple[dict, int]:
    pair = _resolve_pair(args.pair)
    s = SchemeInstance.build(pair, args.x_dist, args.seed)
    msgs = message_representatives(pair)
    if not 0 <= args.message < len(msgs):
        raise UsageError(f"--message must lie in [0, {len(msgs)})")
    v = msgs[args.message]
    x, sent = encrypt(s, v, s.rng())
    got = decrypt(s, x, sent)
    report = {"message": v.tolist(), "x": x.tolist(), "transmitted": sent.tolist(),
              "decrypted": got.tolist(), "ok": bool(np.array_equal(got, v))}
    rows = [("message", _vec(v)), ("shift x", _vec(x)), ("transmitted", _vec(sent)),
            ("decrypted", _vec(got))]
    if pair.field.is_prime_field and pair.field.q**pair.n <= quantum_sim._cap(quantum_sim.MAX_STATE_DIM):
        cb = quantum_sim.css_basis(pair)
        state = cb.state(cb.xs[0], cb.zs[0], v)
        support = np.flatnonzero(np.abs(state) > quantum_sim.ATOL)
        report["state_support"] = [int(i) for i in support]
        rows.append(("state support", f"{len(support)} basis states"))
    _table(rows)
    return report, 0


def cmd_simulate(args) -> tuple[dict, int]:
    pair = _resolve_pair(args.pair)
    s = SchemeInstance.build(pair, args.x_dist, args.seed)
    report = simulate(s, ChannelSpec.parse(args.channel), args.trials, args.seed,
                      quantum_fidelity=args.quantum_fidelity, workers=args.workers)
    d = report.to_dict()
    _table([(k, v) for k, v in d.items() if k != "config"])
    return d, 0


def cmd_fidelity(args) -> tuple[dict, int]:
    pair = _simulable(_resolve_pair(args.pair))
    s = SchemeInstance.build(pair)
    acc = fidelity_accounting(s, ChannelSpec.parse(args.channel))
    d = {"n": pair.n, "k": pair.k, "q": pair.field.q, **acc.__dict__}
    _table(list(d.items()))
    return d, 0


def cmd_bounds(args) -> tuple[dict, int]:
    b = leakage_bound(args.fidelity, args.n, args.rate, args.q)
    d = {"fidelity": args.fidelity, "n": args.n, "rate": args.rate, "q": args.q,
         "leakage_bound_bits": b.bits, "leakage_bound_loose_bits": b.bits_loose}
    _table(list(d.items()))
    return d, 0


def _selftest_pair(pair: ConjugatePair, rng: np.random.Generator) -> list[dict]:
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
            detail = None
        except CodingError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        checks.append({"check": name, "passed": ok, **({"detail": detail} if detail else {})})

    cb = quantum_sim.css_basis(pair)
    F = pair.field

    def orthonormal():
        u = cb.unitary
        return np.allclose(u.conj().T @ u, np.eye(u.shape[1]), atol=quantum_sim.ATOL)

    def stabilizers():
        for x in cb.xs:
            for z in cb.zs:
                for v in cb.vs:
                    quantum_sim.stabilizer_check(pair, cb.state(x, z, v), x, z)
        return True

    def mixture():
        for x in cb.xs:
            for v in cb.vs:
                quantum_sim.sp_mixture(pair, x, v)
        return True

    def recovery():
        labels = error_set(cb.xs, cb.zs)
        block = cb.block(cb.xs[0], cb.zs[0])
        for lab in labels:
            for psi in block.T:
                noisy = quantum_sim.weyl_apply(psi, lab, F)
                fixed = quantum_sim.recover(pair, noisy, cb.xs[0], cb.zs[0])
                if abs(abs(np.vdot(psi, fixed)) - 1) > quantum_sim.ATOL:
                    return False
        lift, _ = css_lift(pair)
        return correctable_error_set(lift, labels)

    def commutation():
        for _ in range(20):
            a, b = rng.integers(0, F.q, size=(2, 2 * pair.n))
            quantum_sim.commutation_check(a, b, F)
        return True

    check("orthonormal basis", orthonormal)
    check("stabilizer eigenvalues", stabilizers)
    check("mixture identity", mixture)
    check("leader-error recovery", recovery)
    if F.q**pair.n <= quantum_sim.MAX_KRAUS_DIM:
        check("weyl commutation", commutation)
    return checks


def cmd_selftest(args) -> tuple[dict, int]:
    names = args.pairs or ["steane", "css422", "trivial"]
    rng = np.random.Generator(np.random.Philox(args.seed))
    results = {}
    failed = False
    for ref in names:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pair = _simulable(_resolve_pair(ref))
        checks = _selftest_pair(pair, rng)
        results[ref] = checks
        for c in checks:
            failed |= not c["passed"]
            print(f"{ref:<14} {c['check']:<24} {'pass' if c['passed'] else 'FAIL'}", file=sys.stderr)
    return {"pairs": results, "passed": not failed}, 1 if failed else 0


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")
    common.add_argument("--max-dim", type=int, metavar="CAP", help="override the simulator dimension cap")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="conjcodes", description="Conjugate code pairs and the schemes built on them.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_pair(name, help_, required=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--pair", required=required, metavar="MANIFEST",
                       help="pair manifest path or built-in name")
        return p

    with_pair("verify", "validate a pair and print its parameters")
    p = with_pair("expand", "expand a GF(p^m) pair to GF(p) and write the bundle")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--name")
    p = with_pair("encode-demo", "encrypt and decrypt one message")
    p.add_argument("--message", type=int, default=0, help="index into the message transversal")
    p.add_argument("--x-dist", choices=("point", "uniform"), default="point")
    p = with_pair("simulate", "Monte Carlo of the classical scheme")
    p.add_argument("--channel", required=True, metavar="KIND:PARAMS")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--x-dist", choices=("point", "uniform"), default="point")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--quantum-fidelity", action="store_true",
                   help="take the fidelity gap from the quantum simulator")
    p = with_pair("fidelity", "exact fidelity accounting")
    p.add_argument("--channel", required=True, metavar="KIND:PARAMS")
    p = sub.add_parser("bounds", parents=[common], help="evaluate the leakage bound")
    p.add_argument("--fidelity", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--q", type=int, required=True)
    p = sub.add_parser("selftest", parents=[common], help="simulator invariants on built-in pairs")
    p.add_argument("--pair", dest="pairs", action="append", metavar="MANIFEST")
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "expand": cmd_expand,
    "encode-demo": cmd_encode_demo,
    "simulate": cmd_simulate,
    "fidelity": cmd_fidelity,
    "bounds": cmd_bounds,
    "selftest": cmd_selftest,
}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "json"}


def _emit(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    quantum_sim.set_max_dim(args.max_dim)
    try:
        report, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"conjcodes {args.command}: {exc}", file=sys.stderr)
        return 2
    except (CodingError, ValueError) as exc:
        error = {"error": type(exc).__name__, "message": str(exc), "config": _config(args)}
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit(error, args.json)
        return 1
    finally:
        quantum_sim.set_max_dim(None)
    config = {**_config(args), **report.pop("config", {})}
    _emit({"command": args.command, "config": config, **report}, args.json)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
