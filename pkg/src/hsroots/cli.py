"""Command-line interface.

One job per invocation:

    hsroots decide input.json --m 3
    hsroots construct input.json --m 5 --format json
    hsroots verify triple.json --m 7 --tol 1e-8
    hsroots canonicalize pair.json --tol-canon 1e-9
    hsroots oracle input.json --m 4

Input is a JSON file holding either a block descriptor
{"blocks": [{"kind": "real", "lambda": x, "size": k, "sign": 1}, ...]},
a raw pair {"B": [[[re, im], ...], ...], "H": ...}, or, for `verify`, a
triple {"A": ..., "B": ..., "H": ...}.  Raw pairs are canonicalized
before decide/construct; descriptor inputs skip that step.

Exit codes: 0 success (or: root exists / verification passed),
2 negative verdict (no root exists / verification failed), 1 error.
"""

import argparse
import json
import sys

import numpy as np

from . import canonical as canon
from . import construction as cons
from . import descriptor as dsc
from . import existence as exi
from . import verify as ver

SCHEMA = "1"


class InputError(ValueError):
    pass


def _load_json(path):
    try:
        with open(path, "r") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read input: %s" % exc)
    except json.JSONDecodeError as exc:
        raise InputError("input is not valid JSON: %s" % exc)


def _parse_input(data, want_triple=False):
    """Classify the input JSON: descriptor, raw pair, or verify triple."""
    if not isinstance(data, dict):
        raise InputError("top-level JSON value must be an object")
    if want_triple:
        missing = [k for k in ("A", "B", "H") if k not in data]
        if missing:
            raise InputError("verify input needs keys A, B, H (missing %s)"
                             % ", ".join(missing))
        A = dsc.matrix_from_lists(data["A"])
        B = dsc.matrix_from_lists(data["B"])
        H = dsc.matrix_from_lists(data["H"])
        return ("triple", (A, B, H))
    if "blocks" in data:
        d = dsc.descriptor_from_dict(data)
        bad = dsc.validate(d)
        if bad:
            raise InputError("invalid descriptor: " + "; ".join(bad))
        return ("descriptor", d)
    if "B" in data and "H" in data:
        B = dsc.matrix_from_lists(data["B"])
        H = dsc.matrix_from_lists(data["H"])
        bad = dsc.pair_violations(B, H)
        if bad:
            raise InputError("invalid pair: " + "; ".join(bad))
        return ("raw", dsc.MatrixPair(B, H))
    raise InputError("input must have 'blocks', or 'B' and 'H'"
                     + (", or 'A','B','H'" if want_triple else ""))


def _cert_dict(cert):
    if cert is None:
        return None
    return {
        "grouping": [list(t) for t in cert.zero_grouping],
        "etas": [int(e) for e in cert.etas],
        "root_sizes_at_zero": [int(t) for t in cert.zero_root_sizes],
        "negative_pairing": [[int(i), int(j)] for i, j in cert.negative_pairing],
        "root_eigenvalues": [
            {"block": int(i), "mu": [complex(mu).real, complex(mu).imag]}
            for i, mu in cert.root_eigenvalues
        ],
    }


def _refusal_dict(ref):
    if ref is None:
        return None
    return {"property": ref.property_id, "witness": ref.witness}


def _emit(report, fmt, text_lines):
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _descriptor_text(d):
    out = []
    for b in d.blocks:
        if isinstance(b, dsc.RealBlock):
            out.append("  real    lambda=%- .12g size=%d sign=%+d"
                       % (b.eigenvalue, b.size, b.sign))
        else:
            lam = complex(b.eigenvalue)
            out.append("  pair    lambda=%- .12g%+.12gi size=%d (x2)"
                       % (lam.real, lam.imag, b.size))
    return out


def _run_decide(kind, payload, args):
    canon_part = {}
    text = []
    if kind == "raw":
        res = canon.canonicalize(payload, args.tol_canon)
        d = res.descriptor
        canon_part = {"descriptor": dsc.descriptor_to_dict(d),
                      "canonicalization_residuals": {"similarity": res.r_J,
                                                     "congruence": res.r_H}}
        text.append("canonicalized input pair (residuals %.2e / %.2e):"
                    % (res.r_J, res.r_H))
        text.extend(_descriptor_text(d))
    else:
        d = payload
    rep = exi.decide(d, args.m)
    report = {"schema": SCHEMA, "command": "decide", "m": args.m,
              "exists": rep.exists,
              "certificate": _cert_dict(rep.certificate),
              "refusal": _refusal_dict(rep.refusal)}
    report.update(canon_part)
    if rep.exists:
        text.append("root exists for m=%d" % args.m)
        if rep.certificate and rep.certificate.zero_grouping:
            text.append("  grouping at 0: %s  etas: %s"
                        % (list(map(list, rep.certificate.zero_grouping)),
                           list(rep.certificate.etas)))
        if rep.certificate and rep.certificate.negative_pairing:
            text.append("  negative pairing: %s"
                        % [list(p) for p in rep.certificate.negative_pairing])
    else:
        text.append("no root exists for m=%d" % args.m)
        text.append("  refused by %s: %s"
                    % (rep.refusal.property_id, rep.refusal.witness))
    _emit(report, args.format, text)
    return 0 if rep.exists else 2


def _run_construct(kind, payload, args):
    text = []
    raw = None
    canon_res = None
    if kind == "raw":
        raw = payload
        canon_res = canon.canonicalize(payload, args.tol_canon)
        d = canon_res.descriptor
    else:
        d = payload
    rep = exi.decide(d, args.m)
    if not rep.exists:
        report = {"schema": SCHEMA, "command": "construct", "m": args.m,
                  "exists": False, "refusal": _refusal_dict(rep.refusal)}
        text.append("no root exists for m=%d" % args.m)
        text.append("  refused by %s: %s"
                    % (rep.refusal.property_id, rep.refusal.witness))
        _emit(report, args.format, text)
        return 2
    root = cons.assemble_root(d, args.m, rep)
    report = {"schema": SCHEMA, "command": "construct", "m": args.m,
              "exists": True,
              "certificate": _cert_dict(rep.certificate)}
    if raw is not None:
        root = cons.transport(raw, canon_res, root, args.m)
        report["S"] = dsc.matrix_to_lists(canon_res.S)
        report["descriptor"] = dsc.descriptor_to_dict(d)
    report["A"] = dsc.matrix_to_lists(root.A)
    report["P"] = dsc.matrix_to_lists(root.P)
    report["residuals"] = {"power": root.r_pow, "selfadjoint": root.r_sa}
    text.append("constructed root of order m=%d for the order-%d pair"
                % (args.m, d.order))
    text.append("  residuals: power %.3e, selfadjointness %.3e"
                % (root.r_pow, root.r_sa))
    _emit(report, args.format, text)
    return 0


def _run_verify(payload, args):
    A, B, H = payload
    rep, ok = ver.verify_root(A, B, H, args.m, args.tol)
    report = {"schema": SCHEMA, "command": "verify", "m": args.m,
              "tol": args.tol, "pass": ok,
              "residuals": {"power": rep.r_pow, "selfadjoint": rep.r_sa}}
    text = ["verification %s at tol %.3e" % ("PASSED" if ok else "FAILED",
                                             args.tol),
            "  residuals: power %.3e, selfadjointness %.3e"
            % (rep.r_pow, rep.r_sa)]
    _emit(report, args.format, text)
    return 0 if ok else 2


def _run_canonicalize(kind, payload, args):
    if kind != "raw":
        raise InputError("canonicalize needs a raw pair with keys B and H")
    res = canon.canonicalize(payload, args.tol_canon)
    report = {"schema": SCHEMA, "command": "canonicalize",
              "descriptor": dsc.descriptor_to_dict(res.descriptor),
              "S": dsc.matrix_to_lists(res.S),
              "residuals": {"similarity": res.r_J, "congruence": res.r_H}}
    text = ["canonical form (residuals %.2e / %.2e):" % (res.r_J, res.r_H)]
    text.extend(_descriptor_text(res.descriptor))
    _emit(report, args.format, text)
    return 0


def _run_oracle(kind, payload, args):
    if kind == "raw":
        d = canon.canonicalize(payload, args.tol_canon).descriptor
    else:
        d = payload
    zero_sizes, zero_pos, negative = [], {}, []
    for b in d.blocks:
        if isinstance(b, dsc.PairBlock):
            continue
        c = dsc.classify(b.eigenvalue)
        if c == "zero":
            zero_sizes.append(b.size)
            if b.sign == +1:
                zero_pos[b.size] = zero_pos.get(b.size, 0) + 1
        elif c == "negative":
            negative.append((b.eigenvalue, b.size, b.sign))
    zero_ok = None
    if zero_sizes:
        zero_ok = ver.oracle_decide_nilpotent(zero_sizes, zero_pos, args.m)
    neg_ok = None
    if negative and args.m % 2 == 0:
        neg_ok = ver.oracle_negative_even(negative, args.m)
    exists = (zero_ok is not False) and (neg_ok is not False)
    report = {"schema": SCHEMA, "command": "oracle", "m": args.m,
              "seed": args.seed, "zero_part": zero_ok,
              "negative_part": neg_ok, "exists": exists}
    text = ["oracle verdict for m=%d: %s" % (args.m, "exists" if exists
                                             else "does not exist"),
            "  zero part: %s, negative part: %s" % (zero_ok, neg_ok)]
    _emit(report, args.format, text)
    return 0 if exists else 2


def build_parser():
    p = argparse.ArgumentParser(
        prog="hsroots",
        description="Decide, construct and verify H-selfadjoint m-th roots "
                    "of H-selfadjoint matrix pairs.")
    p.add_argument("command",
                   choices=["decide", "construct", "verify", "canonicalize",
                            "oracle"])
    p.add_argument("input", help="path to the JSON input file")
    p.add_argument("--m", type=int, default=2, help="root order (default 2)")
    p.add_argument("--tol", type=float, default=1e-8,
                   help="residual tolerance for verify (default 1e-8)")
    p.add_argument("--tol-canon", dest="tol_canon", type=float,
                   default=dsc.DEFAULT_TOL,
                   help="canonicalization tolerance (default %g)" % dsc.DEFAULT_TOL)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--seed", type=int, default=0,
                   help="seed recorded with oracle sweeps (reports are "
                        "deterministic; kept for pipeline reproducibility)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.m < 1:
        sys.stderr.write("error: --m must be >= 1\n")
        return 1
    try:
        data = _load_json(args.input)
        if args.command == "verify":
            _, payload = _parse_input(data, want_triple=True)
            return _run_verify(payload, args)
        kind, payload = _parse_input(data)
        if args.command == "decide":
            return _run_decide(kind, payload, args)
        if args.command == "construct":
            return _run_construct(kind, payload, args)
        if args.command == "canonicalize":
            return _run_canonicalize(kind, payload, args)
        return _run_oracle(kind, payload, args)
    except (InputError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except canon.IllConditionedError as exc:
        sys.stderr.write("error: canonicalization failed: %s\n" % exc)
        return 1
    except np.linalg.LinAlgError as exc:
        sys.stderr.write("error: linear algebra failure: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
