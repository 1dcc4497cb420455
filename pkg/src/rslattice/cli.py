"""Command line front end: ``rslattice <group> <command> [options]``.

Exit status 0 on success, 1 when a checked mathematical property fails,
2 on usage errors, malformed input or exceeded work limits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import decoding, derand_lab, local_density, reduction, rs_lattice
from .errors import DEFAULT_WORK_LIMIT, VerificationFailed, WorkLimitExceeded
from .field_core import FieldPoly

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class RunConfig:
    seed: int = DEFAULT_SEED
    work_limit: int = DEFAULT_WORK_LIMIT
    fmt: str = "json"
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.work_limit <= 0:
            raise ValueError("work limit must be positive")


class PropertyFailure(Exception):
    """Raised with the payload when a computed result violates a checked property."""

    def __init__(self, payload):
        super().__init__("property check failed")
        self.payload = payload


# -- (de)serialization helpers ----------------------------------------------

def parse_rational(s) -> Fraction:
    if isinstance(s, (list, tuple)):
        if len(s) != 2:
            raise ValueError(f"rational must be [num, den], got {s!r}")
        return Fraction(int(s[0]), int(s[1]))
    return Fraction(str(s))


def rat(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def int_list(s: str) -> list[int]:
    return [int(v) for v in s.split(",") if v.strip() != ""]


def real_list(s: str) -> list[Fraction]:
    """Either a JSON array (of ints or [num, den] pairs) or comma-separated rationals."""
    s = s.strip()
    if s.startswith("["):
        return [parse_rational(v) for v in json.loads(s)]
    return [Fraction(v) for v in s.split(",")]


def fl(x: float) -> float:
    return float(f"{x:.12g}")


def load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


# -- command implementations --------------------------------------------------

def _H(args):
    S = int_list(args.S) if getattr(args, "S", None) else None
    return rs_lattice.build_parity_check(args.q, args.k, S)


def cmd_lattice_build(args, cfg):
    H = _H(args)
    return {"q": H.q, "k": H.k, "S": list(H.points), "H": H.rows}


def cmd_lattice_basis(args, cfg):
    H = _H(args)
    B = rs_lattice.lattice_basis(H)
    det = B.determinant()
    out = {"q": H.q, "k": H.k, "S": list(H.points), "basis": [list(c) for c in B.columns],
           "det": det, "rows_dependent": B.rows_dependent}
    ok = all(rs_lattice.in_lattice(H, c) for c in B.columns) and (B.rows_dependent or det == H.q**H.k)
    if not ok:
        raise PropertyFailure(out)
    return out


def cmd_lattice_min_dist(args, cfg):
    H = _H(args)
    res = rs_lattice.min_dist_exact(H, args.p, parse_rational(args.budget), cfg.work_limit)
    out = {"p": args.p, "budget": rat(res.radius_bound), "lambda1_pow_p": res.value,
           "witness": list(res.witness) if res.witness else None, "exceeds_bound": res.exceeds_bound}
    if res.value is not None and 2 * H.k <= H.n and res.value < 2 * H.k:
        raise PropertyFailure(out)
    return out


def cmd_coset_count(args, cfg):
    H = _H(args)
    cc = local_density.count_binary_coset_vectors(H, int_list(args.u), args.h, cfg.work_limit)
    bound, floor_ = local_density.pigeonhole_bound(H.q, H.k, args.h, H.n)
    return {"u": list(cc.u.values), "h": cc.h, "count": cc.count, "pigeonhole": rat(bound), "pigeonhole_floor": floor_}


def cmd_coset_sample(args, cfg):
    H = _H(args)
    x = local_density.sample_dense_shift(H, args.h, cfg.seed)
    u = rs_lattice.syndrome(H, x)
    cc = local_density.count_binary_coset_vectors(H, u, args.h, cfg.work_limit)
    return {"x": x, "u": list(u.values), "count": cc.count}


def cmd_gadget_generate(args, cfg):
    alpha = parse_rational(args.alpha)
    if args.mode == "asymptotic-report":
        rep = local_density.asymptotic_parameters(args.p, alpha, args.r, parse_rational(args.delta), find_q=not args.no_prime)
        return {"p": rep.p, "alpha": rat(rep.alpha), "r": rep.r, "delta": rat(rep.delta), "epsilon": rat(rep.epsilon),
                "k": rep.k, "q_lower": rep.q_lower, "q": rep.q, "h": rep.h, "ell": rep.ell,
                "log_lhs": fl(rep.log_lhs), "log_rhs": fl(rep.log_rhs), "inequality_holds": rep.inequality_holds}
    if args.q is None or args.k is None:
        raise ValueError("desk mode needs --q and --k")
    g = local_density.generate_gadget(args.p, alpha, args.r, args.q, args.k, cfg.seed, args.retries, cfg.work_limit)
    return g.to_json()


def cmd_gadget_verify(args, cfg):
    g = local_density.LocallyDenseGadget.from_json(load_json(args.input))
    cover = local_density.verify_gadget(g, cfg.work_limit)
    out = {"ok": cover is not None}
    if cover is None:
        raise PropertyFailure(out)
    out["cover"] = {"".join(map(str, c)): list(v) for c, v in cover.items()}
    return out


def cmd_reduce_build(args, cfg):
    cvp = reduction.GapCVPPrimeInstance.from_json(load_json(args.cvp))
    g = local_density.LocallyDenseGadget.from_json(load_json(args.gadget))
    cover = local_density.verify_gadget(g, cfg.work_limit)
    if cover is None:
        raise PropertyFailure({"error": "gadget failed verification"})
    g.cover = cover
    beta = parse_rational(args.beta) if args.beta else None
    svp = reduction.build_svp_instance(cvp, g, parse_rational(args.gamma_prime), beta)
    out = svp.to_json()
    if svp.beta is not None:
        out["beta"] = rat(svp.beta)
        out["scale"] = svp.scale
    return out


def _verdict_json(v: reduction.PromiseVerdict):
    cert = {k: (rat(val) if isinstance(val, Fraction) else val) for k, val in v.certificate.items()}
    return {"verdict": v.verdict, "witness": list(v.witness) if v.witness is not None else None, "certificate": cert}


def cmd_reduce_verify_cvp(args, cfg):
    cvp = reduction.GapCVPPrimeInstance.from_json(load_json(args.input))
    return _verdict_json(reduction.verify_cvp_instance(cvp, cfg.work_limit))


def cmd_reduce_verify_svp(args, cfg):
    svp = reduction.GapSVPInstance.from_json(load_json(args.input))
    return _verdict_json(reduction.verify_svp_instance(svp, cfg.work_limit))


def _decode_json(dl: decoding.DecodeList, key: str):
    return {"radius_sq": rat(dl.radius_sq),
            "items": [{key: list(v), "dist_sq": rat(d)} for v, d in dl.items],
            "certificate": dl.certificate}


def cmd_decode_rs(args, cfg):
    code = decoding.RSCode.full(args.q, args.dim)
    y = real_list(args.y)
    if args.unique:
        c = decoding.rs_unique_decode(code, [int(v) for v in y])
        return {"codeword": list(c) if c is not None else None}
    dl = decoding.rs_list_decode_l2(code, parse_rational(args.eps), y, work_limit=cfg.work_limit)
    return _decode_json(dl, "codeword")


def cmd_decode_lattice(args, cfg):
    y = real_list(args.y)
    dl = decoding.lattice_decode_minkowski(args.q, args.k, parse_rational(args.eps), y, work_limit=cfg.work_limit)
    return _decode_json(dl, "vector")


def cmd_decode_minkowski(args, cfg):
    rep = decoding.minkowski_report(args.q)
    out = {"q": rep.q, "k": rep.k, "lower": fl(rep.lower), "sqrt_2k": fl(rep.sqrt_2k),
           "minkowski": fl(rep.minkowski), "cap": fl(rep.cap), "chain_holds": rep.chain_holds}
    if not rep.chain_holds:
        raise PropertyFailure(out)
    return out


def cmd_derand_received_word(args, cfg):
    S = int_list(args.S) if args.S else None
    r = derand_lab.received_word_from_syndrome(args.q, args.k, S, args.h, int_list(args.u))
    return {"r": r}


def cmd_derand_charsum(args, cfg):
    poly = FieldPoly(args.q, int_list(args.coeffs))
    res = derand_lab.character_sum(args.q, poly, args.k)
    out = {"value": [fl(res.value.real), fl(res.value.imag)], "magnitude": fl(res.magnitude),
           "weil_bound": fl(res.weil_bound), "weil_applies": res.weil_applies, "within_weil": res.within_weil}
    if not res.within_weil:
        raise PropertyFailure(out)
    return out


def cmd_derand_convcount(args, cfg):
    return {"count": derand_lab.exact_sequence_count(args.q, args.k, args.h, int_list(args.s), cfg.work_limit)}


def cmd_derand_fourier(args, cfg):
    d = derand_lab.fourier_count_identity(args.q, args.k, args.h, int_list(args.s), cfg.work_limit)
    out = {"main_term": rat(d.main_term), "correction": [fl(d.correction.real), fl(d.correction.imag)],
           "exact_count": d.exact_count, "uncorrected_main_term": d.uncorrected_main_term,
           "reconciliation_error": fl(d.reconciliation_error)}
    if d.reconciliation_error > 1e-6 * max(1, d.exact_count):
        raise PropertyFailure(out)
    return out


def _coset(args):
    if args.coset == "line":
        return derand_lab.LineCoset(parse_rational(args.c), parse_rational(args.x), args.dim)
    H = rs_lattice.build_parity_check(args.q, args.k)
    return derand_lab.ParityCoset(H, tuple(int_list(args.u)))


def cmd_derand_theta(args, cfg):
    prof = derand_lab.theta(args.p, args.tau, _coset(args), tolerance=cfg.tolerance, work_limit=cfg.work_limit)
    return {"p": prof.p, "tau": fl(prof.tau), "theta": fl(prof.theta), "mu": fl(prof.mu),
            "variance": fl(prof.variance), "truncation": prof.truncation, "tail_bound": float(f"{prof.tail_bound:.3e}")}


def cmd_derand_np_bounds(args, cfg):
    rep = derand_lab.np_bounds(args.p, parse_rational(args.r_pow_p), _coset(args), args.tau, args.delta)
    out = {"count": rep.count, "upper_bound": fl(rep.upper_bound), "upper_ok": rep.upper_ok,
           "mu": fl(rep.lower_radius_pow_p), "count_at_mu": rep.lower_count, "h_p": fl(rep.h_p),
           "lower_bound": fl(rep.lower_bound), "lower_ok": rep.lower_ok}
    if not (rep.upper_ok and rep.lower_ok):
        raise PropertyFailure(out)
    return out


# -- parser -------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)


def _qk(p, k_required=True):
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=k_required)
    p.add_argument("--S", default=None, help="comma-separated evaluation points (default: all of F_q)")


def _coset_args(p):
    p.add_argument("--coset", choices=("line", "parity"), default="line")
    p.add_argument("--c", default="1")
    p.add_argument("--x", default="0")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--u", default="0")


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(prog="rslattice", description=__doc__.splitlines()[0])
    groups = root.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, setup):
        p = group.add_parser(name)
        setup(p)
        _common(p)
        p.set_defaults(fn=fn)
        return p

    g = groups.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    sub(g, "build", cmd_lattice_build, _qk)
    sub(g, "basis", cmd_lattice_basis, _qk)

    def md(p):
        _qk(p)
        p.add_argument("--p", type=int, default=1)
        p.add_argument("--budget", required=True)
    sub(g, "min-dist", cmd_lattice_min_dist, md)

    g = groups.add_parser("coset").add_subparsers(dest="cmd", required=True)

    def cc(p):
        _qk(p)
        p.add_argument("--h", type=int, required=True)
        p.add_argument("--u", required=True)
    sub(g, "count", cmd_coset_count, cc)

    def cs(p):
        _qk(p)
        p.add_argument("--h", type=int, required=True)
    sub(g, "sample", cmd_coset_sample, cs)

    g = groups.add_parser("gadget").add_subparsers(dest="cmd", required=True)

    def gg(p):
        p.add_argument("--p", type=int, default=1)
        p.add_argument("--alpha", required=True)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--mode", choices=("desk", "asymptotic-report"), default="desk")
        p.add_argument("--q", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--retries", type=int, default=local_density.DEFAULT_RETRIES)
        p.add_argument("--delta", default="1/4")
        p.add_argument("--no-prime", action="store_true", help="report the prime lower bound without searching")
    sub(g, "generate", cmd_gadget_generate, gg)
    sub(g, "verify", cmd_gadget_verify, lambda p: p.add_argument("--in", dest="input", required=True))

    g = groups.add_parser("reduce").add_subparsers(dest="cmd", required=True)

    def rb(p):
        p.add_argument("--cvp", required=True)
        p.add_argument("--gadget", required=True)
        p.add_argument("--gamma-prime", default="1")
        p.add_argument("--beta", default=None)
    sub(g, "build", cmd_reduce_build, rb)
    sub(g, "verify-cvp", cmd_reduce_verify_cvp, lambda p: p.add_argument("--in", dest="input", required=True))
    sub(g, "verify-svp", cmd_reduce_verify_svp, lambda p: p.add_argument("--in", dest="input", required=True))

    g = groups.add_parser("decode").add_subparsers(dest="cmd", required=True)

    def dr(p):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--dim", type=int, required=True)
        p.add_argument("--eps", default="1/10")
        p.add_argument("--y", required=True)
        p.add_argument("--unique", action="store_true")
    sub(g, "rs", cmd_decode_rs, dr)

    def dl(p):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--eps", default="1/10")
        p.add_argument("--y", required=True)
    sub(g, "lattice", cmd_decode_lattice, dl)
    sub(g, "minkowski-report", cmd_decode_minkowski, lambda p: p.add_argument("--q", type=int, required=True))

    g = groups.add_parser("derand").add_subparsers(dest="cmd", required=True)

    def rw(p):
        _qk(p)
        p.add_argument("--h", type=int, required=True)
        p.add_argument("--u", required=True)
    sub(g, "received-word", cmd_derand_received_word, rw)

    def ch(p):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--coeffs", required=True, help="comma-separated, lowest degree first")
        p.add_argument("--k", type=int, default=None)
    sub(g, "charsum", cmd_derand_charsum, ch)

    def cv(p):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--h", type=int, required=True)
        p.add_argument("--s", required=True)
    sub(g, "convcount", cmd_derand_convcount, cv)
    sub(g, "fourier-id", cmd_derand_fourier, cv)

    def th(p):
        _coset_args(p)
        p.add_argument("--p", type=int, default=1)
        p.add_argument("--tau", type=float, required=True)
    sub(g, "theta", cmd_derand_theta, th)

    def nb(p):
        th(p)
        p.add_argument("--r-pow-p", required=True)
        p.add_argument("--delta", type=float, required=True)
    sub(g, "np-bounds", cmd_derand_np_bounds, nb)
    return root


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True) + "\n"
    rows = payload if isinstance(payload, list) else [payload]
    flat = [{k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()} for r in rows]
    buf = io.StringIO()
    fields = sorted({k for r in flat for k in r})
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    status = 0
    try:
        cfg = RunConfig(args.seed, args.work_limit, args.format, args.tolerance)
        payload = args.fn(args, cfg)
    except PropertyFailure as e:
        payload, status = e.payload, 1
    except VerificationFailed as e:
        payload, status = {"error": str(e)}, 1
    except (WorkLimitExceeded, ValueError, KeyError, TypeError, json.JSONDecodeError, OSError) as e:
        print(f"rslattice: error: {e}", file=sys.stderr)
        return 2
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
