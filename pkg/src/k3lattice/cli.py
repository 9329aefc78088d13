"""Command line front end.

Exit codes: 0 success, 2 validation error, 3 mathematical hypothesis
violated, 64 unknown subcommand, 65 malformed JSON.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import construct, isometry, lattice, mukai, partners, selftest, stability
from .exceptions import HypothesisViolation, ValidationError
from .lattice import Lattice, as_rational_class
from .mukai import MukaiVector
from .serialize import as_table, dumps

EXIT_VALIDATION = 2
EXIT_HYPOTHESIS = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65


class MalformedJSON(Exception):
    pass


@dataclass(frozen=True)
class SessionConfig:
    lattice_path: str | None
    B: tuple | None
    omega: tuple | None
    output: str = "json"
    scan_bound: int = 10
    approx: bool = False

    def load_lattice(self) -> Lattice:
        if not self.lattice_path:
            raise ValidationError("no lattice given: pass --lattice or set MUKAI_LATTICE")
        try:
            return Lattice.load(self.lattice_path)
        except OSError as exc:
            raise ValidationError(f"cannot read lattice file: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise MalformedJSON(f"lattice file: {exc}") from None


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJSON(f"{what}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse rational {text!r}") from None


def _vector(lat, text, what="--v") -> MukaiVector:
    return MukaiVector.from_json(lat, _json_arg(text, what))


def _class(lat, text, what):
    data = _json_arg(text, what)
    if not isinstance(data, list):
        raise ValidationError(f"{what} must be a JSON list")
    return lat.check(as_rational_class(data))


def _int_class(lat, text, what):
    c = _class(lat, text, what)
    if any(not isinstance(x, int) for x in c):
        raise ValidationError(f"{what} must be integral")
    return c


def _complexified(cfg: SessionConfig, lat) -> stability.ComplexifiedClass:
    B = cfg.B if cfg.B is not None else lat.zero()
    omega = cfg.omega if cfg.omega is not None else lat.ample
    return stability.ComplexifiedClass(lat, lat.check(B), lat.check(omega))


def _beta(args, K):
    if getattr(args, "beta_bracket", None):
        lo, _, hi = args.beta_bracket.partition(",")
        return stability.IrrationalBeta(_rational(lo), _rational(hi))
    if getattr(args, "beta", None) is not None:
        return _rational(args.beta)
    return K.beta


def _beta_json(beta):
    if isinstance(beta, stability.IrrationalBeta):
        return {"irrational_between": [beta.lo, beta.hi]}
    return beta


def _complex_class(lat, data, what):
    if not isinstance(data, dict) or "re" not in data or "im" not in data:
        raise ValidationError(f'{what} must look like {{"re": {{"r","l","s"}}, "im": {{...}}}}')

    def triple(d):
        if not isinstance(d, dict) or not {"r", "l", "s"} <= d.keys():
            raise ValidationError(f"{what}: each part needs r, l, s")
        r, s = as_rational_class([d["r"], d["s"]])
        return (Fraction(r), lat.check(as_rational_class(d["l"])), Fraction(s))

    return triple(data["re"]), triple(data["im"])


# -- subcommands ----------------------------------------------------------------

def cmd_pair(args, cfg):
    lat = cfg.load_lattice()
    return {"value": mukai.mukai_pair(_vector(lat, args.v), _vector(lat, args.w, "--w"))}


def cmd_euler(args, cfg):
    lat = cfg.load_lattice()
    return {"value": mukai.euler_chi(_vector(lat, args.v), _vector(lat, args.w, "--w"))}


def cmd_crucform(args, cfg):
    lat = cfg.load_lattice()
    v = _vector(lat, args.v)
    H = _int_class(lat, args.H, "--H") if args.H else None
    out = mukai.fine_moduli_check(v, H).to_json()
    out.update(square=v.square(), spherical=mukai.is_spherical(v), isotropic=mukai.is_isotropic(v))
    return out


def _isometry_out(M, lat, args):
    out = {"matrix": M.to_json()["matrix"], "isometry": True,
           "determinant": isometry.determinant(M),
           "fixes_point_class": isometry.fixes_point_class(M)}
    if args.v:
        out["image"] = isometry.apply(M, _vector(lat, args.v)).to_json()
    return out


def cmd_twist_spherical(args, cfg):
    lat = cfg.load_lattice()
    return _isometry_out(isometry.spherical_twist_O(lat), lat, args)


def cmd_twist_line(args, cfg):
    lat = cfg.load_lattice()
    return _isometry_out(isometry.line_twist(lat, _int_class(lat, args.c, "--c")), lat, args)


def cmd_reduce(args, cfg):
    lat = cfg.load_lattice()
    v = _vector(lat, args.v)
    H = _int_class(lat, args.H, "--H") if args.H else None
    red = isometry.reduce_to_coprime(v, H, max_norm=args.max_norm)
    w = red.vector
    report = mukai.fine_moduli_check(w, H)
    return {
        "input": v.to_json(),
        "output": w.to_json(),
        "ell_tilde": list(red.ell_tilde) if red.ell_tilde is not None else None,
        "trace": [{"step": name, "matrix": M.to_json()["matrix"]} for name, M in red.trace],
        "note": red.note,
        "checks": {
            "rank_coprime_to_c1_content": math.gcd(w.r, lattice.content(w.l)) == 1,
            "isotropic": mukai.is_isotropic(w),
            "crucform": report.ok,
        },
        "crucform": report.to_json(),
    }


def cmd_normalize_exp(args, cfg):
    lat = cfg.load_lattice()
    w = _complex_class(lat, _json_arg(args.w, "--w"), "--w")
    form = isometry.normalize_exponential(lat, w)
    return {"lambda": form.lam, "B": [Fraction(x) for x in form.B], "omega": [Fraction(x) for x in form.omega]}


def cmd_charge(args, cfg):
    lat = cfg.load_lattice()
    K = _complexified(cfg, lat)
    v = _vector(lat, args.v)
    z = stability.central_charge(K, v)
    return {"re": z.re, "im": z.im, "im_formula": stability.im_Z_formula(K, v),
            "beta": K.beta, "stability_valid": K.stability_valid,
            "omega_in_positive_cone": lattice.positive_cone_check(lat, K.omega)}


def cmd_phase(args, cfg):
    lat = cfg.load_lattice()
    K = _complexified(cfg, lat)
    v = _vector(lat, args.v)
    ph = stability.phase(K, v)
    out = {"kind": ph.kind, "re": ph.z.re, "im": ph.z.im,
           "minimal_shape": stability.minimal_candidate_vector(K, v)}
    if ph.kind is stability.PhaseKind.BOUNDARY:
        out["phase"] = 1
    if cfg.approx and ph.approx is not None:
        out["phase_approx"] = ph.approx
    return out


def _sheaf(lat, K, data):
    return stability.FormalSheaf.from_json(lat, K.omega, data)


def _sheaf_summary(F, beta):
    out = {"sheaf": F.to_json(), "rank": F.rank, "c1": list(F.c1)}
    if F.factors:
        out["mu_max"] = stability.hn_mu_max(F)
        out["mu_min"] = stability.hn_mu_min(F)
    out["membership"] = stability.torsion_pair_membership(F, beta)
    return out


def cmd_heart(args, cfg):
    lat = cfg.load_lattice()
    K = _complexified(cfg, lat)
    beta = _beta(args, K)
    data = _json_arg(args.complex, "--complex")
    if not isinstance(data, dict):
        raise ValidationError('--complex must look like {"h_minus1": sheaf, "h0": sheaf}')
    empty = {"torsion": None, "factors": []}
    X = stability.NumericalComplex(_sheaf(lat, K, data.get("h_minus1", empty)),
                                   _sheaf(lat, K, data.get("h0", empty)))
    rep = stability.heart_membership(X, beta)
    return {"member": rep.member, "diagnostics": rep.diagnostics, "beta": _beta_json(beta),
            "h_minus1_in_F": rep.h_minus1_in_F, "h0_in_T": rep.h0_in_T,
            "minimal_shape": stability.minimal_candidate(X, beta)}


def cmd_decompose(args, cfg):
    lat = cfg.load_lattice()
    K = _complexified(cfg, lat)
    beta = _beta(args, K)
    F = _sheaf(lat, K, _json_arg(args.sheaf, "--sheaf"))
    T, Fp = stability.decompose(F, beta)
    return {"beta": _beta_json(beta), "input": _sheaf_summary(F, beta),
            "T": _sheaf_summary(T, beta), "F": _sheaf_summary(Fp, beta)}


def cmd_scan_spherical(args, cfg):
    lat = cfg.load_lattice()
    K = _complexified(cfg, lat)
    bound = args.bound if args.bound is not None else cfg.scan_bound
    hits = stability.spherical_scan(K, bound, threads=args.threads)
    return {"bound": bound, "omega_squared": lat.square(K.omega), "stability_valid": K.stability_valid,
            "count": len(hits),
            "violations": [{"r": h.r, "l": list(h.l), "s": h.s, "re": h.z.re, "im": h.z.im} for h in hits]}


def cmd_extension_lemma(args, cfg):
    p = construct.ExtensionProblem(_rational(args.l), args.r, _rational(args.beta))
    twist = _rational(args.twist_degree) if args.twist_degree else None
    sol = construct.solve_extension_lemma(p, min_rank=args.min_rank, twist_degree=twist)
    e_min = sol.e_min
    if args.mu0 is not None and sol.r_prime >= p.r:
        e_min = construct.e_threshold(p.l, p.r, sol.l_prime, sol.r_prime, _rational(args.mu0))
    return {"l'": sol.l_prime, "r'": sol.r_prime, "e_min": e_min,
            "linearly_dependent": sol.linearly_dependent,
            "checks": {"ineq3": sol.check(p)}}


def cmd_partners(args, cfg):
    X = partners.Rank1Surface(args.n)
    classes = partners.enumerate_candidates(X)
    return {"n": args.n, "class_count": partners.partner_class_count(args.n),
            "classes": [[c.v.to_json() for c in cls] for cls in classes],
            "note": "candidate classes of moduli spaces M(r, l, s), rs = n, gcd(r, s) = 1"}


def cmd_lattice(args, cfg):
    lat = cfg.load_lattice()
    out = {"rank": lat.rank, "determinant": lat.determinant, "ample_square": lat.square(lat.ample)}
    if args.x:
        x = _class(lat, args.x, "--x")
        y = _class(lat, args.y, "--y") if args.y else x
        out["intersection"] = lattice.intersect(lat, x, y)
        out["positive_cone"] = lattice.positive_cone_check(lat, x)
        if all(isinstance(c, int) for c in x) and any(x):
            alpha, x0 = lattice.content_split(x)
            out.update(primitive=lattice.is_primitive(x), content=alpha, primitive_part=list(x0))
    return out


def cmd_chern(args, cfg):
    lat = cfg.load_lattice()
    v = mukai.from_chern(lat, mukai.ChernData(args.rank, _int_class(lat, args.c1, "--c1"), args.c2))
    return {"v": v.to_json(), "square": v.square(),
            "spherical": mukai.is_spherical(v), "isotropic": mukai.is_isotropic(v)}


def cmd_sprime(args, cfg):
    lat = cfg.load_lattice()
    vF = _vector(lat, args.v)
    lp = _int_class(lat, args.l_prime, "--l-prime")
    s = construct.least_positive_chi_sprime(vF, lp, args.r_prime)
    E = MukaiVector(vF.r + args.r_prime, tuple(a + b for a, b in zip(vF.l, lp)), s, lat)
    return {"s'": s, "v(E)": E.to_json(), "chi": mukai.euler_chi(vF, E)}


def cmd_quadric(args, cfg):
    lat = cfg.load_lattice()
    out = {}
    if args.x:
        x = _complex_class(lat, _json_arg(args.x, "--x"), "--x")
        out["membership"] = stability.quadric_membership(lat, x)
    else:
        K = _complexified(cfg, lat)
        pp, pbar = stability.exp_isotropy_identities(K)
        out.update(phi_phi={"re": pp[0], "im": pp[1]}, phi_phibar={"re": pbar[0], "im": pbar[1]},
                   membership=stability.quadric_membership(lat, K.exp()))
    return out


def cmd_selftest(args, cfg):
    results = selftest.run(seed=args.seed, n=args.n)
    return {"ok": all(ok for _, ok in results), "checks": {name: ok for name, ok in results}}


COMMANDS = {
    "pair": cmd_pair,
    "euler": cmd_euler,
    "crucform": cmd_crucform,
    "twist-spherical": cmd_twist_spherical,
    "twist-line": cmd_twist_line,
    "reduce": cmd_reduce,
    "normalize-exp": cmd_normalize_exp,
    "charge": cmd_charge,
    "phase": cmd_phase,
    "heart": cmd_heart,
    "decompose": cmd_decompose,
    "scan-spherical": cmd_scan_spherical,
    "extension-lemma": cmd_extension_lemma,
    "partners": cmd_partners,
    "lattice": cmd_lattice,
    "chern": cmd_chern,
    "sprime": cmd_sprime,
    "quadric": cmd_quadric,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", help="lattice JSON file (default: $MUKAI_LATTICE)")
    common.add_argument("--B", help="B-field as a JSON list of rationals")
    common.add_argument("--omega", help="Kähler class as a JSON list of rationals")
    common.add_argument("--output", choices=["json", "table"], default="json")
    common.add_argument("--approx", action="store_true", help="add display-only float fields")

    parser = argparse.ArgumentParser(prog="k3lattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    for name in ("pair", "euler"):
        p = add(name, "Mukai pairing" if name == "pair" else "Euler characteristic -<v, w>")
        p.add_argument("--v", required=True)
        p.add_argument("--w", required=True)
    p = add("crucform", "fine-moduli conditions for v = (r, a l, s)")
    p.add_argument("--v", required=True)
    p.add_argument("--H")
    p = add("twist-spherical", "spherical twist by O on cohomology")
    p.add_argument("--v")
    p = add("twist-line", "tensor with a line bundle of class c")
    p.add_argument("--c", required=True)
    p.add_argument("--v")
    p = add("reduce", "twist v until rank and c1 divisibility are coprime")
    p.add_argument("--v", required=True)
    p.add_argument("--H")
    p.add_argument("--max-norm", type=int, default=25)
    p = add("normalize-exp", "write w as lambda exp(B + i omega)")
    p.add_argument("--w", required=True)
    for name in ("charge", "phase"):
        p = add(name, "central charge Z(v)" if name == "charge" else "phase of Z(v)")
        p.add_argument("--v", required=True)
    for name, key in (("heart", "--complex"), ("decompose", "--sheaf")):
        p = add(name, "heart membership" if name == "heart" else "torsion-pair decomposition")
        p.add_argument(key, required=True)
        p.add_argument("--beta", help="override beta = (B.omega)")
        p.add_argument("--beta-bracket", help="irrational beta as 'lo,hi'")
    p = add("scan-spherical", "spherical classes with Z in R_{<=0}")
    p.add_argument("--bound", type=int)
    p.add_argument("--threads", type=int, default=1)
    p = add("extension-lemma", "solve (l + l')/(r + r') <= beta < l'/r'")
    p.add_argument("--l", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--min-rank", type=int, default=1)
    p.add_argument("--twist-degree")
    p.add_argument("--mu0")
    p = add("partners", "Picard rank one partner candidates")
    p.add_argument("--n", type=int, required=True)
    p = add("lattice", "lattice data, intersections, primitivity")
    p.add_argument("--x")
    p.add_argument("--y")
    p = add("chern", "Mukai vector from (rank, c1, c2)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", type=int, required=True)
    p = add("sprime", "least s' with chi(F, E) > 0")
    p.add_argument("--v", required=True)
    p.add_argument("--l-prime", required=True)
    p.add_argument("--r-prime", type=int, required=True)
    p = add("quadric", "period quadric membership / exp isotropy")
    p.add_argument("--x")
    p = add("selftest", "randomized invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=200)
    return parser


def _error(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": {"kind": kind, "message": message}}, sort_keys=True))
    return code


def dispatch(argv: list[str]) -> int:
    command = argv[0] if argv and not argv[0].startswith("-") else None
    if command is not None and command not in COMMANDS:
        return _error("usage", f"unknown subcommand {command!r}", EXIT_USAGE)
    args = build_parser().parse_args(argv)
    try:
        cfg = SessionConfig(
            lattice_path=args.lattice or os.environ.get("MUKAI_LATTICE"),
            B=as_rational_class(_json_arg(args.B, "--B")) if args.B else None,
            omega=as_rational_class(_json_arg(args.omega, "--omega")) if args.omega else None,
            output=args.output,
            approx=args.approx,
        )
        result = COMMANDS[args.command](args, cfg)
    except MalformedJSON as exc:
        return _error("malformed_json", str(exc), EXIT_DATAERR)
    except HypothesisViolation as exc:
        return _error("hypothesis", str(exc), EXIT_HYPOTHESIS)
    except (ValidationError, ValueError, TypeError) as exc:
        return _error("validation", str(exc), EXIT_VALIDATION)
    if cfg.output == "table":
        print("\n".join(as_table(result)))
    else:
        print(dumps(result, approx=cfg.approx))
    if args.command == "selftest" and not result["ok"]:
        return 1
    return 0


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
