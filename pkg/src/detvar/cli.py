"""Command-line front end.

Usage examples::

    detvar eu --s 3 --n 4
    detvar csm --s 2 --n 3 --format json
    detvar chi-stab --problem problem.json
    detvar verify --suite all --n-max 25

Exit status: 0 success, 1 domain/hypothesis error, 2 malformed input,
3 a verification sweep found a counterexample. Errors are reported on stderr
as a single line ``error: <code>: <message>``.
"""

import argparse
import sys
from pathlib import Path

from . import document
from .combinatorics import integer_det
from .csm import CHERN_MATHER_BASIS, CYCLE_BASIS, csm_cycle, evaluate_cycle_at_stratum, polar_class_coefficient
from .eids import (
    FLAG_DET_SIGN,
    FLAG_HIGH_Q_BINOMIAL,
    build_generic_system,
    build_system,
    chi_bar_stabilization_from_milnor,
    chi_stabilization,
    chi_stabilization_good_approx,
    eu_of_module,
    eu_section_high_q,
    eu_section_low_q,
    eu_via_pair_multiplicities,
    expected_det_sign,
    good_approx_flags,
    good_approx_q_window,
    icis_chi_bar,
    solve_polar_multiplicities,
    stabilization_flags,
)
from .errors import DetvarError, HypothesisError, MalformedInputError
from .euler import eu_closed, eu_constructible, eu_recurrence, pascal_triangle_of_spaces
from .report import FORMATS, Report, emit_report
from .verify import CSV_HEADER, SUITES, run_suites

FLAG_POLAR_MAGNITUDE = "polar-magnitude-differs-from-csm-coefficient"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInputError(message)


def int_list(text):
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _reject_k(args):
    if args.k is not None:
        raise MalformedInputError("the Euler obstruction of Sigma^s does not depend on k; drop --k")


def cmd_eu(args):
    _reject_k(args)
    s, n = args.s, args.n
    closed = eu_closed(s, n)
    rec = eu_recurrence(s, n)
    payload = {
        "s": s,
        "n": n,
        "eu": closed,
        "routes": {"recurrence": rec, "closed": closed},
        "formula": "eu(s,n)=C(n,s-1)",
        "flags": [],
    }
    text = [
        f"Eu_0(Σ^{s}) in Hom(C^{n}, C^({n}+k)) = {closed}",
        f"  recurrence:            {rec}",
        f"  closed form C(n, s-1): {closed}",
    ]
    return Report("eu", payload, text, ["s", "n", "eu", "recurrence", "closed"],
                  [[s, n, closed, rec, closed]], failed=rec != closed)


def cmd_eu_constructible(args):
    _reject_k(args)
    f = eu_constructible(args.s, args.n)
    payload = {"s": f.s, "n": f.n, "coeffs": list(f.coeffs),
               "formula": "eu_p(s,n)=sum_i C(n-i+1,s-i) 1_{stratum i}", "flags": []}
    text = [f"Eu of Σ^{f.s} (n={f.n}) on each stratum Σ^i \\ Σ^(i-1):"]
    text += [f"  i={i}: {f.at(i)}" for i in range(1, f.s + 1)]
    rows = [[i, f.at(i)] for i in range(1, f.s + 1)]
    return Report("eu-constructible", payload, text, ["stratum", "eu"], rows)


def cmd_csm(args):
    _reject_k(args)
    cycle = csm_cycle(args.s, args.n, basis=args.basis)
    evals = [evaluate_cycle_at_stratum(cycle, j) for j in range(1, cycle.s + 1)]
    line = cycle.format()
    payload = {"s": cycle.s, "n": cycle.n, "basis": cycle.basis, "coeffs": list(cycle.coeffs),
               "evaluations": evals, "formula": "csm(s,n)_i=(-1)^(s-1+i) C(n-i-1,s-i-1)", "flags": []}
    rows = [[i, f"Σ^{i + 1}", c] for i, c in enumerate(cycle.coeffs)]
    return Report("csm", payload, [line], ["i", "cycle", "coefficient"], rows,
                  failed=any(v != 1 for v in evals))


def cmd_polar_class(args):
    indices = range(args.s) if args.i is None else [args.i]
    rows, entries, text = [], [], []
    flags = set()
    for i in indices:
        c = polar_class_coefficient(args.s, args.n, args.k, i)
        if c.magnitude != c.csm_magnitude:
            flags.add(FLAG_POLAR_MAGNITUDE)
        entries.append({"i": i, "sign": c.sign, "magnitude": c.magnitude,
                        "parity_exponent": c.parity_exponent, "csm_magnitude": c.csm_magnitude})
        rows.append([i, c.sign, c.magnitude, c.parity_exponent, c.csm_magnitude])
        text.append(f"i={i}: sign {c.sign:+d} (exponent {c.parity_exponent}), magnitude C(n-i+1,s-i-1)="
                    f"{c.magnitude}, CSM coefficient magnitude C(n-i-1,s-i-1)={c.csm_magnitude}")
    payload = {"s": args.s, "n": args.n, "k": args.k, "coefficients": entries,
               "formula": "polar=(-1)^(s+d_{i+1}) C(n-i+1,s-i-1) c_CM", "flags": sorted(flags)}
    return Report("polar-class", payload, text,
                  ["i", "sign", "magnitude", "parity_exponent", "csm_magnitude"], rows)


def _load_problem(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInputError(f"cannot read problem file: {exc}") from None
    return document.parse(text)


def cmd_chi_stab(args):
    doc = _load_problem(args.problem)
    p = doc.problem
    value = chi_stabilization(p)
    flags = stabilization_flags(p)
    payload = {"inputs": doc.to_dict(), "chi": value, "dims": {str(i): d for i, d in p.dims().items()},
               "provenance": p.provenance(), "formula": "chi-stabilization-general", "flags": flags}
    text = [f"chi(X~) = {value}  (q={p.q}, n={p.n}, k={p.k}, t={p.t})"]
    text += [f"  stratum {i}: user-supplied {', '.join(v) or 'nothing'}" for i, v in p.provenance().items()]
    text += [f"  flag: {f}" for f in flags]
    return Report("chi-stab", payload, text, ["q", "n", "k", "t", "chi"], [[p.q, p.n, p.k, p.t, value]])


def cmd_chi_stab_good(args):
    q, n, k, t = args.q, args.n, args.k, args.t
    if args.mu is not None:
        chi_bar = chi_bar_stabilization_from_milnor(q, n, k, t, args.mu)
        chi = chi_bar + 1
        chi1 = 1 + icis_chi_bar(q - n * (n + k), args.mu)
        provenance = {"1": ["mu"]}
    else:
        chi = chi_stabilization_good_approx(q, n, k, t, args.chi1)
        chi_bar = chi - 1
        chi1 = args.chi1
        provenance = {"1": ["chi_stab"]}
    flags = good_approx_flags(n, t, chi1)
    payload = {"q": q, "n": n, "k": k, "t": t, "chi1": chi1, "mu": args.mu, "chi": chi, "chi_bar": chi_bar,
               "provenance": provenance, "formula": "chi-stabilization-good-approximation", "flags": flags}
    text = [f"chi(X~) = {chi}, reduced {chi_bar}  (q={q}, n={n}, k={k}, t={t})"]
    text += [f"  flag: {f}" for f in flags]
    return Report("chi-stab-good", payload, text, ["q", "n", "k", "t", "chi", "chi_bar"],
                  [[q, n, k, t, chi, chi_bar]])


def _system_report(command, n, k, system):
    x = solve_polar_multiplicities(system)
    det = integer_det(system.matrix)
    flags = [FLAG_DET_SIGN] if det != (-1) ** system.size else []
    round_trip = list(system.apply(x)) == list(system.rhs)
    payload = {"n": n, "k": k, "s": system.size, "matrix": [list(r) for r in system.matrix],
               "rhs": list(system.rhs), "b": list(system.b), "solution": x, "det": det,
               "det_antidiagonal_sign": expected_det_sign(system.size), "round_trip": round_trip,
               "formula": "forward-substitution x_j=b_j-sum n_ij x_i", "flags": flags}
    text = [f"A (rows = strata {system.size}..1):"]
    text += ["  " + " ".join(f"{v:>4}" for v in row) + f" | {b}" for row, b in zip(system.matrix, system.rhs)]
    text.append(f"det A = {det}")
    text.append("x = m_{d_i}(_iX), i=1..s: " + ", ".join(map(str, x)))
    text += [f"flag: {f}" for f in flags]
    header = ["stratum"] + [f"a{c}" for c in range(1, system.size + 1)] + ["rhs", "x"]
    rows = [[system.size - r] + list(row) + [system.rhs[r], x[system.size - r - 1]]
            for r, row in enumerate(system.matrix)]
    return Report(command, payload, text, header, rows, failed=not round_trip)


def cmd_generic_system(args):
    return _system_report("generic-system", args.n, args.k, build_generic_system(args.n, args.k, args.s))


def cmd_solve_system(args):
    return _system_report("solve-system", args.n, args.k, build_system(args.n, args.k, args.b))


def cmd_eu_section(args):
    q, n, k, s = args.q, args.n, args.k, args.s
    ambient = n * (n + k)
    flags = []
    if q < ambient:
        if args.chi_bar_1h is not None:
            raise MalformedInputError("--chi-bar-1h only applies when q > n(n+k)")
        value = eu_section_low_q(s, n, args.chi_bar_star, q=q, k=k)
        regime = "low-q"
    elif q > ambient:
        if args.chi_bar_1h is None:
            raise MalformedInputError("--chi-bar-1h is required when q > n(n+k)")
        value = eu_section_high_q(s, n, args.chi_bar_1h, args.chi_bar_star, q=q, k=k)
        regime = "high-q"
        flags.append(FLAG_HIGH_Q_BINOMIAL)
    else:
        raise HypothesisError(f"no section formula covers q = n(n+k) = {ambient}")
    payload = {"q": q, "n": n, "k": k, "s": s, "regime": regime, "chi_bar_star": args.chi_bar_star,
               "chi_bar_1H": args.chi_bar_1h, "eu": value,
               "provenance": {"chi_bar_star": "user", "chi_bar_1H": "user" if args.chi_bar_1h is not None else None},
               "formula": f"eu-section-{regime}", "flags": flags}
    text = [f"Eu_0(X) = {value}  ({regime}, q={q}, n={n}, k={k}, s={s})"] + [f"  flag: {f}" for f in flags]
    return Report("eu-section", payload, text, ["q", "n", "k", "s", "regime", "eu"], [[q, n, k, s, regime, value]])


def cmd_eu_module(args):
    if args.polar_mults is not None:
        value = eu_of_module(args.polar_mults)
        payload = {"polar_mults": args.polar_mults, "eu": value,
                   "formula": "eu-module=sum (-1)^i m_0(P_i(M))", "flags": []}
    else:
        if args.eu_pullback is None:
            raise MalformedInputError("--pair-mults needs --eu-pullback")
        value = eu_via_pair_multiplicities(args.pair_mults, args.eu_pullback)
        payload = {"pair_mults": args.pair_mults, "eu_pullback": args.eu_pullback, "eu": value,
                   "formula": "eu=sum (-1)^i e(M_i,N_i)+eu(F*JM)", "flags": []}
    payload["provenance"] = "user"
    return Report("eu-module", payload, [f"Eu_0 = {value}"], ["eu"], [[value]])


def cmd_q_window(args):
    w = good_approx_q_window(args.n, args.k, args.r)
    payload = {"n": w.n, "k": w.k, "kernel_rank_r": w.r, "rank_bound_s": w.rank_bound,
               "lower_exclusive": w.lower_exclusive, "upper_exclusive": w.upper_exclusive,
               "values": list(w.values),
               "note": "kernel-rank stratum r is Sigma^(r+1) in rank-bound indexing",
               "formula": "dim Sigma^(r+1) < q < n(n+k)", "flags": []}
    text = [f"{w.lower_exclusive} < q < {w.upper_exclusive}  (kernel rank r={w.r}, i.e. Σ^{w.rank_bound})",
            "q in {" + ", ".join(map(str, w.values)) + "}"]
    return Report("q-window", payload, text, ["q"], [[q] for q in w.values])


def cmd_pascal(args):
    table = pascal_triangle_of_spaces(args.rows)
    payload = {"rows": table, "formula": "eu(i+1,m)=C(m,i)", "flags": []}
    width = len(" ".join(map(str, table[-1])))
    text = [" ".join(map(str, row)).center(width).rstrip() for row in table]
    return Report("pascal", payload, text, None, table)


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = run_suites(names, args.n_max, args.k_max, args.s_max)
    summary = {}
    for c in checks:
        entry = summary.setdefault(c.suite, {"checked": 0, "failed": 0})
        entry["checked"] += 1
        entry["failed"] += not c.ok
    bad = [c for c in checks if not c.ok]
    flags = []
    if any(c.suite == "generic-det" and int(c.expected) != (-1) ** c.s for c in checks):
        flags.append(FLAG_DET_SIGN)
    payload = {"params": {"suites": names, "n_max": args.n_max, "k_max": args.k_max, "s_max": args.s_max},
               "summary": summary, "counterexamples": [dict(zip(CSV_HEADER, c.row())) for c in bad],
               "ok": not bad, "flags": flags}
    text = [f"{name:<15} {v['checked']:>6} checked, {v['failed']} failed" for name, v in summary.items()]
    text.append("all identities hold" if not bad else f"{len(bad)} counterexample(s)")
    text += ["  " + ",".join(map(str, c.row())) for c in bad]
    text += [f"flag: {f}" for f in flags]
    return Report("verify", payload, text, CSV_HEADER, [c.row() for c in checks], failed=bool(bad))


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write the report to PATH instead of stdout")

    parser = _Parser(prog="detvar", description="Invariants of generic determinantal varieties and EIDS.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    def s_n(p, hidden_k=True):
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        if hidden_k:
            p.add_argument("--k", type=int, help=argparse.SUPPRESS)

    s_n(add("eu", cmd_eu, "local Euler obstruction of Sigma^s (both routes)"))
    s_n(add("eu-constructible", cmd_eu_constructible, "Euler obstruction as a constructible function"))
    p = add("csm", cmd_csm, "CSM cycle / class coefficients")
    s_n(p)
    p.add_argument("--basis", choices=[CYCLE_BASIS, CHERN_MATHER_BASIS], default=CYCLE_BASIS)
    p = add("polar-class", cmd_polar_class, "polar-class coefficient with parity audit")
    s_n(p, hidden_k=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int)

    p = add("chi-stab", cmd_chi_stab, "Euler characteristic of a stabilization (problem document)")
    p.add_argument("--problem", required=True)

    p = add("chi-stab-good", cmd_chi_stab_good, "stabilization Euler characteristic, good approximation")
    for name in ("q", "n", "k", "t"):
        p.add_argument(f"--{name}", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--chi1", type=int, help="chi of the stabilization of the ICIS stratum")
    g.add_argument("--mu", type=int, help="Milnor number of the ICIS stratum")

    p = add("generic-system", cmd_generic_system, "polar multiplicity system of Sigma^1..Sigma^s")
    for name in ("n", "k", "s"):
        p.add_argument(f"--{name}", type=int, required=True)

    p = add("solve-system", cmd_solve_system, "solve the triangular system for a given b_1..b_s")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=int_list, required=True, help="comma-separated b_1..b_s")

    p = add("eu-section", cmd_eu_section, "Euler obstruction of an EIDS section")
    for name in ("q", "n", "k", "s"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--chi-bar-star", type=int_list, required=True, help="reduced slice chi for i=2..s")
    p.add_argument("--chi-bar-1h", type=int, help="reduced chi of _1X cap H (q > n(n+k) only)")

    p = add("eu-module", cmd_eu_module, "Euler obstruction of a module / via pair multiplicities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--polar-mults", type=int_list)
    g.add_argument("--pair-mults", type=int_list)
    p.add_argument("--eu-pullback", type=int)

    p = add("q-window", cmd_q_window, "source dimensions where the good-approximation corollary applies")
    for name in ("n", "k", "r"):
        p.add_argument(f"--{name}", type=int, required=True)

    p = add("pascal", cmd_pascal, "Euler obstructions of the triangle of spaces")
    p.add_argument("--rows", type=int, required=True)

    p = add("verify", cmd_verify, "sweep every identity against its oracle")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--s-max", type=int)
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        report = args.handler(args)
        data = emit_report(report, args.format)
        if args.out:
            Path(args.out).write_bytes(data)
        else:
            stdout.write(data)
        return 3 if report.failed else 0
    except DetvarError as exc:
        print(f"error: {exc.code}: {exc}", file=stderr)
        return exc.exit_status
    except Exception as exc:  # engine bug; keep it inside the CLI boundary
        print(f"error: internal: {type(exc).__name__}: {exc}", file=stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
