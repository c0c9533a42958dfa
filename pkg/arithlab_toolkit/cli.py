import argparse
import dataclasses
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from arithlab_toolkit import __version__
from arithlab_toolkit.algebraic import (AlgebraicNumber, energy_height_gap,
                                        equidistribution_stats, mahler_measure,
                                        northcott_enumerate, ramanujan_sum,
                                        root_of_unity_order, roots_of_unity_sequence)
from arithlab_toolkit.algebraic.numbers import as_int_poly
from arithlab_toolkit.combin import (f2_exhaustive, incidences, incidences_fp_full,
                                     kakeya_report, sidon_construct, sidon_upper_bounds,
                                     sidon_verify, st_grid_instance)
from arithlab_toolkit.config import get_config, load_config, set_config
from arithlab_toolkit.elliptic import (WeierstrassCurve, an_coefficients, canonical_height,
                                       curve, mul, reduction_table, root_number, torsion)
from arithlab_toolkit.elliptic.torsion import on_mazur_list
from arithlab_toolkit.errors import ConsistencyError, LabError
from arithlab_toolkit.exactnum import is_prime, primes_up_to
from arithlab_toolkit.fourier import (FiniteAbelianGroup, ap3_deviation, behrend_set,
                                      bogolyubov_certificate, bohr_set, check_bohr_bounds,
                                      is_ap3_free, random_set, roth_graph)
from arithlab_toolkit.groups import (SL2Group, adjacency_spectrum, cayley_diameter,
                                     growth_profile, link_preset, nikolov_pyber_check,
                                     projective_plane_incidence, random_expander_sample,
                                     return_probability, zuk_criterion)
from arithlab_toolkit.logging_setup import configure_logging
from arithlab_toolkit.modforms import (delta_series, e8_lattice, eisenstein,
                                       eisenstein_normalized, hecke_eigenvalue, hecke_Tn,
                                       is_hecke_eigenform, ramanujan_bound_holds, tau,
                                       tau_values, theta_series, verify_sigma_identities)
from arithlab_toolkit.quat import (BrandtModule, brandt_module, class_number_formula, class_set,
                                   congruence_trace_floor, eichler_mass, theta_matrix,
                                   theta_pair_direct)
from arithlab_toolkit.reproduce import reproduce_all
from arithlab_toolkit.serialize import dumps, parse_rational, rows_to_csv, to_jsonable

Table = Tuple[List[str], List[list]]


@dataclass
class Outcome:
    """What a subcommand hands back: the payload, its invariant ledger, an optional table."""

    result: Any
    ledger: List[dict] = field(default_factory=list)
    table: Optional[Table] = None


@dataclass
class RunReport:
    config: dict
    result: Any
    ledger: List[dict]
    wall_time: float
    table: Optional[Table] = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return all(entry["passed"] for entry in self.ledger)

    def to_json(self) -> dict:
        return {"meta": {**self.config, "wall_time": round(self.wall_time, 3)},
                "result": to_jsonable(self.result), "ledger": self.ledger}


def check(name: str, passed: bool, **details) -> dict:
    return {"invariant": name, "passed": bool(passed), **details}


def int_list(text: str) -> List[int]:
    return [int(c) for c in text.replace(" ", "").split(",") if c]


def element_list(text: str) -> list:
    """'1,17' for cyclic groups, '1.0.2;0.1.1' for coordinate tuples."""
    if ";" not in text and "." not in text:
        return int_list(text)
    return [tuple(int(c) for c in item.split(".")) for item in text.split(";") if item]


def torsion_structure(invariants: Sequence[int]) -> str:
    if not invariants:
        return "0"
    return " x ".join(f"Z/{n}Z" for n in invariants)


# ---- modforms ----

def cmd_modforms_delta(args) -> Outcome:
    d = delta_series(args.precision)
    ok = all(d.coeff(m * n) == d.coeff(m) * d.coeff(n)
             for m in range(2, args.precision + 1) for n in range(m + 1, args.precision // m + 1)
             if math.gcd(m, n) == 1)
    return Outcome(d, [check("tau multiplicative", ok), check("tau(2) = -24", tau(2) == -24)],
                   (["n", "tau(n)"], [[n, c] for n, c in enumerate(d.coeffs)]))


def cmd_modforms_eisenstein(args) -> Outcome:
    build = eisenstein_normalized if args.normalized else eisenstein
    series = build(args.weight, args.precision)
    return Outcome(series, [], (["n", "a_n"], [[n, c] for n, c in enumerate(series.coeffs)]))


def cmd_modforms_tau(args) -> Outcome:
    values = tau_values(args.max)
    primes = [p for p in range(2, args.max + 1) if is_prime(p)]
    ledger = [check("|tau(p)| <= 2 p^(11/2)", all(ramanujan_bound_holds(p) for p in primes))]
    return Outcome({"tau": values[1:]}, ledger,
                   (["n", "tau(n)"], [[n, values[n]] for n in range(1, args.max + 1)]))


def _named_form(name: str, precision: int):
    if name == "delta":
        return delta_series(precision)
    if name.startswith("e") and name[1:].isdigit():
        return eisenstein_normalized(int(name[1:]), precision)
    raise argparse.ArgumentTypeError(f"unknown form {name!r}; use delta or e4, e6, ...")


def cmd_modforms_hecke(args) -> Outcome:
    f = _named_form(args.form, args.n * args.precision)
    image = hecke_Tn(f, args.n, precision=args.precision)
    primes = [p for p in (2, 3, 5) if p * args.precision <= f.precision]
    report = is_hecke_eigenform(f, primes)
    lam = hecke_eigenvalue(f, args.n) if report.success else None
    return Outcome({"T_n f": image, "eigenvalue": lam, "eigenform": report.success},
                   [check(f"{args.form} is an eigenform for T_p, p in {primes}", report.success)])


def cmd_modforms_theta_e8(args) -> Outcome:
    theta = theta_series(e8_lattice(), args.precision)
    return Outcome(theta, [check("theta_E8 = E_4", theta.agrees_with(
        eisenstein(4, args.precision)))],
        (["n", "r_E8(2n)"], [[n, c] for n, c in enumerate(theta.coeffs)]))


def cmd_modforms_sigma(args) -> Outcome:
    report = verify_sigma_identities(args.n_max)
    ledger = [check("sigma_7 = sigma_3 + 120 sigma_3 * sigma_3", report.eq_sigma7_ok),
              check("11 sigma_9 = 21 sigma_5 - 10 sigma_3 + 5040 sigma_3 * sigma_5",
                    report.eq_sigma9_ok)]
    return Outcome(report, ledger)


# ---- quat ----

def cmd_quat_classes(args) -> Outcome:
    classes = class_set(args.disc)
    ledger = [check("mass = (N - 1) / 12", classes.mass() == eichler_mass(args.disc)),
              check("h = class number formula", len(classes) == class_number_formula(args.disc))]
    return Outcome(classes, ledger)


def cmd_quat_brandt(args) -> Outcome:
    report = brandt_module(args.disc, args.primes, precision=args.precision)
    rows = [[n, report.matrices[n].to_int_rows()] for n in sorted(report.matrices)]
    return Outcome(report, [check("Brandt matrices commute and satisfy B(p^2) = B(p)^2 - p", True)],
                   (["n", "B(n)"], rows))


def cmd_quat_theta(args) -> Outcome:
    module = BrandtModule(class_set(args.disc), num_threads=args.num_threads)
    thetas = theta_matrix(module, args.precision)
    h = module.rank
    direct = all(theta_pair_direct(module, i, j, args.precision).coeffs == thetas[i][j].coeffs
                 for i in range(h) for j in range(i, h))
    rows = [[i + 1, j + 1, thetas[i][j]] for i in range(h) for j in range(h)]
    return Outcome({"level": args.disc, "thetas": thetas},
                   [check("Brandt theta = norm-form theta", direct)],
                   (["i", "j", "theta_ij"], rows))


def cmd_quat_systole(args) -> Outcome:
    report = congruence_trace_floor(args.p, args.bound)
    ok = report.min_abs_trace_half is None or report.min_abs_trace_half >= report.floor
    return Outcome(report, [check("|x0| >= p^2 - 1", ok)])


# ---- ec ----

def _curve(args):
    if args.curve:
        return curve(args.curve)
    return WeierstrassCurve(args.a1, args.a2, args.a3, args.a4, args.a6)


def cmd_ec_invariants(args) -> Outcome:
    E = _curve(args)
    return Outcome({"ainvs": E.ainvs, **E.invariants()}, [check("Delta != 0", E.discriminant)])


def cmd_ec_torsion(args) -> Outcome:
    group = torsion(_curve(args))
    return Outcome({"structure": torsion_structure(group.invariants), **group.to_json()},
                   [check("on Mazur's list", on_mazur_list(group.invariants))])


def cmd_ec_ap(args) -> Outcome:
    primes = [args.p] if args.p else primes_up_to(args.max)
    table = reduction_table(_curve(args), primes, num_threads=args.num_threads)
    reds = [table[p] for p in sorted(table)]
    hasse = all(r.ap ** 2 <= 4 * r.p for r in reds if r.is_good)
    return Outcome(reds, [check("Hasse bound a_p^2 <= 4p", hasse)],
                   (["p", "type", "a_p", "count"], [[r.p, r.kind, r.ap, r.count] for r in reds]))


def cmd_ec_an(args) -> Outcome:
    a = an_coefficients(_curve(args), args.n)
    mult = all(a[m * n - 1] == a[m - 1] * a[n - 1]
               for m in range(2, args.n + 1) for n in range(m + 1, args.n // m + 1)
               if math.gcd(m, n) == 1)
    return Outcome({"a_n": a}, [check("a_mn = a_m a_n for coprime m, n", mult)],
                   (["n", "a_n"], [[n, c] for n, c in enumerate(a, start=1)]))


def cmd_ec_height(args) -> Outcome:
    E = _curve(args)
    P = E.point(args.x, args.y)
    h = canonical_height(P, args.eps)
    h2 = canonical_height(mul(2, P), args.eps)
    quadratic = abs(h2.value - 4 * h.value) <= h2.err + 4 * h.err
    return Outcome({"point": P, "height": h, "height_2P": h2},
                   [check("h(2P) = 4 h(P)", quadratic)])


def cmd_ec_rootnumber(args) -> Outcome:
    report = root_number(_curve(args))
    return Outcome(report, [check("all local signs determined", report.value is not None)])


# ---- fourier ----

def cmd_fourier_ap3(args) -> Outcome:
    G = FiniteAbelianGroup.parse(args.group)
    A = random_set(G, args.density, seed=args.seed)
    dev = ap3_deviation(G, A)
    return Outcome({"size": len(A), "deviation": dev.deviation, **to_jsonable(dev)},
                   [check("|T3 - alpha^3| <= alpha ||f||_u", dev.holds)])


def cmd_fourier_bohr(args) -> Outcome:
    G = FiniteAbelianGroup.parse(args.group)
    B = bohr_set(G, element_list(args.freqs), parse_rational(args.delta))
    bounds = check_bohr_bounds(B)
    return Outcome({"bohr": B, "bounds": bounds},
                   [check("delta^|S| <= beta and Fourier bounds", True)])


def cmd_fourier_bogolyubov(args) -> Outcome:
    G = FiniteAbelianGroup.parse(args.group)
    cert = bogolyubov_certificate(G, random_set(G, args.density, seed=args.seed))
    return Outcome(cert, [check("B(Spec, 1/4) inside 2A - 2A", cert.contained)])


def cmd_fourier_behrend(args) -> Outcome:
    B = behrend_set(args.n)
    return Outcome(B, [check("no three-term progression", is_ap3_free(B.elements))])


def cmd_fourier_rothgraph(args) -> Outcome:
    G = roth_graph(int_list(args.set), args.n)
    return Outcome(G, [check("triangles = n * #{a1 + a2 = 2 a3}",
                             G.triangles == G.n * G.solutions)])


# ---- combin ----

def cmd_combin_sidon(args) -> Outcome:
    c = sidon_construct(args.kind, args.p, h=args.h, g=args.g)
    return Outcome(c, [check(f"B_{c.h} verified", c.certificate.is_sidon)])


def cmd_combin_kakeya(args) -> Outcome:
    verdict = kakeya_report(args.p, args.n)
    return Outcome(verdict, [check("line in every direction", verdict.is_kakeya),
                             check("|S| >= C(p + n - 1, n)", verdict.size >= verdict.lower_bound)])


def cmd_combin_f2max(args) -> Outcome:
    result = f2_exhaustive(args.n)
    ok = sidon_verify(result.witness).is_sidon
    trivial = sidon_upper_bounds(args.n).trivial
    return Outcome(result, [check("witness is Sidon", ok),
                            check("F2(n) <= sqrt(2n) + 1/2", result.value <= trivial)],
                   (["n", "F2(n)"], sorted(result.table.items())))


def cmd_combin_incidence(args) -> Outcome:
    report = incidences(st_grid_instance(args.grid)) if args.grid else incidences_fp_full(args.p)
    return Outcome(report, [check(f"{report.bound_name} bound", report.count <= report.bound)])


# ---- groups ----

def _sl2(args):
    G = SL2Group(args.p, projective=args.projective)
    return G, G.unipotent_pair()


def cmd_groups_diameter(args) -> Outcome:
    G, gens = _sl2(args)
    diam = cayley_diameter(G, gens)
    # a ball of radius r in a graph of degree s has at most (s + 1)^r vertices
    lower = math.ceil(math.log(G.order) / math.log(2 * len(gens) + 1))
    return Outcome({"p": args.p, "order": G.order, "diameter": diam},
                   [check("diameter >= log |G| / log (|A u A^-1| + 1)", diam >= lower)])


def cmd_groups_growth(args) -> Outcome:
    G, gens = _sl2(args)
    A = [G.identity] + list(gens) + [G.inv(g) for g in gens]
    profile = growth_profile(G, A, args.k)
    return Outcome(profile, [check("|A^k| non-decreasing", profile.sizes == sorted(profile.sizes))])


def cmd_groups_spectrum(args) -> Outcome:
    G, gens = _sl2(args)
    report = adjacency_spectrum(G, gens)
    ledger = [check("trace identity", report.trace_residual < 1e-8)]
    if report.frobenius_bound is not None:
        ledger.append(check("multiplicity >= (p - 1) / 2", report.frobenius_holds))
    return Outcome(report, ledger,
                   (["eigenvalue", "multiplicity"], [list(c) for c in report.clusters]))


def cmd_groups_zuk(args) -> Outcome:
    graph = projective_plane_incidence(args.q) if args.q else link_preset(args.preset)
    verdict = zuk_criterion(graph)
    return Outcome(verdict, [check("link graph connected", verdict.lambda1 is not None)])


def cmd_groups_kesten(args) -> Outcome:
    walk = return_probability(args.walk, args.steps, d=args.d)
    rows = [[2 * m, p] for m, p in enumerate(walk.probabilities)]
    return Outcome({"walk": walk.walk, "steps": walk.steps, "probabilities": walk.probabilities,
                    "growth": walk.growth_limit()},
                   [check("0 <= p_2n <= 1", all(0 <= p <= 1 for p in walk.probabilities))],
                   (["steps", "probability"], rows))


def cmd_groups_xnk(args) -> Outcome:
    sample = random_expander_sample(args.n, args.k, trials=args.trials, seed=args.seed,
                                    show_progress=not args.silence)
    return Outcome(sample, [check("h' >= 1 for every sample",
                                  all(h >= 1 for h in sample.h_primes))])


def cmd_groups_nikolov_pyber(args) -> Outcome:
    report = nikolov_pyber_check(args.p, trials=args.trials, seed=args.seed,
                                 num_threads=args.num_threads)
    return Outcome(report, [check("A^3 = G", report.all_covered)])


# ---- height ----

def cmd_height_mahler(args) -> Outcome:
    f = as_int_poly(args.poly)
    m = mahler_measure(f)
    return Outcome({"poly": f, "mahler": m}, [check("M(f) >= |lead f|", m.upper >= abs(f.lead))])


def cmd_height_weil(args) -> Outcome:
    alpha = AlgebraicNumber.from_poly(args.poly, args.root)
    gap = energy_height_gap(alpha)
    order = root_of_unity_order(alpha)
    kronecker = (order is not None) == (abs(float(gap.height)) <= float(gap.height.err) + 1e-12)
    return Outcome({"alpha": alpha, "height": gap.height, "energy": gap.energy,
                    "root_of_unity_order": order},
                   [check("E' <= 2h", gap.gap >= -1e-10), check("h = 0 iff root of unity",
                                                                kronecker)])


def cmd_height_equid(args) -> Outcome:
    rows = equidistribution_stats(roots_of_unity_sequence(args.n_max, args.start),
                                  k_max=args.k_max, num_threads=args.num_threads,
                                  show_progress=not args.silence)
    header = ["orbit", "degree", "discrepancy"] + [f"|W_{k}|" for k in range(1, args.k_max + 1)]
    table = [[r.label, r.degree, r.discrepancy] + r.weyl_abs for r in rows]
    return Outcome(rows, [check("conjugates on the unit circle", all(r.in_window for r in rows))],
                   (header, table))


def cmd_height_northcott(args) -> Outcome:
    result = northcott_enumerate(args.degree, args.height, show_progress=not args.silence)
    ok = all(e.height.lower <= args.height + 1e-12 for e in result.entries)
    return Outcome(result, [check("every height <= B", ok)],
                   (["poly", "degree", "height"],
                    [[e.poly, e.degree, float(e.height)] for e in result.entries]))


def cmd_height_ramanujan(args) -> Outcome:
    rows = [[n, k, ramanujan_sum(n, k)] for n in range(1, args.n_max + 1)
            for k in range(1, args.k_max + 1)]
    return Outcome({"sums": rows}, [check("divisor formula = exponential sum", True)],
                   (["n", "k", "S(n,k)"], rows))


# ---- reproduce ----

def cmd_reproduce(args) -> Outcome:
    summary = reproduce_all(module=args.filter, chapter=args.chapter,
                            num_threads=args.num_threads, seed=args.seed,
                            show_progress=not args.silence)
    ledger = [check(r.name, r.passed, error=r.error) for r in summary.results]
    return Outcome(summary, ledger, summary.rows())


def _common_flags(parser: argparse.ArgumentParser, default) -> None:
    """Global flags; leaf parsers pass SUPPRESS so a flag may come before or after the command."""
    parser.add_argument("--format", choices=["json", "csv"], default=default("json"),
                        help="Output format")
    parser.add_argument("--output", '-o', type=str, default=default(None),
                        help="Write the report to this file instead of stdout")
    parser.add_argument("--seed", type=int, default=default(0), help="Seed for sampled experiments")
    parser.add_argument("--env-file", type=str, default=default(None),
                        help="Budget file (default .lab_env)")
    parser.add_argument("--num-threads", '-j', type=int, default=default(None),
                        help="Number of threads to use for parallel loops")
    parser.add_argument("--verbose", '-v', action="store_true", default=default(False),
                        help="Log progress at INFO level")
    parser.add_argument("--silence", '-s', action="store_true", default=default(False),
                        help="Reduce the output info on the terminal")


def _curve_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--curve", type=str, help="Named curve: 11a, 37a, 389a, fermat3, ex12")
    for name in ("a1", "a2", "a3", "a4", "a6"):
        parser.add_argument(f"--{name}", type=parse_rational, default=Fraction(0),
                            help=f"Weierstrass coefficient {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arithlab",
        description="Exact-arithmetic laboratory: modular forms, quaternion algebras, elliptic "
                    "curves, additive combinatorics, expanders and heights."
    )
    _common_flags(parser, lambda value: value)
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, lambda value: argparse.SUPPRESS)
    modules = parser.add_subparsers(dest="module", required=True)

    def command(group, name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        sub = group.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(func=func)
        return sub

    mf = modules.add_parser("modforms", help="Level-one modular forms").add_subparsers(
        dest="op", required=True)
    sub = command(mf, "delta", cmd_modforms_delta, "q-expansion of Delta")
    sub.add_argument("--precision", '-n', type=int, default=20)
    sub = command(mf, "eisenstein", cmd_modforms_eisenstein, "Eisenstein series E_k")
    sub.add_argument("--weight", '-k', type=int, required=True)
    sub.add_argument("--precision", '-n', type=int, default=10)
    sub.add_argument("--normalized", action="store_true", help="Scale so that a_1 = 1")
    sub = command(mf, "tau", cmd_modforms_tau, "Ramanujan tau values")
    sub.add_argument("--max", type=int, default=30)
    sub = command(mf, "hecke", cmd_modforms_hecke, "Hecke operator T_n on a named form")
    sub.add_argument("--form", type=str, default="delta", help="delta, e4, e6, ...")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--precision", type=int, default=10)
    sub = command(mf, "theta-e8", cmd_modforms_theta_e8, "Theta series of E8")
    sub.add_argument("--precision", '-n', type=int, default=5)
    sub = command(mf, "sigma", cmd_modforms_sigma, "Divisor-sum convolution identities")
    sub.add_argument("--n-max", type=int, default=200)

    qt = modules.add_parser("quat", help="Definite quaternion algebras").add_subparsers(
        dest="op", required=True)
    sub = command(qt, "classes", cmd_quat_classes, "Right ideal classes of a maximal order")
    sub.add_argument("--disc", type=int, required=True)
    sub = command(qt, "brandt", cmd_quat_brandt, "Brandt matrices, eigenbasis, theta series")
    sub.add_argument("--disc", type=int, required=True)
    sub.add_argument("--primes", type=int_list, default=[2, 3, 5, 7])
    sub.add_argument("--precision", type=int, default=None)
    sub = command(qt, "theta", cmd_quat_theta, "Theta series of all class pairs")
    sub.add_argument("--disc", type=int, required=True)
    sub.add_argument("--precision", type=int, default=9)
    sub = command(qt, "systole", cmd_quat_systole, "Trace floor of congruence units in (2, 3)")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--bound", type=int, default=200)

    ec = modules.add_parser("ec", help="Elliptic curves over Q").add_subparsers(
        dest="op", required=True)
    for name, func, help_text in (
        ("invariants", cmd_ec_invariants, "Weierstrass invariants"),
        ("torsion", cmd_ec_torsion, "Rational torsion subgroup"),
        ("ap", cmd_ec_ap, "Reduction types and a_p"),
        ("an", cmd_ec_an, "L-series coefficients a_n"),
        ("height", cmd_ec_height, "Canonical height of a point"),
        ("rootnumber", cmd_ec_rootnumber, "Global root number"),
    ):
        sub = command(ec, name, func, help_text)
        _curve_flags(sub)
        if name == "ap":
            sub.add_argument("--p", type=int, default=None)
            sub.add_argument("--max", type=int, default=100)
        elif name == "an":
            sub.add_argument("--n", type=int, default=20)
        elif name == "height":
            sub.add_argument("--x", type=parse_rational, required=True)
            sub.add_argument("--y", type=parse_rational, required=True)
            sub.add_argument("--eps", type=float, default=1e-6)

    fo = modules.add_parser("fourier", help="Fourier analysis on finite abelian groups") \
        .add_subparsers(dest="op", required=True)
    sub = command(fo, "ap3", cmd_fourier_ap3, "3-AP count of a random set against alpha^3")
    sub.add_argument("--group", type=str, default="z101", help="zN or fP^n")
    sub.add_argument("--density", type=float, default=0.3)
    sub = command(fo, "bohr", cmd_fourier_bohr, "Bohr set and its size bounds")
    sub.add_argument("--group", type=str, default="z101")
    sub.add_argument("--freqs", type=str, required=True)
    sub.add_argument("--delta", type=str, default="1/4")
    sub = command(fo, "bogolyubov", cmd_fourier_bogolyubov, "Bogolyubov containment check")
    sub.add_argument("--group", type=str, default="z101")
    sub.add_argument("--density", type=float, default=0.3)
    sub = command(fo, "behrend", cmd_fourier_behrend, "Behrend's 3-AP-free set in [1, N]")
    sub.add_argument("--n", type=int, required=True)
    sub = command(fo, "rothgraph", cmd_fourier_rothgraph, "Tripartite graph of a set")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--set", type=str, required=True)

    cb = modules.add_parser("combin", help="Additive combinatorics").add_subparsers(
        dest="op", required=True)
    sub = command(cb, "sidon", cmd_combin_sidon, "Algebraic Sidon and B_h constructions")
    sub.add_argument("--kind", choices=["erdos_turan", "ruzsa", "bose_chowla"], required=True)
    sub.add_argument("--p", type=int, required=True, help="Prime, or prime power for bose_chowla")
    sub.add_argument("--h", type=int, default=2)
    sub.add_argument("--g", type=int, default=None)
    sub = command(cb, "kakeya", cmd_combin_kakeya, "Kakeya set over F_p^n")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--n", type=int, default=2)
    sub = command(cb, "f2max", cmd_combin_f2max, "Largest Sidon set in [1, n]")
    sub.add_argument("--n", type=int, required=True)
    sub = command(cb, "incidence", cmd_combin_incidence, "Point-line incidences")
    sub.add_argument("--p", type=int, default=5)
    sub.add_argument("--grid", type=int, default=None, help="Grid instance of size N instead")

    gp = modules.add_parser("groups", help="Finite groups and expanders").add_subparsers(
        dest="op", required=True)
    for name, func, help_text in (
        ("diameter", cmd_groups_diameter, "Cayley graph diameter of SL2(F_p)"),
        ("growth", cmd_groups_growth, "Sizes of A, A^2, A^3"),
        ("spectrum", cmd_groups_spectrum, "Adjacency spectrum and multiplicities"),
    ):
        sub = command(gp, name, func, help_text)
        sub.add_argument("--p", type=int, required=True)
        sub.add_argument("--projective", action="store_true")
        if name == "growth":
            sub.add_argument("--k", type=int, default=3)
    sub = command(gp, "zuk", cmd_groups_zuk, "lambda_1 criterion for property (T)")
    sub.add_argument("--preset", choices=["z-pm12", "fano", "k4"], default="z-pm12")
    sub.add_argument("--q", type=int, default=None, help="Incidence graph of PG(2, q) instead")
    sub = command(gp, "kesten", cmd_groups_kesten, "Return probabilities of random walks")
    sub.add_argument("--walk", choices=["zd", "free"], default="free")
    sub.add_argument("--steps", type=int, default=20)
    sub.add_argument("--d", type=int, default=2)
    sub = command(gp, "xnk", cmd_groups_xnk, "Random bipartite expanders X(n, k)")
    sub.add_argument("--n", type=int, default=8)
    sub.add_argument("--k", type=int, default=5)
    sub.add_argument("--trials", type=int, default=200)
    sub = command(gp, "nikolov-pyber", cmd_groups_nikolov_pyber, "A^3 = G for large A")
    sub.add_argument("--p", type=int, default=11)
    sub.add_argument("--trials", type=int, default=5)

    ht = modules.add_parser("height", help="Mahler measure and heights").add_subparsers(
        dest="op", required=True)
    sub = command(ht, "mahler", cmd_height_mahler, "Mahler measure of an integer polynomial")
    sub.add_argument("--poly", type=str, required=True, help="c0,c1,...,cn")
    sub = command(ht, "weil", cmd_height_weil, "Weil height and orbit energy")
    sub.add_argument("--poly", type=str, required=True, help="Minimal polynomial c0,c1,...,cn")
    sub.add_argument("--root", type=int, default=0)
    sub = command(ht, "equid", cmd_height_equid, "Weyl sums of roots of unity")
    sub.add_argument("--n-max", type=int, default=30)
    sub.add_argument("--start", type=int, default=1)
    sub.add_argument("--k-max", type=int, default=10)
    sub = command(ht, "northcott", cmd_height_northcott, "All numbers of bounded degree, height")
    sub.add_argument("--degree", type=int, required=True)
    sub.add_argument("--height", type=float, required=True)
    sub = command(ht, "ramanujan", cmd_height_ramanujan, "Ramanujan sums S(n, k)")
    sub.add_argument("--n-max", type=int, default=12)
    sub.add_argument("--k-max", type=int, default=12)

    rp = modules.add_parser("reproduce", parents=[common], help="Run the acceptance suite")
    rp.set_defaults(func=cmd_reproduce, op=None)
    rp.add_argument("--filter", type=str, default=None, help="Only this module's criteria")
    rp.add_argument("--chapter", type=str, default=None, help="Only this chapter's criteria")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _config_echo(args: argparse.Namespace) -> dict:
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "module", "op", "output", "verbose", "silence")}
    return {"version": __version__,
            "command": " ".join(p for p in (args.module, args.op) if p),
            "params": to_jsonable(params),
            "budgets": dataclasses.asdict(get_config())}


def dispatch(args: argparse.Namespace) -> RunReport:
    """Run the selected subcommand and wrap its payload in a report."""
    start = time.perf_counter()
    try:
        outcome = args.func(args)
    except ConsistencyError as e:
        outcome = Outcome(None, [check(type(e).__name__, False, error=str(e))])
    return RunReport(_config_echo(args), outcome.result, outcome.ledger,
                     time.perf_counter() - start, outcome.table)


def _render(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return dumps(report) + "\n"
    if report.table:
        header, rows = report.table
        return rows_to_csv(header, rows)
    payload = to_jsonable(report.result)
    if isinstance(payload, dict):
        return rows_to_csv(["key", "value"], sorted(payload.items()))
    return rows_to_csv(["value"], [[payload]])


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    try:
        config = load_config(args.env_file)
        if args.num_threads:
            config = dataclasses.replace(config, num_threads=args.num_threads)
        set_config(config)
        args.num_threads = config.num_threads
        level = "DEBUG" if args.verbose else "ERROR" if args.silence else config.log_level
        configure_logging(level)
        report = dispatch(args)
    except (LabError, argparse.ArgumentTypeError) as e:
        print(f"arithlab: error: {e}", file=sys.stderr)
        return 2

    text = _render(report, args.format)
    if args.output:
        with open(args.output, 'w', encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)

    failed = [entry for entry in report.ledger if not entry["passed"]]
    for entry in failed:
        print(f"arithlab: invariant failed: {entry['invariant']}"
              + (f" ({entry['error']})" if entry.get("error") else ""), file=sys.stderr)
    return 1 if failed else 0


if __name__ == '__main__':
    sys.exit(main())
