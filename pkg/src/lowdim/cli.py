"""Command-line front end.

Every command prints a report with the command, a digest of each input
file, the result, and a verification section in which the postconditions
are re-checked independently.  Exit status: 0 when every check passes,
1 on a failed check or a mathematical failure (e.g. an unsolvable system),
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Any

from . import combing, heegaard, linkgeom, surfaces, surgery
from .exactalg import ParseError, cokernel, smith_normal_form

FORMATS_HELP = """\
file formats (blank lines and lines starting with '#' are ignored):

  matrix     first line "rows cols", then rows*cols integers, row-major,
             separated by any whitespace
  link       "framedlink n=<n>" followed by an n x n matrix; must be symmetric
  script     one move per line, 1-based indices:
               blowup +1|-1
               blowdown <i>
               slide <i> <j> +1|-1     (slide component i over j)
  heegaard   "heegaard g=<g>", a g x g matrix A (row j: intersection numbers
             of curve c_j with meridians m_1..m_g), one line of g framings,
             optionally "linking" followed by a symmetric g x g matrix
  curve      "curve <name> <k>" then k lines "p/q p/q p/q"; a normal field is
             "normal <name>" then k vector lines in the same format
  ledger     "group free <r> torsion <d1> <d2> ..." then lines
               combing <id> euler <coords>
               pair <id> <id> alpha+ <coords> alpha- <coords>
               surgery <id> <id> beta <coords>
             coordinates list torsion residues first, then free coordinates
  surface    tokens o<g> (orientable, genus g) or n<h> (h projective planes)
"""


class Report:
    def __init__(self, command: str, argv: list[str], seed: int):
        self.data: dict[str, Any] = {
            "command": command,
            "argv": argv,
            "seed": seed,
            "inputs": [],
            "result": {},
            "checks": [],
        }
        self.failed = False
        self.exit_code: int | None = None

    def input(self, path: str) -> str:
        raw = Path(path).read_bytes()
        self.data["inputs"].append({"path": path, "sha256": hashlib.sha256(raw).hexdigest()})
        return raw.decode()

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.data["checks"].append({"name": name, "passed": bool(passed), "detail": detail})
        if not passed:
            self.failed = True

    def fail(self, message: str) -> None:
        self.data["error"] = message
        self.failed = True

    @property
    def status(self) -> int:
        if self.exit_code is not None:
            return self.exit_code
        return 1 if self.failed else 0

    def render(self, fmt: str) -> str:
        self.data["status"] = self.status
        if fmt == "json":
            return json.dumps(self.data, indent=2, sort_keys=True)
        out = [f"command: {self.data['command']} {' '.join(self.data['argv'])}".rstrip()]
        for item in self.data["inputs"]:
            out.append(f"input: {item['path']} sha256={item['sha256'][:16]}")
        out.append("result:")
        for key, value in self.data["result"].items():
            if isinstance(value, str) and "\n" in value:
                out.append(f"  {key}:")
                out += [f"    {line}" for line in value.rstrip("\n").splitlines()]
            else:
                out.append(f"  {key}: {value}")
        if "error" in self.data:
            out.append(f"error: {self.data['error']}")
        out.append("verification:")
        for c in self.data["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            out.append(f"  [{mark}] {c['name']}" + (f" ({c['detail']})" if c["detail"] else ""))
        out.append(f"status: {self.status}")
        return "\n".join(out)


def _load_link(rep: Report, path: str) -> surgery.FramedLinkMatrix:
    return surgery.FramedLinkMatrix.from_text(rep.input(path), source=path)


def _load_single_curve(rep: Report, path: str) -> linkgeom.PolyCurve3:
    curves, _ = linkgeom.parse_curve_file(rep.input(path), source=path)
    if len(curves) != 1:
        raise ParseError(f"expected exactly one curve, found {len(curves)}", None, path)
    return curves[0]


def _load_field(rep: Report, path: str) -> linkgeom.NormalField:
    curves, fields = linkgeom.parse_curve_file(rep.input(path), source=path)
    if len(curves) != 1 or curves[0].name not in fields:
        raise ParseError("expected one curve together with its normal field", None, path)
    return fields[curves[0].name]


# ---------------------------------------------------------------------------
# commands


def cmd_evenize(rep: Report, args) -> None:
    F = _load_link(rep, args.link)
    try:
        res = surgery.evenize(F, depth=args.depth, max_stabilizations=args.max_stabilizations,
                              max_components=args.max_components, max_nodes=args.max_nodes)
    except surgery.EvenizeError as exc:
        rep.data["result"] = {"partial_script": exc.partial.to_text()}
        try:
            surgery.apply_script(F, exc.partial)
            legal = True
        except surgery.MoveError:
            legal = False
        rep.check("partial script replays", legal, f"{len(exc.partial)} moves")
        rep.check("even framing reached within budget", False, str(exc))
        rep.fail(f"budget exhausted: {exc}")
        return
    rep.data["result"] = {"phase": res.phase, "moves": len(res.script),
                          "link": res.link.to_text(), "script": res.script.to_text()}
    replayed = surgery.apply_script(F, surgery.MoveScript.from_text(res.script.to_text()))
    rep.check("replay reproduces output", replayed == res.link)
    rep.check("all framings even", not any(f % 2 for f in replayed.framings))
    before, after = cokernel(F.Q), cokernel(replayed.Q)
    rep.check("cokernel preserved", before == after, f"{before} -> {after}")


def cmd_spin_count(rep: Report, args) -> None:
    F = _load_link(rep, args.link)
    count = surgery.spin_structure_count(F)
    rep.data["result"] = {"spin_structures": count}
    homs = 2 ** cokernel(F.Q).two_torsion_rank()
    rep.check("equals |Hom(coker Q, Z/2)|", count == homs, f"{homs}")


def cmd_homology(rep: Report, args) -> None:
    F = _load_link(rep, args.link)
    g = surgery.first_homology(F)
    rep.data["result"] = {"H1": g.describe(), "free_rank": g.free_rank, "torsion": list(g.torsion)}
    U, D, V = smith_normal_form(F.Q)
    rep.check("U Q V = D", U @ F.Q @ V == D and D.is_diagonal())
    rep.check("|det U| = |det V| = 1", abs(U.det()) == 1 and abs(V.det()) == 1)


def cmd_char_sublink(rep: Report, args) -> None:
    F = _load_link(rep, args.link)
    cs = surgery.characteristic_solutions(F)
    rep.data["result"] = {"indicator": list(cs.x), "kernel": [list(k) for k in cs.kernel],
                          "solutions": cs.count()}
    rep.check("Q x = diag(Q) mod 2", surgery.is_characteristic(F.Q, cs.x))
    rep.check("kernel vectors annihilated",
              all(not any(row) for k in cs.kernel
                  for row in [[sum(a * b for a, b in zip(r, k)) % 2 for r in F.Q.entries]]))


def cmd_parity(rep: Report, args) -> None:
    F = _load_link(rep, args.link)
    parity, even = surgery.handle_parity(F)
    rep.data["result"] = {"parity": list(parity), "all_even": even}
    rep.check("parity matches framings", list(parity) == [f % 2 for f in F.framings])


def cmd_replay(rep: Report, args) -> None:
    F = _load_link(rep, args.link)
    script = surgery.MoveScript.from_text(rep.input(args.script), source=args.script)
    try:
        out = surgery.apply_script(F, script)
    except surgery.MoveError as exc:
        rep.data["result"] = {"failed_move": exc.position}
        rep.check("every move legal", False, str(exc))
        rep.fail(str(exc))
        return
    rep.data["result"] = {"link": out.to_text()}
    rep.check("symmetric", out.Q.is_symmetric())
    rep.check("cokernel preserved", cokernel(out.Q) == cokernel(F.Q),
              f"{cokernel(F.Q)} -> {cokernel(out.Q)}")


def cmd_heegaard(rep: Report, args) -> None:
    P = heegaard.HeegaardTwistProblem.from_text(rep.input(args.problem), source=args.problem)
    sol = heegaard.solve_twists(P)
    if not sol.solvable:
        rep.data["result"] = {"solvable": False, "certificate": list(sol.certificate)}
        y = sol.certificate
        ok = all(sum(y[j] * P.A[j, i] for j in range(P.g)) % 2 == 0 for i in range(P.g)) \
            and sum(a * b for a, b in zip(y, P.f)) % 2 == 1
        rep.check("certificate: y A = 0 and y f = 1 mod 2", ok)
        rep.fail("no twist vector makes all framings even")
        return
    framings = heegaard.apply_twists(P, sol.x)
    link = heegaard.to_framed_link(P, sol.x)
    rep.data["result"] = {"solvable": True, "twists": list(sol.x),
                          "kernel": [list(k) for k in sol.kernel],
                          "framings": list(framings), "link": link.to_text()}
    rep.check("all framings even", not any(f % 2 for f in framings))
    rep.check("framed link passes parity test", surgery.handle_parity(link)[1])


def cmd_link(rep: Report, args) -> None:
    k1 = _load_single_curve(rep, args.first)
    k2 = _load_single_curve(rep, args.second)
    lk = linkgeom.linking_number(k1, k2)
    gauss = linkgeom.gauss_linking(k1, k2)
    rep.data["result"] = {"linking_number": lk, "gauss_integral": round(gauss, 6)}
    rep.check("|gauss - lk| < 0.1", abs(gauss - lk) < 0.1, f"{gauss:.6f}")
    dirs = linkgeom.generic_directions(k1, k2, 3)
    counts = [linkgeom.crossing_linking(k1, k2, d) for d in dirs]
    rep.check("3 projections agree", len(set(counts)) == 1, str(counts))


def cmd_selflink(rep: Report, args) -> None:
    field = _load_field(rep, args.curve)
    sl = linkgeom.self_linking(field)
    rep.data["result"] = {"self_linking": sl}
    push = linkgeom.pushoff(field)
    gauss = linkgeom.gauss_linking(field.curve, push)
    rep.check("gauss integral agrees", abs(gauss - sl) < 0.1, f"{gauss:.6f}")


def cmd_extends(rep: Report, args) -> None:
    field = _load_field(rep, args.curve)
    sl = linkgeom.self_linking(field)
    ext = linkgeom.extends_over_seifert(field)
    rep.data["result"] = {"self_linking": sl, "extends": ext}
    rep.check("agrees with SO(3) loop class on a disk (chi = 1)",
              ext == (linkgeom.so3_loop_class(1, sl) == 0))


def cmd_surface(rep: Report, args) -> None:
    for tok in args.surfaces:
        s = surfaces.ClosedSurface.parse(tok)
        t1, t2 = surfaces.pairing_terms(s)
        p = surfaces.pairing_w_Fv(s)
        rep.data["result"][tok] = {"euler_characteristic": surfaces.euler_characteristic(s),
                                   "terms": [t1, t2], "pairing": p}
        rep.check(f"{tok}: terms sum to the pairing", (t1 + t2) % 2 == p)
        rep.check(f"{tok}: pairing vanishes", p == 0)


def cmd_ledger(rep: Report, args) -> None:
    L = combing.CombingLedger.from_text(rep.input(args.ledger), source=args.ledger)
    problems = combing.validate(L)
    rep.check("ledger invariants", not problems, "; ".join(problems))
    if problems:
        rep.data["result"] = {"violations": problems}
        return
    base = L.base
    par, witness = combing.is_parallelizable(L)
    rep.data["result"] = {"group": L.group.describe(), "base": base,
                          "base_euler": list(L.euler[base].coords), "parallelizable": par,
                          "witness": witness}
    if par:
        rep.check("witness has zero Euler class", L.euler[witness].is_zero())
        rep.check("ledger still consistent", not combing.validate(L))
    if args.write:
        Path(args.write).write_text(L.to_text())
        rep.data["result"]["written"] = args.write


COMMANDS = {
    "evenize": (cmd_evenize, "find Kirby moves making all framings even", ["link"]),
    "spin-count": (cmd_spin_count, "count spin structures of the surgered manifold", ["link"]),
    "homology": (cmd_homology, "first homology (cokernel of the linking matrix)", ["link"]),
    "char-sublink": (cmd_char_sublink, "characteristic sublinks", ["link"]),
    "parity": (cmd_parity, "framing parities / parallelizability of the 4-manifold", ["link"]),
    "replay": (cmd_replay, "apply a move script to a link", ["link", "script"]),
    "heegaard-solve": (cmd_heegaard, "solve the meridian twist system", ["problem"]),
    "link": (cmd_link, "linking number of two polygonal curves", ["first", "second"]),
    "selflink": (cmd_selflink, "self-linking of a curve with a normal field", ["curve"]),
    "extends": (cmd_extends, "does the framing extend over a Seifert surface", ["curve"]),
    "surface": (cmd_surface, "mod-2 pairing on closed surfaces", []),
    "ledger": (cmd_ledger, "validate a combing ledger and test parallelizability", ["ledger"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized procedures (default 0)")
    parser = argparse.ArgumentParser(
        prog="lowdim", description="Exact computations with framed links, spin structures, "
        "combings and polygonal curves.", epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)
    for name, (_, help_text, positionals) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                           epilog=FORMATS_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
        for pos in positionals:
            p.add_argument(pos)
        if name == "evenize":
            p.add_argument("--depth", type=int, default=12)
            p.add_argument("--max-stabilizations", type=int, default=2)
            p.add_argument("--max-components", type=int, default=6)
            p.add_argument("--max-nodes", type=int, default=50_000)
        if name == "surface":
            p.add_argument("surfaces", nargs="+", metavar="surface")
        if name == "ledger":
            p.add_argument("--write", metavar="PATH", help="write the updated ledger here")
    return parser


def dispatch(argv: list[str] | None = None) -> Report:
    """Run one command and print its report; the exit status is ``report.status``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        rep = Report(argv[0] if argv else "", argv[1:], 0)
        rep.exit_code = int(exc.code or 0)
        return rep
    rep = Report(args.command, argv[1:], args.seed)
    try:
        COMMANDS[args.command][0](rep, args)
    except (ParseError, OSError) as exc:
        rep.fail(str(exc))
        rep.exit_code = 2
        print(f"error: {exc}", file=sys.stderr)
        return rep
    except linkgeom.GeometryError as exc:
        rep.fail(f"degenerate input: {exc}")
    except ValueError as exc:
        rep.fail(str(exc))
        rep.exit_code = 2
        print(f"error: {exc}", file=sys.stderr)
        return rep
    print(rep.render(args.format))
    return rep


def main(argv: list[str] | None = None) -> int:
    return dispatch(argv).status


if __name__ == "__main__":
    sys.exit(main())
