"""``suspkit`` command-line interface.

Every command prints one JSON object with the keys ``command``, ``inputs``,
``verdict``, ``diagnostics`` and, when there is one, ``witness``.  Exit
codes: 0 decided or valid, 1 decided negative, 2 usage or parse error,
3 missing oracle.  File arguments of the form ``bundled:NAME`` read the
example files shipped with the package.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .abelian import SuspensionDatum, h1_of_presentation
from .errors import CertificateError, ParseError, SuspkitError
from .formats import (format_bass, format_conj, format_splitting, parse_aut, parse_bass,
                      parse_centralizers, parse_conj, parse_cosets, parse_family, parse_grp,
                      parse_iso, parse_splitting, parse_twists, resolve_centralizers)
from .gog import Splitting, collapse_edge, validate_gog
from .gogaut import DehnTwist, GogAutomorphism, act_on_bass, twist_transvection, validate_gog_aut
from .orbit import build_system, decide_aut_orbit
from .suspension import (CONJUGATE, ORACLE_MISSING, build_suspension, check_item4,
                         conjugacy_pipeline, extract_conjugacy, toroidal_witness_search)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    if path.startswith("bundled:"):
        return corpus.read(path[len("bundled:"):])
    with open(path) as fh:
        return fh.read()


def _load(path, parser, *args):
    try:
        return parser(*args, _read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.message}", exc.line, exc.col) from None


def _splitting(path) -> Splitting:
    return _load(path, parse_splitting)


def _element(sp: Splitting, args):
    if getattr(args, "word", None) is not None:
        return sp.pi1.alphabet.parse(args.word)
    if args.element is None:
        raise _Usage("give --element or --word")
    return parse_bass(sp.gog, args.element)


def _result(command, inputs, verdict, witness=None, diagnostics=None, code=EXIT_OK):
    out = {"command": command, "inputs": inputs, "verdict": verdict,
           "diagnostics": list(diagnostics or [])}
    if witness is not None:
        out["witness"] = witness
    return out, code


# -- commands --------------------------------------------------------------

def cmd_h1(args):
    if args.file.endswith(".grp"):
        P = _load(args.file, parse_grp).presentation
    else:
        P = _splitting(args.file).pi1.presentation
    h = h1_of_presentation(P)
    return _result("h1", {"file": args.file}, "computed", h.to_json())


def cmd_delta(args):
    if args.file.endswith(".grp"):
        g = _load(args.file, parse_grp)
        if g.fiber is None or g.transverse is None:
            raise SuspkitError("presentation file has no fiber/transverse lines")
        if args.word is None:
            raise _Usage("give --word for a presentation file")
        d = SuspensionDatum(g.presentation, g.fiber, g.transverse)
        value = d.delta(g.presentation.generators.parse(args.word))
        diags = []
    else:
        sp = _splitting(args.file)
        value = sp.delta(_element(sp, args))
        diags = sp.delta_label_violations()
    return _result("delta", {"file": args.file, "element": args.element, "word": args.word},
                   "computed", {"delta": value}, diags)


def cmd_ncount(args):
    sp = _splitting(args.file)
    x = _element(sp, args)
    edges = [args.edge] if args.edge else sorted(sp.gog.graph.positive)
    counts = {e: sp.ncount(x, e) for e in edges}
    return _result("ncount", {"file": args.file, "element": args.element, "word": args.word},
                   "computed", {"counts": counts})


def cmd_twist_apply(args):
    sp = _splitting(args.file)
    X = sp.gog
    x = _element(sp, args)
    if not hasattr(x, "edges"):
        x = sp.pi1.to_bass(x)
    items = _load(args.twists, parse_twists, X)
    matrices = []
    for it in items:
        phi = it if isinstance(it, GogAutomorphism) else it.automorphism(X)
        bad = validate_gog_aut(phi)
        if bad:
            return _result("twist-apply", {"file": args.file, "twists": args.twists}, "invalid",
                           diagnostics=bad, code=EXIT_NEGATIVE)
        x = act_on_bass(phi, x)
        if isinstance(it, DehnTwist):
            matrices.append(twist_transvection(it, sp))
    return _result("twist-apply", {"file": args.file, "twists": args.twists, "element": args.element},
                   "computed", {"result": format_bass(X, x), "transvections": matrices})


def cmd_validate(args):
    text = _read(args.file)
    try:
        sp = parse_splitting(text)
    except ParseError as exc:
        if exc.message.startswith("invalid graph of groups"):
            return _result("validate", {"file": args.file}, "invalid", diagnostics=[exc.message],
                           code=EXIT_NEGATIVE)
        raise
    diags = validate_gog(sp.gog) + sp.delta_label_violations()
    if args.twists:
        for i, it in enumerate(_load(args.twists, parse_twists, sp.gog)):
            if isinstance(it, DehnTwist):
                diags += it.violations(sp.gog)
                continue
            phi = it if isinstance(it, GogAutomorphism) else it.automorphism(sp.gog)
            diags += [f"item {i + 1}: {d}" for d in validate_gog_aut(phi, args.convention)]
    verdict = "valid" if not diags else "invalid"
    return _result("validate", {"file": args.file, "twists": args.twists}, verdict,
                   diagnostics=diags, code=EXIT_OK if not diags else EXIT_NEGATIVE)


def cmd_collapse(args):
    sp = _splitting(args.file)
    before = sp.pi1.h1.to_json()
    Y = collapse_edge(sp.gog, args.edge)
    out = Splitting(Y)
    after = out.pi1.h1.to_json()
    diags = [] if before == after else ["abelianization changed under collapse"]
    return _result("collapse", {"file": args.file, "edge": args.edge}, "collapsed",
                   {"splitting": format_splitting(out), "h1_before": before, "h1_after": after}, diags)


def cmd_orbit_decide(args):
    sp = _splitting(args.splitting)
    S = resolve_centralizers(sp.gog, _load(args.centralizers, parse_centralizers, sp.gog))
    family = _load(args.family, parse_family, sp)
    reps = _load(args.cosets, parse_cosets, sp) if args.cosets else None
    system = build_system(sp, S, family)
    dec = decide_aut_orbit(sp, S, family, reps)
    inputs = {"splitting": args.splitting, "centralizers": args.centralizers,
              "family": args.family, "cosets": args.cosets}
    sysinfo = {"A": system.A, "b": system.b,
               "unknowns": [[e, sp.gog.vertex_groups[sp.gog.t(e)].format(s)] for e, s in system.unknowns]}
    if dec.decided:
        twists = [{"edge": e, "s": sp.gog.vertex_groups[sp.gog.t(e)].format(s), "r": r}
                  for e, s, r in dec.twists]
        return _result("orbit-decide", inputs, "yes",
                       {"decision": "yes", "coset_index": dec.coset_index, "twists": twists,
                        "system": sysinfo})
    return _result("orbit-decide", inputs, "no",
                   {"decision": "no", "failing_index": dec.failing_row, "system": sysinfo},
                   [f"divisibility test fails at canonical row {dec.failing_row}"]
                   if dec.failing_row is not None else [], code=EXIT_NEGATIVE)


def cmd_suspend(args):
    phi = _load(args.aut, parse_aut)
    S = build_suspension(phi)
    return _result("suspend", {"aut": args.aut}, "computed",
                   {"presentation": S.presentation.format(), "h1": h1_of_presentation(S.presentation).to_json(),
                    "splitting": format_splitting(S.splitting())})


def _iso(args):
    phi1, phi2 = _load(args.phi1, parse_aut), _load(args.phi2, parse_aut)
    return phi1, phi2, _load(args.iso, parse_iso, phi1, phi2)


def cmd_check_iso(args):
    phi1, phi2, cert = _iso(args)
    inputs = {"phi1": args.phi1, "phi2": args.phi2, "iso": args.iso}
    bad = cert.violations()
    if bad:
        return _result("check-iso", inputs, "invalid-certificate", diagnostics=bad, code=EXIT_NEGATIVE)
    res = check_item4(cert)
    witness = {"fiber_degrees": res.fiber_degrees, "transverse_degree": res.transverse_degree,
               "h1_matrix": res.h1_matrix}
    if res.holds:
        return _result("check-iso", inputs, "preserves-fiber-and-orientation", witness)
    return _result("check-iso", inputs, "fails", witness,
                   ["fiber or orientation not preserved"], EXIT_NEGATIVE)


def cmd_extract_conj(args):
    phi1, phi2, cert = _iso(args)
    c = extract_conjugacy(cert)
    return _result("extract-conj", {"phi1": args.phi1, "phi2": args.phi2, "iso": args.iso},
                   "extracted", {"certificate": format_conj(c)})


def cmd_verify_conj(args):
    phi1, phi2 = _load(args.phi1, parse_aut), _load(args.phi2, parse_aut)
    c = _load(args.conj, parse_conj, phi1.domain)
    bad = c.violations(phi1, phi2)
    inputs = {"phi1": args.phi1, "phi2": args.phi2, "conj": args.conj}
    if bad:
        return _result("verify-conj", inputs, "fails", diagnostics=bad, code=EXIT_NEGATIVE)
    return _result("verify-conj", inputs, "verified")


def cmd_toroidal(args):
    phi = _load(args.aut, parse_aut)
    found = toroidal_witness_search(phi, args.max_len, args.max_pow)
    inputs = {"aut": args.aut, "max_len": args.max_len, "max_pow": args.max_pow}
    if found is None:
        return _result("toroidal-search", inputs, "no-witness-within-bounds",
                       diagnostics=["bounded search only; this does not prove atoroidality"],
                       code=EXIT_NEGATIVE)
    w, k = found
    return _result("toroidal-search", inputs, "witness",
                   {"word": phi.domain.format(w), "k": k})


def cmd_pipeline(args):
    phi1, phi2 = _load(args.phi1, parse_aut), _load(args.phi2, parse_aut)
    cert = _load(args.iso, parse_iso, phi1, phi2) if args.iso else None
    sp = _splitting(args.splitting) if args.splitting else None
    S = reps = None
    if sp is not None and args.centralizers:
        S = resolve_centralizers(sp.gog, _load(args.centralizers, parse_centralizers, sp.gog))
    if sp is not None and args.cosets:
        reps = _load(args.cosets, parse_cosets, sp)
    res = conjugacy_pipeline(phi1, phi2, cert, sp, S, reps)
    inputs = {"phi1": args.phi1, "phi2": args.phi2, "iso": args.iso, "splitting": args.splitting,
              "centralizers": args.centralizers, "cosets": args.cosets}
    witness = {"certificate": format_conj(res.certificate)} if res.certificate else None
    code = {CONJUGATE: EXIT_OK, ORACLE_MISSING: EXIT_ORACLE}.get(res.verdict, EXIT_NEGATIVE)
    return _result("pipeline", inputs, res.verdict, witness, res.diagnostics, code)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="suspkit", description=__doc__.splitlines()[0])
    p.add_argument("--human", action="store_true", help="print a readable summary instead of JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("h1", help="abelianization of a presentation or splitting")
    s.add_argument("file")
    s.set_defaults(func=cmd_h1)

    for name, func, help_ in (("delta", cmd_delta, "degree of an element"),
                              ("ncount", cmd_ncount, "signed edge counts of a path element")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--element", help="Bass expression such as '{a} e {}'")
        s.add_argument("--word", help="word in the presentation generators")
        if name == "ncount":
            s.add_argument("--edge")
        s.set_defaults(func=func)

    s = sub.add_parser("twist-apply", help="apply twists or tuples to a path element")
    s.add_argument("file")
    s.add_argument("--twists", required=True)
    s.add_argument("--element")
    s.add_argument("--word")
    s.set_defaults(func=cmd_twist_apply)

    s = sub.add_parser("validate", help="check a splitting and optional twists or tuples")
    s.add_argument("file")
    s.add_argument("--twists")
    s.add_argument("--convention", choices=["terminal", "literal"], default="terminal")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("collapse", help="collapse a non-loop edge")
    s.add_argument("file")
    s.add_argument("--edge", required=True)
    s.set_defaults(func=cmd_collapse)

    s = sub.add_parser("orbit-decide", help="decide the fiber/orientation orbit problem")
    s.add_argument("--splitting", required=True)
    s.add_argument("--centralizers", required=True)
    s.add_argument("--family", required=True)
    s.add_argument("--cosets")
    s.set_defaults(func=cmd_orbit_decide)

    s = sub.add_parser("suspend", help="presentation and splitting of a suspension")
    s.add_argument("aut")
    s.set_defaults(func=cmd_suspend)

    for name, func in (("check-iso", cmd_check_iso), ("extract-conj", cmd_extract_conj)):
        s = sub.add_parser(name)
        s.add_argument("phi1")
        s.add_argument("phi2")
        s.add_argument("iso")
        s.set_defaults(func=func)

    s = sub.add_parser("verify-conj")
    s.add_argument("phi1")
    s.add_argument("phi2")
    s.add_argument("conj")
    s.set_defaults(func=cmd_verify_conj)

    s = sub.add_parser("toroidal-search", help="bounded search for a periodic conjugacy class")
    s.add_argument("aut")
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--max-pow", type=int, default=2)
    s.set_defaults(func=cmd_toroidal)

    s = sub.add_parser("pipeline", help="conjugacy decision from oracle inputs")
    s.add_argument("phi1")
    s.add_argument("phi2")
    s.add_argument("--iso")
    s.add_argument("--splitting")
    s.add_argument("--centralizers")
    s.add_argument("--cosets")
    s.set_defaults(func=cmd_pipeline)
    return p


def _human(out: dict) -> str:
    lines = [f"{out['command']}: {out['verdict']}"]
    for k, v in sorted((out.get("witness") or {}).items()):
        if isinstance(v, str) and "\n" in v:
            lines.append(f"{k}:")
            lines.extend("  " + x for x in v.rstrip().splitlines())
        else:
            lines.append(f"{k}: {v}")
    lines.extend(f"note: {d}" for d in out["diagnostics"])
    return "\n".join(lines)


def run(argv=None) -> tuple:
    """Return ``(exit code, output dict)``."""
    parser = build_parser()
    command = None
    try:
        args = parser.parse_args(argv)
        command = args.command
        out, code = args.func(args)
    except _Usage as exc:
        out, code = _result(command or "usage", {}, "usage-error", diagnostics=[str(exc)], code=EXIT_USAGE)
    except ParseError as exc:
        diag = {"message": exc.message, "line": exc.line, "column": exc.col}
        out, code = _result(command or "usage", {}, "parse-error", diagnostics=[str(exc)], code=EXIT_USAGE)
        out["error"] = diag
    except CertificateError as exc:
        out, code = _result(command or "usage", {}, "invalid-certificate", diagnostics=[str(exc)], code=EXIT_NEGATIVE)
    except (SuspkitError, OSError) as exc:
        out, code = _result(command or "usage", {}, "error", diagnostics=[str(exc)], code=EXIT_USAGE)
    return code, out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    human = "--human" in argv
    code, out = run([a for a in argv if a != "--human"])
    print(_human(out) if human else json.dumps(out, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
