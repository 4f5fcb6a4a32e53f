"""Command-line front end.

Every command prints one canonical JSON document (or a flat text rendering)
and exits with 0 on success, 1 when a verification fails, 2 on bad input
and 3 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import __version__
from .action import action_from_json, is_admissible, singular_subcomplex, transport_to_subdivision
from .complex import (
    Cover,
    SimplicialComplex,
    barycentric_subdivision,
    flag_from_graph,
    is_flag,
    is_flag_no_square,
    is_full_subcomplex,
    nerve_of_cover,
)
from .config import Caps
from .coxeter import coxeter_from_flag, quotient_dumps, quotient_from_json
from .davis import (
    davis_quotient,
    family_singular_subcomplex,
    relative_splitting_maps,
    sing_subcomplex,
    splitting_maps,
    theorem1_certificate,
)
from .errors import DavisForgeError, InputError
from .homology import Coefficients, chain_complex_of, cohomology, homology, relative_chain_complex


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text(doc, prefix="") -> list:
    lines = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            lines += _text(doc[k], f"{prefix}{k}.")
    elif isinstance(doc, list) and any(isinstance(x, (dict, list)) for x in doc):
        for i, x in enumerate(doc):
            lines += _text(x, f"{prefix}{i}.")
    else:
        lines.append(f"{prefix[:-1]}: {json.dumps(doc, ensure_ascii=False)}")
    return lines


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple = ()
    p: int = 0
    caps: Caps = field(default_factory=Caps)
    fmt: str = "json"
    output: str | None = None

    def __post_init__(self):
        Coefficients(self.p)
        if self.fmt not in ("json", "text"):
            raise InputError("PARSE_ERROR", f"unknown format {self.fmt!r}")

    def render(self, doc) -> str:
        return canonical_json(doc) if self.fmt == "json" else "\n".join(_text(doc)) + "\n"


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError("PARSE_ERROR", f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError("PARSE_ERROR", f"{path}: {e}") from None


def load_complex(path) -> SimplicialComplex:
    return SimplicialComplex.from_json(_read_json(path))


def load_quotient(L, source, caps):
    sys_ = coxeter_from_flag(L)
    if Path(source).is_file():
        return quotient_from_json(sys_, _read_json(source), caps)
    return quotient_from_json(sys_, {"builtin": source}, caps)


def _write(path, text):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


# -- commands -------------------------------------------------------------------

def cmd_homology(cfg, args):
    X = load_complex(args.complex)
    coeffs = Coefficients(cfg.p)
    if args.sub:
        A = load_complex(args.sub)
        C = relative_chain_complex(X, A, reduced=args.reduced)
    else:
        C = chain_complex_of(X, reduced=args.reduced)
    H = cohomology(C, coeffs) if args.cohomology else homology(C, coeffs)
    return {
        "coefficients": str(coeffs),
        "kind": "cohomology" if args.cohomology else "homology",
        "relative": bool(args.sub),
        "reduced": args.reduced,
        "groups": H.to_json(),
        "summary": str(H),
    }, 0


def cmd_flag(cfg, args):
    X = load_complex(args.complex)
    flag = is_flag(X)
    doc = {"flag": flag, "flag_no_square": is_flag_no_square(X) if flag else False}
    if args.completion:
        doc["completion"] = flag_from_graph(X.graph()).to_json()
    return doc, 0


def cmd_subdivide(cfg, args):
    X = load_complex(args.complex)
    sd = barycentric_subdivision(X)
    doc = {"complex": sd.complex.to_json(), "f_vector": list(sd.complex.f_vector())}
    if args.action:
        act = action_from_json(X, _read_json(args.action))
        doc["action"] = transport_to_subdivision(act, sd).to_json()
    return doc, 0


def cmd_davis(cfg, args):
    L = load_complex(args.complex)
    Q = load_quotient(L, args.quotient, cfg.caps)
    D = davis_quotient(coxeter_from_flag(L), Q, cfg.caps)
    X = D.complex
    doc = {
        "quotient_order": Q.order,
        "f_vector": list(X.f_vector()),
        "vertex_count_formula": D.expected_vertex_count(),
        "homology": homology(chain_complex_of(X)).to_json(),
        "sing_f_vector": list(sing_subcomplex(D).f_vector()),
    }
    if args.emit:
        doc["complex"] = X.to_json()
    return doc, 0


def cmd_certify(cfg, args):
    L = load_complex(args.complex)
    act = action_from_json(L, _read_json(args.action))
    Q = load_quotient(L, args.quotient, cfg.caps)
    cert = theorem1_certificate(L, act, Q, barycenter=args.barycenter, strict=args.strict, caps=cfg.caps)
    return cert, 0 if cert["verified"] else 1


def cmd_splitting(cfg, args):
    L = load_complex(args.complex)
    Q = load_quotient(L, args.quotient, cfg.caps)
    D = davis_quotient(coxeter_from_flag(L), Q, cfg.caps)
    doc = {"absolute": splitting_maps(D).verify()}
    if args.sub:
        doc["relative"] = relative_splitting_maps(D, load_complex(args.sub)).verify()
    ok = all(v for part in doc.values() for v in part.values())
    doc["ok"] = ok
    return doc, 0 if ok else 1


def cmd_singular(cfg, args):
    L = load_complex(args.complex)
    act = action_from_json(L, _read_json(args.action))
    if not is_admissible(act):
        raise InputError("NOT_ADMISSIBLE", "action is not admissible; run subdivide first")
    K = singular_subcomplex(act)
    doc = {"singular": K.to_json(), "f_vector": list(K.f_vector()), "full": is_full_subcomplex(L, K)}
    if args.quotient:
        Q = load_quotient(L, args.quotient, cfg.caps)
        D = davis_quotient(coxeter_from_flag(L), Q, cfg.caps)
        doc["sigma_w_sing_f_vector"] = list(family_singular_subcomplex(D, act).f_vector())
    return doc, 0


def cmd_nerve(cfg, args):
    from .pi1 import nerve_homology_comparison

    cover = Cover.from_json(_read_json(args.cover))
    doc = {"nerve": nerve_of_cover(cover).to_json()}
    try:
        doc.update(nerve_homology_comparison(cover))
        doc["applicable"] = True
    except InputError as e:
        if e.code != "INAPPLICABLE_COVER":
            raise
        doc.update({"applicable": False, "reason": e.message})
        return doc, 0
    return doc, 0 if doc["equal"] else 1


def cmd_pi1(cfg, args):
    from .pi1 import Presentation, presentation_from_two_complex, simplify, todd_coxeter

    doc = _read_json(args.file)
    if isinstance(doc, dict) and "maximal_simplices" in doc:
        pres = presentation_from_two_complex(SimplicialComplex.from_json(doc), args.base)
    else:
        pres = Presentation.from_json(doc)
    small = simplify(pres)
    order = todd_coxeter(small, max_cosets=cfg.caps.cosets)
    return {
        "generators": len(pres.generators),
        "relators": len(pres.relators),
        "simplified_generators": len(small.generators),
        "order": order,
    }, 0


def _example_files(name):
    from .examples import gallery_covers, gallery_instance, poincare_two_skeleton
    from .coxeter import parity_quotient
    from .pi1 import presentation_from_two_complex

    if name == "poincare":
        L, act = poincare_two_skeleton()
        Q = parity_quotient(coxeter_from_flag(L))
        return {
            "poincare_complex.json": L.dumps(),
            "poincare_action.json": act.dumps(),
            "poincare_quotient.json": quotient_dumps(Q),
            "poincare_presentation.json": presentation_from_two_complex(L).dumps(),
        }
    covers = gallery_covers()
    if name in covers:
        return {f"{name}_cover.json": canonical_json(covers[name].to_json())}
    inst = gallery_instance(name)
    return {
        f"{name}_complex.json": inst.complex.dumps(),
        f"{name}_action.json": inst.action.dumps(),
        f"{name}_quotient.json": quotient_dumps(inst.quotient),
    }


def cmd_example(cfg, args):
    from .examples import gallery, gallery_covers

    names = list(args.name)
    if names and names[0] == "export":
        names = names[1:]
    if not names or names == ["list"]:
        return {
            "examples": ["poincare"] + [g.name for g in gallery()],
            "covers": sorted(gallery_covers()),
        }, 0
    written = []
    for name in names:
        for fname, text in _example_files(name).items():
            path = Path(args.out) / fname
            _write(path, text)
            written.append(str(path))
    return {"written": written}, 0


def cmd_export(cfg, args):
    from .pi1 import presentation_from_two_complex

    L = load_complex(args.complex)
    if args.kind == "presentation":
        text = presentation_from_two_complex(L, args.base).dumps()
    elif args.kind in ("davis", "sing"):
        if not args.quotient:
            raise InputError("PARSE_ERROR", "--quotient is required")
        Q = load_quotient(L, args.quotient, cfg.caps)
        D = davis_quotient(coxeter_from_flag(L), Q, cfg.caps)
        text = (D.complex if args.kind == "davis" else sing_subcomplex(D)).dumps()
    else:  # subdivision
        text = barycentric_subdivision(L).complex.dumps()
    if args.out:
        _write(args.out, text)
        return {"written": [args.out]}, 0
    return json.loads(text), 0


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def common(defaults: bool) -> argparse.ArgumentParser:
        # options accepted before or after the subcommand
        kw = {} if defaults else {"default": argparse.SUPPRESS}
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=["json", "text"], **(kw or {"default": "json"}))
        p.add_argument("--output", "-o", help="write the report here instead of stdout", **kw)
        p.add_argument("--p", type=int, help="coefficients F_p (0 for Z)", **(kw or {"default": 0}))
        p.add_argument("--max-cosets", type=int, help="coset table cap", **kw)
        return p

    parser = argparse.ArgumentParser(
        prog="davis-forge", description=__doc__.splitlines()[0], parents=[common(True)]
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    shared = common(False)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[shared], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("homology", help="(co)homology of a complex or pair")
    p.add_argument("complex")
    p.add_argument("--sub", help="subcomplex file for relative groups")
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("flag", help="flag and flag-no-square tests")
    p.add_argument("complex")
    p.add_argument("--completion", action="store_true", help="also emit the flag complex of the 1-skeleton")
    p.set_defaults(func=cmd_flag)

    p = sub.add_parser("subdivide", help="barycentric subdivision, optionally with an action")
    p.add_argument("complex")
    p.add_argument("--action")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("davis", help="build Σ/N")
    p.add_argument("complex")
    p.add_argument("--quotient", required=True, help="built-in name or quotient JSON file")
    p.add_argument("--emit", action="store_true", help="include the complex in the report")
    p.set_defaults(func=cmd_davis)

    p = sub.add_parser("certify", help="dimension certificate for N ⋊ Q")
    p.add_argument("complex")
    p.add_argument("action")
    p.add_argument("--quotient", required=True)
    p.add_argument("--barycenter")
    p.add_argument("--strict", action="store_true", help="require L acyclic")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("splitting-check", help="verify ψ and φ")
    p.add_argument("complex")
    p.add_argument("--quotient", required=True)
    p.add_argument("--sub", help="subcomplex K for the relative maps")
    p.set_defaults(func=cmd_splitting)

    p = sub.add_parser("singular", help="singular subcomplex of an action")
    p.add_argument("complex")
    p.add_argument("action")
    p.add_argument("--quotient")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("nerve", help="nerve of a cover and homology comparison")
    p.add_argument("cover")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("pi1", help="order of π1 of a 2-complex or presented group")
    p.add_argument("file")
    p.add_argument("--base")
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("example", help="export example and gallery files")
    p.add_argument("name", nargs="*")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("export", help="derived complexes and presentations as files")
    p.add_argument("kind", choices=["presentation", "davis", "sing", "subdivision"])
    p.add_argument("complex")
    p.add_argument("--quotient")
    p.add_argument("--base")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        caps = Caps.from_env()
        if args.max_cosets is not None:
            caps = replace(caps, cosets=args.max_cosets)
        cfg = RunConfig(args.command, (), args.p, caps, args.format, args.output)
        doc, code = args.func(cfg, args)
    except DavisForgeError as e:
        sys.stderr.write(canonical_json({"error": e.code, "message": e.message}))
        return e.exit_code
    text = cfg.render(doc)
    if cfg.output:
        _write(cfg.output, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
