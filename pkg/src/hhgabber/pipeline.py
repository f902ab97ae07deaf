"""End-to-end involutivity check for characteristic ideals and their radicals."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import RadicalMismatchError, RegularityError, UnsupportedError
from .hochhom import criterion_chain
from .idealkit import Ideal, RadicalStrategy, groebner_basis, radical_with_strategy
from .poissoncalc import Bivector, DeformationTable, canonical_symplectic, deformation_class, is_involutive
from .stanza import Problem
from .weylalg import DModulePresentation, characteristic_ideal

EXIT_CODES = {"involutive": 0, "violation": 1, "error": 2, "unsupported": 3}

CLI_STRATEGIES = {
    "auto": "auto",
    "monomial": "monomial",
    "principal": "principal",
    "zerodim": "zero_dimensional",
    "user": "user_supplied",
}


@dataclass
class GabberReport:
    input_digest: str
    status: str
    source: str = "ideal"
    char_ideal: list = field(default_factory=list)
    char_ideal_involutive: object = None
    radical: list | None = None
    radical_strategy: str | None = None
    radical_trusted: bool | None = None
    radical_involutive: object = None
    cross_check: dict | None = None
    alert: str | None = None
    message: str | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "source": self.source,
            "char_ideal": [str(g) for g in self.char_ideal],
            "char_ideal_involutive": _verdict_dict(self.char_ideal_involutive),
            "radical": None
            if self.radical is None
            else {
                "generators": [str(g) for g in self.radical],
                "strategy": self.radical_strategy,
                "trusted": self.radical_trusted,
            },
            "radical_involutive": _verdict_dict(self.radical_involutive),
            "cross_check": self.cross_check,
            "alert": self.alert,
            "message": self.message,
            "input": self.input_digest,
        }


def _verdict_dict(v):
    if v is None:
        return None
    return {
        "verdict": v.verdict,
        "witnesses": [
            {"f": str(w.f), "g": str(w.g), "bracket": str(w.bracket), "normal_form": str(w.normal_form)}
            for w in v.witnesses
        ],
    }


def _digest(ring, ideal_gens=None, ops=None, theta=None):
    problem = Problem(ring)
    if ops is not None:
        problem.dmodules.append(("M", tuple(ops)))
    if ideal_gens is not None:
        problem.ideals.append(("J", tuple(ideal_gens)))
    if theta is not None:
        if ring.cotangent and theta == canonical_symplectic(ring):
            problem.bracket = "canonical"
        elif not theta.is_zero():
            problem.bracket = dict(theta.coefficients)
    problem.checks.append("gabber")
    return problem.echo()


def run_gabber_check(input, strategy: RadicalStrategy = RadicalStrategy(), ring=None, digest=None) -> GabberReport:
    """Characteristic ideal, its radical, and involutivity of both.

    ``input`` is a :class:`DModulePresentation` (canonical bracket on
    k[x, xi]) or a pair ``(Ideal, Bivector)``.
    """
    if isinstance(input, DModulePresentation):
        J = characteristic_ideal(input, ring)
        ring = J.ring
        theta = canonical_symplectic(ring)
        gens = groebner_basis(J)
        J = Ideal(ring, gens)
        source = "dmodule"
        if digest is None:
            digest = _digest(ring, ops=input.generators, theta=theta)
    else:
        J, theta = input
        ring = J.ring
        gens = list(J.generators)
        source = "ideal"
        if digest is None:
            digest = _digest(ring, ideal_gens=gens, theta=theta)

    report = GabberReport(digest, "involutive", source=source, char_ideal=gens)
    report.char_ideal_involutive = is_involutive(J, theta, gens)

    try:
        R, used, trusted = radical_with_strategy(J, strategy)
    except UnsupportedError as err:
        report.status = "unsupported"
        report.message = str(err)
        return report
    except RadicalMismatchError as err:
        report.status = "error"
        report.message = str(err)
        return report
    rgens = list(R.generators)
    report.radical = rgens
    report.radical_strategy = used
    report.radical_trusted = trusted
    report.radical_involutive = is_involutive(R, theta, rgens)
    report.cross_check = _cross_check(theta, rgens, J, report.radical_involutive.involutive)

    bad = not report.char_ideal_involutive.involutive or not report.radical_involutive.involutive
    report.status = "violation" if bad else "involutive"
    if bad and source == "dmodule":
        report.alert = (
            "involutivity violated for a D-module characteristic ideal: "
            "either a kernel bug or a counterexample; see witnesses"
        )
    if report.cross_check.get("performed") and not report.cross_check["consistent"]:
        report.alert = (report.alert + "; " if report.alert else "") + "criterion cross-check disagreement"
    return report


def _cross_check(theta, rgens, J, verdict) -> dict:
    try:
        chain = criterion_chain(theta, rgens, J)
    except RegularityError as err:
        return {"performed": False, "note": f"skipped: {err}"}
    return {
        "performed": True,
        "regular_sequence": [str(g) for g in rgens],
        "eta_zero": chain.eta_zero,
        "contraction_zero": chain.contraction_zero,
        "theta_ch_zero": chain.theta_ch_zero,
        "multiplicity": chain.multiplicity,
        "agree": chain.agree,
        "consistent": chain.agree and chain.eta_zero == verdict,
    }


def problem_bivector(problem: Problem) -> Bivector:
    if problem.bracket == "canonical":
        return canonical_symplectic(problem.ring)
    if isinstance(problem.bracket, dict):
        return deformation_class(DeformationTable(problem.ring, problem.bracket))
    if problem.ring.cotangent:
        return canonical_symplectic(problem.ring)
    raise UnsupportedError("no bracket declared and the ring has no cotangent structure")


def check_problem(problem: Problem, strategy: str | None = None) -> GabberReport:
    """Run the check on a parsed problem; ``strategy`` uses the CLI spellings."""
    if strategy is None:
        strategy = "user" if problem.radical_user is not None else "auto"
    if strategy == "user":
        if problem.radical_user is None:
            return GabberReport(problem.echo(), "error", message="strategy 'user' needs a 'radical user = ...;' stanza")
        strat = RadicalStrategy.user(problem.radical_user)
    else:
        strat = RadicalStrategy(CLI_STRATEGIES[strategy])
    digest = problem.echo()
    if problem.dmodules:
        _, ops = problem.dmodule()
        pres = DModulePresentation(problem.ring.npairs, ops)
        return run_gabber_check(pres, strat, ring=problem.ring, digest=digest)
    if not problem.ideals:
        return GabberReport(digest, "error", message="nothing to check: declare an ideal or a dmodule")
    _, gens = problem.ideal()
    try:
        theta = problem_bivector(problem)
    except UnsupportedError as err:
        return GabberReport(digest, "unsupported", message=str(err))
    return run_gabber_check((Ideal(problem.ring, gens), theta), strat, digest=digest)


def report_render(report: GabberReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    d = report.to_dict()
    lines = [f"status: {d['status']}"]
    lines.append("characteristic ideal: (" + ", ".join(d["char_ideal"]) + ")")
    lines += _verdict_lines("  ", d["char_ideal_involutive"])
    if d["radical"] is not None:
        r = d["radical"]
        trust = "computed" if r["trusted"] else "user-supplied, radicality not verified"
        lines.append("radical: (" + ", ".join(r["generators"]) + f")  [{r['strategy']}; {trust}]")
        lines += _verdict_lines("  ", d["radical_involutive"])
    cc = d["cross_check"]
    if cc is not None:
        if cc["performed"]:
            lines.append(
                "cross-check: eta=0 {eta_zero}, contraction=0 {contraction_zero}, "
                "theta.ch=0 {theta_ch_zero}, agree {agree}".format(**cc)
            )
            if cc["multiplicity"] is not None:
                lines.append(f"  multiplicity: {cc['multiplicity']}")
        else:
            lines.append("cross-check: " + cc["note"])
    if d["alert"]:
        lines.append("ALERT: " + d["alert"])
    if d["message"]:
        lines.append("message: " + d["message"])
    return "\n".join(lines) + "\n"


def _verdict_lines(indent, v):
    if v is None:
        return []
    out = [indent + "verdict: " + v["verdict"]]
    for w in v["witnesses"]:
        out.append(f"{indent}  {{{w['f']}, {w['g']}}} = {w['bracket']}  (normal form {w['normal_form']})")
    return out
