"""Formal graded obstruction systems attached to one half of a root system.

The algebra has an odd degree-one generator phi_a and an even degree-two
generator psi_a for every root a in the chosen half, with the differential
delta(phi_a) = psi_a, delta(psi_a) = 0 extended by the graded Leibniz rule.
The connection-style operator D = delta + sum_a phi_a . ad(x_a) acts on forms
valued in the Lie algebra; its square is form-linear, and expanding it column
by column produces one even quadratic form E_a per root of the half:

    E_a = psi_a + sum over unordered pairs b < g with b + g = a of
          n_{b,g} phi_b phi_g.

The build computes D^2 honestly by double application, extracts each E_a from
the Cartan columns by exact division, checks the remainder against every
column (CancellationFailure otherwise), and then asserts the closed formula
above against the extracted system.  The E_a satisfy the Bianchi-type
identity checked by check_bianchi, and certify_solvability matches them
against an H^2 vanishing oracle: classes of height two and above must vanish,
classes of height one are recorded as nontriviality requirements on the
target.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .chevalley import ChevalleyConstants, _pair_bracket_table
from .errors import CancellationFailure, IncompleteOracle
from .report import VerificationReport
from .roots import LatticeVector, RootSystem

Coords = tuple[int, ...]
Monomial = tuple[tuple[Coords, ...], tuple[Coords, ...]]


def _root_key(c: Coords) -> tuple[int, Coords]:
    # canonical generator order: height of the underlying class, then coords
    return (abs(sum(c)), c)


def _merge_phis(a: tuple[Coords, ...], b: tuple[Coords, ...]):
    """Concatenate two sorted odd blocks; None on a repeat, else (tuple, sign)."""
    out: list[Coords] = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        ka, kb = _root_key(a[i]), _root_key(b[j])
        if ka == kb:
            return None
        if ka < kb:
            out.append(a[i])
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


class FormalForm:
    """Integer combination of monomials in the phi (odd) and psi (even)
    generators, keyed by canonically sorted generator blocks."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None) -> None:
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls) -> "FormalForm":
        return cls()

    @classmethod
    def one(cls) -> "FormalForm":
        return cls({((), ()): 1})

    @classmethod
    def phi(cls, c: Coords) -> "FormalForm":
        return cls({((tuple(c),), ()): 1})

    @classmethod
    def psi(cls, c: Coords) -> "FormalForm":
        return cls({((), (tuple(c),)): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormalForm) and other.terms == self.terms

    def __add__(self, other: "FormalForm") -> "FormalForm":
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                del out[k]
        return FormalForm(out)

    def __neg__(self) -> "FormalForm":
        return FormalForm({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "FormalForm") -> "FormalForm":
        return self + (-other)

    def scale(self, k: int) -> "FormalForm":
        if k == 0:
            return FormalForm()
        return FormalForm({m: k * v for m, v in self.terms.items()})

    def __mul__(self, other: "FormalForm") -> "FormalForm":
        out: dict[Monomial, int] = {}
        for (pa, sa), va in self.terms.items():
            for (pb, sb), vb in other.terms.items():
                merged = _merge_phis(pa, pb)
                if merged is None:
                    continue
                phis, sign = merged
                psis = tuple(sorted(sa + sb, key=_root_key))
                key = (phis, psis)
                nv = out.get(key, 0) + sign * va * vb
                if nv:
                    out[key] = nv
                else:
                    del out[key]
        return FormalForm(out)

    def differential(self) -> "FormalForm":
        """delta: phi_a -> psi_a, psi_a -> 0, with graded Leibniz signs."""
        out: dict[Monomial, int] = {}
        for (phis, psis), coeff in self.terms.items():
            for i, c in enumerate(phis):
                s = -coeff if i % 2 else coeff
                key = (
                    phis[:i] + phis[i + 1 :],
                    tuple(sorted(psis + (c,), key=_root_key)),
                )
                nv = out.get(key, 0) + s
                if nv:
                    out[key] = nv
                else:
                    del out[key]
        return FormalForm(out)

    def substitute_psi(self, mapping: dict[Coords, "FormalForm"]) -> "FormalForm":
        """Replace each psi_c by mapping[c] (even forms, so no sign budget)."""
        total = FormalForm()
        for (phis, psis), coeff in self.terms.items():
            part = FormalForm({(phis, ()): coeff})
            for c in psis:
                part = part * mapping.get(c, FormalForm.psi(c))
            total = total + part
        return total

    def max_degree(self) -> int:
        return max(
            (len(p) + 2 * len(s) for p, s in self.terms), default=0
        )

    def __repr__(self) -> str:
        return form_text(self)


def _monomial_text(mono: Monomial) -> str:
    phis, psis = mono
    bits = [f"psi[{','.join(map(str, c))}]" for c in psis]
    bits += [f"phi[{','.join(map(str, c))}]" for c in phis]
    return "".join(bits) if bits else "1"


def form_text(form: FormalForm) -> str:
    """Deterministic rendering: psi blocks first, then phi blocks, key order."""
    if form.is_zero():
        return "0"
    def order(item):
        (phis, psis), _ = item
        return (
            len(phis),
            tuple(_root_key(c) for c in phis),
            tuple(_root_key(c) for c in psis),
        )
    parts = []
    for (mono, coeff) in sorted(form.terms.items(), key=order):
        sign = "-" if coeff < 0 else "+"
        mag = "" if abs(coeff) == 1 else f"{abs(coeff)}*"
        parts.append((sign, f"{mag}{_monomial_text(mono)}"))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class Half(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass
class ObstructionSystem:
    """The extracted obstruction forms E_a for every root of one half."""

    constants: ChevalleyConstants
    half: Half
    roots: tuple[LatticeVector, ...]
    obstructions: dict[Coords, FormalForm]

    @property
    def system(self) -> RootSystem:
        return self.constants.system


def half_roots(rs: RootSystem, half: Half) -> tuple[LatticeVector, ...]:
    base = rs.positive_roots if half is Half.POSITIVE else [-a for a in rs.positive_roots]
    return tuple(sorted(base, key=lambda r: _root_key(r.coords)))


def build_system(constants: ChevalleyConstants, half: Half) -> ObstructionSystem:
    """Expand D^2 column by column and extract the obstruction forms.

    Raises CancellationFailure when the expansion does not reduce to
    sum_a E_a ad(x_a) exactly, and asserts the closed quadratic formula
    against the extracted forms.
    """
    rs = constants.system
    rank = rs.rank
    roots = half_roots(rs, half)
    btable = _pair_bracket_table(constants)
    dim = rank + len(rs.all_roots)
    half_idx = [(r.coords, rank + rs.root_order_index(r)) for r in roots]

    def apply_d(elem: dict) -> dict:
        out: dict = {}

        def add(key, v):
            if v:
                nv = out.get(key, 0) + v
                if nv:
                    out[key] = nv
                else:
                    del out[key]

        for (mono, g), coeff in elem.items():
            phis, psis = mono
            for i, c in enumerate(phis):
                s = -coeff if i % 2 else coeff
                add(
                    (
                        (
                            phis[:i] + phis[i + 1 :],
                            tuple(sorted(psis + (c,), key=_root_key)),
                        ),
                        g,
                    ),
                    s,
                )
            for c_alpha, ia in half_idx:
                merged = _merge_phis((c_alpha,), phis)
                if merged is None:
                    continue
                nphis, sign = merged
                for t, ct in btable[ia][g]:
                    add(((nphis, psis), t), coeff * sign * ct)
        return out

    def squared_column(g: int) -> dict:
        return apply_d(apply_d({(((), ()), g): 1}))

    # extract E_a from the Cartan columns: ad(x_a) h_k = -(a, a_k) x_a
    h_cols = [squared_column(k) for k in range(rank)]
    obstructions: dict[Coords, FormalForm] = {}
    for alpha in roots:
        ia = rank + rs.root_order_index(alpha)
        k = next(
            k for k in range(rank) if rs.pairing(alpha, rs.simple_roots[k]) != 0
        )
        denom = -rs.pairing(alpha, rs.simple_roots[k])
        picked: dict[Monomial, int] = {}
        for (mono, g), v in h_cols[k].items():
            if g == ia:
                if v % denom:
                    raise CancellationFailure(
                        f"{rs.name} {half.value}: column h{k + 1} is not divisible "
                        f"by {denom} at class {alpha}"
                    )
                picked[mono] = v // denom
        obstructions[alpha.coords] = FormalForm(picked)

    # stream the remainder check over every basis column
    for g in range(dim):
        d2 = h_cols[g] if g < rank else squared_column(g)
        expected: dict = {}
        for c_alpha, ia in half_idx:
            for t, ct in btable[ia][g]:
                for mono, v in obstructions[c_alpha].terms.items():
                    key = (mono, t)
                    nv = expected.get(key, 0) + v * ct
                    if nv:
                        expected[key] = nv
                    else:
                        del expected[key]
        if d2 != expected:
            raise CancellationFailure(
                f"{rs.name} {half.value}: D^2 does not reduce to the "
                f"obstruction action on column {g}"
            )

    # independent route: the closed quadratic formula must agree exactly
    closed = {r.coords: FormalForm.psi(r.coords) for r in roots}
    for i, beta in enumerate(roots):
        for gamma in roots[i + 1 :]:
            s = beta + gamma
            if rs.is_root(s):
                term = FormalForm.phi(beta.coords) * FormalForm.phi(gamma.coords)
                closed[s.coords] = closed[s.coords] + term.scale(
                    constants.n(beta, gamma)
                )
    assert closed == obstructions  # double expansion against direct folding

    return ObstructionSystem(constants, half, roots, obstructions)


def check_bianchi(system: ObstructionSystem) -> VerificationReport:
    """Differentiate each obstruction form and close the result by replacing
    psi_c with psi_c - E_c; the residual must vanish identically."""
    rep = VerificationReport(
        name=f"bianchi-{system.system.name}-{system.half.value}"
    )
    mapping = {
        c: FormalForm.psi(c) - form for c, form in system.obstructions.items()
    }
    for alpha in system.roots:
        rep.checked += 1
        resid = system.obstructions[alpha.coords].differential().substitute_psi(
            mapping
        )
        if not resid.is_zero():
            rep.violations.append(
                f"class {alpha}: residual {form_text(resid)}"
            )
    return rep


@dataclass(frozen=True)
class H2VanishVerdict:
    """One oracle answer: whether H^2 vanishes for the given root class."""

    root: LatticeVector
    vanishes: bool
    source: str
    detail: str = ""


@dataclass(frozen=True)
class SolvabilityCertificate:
    """Outcome of matching an obstruction system against an H^2 oracle.

    Classes of height two and above are solvable iff their H^2 vanishes;
    requirements lists the height-one classes, whose first-order obstruction
    must instead act nontrivially on the target for the system to deform.
    """

    system_name: str
    half: str
    solvable: bool
    verdicts: tuple[H2VanishVerdict, ...]
    requirements: tuple[LatticeVector, ...]


def certify_solvability(system: ObstructionSystem, oracle) -> SolvabilityCertificate:
    """oracle(root) -> H2VanishVerdict | bool; None means it cannot answer."""
    rs = system.system
    verdicts: list[H2VanishVerdict] = []
    requirements: list[LatticeVector] = []
    for alpha in system.roots:
        if rs.height(alpha) < 2:
            requirements.append(alpha)
            continue
        answer = oracle(alpha)
        if answer is None:
            raise IncompleteOracle(f"oracle cannot decide H^2 for {alpha}")
        if isinstance(answer, bool):
            answer = H2VanishVerdict(root=alpha, vanishes=answer, source="oracle")
        verdicts.append(answer)
    return SolvabilityCertificate(
        system_name=rs.name,
        half=system.half.value,
        solvable=all(v.vanishes for v in verdicts),
        verdicts=tuple(verdicts),
        requirements=tuple(requirements),
    )


def system_text(system: ObstructionSystem) -> str:
    """Stable text rendering, one obstruction form per line."""
    lines = [f"# obstruction system {system.system.name} {system.half.value}"]
    for alpha in system.roots:
        coords = ",".join(map(str, alpha.coords))
        lines.append(f"({coords}): {form_text(system.obstructions[alpha.coords])}")
    return "\n".join(lines) + "\n"
