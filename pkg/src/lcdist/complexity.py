"""Complexity exponents of distance-search techniques, in binary units.

A technique that needs ``N ~ 2**(F n)`` steps on length-``n`` codes has
exponent ``F``.  Exponents are compared on the Gilbert-Varshamov bound:
``R = 1 - H_q(delta)`` for classical q-ary codes, ``R = 1 - 2 H_4(delta)``
for generic stabilizer codes and ``R = 1 - 2 H_2(delta)`` for CSS codes.
Re-encoding techniques see a stabilizer code at the effective rate
``(1 + R) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

TECHNIQUES = ("A_sliding", "B_random_window", "C_bipartition", "D_punctured", "LC_linked_cluster")
FAMILIES = ("classical_q", "quantum_generic", "quantum_css")

_ALIASES = {
    "A": "A_sliding",
    "B": "B_random_window",
    "C": "C_bipartition",
    "D": "D_punctured",
    "LC": "LC_linked_cluster",
}


def _technique(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in TECHNIQUES:
        raise ValueError(f"unknown technique {name!r}")
    return name


def _family(name: str) -> str:
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}")
    return name


@dataclass(frozen=True)
class ExponentPoint:
    technique: str
    family: str
    R: float
    delta: float
    F: float
    q: int = 2
    z_eff: float | None = None
    base: int = 2

    def csv_row(self) -> str:
        return f"{self.technique},{self.family},{_fmt(self.R)},{_fmt(self.delta)},{_fmt(self.F)},{self.base}"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def entropy_hq(q: int, x: float) -> float:
    """q-ary entropy ``x log_q(q-1) - x log_q x - (1-x) log_q(1-x)``, with ``0 log 0 = 0``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    h = 0.0
    if x > 0.0:
        h += x * math.log(q - 1) - x * math.log(x)
    if x < 1.0:
        h -= (1.0 - x) * math.log1p(-x)
    return h / math.log(q)


def h2(x: float) -> float:
    return entropy_hq(2, x)


def _bisect(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of an increasing ``f`` on ``[lo, hi]``."""
    flo = f(lo)
    if flo >= 0:
        return lo
    if f(hi) <= 0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gv_delta(family: str, R: float, q: int = 2) -> float:
    """Relative distance on the GV bound for the given family and rate."""
    family = _family(family)
    if not 0.0 <= R <= 1.0:
        raise ValueError(f"rate {R} outside [0, 1]")
    if family == "classical_q":
        top = (q - 1) / q
        return _bisect(lambda d: entropy_hq(q, d) - (1.0 - R), 0.0, top)
    if family == "quantum_generic":
        return _bisect(lambda d: 2.0 * entropy_hq(4, d) - (1.0 - R), 0.0, 0.75)
    return _bisect(lambda d: 2.0 * entropy_hq(2, d) - (1.0 - R), 0.0, 0.5)


def effective_rate(R: float) -> float:
    return (1.0 + R) / 2.0


def lc_exponent(delta: float, z_eff: float) -> tuple[float, float]:
    """``delta (z-1) H_2(1/(z-1))`` with ``z = z_eff``, and its large-``z`` form ``delta log2(e (z-1))``."""
    if z_eff <= 2:
        raise ValueError(f"z_eff must exceed 2, got {z_eff}")
    m = z_eff - 1.0
    return delta * m * h2(1.0 / m), delta * math.log2(math.e * m)


def exponent(
    technique: str,
    family: str,
    R: float,
    delta: float,
    q: int = 2,
    z_eff: float | None = None,
) -> ExponentPoint:
    """Binary complexity exponent of ``technique`` at rate ``R`` and relative distance ``delta``."""
    technique = _technique(technique)
    family = _family(family)
    if not 0.0 <= R <= 1.0:
        raise ValueError(f"rate {R} outside [0, 1]")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"relative distance {delta} outside [0, 1)")
    if family != "classical_q":
        q = 4 if family == "quantum_generic" else 2
    log2q = math.log2(q)
    Rq = effective_rate(R)

    if technique == "LC_linked_cluster":
        if z_eff is None:
            raise ValueError("the linked-cluster exponent needs z_eff")
        F = lc_exponent(delta, z_eff)[0]
    elif technique == "A_sliding":
        if family == "classical_q":
            F = R * entropy_hq(q, delta) * log2q
        elif family == "quantum_generic":
            F = 2.0 * Rq * entropy_hq(4, delta)
        else:
            F = 2.0 * Rq * entropy_hq(2, delta)
    elif technique == "B_random_window":
        rate = R if family == "classical_q" else Rq
        if delta > 1.0 - rate:
            raise ValueError(f"random window needs delta <= 1 - rate ({delta} > {1.0 - rate})")
        inner = delta / (1.0 - rate) if rate < 1.0 else 0.0
        F = h2(delta) - (1.0 - rate) * h2(inner)
    elif technique == "C_bipartition":
        if family == "classical_q":
            F = entropy_hq(q, delta) / 2.0 * log2q
        elif family == "quantum_generic":
            F = entropy_hq(4, delta)
        else:
            F = entropy_hq(2, delta)
    else:
        if family == "classical_q":
            F = entropy_hq(q, delta) * R / (1.0 + R) * log2q
        else:
            hq = entropy_hq(4, delta) if family == "quantum_generic" else entropy_hq(2, delta)
            F = 2.0 * (1.0 + R) / (3.0 + R) * hq
    return ExponentPoint(technique, family, float(R), float(delta), max(F, 0.0), q=q, z_eff=z_eff)


def gv_closed_form(technique: str, family: str, R: float) -> float | None:
    """Closed-form GV exponents where they exist (None otherwise)."""
    technique = _technique(technique)
    family = _family(family)
    if family == "classical_q":
        forms = {
            "A_sliding": R * (1 - R),
            "C_bipartition": (1 - R) / 2,
            "D_punctured": R * (1 - R) / (1 + R),
        }
        return forms.get(technique)
    forms = {
        "A_sliding": (1 - R * R) / 2,
        "C_bipartition": (1 - R) / 2,
        "D_punctured": (1 - R * R) / (3 + R),
    }
    return forms.get(technique)


def gv_exponent_curve(
    technique: str,
    family: str,
    R_grid,
    q: int = 2,
    z_eff: float | None = None,
    check_tol: float = 1e-9,
) -> list[ExponentPoint]:
    """Exponents along the GV bound.

    Where a closed form exists it is reported, after checking that the
    composed value (bisection for delta, then :func:`exponent`) agrees to
    ``check_tol``.
    """
    points = []
    for R in R_grid:
        delta = gv_delta(family, R, q)
        point = exponent(technique, family, R, delta, q=q, z_eff=z_eff)
        closed = gv_closed_form(technique, family, R) if q == 2 or family != "classical_q" else None
        if closed is not None:
            if abs(closed - point.F) > check_tol:
                raise ArithmeticError(
                    f"{point.technique}/{family} at R={R}: composed {point.F} vs closed form {closed}"
                )
            point = replace(point, F=float(closed))
        points.append(point)
    return points


def rate_grid(points: int = 201) -> list[float]:
    if points < 2:
        raise ValueError("a rate grid needs at least two points")
    return [i / (points - 1) for i in range(points)]


def trial_count_T0(n: int, s: int, w: int) -> Fraction:
    """Random-window trial bound ``C(n, w) / C(n - s, w)`` as an exact fraction."""
    if not 0 <= s < n and not (s == 0 and n == 0):
        raise ValueError(f"need 0 <= s < n, got s={s}, n={n}")
    if w > n - s:
        raise ValueError(f"window cannot avoid support: w={w} > n - s = {n - s}")
    return Fraction(math.comb(n, w), math.comb(n - s, w))


def trial_count_estimate(n: int, s: int, w: int) -> float:
    """Small-``w`` approximation ``(n / (n - s))**w``."""
    return (n / (n - s)) ** w


def sliding_list_size(q: int, s: int, v: int) -> int:
    """``(q-1)**v * C(s, v)``: vectors of weight ``v`` on a window of length ``s``."""
    if not 0 <= v <= s:
        raise ValueError(f"need 0 <= v <= s, got v={v}, s={s}")
    return (q - 1) ** v * math.comb(s, v)


def punctured_window_size(n: int, R, quantum: bool = False) -> int:
    """``ceil(2 n R / (1 + R))``, with ``R -> (1 + R)/2`` for stabilizer codes."""
    r = Fraction(R)
    if not 0 <= r <= 1:
        raise ValueError(f"rate {R} outside [0, 1]")
    if quantum:
        r = (1 + r) / 2
    return math.ceil(2 * n * r / (1 + r))


def lc_crossover_rate(z_eff: float) -> float:
    """Rate above which linked clusters beat random windows, from ``1 - R ~ 1/(e z_eff)``.

    Only an order-of-magnitude estimate: the comparison holds up to constants.
    """
    return 1.0 - 1.0 / (math.e * z_eff)


CSV_HEADER = "technique,family,R,delta,F,base"


def curves_csv(points, header_comments=()) -> str:
    lines = [f"# {c}" for c in header_comments]
    lines.append(CSV_HEADER)
    lines += [p.csv_row() for p in points]
    return "\n".join(lines) + "\n"
