"""Executable checkers for the toolkit's inequalities and identities.

Every checker builds both sides of its statement, decides `holds` with
tolerance 0 on exact inputs (inequalities are raised to integer powers to
stay rational) or 1e-9 relative in float mode, and reports the margin.
Hypothesis flags are recorded, never enforced: a checker always runs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .config import check_budget
from .energies import energy, multi_scalar_product, uniformity_report
from .functions import (
    EXACT,
    DenseFunction,
    GroupSet,
    balanced,
    fast_convolve,
    generalized_conv,
    minkowski_index,
)
from .groups import Group, make_group, parse_group

FLOAT_REL_TOL = 1e-9


@dataclass
class CheckReport:
    check: str
    instance: dict
    lhs: object
    rhs: object
    hypothesis_ok: bool
    holds: bool
    margin: float
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "instance": _jsonify(self.instance),
            "lhs": _jsonify(self.lhs),
            "rhs": _jsonify(self.rhs),
            "hypothesis_ok": self.hypothesis_ok,
            "holds": self.holds,
            "margin": self.margin,
            "seed": self.seed,
            "details": _jsonify(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _jsonify(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, dict):
        return {str(k): _jsonify(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonify(x) for x in v]
    if isinstance(v, np.ndarray):
        return [_jsonify(x) for x in v.tolist()]
    return v


def _margin(lhs, rhs) -> float:
    lf, rf = float(lhs), float(rhs)
    scale = max(abs(lf), abs(rf), 1.0)
    return (rf - lf) / scale


def _holds_leq_float(lhs, rhs) -> bool:
    lf, rf = float(lhs), float(rhs)
    return lf <= rf + FLOAT_REL_TOL * max(abs(lf), abs(rf), 1.0)


def cal_L(eps) -> float:
    """log2(2/eps), the loss scale used throughout; domain (0, 1]."""
    eps = float(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"cal_L needs 0 < eps <= 1, got {eps}")
    return math.log2(2.0 / eps)


# -- small exact helpers ------------------------------------------------------


def _pinned_multi_conv(group: Group, arrays: list[np.ndarray], budget=None):
    """T[y_1..y_{l-1}] = sum_z a_1(z) a_2(z+y_1) ... a_l(z+y_{l-1}), exact.

    int64 whenever |values| stay under the overflow bound; object otherwise.
    """
    n = group.order
    l = len(arrays)
    check_budget(n ** (l - 1), budget, what=f"pinned arity-{l} tensor")
    bound = n
    for a in arrays:
        bound *= max(1, int(max(abs(int(v)) for v in a)))
    dtype = np.int64 if bound < kernels.INT64_SAFE else object
    mats = [np.asarray(a, dtype=dtype) for a in arrays]
    if l == 1:
        return np.array([mats[0].sum()], dtype=dtype)
    trans = []
    for a in mats[1:]:
        trans.append(np.stack([a[group.translation(s)] for s in range(n)]))
    out = np.empty(n ** (l - 1), dtype=dtype)
    block = n
    for pos, ys in enumerate(np.ndindex(*([n] * (l - 2)))):
        w = mats[0].copy()
        for j, y in enumerate(ys):
            w = w * trans[j][y]
        out[pos * block : (pos + 1) * block] = trans[-1] @ w
    return out


def _scaled_int_values(f: DenseFunction) -> tuple[list[int], int]:
    if f.mode != EXACT:
        raise ValueError("this checker needs exact inputs")
    return f.scaled_ints()


# -- inequality checkers ------------------------------------------------------


def check_uniformity_bound(a_list, g: DenseFunction, k: int, l: int) -> CheckReport:
    """sum_x prod_j (f_Aj o g)(x)
    <= ||g||_1^(l(1-1/k)) ||C_l(g)||_inf^(1/k) prod_j (N^-1 E^k_l(f_Aj))^(1/kl)
    """
    if len(a_list) != l:
        raise ValueError("need exactly l sets")
    identical = all(a.bits is a_list[0].bits or (a.bits == a_list[0].bits).all() for a in a_list)
    if k % 2:
        raise ValueError("k must be even")
    if not identical and l % 2:
        raise ValueError("distinct sets need even l")
    group = g.group
    n = group.order
    fas = [balanced(a) for a in a_list]
    convs = [fast_convolve(fa, g, "o") for fa in fas]
    lhs = sum(math.prod(c.values[x] for c in convs) for x in range(n))

    g_nums, g_den = _scaled_int_values(g)
    g1 = Fraction(sum(abs(v) for v in g_nums), g_den)
    cl = _pinned_multi_conv(group, [g_nums] * l)
    clinf = Fraction(max(abs(int(v)) for v in cl), g_den**l)
    energies = [energy(fa, (k, l)).raw for fa in fas]  # exact, >= 0 for even k

    # exact route: compare lhs^(kl) with the kl-th power of the rhs
    holds: bool
    if lhs <= 0:
        holds = True
    else:
        lhs_p = Fraction(lhs) ** (k * l)
        rhs_p = (
            g1 ** (l * l * (k - 1))
            * clinf**l
            * math.prod(Fraction(e, n) for e in energies)
        )
        holds = lhs_p <= rhs_p
    rhs_f = (
        float(g1) ** (l * (1 - 1 / k))
        * float(clinf) ** (1 / k)
        * math.prod((float(e) / n) ** (1 / (k * l)) for e in energies)
    )
    return CheckReport(
        check="uniformity-bound",
        instance={
            "group": str(group),
            "k": k,
            "l": l,
            "set_sizes": [a.cardinality for a in a_list],
            "identical_sets": identical,
        },
        lhs=lhs,
        rhs=rhs_f,
        hypothesis_ok=True,
        holds=holds,
        margin=_margin(lhs, rhs_f),
        details={"balanced_energies": energies},
    )


def check_circ_moment(a: GroupSet, b: GroupSet, l: int) -> CheckReport:
    """sum_x (A o B)^l <= delta^l |B|^l N min{1.25(1+eps)^l, (1+1.25 eps)^l}."""
    if a.cardinality == 0 or b.cardinality == 0:
        raise ValueError("both sets must be nonempty")
    group = a.group
    n = group.order
    beta = b.density
    if beta < 1:
        k = 2 * math.ceil(math.e * l * math.log2(1 / float(beta)))
        k = max(k, 2)
    else:
        k = 2
    if a.cardinality == n:
        eps, eps_power = 0.0, Fraction(0)
    else:
        rep = uniformity_report(a, k, l)
        eps, eps_power = rep.epsilon, rep.epsilon_power
    corr = kernels.correlate_exact(
        group, [int(v) for v in a.bits], [int(v) for v in b.bits]
    )
    lhs = kernels.power_sum(corr, l)
    delta = a.density
    rhs = (
        float(delta) ** l
        * b.cardinality**l
        * n
        * min(1.25 * (1 + eps) ** l, (1 + 1.25 * eps) ** l)
    )
    return CheckReport(
        check="circ-moment",
        instance={
            "group": str(group),
            "l": l,
            "k": k,
            "|A|": a.cardinality,
            "|B|": b.cardinality,
        },
        lhs=lhs,
        rhs=rhs,
        hypothesis_ok=eps <= 1.0,
        holds=_holds_leq_float(lhs, rhs),
        margin=_margin(lhs, rhs),
        details={"epsilon": eps, "epsilon_power": eps_power},
    )


def check_dispersion(a_list, k: int, l: int, eps_measured: float | None = None) -> CheckReport:
    """sum_x (C_l(A_1..A_l)(x) - N prod delta_j)^k
    <= eps^k l 2^(kl+1) N^(l+k) (prod delta_j)^k  with eps = max measured.
    """
    if k % 2 or l % 2:
        raise ValueError("k and l must be even")
    if len(a_list) != l:
        raise ValueError("need exactly l sets")
    group = a_list[0].group
    n = group.order
    cards = [a.cardinality for a in a_list]
    if any(c == 0 for c in cards):
        raise ValueError("sets must be nonempty")
    powers = []
    for a in a_list:
        if a.cardinality == n:
            powers.append(Fraction(0))
        else:
            powers.append(uniformity_report(a, k, l).epsilon_power)
    eps_power = max(powers)  # eps^(kl), exact
    eps = float(eps_power) ** (1 / (k * l)) if eps_power > 0 else 0.0
    hyp = 2 * l * eps**k <= 1.0

    pinned = _pinned_multi_conv(group, [[int(v) for v in a.bits] for a in a_list])
    prod_cards = math.prod(cards)
    # scaled term: N^(l-1) C - prod|A_j| is integer; lhs = sum(term^k)/N^(k(l-1))
    scale = n ** (l - 1)
    lhs_scaled = sum((scale * int(v) - prod_cards) ** k for v in pinned)
    lhs = Fraction(n * lhs_scaled, n ** (k * (l - 1)))
    pd = Fraction(prod_cards, n**l)
    rhs_f = float(eps) ** k * l * 2 ** (k * l + 1) * float(n) ** (l + k) * float(pd) ** k
    # exact comparison via l-th powers (lhs >= 0 since k is even)
    rhs_power = eps_power * Fraction(l * 2 ** (k * l + 1)) ** l * Fraction(n) ** (
        (l + k) * l
    ) * pd ** (k * l)
    holds = Fraction(lhs) ** l <= rhs_power
    return CheckReport(
        check="dispersion",
        instance={"group": str(group), "k": k, "l": l, "sizes": cards},
        lhs=lhs,
        rhs=rhs_f,
        hypothesis_ok=hyp,
        holds=holds,
        margin=_margin(lhs, rhs_f),
        details={"epsilon": eps, "epsilon_power_max": eps_power},
    )


def check_holder(a: GroupSet, k: int, l: int) -> CheckReport:
    """(E^(k-1)_l(A))^k <= (E^k_l(A))^(k-1) N^l, exact on indicators."""
    if k < 2:
        raise ValueError("k >= 2")
    n = a.group.order
    e_lo = energy(a, (k - 1, l)).raw
    e_hi = energy(a, (k, l)).raw
    lhs = e_lo**k
    rhs = e_hi ** (k - 1) * n**l
    return CheckReport(
        check="holder",
        instance={"group": str(a.group), "k": k, "l": l, "|A|": a.cardinality},
        lhs=lhs,
        rhs=rhs,
        hypothesis_ok=True,
        holds=lhs <= rhs,
        margin=_margin(lhs, rhs),
        details={"E_lo": e_lo, "E_hi": e_hi},
    )


def check_e_to_d(a: GroupSet, k: int, l: int, k1_range) -> CheckReport:
    """From E^k_l(f_A) = eps^(lk) delta^(lk) N^(l+k), search even k_1 with
    E^(k_1)_l(A) >= (1 + eps eps_*^(l-1) / 8l)^(l k_1) delta^(l k_1) N^(l+k_1).
    """
    if k % 2 == 0 or k < 5:
        raise ValueError("k must be odd and >= 5")
    if l % 2:
        raise ValueError("l must be even (energy sign)")
    group = a.group
    n = group.order
    delta = a.density
    if a.cardinality in (0, n):
        eps, eps_power = 0.0, Fraction(0)
    else:
        rep = uniformity_report(a, k, l)
        eps, eps_power = rep.epsilon, rep.epsilon_power
    eps_star = min(eps, 1.0)
    boost = 1 + eps * eps_star ** (l - 1) / (8 * l)
    candidates = {}
    witness = None
    for k1 in sorted(set(int(v) for v in k1_range)):
        if k1 % 2 or k1 < 2:
            continue
        e = energy(a, (k1, l)).raw
        bound = boost ** (l * k1) * float(delta) ** (l * k1) * float(n) ** (l + k1)
        ok = float(e) >= bound * (1 - FLOAT_REL_TOL)
        candidates[k1] = {"energy": e, "bound": bound, "ok": ok}
        if ok and witness is None:
            witness = k1
    # measured (not enforced) uniformity hypothesis at the largest even k1
    if l == 2:
        hyp = True  # E^k_1(f_A) = N (sum f_A)^k = 0: always uniform
        hyp_eps = 0.0
    else:
        k_star = max(candidates) if candidates else 2
        hyp_eps = (
            0.0
            if a.cardinality == n
            else uniformity_report(a, k_star, l - 1).epsilon
        )
        hyp = hyp_eps <= eps * eps_star ** (l - 1) / (8 * l) or eps == 0.0
    lhs = witness if witness is not None else -1
    if witness is None:
        margin = 0.0
    else:
        margin = _margin(candidates[witness]["bound"], float(candidates[witness]["energy"]))
    return CheckReport(
        check="e-to-d",
        instance={"group": str(group), "k": k, "l": l, "|A|": a.cardinality},
        lhs=lhs,
        rhs=float(eps),
        hypothesis_ok=hyp,
        holds=witness is not None,
        margin=margin,
        details={
            "witness_k1": witness,
            "epsilon": eps,
            "epsilon_power": eps_power,
            "hypothesis_epsilon": hyp_eps,
            "candidates": candidates,
        },
    )


def _forms_ok(forms, p: int):
    for al, be, _ in forms:
        if al % p == 0 and be % p == 0:
            raise ValueError("trivial linear form")
    for j, (al, be, _) in enumerate(forms):
        if j >= 1 and (al % p == 0 or be % p == 0):
            raise ValueError("forms 2..4 must depend on both variables")
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            a1, b1, _ = forms[i]
            a2, b2, _ = forms[j]
            if (a1 * b2 - a2 * b1) % p == 0:
                raise ValueError(f"forms {i + 1} and {j + 1} are proportional mod {p}")


def check_counting(fs, forms, l1: int, l2: int) -> CheckReport:
    """|sum_{x,y} prod f_j(L_j(x,y))|
    <= ||f_1||_{l1*} ||f_2||_{l2*} ||f_3||_{E^2_{l1,l2}} ||f_4||_{E^2_{l1,l2}}.
    """
    if len(fs) != 4 or len(forms) != 4:
        raise ValueError("need 4 functions and 4 forms")
    group = fs[0].group
    if len(group.factors) != 1:
        raise ValueError("counting runs on prime cyclic groups")
    p = group.factors[0]
    from .groups import _is_prime

    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if l1 < 2 or l2 < 2:
        raise ValueError("l1, l2 >= 2")
    _forms_ok(forms, p)
    vals = [list(f.values) for f in fs]
    lhs_sum = 0
    for x in range(p):
        for y in range(p):
            t = 1
            for (al, be, ga), fv in zip(forms, vals):
                t *= fv[(al * x + be * y + ga) % p]
            lhs_sum += t
    lhs = abs(lhs_sum)

    def dual_norm(f, l):
        q = l / (l - 1)
        return float(sum(abs(float(v)) ** q for v in f.values)) ** (1 / q)

    def e2_norm(f):
        raw = energy(f, (l1, l2, 2)).raw
        return (float(raw) / p**2) ** (1 / (2 * l1 * l2))

    rhs = dual_norm(fs[0], l1) * dual_norm(fs[1], l2) * e2_norm(fs[2]) * e2_norm(fs[3])
    return CheckReport(
        check="counting",
        instance={"group": str(group), "l1": l1, "l2": l2, "forms": list(forms)},
        lhs=lhs,
        rhs=rhs,
        hypothesis_ok=True,
        holds=_holds_leq_float(lhs, rhs),
        margin=_margin(lhs, rhs),
        details={},
    )


def check_general_norm_axioms(shape, f: DenseFunction, g: DenseFunction) -> CheckReport:
    """Triangle, Gowers-Cauchy-Schwarz, non-negativity, bar-norm monotonicity
    and the zero characterization, bundled into one report."""
    from .energies import EnergySpec

    spec = EnergySpec(tuple(shape))
    if not spec.norm_grade:
        raise ValueError("norm axioms need a norm-grade shape (all even, r >= 2)")
    group = f.group
    n = group.order
    K, S = spec.K, spec.S
    sub = {}

    ef = energy(f, spec.shape).raw
    eg = energy(g, spec.shape).raw
    efg = energy(f + g, spec.shape).raw
    sub["non_negativity"] = ef >= 0 and eg >= 0 and efg >= 0

    nf, ng, nfg = (float(v) ** (1 / K) for v in (ef, eg, efg))
    sub["triangle"] = _holds_leq_float(nfg, nf + ng)

    # GCS with a mixed family: f on even-weight box points, g on odd
    box = list(itertools.product(*[range(kj) for kj in spec.shape]))
    fam = {w: (f if sum(w) % 2 == 0 else g) for w in box}
    prod_val = multi_scalar_product(fam, spec.shape)
    counts = sum(1 for w in box if sum(w) % 2 == 0)
    if isinstance(prod_val, (int, Fraction)) and not isinstance(ef, float):
        gcs_lhs = Fraction(abs(prod_val)) ** K
        gcs_rhs = Fraction(ef) ** counts * Fraction(eg) ** (K - counts)
        sub["gcs"] = gcs_lhs <= gcs_rhs
    else:
        sub["gcs"] = _holds_leq_float(
            abs(float(prod_val)), nf**counts * ng ** (K - counts)
        )

    # monotonicity on lexicographically comparable shapes
    bigger = spec.shape[:-1] + (spec.shape[-1] + 2,)
    e_big = energy(f, bigger).raw
    K2, S2 = math.prod(bigger), sum(bigger)
    if not isinstance(ef, float):
        lhs_m = (Fraction(ef) / Fraction(n) ** S) ** K2
        rhs_m = (Fraction(e_big) / Fraction(n) ** S2) ** K
        sub["monotonicity"] = lhs_m <= rhs_m
    else:
        sub["monotonicity"] = _holds_leq_float(
            (ef / n**S) ** (1 / K), (e_big / n**S2) ** (1 / K2)
        )

    # zero characterization under the parity hypothesis (shape is all even)
    zero_f = all(v == 0 for v in f.values)
    sub["zero_characterization"] = (ef == 0) == zero_f

    holds = all(sub.values())
    return CheckReport(
        check="norm-axioms",
        instance={"group": str(group), "shape": list(spec.shape)},
        lhs=nfg,
        rhs=nf + ng,
        hypothesis_ok=True,
        holds=holds,
        margin=_margin(nfg, nf + ng),
        details=sub,
    )


# -- identity checkers --------------------------------------------------------


def check_expectation_identity(f: DenseFunction, s: int, t: int) -> CheckReport:
    """sum_{x,y} C_st(f)(x + y Minkowski) = N E^t_s(f), exact."""
    lhs = energy(f, (s, t, 1), strategy="enumerate").raw
    rhs_e = energy(f, (t, s)).raw
    rhs = f.group.order * rhs_e
    return CheckReport(
        check="expectation-identity",
        instance={"group": str(f.group), "s": s, "t": t},
        lhs=lhs,
        rhs=rhs,
        hypothesis_ok=True,
        holds=lhs == rhs,
        margin=_margin(lhs, rhs),
    )


def check_inductive_identity(f: DenseFunction, shape) -> CheckReport:
    """E(shape) = sum over z in G^(k_r) of E(f_z, shape[:-1]), exact."""
    shape = tuple(shape)
    group = f.group
    n = group.order
    lhs = energy(f, shape).raw
    k_r = shape[-1]
    total = 0
    for zs in itertools.product(range(n), repeat=k_r):
        prod_vals = None
        for z in zs:
            shifted = f.values[group.translation(z)]
            prod_vals = shifted if prod_vals is None else prod_vals * shifted
        fz = DenseFunction.from_values(group, list(prod_vals), f.mode)
        total += energy(fz, shape[:-1]).raw
    return CheckReport(
        check="inductive-identity",
        instance={"group": str(group), "shape": list(shape)},
        lhs=lhs,
        rhs=total,
        hypothesis_ok=True,
        holds=lhs == total,
        margin=_margin(lhs, total),
    )


def check_reduction_identity(
    f: DenseFunction, s: int, t: int, points: int = 8, seed: int = 0
) -> CheckReport:
    """C_st(f)(x⊕y) equals the pinned (st-1)-point convolution at
    w_ij = (x_i - x_1) + (y_j - y_1); exact, scale factor 1."""
    group = f.group
    n = group.order
    rng = np.random.default_rng(seed)
    vals = list(f.values)
    mismatches = 0
    checked = []
    for _ in range(points):
        xs = [int(v) for v in rng.integers(0, n, s)]
        ys = [int(v) for v in rng.integers(0, n, t)]
        args = minkowski_index(group, tuple(xs), tuple(ys))
        lhs = sum(
            math.prod(vals[group.add(z, a)] for a in args) for z in range(n)
        )
        ws = []
        for i in range(s):
            for j in range(t):
                if i == 0 and j == 0:
                    continue
                ws.append(
                    group.add(
                        group.add(xs[i], group.neg(xs[0])),
                        group.add(ys[j], group.neg(ys[0])),
                    )
                )
        rhs = sum(
            vals[z] * math.prod(vals[group.add(z, w)] for w in ws) for z in range(n)
        )
        checked.append({"x": xs, "y": ys, "lhs": lhs, "rhs": rhs})
        if lhs != rhs:
            mismatches += 1
    return CheckReport(
        check="reduction-identity",
        instance={"group": str(group), "s": s, "t": t, "points": points},
        lhs=mismatches,
        rhs=0,
        hypothesis_ok=True,
        holds=mismatches == 0,
        margin=0.0,
        seed=seed,
        details={"points": checked[:4]},
    )


def check_diagonal_shift(f: DenseFunction, l: int, points: int = 8, seed: int = 0) -> CheckReport:
    """C_l(f)(x + D(w)) = C_l(f)(x) and the two-sided Minkowski symmetry."""
    group = f.group
    n = group.order
    rng = np.random.default_rng(seed)
    vals = list(f.values)

    def c_at(args):
        return sum(math.prod(vals[group.add(z, a)] for a in args) for z in range(n))

    mism = 0
    for _ in range(points):
        xs = [int(v) for v in rng.integers(0, n, l)]
        w = int(rng.integers(0, n))
        if c_at(xs) != c_at([group.add(x, w) for x in xs]):
            mism += 1
    # two-sided symmetry on Minkowski-indexed tensors (s=t=2)
    if l >= 2:
        for _ in range(points):
            xs = [int(v) for v in rng.integers(0, n, 2)]
            ys = [int(v) for v in rng.integers(0, n, 2)]
            w1, w2 = (int(v) for v in rng.integers(0, n, 2))
            base = c_at(minkowski_index(group, tuple(xs), tuple(ys)))
            left = c_at(
                minkowski_index(group, tuple(group.add(x, w1) for x in xs), tuple(ys))
            )
            right = c_at(
                minkowski_index(group, tuple(xs), tuple(group.add(y, w2) for y in ys))
            )
            if base != left or base != right:
                mism += 1
    return CheckReport(
        check="diagonal-shift",
        instance={"group": str(group), "l": l, "points": points},
        lhs=mism,
        rhs=0,
        hypothesis_ok=True,
        holds=mism == 0,
        margin=0.0,
        seed=seed,
    )


# -- worked scenarios ---------------------------------------------------------


def scenario_planted(
    group: Group,
    subgroup_dim: int,
    lambda_density: float,
    seed: int,
    kind: str = "direct-sum",
    uniform_shape: tuple[int, int] = (2, 2),
    structured_shape: tuple[int, int] = (8, 3),
    ratio_target: float = 2.0,
    budget=None,
) -> tuple[GroupSet, tuple[CheckReport, CheckReport]]:
    """Build a planted set and measure the scenario's uniformity signature.

    direct-sum: A = H ⊕ Λ; reports the epsilon separation between a shape
    where A looks uniform and a higher-arity shape where the subgroup shows.
    removal: A = (H \\ Λ) ⊔ Λ; reports measured eta against eps/(2 delta).
    """
    from .instances import planted_direct_sum, planted_removal

    if kind == "direct-sum":
        a, meta = planted_direct_sum(group, subgroup_dim, lambda_density, seed)
        rep_u = uniformity_report(a, *uniform_shape, budget=budget)
        rep_s = uniformity_report(a, *structured_shape, budget=budget)
        lhs = ratio_target * rep_u.epsilon
        rhs = rep_s.epsilon
        h_size = meta["subgroup_size"]
        n = group.order
        delta = float(a.density)
        regime_ok = delta**2 >= h_size / n
        main = CheckReport(
            check="scenario-direct-sum",
            instance=meta | {"group": str(group)},
            lhs=lhs,
            rhs=rhs,
            hypothesis_ok=regime_ok,
            holds=rhs >= lhs * (1 - FLOAT_REL_TOL),
            margin=_margin(lhs, rhs),
            seed=seed,
            details={
                "epsilon_uniform_shape": rep_u.epsilon,
                "epsilon_structured_shape": rep_s.epsilon,
                "uniform_shape": list(uniform_shape),
                "structured_shape": list(structured_shape),
                "ratio": (rep_s.epsilon / rep_u.epsilon) if rep_u.epsilon else float("inf"),
            },
        )
        regime = CheckReport(
            check="scenario-direct-sum-regime",
            instance=meta | {"group": str(group)},
            lhs=h_size / n,
            rhs=delta**2,
            hypothesis_ok=regime_ok,
            holds=regime_ok,
            margin=_margin(h_size / n, delta**2),
            seed=seed,
            details={
                "uniform_floor |H| << delta^k N": delta ** uniform_shape[0] * n,
                "structured floor |H| >> delta^l N": delta ** structured_shape[0] * n,
                "|H|": h_size,
            },
        )
        return a, (main, regime)

    if kind == "removal":
        a, meta = planted_removal(group, subgroup_dim, lambda_density, seed)
        n = group.order
        beta = Fraction(meta["subgroup_size"] if "subgroup_size" in meta else 0)
        h_size = group.order // (group.prime ** (len(group.factors) - subgroup_dim))
        beta = Fraction(h_size, n)
        delta_a = a.density
        eps_removed = Fraction(meta["|H_tilde|"], a.cardinality)
        k_meas = 2 * math.ceil(cal_L(float(beta)) / 2)
        eta = uniformity_report(a, k_meas, 2, budget=budget).epsilon
        lhs = float(eps_removed) / (2 * float(delta_a))
        regime_ok = beta <= delta_a
        main = CheckReport(
            check="scenario-removal",
            instance=meta | {"group": str(group)},
            lhs=lhs,
            rhs=eta,
            hypothesis_ok=regime_ok,
            holds=eta >= lhs * (1 - FLOAT_REL_TOL),
            margin=_margin(lhs, eta),
            seed=seed,
            details={
                "eta": eta,
                "eps_removed": eps_removed,
                "k_measured": k_meas,
                "beta": beta,
            },
        )
        regime = CheckReport(
            check="scenario-removal-regime",
            instance=meta | {"group": str(group)},
            lhs=beta,
            rhs=delta_a,
            hypothesis_ok=regime_ok,
            holds=regime_ok,
            margin=_margin(beta, delta_a),
            seed=seed,
        )
        return a, (main, regime)

    raise ValueError(f"unknown scenario kind {kind!r}")
