"""Identity checks: enumeration statistics against product expansions.

Each checker computes one side with ``stats`` (partition enumeration and
meander graphs) and the other with ``qseries`` (product expansion), and
reports the first exponent where they differ.  Conjecture scans only look
at the series side; a PASS there is a non-falsification, not a proof.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import qseries, stats
from .partitions import PartitionClass, enumerate_partitions

__all__ = [
    "CheckReport",
    "PASS",
    "FAIL",
    "ERROR",
    "class_from_name",
    "check_thm1",
    "check_conj1",
    "check_corollary",
    "check_thm_cnk",
    "check_thm3",
    "scan_nonneg",
    "scan_monotone",
    "brute_nonneg_coefficients",
    "THM1_PRODUCT",
]

PASS, FAIL, ERROR = "PASS", "FAIL", "ERROR"

NON_FALSIFICATION = "NON-FALSIFICATION check: a PASS is evidence on a finite range, not a proof"

# prod_{n>=1} 1/(1 + (-1)^n q^(2n-1)), indexed from j = n - 1 >= 0
THM1_PRODUCT = qseries.ProductSpec(
    (qseries.FactorFamily(qseries._Geometric(-1, -1), q_start=1, q_step=2, power=-1,
                          label="1/(1+(-1)^n q^(2n-1))"),),
    "prod_{n>=1} 1/(1+(-1)^n q^(2n-1))",
)
THM1_SPLIT = "1/((q;q4)(-q3;q4))"


@dataclass
class CheckReport:
    """Outcome of one check.

    ``witness`` is set on FAIL and holds the smallest failing exponent with
    both exact values.  ``elapsed`` is excluded from ``body()``, so two runs
    with the same inputs serialize identically.
    """

    name: str
    range: dict
    status: str = PASS
    witness: Optional[dict] = None
    details: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def fail(self, **witness):
        if self.status == PASS:
            self.status = FAIL
            self.witness = {k: str(v) for k, v in witness.items()}

    def body(self) -> dict:
        return {
            "check": self.name,
            "range": {k: str(v) for k, v in self.range.items()},
            "status": self.status,
            "witness": self.witness,
            "notes": list(self.notes),
            "details": [{k: str(v) for k, v in row.items()} for row in self.details],
        }

    def to_json(self, timing: bool = False) -> str:
        out = self.body()
        if timing:
            out["elapsed_s"] = f"{self.elapsed:.3f}"
        return json.dumps(out, indent=1)

    def render(self, verbose: bool = False) -> str:
        bounds = " ".join(f"{k}={v}" for k, v in self.range.items())
        lines = [f"[{self.status}] {self.name} {bounds} ({self.elapsed:.2f} s)"]
        if self.witness:
            lines.append("  first counterexample: " + ", ".join(f"{k}={v}" for k, v in self.witness.items()))
        for note in self.notes:
            lines.append(f"  note: {note}")
        if verbose and self.details:
            cols = list(self.details[0])
            lines.append("  " + "\t".join(cols))
            for row in self.details:
                lines.append("  " + "\t".join(str(row.get(c, "")) for c in cols))
        return "\n".join(lines)


def _run(name: str, rng: dict, body: Callable[[CheckReport], None]) -> CheckReport:
    report = CheckReport(name, rng)
    t0 = time.perf_counter()
    try:
        body(report)
    except Exception as exc:  # report, never crash the batch
        report.status = ERROR
        report.notes.append(f"{type(exc).__name__}: {exc}")
    report.elapsed = time.perf_counter() - t0
    return report


def _sign_ceil_half(n: int) -> int:
    return -1 if ((n + 1) // 2) % 2 else 1


# -- identities ---------------------------------------------------------------


def check_thm1(max_n: int = 60) -> CheckReport:
    """Signed E_ind(n) against the coefficients of prod 1/(1 + (-1)^n q^(2n-1))."""

    def body(r: CheckReport):
        series = qseries.expand_product(THM1_PRODUCT, max_n)
        split = qseries.expand_product(THM1_SPLIT, max_n)
        for n in range(max_n + 1):
            lhs = stats.signed_e_ind(n)
            rhs = series[n]
            r.details.append({"n": n, "signed_eind": lhs, "coeff": rhs, "split_coeff": split[n]})
            if lhs != rhs:
                r.fail(n=n, signed_eind=lhs, coeff=rhs)
            if split[n] != rhs:
                r.fail(n=n, product=rhs, split_product=split[n])

    return _run("thm1", {"max_n": max_n}, body)


def check_conj1(max_n: int = 60) -> CheckReport:
    """|E_ind(n)| against the same product; equivalently signed E_ind(n) >= 0."""

    def body(r: CheckReport):
        r.notes.append(NON_FALSIFICATION)
        series = qseries.expand_product(THM1_PRODUCT, max_n)
        eind = [stats.e_ind(n) for n in range(max_n + 1)]
        for n, e in enumerate(eind):
            signed = _sign_ceil_half(n) * e
            coeff = series[n]
            r.details.append({"n": n, "eind": e, "abs": abs(e), "signed": signed, "coeff": coeff})
            if abs(e) != coeff:
                r.fail(n=n, formulation="|E_ind(n)| = [q^n] product", abs_eind=abs(e), coeff=coeff)
            if signed < 0:
                r.fail(n=n, formulation="(-1)^ceil(n/2) E_ind(n) >= 0", signed=signed)
        r.notes.append(f"n = 0 reported separately: E_ind(0) = {eind[0]}, [q^0] = {series[0]}")
        tail_ok = all(_sign_ceil_half(n) * eind[n] == abs(eind[n]) for n in range(1, max_n + 1))
        r.notes.append(f"range n >= 1: signed = |E_ind| holds: {tail_ok}")

    return _run("conj1", {"max_n": max_n}, body)


_CLASS_PRODUCTS = {
    # name: (parity product, bivariate F_S product)
    "P": ("1/(q,-q2;-q2)", "1/(tq,q2;q2)"),
    "D": ("(-q,q2;-q2)", "(-tq,-q2;q2)"),
}


def class_from_name(name: str, d: int = 1) -> PartitionClass:
    key = name.upper()
    if key == "P":
        return PartitionClass.all()
    if key == "D":
        return PartitionClass.distinct()
    if key in ("OD", "O"):
        return PartitionClass.odd_mod_four_d(d)
    raise ValueError(f"unknown class {name!r}; expected P, D or Od")


def _class_products(name: str, d: int) -> tuple[str, str]:
    key = name.upper()
    if key in _CLASS_PRODUCTS:
        return _CLASS_PRODUCTS[key]
    return f"1/(q,-q{4 * d - 1};q{4 * d})", f"1/(tq,tq{4 * d - 1};q{4 * d})"


def check_corollary(name: str, max_n: int = 60, d: int = 1, method: str = "graph", jobs: Optional[int] = None) -> CheckReport:
    """Parity differences of a class against their product, three ways.

    Compares (-1)^ceil(n/2) (o - e) and (-1)^n (obar - ebar) from the census
    with [q^n] of the stated product and with F_S(i, -iq) from the
    enumerated bivariate generating function; also checks F_S against its
    own product and |o - e| = |obar - ebar|.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    label = "Od" if name.upper() in ("OD", "O") else name.upper()
    rng = {"class": label, "max_n": max_n}
    if label == "Od":
        rng["d"] = d

    def body(r: CheckReport):
        cls = class_from_name(name, d)
        parity_text, fs_text = _class_products(name, d)
        r.notes.append(f"product: {parity_text}; F_S product: {fs_text}")
        records = stats.census_range(cls, max_n, method=method, jobs=jobs)
        product = qseries.expand_product(parity_text, max_n)
        F = qseries.enumerate_bivariate(cls, max_n)
        fs_product = qseries.expand_bivariate(fs_text, max_n)
        sub = qseries.substitute_parity(F)
        for rec in records:
            n = rec.n
            thm2 = _sign_ceil_half(n) * rec.diff
            thm5 = (-1) ** n * rec.diff_bar
            z = sub[n]
            r.details.append({
                "n": n, "o-e": rec.diff, "obar-ebar": rec.diff_bar, "signed": thm2,
                "signed_bar": thm5, "coeff": product[n], "F(i,-iq)": z,
            })
            if thm2 != product[n]:
                r.fail(n=n, side="(-1)^ceil(n/2)(o-e)", census=thm2, coeff=product[n])
            if thm5 != product[n]:
                r.fail(n=n, side="(-1)^n(obar-ebar)", census=thm5, coeff=product[n])
            if z.im != 0 or z.re != product[n]:
                r.fail(n=n, side="F(i,-iq)", substitution=z, coeff=product[n])
            if abs(rec.diff) != abs(rec.diff_bar):
                r.fail(n=n, side="|o-e| = |obar-ebar|", diff=rec.diff, diff_bar=rec.diff_bar)
            if F.poly(n) != fs_product.poly(n):
                r.fail(n=n, side="F_S enumeration vs product", enumeration=F.poly(n), product=fs_product.poly(n))
        if label == "Od" and d == 1:
            thm1 = qseries.expand_product(THM1_PRODUCT, max_n)
            same = thm1 == product
            r.notes.append(f"O^1 product equals the thm1 product coefficientwise: {same}")
            if not same:
                n = next(k for k in range(max_n + 1) if thm1[k] != product[k])
                r.fail(n=n, side="O^1 vs thm1 product", o1=product[n], thm1=thm1[n])

    return _run("cor", rng, body)


def check_thm_cnk(max_q: int = 25) -> CheckReport:
    """Generating functions of c_n(k) and c~_n(k) against their products."""

    def body(r: CheckReport):
        prod_c = qseries.expand_bivariate("1/(q,tq2;tq2)", max_q)
        prod_ct = qseries.expand_bivariate("1/(tq2,tq3;tq2)", max_q)
        F = qseries.enumerate_bivariate(PartitionClass.all(), max_q)
        one_minus_tq = qseries.BivariateSeries.from_terms({(0, 0): 1, (1, 1): -1}, max_q)
        sub_c = qseries.substitute_cnk(F)
        sub_ct = qseries.substitute_cnk(one_minus_tq * F)
        for n in range(max_q + 1):
            direct_c = tuple(stats.cnk_row(n))
            direct_ct = _ctilde_row(n)
            r.details.append({
                "n": n, "c_n": direct_c, "c~_n": direct_ct,
                "product_c": prod_c.poly(n), "product_c~": prod_ct.poly(n),
            })
            for side, got, want in (
                ("c_n via substitution", sub_c.poly(n), prod_c.poly(n)),
                ("c_n via graphs", _trim(direct_c), prod_c.poly(n)),
                ("c~_n via substitution", sub_ct.poly(n), prod_ct.poly(n)),
                ("c~_n via enumeration", _trim(direct_ct), prod_ct.poly(n)),
            ):
                if got != want:
                    r.fail(n=n, side=side, enumeration=got, product=want)

    return _run("thm-cnk", {"max_q": max_q}, body)


def _trim(row) -> tuple[int, ...]:
    row = list(row)
    while row and row[-1] == 0:
        row.pop()
    return tuple(row)


def _ctilde_row(n: int) -> tuple[int, ...]:
    row = [0] * (n // 2 + 1)
    for lam in enumerate_partitions(n, PartitionClass.no_ones()):
        row[sum(p // 2 for p in lam.parts)] += 1
    return tuple(row)


def check_thm3(max_k: int = 15, stab_extra: int = 10) -> CheckReport:
    """c(k) against [x^k] 1/(x;x)^2, plus stabilization and the q = 1 sum."""

    def body(r: CheckReport):
        table = stats.cnk_table(max_k)
        target = qseries.expand_product("1/(q;q)^2", max_k)
        tilde = qseries.expand_bivariate("1/(tq2,tq3;tq2)", 3 * max_k)
        rows = {n: stats.cnk_row(n) for n in range(3 * max_k + stab_extra + 1)}
        for k in range(max_k + 1):
            ck = table.limit[k]
            at_q1 = sum(tilde.coefficient(k, n) for n in range(3 * max_k + 1))
            stab = [rows[n][k] for n in range(3 * k, 3 * k + stab_extra + 1)]
            r.details.append({"k": k, "c": ck, "coeff": target[k], "q=1 sum": at_q1, "stable": len(set(stab)) == 1})
            if ck != target[k]:
                r.fail(k=k, side="c(k) vs [x^k]", c=ck, coeff=target[k])
            if at_q1 != ck:
                r.fail(k=k, side="q=1 sum of c~ product", q1_sum=at_q1, c=ck)
            if len(set(stab)) != 1:
                r.fail(k=k, side=f"stabilization on [{3 * k}, {3 * k + stab_extra}]", values=stab)

    return _run("thm3", {"max_k": max_k}, body)


# -- conjecture scans ------------------------------------------------------------


def _scan_product(m: int) -> str:
    return f"1/(q,-q{m - 1};q{m})"


def brute_nonneg_coefficients(m: int, order: int) -> list[int]:
    """[q^n] 1/(q, -q^(m-1); q^m) by direct enumeration of partitions.

    Parts = 1 (mod m) contribute +1, parts = -1 (mod m) contribute a factor
    -1 per occurrence.
    """
    if m < 3:
        raise ValueError("residues 1 and m-1 must differ; need m >= 3")
    cls = PartitionClass.where(lambda p: p % m in (1, m - 1), name=f"pm1 mod {m}")
    out = []
    for n in range(order + 1):
        total = 0
        for lam in enumerate_partitions(n, cls):
            neg = sum(1 for p in lam.parts if p % m == m - 1)
            total += -1 if neg & 1 else 1
        out.append(total)
    return out


def _check_m(m: int):
    if m < 4:
        raise ValueError(f"modulus m must be >= 4, got {m}")


def scan_nonneg(m: int, max_n: int = 1000, cross_order: int = 40) -> CheckReport:
    """Look for a negative coefficient of 1/(q, -q^(m-1); q^m)."""
    _check_m(m)

    def body(r: CheckReport):
        r.notes.append(NON_FALSIFICATION)
        s = qseries.expand_product(_scan_product(m), max_n)
        negatives = [n for n in range(max_n + 1) if s[n] < 0]
        r.details.append({"m": m, "negatives": len(negatives), "min_coeff": min(s.coeffs)})
        if negatives:
            n = negatives[0]
            r.fail(n=n, coeff=s[n])
            r.notes.append(f"HIGH SEVERITY: negative coefficient found; first at n={n}")
            order = min(max_n, cross_order)
            brute = brute_nonneg_coefficients(m, order)
            agree = brute == list(s.coeffs[: order + 1])
            r.notes.append(f"independent brute expansion to order {order} agrees with series: {agree}")

    return _run("scan-nonneg", {"m": m, "max_n": max_n}, body)


def scan_monotone(m: int, max_n: int = 1000) -> CheckReport:
    """List every n with [q^n] < [q^(n-m)] and the candidate threshold N(m).

    N(m) is one past the last violation.  PASS requires the clean tail
    [N(m), max_n] to cover at least m consecutive exponents.
    """
    _check_m(m)
    if max_n < m:
        raise ValueError(f"max_n must be >= m, got max_n={max_n}, m={m}")

    def body(r: CheckReport):
        r.notes.append(NON_FALSIFICATION)
        s = qseries.expand_product(_scan_product(m), max_n)
        violations = [n for n in range(m, max_n + 1) if s[n] < s[n - m]]
        threshold = violations[-1] + 1 if violations else m
        tail = max_n - threshold + 1
        for n in violations:
            r.details.append({"n": n, "coeff": s[n], "coeff_n_minus_m": s[n - m]})
        r.notes.append(f"violations: {len(violations)}; candidate N({m}) = {threshold}; clean tail length {tail}")
        if tail < m:
            r.fail(n=violations[-1], coeff=s[violations[-1]], coeff_n_minus_m=s[violations[-1] - m],
                   reason=f"clean tail shorter than m={m}")

    return _run("scan-monotone", {"m": m, "max_n": max_n}, body)
