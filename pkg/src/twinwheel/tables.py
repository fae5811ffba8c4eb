"""Reference tables rebuilt from computed values, with per-cell agreement flags.

``PRINTED`` holds the published cell text.  A computed cell agrees with a
printed one when they differ by at most half a unit in the printed last
digit, compared as exact rationals; ``"a/b"`` cells must match exactly.
"""
from decimal import Decimal
from fractions import Fraction

from .bounds import twin_lower_bound
from .distribution import trend_ratio
from .wheel import (
    actual_prime_ratio,
    counts,
    make_level,
    n_prospective_primes,
    nth_small_prime,
    primorial,
    ratio_step_approx,
)

TABLE_IDS = ("1", "2", "3", "mintp", "bounds")
SLOW_TABLE1_LEVELS = (9, 10)

PRINTED = {
    "1": {
        2: {"pi_minus_k": "2", "n_pp": "2", "ratio": "1"},
        3: {"pi_minus_k": "8", "n_pp": "8", "ratio": "1"},
        4: {"pi_minus_k": "43", "n_pp": "48", "ratio": ".896"},
        5: {"pi_minus_k": "339", "n_pp": "480", "ratio": ".706"},
        6: {"pi_minus_k": "3242", "n_pp": "5760", "ratio": ".563"},
        7: {"pi_minus_k": "42204", "n_pp": "92160", "ratio": ".458"},
        8: {"pi_minus_k": "646021", "n_pp": "1658880", "ratio": ".389"},
        9: {"pi_minus_k": "12283522", "n_pp": "36495360", "ratio": ".337"},
        10: {"pi_minus_k": "300369786", "n_pp": "1021870080", "ratio": ".294"},
    },
    "2": {
        2: {"next_ratio": "1.25", "primorial": "6", "alpha": "1.11", "alpha_share": ".526", "step": ".658"},
        3: {"next_ratio": "1.16", "primorial": "30", "alpha": "1.75", "alpha_share": ".636", "step": ".742"},
        4: {"next_ratio": "1.1", "primorial": "210", "alpha": "2.23", "alpha_share": ".690", "step": ".759"},
        5: {"next_ratio": "1.083", "primorial": "2310", "alpha": "3.02", "alpha_share": ".751", "step": ".814"},
        6: {"next_ratio": "1.062", "primorial": "30030", "alpha": "3.64", "alpha_share": ".784", "step": ".833"},
        7: {"next_ratio": "1.05", "primorial": "510510", "alpha": "4.46", "alpha_share": ".816", "step": ".862"},
        8: {"next_ratio": "1.045", "primorial": "9699690", "alpha": "5.13", "alpha_share": ".837", "step": ".875"},
        9: {"next_ratio": "1.035", "primorial": "223092870", "alpha": "5.71", "alpha_share": ".851", "step": ".881"},
    },
    "3": {
        3: {"span_end": "34", "n_twin": "3", "rho_twin": ".1", "sigma_twin": ".375"},
        4: {"span_end": "214", "n_twin": "15", "rho_twin": ".0714", "sigma_twin": ".313"},
        5: {"span_end": "2314", "n_twin": "135", "rho_twin": ".05834", "sigma_twin": ".281"},
        6: {"span_end": "30034", "n_twin": "1485", "rho_twin": ".0495", "sigma_twin": ".258"},
        7: {"span_end": "510514", "n_twin": "22275", "rho_twin": ".0436", "sigma_twin": ".242"},
        8: {"span_end": "9699694", "n_twin": "378675", "rho_twin": ".0390", "sigma_twin": ".228"},
        9: {"span_end": "223092874", "n_twin": "7952175", "rho_twin": ".0356", "sigma_twin": ".218"},
        10: {"span_end": "6469693234", "n_twin": "214708725", "rho_twin": ".0332", "sigma_twin": ".210"},
        11: {"span_end": "200560490134", "n_twin": "6226553035", "rho_twin": ".0310", "sigma_twin": ".203"},
        12: {"span_end": "7420738134814", "n_twin": "217929355875", "rho_twin": ".0294", "sigma_twin": ".197"},
    },
    "mintp": {
        (11, 7): {"upper_share": "11/9", "lower_share": "3/5", "ratio": ".73"},
        (23, 19): {"upper_share": "23/21", "lower_share": "15/17", "ratio": ".966"},
        (53, 47): {"upper_share": "53/51", "lower_share": "43/45", "ratio": ".993"},
        (103, 101): {"upper_share": "103/101", "lower_share": "97/99", "ratio": ".991"},
        (1577, 1573): {"upper_share": "1577/1575", "lower_share": "1569/1571", "ratio": ".999992"},
    },
    "bounds": {
        4: {"k": "6", "bound_floor": "7", "actual": "16", "ratio": ".44"},
        5: {"k": "15", "bound_floor": "43", "actual": "74", "ratio": ".58"},
        6: {"k": "40", "bound_floor": "350", "actual": "480", "ratio": ".73"},
        7: {"k": "127", "bound_floor": "3988", "actual": "4653", "ratio": ".86"},
        8: {"k": "443", "bound_floor": "52432", "actual": "57529", "ratio": ".91"},
    },
}


def agrees(computed, printed):
    """True when ``computed`` is within half a unit of the printed last digit."""
    if "/" in printed:
        return Fraction(computed) == Fraction(printed)
    dec = Decimal(printed)
    half = Fraction(1, 2) * Fraction(10) ** dec.as_tuple().exponent
    return abs(Fraction(computed) - Fraction(dec)) <= half


def _flag(table_id, key, row):
    """Attach an ``agreement`` column and return the per-cell flags for provenance."""
    flags = {col: agrees(row[col], text) for col, text in PRINTED[table_id][key].items()}
    bad = [c for c, ok in flags.items() if not ok]
    row["agreement"] = "equal" if not bad else "discrepant:" + ";".join(bad)
    return flags


def _key_name(key):
    return "/".join(map(str, key)) if isinstance(key, tuple) else str(key)


def table_1(oracle, slow=False):
    levels = list(range(2, 9)) + (list(SLOW_TABLE1_LEVELS) if slow else [])
    for k in levels:
        level = make_level(k)
        yield k, {
            "k": k,
            "span_end": level.span_end,
            "pi_minus_k": oracle.prime_pi(level.span_end) - k,
            "n_pp": n_prospective_primes(k),
            "ratio": actual_prime_ratio(level, oracle),
        }


def table_2():
    for k in range(2, 10):
        alpha, step = ratio_step_approx(k)
        nxt = nth_small_prime(k + 1)
        yield k, {
            "k": k,
            "p_k": nth_small_prime(k),
            "p_next": nxt,
            "next_ratio": Fraction(nxt, nxt - 1),
            "primorial": primorial(k),
            "alpha": alpha,
            "alpha_share": alpha / (alpha + 1),
            "step": step,
        }


def table_3():
    for k in range(3, 13):
        level = make_level(k)
        c = counts(level)
        yield k, {
            "k": k,
            "p_k": level.largest_prime,
            "span_end": level.span_end,
            "n_twin": c.n_twin,
            "rho_twin": c.rho_twin,
            "sigma_twin": c.sigma_twin,
        }


def table_mintp():
    for p_k, p_prev in PRINTED["mintp"]:
        yield (p_k, p_prev), {
            "p_k": p_k,
            "p_prev": p_prev,
            "upper_share": Fraction(p_k, p_k - 2),
            "lower_share": Fraction(p_prev - 4, p_prev - 2),
            "ratio": trend_ratio(p_k, p_prev),
        }


def table_bounds(oracle):
    for l in range(4, 9):
        r = twin_lower_bound(l, oracle)
        yield l, {
            "l": l,
            "k": r.k,
            "p_k": r.p_k,
            "p_next": r.p_k1,
            "bound_floor": r.bound_floor,
            "actual": r.actual,
            "ratio": r.ratio,
            "holds": r.holds,
        }


def build(table_id, oracle=None, slow=False):
    """``(rows, provenance)`` for one reference table."""
    if table_id == "1":
        source = table_1(oracle, slow)
    elif table_id == "2":
        source = table_2()
    elif table_id == "3":
        source = table_3()
    elif table_id == "mintp":
        source = table_mintp()
    elif table_id == "bounds":
        source = table_bounds(oracle)
    else:
        raise ValueError(f"unknown table {table_id!r}")
    rows, cells = [], {}
    for key, row in source:
        cells[_key_name(key)] = _flag(table_id, key, row)
        if table_id == "mintp":
            row["upper_share"] = str(row["upper_share"])
            row["lower_share"] = str(row["lower_share"])
        rows.append(row)
    return rows, {f"table-{table_id}": cells}
