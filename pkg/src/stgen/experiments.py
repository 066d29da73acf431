"""Monte-Carlo embedding experiments and CSV output."""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, fields

from .analysis import distortion_profile, efficiency_bound
from .codes import PRACTICAL_ROWS, StGenCode, build_code, practical_params
from .decoder import DecoderConfig
from .embed import StegoContext, emb, ext
from .gf2 import BitVector

CSV_COLUMNS = ("code_id", "n", "k", "alpha", "inv_alpha", "trials", "mean_distortion", "e_a",
               "theory_R_alg", "theory_e_a", "bound_e", "w_b", "L_cap", "seed")


@dataclass(frozen=True)
class ExperimentRecord:
    code_id: str
    n: int
    k: int
    alpha: float
    inv_alpha: float
    trials: int
    mean_distortion: float | None
    e_a: float | None
    theory_R_alg: int | None
    theory_e_a: float | None
    bound_e: float
    w_b: int
    L_cap: int
    seed: str

    def csv_row(self) -> list[str]:
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return f"{v:.6f}"
            return str(v)
        return [fmt(getattr(self, f.name)) for f in fields(self)]


def code_id(code: StGenCode, row: int | None = None) -> str:
    tag = f"row{row}" if row is not None else "custom"
    return f"{tag}-({code.n},{code.k})"


def measure_distortion(code: StGenCode, cfg: DecoderConfig, trials: int, seed: str) -> list[int]:
    """Changes made by embedding ``trials`` random messages into random covers.

    The trial stream depends only on ``seed``, so different decoder settings
    on the same code see the same covers and messages.
    """
    rng = random.Random(seed)
    ctx = StegoContext(code, cfg)
    out = []
    for _ in range(trials):
        y = BitVector.random(code.n, rng)
        m = BitVector.random(code.r, rng)
        y_prime, changes = emb(ctx, y, m)
        if ext(ctx, y_prime) != m:
            raise AssertionError("embedded message did not survive extraction")
        out.append(changes)
    return out


def run_code(code: StGenCode, cid: str, trials: int, w_1: int, w_b: int, L_cap: int,
             seed: str) -> ExperimentRecord:
    cfg = DecoderConfig(w_1=w_1, w_b=w_b, L_cap=L_cap)
    n, k = code.n, code.k
    alpha = (n - k) / n
    prof = distortion_profile(code.params, cfg)
    theory_e = (n - k) / prof.R_alg if prof.R_alg else None
    mean = e_a = None
    if trials > 0:
        changes = measure_distortion(code, cfg, trials, f"{seed}/{cid}")
        mean = sum(changes) / trials
        e_a = (n - k) / mean if mean > 0 else None
    return ExperimentRecord(cid, n, k, alpha, 1 / alpha, trials, mean, e_a, prof.R_alg, theory_e,
                            efficiency_bound(alpha), w_b, L_cap, seed)


def practical_codes(rows=range(1, len(PRACTICAL_ROWS) + 1), lengths=(1000, 1500), code_seed: int = 0):
    """Yield ``(row, code)`` for each requested practical row and nominal length class."""
    for row in rows:
        t = PRACTICAL_ROWS[row - 1]
        for length in lengths:
            nominal = t.nominal_1000 if length == 1000 else t.nominal_1500 if length == 1500 else (length, None)
            yield row, build_code(practical_params(row, nominal[0], code_seed))


def run_experiment(codes, trials: int, w_1: int = 2, w_bs=(2,), L_caps=(256,), seed: str = "0"):
    """One record per (code, w_b, L_cap); ``codes`` yields ``(row_or_None, code)``."""
    records = []
    for row, code in codes:
        cid = code_id(code, row)
        for w_b in w_bs:
            for L_cap in L_caps:
                records.append(run_code(code, cid, trials, w_1, w_b, L_cap, seed))
    return records


def to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()
