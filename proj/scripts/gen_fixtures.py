#!/usr/bin/env python3
"""Regenerates the bundled fixtures and their expected-output goldens.

The expected signs and expected events are computed here with numpy-based
logic kept independent of the C++ implementation, so the committed goldens
act as cross-implementation oracles. Output files are deterministic; rerun
only when a fixture is intentionally changed, and commit the results.
"""
import os
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
FIX = os.path.join(HERE, "..", "fixtures")
DAY_MS = 86_400_000


def g17(x: float) -> str:
    if np.isinf(x):
        return "+inf" if x > 0 else "-inf"
    return np.format_float_scientific(x) if False else f"{x:.17g}"


def write(path, text):
    with open(path, "wb") as f:
        f.write(text.encode())
    print("wrote", os.path.relpath(path, FIX))


def gbm_prices(rng, s0, mu, sigma, dt, n):
    steps = rng.standard_normal(n - 1) * sigma * np.sqrt(dt) + (mu - sigma**2 / 2) * dt
    logp = np.concatenate([[0.0], np.cumsum(steps)])
    return s0 * np.exp(logp)


def ushape_volumes(n, day_len):
    out = np.empty(n)
    for k in range(n):
        j = k % day_len
        x = 2.0 * j / (day_len - 1) - 1.0
        out[k] = 1.0 + 4.0 * x * x
    return out


def make_ticks_sample():
    rng = np.random.default_rng(20240102)
    n = 390  # one trading day of minute bars
    prices = gbm_prices(rng, 100.0, 0.05, 0.25, 1.0 / (252 * 390), n)
    volumes = np.round(ushape_volumes(n, n) * 1000.0)
    t0 = 19724 * DAY_MS + 9 * 3_600_000 + 30 * 60_000  # 2024-01-02 09:30 UTC
    lines = ["timestamp,price,volume"]
    for k in range(n):
        lines.append(f"{t0 + k * 60_000},{g17(prices[k])},{g17(volumes[k])}")
    write(os.path.join(FIX, "ticks_sample.csv"), "\n".join(lines) + "\n")


def make_eod_sample():
    rng = np.random.default_rng(19870101)
    n = 60
    closes = gbm_prices(rng, 40.0, 0.1, 0.3, 1.0 / 252, n)
    lines = ["date,open,high,low,close,volume"]
    day0 = np.datetime64("2023-01-02")
    prev_close = closes[0] * 0.995
    for k in range(n):
        close = closes[k]
        open_ = prev_close * (1.0 + 0.002 * rng.standard_normal())
        hi = max(open_, close) * (1.0 + abs(0.003 * rng.standard_normal()))
        lo = min(open_, close) * (1.0 - abs(0.003 * rng.standard_normal()))
        vol = float(rng.integers(10_000, 500_000))
        date = day0 + np.timedelta64(k, "D")
        lines.append(
            f"{date},{g17(open_)},{g17(hi)},{g17(lo)},{g17(close)},{g17(vol)}"
        )
        prev_close = close
    write(os.path.join(FIX, "eod_sample.csv"), "\n".join(lines) + "\n")


def make_sign_fixture():
    # abs-temperature sequence with clear up-trends; the expected signs come
    # from an independent least-squares slope via numpy.polyfit.
    trend_window, threshold = 16, 0.05
    rng = np.random.default_rng(55)
    n = 200
    base = 0.02 * (1.0 + 0.8 * np.sin(np.arange(n) / 11.0)) * np.exp(
        0.08 * rng.standard_normal(n)
    )
    base[60:90] *= np.exp(np.linspace(0.0, 2.2, 30))  # a planted surge
    signs = np.ones(n, dtype=int)
    margin = np.inf
    for i in range(trend_window - 1, n):
        w = base[i - trend_window + 1 : i + 1]
        slope = np.polyfit(np.arange(trend_window), w, 1)[0]
        ratio = slope / w.mean()
        margin = min(margin, abs(ratio - threshold))
        if ratio > threshold:
            signs[i] = -1
    assert margin > 1e-4, f"threshold margin too thin: {margin}"
    assert (signs == -1).sum() >= 10
    write(
        os.path.join(FIX, "sign_abs_temps.csv"),
        "abs_temperature\n" + "\n".join(g17(v) for v in base) + "\n",
    )
    write(
        os.path.join(FIX, "sign_expected.csv"),
        "sign\n" + "\n".join(str(s) for s in signs) + "\n",
    )


def make_planted_stack():
    os.makedirs(os.path.join(FIX, "planted_stack"), exist_ok=True)
    n0 = 240
    ts0 = [(i + 1) * 1000 for i in range(n0)]
    v0 = np.full(n0, 1.0)
    v1 = np.full(n0 // 4, 1.6)
    v2 = np.full(n0 // 16, 2.4)
    # two coincidence windows where every level reads exactly 2.0
    for lo, hi in [(64, 96), (160, 192)]:
        v0[lo:hi] = 2.0
        v1[lo // 4 : hi // 4] = 2.0
        v2[lo // 16 : hi // 16] = 2.0
    # sign-flip separators so qualifying runs can never merge
    for lo, hi in [(32, 48), (120, 136), (200, 216)]:
        v0[lo:hi] = -1.0
    absent0 = 7  # warm-up rows stay empty at level 0

    ts1 = [ts0[4 * j + 3] for j in range(len(v1))]
    ts2 = [ts0[16 * j + 15] for j in range(len(v2))]

    def level_csv(ts, vals, level, absent=0):
        lines = ["timestamp,temperature,level"]
        for i, (t, v) in enumerate(zip(ts, vals)):
            field = "" if i < absent else g17(v)
            lines.append(f"{t},{field},{level}")
        return "\n".join(lines) + "\n"

    write(os.path.join(FIX, "planted_stack", "level0.csv"), level_csv(ts0, v0, 0, absent0))
    write(os.path.join(FIX, "planted_stack", "level1.csv"), level_csv(ts1, v1, 1))
    write(os.path.join(FIX, "planted_stack", "level2.csv"), level_csv(ts2, v2, 2))

    align_lines = ["level,ts,level0_block_start,level0_block_end"]
    for i, t in enumerate(ts0):
        align_lines.append(f"0,{t},{i},{i}")
    for j, t in enumerate(ts1):
        align_lines.append(f"1,{t},{4 * j},{4 * j + 3}")
    for j, t in enumerate(ts2):
        align_lines.append(f"2,{t},{16 * j},{16 * j + 15}")
    write(os.path.join(FIX, "planted_stack", "alignment.csv"),
          "\n".join(align_lines) + "\n")

    # Independent reimplementation of the detection rule.
    def detect(tolerance, floor):
        events = []
        prev_q = False
        for i, now in enumerate(ts0):
            vals = []
            ok = True
            for ts, vs, absent in [(ts0, v0, absent0), (ts1, v1, 0), (ts2, v2, 0)]:
                j = -1
                for k, t in enumerate(ts):
                    if t <= now:
                        j = k
                while j >= 0 and j < absent:
                    j -= 1
                if j < 0:
                    ok = False
                    break
                vals.append(vs[j])
            if not ok:
                prev_q = False
                continue
            vals = np.array(vals)
            spread = (vals.max() - vals.min()) / max(abs(vals.mean()), floor)
            qualified = spread < tolerance and (all(vals > 0) or all(vals < 0))
            if qualified and not prev_q:
                events.append((now, spread, list(vals)))
            prev_q = qualified
        return events

    events = detect(0.15, 1e-12)
    lines = ["timestamp,spread,T0,T1,T2"]
    for t, spread, vals in events:
        lines.append(f"{t},{g17(spread)}," + ",".join(g17(v) for v in vals))
    write(os.path.join(FIX, "planted_stack", "events_expected.csv"),
          "\n".join(lines) + "\n")
    # monotonicity reference counts for a tolerance ladder
    counts = [(tol, len(detect(tol, 1e-12))) for tol in (0.01, 0.05, 0.15, 0.5, 2.5)]
    print("event counts over tolerance ladder:", counts)
    assert all(counts[i][1] <= counts[i + 1][1] for i in range(len(counts) - 1))


def make_pipeline_ticks():
    rng = np.random.default_rng(31415)
    days, per_day = 48, 32
    n = days * per_day
    prices = gbm_prices(rng, 100.0, 0.0, 0.2, 1.0 / (252 * per_day), n)
    volumes = np.round(ushape_volumes(n, per_day) * 100.0) + 1.0
    lines = ["timestamp,price,volume"]
    for k in range(n):
        day, j = divmod(k, per_day)
        ts = (19700 + day) * DAY_MS + 9 * 3_600_000 + j * 60_000
        lines.append(f"{ts},{g17(prices[k])},{g17(volumes[k])}")
    write(os.path.join(FIX, "pipeline_ticks.csv"), "\n".join(lines) + "\n")


if __name__ == "__main__":
    os.makedirs(FIX, exist_ok=True)
    make_ticks_sample()
    make_eod_sample()
    make_sign_fixture()
    make_planted_stack()
    make_pipeline_ticks()
