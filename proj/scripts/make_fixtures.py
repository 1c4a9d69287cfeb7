#!/usr/bin/env python3
"""Generate the bundled synthetic sector price fixtures.

Each sector gets a factor model: one market factor, a few sub-cluster
factors and idiosyncratic noise with per-stock volatility, with separate
drifts for the 2016-2020 training span and the 2021 test span. Output is a
long-format CSV (date,ticker,close) per sector plus a run config.

The output is committed; rerunning this script reproduces it exactly.
"""

import datetime as dt
import json
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

FIRST = dt.date(2016, 1, 1)
LAST = dt.date(2021, 8, 26)
TRAIN_END = dt.date(2020, 12, 31)

SECTORS = {
    "auto": ["MARUTI", "M&M", "TATAMOTORS", "BAJAJ-AUTO", "HEROMOTOCO", "EICHERMOT",
             "BHARATFORG", "BALKRISIND", "ASHOKLEY", "MRF"],
    "banking": ["HDFCBANK", "ICICIBANK", "SBIN", "KOTAKBANK", "AXISBANK", "INDUSINDBK",
                "AUBANK", "BANDHANBNK", "FEDERALBNK", "IDFCFIRSTB"],
    "fmcg": ["HINDUNILVR", "ITC", "NESTLEIND", "TATACONSUM", "BRITANNIA", "GODREJCP",
             "DABUR", "JUBLFOOD", "MARICO", "COLPAL"],
    "it": ["INFY", "TCS", "TECHM", "WIPRO", "HCLTECH", "MPHASIS", "LTI", "MINDTREE",
           "COFORGE", "OFSS"],
    "metal": ["TATASTEEL", "JSWSTEEL", "HINDALCO", "ADANIENT", "VEDL", "COALINDIA", "NMDC",
              "SAIL", "JINDALSTEL", "APLAPOLLO"],
    "pharma": ["SUNPHARMA", "DIVISLAB", "DRREDDY", "CIPLA", "LUPIN", "AUROPHARMA", "BIOCON",
               "ALKEM", "TORNTPHARM", "CADILAHC"],
    "realty": ["DLF", "GODREJPROP", "OBEROIRLTY", "PHOENIXLTD", "IBREALEST", "PRESTIGE",
               "BRIGADE", "SOBHA", "SUNTECK", "HEMIPROP"],
    "nifty50": ["ADANIPORTS", "ASIANPAINT", "AXISBANK", "BAJAJ-AUTO", "BAJFINANCE", "BAJAJFINSV",
                "BHARTIARTL", "BPCL", "BRITANNIA", "CIPLA", "COALINDIA", "DIVISLAB", "DRREDDY",
                "EICHERMOT", "GRASIM", "HCLTECH", "HDFC", "HDFCBANK", "HDFCLIFE", "HEROMOTOCO",
                "HINDALCO", "HINDUNILVR", "ICICIBANK", "INDUSINDBK", "INFY", "IOC", "ITC",
                "JSWSTEEL", "KOTAKBANK", "LT", "M&M", "MARUTI", "NESTLEIND", "NTPC", "ONGC",
                "POWERGRID", "RELIANCE", "SBILIFE", "SBIN", "SHREECEM", "SUNPHARMA", "TATACONSUM",
                "TATAMOTORS", "TATASTEEL", "TCS", "TECHM", "TITAN", "ULTRACEMCO", "UPL", "WIPRO"],
}

# (sector market daily vol, training drift centre, test drift centre, clusters)
PROFILE = {
    "auto": (0.0120, 0.10, 0.10, 4),
    "banking": (0.0135, 0.14, 0.22, 4),
    "fmcg": (0.0085, 0.14, 0.18, 3),
    "it": (0.0095, 0.16, 0.55, 3),
    "metal": (0.0140, 0.12, 0.60, 4),
    "pharma": (0.0100, 0.12, 0.16, 3),
    "realty": (0.0140, 0.22, 0.30, 5),
    "nifty50": (0.0090, 0.15, 0.28, 6),
}

LATE_LISTING = {"BANDHANBNK": dt.date(2018, 3, 27)}
HOLIDAYS = {(1, 26), (5, 1), (8, 15), (10, 2), (12, 25)}


def calendar():
    days = []
    d = FIRST
    while d <= LAST:
        if d.weekday() < 5 and (d.month, d.day) not in HOLIDAYS:
            days.append(d)
        d += dt.timedelta(days=1)
    return days


def simulate(sector, tickers, days, seed):
    rng = np.random.default_rng(seed)
    market_vol, train_mu, test_mu, clusters = PROFILE[sector]
    n, t = len(tickers), len(days)
    is_test = np.array([d > TRAIN_END for d in days])

    group = rng.integers(0, clusters, size=n)
    beta = rng.uniform(0.7, 1.3, size=n)
    cluster_vol = rng.uniform(0.005, 0.009, size=clusters)
    idio_vol = rng.uniform(0.008, 0.022, size=n)
    drift_train = rng.normal(train_mu, 0.08, size=n) / 250.0
    drift_test = rng.normal(test_mu, 0.15, size=n) / 250.0

    market = rng.normal(0.0, market_vol, size=t)
    cluster = rng.normal(0.0, 1.0, size=(t, clusters)) * cluster_vol
    idio = rng.normal(0.0, 1.0, size=(t, n)) * idio_vol
    drift = np.where(is_test[:, None], drift_test[None, :], drift_train[None, :])
    returns = drift + market[:, None] * beta[None, :] + cluster[:, group] + idio
    returns = np.clip(returns, -0.5, 0.5)

    start = rng.uniform(50.0, 3000.0, size=n)
    prices = start[None, :] * np.cumprod(1.0 + returns, axis=0)
    return prices, rng


def main():
    days = calendar()
    configs = DATA / "configs"
    configs.mkdir(parents=True, exist_ok=True)
    order = []
    for k, (sector, tickers) in enumerate(SECTORS.items()):
        prices, rng = simulate(sector, tickers, days, seed=20211000 + k)
        # One stock per sector misses a few interior sessions (forward-filled on load).
        gappy = int(rng.integers(0, len(tickers)))
        gaps = set(int(i) for i in rng.choice(np.arange(100, len(days) - 100), size=3, replace=False))

        out_dir = DATA / "sectors" / sector
        out_dir.mkdir(parents=True, exist_ok=True)
        lines = ["date,ticker,close"]
        for i, d in enumerate(days):
            iso = d.isoformat()
            for j, ticker in enumerate(tickers):
                if j == gappy and i in gaps:
                    continue
                listed = LATE_LISTING.get(ticker)
                if listed is not None and d < listed:
                    continue
                lines.append(f"{iso},{ticker},{prices[i, j]:.2f}")
        (out_dir / "prices.csv").write_text("\n".join(lines) + "\n")

        cfg = {
            "sector": sector,
            "data_dir": f"../sectors/{sector}",
            "tickers": tickers,
            "date_format": "%Y-%m-%d",
            "coverage_threshold": 0.95,
            "train_start": "2016-01-01",
            "train_end": "2020-12-31",
            "test_start": "2021-01-01",
            "test_end": "2021-08-26",
            "rf": 0.01,
            "trading_days": 250,
            "mc_iterations": 10000,
            "seed": 42,
            "output_dir": "../../out",
        }
        (configs / f"{sector}.json").write_text(json.dumps(cfg, indent=2) + "\n")
        order.append(f"{sector}.json")
    (configs / "index.json").write_text(json.dumps({"sectors": order}, indent=2) + "\n")


if __name__ == "__main__":
    main()
