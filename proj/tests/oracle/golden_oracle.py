#!/usr/bin/env python3
"""Independent evaluation of the fixture, straight from the input files.

usage: golden_oracle.py DATA_DIR ORIGIN MONTH [--corpus-size N] [--indices CITY]

Prints the expected `rank --format csv` output, or with --indices the
city's rho, sigma and Ginis for MONTH as JSON.
"""
import argparse
import csv
import json
import math
import os
from collections import defaultdict

ALPHA = (0.352, 0.218, 0.431)
BETA = (0.469, 0.325, 0.206)
GAMMA = (0.443, 0.557)
TOP = (0.281, 0.334, 0.385)
MODE_ORDER = {"flight": 0, "drive": 1, "train": 2}


def norm(ws):
    s = sum(ws)
    return tuple(w / s for w in ws)


def read(data, name):
    with open(os.path.join(data, name), newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def haversine(a, b):
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    h = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * 6371.0 * math.asin(math.sqrt(h))


def flight_factor_g(gcd):
    if gcd < 500:
        return 155.0
    if gcd < 1500:
        return 110.0
    if gcd < 4000:
        return 75.0
    return 95.0


def minmax(vals):
    lo, hi = min(vals), max(vals)
    if hi == lo:
        return [0.0 for _ in vals]
    return [(v - lo) / (hi - lo) for v in vals]


def gini_lorenz(values):
    # area between the diagonal and the Lorenz curve, doubled
    xs = sorted(values)
    n = len(xs)
    total = sum(xs)
    cum = 0.0
    area = 0.0
    prev = 0.0
    for x in xs:
        cum += x
        y = cum / total
        area += (prev + y) / (2 * n)
        prev = y
    return max(0.0, 1.0 - 2 * area)


def nearest_rank_labels(values):
    n = len(values)
    desc = sorted(values.values(), reverse=True)
    high = desc[max(1, math.ceil(0.05 * n)) - 1]
    med = desc[math.ceil(0.5 * n) - 1]
    out = {}
    for k, v in values.items():
        out[k] = "high" if v >= high else ("medium" if v >= med else "low")
    return out


def price(text):
    return float(text.replace("$", "").replace(",", ""))


def load(data, corpus_size):
    cities = {r["id"]: r for r in read(data, "cities.csv")}
    airports = defaultdict(list)
    for r in read(data, "airports.csv"):
        if r["city_id"] in cities:
            airports[r["city_id"]].append(r["iata"])
    eligible = [c for c in cities.values() if airports[c["id"]]]
    eligible.sort(key=lambda c: (-int(c["population"]), c["id"]))
    corpus = {c["id"]: c for c in eligible[:corpus_size]}
    return corpus, airports


def trip_options(data, corpus, airports, origin, dest, costs):
    records = {}
    for r in read(data, "routes.csv"):
        if r["origin"] != origin or r["dest"] != dest:
            continue
        o, d = corpus[origin], corpus[dest]
        gcd = haversine((float(o["lat"]), float(o["lng"])), (float(d["lat"]), float(d["lng"])))
        dist = float(r["distance_km"]) if r["distance_km"].strip() else gcd
        if r["mode"] == "drive" and dist > 1000:
            continue
        key = (r["mode"], r["source"], r["carrier"])
        if key not in records or dist < records[key]["dist"]:
            records[key] = {"mode": r["mode"], "dist": dist, "time": float(r["duration_h"]), "carrier": r["carrier"], "gcd": gcd}
    options = []
    o_country, d_country = corpus[origin]["country"], corpus[dest]["country"]

    flights = []
    if airports[origin] and airports[dest]:
        for rec in records.values():
            if rec["mode"] != "flight":
                continue
            carrier = rec["carrier"]
            if any(sep in carrier for sep in "+/,") or carrier not in costs["airlines"]:
                continue
            rate = costs["airlines"][carrier]["domestic" if o_country == d_country else "international"]
            corrected = rec["dist"] * 1.09
            flights.append({
                "mode": "flight", "time": rec["time"], "cost": rate * corrected,
                "em": flight_factor_g(rec["dist"]) * corrected / 1000.0, "carrier": carrier,
            })
    if flights:
        flights.sort(key=lambda f: (f["cost"], f["time"], f["carrier"]))
        options.append(flights[0])

    drives = [r for r in records.values() if r["mode"] == "drive"]
    if drives:
        best = min(drives, key=lambda r: (r["dist"], r["time"]))
        options.append({"mode": "drive", "time": best["time"],
                        "cost": costs["fuel_eur_per_km"][o_country] * best["dist"],
                        "em": 96.0 * best["dist"] / 1000.0})
    trains = [r for r in records.values() if r["mode"] == "train"]
    if trains:
        best = min(trains, key=lambda r: (r["dist"], r["time"]))
        options.append({"mode": "train", "time": best["time"],
                        "cost": costs["train_eur_per_km"] * best["dist"],
                        "em": 24.0 * best["dist"] / 1000.0})
    return options


def tradeoff(options, alpha):
    t = minmax([o["time"] for o in options])
    e = minmax([o["em"] for o in options])
    c = minmax([o["cost"] for o in options])
    scored = []
    for i, o in enumerate(options):
        z = alpha[0] * t[i] + alpha[1] * e[i] + alpha[2] * c[i]
        scored.append((z, MODE_ORDER[o["mode"]], o["mode"]))
    best = min(scored)
    return best[0], best[2]


def popularity(data, corpus, beta):
    raw = {r["city_id"]: r for r in read(data, "popularity.csv") if r["city_id"] in corpus}
    weekly = defaultdict(dict)
    for r in read(data, "gt.csv"):
        if r["city_id"] in raw:
            weekly[r["city_id"]][r["week"]] = float(r["value"])
    gt = {c: sum(w.values()) / len(w) for c, w in weekly.items()}
    ids = sorted(raw)
    poi = dict(zip(ids, minmax([float(raw[c]["poi_count"]) for c in ids])))
    ugc = dict(zip(ids, minmax([float(raw[c]["reviews_opinions"]) for c in ids])))
    gt_ids = sorted(gt)
    trends = dict(zip(gt_ids, minmax([gt[c] for c in gt_ids])))
    rho = {}
    for c in ids:
        if c in trends:
            rho[c] = beta[0] * poi[c] + beta[1] * ugc[c] + beta[2] * trends[c]
        else:
            rho[c] = (beta[0] * poi[c] + beta[1] * ugc[c]) / (beta[0] + beta[1])
    return rho


def seasonality(data, corpus, month, gamma):
    g_avc = {}
    for r in read(data, "avc.csv"):
        c = r["city_id"]
        if c not in corpus:
            continue
        vals = [r[f"m{m}"].strip() for m in range(1, 13)]
        if all(vals):
            g_avc[c] = gini_lorenz([float(v) for v in vals])
    listings = {}
    for r in read(data, "calendar.csv"):
        if r["city_id"] not in corpus:
            continue
        listings[(r["listing_id"], r["date"])] = r
    per_day = defaultdict(lambda: defaultdict(list))
    for (_, date), r in listings.items():
        if int(date[5:7]) != month:
            continue
        per_day[r["city_id"]][date].append((r["available"] in ("t", "true"), price(r["price"])))
    g_adr = {}
    for c, days in per_day.items():
        rates = []
        for entries in days.values():
            avail = [p for a, p in entries if a]
            use = avail if avail else [p for _, p in entries]
            rates.append(sum(use) / len(use))
        if len(rates) >= 2:
            g_adr[c] = gini_lorenz(rates)
    sigma = {}
    for c in corpus:
        a, d = g_avc.get(c), g_adr.get(c)
        if a is not None and d is not None:
            sigma[c] = gamma[0] * a + gamma[1] * d
        elif a is not None:
            sigma[c] = a
        elif d is not None:
            sigma[c] = d
    return sigma, g_avc, g_adr


def display(psi):
    return int(math.floor(psi * 100 + 0.5))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("data")
    ap.add_argument("origin")
    ap.add_argument("month", type=int)
    ap.add_argument("--corpus-size", type=int, default=200)
    ap.add_argument("--indices")
    args = ap.parse_args()

    alpha, beta, gamma, top = norm(ALPHA), norm(BETA), norm(GAMMA), norm(TOP)
    corpus, airports = load(args.data, args.corpus_size)
    with open(os.path.join(args.data, "costs.json")) as f:
        costs = json.load(f)
    rho = popularity(args.data, corpus, beta)
    sigma, g_avc, g_adr = seasonality(args.data, corpus, args.month, gamma)
    rho_labels = nearest_rank_labels(rho)
    sigma_labels = nearest_rank_labels(sigma)

    if args.indices:
        c = args.indices
        print(json.dumps({"popularity": rho.get(c), "seasonality": sigma.get(c),
                          "gini_avc": g_avc.get(c), "gini_adr": g_adr.get(c),
                          "popularity_label": rho_labels.get(c), "seasonality_label": sigma_labels.get(c)}))
        return

    rows = []
    for dest in corpus:
        if dest == args.origin:
            continue
        options = trip_options(args.data, corpus, airports, args.origin, dest, costs)
        if not options or dest not in rho or dest not in sigma:
            continue
        z, best = tradeoff(options, alpha)
        psi = top[0] * z + top[1] * rho[dest] + top[2] * sigma[dest]
        rows.append((psi, corpus[dest]["name"], dest, z, rho[dest], sigma[dest], best))
    rows.sort()
    print("rank,city_id,city,psi,score,tradeoff,popularity,seasonality,popularity_label,seasonality_label,best_mode")
    for i, (psi, name, dest, z, r, s, best) in enumerate(rows, 1):
        print(f"{i},{dest},{name},{psi:.6f},{display(psi)},{z:.6f},{r:.6f},{s:.6f},"
              f"{rho_labels[dest]},{sigma_labels[dest]},{best}")


if __name__ == "__main__":
    main()
