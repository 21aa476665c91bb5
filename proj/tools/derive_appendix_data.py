#!/usr/bin/env python3
"""Regenerates data/nmc811_battery.json, data/factors_appendix.csv and the
three scenario files from the published battery and cell inventory tables.

Each emission factor is score / amount rounded to 6 significant digits. When a
key appears in more than one table the row whose amount carries the most
significant digits wins (the cell tables print amounts to 5 places where the
pack tables often print 1-3 significant digits).
"""
import csv
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

CELL_ID = "market for battery cell production, Li-ion, NMC811"
ELEC = "market for electricity, medium voltage"

# (input, origin, amount, unit, score) per table, in printed order.
PACK = {
    "CN": [
        (CELL_ID, "CN", 0.71359, "kg", 11.99286),
        ("market for aluminium, wrought alloy", "GLO", 0.14283, "kg", 1.91437),
        ("market for battery management system production, Li-ion", "GLO", 0.02426, "kg", 1.67246),
        ("market for battery module packaging, Li-ion", "GLO", 0.05718, "kg", 1.10324),
        ("market for electronic component, passive, unspecified", "GLO", 0.00431, "kg", 0.25795),
        ("market for metal working factory", "GLO", 1.48e-09, "unit", 0.18149),
        ("market for impact extrusion of aluminium, 1 stroke", "GLO", 0.14162, "kg", 0.12155),
        ("market for ethylene glycol", "GLO", 0.02302, "kg", 0.04556),
        ("market for reinforcing steel", "GLO", 0.00642, "kg", 0.01323),
        ("market for polyethylene, high density, granulate", "GLO", 0.00405, "kg", 0.00909),
        ("market for copper, anode", "GLO", 0.00100, "kg", 0.00576),
        ("market for injection moulding", "GLO", 0.00405, "kg", 0.00499),
        ("market for glass fibre reinforced plastic, polyamide, injection moulded", "GLO", 0.00033, "kg", 0.00288),
        ("market for sheet rolling, steel", "GLO", 0.00642, "kg", 0.00230),
        ("market for sheet rolling, aluminium", "GLO", 0.00121, "kg", 0.00077),
        ("market for sheet rolling, copper", "GLO", 0.00100, "kg", 0.00052),
        (ELEC, "CN", 0.00028, "kWh", 2.79e-04),
        ("market for tap water", "RoW", 0.02302, "kg", 2.34e-05),
    ],
}
PACK_ELEC = {"SK": 1.32e-04, "SE": 1.22e-05}

CELL = {
    "CN": [
        ("market for cathode, NMC811, for Li-ion battery", "CN", 0.37730, "kg", 10.70836),
        ("market for anode, silicon coated graphite, for Li-ion battery", "CN", 0.21810, "kg", 1.34061),
        (ELEC, "CN", 1.26160, "kWh", 1.25836),
        ("market for copper collector foil, for Li-ion battery", "GLO", 0.12430, "kg", 1.03297),
        ("market for electrolyte, for Li-ion battery", "GLO", 0.16830, "kg", 0.77075),
        ("market for heat, district or industrial, natural gas", "RoW", 13.29100, "MJ", 0.49437),
        ("market for aluminium collector foil, for Li-ion battery", "GLO", 0.02840, "kg", 0.43461),
        ("market for aluminium, wrought alloy", "GLO", 0.02840, "kg", 0.38065),
        ("market for copper, anode", "GLO", 0.03300, "kg", 0.18994),
        ("market for battery separator", "GLO", 0.01820, "kg", 0.08900),
        ("market for chemical factory, organics", "GLO", 4e-10, "unit", 0.05841),
        ("market for sheet rolling, aluminium", "GLO", 0.02840, "kg", 0.01797),
        ("market for sheet rolling, copper", "GLO", 0.03300, "kg", 0.01708),
        ("market for polyethylene terephthalate, granulate, amorphous", "GLO", 0.00280, "kg", 0.00851),
        ("market for polypropylene, granulate", "GLO", 0.00120, "kg", 0.00266),
        ("market for extrusion, plastic film", "GLO", 0.00400, "kg", 0.00213),
    ],
}
CELL_ELEC = {"SK": 0.59415, "SE": 0.05504}


def sig_digits(x: float) -> int:
    text = f"{x:.5f}" if x >= 1e-5 else f"{x:.3g}"
    if "e" in text:
        return len(text.split("e")[0].replace(".", "").lstrip("0"))
    return len(text.replace(".", "").lstrip("0"))


def round_sig(x: float, digits: int = 6) -> float:
    return float(f"{x:.{digits - 1}e}")


def main() -> None:
    rows = list(PACK["CN"][1:]) + list(CELL["CN"])
    for region, score in PACK_ELEC.items():
        rows.append((ELEC, region, 0.00028, "kWh", score))
    for region, score in CELL_ELEC.items():
        rows.append((ELEC, region, 1.26160, "kWh", score))

    best = {}
    for name, origin, amount, unit, score in rows:
        key = (name, origin, unit)
        rank = sig_digits(amount)
        if key not in best or rank > best[key][0]:
            best[key] = (rank, round_sig(score / amount))

    with open(DATA / "factors_appendix.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["input_name", "origin", "unit", "gwp_factor"])
        for (name, origin, unit), (_, factor) in sorted(best.items()):
            writer.writerow([name, origin, unit, f"{factor:.6g}"])

    def exchanges(table, cell_kind):
        out = []
        for name, origin, amount, unit, _ in table:
            kind = "process" if name == cell_kind else "leaf"
            out.append({"input": name, "origin": origin, "amount": amount, "unit": unit, "kind": kind})
        return out

    graph = {
        "processes": [
            {"id": "battery_pack", "reference_flow": {"quantity": 1, "unit": "kg"},
             "exchanges": exchanges(PACK["CN"], CELL_ID)},
            {"id": CELL_ID, "reference_flow": {"quantity": 1, "unit": "kg"},
             "exchanges": exchanges(CELL["CN"], None)},
        ]
    }
    (DATA / "nmc811_battery.json").write_text(json.dumps(graph, indent=2) + "\n")

    for region in ("CN", "SK", "SE"):
        scenario = {
            "name": region,
            "substitutions": [
                {"match": "electricity, medium voltage", "new_origin": region},
                {"match": "battery cell production", "new_origin": region},
            ],
        }
        path = DATA / "scenarios" / f"{region.lower()}.json"
        path.write_text(json.dumps(scenario, indent=2) + "\n")


if __name__ == "__main__":
    main()
