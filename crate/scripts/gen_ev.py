"""Regenerates crates/cli/fixtures/ev.json (the electric-vehicle desk-scale model)."""
import json
from collections import OrderedDict as O
from pathlib import Path

V, L, M, LH, P, C = 3, 4, 3, 4, 4, 6


def chain(prefix, n):
    return O(chain=[f"{prefix}={i}" for i in range(n)], values=list(range(n)))


def pair(a, b):
    return f"({a},{b})"


def chassis(k):
    """Power class needed at velocity v carrying effective load lh; k is frame weight."""
    return lambda v, lh: min(P - 1, v + (lh + k) // 2)


def battery(extra_cost, extra_mass, per_mass):
    """Cost and mass of a battery delivering power class p."""
    return lambda p: (min(C - 1, p + extra_cost), min(M - 1, (p + extra_mass) // per_mass))


FRAMES = ["carbon", "alu", "steel"]
CHEMS = ["lfp", "nmc"]
CHASSIS = {f"chassis_k{k}": chassis(k) for k in range(4)}
BATTERY = {
    # lfp: cheap and heavy; nmc: dearer and light
    "battery_lfp": battery(0, 1, 2),
    "battery_lfp_aged": battery(1, 2, 2),
    "battery_nmc": battery(1, 0, 3),
    "battery_nmc_aged": battery(2, 1, 3),
}

model = O()
model["description"] = (
    "Electric vehicle at desk scale: chassis and battery in threshold form, "
    "with the battery mass fed back into the chassis load."
)
model["posets"] = O(
    V=chain("v", V),
    L=chain("l", L),
    M=chain("m", M),
    Lhat=chain("lh", LH),
    P=chain("p", P),
    Cost=chain("c", C),
    VL=O(product=["V", "L"]),
    VLM=O(product=["VL", "M"]),
    VLhat=O(product=["V", "Lhat"]),
    CostM=O(product=["Cost", "M"]),
    Frame=O(antichain=FRAMES),
    Chem=O(antichain=CHEMS),
)

maps = O()
maps["junction"] = O(
    description="effective load: payload plus battery mass, saturating",
    **{"from": "VLM", "to": "VLhat"},
    table=O(
        (pair(pair(f"v={v}", f"l={l}"), f"m={m}"), pair(f"v={v}", f"lh={min(LH - 1, l + m)}"))
        for v in range(V) for l in range(L) for m in range(M)
    ),
)
for name, phi in CHASSIS.items():
    maps[name] = O(
        **{"from": "VLhat", "to": "P"},
        table=O((pair(f"v={v}", f"lh={h}"), f"p={phi(v, h)}") for v in range(V) for h in range(LH)),
    )
for name, psi in BATTERY.items():
    maps[name] = O(
        **{"from": "P", "to": "CostM"},
        table=O((f"p={p}", pair(f"c={psi(p)[0]}", f"m={psi(p)[1]}")) for p in range(P)),
    )
model["maps"] = maps
model["problems"] = O((n, O(threshold=n)) for n in list(CHASSIS) + list(BATTERY))


def cell(source, target, monad, space, entries):
    return O(source=source, target=target, monad=monad, space=[space],
             entries=[O(param=[p], value=v) for p, v in entries])


ch = lambda k: f"chassis_k{k}"
cells = O()
cells["chassis"] = cell("VLhat", "P", "identity", "Frame",
                        [(f, {"exact": ch(k)}) for k, f in enumerate(FRAMES)])
cells["chassis_powerset"] = cell("VLhat", "P", "powerset", "Frame",
                                 [(f, {"set": [ch(k), ch(k + 1)]}) for k, f in enumerate(FRAMES)])
# heavier frame needs more power: fewer feasible pairs, so it is the lower endpoint
cells["chassis_interval"] = cell("VLhat", "P", "interval", "Frame",
                                 [(f, {"interval": [ch(k + 1), ch(k)]}) for k, f in enumerate(FRAMES)])
cells["chassis_dist"] = cell("VLhat", "P", "dist", "Frame",
                             [(f, {"dist": [[ch(k), "3/4"], [ch(k + 1), "1/4"]]}) for k, f in enumerate(FRAMES)])
bt = lambda c, aged=False: f"battery_{c}" + ("_aged" if aged else "")
cells["battery"] = cell("P", "CostM", "identity", "Chem", [(c, {"exact": bt(c)}) for c in CHEMS])
cells["battery_powerset"] = cell("P", "CostM", "powerset", "Chem",
                                 [(c, {"set": [bt(c), bt(c, True)]}) for c in CHEMS])
cells["battery_interval"] = cell("P", "CostM", "interval", "Chem",
                                 [(c, {"interval": [bt(c, True), bt(c)]}) for c in CHEMS])
cells["battery_dist"] = cell("P", "CostM", "dist", "Chem",
                             [(c, {"dist": [[bt(c), "2/3"], [bt(c, True), "1/3"]]}) for c in CHEMS])
model["cells"] = cells


def ev(suffix, monad):
    body = ["compose", ["compose", ["lift", "junction"], ["prim", "chassis" + suffix]], ["prim", "battery" + suffix]]
    return O(monad=monad, expr=["loop", body, "M"])


model["wirings"] = O(
    ev=ev("", "identity"),
    ev_powerset=ev("_powerset", "powerset"),
    ev_interval=ev("_interval", "interval"),
    ev_dist=ev("_dist", "dist"),
)

bench = []
for v in range(V):
    for h in range(LH):
        p = CHASSIS["chassis_k1"](v, h)
        # a few measurements land one class high
        if (v + h) % 5 == 0:
            p = min(P - 1, p + 1)
        bench.append(O(fun=pair(f"v={v}", f"lh={h}"), res=f"p={p}", feasible=True))
model["datasets"] = O(
    chassis_bench=O(fun="VLhat", res="P", rows=bench),
    ev_trials=O(fun="VL", res="Cost", rows=[
        O(fun="(v=1,l=1)", res="c=3", feasible=True, inputs=["lfp"]),
        O(fun="(v=2,l=2)", res="c=3", feasible=False),
        O(fun="(v=0,l=3)", res="c=2", feasible=True),
    ]),
    battery_trials=O(fun="P", res="CostM", rows=[
        O(fun="p=2", res="(c=3,m=1)", feasible=True),
        O(fun="p=3", res="(c=4,m=1)", feasible=False),
    ]),
    none=O(fun="VL", res="Cost", rows=[]),
)
model["decisions"] = O(
    ev_plain=O(wiring="ev", fun="(v=1,l=2)", objective="worst_case"),
    ev_worst=O(wiring="ev_interval", fun="(v=1,l=2)", objective="worst_case"),
    ev_optimistic=O(wiring="ev_interval", fun="(v=1,l=2)", objective="optimistic"),
    ev_robust=O(wiring="ev_powerset", fun="(v=2,l=2)", objective="worst_case", penalty="10"),
    ev_expected=O(wiring="ev_dist", fun="(v=2,l=2)", objective="expected", penalty="10"),
)
family = [O(theta=f"k={k}", phi=f"chassis_k{k}", complexity=k + 1) for k in range(4)]
model["fits"] = O(
    chassis_ls=O(family=family, data="chassis_bench"),
    chassis_constrained=O(family=family, data="chassis_bench", mode="constrained", **{"lambda": "1/2"}),
)
model["bayes"] = O(
    ev_posterior=O(wiring="ev_dist", data="ev_trials"),
    ev_prior=O(wiring="ev_dist", data="none"),
    battery_posterior=O(cell="battery_dist", data="battery_trials",
                        prior=[O(param=["lfp"], weight="1/4"), O(param=["nmc"], weight="3/4")]),
)

out = Path(__file__).resolve().parent.parent / "crates/cli/fixtures/ev.json"
out.write_text(json.dumps(model, indent=2) + "\n")
print(f"wrote {out}")
