"""Contract checks for the slx executable: schemas, exit codes, determinism."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BINARY = sys.argv[1]
SCHEMA_DIR = pathlib.Path(sys.argv[2])

registry = Registry()
schemas = {}
for path in sorted(SCHEMA_DIR.glob("*.schema.json")):
    doc = json.loads(path.read_text())
    jsonschema.Draft202012Validator.check_schema(doc)
    registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
    schemas[path.name.removesuffix(".schema.json")] = doc

failures = []


def run(args, env=None):
    return subprocess.run([BINARY, *args], capture_output=True, text=True, env=env, timeout=300)


def check(name, cond, detail=""):
    print(f"[{'ok' if cond else 'FAIL'}] {name}{': ' + detail if detail and not cond else ''}")
    if not cond:
        failures.append(name)


def validate(kind, text):
    try:
        jsonschema.Draft202012Validator(schemas[kind], registry=registry).validate(json.loads(text))
        return True, ""
    except (jsonschema.ValidationError, json.JSONDecodeError) as exc:
        return False, str(exc).splitlines()[0]


ZERO = '{"breakpoints":[0,1],"heights":[0]}'
STEP = '{"breakpoints":[0,0.3,1],"heights":[4,1],"deltas":[{"site":0.6,"weight":2}]}'
DELTA = '{"breakpoints":[0,1],"heights":[0],"deltas":[{"site":0.5,"weight":1}]}'

json_cases = {
    "eig": ["eig", "--q-json", ZERO, "--k0sq", "0", "--k1sq", "0"],
    "eig+samples": ["eig", "--q-json", STEP, "--k0sq", "1", "--k1sq", "2", "--samples"],
    "eig-zero": ["eig-zero", "--k0sq", "4", "--k1sq", "9"],
    "norms": ["norms", "--q-json", '{"breakpoints":[0,0.3,1],"heights":[4,1]}', "--p", "-1,0,0.5,2"],
    "wdist": ["wdist", "--f-json", '{"breakpoints":[0,0.4,0.5,1],"heights":[0,10,0]}',
              "--g-json", DELTA, "--grid", "1024"],
    "family": ["family", "--statement", "1", "--zeta", "0.5", "--n", "4", "--gamma", "0.5"],
    "family+2": ["family", "--statement", "2", "--gamma", "0.5", "--rho", "10"],
    "family+3": ["family", "--statement", "3", "--gamma", "2", "--n", "9"],
    "verify-thm2": ["--format", "json", "verify-thm2", "--gamma", "2", "--k0sq", "1",
                    "--k1sq", "1", "--n", "10,100"],
    "verify-thm1": ["--format", "json", "verify-thm1", "--gamma", "0.5", "--rho", "10"],
    "search": ["--seed", "7", "search", "--gamma", "2", "--mode", "max", "--iters", "25",
               "--rounds", "2", "--height-cap", "4"],
}

for name, args in json_cases.items():
    first = run(args)
    check(f"{name} exits 0", first.returncode == 0, first.stderr.strip())
    ok, why = validate(name.split("+")[0], first.stdout)
    check(f"{name} matches schema", ok, why)
    second = run(args)
    check(f"{name} is byte-identical on rerun", first.stdout == second.stdout)

eig = json.loads(run(json_cases["eig"]).stdout)
check("zero potential gives lambda1 = 0", abs(eig["lambda1"]) <= 1e-10, str(eig["lambda1"]))
fam = json.loads(run(json_cases["family"]).stdout)
check("single spike gamma_norm is 1/4", abs(fam["gamma_norm"] - 0.25) <= 1e-15, str(fam))

thm2 = run(["verify-thm2", "--gamma", "2", "--k0sq", "1", "--k1sq", "1",
            "--n", "10,100,1000,10000"])
lines = thm2.stdout.strip().splitlines()
check("verify-thm2 csv header", lines[0] == "n_or_rho,lambda1,reference,gap", lines[0])
check("verify-thm2 csv has 4 rows", len(lines) == 5, str(len(lines)))
gaps = [float(line.split(",")[3]) for line in lines[1:]]
check("verify-thm2 gap shrinks", all(b < a for a, b in zip(gaps, gaps[1:])), str(gaps))
check("csv uses 17 significant digits",
      all(len(v.lstrip("-").replace(".", "").split("e")[0].lstrip("0")) <= 17
          for v in lines[1].split(",")))

thm1 = run(["verify-thm1", "--gamma", "0.5", "--rho", "10,100"])
check("verify-thm1 csv has one row per rho", len(thm1.stdout.strip().splitlines()) == 3)

env = dict(os.environ, SL_EXTREMAL_THREADS="1")
serial = run(json_cases["verify-thm2"], env=env)
check("thread cap does not change output", serial.stdout == run(json_cases["verify-thm2"]).stdout)

with tempfile.TemporaryDirectory() as tmp:
    target = pathlib.Path(tmp) / "out.json"
    res = run(["-o", str(target), "eig-zero", "--k0sq", "1", "--k1sq", "1"])
    check("output file written", res.returncode == 0 and res.stdout == "" and target.exists())
    if target.exists():
        ok, why = validate("eig-zero", target.read_text())
        check("output file matches schema", ok, why)

error_cases = {
    2: [["eig", "--q-json", '{"breakpoints":[0,1],"heights":[-1]}'],
        ["eig", "--q-json", "{broken"],
        ["eig-zero", "--k0sq", "-2"],
        ["norms", "--q-json", STEP, "--p", "1"],
        ["norms", "--q-json", '{"breakpoints":[0,0.5,1],"heights":[0,1]}', "--p", "-1"],
        ["family", "--statement", "3", "--gamma", "0.5", "--n", "4"],
        ["verify-thm1", "--gamma", "2", "--rho", "10"],
        ["unknown-command"]],
    3: [["family", "--statement", "2", "--gamma", "0.5", "--rho", "10", "--height", "20"],
        ["eig", "--q-json", '{"breakpoints":[0,0.5,1],"heights":[1e20,0]}']],
}
for code, cases in error_cases.items():
    for args in cases:
        res = run(args)
        label = " ".join(args[:2])
        check(f"{label} exits {code}", res.returncode == code, f"got {res.returncode}")
        err_lines = res.stderr.splitlines()
        check(f"{label} writes one error line", len(err_lines) == 1, res.stderr)
        if err_lines:
            ok, why = validate("error", err_lines[0])
            check(f"{label} error matches schema", ok, why)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
