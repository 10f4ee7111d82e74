#!/usr/bin/env python3
"""Smoke test for the wlab_py extension module.

Builds nothing itself: run `cargo build -p wlab-py` first (or pass the
directory containing the compiled library as argv[1]). The script copies the
cdylib next to a temp dir under the importable name and exercises the main
surfaces end to end.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def import_extension():
    candidates = []
    if len(sys.argv) > 1:
        candidates.append(pathlib.Path(sys.argv[1]))
    for profile in ("debug", "release"):
        candidates.append(ROOT / "target" / profile)
    for directory in candidates:
        for stem in ("libwlab_py.so", "wlab_py.so", "libwlab_py.dylib", "wlab_py.pyd"):
            built = directory / stem
            if built.exists():
                staging = pathlib.Path(tempfile.mkdtemp(prefix="wlab-py-"))
                target = staging / "wlab_py.so"
                shutil.copy2(built, target)
                sys.path.insert(0, str(staging))
                import wlab_py  # noqa: E402

                return wlab_py
    sys.exit("build the extension first: cargo build -p wlab-py")


w = import_extension()
checks = 0


def check(cond, label):
    global checks
    if not cond:
        sys.exit(f"FAIL: {label}")
    checks += 1
    print(f"ok: {label}")


# exact dyadic arithmetic
half = w.Dyadic("1*2^-1")
quarter = w.Dyadic.from_parts(1, -2)
check(str(half + quarter) == "3*2^-2", "dyadic addition is exact")
check(str(-half) == "-1*2^-1", "dyadic negation")
check(half > quarter, "dyadic ordering")

# computable reals: (1/2 + 1/4) * 2 = 3/2, queried at level 20
x = w.Real("1*2^-1").add(w.Real("1*2^-2")).mul(w.Real("1*2^1"))
check(str(x.approx(20)) == "3*2^-1", "real arithmetic hits the exact value")
check(w.Real("0*2^0").cmp(w.Real("1*2^0"), 4) == "less", "certified comparison")
check(x.cmp(x, 30) == "unknown", "equal reals stay undecided")

# piecewise-linear functions: f(x) = 2x - 1
ramp = w.PLFunc([("0*2^0", "-1*2^0"), ("1*2^0", "1*2^0")])
lo, hi = ramp.trisect_zero(40)
width = w.Dyadic(hi) - w.Dyadic(lo)
check(width <= w.Dyadic("1*2^-40"), "trisection interval is narrow")
check(w.Dyadic(lo) <= half <= w.Dyadic(hi), "trisection interval holds the zero")
value = ramp.eval(w.Real("1*2^-2")).approx(20)
check(str(value) == "-1*2^-1", "evaluation at 1/4 gives -1/2")

tent = w.PLFunc([("0*2^0", "0*2^0"), ("1*2^-1", "1*2^0"), ("1*2^0", "0*2^0")])
check(
    abs((tent.max_value(30) - w.Dyadic("1*2^0")).to_float()) < 2**-29,
    "tent maximum is 1",
)
check(tent.range("0*2^0", "1*2^0") == ("0*2^0", "1*2^0"), "exact range on [0,1]")

shrink = w.PLFunc([("0*2^0", "3*2^-2"), ("1*2^0", "1*2^-2")])
fp = shrink.fixed_point(20)
check(abs(fp.to_float() - 0.5) < 2**-18, "fixed point of the affine contraction")

# machines: three INCs then HALT 1
prog = "INC 0\nINC 0\nINC 0\nHALT 1"
check(w.run_machine(prog, 0, 2) is None, "still running after 2 steps")
check(w.run_machine(prog, 0, 4) == 1, "halts with output 1 at 4 steps")
check("HALT" in w.godel_program(0), "program enumeration starts with a halt")
a50, b50 = w.inseparable_stage(50)
check(not set(a50) & set(b50), "inseparable pair stays disjoint")

# specker sums of the injected set {1, 3}
check(str(w.specker_term([(5, [1, 3])], 10)) == "5*2^-3", "specker sum reaches 5/8")

# kleene tree with forced bits: 0 in A forces w0=1, 2 in B forces w2=0
check(w.kleene_member([(1, [0])], [(1, [2])], "110"), "forced word is a member")
check(not w.kleene_member([(1, [0])], [(1, [2])], "010"), "flipped bit leaves the tree")

# counterexample family: entering A at stage 3 pins the zero to 7/24
z = w.family_zero([(3, [3])], [], 3, 24)
check(abs(z.to_float() - 7 / 24) < 2**-20, "family zero matches the closed form")

# cluster point of a convergent sequence
c = w.bwt_cluster(["1*2^-1"], 400, 12)
check(abs(c.to_float() - 0.5) < 2**-10, "cluster point of the constant sequence")

# choice on the naturals: excluding 0,1,2 stabilizes at 3
answer, changes = w.cn_solve([1, 2, 3], 100)
check(answer == 3 and changes <= 3, "choice stabilizes with few mind changes")

# diagonal inversion: d = (1, 1/2), tail 1/4
coords, k, changes = w.bim_invert(["1*2^0", "1*2^-1"], "1*2^-2", ["1*2^-1", "1*2^-1"], 20)
check(coords[0] == "1*2^-1" and coords[1] == "1*2^0", "inverse coordinates")
check(k == 2 and changes <= 2, "choice level tracks the diagonal minimum")

# a reduction witness end to end
verdicts = w.check_reduction("zero<=max", 20, 400)
check(verdicts and all(v == "accepted" for v in verdicts), "zero<=max accepted")

print(f"\nsmoke test passed ({checks} checks)")
