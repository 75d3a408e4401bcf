"""Smoke test for the modalqt extension module."""

import modalqt as mq

gf4 = mq.Field("GF(4)")
assert (gf4.order, gf4.characteristic, gf4.degree) == (4, 2, 2)
assert gf4.elements() == ["0", "1", "x", "x+1"]
assert gf4.mul(2, 2) == 3
assert gf4.mul(gf4.inverse(3), 3) == 1

sigma = mq.State.named("mobit:sigma")
assert sigma.coeffs == [1, 1] and sigma.dim == 2
assert mq.possible(sigma, "mobit:Z") == ["+z", "-z"]
assert mq.possible("mobit:sigma", mq.Measurement.named("mobit:Y")) == ["+y"]
assert mq.State("GF(2)", [0, 1]).evolve([[1, 1], [0, 1]]).coeffs == [1, 1]
assert mq.State.from_json(sigma.to_json()) == sigma
assert mq.State.named("bell:S").ket([2, 2]) == "|0,1⟩ + |1,0⟩"

c = mq.census("GF(2)", 2, 2)
assert (c["total"], c["product"], c["entangled"]) == (15, 9, 6)
assert mq.reduce("bell:S") == [[1, 0], [0, 1]]

bell = mq.bell("bell:S")
assert (bell["search"]["searched"], bell["search"]["consistent"]) == (64, 0)

clone = mq.no_cloning()
assert all(w["cloning_fails"] for w in clone["witnesses"])

for m in ["00", "01", "10", "11"]:
    t = mq.superdense(m)
    assert t["result"] == m and t["verdict"] == "success"

for s in ["mobit:0", "mobit:1", "mobit:sigma"]:
    sweep = mq.teleport(s)
    assert len(sweep) == 4
    assert all(t["verdict"] == "success" for t in sweep)

for bad in [lambda: mq.Field("GF(6)"), lambda: mq.State.named("mobit:2"), lambda: mq.superdense("2")]:
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

try:
    mq.Field("GF(1024)")
except OverflowError:
    pass
else:
    raise AssertionError("expected OverflowError")

print("smoke test: ok")
