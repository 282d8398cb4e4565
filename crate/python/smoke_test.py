"""Smoke test for the hgp_erasure extension module."""

import hgp_erasure as he

rep3 = he.TannerGraph([[1, 1, 0], [0, 1, 1]])
assert (rep3.num_bits, rep3.num_checks) == (3, 2)
assert rep3.is_stopping_set([0, 1, 2])
assert not rep3.is_stopping_set([0])
assert he.TannerGraph.from_alist(rep3.to_alist()).matrix() == rep3.matrix()

g = he.TannerGraph.peg(12, 8, 3, seed=5)
code = he.HgpCode(g)
assert code.num_qubits == 12 * 12 + 8 * 8
assert code.is_css_valid()
print(code)

# A single X generator stalls plain peeling; one pruning step clears it.
row = code.h_x()[0]
zero_syndrome = [0] * code.num_z_checks
assert code.decode("peeling", row, zero_syndrome)["status"] == "aborted"
out = code.decode("pruned:1", row, zero_syndrome)
assert out["status"] == "corrected"
assert code.classify(out["correction"], [0] * code.num_qubits) == "success"

erasure, error, syndrome = code.sample(0.1, seed=7, stream=3)
assert code.syndrome(error) == syndrome
assert all(e <= s for e, s in zip(error, erasure))
ml = code.decode("ml", erasure, syndrome)
if not code.erasure_supports_logical(erasure):
    assert code.classify(ml["correction"], error) == "success"

csv_text = code.sweep([0.05, 0.2], 200, ["peeling", "combined:1", "ml"], seed=1)
lines = csv_text.strip().splitlines()
assert len(lines) == 1 + 2 * 3, csv_text
assert csv_text == code.sweep([0.05, 0.2], 200, ["peeling", "combined:1", "ml"], seed=1, workers=2)

try:
    code.decode("nonsense", erasure, syndrome)
except ValueError:
    pass
else:
    raise AssertionError("unknown decoder accepted")

print(lines[0])
print("smoke test passed")
