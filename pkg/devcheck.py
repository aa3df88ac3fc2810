"""Scratch numerical validation (not part of the package)."""
import math
import time

import numpy as np

import vectorvortex as vv

g = vv.make_grid(256, 5.0)
print("pitch:", g.pitch)

# 1. orthonormality
t0 = time.perf_counter()
worst = 0.0
for m1 in range(-4, 5):
    for m2 in range(-4, 5):
        ip = vv.inner_product(vv.lg_mode(g, m1), vv.lg_mode(g, m2))
        err = abs(ip - (1.0 if m1 == m2 else 0.0))
        worst = max(worst, err)
print(f"orthonormality worst |<m1|m2>-delta|: {worst:.3e}  ({time.perf_counter()-t0:.2f}s)")

# timing of one inner product
t0 = time.perf_counter()
for _ in range(10):
    vv.inner_product(vv.lg_mode(g, 2), vv.lg_mode(g, -2))
print(f"inner_product 256^2: {(time.perf_counter()-t0)/10*1000:.2f} ms")

# 2. masked Gaussian overlap
mask2 = vv.azimuthal_phase_mask(g, 2)
g0 = vv.lg_mode(g, 0)
masked = vv.ScalarField(g, mask2.amp * g0.amp)
ov = vv.inner_product(vv.lg_mode(g, 2), masked)
print(f"<LG2|mask2*LG0> = {ov!r}, |ov| = {abs(ov)!r}, vs 1/sqrt2 = {1/math.sqrt(2)!r}, diff = {abs(ov)-1/math.sqrt(2):.3e}")

# radial quadrature oracle
r = np.linspace(0.0, 12.0, 1_200_001)
n2 = 1.0 / math.sqrt(math.pi)
n0 = math.sqrt(2.0 / math.pi)
integrand = n2 * 2.0 * r**2 * np.exp(-2.0 * r**2) * n0 * r
oracle = 2.0 * math.pi * np.trapezoid(integrand, r)
print(f"quadrature oracle = {oracle!r}")

# 3. charge shift round trip
f = vv.make_ns_state(0, 0, 0.0, g)  # D-ish gaussian both arms
s1 = vv.apply_spp(f, 2)
s2 = vv.apply_spp(s1, -2)
err = max(np.abs(s2.e_h.amp - f.e_h.amp).max(), np.abs(s2.e_v.amp - f.e_v.amp).max())
print(f"spp round-trip pixel error 256: {err:.3e}")

g64 = vv.make_grid(64, 4.0)
f64 = vv.make_ns_state(0, 0, 0.0, g64)
s164 = vv.apply_spp(f64, 2)
s264 = vv.apply_spp(s164, -2)
err64 = max(np.abs(s264.e_h.amp - f64.e_h.amp).max(), np.abs(s264.e_v.amp - f64.e_v.amp).max())
print(f"spp round-trip pixel error 64: {err64:.3e}")

g16 = vv.make_grid(16, 3.0)
f16 = vv.make_ns_state(0, 0, 0.0, g16)
try:
    s116 = vv.apply_spp(f16, 2)
    s216 = vv.apply_spp(s116, -2)
    err16 = max(np.abs(s216.e_h.amp - f16.e_h.amp).max(), np.abs(s216.e_v.amp - f16.e_v.amp).max())
    print(f"spp round-trip pixel error 16: {err16:.3e}")
except ValueError as e:
    print("n=16 spp:", e)

# residual on out-of-family input
masked_vec = vv.VectorField(masked, masked)
try:
    vv.apply_spp(masked_vec, 1)
    print("masked input: NO error (bad)")
except ValueError as e:
    print("masked input correctly rejected:", str(e)[:90])

# 4. chain equivalences
src_h = vv.VectorField(g0, vv.ScalarField(g, np.zeros((256, 256), complex)))
chain = [vv.Hwp(math.radians(22.5)), vv.Spp(2), vv.Slm(-4, math.pi / 2)]
out = vv.run_chain(src_h, chain)
target = vv.make_ns_state(-2, 2, math.pi / 2, g)
print(f"fig3 chain overlap: {abs(vv.state_overlap(out, target))!r}  1-|ov| = {1-abs(vv.state_overlap(out, target)):.3e}")

d_src = vv.VectorField(vv.ScalarField(g, g0.amp / math.sqrt(2)), vv.ScalarField(g, g0.amp / math.sqrt(2)))
dual3 = vv.run_chain(d_src, [vv.Slm(3, 0.0), vv.Hwp(math.radians(45)), vv.Slm(1, 0.0)])
print(f"dual-slm 3elt vs (1,3,0): {abs(vv.state_overlap(dual3, vv.make_ns_state(1, 3, 0.0, g))):.15f}")
dual4 = vv.run_chain(d_src, [vv.Slm(3, 0.0), vv.Hwp(math.radians(45)), vv.Slm(1, 0.0), vv.Hwp(math.radians(45))])
print(f"dual-slm 4elt vs (3,1,0): {abs(vv.state_overlap(dual4, vv.make_ns_state(3, 1, 0.0, g))):.15f}")

# 5. DOP oracle equivalence timing + values
t0 = time.perf_counter()
worst_dd = 0.0
for mh in range(-3, 4):
    for mv in range(-3, 4):
        for phi in (0.0, math.pi / 4, math.pi / 2):
            st = vv.make_ns_state(mh, mv, phi, g)
            d1 = vv.dop(vv.stokes(vv.projection_powers(st)))
            d2 = vv.dop_from_matrix(vv.reduced_polarization_matrix(st))
            worst_dd = max(worst_dd, abs(d1 - d2))
dt = time.perf_counter() - t0
print(f"147-case oracle equivalence worst diff: {worst_dd:.3e} in {dt:.1f}s")

# 6. petal analysis
for (mh, mv) in [(-2, 2), (1, -2), (-4, 2), (3, 2), (6, 2), (-1, 2), (1, 2)]:
    st = vv.make_ns_state(mh, mv, math.pi / 2, g)
    img_d = vv.intensity_image(st, vv.basis("D"))
    img_h = vv.intensity_image(st, vv.basis("H"))
    r_star, samples = vv.ring_profile(img_d)
    ratio = samples.max() / max(samples.min(), 1e-300)
    print(f"(mh={mh},mv={mv}) petals D: {vv.count_petals(img_d)} (want {abs(mh-mv)}), H: {vv.count_petals(img_h)} (want 0), r*={r_star}, ratio={ratio:.2f}")

# rotations: A vs D rotated by pi/dm; L vs D by (pi/2)/dm
st = vv.make_ns_state(-2, 2, math.pi / 2, g)
imgs = {b: vv.intensity_image(st, vv.basis(b)) for b in "DALR"}
rD, sD = vv.ring_profile(imgs["D"])
profiles = {b: vv.ring_profile(imgs[b])[1] for b in "DALR"}
# sample A on D's radius for fair comparison
for b in "ALR":
    shift = vv.cyclic_correlation_shift(profiles[b], sD)
    print(f"{b} vs D shift: {shift} samples = {shift*0.5} deg (period {720//4} samples)")

# petal rotation with phi
dm = 4
stA = vv.make_ns_state(-2, 2, 0.0, g)
stB = vv.make_ns_state(-2, 2, math.pi / 2, g)
pa = vv.ring_profile(vv.intensity_image(stA, vv.basis("D")))[1]
pb = vv.ring_profile(vv.intensity_image(stB, vv.basis("D")))[1]
print("phi rotation shift:", vv.cyclic_correlation_shift(pb, pa), "expect", int((math.pi/2)/dm / (2*math.pi) * 720))

# 7. refinement stability
g512 = vv.make_grid(512, 5.0)
worst_ref = 0.0
for m1 in range(-4, 5):
    for m2 in range(-4, 5):
        a = vv.inner_product(vv.lg_mode(g, m1), vv.lg_mode(g, m2))
        b = vv.inner_product(vv.lg_mode(g512, m1), vv.lg_mode(g512, m2))
        worst_ref = max(worst_ref, abs(a - b))
print(f"refinement worst diff: {worst_ref:.3e}")

# masked overlap refinement
mask512 = vv.azimuthal_phase_mask(g512, 2)
g0512 = vv.lg_mode(g512, 0)
masked512 = vv.ScalarField(g512, mask512.amp * g0512.amp)
ov512 = vv.inner_product(vv.lg_mode(g512, 2), masked512)
print(f"masked overlap refinement diff: {abs(ov - ov512):.3e}")

# 8. stokes / table numbers
sep = vv.make_ns_state(0, 0, math.pi / 2, g)
pp = vv.projection_powers(sep)
d = vv.dop(vv.stokes(pp))
print(f"separable DOP: {d!r}, S_L: {vv.linear_entropy(d)!r}")
ns = vv.make_ns_state(-2, 2, math.pi / 2, g)
dns = vv.dop(vv.stokes(vv.projection_powers(ns)))
print(f"non-separable DOP: {dns!r}, S_L: {vv.linear_entropy(dns)!r}")
print("linear_entropy(0.94):", vv.linear_entropy(0.94), " (0.05):", vv.linear_entropy(0.05))

# eq1 all-0.5 powers
e1 = vv.sagnac_generate(2, g)
pp1 = vv.projection_powers(e1)
print("eq1 powers:", [round(x, 12) for x in (pp1.i_h, pp1.i_v, pp1.i_d, pp1.i_a, pp1.i_l, pp1.i_r)])

# winding of LG2 phase
lg2 = vv.lg_mode(g, 2)
nang = 720
cx = (256 - 1) / 2
th = 2 * np.pi * np.arange(nang) / nang
rpix = 1.0 / g.pitch
ii = np.clip(np.round(cx + rpix * np.sin(th)).astype(int), 0, 255)
jj = np.clip(np.round(cx + rpix * np.cos(th)).astype(int), 0, 255)
ph = np.angle(lg2.amp[ii, jj])
wind = np.sum(np.angle(np.exp(1j * np.diff(np.concatenate([ph, ph[:1]])))))
print(f"LG2 winding: {wind/(2*np.pi):.3f} turns (want 2)")

# donut center
c = 256 // 2
centre_amp = np.abs(lg2.amp[c - 1:c + 1, c - 1:c + 1]).max()
print(f"LG2 center/max: {centre_amp/np.abs(lg2.amp).max():.3e}")

# hermitian exactness
a = vv.lg_mode(g, 1)
b = masked
print("hermitian exact:", vv.inner_product(a, b) == vv.inner_product(b, a).conjugate())
print("power==ip exact:", vv.power(a) == vv.inner_product(a, a).real)

# preset timing
t0 = time.perf_counter()
import tempfile, pathlib
with tempfile.TemporaryDirectory() as td:
    vv.run_preset("table1", out_dir=str(pathlib.Path(td) / "t1"))
print(f"table1 preset: {time.perf_counter()-t0:.2f}s")
