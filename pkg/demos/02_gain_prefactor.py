"""The amplifier prefactor of the receiver signal-to-noise ratio.

The single-mode-pair SNR factorizes into a gain-dependent prefactor
(G - 1/G)^2 / (G^2 + 1/G^2) times a gain-independent remainder.  The
prefactor vanishes at unity gain (no phase-insensitive correlation, no
interference signal) and saturates toward one, so amplification beyond
roughly 15 dB buys almost nothing.

A note on conventions: gains are quoted here as amplitude gains, so
dB = 20*log10(G) and 15 dB means G = 5.62 (prefactor 0.937).  Reading the
same "15 dB" as a power ratio, 10*log10(G), would mean G = 31.6 and a
prefactor of 0.998; both readings land in the saturated plateau.
"""

from qillum import GainSpec, gain_prefactor

print(f"{'gain dB':>8} {'gain':>10} {'prefactor':>11}")
for gain_db in (0.0, 1.0, 3.0, 6.0, 10.0, 15.0, 20.0, 23.0, 23.1, 30.0):
    gain = GainSpec.from_db(gain_db)
    print(f"{gain_db:8.1f} {gain.linear:10.3f} {gain_prefactor(gain):11.7f}")

print()
print("the 0.99 level is crossed at 23.0102 dB (amplitude convention);")
print("generate plot-ready data with:  qillum figure gain-prefactor")
