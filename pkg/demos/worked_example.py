# Walk through the binary wiretap construction on a small real-valued channel.
# The eavesdropper has a 3-level ADC with shifted thresholds, the legitimate
# receiver a symmetric one-bit ADC, and the eavesdropper gain is the larger one.

from wiretap_adc import (
    AdcSpec,
    ComplexAdcPair,
    ComplexGain,
    WiretapChannel,
    achieve,
    one_bit,
    secrecy_rate,
    zchannel_limit,
)
from wiretap_adc.infotheory import DiscreteInput

chan = WiretapChannel(
    w1=ComplexGain(1.0),
    w2=ComplexGain(2.0),
    legit_adc=ComplexAdcPair(one_bit(), one_bit()),
    eave_adc=ComplexAdcPair(AdcSpec((-0.5, 1.0), (0.0, 1.0, 2.0)), one_bit()),
    mode="real",
)

result = achieve(chan)
print("near point a =", result.a)
print("far point  b =", result.b)
print("P(near)  phi =", result.phi)
print("crossover p1 =", result.p1)
print("crossover p2 =", result.p2)
print("exact rs     =", result.exact_rate.rs)
print("limit rate   =", result.limit_rate)
print("check        =", zchannel_limit(result.phi, result.p1, result.p2))

# push the far point outward; the exact rate should settle onto the limit
print()
print("   b      exact rs        |exact - limit|")
for k in range(8):
    b = result.b * 2**k
    dist = DiscreteInput((result.a, b), (result.phi, 1.0 - result.phi))
    rs = secrecy_rate(chan, dist).rs
    print(f"{b:8.1f}  {rs:.12f}  {abs(rs - result.limit_rate):.3e}")
