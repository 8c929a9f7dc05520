"""Newton polygons of Kummer tower steps, with exact rational slopes.

The step polynomial (T + pi^(1/p^(n+1)))^p - pi^(1/p^n) has coefficient
valuations e_K + (p-k)/p^(n+1) for 0 < k < p, normalized so v(p) = e_K.
The step is elementary exactly when the lower hull is one segment of
slope -i_n/p^n with ramification break i_n = e_K p^n/(p-1) + 1/p.
"""

from fractions import Fraction

from tilted import newton

# A small hull by hand: infinite-valuation points are dropped but
# reported, collinear interior points are removed.
points = [
    newton.NPPoint(0, None),
    newton.NPPoint(1, Fraction(2)),
    newton.NPPoint(2, Fraction(1)),
    newton.NPPoint(3, Fraction(0)),
]
hull = newton.lower_hull(points)
print("vertices:", [(v.k, str(v.v)) for v in hull.vertices])
print("segments:", [(str(s.slope), s.length) for s in hull.segments])
print("dropped indices:", [v.k for v in hull.dropped])

# The Kummer grid: every step is elementary, with the predicted slope.
print()
print(" p  e_K  n   slope        break")
for p in (3, 5, 7):
    for e_k in (1, 2):
        for n in (0, 1):
            ok, slope, _ = newton.verify_elementary(p, e_k, n)
            brk = newton.ramification_break(p, e_k, n)
            mark = "ok" if ok else "NOT ELEMENTARY"
            print(f" {p}   {e_k}   {n}   {str(slope):10s}  {brk}  {mark}")

# The brute-force oracle agrees with the monotone-chain hull.
pts = newton.kummer_step_valuations(5, 2, 1)
assert newton.lower_hull(pts).vertices == newton.hull_oracle(pts)
print()
print("oracle agreement confirmed")
