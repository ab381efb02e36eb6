"""Three pinching schedules, three convergence verdicts.

The same criterion sum over the short length spectrum, normalized by the
surface volume, separates the regimes: reciprocal pinching washes out,
exponential pinching stalls at a positive level, super-exponential pinching
blows up. The local-geometry ratio marches to zero in every case, which is
the whole tension.
"""

from pinchlab import Schedule, classify_schedule, pinch_ladder, plancherel_sum, sandwich_bounds

RADIUS = 1.0


def show(schedule, j_max):
    report = classify_schedule(schedule, RADIUS, j_max)
    print(f"schedule {schedule.name!r} ({schedule.rule}), radius {RADIUS}")
    print("    j    N   t          pl_norm      bs_ratio    in bracket?")
    rows = report.rows
    picks = [rows[0], rows[len(rows) // 2], rows[-1]]
    for row in picks:
        if not row.valid:
            print(f"  {row.j:3d} {row.level:4d}  (flagged: floor below radius)")
            continue
        inside = "yes" if row.lower <= row.pl_norm <= row.upper else "NO"
        print(f"  {row.j:3d} {row.level:4d}  {row.pinch:<9.3g} {row.pl_norm:<11.6f} "
              f"{row.bs_ratio:<11.6f} {inside}")
    print(f"  verdicts: criterion sum {report.plancherel_verdict!r}, "
          f"local ratio {report.bs_verdict!r}")
    print()


show(Schedule.from_rule("slow", range(3, 401), "reciprocal"), 400)
show(Schedule.from_rule("critical", range(3, 21), "exponential"), 18)
show(Schedule.from_rule("fast", range(3, 11), "superexponential"), 8)

# The explicit sandwich is what makes the verdicts checkable rather than
# anecdotal: lower and upper bounds from pure ladder inequalities.
print("sandwich check at N=7, t=1e-4, R=2:")
lower, upper = sandwich_bounds(7, 1e-4, 2.0)
value = float(plancherel_sum(pinch_ladder(1e-4, 2.0, 12), 2.0))
print(f"  {lower:.4f} <= {value:.4f} <= {upper:.4f}")

# certified summation keeps working far past the point where the ladder
# could be enumerated term by term
import math

deep = pinch_ladder(math.exp(-40.0), 1.0, 12)
s = plancherel_sum(deep, 1.0)
print()
print(f"ladder with {deep.count:.3e} rungs: sum = {float(s):.6f} "
      f"+/- {s.radius:.2e} (certified)")
