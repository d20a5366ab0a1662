"""Turn business objectives into required growth rates and horizons.

The bakery wants to know: how long to double at the current pace, how long
to overtake the market leader, and how fast it must grow to overtake them
within five years.

Run: python demos/02_growth_targets.py
"""

import growthplan as gp

OUR_SALES = 1_742_000.0       # loaves per year
LEADER_SALES = 2_950_000.0
LEADER_RATE = 0.03
OUR_HISTORIC_RATE = 0.08


def main():
    print("Doubling time at the historic 8% pace")
    print(f"  rule of 70     {gp.years_to_multiple_rule70(8.0):6.2f} years  (shortcut)")
    print(f"  exact          {gp.years_to_multiple_exact(2.0, OUR_HISTORIC_RATE):6.2f} years")

    print("\nTripling time at the same pace")
    print(f"  exact          {gp.years_to_multiple_exact(3.0, OUR_HISTORIC_RATE):6.2f} years")

    rivalry = gp.CatchupProblem(
        follower_level=OUR_SALES,
        leader_level=LEADER_SALES,
        leader_rate=LEADER_RATE,
        follower_rate=OUR_HISTORIC_RATE,
    )
    horizon = gp.catchup_horizon(rivalry)
    print(f"\nOvertaking the leader at current paces (8% vs 3%)")
    print(f"  crossing point {horizon:6.2f} years out")
    print(f"  both at        {gp.future_value(OUR_SALES, OUR_HISTORIC_RATE, horizon):,.0f} loaves")

    print("\nRequired pace to overtake within fixed deadlines")
    print(f"  {'deadline':>10} {'required rate':>15}")
    for years in (3, 5, 8, 10):
        rate = gp.required_rate(rivalry, years)
        numeric = gp.required_rate_numeric(rivalry, years)
        assert abs(rate - numeric) < 1e-10  # closed form and solver agree
        print(f"  {years:>8} y {100 * rate:>13.2f} %")

    print("\nShorter deadlines demand sharply higher growth; the board can now")
    print("pick a deadline whose required rate looks achievable.")


if __name__ == "__main__":
    main()
