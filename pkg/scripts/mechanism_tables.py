"""Pivotal taxes on the auction and public-project instances, plus the first-price failure.

    python scripts/mechanism_tables.py
"""
from stratgames import gameio, mechanism


def show(title, mech, types, label):
    d, taxes, utils = mech.outcome(types)
    print(title)
    print(gameio.render_mechanism(d, types, taxes, utils, label(d)))
    print()


def main():
    bids = (18, 21, 24)
    auction = mechanism.pivotal(mechanism.auction_problem(3, bids))
    show("pivotal auction", auction, bids, lambda d: f"{gameio.player_name(d)} wins")

    for types in ((6, 7, 25), (4, 3, 22)):
        project = mechanism.pivotal(mechanism.public_project_problem(3, 30, types))
        show(f"public project, cost 30, types {types}", project, types,
             lambda d: "project takes place" if d else "project cancelled")

    first = mechanism.first_price(mechanism.auction_problem(3, (18, 21, 22, 24)))
    honest = first.utility(2, (18, 21, 24), 24)
    shaded = first.utility(2, (18, 21, 22), 24)
    print(f"first-price: bidder C with value 24 gets {honest} bidding 24 and {shaded} bidding 22")
    print(f"first-price incentive compatible on grid: {bool(mechanism.is_incentive_compatible(first))}")


if __name__ == "__main__":
    main()
