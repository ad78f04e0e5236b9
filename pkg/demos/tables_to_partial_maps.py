"""From bare multiplication tables back to partial bijections.

Three stops: recover the inverse map of a table given only its
multiplication (or learn which axiom is hopeless), compare the three
presentations of "inverse semigroup" on the same table, and realize a
verified table as partial bijections acting on its own elements, with
the natural partial order turning into plain function restriction.
"""

from modeloids.inverse_semigroups import (
    characterize,
    from_partial_bijections,
    natural_leq,
    resolve_inverses,
    wagner_preston,
)
from modeloids.partial_bijections import Carrier, enumerate_all

# meet table of the chain 0 > 1 > 2: x*y = the lower of the two
CHAIN_ROWS = [[max(i, j) for j in range(3)] for i in range(3)]

# left-zero band: x*y = x, the classic non-example
LEFT_ZERO_ROWS = [[0, 0], [1, 1]]


def show_rows(rows):
    for row in rows:
        print("   ", " ".join(str(x) for x in row))


def main():
    print("A chain semilattice, handed over without inverses:")
    show_rows(CHAIN_ROWS)
    table, verdict = resolve_inverses(CHAIN_ROWS)
    print(f"  resolved: {verdict.describe()}, inverse map {table.inv}")
    report = characterize(CHAIN_ROWS)
    print(f"  axiomatic / unique-inverse / regular+commuting: {report.as_tuple()}")
    print()

    print("The left-zero band, same treatment:")
    show_rows(LEFT_ZERO_ROWS)
    failed, verdict = resolve_inverses(LEFT_ZERO_ROWS)
    print(f"  resolved: {verdict.describe()} (table withheld: {failed is None})")
    print()

    print("Every element of an inverse semigroup acts on the fixed points")
    print("of its own domain idempotent.  For the chain:")
    omegas = wagner_preston(table)
    for a, omega in enumerate(omegas):
        rendered = " ".join(f"({x},{y})" for x, y in omega.pairs)
        print(f"  element {a} becomes {{{rendered}}}")
    print("  order-faithful: below in the natural order means restriction:")
    for a in range(table.order):
        for b in range(table.order):
            if a != b and natural_leq(table, a, b):
                contained = omegas[a].is_restriction_of(omegas[b])
                print(f"    {a} <= {b} and omega_{a} inside omega_{b}: {contained}")
    print()

    print("The same machinery swallows the full symmetric inverse monoid on")
    print("two points: abstract its 7 maps to a table, embed the table, and")
    print("land back on partial bijections (now acting on 7 elements).")
    f2, elements = from_partial_bijections(enumerate_all(Carrier(2)))
    images = wagner_preston(f2)
    print(f"  order {f2.order}, neutral {f2.neutral}, zero {f2.zero}")
    print(f"  injective: {len(set(images)) == f2.order}")
    multiplicative = all(
        images[f2.mul[a][b]] == images[a].compose(images[b])
        for a in range(f2.order)
        for b in range(f2.order)
    )
    print(f"  multiplicative: {multiplicative}")
    widest = max(images, key=lambda im: len(im.pairs))
    print(f"  the neutral element acts on all {len(widest.pairs)} elements")


if __name__ == "__main__":
    main()
