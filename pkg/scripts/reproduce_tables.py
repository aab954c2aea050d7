"""Print the cost comparison tables and the dimension counts."""
from eclab import costkit


def main():
    ws = costkit.TABLE_WS
    for title, rows in (("tripling", costkit.tripling_table()), ("doubling", costkit.doubling_table())):
        print(f"== {title} (wS = {', '.join(f'{w:.4g}' for w in ws)})")
        for r in rows:
            cells = "  ".join(f"{x:6.3f}" for x in r.raw)
            exp = "  ".join(f"{e:6.2f}" for e in r.expected)
            line = f"{r.label:>20}  {cells}   expected {exp}"
            if r.addition is not None:
                line += f"   | add {r.addition.label()}: " + " ".join(f"{x:.2f}" for x in r.addition_raw)
            print(line)
        bad = costkit.check_table(rows)
        print("   all cells within", costkit.TABLE_TOLERANCE if not bad else bad)
    print("== dimensions: monomials, sections, relations")
    for r in costkit.dimension_table():
        print(f"   d={r.d} n={r.n}: {r.monomial_dim:3d} {r.section_dim:3d} {r.relation_dim:3d}")
    for d in range(3, 7):
        r = costkit.dimension_report(d, 2, 2)
        print(f"   d={d} bidegree (2,2): {r.monomial_dim} - {r.section_dim} = {r.relation_dim}")


if __name__ == "__main__":
    main()
