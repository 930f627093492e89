"""Check the layer cell-count formulas against direct enumeration.

The number of cells at Chebyshev distance l from a center in d dimensions
is (2l+1)^d - (2l-1)^d, and layers 1..l together hold (2l+1)^d - 1 cells.
This script enumerates the shells and prints both values side by side.
"""

from gridneighbors import layer_cell_count, layer_cells, total_cell_count

for d in (1, 2, 3, 4):
    center = (0,) * d
    cumulative = 0
    print(f"\nd = {d}")
    print(f"  {'layer':>5} {'enumerated':>10} {'formula':>8} {'cumulative':>10} {'formula':>8}")
    for l in range(1, 5):
        shell = layer_cells(center, l)
        cumulative += len(shell)
        print(f"  {l:>5} {len(shell):>10} {layer_cell_count(l, d):>8} "
              f"{cumulative:>10} {total_cell_count(l, d):>8}")

print("\nNote how the d=4 column explodes: that is the curse of dimensionality")
print("that makes grid exploration unattractive in high-dimensional spaces.")
