#pragma once

#include <string>
#include <vector>

#include "antirips/complexes.hpp"

namespace antirips {

// Interval of a decreasing-scale barcode: the class appears when the scale
// drops to `birth` and disappears when it drops to `death` (birth >= death).
// Classes alive in the final complex carry death = -inf.
struct BarInterval {
    int dim;
    double birth;
    double death;
};

struct Barcode {
    std::vector<BarInterval> intervals;

    void sort_canonical();
};

// Betti numbers beta_0..beta_max_dim over Z/2 by sparse boundary-matrix
// column reduction. Requires max_dim <= dim_cap - 1 so that no needed
// boundary column was truncated away.
std::vector<int> betti_numbers(const FilteredComplex& complex, int max_dim);

// Same contract, computed independently by dense Gaussian elimination with
// no optimizations; cross-check only, guarded by a simplex-count limit.
std::vector<int> betti_numbers_naive(const FilteredComplex& complex, int max_dim,
                                     std::size_t size_limit = 600);

// Persistence of a decreasing-scale filtration in its canonical order.
Barcode anti_persistence(const FilteredComplex& filtered, int max_dim);

// Number of dim-k bars alive at scale r (birth >= r > death, with the global
// scale tolerance). Matches betti_numbers of the slice at r.
int bars_alive_at(const Barcode& barcode, int dim, double r);

std::string barcode_to_json(const Barcode& barcode);
Barcode barcode_from_json(const std::string& text);
std::string barcode_to_csv(const Barcode& barcode);

}  // namespace antirips
