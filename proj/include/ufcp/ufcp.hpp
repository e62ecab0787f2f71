#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "ufcp/constellation.hpp"

namespace ufcp {

// Verified uniquely factorable pair: the quotient map (x, y) -> y/x is
// injective on X x Y, so Z = Y/X splits into |X| disjoint groups of |Y|.
struct Ufcp {
    Constellation X;  // units only ({1}, {1,j} or {1,-1,j,-j})
    Constellation Y;
    Constellation Z;  // quotient set, |Z| = |X| * |Y|

    // group for X.points[i], aligned with Y order: groups_by_x[i][k] = Y[k]/X[i]
    std::vector<std::vector<GaussianInt>> groups_by_x;

    // quotient point -> (x index, y index); exact-integer keyed
    std::unordered_map<GaussianInt, std::pair<int, int>, GaussianIntHash> lookup;

    // Validates the partition invariants; throws std::invalid_argument when
    // (X, Y) is not a UFCP or X contains a non-unit.
    static Ufcp create(const Constellation& x, const Constellation& y);

    const std::vector<GaussianInt>& group(GaussianInt x) const;
};

// Quotient-count criterion: |{y/x}| == |X| * |Y|. Exact fraction arithmetic,
// so non-unit X elements are fine. 0 in X with |Y| >= 2 is simply not a UFCP.
bool verify_ufcp(const Constellation& x, const Constellation& y);

// Z = Y/X with exact Gaussian-integer values; requires unit X and a verified pair.
Constellation quotient_set(const Constellation& x, const Constellation& y);

// Optimal factorization of the modified QAM constellation Z into X * Y with
// max-min distance Y: X = {1,j} (x_size 2) or {1,-1,j,-j} (x_size 4).
// For K >= 4 the closed-form index sets are cross-checked against the
// corner-started diagonal / every-other walk; K in {2,3,5} uses the listed sets.
Ufcp factorize(const Constellation& z, int x_size);
Ufcp factorize_qam(int bits, int x_size);

// Minimum distance the corner-walk construction is meant to achieve.
// The listed K=3, x_size=2 set measures below this claim (pair at distance 2);
// callers should compare against d_min(Y) and flag, not assert.
double walk_dmin_claim(int bits, int x_size);

}  // namespace ufcp
