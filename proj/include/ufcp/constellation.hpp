#pragma once

#include <string>
#include <vector>

#include "ufcp/gaussian_int.hpp"

namespace ufcp {

enum class Kind { square, cross, modified8, quadset, derived };

std::string kind_name(Kind k);

// Finite ordered set of distinct Gaussian integers.
struct Constellation {
    std::vector<GaussianInt> points;
    int bits = -1;  // log2(size) when a power of two, else -1
    Kind kind = Kind::derived;

    std::size_t size() const { return points.size(); }
    bool contains(GaussianInt z) const;
    int index_of(GaussianInt z) const;  // -1 when absent
};

// Modified 2^K-ary QAM: square for even K, the rotation-invariant 8-point set
// for K=3, union of two odd-coordinate rectangles for odd K >= 5.
// Points ordered row-major (im descending, re ascending).
Constellation make_qam(int bits);

bool same_point_set(const Constellation& a, const Constellation& b);

// Closed under multiplication by j.
bool rotation_invariant(const Constellation& c);

long long d2_min(const Constellation& c);  // exact squared minimum distance
double d_min(const Constellation& c);

// Corner of maximum energy and the energies of its distance-2 neighbors.
// E_s >= E_t; when the corner has a single neighbor (K=3) both equal its energy.
struct CornerProfile {
    long long E = 0;
    long long E_s = 0;
    long long E_t = 0;
    GaussianInt corner;
};

// Tie-break among max-energy points: closed first quadrant, largest real part.
CornerProfile corner_profile(const Constellation& c);

struct EnergyLemmaCheck {
    std::string name;  // "gap_s", "gap_t", "balanced1".."balanced4", "balanced_gap_parity", "cross-term"
    int u = 0;
    int v = 0;
    int w = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct EnergyLemmaReport {
    std::vector<EnergyLemmaCheck> checks;
    bool all_pass = true;
};

// Evaluates the corner-energy inequalities over 2 <= v <= u <= u_max
// (plus the halved-exponent variants over 4 <= w <= 2*u_max).
EnergyLemmaReport verify_energy_lemmas(int u_max);

}  // namespace ufcp
