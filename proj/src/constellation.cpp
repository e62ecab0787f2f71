#include "ufcp/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace ufcp {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::square: return "square";
        case Kind::cross: return "cross";
        case Kind::modified8: return "modified8";
        case Kind::quadset: return "quadset";
        case Kind::derived: return "derived";
    }
    return "?";
}

bool Constellation::contains(GaussianInt z) const { return index_of(z) >= 0; }

int Constellation::index_of(GaussianInt z) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == z) return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<GaussianInt> sorted_unique(std::vector<GaussianInt> pts) {
    std::sort(pts.begin(), pts.end(), qam_order_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

Constellation make_qam(int bits) {
    if (bits < 2) throw std::invalid_argument("make_qam: bits must be >= 2");

    std::vector<GaussianInt> pts;
    Kind kind;
    if (bits % 2 == 0) {
        // square: (2m-1) + (2n-1)j, -2^((K-2)/2)+1 <= m, n <= 2^((K-2)/2)
        long long half = 1LL << ((bits - 2) / 2);
        for (long long m = -half + 1; m <= half; ++m)
            for (long long n = -half + 1; n <= half; ++n)
                pts.push_back({2 * m - 1, 2 * n - 1});
        kind = Kind::square;
    } else if (bits == 3) {
        pts = {{1, 3}, {1, 1}, {3, -1}, {1, -1}, {-1, -3}, {-1, -1}, {-3, 1}, {-1, 1}};
        kind = Kind::modified8;
    } else {
        // union of a horizontal and a vertical odd-coordinate rectangle
        long long a = 3LL << ((bits - 5) / 2);  // 3 * 2^((K-5)/2)
        long long b = 1LL << ((bits - 3) / 2);  // 2^((K-3)/2)
        for (long long m = -a + 1; m <= a; ++m)
            for (long long n = -b + 1; n <= b; ++n)
                pts.push_back({2 * m - 1, 2 * n - 1});
        for (long long m = -b + 1; m <= b; ++m)
            for (long long n = -a + 1; n <= a; ++n)
                pts.push_back({2 * m - 1, 2 * n - 1});
        kind = Kind::cross;
    }

    Constellation c;
    c.points = sorted_unique(std::move(pts));
    c.bits = bits;
    c.kind = kind;
    if (c.points.size() != (1ULL << bits))
        throw std::logic_error("make_qam: size mismatch");
    return c;
}

bool same_point_set(const Constellation& a, const Constellation& b) {
    if (a.size() != b.size()) return false;
    auto pa = sorted_unique(a.points);
    auto pb = sorted_unique(b.points);
    return pa == pb;
}

bool rotation_invariant(const Constellation& c) {
    std::set<std::pair<long long, long long>> keys;
    for (auto z : c.points) keys.insert({z.re, z.im});
    const GaussianInt j{0, 1};
    for (auto z : c.points) {
        GaussianInt r = z * j;
        if (!keys.count({r.re, r.im})) return false;
    }
    return true;
}

long long d2_min(const Constellation& c) {
    if (c.size() < 2) throw std::invalid_argument("d_min: need at least two points");
    long long best = -1;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t k = i + 1; k < c.size(); ++k) {
            long long d2 = energy_between(c.points[i], c.points[k]);
            if (best < 0 || d2 < best) best = d2;
        }
    return best;
}

double d_min(const Constellation& c) { return std::sqrt(static_cast<double>(d2_min(c))); }

CornerProfile corner_profile(const Constellation& c) {
    if (c.kind != Kind::square && c.kind != Kind::cross && c.kind != Kind::modified8)
        throw std::invalid_argument("corner_profile: not a modified QAM constellation");

    long long emax = 0;
    for (auto z : c.points) emax = std::max(emax, z.energy());

    // rotation invariance puts one max-energy point in the closed first quadrant
    bool found = false;
    GaussianInt corner{};
    for (auto z : c.points) {
        if (z.energy() != emax || z.re < 0 || z.im < 0) continue;
        if (!found || z.re > corner.re) {
            corner = z;
            found = true;
        }
    }
    if (!found) throw std::logic_error("corner_profile: no corner in first quadrant");

    std::vector<long long> neigh;
    for (auto z : c.points)
        if (energy_between(z, corner) == 4) neigh.push_back(z.energy());
    if (neigh.empty()) throw std::logic_error("corner_profile: isolated corner");
    std::sort(neigh.rbegin(), neigh.rend());

    CornerProfile cp;
    cp.E = emax;
    cp.corner = corner;
    cp.E_s = neigh.front();
    cp.E_t = (neigh.size() > 1) ? neigh[1] : neigh.front();
    return cp;
}

namespace {

struct Energies {
    long long E, Es, Et;
};

Energies profile_of(std::map<int, Energies>& cache, int k) {
    auto it = cache.find(k);
    if (it == cache.end()) {
        CornerProfile cp = corner_profile(make_qam(k));
        it = cache.emplace(k, Energies{cp.E, cp.E_s, cp.E_t}).first;
    }
    return it->second;
}

void half_split(int w, int& u, int& v) {
    if (w % 2 == 0) {
        u = v = w / 2;
    } else {
        u = (w + 1) / 2;
        v = (w - 1) / 2;
    }
}

}  // namespace

EnergyLemmaReport verify_energy_lemmas(int u_max) {
    if (u_max < 3) throw std::invalid_argument("verify_energy_lemmas: u_max must be >= 3");

    EnergyLemmaReport rep;
    std::map<int, Energies> cache;
    const double eps = 1e-9;

    auto add = [&](const std::string& name, int u, int v, int w, double lhs, double rhs,
                   bool pass) {
        rep.checks.push_back({name, u, v, w, lhs, rhs, pass});
        rep.all_pass = rep.all_pass && pass;
    };

    for (int u = 2; u <= u_max; ++u) {
        for (int v = 2; v <= u; ++v) {
            Energies q1 = profile_of(cache, u);
            Energies q2 = profile_of(cache, v);
            int w = u + v;
            int ut = 0, vt = 0;
            half_split(w, ut, vt);
            Energies t1 = profile_of(cache, ut);
            Energies t2 = profile_of(cache, vt);

            double l = 0, r = 0;

            l = static_cast<double>(q2.E + q1.Es);
            r = static_cast<double>(q1.E + q2.Es);
            add("gap_s", u, v, w, l, r, l <= r);

            l = static_cast<double>(q2.E + q1.Et);
            r = static_cast<double>(q1.E + q2.Et);
            add("gap_t", u, v, w, l, r, l <= r);

            l = static_cast<double>(q1.E + q2.E);
            r = static_cast<double>(t1.E + t2.E);
            add("balanced1", u, v, w, l, r, l >= r);

            l = std::sqrt(double(q1.E + q2.Es)) + std::sqrt(double(q1.E + q2.Et));
            r = std::sqrt(double(t1.E + t2.Es)) + std::sqrt(double(t1.E + t2.Et));
            add("balanced2", u, v, w, l, r, l >= r - eps);

            l = std::sqrt(double(q1.E + q2.E)) + std::sqrt(double(q1.E + q2.Es));
            r = std::sqrt(double(t1.E + t2.E)) + std::sqrt(double(t1.E + t2.Es));
            add("balanced3", u, v, w, l, r, l >= r - eps);

            l = std::sqrt(double(q1.E + q2.Es)) + std::sqrt(double(q2.E + q1.Es));
            r = std::sqrt(double(t1.E + t2.Es)) + std::sqrt(double(t2.E + t1.Es));
            add("balanced4", u, v, w, l, r, l >= r - eps);

            // cross-term inequality behind the delta=1 bound comparison:
            // 3(E1*E11 + E1*E2 + E11*E21 + E2*E21) >= (E1+E2)^2
            long long lhs =
                3 * (q1.E * q1.Es + q1.E * q2.E + q1.Es * q2.Es + q2.E * q2.Es);
            long long rhs = (q1.E + q2.E) * (q1.E + q2.E);
            add("cross-term", u, v, w, static_cast<double>(lhs), static_cast<double>(rhs),
                lhs >= rhs);
        }
    }

    for (int w = 4; w <= 2 * u_max; ++w) {
        int ut = 0, vt = 0;
        half_split(w, ut, vt);
        Energies t1 = profile_of(cache, ut);
        Energies t2 = profile_of(cache, vt);
        double l = static_cast<double>(t1.E + t2.Et);
        double r = static_cast<double>(t2.E + t1.Es);
        bool pass = (w % 2 == 0) ? (l <= r) : (l >= r);
        add("balanced_gap_parity", ut, vt, w, l, r, pass);
    }

    return rep;
}

}  // namespace ufcp
