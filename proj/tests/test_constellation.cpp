#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ufcp/constellation.hpp"

using namespace ufcp;

namespace {

// Independent membership predicate straight from the definition, used as the
// enumeration oracle against make_qam's index-range construction.
bool in_modified_qam(int k, long long re, long long im) {
    if (re % 2 == 0 || im % 2 == 0) return false;
    auto odd_abs_le = [](long long v, long long bound) { return std::llabs(v) <= bound; };
    if (k % 2 == 0) {
        long long lim = (1LL << (k / 2)) - 1;
        return odd_abs_le(re, lim) && odd_abs_le(im, lim);
    }
    if (k == 3) {
        static const GaussianInt listed[] = {{1, 3},  {1, 1},   {3, -1}, {1, -1},
                                             {-1, -3}, {-1, -1}, {-3, 1}, {-1, 1}};
        for (auto z : listed)
            if (z.re == re && z.im == im) return true;
        return false;
    }
    long long wide = 6LL * (1LL << ((k - 5) / 2)) - 1;  // 2*3*2^((K-5)/2) - 1
    long long narrow = 2LL * (1LL << ((k - 3) / 2)) - 1;
    return (odd_abs_le(re, wide) && odd_abs_le(im, narrow)) ||
           (odd_abs_le(re, narrow) && odd_abs_le(im, wide));
}

// Closed forms for the corner energies (largest point and its two
// distance-2 neighbors).
long long closed_E(int k) {
    if (k == 3) return 10;
    if (k % 2 == 0) {
        long long s = (1LL << (k / 2)) - 1;
        return 2 * s * s;
    }
    long long a = 3LL * (1LL << ((k - 3) / 2)) - 1;
    long long b = (1LL << ((k - 1) / 2)) - 1;
    return a * a + b * b;
}

long long closed_Es(int k) {
    if (k == 2 || k == 3) return 2;
    if (k % 2 == 0) {
        long long s = 1LL << (k / 2);
        return (s - 1) * (s - 1) + (s - 3) * (s - 3);
    }
    long long a = 3LL * (1LL << ((k - 3) / 2)) - 1;
    long long b = (1LL << ((k - 1) / 2)) - 3;
    return a * a + b * b;
}

long long closed_Et(int k) {
    if (k <= 3 || k % 2 == 0) return closed_Es(k);
    long long a = 3LL * (1LL << ((k - 3) / 2)) - 3;
    long long b = (1LL << ((k - 1) / 2)) - 1;
    return a * a + b * b;
}

Constellation from_points(std::vector<GaussianInt> pts) {
    Constellation c;
    c.points = std::move(pts);
    return c;
}

}  // namespace

TEST_CASE("make_qam sizes and rotation invariance") {
    for (int k = 2; k <= 12; ++k) {
        Constellation c = make_qam(k);
        CHECK(c.size() == (1ULL << k));
        CHECK(c.bits == k);
        CHECK(rotation_invariant(c));
        std::set<std::pair<long long, long long>> uniq;
        for (auto z : c.points) uniq.insert({z.re, z.im});
        CHECK(uniq.size() == c.size());
    }
    CHECK_THROWS_AS(make_qam(1), std::invalid_argument);
    CHECK_THROWS_AS(make_qam(0), std::invalid_argument);
}

TEST_CASE("make_qam smallest square") {
    Constellation c = make_qam(2);
    Constellation want = from_points({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    CHECK(same_point_set(c, want));
}

TEST_CASE("make_qam K=3 is the listed modified 8-QAM") {
    Constellation c = make_qam(3);
    Constellation want = from_points(
        {{1, 3}, {1, 1}, {3, -1}, {1, -1}, {-1, -3}, {-1, -1}, {-3, 1}, {-1, 1}});
    CHECK(same_point_set(c, want));
    CHECK(c.kind == Kind::modified8);
    // the conventional corners 3+j / -3-j are absent
    CHECK_FALSE(c.contains({3, 1}));
    CHECK_FALSE(c.contains({-3, -1}));
}

TEST_CASE("make_qam K=5 cross shape") {
    Constellation c = make_qam(5);
    CHECK(c.size() == 32);
    CHECK(c.contains({5, 3}));
    CHECK(c.contains({3, 5}));
    CHECK_FALSE(c.contains({5, 5}));
    CHECK(c.kind == Kind::cross);
}

TEST_CASE("make_qam equals the definition enumerated independently") {
    for (int k = 2; k <= 11; ++k) {
        Constellation c = make_qam(k);
        long long count = 0;
        for (long long re = -101; re <= 101; ++re)
            for (long long im = -101; im <= 101; ++im)
                if (in_modified_qam(k, re, im)) {
                    ++count;
                    CHECK(c.contains({re, im}));
                }
        CHECK(count == static_cast<long long>(c.size()));
    }
}

TEST_CASE("points ordered row-major, im descending then re ascending") {
    Constellation c = make_qam(4);
    for (std::size_t i = 1; i < c.size(); ++i)
        CHECK(qam_order_less(c.points[i - 1], c.points[i]));
    CHECK(c.points.front() == GaussianInt{-3, 3});
    CHECK(c.points.back() == GaussianInt{3, -3});
}

TEST_CASE("d_min examples") {
    CHECK(d2_min(make_qam(4)) == 4);
    CHECK(d_min(make_qam(4)) == doctest::Approx(2.0));

    Constellation pair = from_points({{1, 1}, {-1, -1}});
    CHECK(d_min(pair) == doctest::Approx(2.0 * std::sqrt(2.0)));

    // the 16-QAM quarter factorization set
    Constellation quarter = from_points({{3, 3}, {3, 1}, {1, 3}, {1, 1}});
    CHECK(d_min(quarter) == doctest::Approx(2.0));

    Constellation single = from_points({{1, 1}});
    CHECK_THROWS_AS(d2_min(single), std::invalid_argument);
}

TEST_CASE("corner profile known instances") {
    CornerProfile k3 = corner_profile(make_qam(3));
    CHECK(k3.E == 10);
    CHECK(k3.E_s == 2);
    CHECK(k3.E_t == 2);  // single neighbor reported twice
    CHECK(k3.corner == GaussianInt{1, 3});

    CornerProfile k4 = corner_profile(make_qam(4));
    CHECK(k4.E == 18);
    CHECK(k4.E_s == 10);
    CHECK(k4.E_t == 10);

    CornerProfile k5 = corner_profile(make_qam(5));
    CHECK(k5.E == 34);
    CHECK(k5.E_s == 26);
    CHECK(k5.E_t == 18);
    CHECK(k5.corner == GaussianInt{5, 3});  // largest-re tie break
}

TEST_CASE("corner profile matches closed forms and exhaustive search") {
    for (int k = 2; k <= 12; ++k) {
        Constellation c = make_qam(k);
        CornerProfile cp = corner_profile(c);
        CHECK(cp.E == closed_E(k));
        CHECK(cp.E_s == closed_Es(k));
        CHECK(cp.E_t == closed_Et(k));

        long long emax = 0;
        for (auto z : c.points) emax = std::max(emax, z.energy());
        CHECK(cp.E == emax);
        CHECK(cp.corner.energy() == emax);

        int neighbors = 0;
        for (auto z : c.points)
            if (energy_between(z, cp.corner) == 4) ++neighbors;
        CHECK(neighbors == (k == 3 ? 1 : 2));
    }
}

TEST_CASE("corner profile rejects non-QAM kinds") {
    Constellation c = from_points({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    c.kind = Kind::derived;
    CHECK_THROWS_AS(corner_profile(c), std::invalid_argument);
}

TEST_CASE("energy lemmas all pass up to u_max = 12") {
    EnergyLemmaReport rep = verify_energy_lemmas(12);
    CHECK(rep.all_pass);
    for (const auto& c : rep.checks) CHECK(c.pass);

    auto find = [&](const std::string& label, int u, int v) -> const EnergyLemmaCheck* {
        for (const auto& c : rep.checks)
            if (c.name == label && c.u == u && c.v == v) return &c;
        return nullptr;
    };

    // equality instance at u = v = 3: E2 + E11 = 12 = E1 + E21
    const EnergyLemmaCheck* c33 = find("gap_s", 3, 3);
    REQUIRE(c33 != nullptr);
    CHECK(c33->lhs == 12.0);
    CHECK(c33->rhs == 12.0);

    // u = v = 2: all corner energies are 2, both sides equal
    const EnergyLemmaCheck* c22 = find("gap_s", 2, 2);
    REQUIRE(c22 != nullptr);
    CHECK(c22->lhs == c22->rhs);

    // cross-term instance behind the 8x8 case: 432 vs 400
    const EnergyLemmaCheck* ct = find("cross-term", 3, 3);
    REQUIRE(ct != nullptr);
    CHECK(ct->lhs == 432.0);
    CHECK(ct->rhs == 400.0);
}

TEST_CASE("halved-exponent inequality direction flips with parity") {
    EnergyLemmaReport rep = verify_energy_lemmas(6);
    int seen_even = 0, seen_odd = 0;
    for (const auto& c : rep.checks) {
        if (c.name != "balanced_gap_parity") continue;
        CHECK(c.pass);
        if (c.w % 2 == 0) {
            CHECK(c.lhs <= c.rhs);
            ++seen_even;
        } else {
            CHECK(c.lhs >= c.rhs);
            ++seen_odd;
        }
    }
    CHECK(seen_even > 0);
    CHECK(seen_odd > 0);
}

TEST_CASE("verify_energy_lemmas rejects small u_max") {
    CHECK_THROWS_AS(verify_energy_lemmas(2), std::invalid_argument);
}
