#include "ufcp/ufcp.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace ufcp {

namespace {

bool is_unit_set(const Constellation& x) {
    for (auto p : x.points)
        if (!p.is_unit()) return false;
    return true;
}

std::vector<GaussianInt> sorted_points(std::vector<GaussianInt> pts) {
    std::sort(pts.begin(), pts.end(), qam_order_less);
    return pts;
}

}  // namespace

bool verify_ufcp(const Constellation& x, const Constellation& y) {
    if (x.size() == 0 || y.size() == 0)
        throw std::invalid_argument("verify_ufcp: empty constellation");

    if (x.contains({0, 0})) {
        if (y.size() >= 2) return false;  // 0*y1 == 0*y2 collides
        // degenerate |Y| = 1: fall back to the definition itself
        for (auto xa : x.points)
            for (auto xb : x.points)
                if (!(xa == xb) && xa * y.points[0] == xb * y.points[0]) return false;
        return true;
    }

    // count distinct exact fractions y/x = (y * conj(x)) / |x|^2
    std::set<std::tuple<long long, long long, long long>> quotients;
    for (auto xe : x.points) {
        long long den = xe.energy();
        for (auto ye : y.points) {
            GaussianInt num = ye * xe.conj();
            long long g = std::gcd(std::gcd(std::abs(num.re), std::abs(num.im)), den);
            quotients.insert({num.re / g, num.im / g, den / g});
        }
    }
    return quotients.size() == x.size() * y.size();
}

Constellation quotient_set(const Constellation& x, const Constellation& y) {
    if (!is_unit_set(x))
        throw std::invalid_argument("quotient_set: non-unit x is unsupported");
    if (!verify_ufcp(x, y)) throw std::invalid_argument("quotient_set: not a UFCP");

    std::vector<GaussianInt> pts;
    pts.reserve(x.size() * y.size());
    for (auto xe : x.points)
        for (auto ye : y.points) pts.push_back(unit_quotient(ye, xe));

    Constellation z;
    z.points = sorted_points(std::move(pts));
    std::size_t n = z.points.size();
    z.bits = (n > 0 && (n & (n - 1)) == 0) ? static_cast<int>(std::countr_zero(n)) : -1;
    z.kind = Kind::derived;
    return z;
}

Ufcp Ufcp::create(const Constellation& x, const Constellation& y) {
    if (!is_unit_set(x)) throw std::invalid_argument("Ufcp: X must contain units only");
    if (!verify_ufcp(x, y)) throw std::invalid_argument("Ufcp: (X, Y) is not a UFCP");

    Ufcp u;
    u.X = x;
    u.Y = y;
    u.Z = quotient_set(x, y);

    u.groups_by_x.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto& grp = u.groups_by_x[i];
        grp.reserve(y.size());
        for (std::size_t k = 0; k < y.size(); ++k) {
            GaussianInt z = unit_quotient(y.points[k], x.points[i]);
            grp.push_back(z);
            auto ins = u.lookup.emplace(z, std::make_pair(static_cast<int>(i),
                                                          static_cast<int>(k)));
            if (!ins.second) throw std::logic_error("Ufcp: group overlap");
        }
    }
    if (u.lookup.size() != u.Z.size()) throw std::logic_error("Ufcp: partition mismatch");
    return u;
}

const std::vector<GaussianInt>& Ufcp::group(GaussianInt x) const {
    int idx = X.index_of(x);
    if (idx < 0) throw std::invalid_argument("Ufcp::group: x not in X");
    return groups_by_x[static_cast<std::size_t>(idx)];
}

namespace {

Constellation unit_x_set(int x_size) {
    Constellation x;
    x.kind = Kind::quadset;
    if (x_size == 2) {
        x.points = {{1, 0}, {0, 1}};
        x.bits = 1;
    } else if (x_size == 4) {
        x.points = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        x.bits = 2;
    } else {
        throw std::invalid_argument("factorize: x_size must be 2 or 4");
    }
    return x;
}

void append_grid(std::vector<GaussianInt>& out, long long re0, long long im0,
                 long long m_count, long long n_count) {
    for (long long m = 0; m < m_count; ++m)
        for (long long n = 0; n < n_count; ++n) out.push_back({re0 - 4 * m, im0 - 4 * n});
}

std::vector<GaussianInt> dedupe(std::vector<GaussianInt> pts) {
    std::sort(pts.begin(), pts.end(), qam_order_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Closed-form Y for X = {1, j}: listed sets for K in {2, 3, 5}, index grids
// otherwise. Odd-K grids run A/2 columns by B/2 rows on the wide rectangle
// and transposed on the tall one, A = 3*2^((K-3)/2), B = 2^((K-1)/2).
std::vector<GaussianInt> y_opt_half(int k) {
    std::vector<GaussianInt> pts;
    if (k == 2) {
        pts = {{1, 1}, {-1, -1}};
    } else if (k == 3) {
        pts = {{1, 3}, {-1, -3}, {-1, -1}, {1, 1}};
    } else if (k == 5) {
        pts = {{-1, 5}, {3, 5},  {-3, 3},  {1, 3},  {5, 3},  {-5, 1},  {-1, 1},  {3, 1},
               {-3, -1}, {1, -1}, {5, -1}, {-5, -3}, {-1, -3}, {3, -3}, {-3, -5}, {1, -5}};
    } else if (k % 2 == 0) {
        long long s = 1LL << (k / 2);
        long long cnt = 1LL << ((k - 2) / 2);
        append_grid(pts, s - 1, s - 1, cnt, cnt);
        append_grid(pts, s - 3, s - 3, cnt, cnt);
    } else {
        long long a = 3LL << ((k - 3) / 2);
        long long b = 1LL << ((k - 1) / 2);
        append_grid(pts, a - 1, b - 1, a / 2, b / 2);
        append_grid(pts, b - 1, a - 1, b / 2, a / 2);
        append_grid(pts, a - 3, b - 3, a / 2, b / 2);
        append_grid(pts, b - 3, a - 3, b / 2, a / 2);
        pts = dedupe(std::move(pts));
    }
    return pts;
}

// Closed-form Y for X = {1, -1, j, -j}.
std::vector<GaussianInt> y_opt_quarter(int k) {
    std::vector<GaussianInt> pts;
    if (k == 2) {
        pts = {{1, 1}};
    } else if (k == 3) {
        pts = {{1, 3}, {-1, -1}};
    } else if (k == 5) {
        pts = {{-1, 5}, {3, 5}, {-5, 1}, {-1, 1}, {3, 1}, {-5, -3}, {-1, -3}, {3, -3}};
    } else if (k % 2 == 0) {
        long long s = 1LL << (k / 2);
        long long cnt = 1LL << ((k - 2) / 2);
        for (long long m = 0; m < cnt; ++m)
            for (long long n = 0; n < cnt; ++n)
                pts.push_back({4 * m - s + 3, s - 1 - 4 * n});
    } else {
        long long a = 3LL << ((k - 3) / 2);
        long long b = 1LL << ((k - 1) / 2);
        append_grid(pts, a - 1, b - 1, a / 2, b / 2);
        append_grid(pts, b - 1, a - 1, b / 2, a / 2);
        pts = dedupe(std::move(pts));
    }
    return pts;
}

// Corner-started selection walk over Z: nearest diagonal neighbors for
// x_size 2, every other point along rows/columns for x_size 4.
std::vector<GaussianInt> corner_walk(const Constellation& z, GaussianInt corner,
                                     int x_size) {
    std::vector<GaussianInt> steps =
        (x_size == 2) ? std::vector<GaussianInt>{{2, 2}, {2, -2}, {-2, 2}, {-2, -2}}
                      : std::vector<GaussianInt>{{4, 0}, {-4, 0}, {0, 4}, {0, -4}};

    std::set<std::pair<long long, long long>> in_z;
    for (auto p : z.points) in_z.insert({p.re, p.im});

    std::set<std::pair<long long, long long>> seen{{corner.re, corner.im}};
    std::vector<GaussianInt> frontier{corner};
    std::vector<GaussianInt> out{corner};
    while (!frontier.empty()) {
        std::vector<GaussianInt> next;
        for (auto p : frontier)
            for (auto s : steps) {
                GaussianInt q = p + s;
                if (!in_z.count({q.re, q.im}) || seen.count({q.re, q.im})) continue;
                seen.insert({q.re, q.im});
                next.push_back(q);
                out.push_back(q);
            }
        frontier = std::move(next);
    }
    return dedupe(std::move(out));
}

}  // namespace

Ufcp factorize(const Constellation& z, int x_size) {
    int k = z.bits;
    if (k < 2) throw std::invalid_argument("factorize: Z must be a modified QAM");
    if (!same_point_set(z, make_qam(k)))
        throw std::invalid_argument("factorize: Z must equal make_qam(bits)");
    if (x_size != 2 && x_size != 4)
        throw std::invalid_argument("factorize: x_size must be 2 or 4");

    Constellation x = unit_x_set(x_size);

    Constellation y;
    y.points = dedupe(x_size == 2 ? y_opt_half(k) : y_opt_quarter(k));
    y.kind = Kind::derived;
    std::size_t expect = z.size() / static_cast<std::size_t>(x_size);
    if (y.points.size() != expect) throw std::logic_error("factorize: wrong |Y|");
    y.bits = k - (x_size == 2 ? 1 : 2);

    // The index formulas and the walk describe the same selection for K >= 4;
    // K in {2,3,5} carries listed sets (the K=3 ones differ from the walk and
    // the K=5 ones start from a different corner of the same orbit).
    if (k >= 4 && k != 5) {
        GaussianInt corner = corner_profile(z).corner;
        std::vector<GaussianInt> walked = corner_walk(z, corner, x_size);
        if (walked != y.points)
            throw std::runtime_error("factorize: index formulas disagree with corner walk");
    }

    Ufcp u = Ufcp::create(x, y);
    if (!same_point_set(u.Z, z))
        throw std::runtime_error("factorize: quotient set does not recover Z");
    u.Z = z;  // keep the canonical QAM ordering and kind
    return u;
}

Ufcp factorize_qam(int bits, int x_size) { return factorize(make_qam(bits), x_size); }

double walk_dmin_claim(int bits, int x_size) {
    if (x_size == 2) return 2.8284271247461903;  // 2*sqrt(2)
    if (x_size == 4) return bits == 3 ? 4.47213595499958 : 4.0;  // sqrt(20) for K=3
    throw std::invalid_argument("walk_dmin_claim: x_size must be 2 or 4");
}

}  // namespace ufcp
