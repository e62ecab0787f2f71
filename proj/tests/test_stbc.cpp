#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <tuple>

#include "ufcp/rng.hpp"
#include "ufcp/stbc.hpp"

using namespace ufcp;

namespace {

double approx_eq(double a, double b) { return std::abs(a - b); }

// det((U,V)^H (U,V)) through the explicit Gram matrix, independent of the
// |det|^2 shortcut inside pairwise_det.
double gram_det(const Mat42& u, const Mat42& v) {
    std::array<cplx, 16> m = stack_pair(u, v);
    std::array<cplx, 16> g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx acc = 0.0;
            for (int t = 0; t < 4; ++t)
                acc += std::conj(m[static_cast<std::size_t>(4 * t + i)]) *
                       m[static_cast<std::size_t>(4 * t + j)];
            g[static_cast<std::size_t>(4 * i + j)] = acc;
        }
    cplx d = det4(g);
    CHECK(std::abs(d.imag()) < 1e-9);
    return d.real();
}

}  // namespace

TEST_CASE("build_codeword normalization and unitarity") {
    Codeword w = build_codeword({1, 0}, {1, 1}, {1, 1}, 1.0);
    double s5 = std::sqrt(5.0);
    CHECK(approx_eq(std::abs(w.m.at(0, 0) - cplx(1.0 / s5, 0)), 0.0) < 1e-15);
    CHECK(std::abs(w.m.at(1, 0)) < 1e-15);
    CHECK(std::abs(w.m.at(2, 0) - cplx(1.0 / s5, 1.0 / s5)) < 1e-15);
    CHECK(std::abs(w.m.at(3, 0) - cplx(-1.0 / s5, 1.0 / s5)) < 1e-15);
    CHECK(unitarity_defect(w.m) < 1e-12);

    // det(U^H U) = 1 for any valid input
    SplitMix64 g{5};
    for (int i = 0; i < 20; ++i) {
        GaussianInt x = (g.next() & 1) ? GaussianInt{0, 1} : GaussianInt{1, 0};
        GaussianInt y1{static_cast<long long>(g.next() % 7) - 3,
                       static_cast<long long>(g.next() % 7) - 3};
        GaussianInt y2{static_cast<long long>(g.next() % 7) - 3,
                       static_cast<long long>(g.next() % 7) - 3};
        double alpha = 0.05 + 0.4 * g.next_double();
        Codeword u = build_codeword(x, y1, y2, alpha);
        CHECK(unitarity_defect(u.m) < 1e-12);
        CHECK(std::abs(det2(gram(u.m)) - cplx(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("x rotation is removable by a unitary left factor") {
    // diag(x*, x, 1, 1) U(x, y1, y2) == U(1, y1, y2)
    GaussianInt y1{3, 1}, y2{-1, 3};
    double alpha = 0.3;
    Codeword wj = build_codeword({0, 1}, y1, y2, alpha);
    Codeword w1 = build_codeword({1, 0}, y1, y2, alpha);
    cplx xc(0.0, 1.0);
    cplx rot[4] = {std::conj(xc), xc, 1.0, 1.0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 2; ++c)
            CHECK(std::abs(rot[r] * wj.m.at(r, c) - w1.m.at(r, c)) < 1e-15);
}

TEST_CASE("build_codeword rejects bad inputs") {
    CHECK_THROWS_AS(build_codeword({0, 0}, {1, 1}, {1, 1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_codeword({2, 0}, {1, 1}, {1, 1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_codeword({1, 0}, {1, 1}, {1, 1}, 0.0), std::invalid_argument);
}

TEST_CASE("codebook enumeration") {
    Codebook cb4 = enumerate_codebook(optimal_design(4));
    CHECK(cb4.size() == 16);
    Codebook cb5 = enumerate_codebook(optimal_design(5));
    CHECK(cb5.size() == 32);

    std::set<std::tuple<long long, long long, long long, long long, long long, long long>>
        triples;
    for (const auto& w : cb5.words)
        triples.insert({w.x.re, w.x.im, w.y1.re, w.y1.im, w.y2.re, w.y2.im});
    CHECK(triples.size() == cb5.size());

    // x-major ordering: first |Y1|*|Y2| words share x = X[0]
    const CodeDesign& d = *cb5.design;
    std::size_t block = d.ufcp1.Y.size() * d.ufcp2.Y.size();
    for (std::size_t i = 0; i < cb5.size(); ++i)
        CHECK(cb5.words[i].x == d.ufcp1.X.points[i / block]);
}

TEST_CASE("gain function basics") {
    CHECK(gain_fn({1, 0}, {1, 1}, {1, 1}, {1, 0}, {1, 1}, {1, 1}, 0.7) == 0.0);
    // alpha = 1/2, y = (1+j, 1+j) vs (1+j, 1-j): 1 / 4
    CHECK(std::abs(gain_fn({1, 0}, {1, 1}, {1, 1}, {1, 0}, {1, 1}, {1, -1}, 0.5) -
                   0.25) < 1e-15);
}

TEST_CASE("gain function equals sqrt of the stacked-pair determinant") {
    // Per pair the identity holds when x*conj(xh) = +-1. When x*conj(xh) = +-j
    // the determinant carries (x*conj(xh))^2 = -1 on the second Alamouti term,
    // i.e. sqrt(det) equals the gain of the partner pair with y2h negated.
    // Y2 is closed under negation, so the two value multisets (and the minima)
    // coincide.
    for (int r : {4, 5, 6}) {
        CodeDesign d = optimal_design(r);
        Codebook cb = enumerate_codebook(d);
        SplitMix64 g{17};
        for (int t = 0; t < 300; ++t) {
            std::size_t i = g.next() % cb.size();
            std::size_t j = g.next() % cb.size();
            if (i == j) continue;
            const Codeword &a = cb.words[i], &b = cb.words[j];
            double rhs = std::sqrt(pairwise_det(a, b));
            GaussianInt phase = unit_quotient(a.x, b.x);
            double lhs;
            if (phase.im == 0) {
                lhs = gain_fn(a.x, a.y1, a.y2, b.x, b.y1, b.y2, d.alpha);
            } else {
                CHECK(d.ufcp2.Y.contains(-b.y2));
                lhs = gain_fn(a.x, a.y1, a.y2, b.x, b.y1, -b.y2, d.alpha);
            }
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("minimum of sqrt(det) equals the brute-force gain") {
    for (int r : {4, 5, 6}) {
        CodeDesign d = optimal_design(r);
        Codebook cb = enumerate_codebook(d);
        double min_det = -1.0;
        for (std::size_t i = 0; i < cb.size(); ++i)
            for (std::size_t j = i + 1; j < cb.size(); ++j) {
                double det = pairwise_det(cb.words[i], cb.words[j]);
                if (min_det < 0.0 || det < min_det) min_det = det;
            }
        double bf = coding_gain_bruteforce(d).gain;
        CHECK(std::abs(std::sqrt(min_det) - bf) < 1e-9 * bf);
    }
}

TEST_CASE("pairwise determinant routes agree") {
    CodeDesign d = optimal_design(6);
    Codebook cb = enumerate_codebook(d);
    CHECK(pairwise_det(cb.words[0], cb.words[0]) < 1e-18);
    SplitMix64 g{23};
    for (int t = 0; t < 100; ++t) {
        std::size_t i = g.next() % cb.size();
        std::size_t j = g.next() % cb.size();
        if (i == j) continue;
        double fast = pairwise_det(cb.words[i], cb.words[j]);
        double slow = gram_det(cb.words[i].m, cb.words[j].m);
        CHECK(fast > 0.0);
        CHECK(std::abs(fast - slow) < 1e-10 * std::max(1.0, std::abs(slow)));
    }
}

TEST_CASE("optimal designs per rate") {
    CodeDesign d4 = optimal_design(4);
    CHECK(d4.delta == 0);
    CHECK(d4.p == 2);
    CHECK(d4.q == 2);
    CHECK(d4.alpha == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d4.analytic_gain == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d4.ufcp1.X.size() == 1);

    CodeDesign d8 = optimal_design(8);
    CHECK(d8.delta == 1);
    CHECK(d8.p == 5);
    CHECK(d8.q == 4);
    CHECK(d8.alpha == doctest::Approx(1.0 / std::sqrt(52.0)).epsilon(1e-12));
    CHECK(d8.analytic_gain == doctest::Approx(2.0 / 52.0).epsilon(1e-12));

    CodeDesign d13 = optimal_design(13);
    CHECK(d13.delta == 1);
    CHECK(d13.p == 7);
    CHECK(d13.q == 7);
    CHECK(d13.alpha == doctest::Approx(0.0563).epsilon(1e-3));
    CHECK(d13.analytic_gain == doctest::Approx(0.00633).epsilon(1e-3));

    CHECK_THROWS_AS(optimal_design(3), std::invalid_argument);
    CHECK_THROWS_AS(analytic_gain(2), std::invalid_argument);
}

TEST_CASE("analytic closed forms") {
    // r = 10: alpha = 1 / (2 * 255^(1/4)), gain = 1 / (sqrt(15)+sqrt(17))^2
    double a10 = 1.0 / (2.0 * std::pow(255.0, 0.25));
    CHECK(analytic_alpha(10) == doctest::Approx(a10).epsilon(1e-12));
    double g10 = 1.0 / std::pow(std::sqrt(15.0) + std::sqrt(17.0), 2.0);
    CHECK(analytic_gain(10) == doctest::Approx(g10).epsilon(1e-12));

    double g6 = 8.0 / std::pow(std::sqrt(28.0) + std::sqrt(20.0), 2.0);
    CHECK(analytic_gain(6) == doctest::Approx(g6).epsilon(1e-12));
    CHECK(analytic_gain(6) == doctest::Approx(0.0839).epsilon(1e-3));

    CHECK(analytic_gain(4) == doctest::Approx(0.25).epsilon(1e-12));
    // r = 5: alpha = (20 * 12)^(-1/4)
    CHECK(analytic_alpha(5) == doctest::Approx(std::pow(240.0, -0.25)).epsilon(1e-12));
}

TEST_CASE("brute force matches the table values") {
    CHECK(coding_gain_bruteforce(optimal_design(4)).gain ==
          doctest::Approx(0.250).epsilon(1e-9));
    CHECK(coding_gain_bruteforce(optimal_design(5)).gain ==
          doctest::Approx(0.127).epsilon(1e-3));
    CHECK(coding_gain_bruteforce(optimal_design(10)).gain ==
          doctest::Approx(0.0156).epsilon(1e-3));
}

TEST_CASE("brute force equals analytic for small rates") {
    for (int r : {4, 5, 6, 8, 9}) {
        CodeDesign d = optimal_design(r);
        BruteForceGain bf = coding_gain_bruteforce(d);
        CHECK(std::abs(bf.gain - d.analytic_gain) <= 1e-9 * d.analytic_gain);
        CHECK(bf.a != bf.b);
    }
}

TEST_CASE("scale perturbation never helps") {
    for (int r : {4, 5, 6, 8}) {
        CodeDesign d = optimal_design(r);
        double at = coding_gain_bruteforce(d).gain;
        CHECK(coding_gain_bruteforce_at(d, d.alpha * 0.95).gain <= at + 1e-12);
        CHECK(coding_gain_bruteforce_at(d, d.alpha * 1.05).gain <= at + 1e-12);
    }
}

TEST_CASE("brute force refuses oversized codebooks") {
    CHECK_THROWS_AS(coding_gain_bruteforce(optimal_design(16)), std::runtime_error);
}

TEST_CASE("scaled quotient sets commute with the factorization") {
    Ufcp u = factorize_qam(4, 2);
    double alpha = 0.31;
    std::set<std::pair<long long, long long>> scaled_z;  // compare via exact ints
    for (auto z : u.Z.points) scaled_z.insert({z.re, z.im});
    for (std::size_t i = 0; i < u.X.size(); ++i)
        for (auto y : u.Y.points) {
            GaussianInt q = unit_quotient(y, u.X.points[i]);
            CHECK(scaled_z.count({q.re, q.im}) == 1);
            // float layer: alpha*(y/x) == (alpha*y)/x
            cplx xc(static_cast<double>(u.X.points[i].re),
                    static_cast<double>(u.X.points[i].im));
            cplx yc(static_cast<double>(y.re), static_cast<double>(y.im));
            cplx lhs = alpha * (yc / xc);
            cplx rhs = (alpha * yc) / xc;
            CHECK(std::abs(lhs - rhs) < 1e-15);
        }
}

TEST_CASE("differential codebook") {
    Codebook cb2 = differential_codebook(2);
    CHECK(cb2.size() == 4);
    for (const auto& w : cb2.words) {
        // BPSK x BPSK: data entries are real +-1/2
        CHECK(std::abs(w.m.at(2, 0).imag()) < 1e-15);
        CHECK(std::abs(std::abs(w.m.at(2, 0).real()) - 0.5) < 1e-15);
    }

    Codebook cb5 = differential_codebook(5);
    CHECK(cb5.size() == 32);  // 8-PSK x QPSK

    for (const auto& w : cb5.words) {
        double tr = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 2; ++c) tr += std::norm(w.m.at(r, c));
        CHECK(tr == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(unitarity_defect(w.m) < 1e-12);
    }
    CHECK(symbol_bit_split(5) == std::pair<int, int>{3, 2});
}

TEST_CASE("training codebook energy contract") {
    Codebook psk = training_codebook(6, SymbolFamily::psk);
    CHECK(psk.size() == 64);
    for (const auto& w : psk.words) {
        double tr = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 2; ++c) tr += std::norm(w.m.at(r, c));
        CHECK(tr == doctest::Approx(2.0).epsilon(1e-14));  // unit-modulus symbols
    }

    Codebook qam = training_codebook(4, SymbolFamily::qam);
    CHECK(qam.size() == 16);
    double mean_tr = 0.0;
    for (const auto& w : qam.words) {
        // pilots are exactly 1/sqrt(2) regardless of the symbol scaling
        CHECK(std::abs(w.m.at(0, 0) - cplx(0.7071067811865475244, 0.0)) < 1e-15);
        CHECK(std::abs(w.m.at(1, 1) - cplx(0.7071067811865475244, 0.0)) < 1e-15);
        // columns stay orthogonal (Alamouti structure)
        Mat2 g = gram(w.m);
        CHECK(std::abs(g.at(0, 1)) < 1e-15);
        CHECK(std::abs(g.at(0, 0).real() - g.at(1, 1).real()) < 1e-14);
        double tr = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 2; ++c) tr += std::norm(w.m.at(r, c));
        mean_tr += tr;
    }
    mean_tr /= static_cast<double>(qam.size());
    CHECK(mean_tr == doctest::Approx(2.0).epsilon(1e-12));

    // 4-QAM symbols all carry energy 2, so r=4 happens to stay unitary;
    // 8-QAM mixes energies 2 and 10 and the column norms vary
    Codebook qam6 = training_codebook(6, SymbolFamily::qam);
    bool any_nonunitary = false;
    double mean_tr6 = 0.0;
    for (const auto& w : qam6.words) {
        if (unitarity_defect(w.m) > 0.05) any_nonunitary = true;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 2; ++c) mean_tr6 += std::norm(w.m.at(r, c));
    }
    CHECK(any_nonunitary);
    CHECK(mean_tr6 / static_cast<double>(qam6.size()) ==
          doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(training_codebook(4, SymbolFamily::qam, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(training_codebook(4, SymbolFamily::qam, 1.0), std::invalid_argument);
}
