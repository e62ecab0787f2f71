#include "ufcp/receiver.hpp"

#include <cmath>
#include <stdexcept>

namespace ufcp {

GlrtDecoder::GlrtDecoder(const Codebook& cb) {
    if (cb.size() == 0) throw std::invalid_argument("GlrtDecoder: empty codebook");
    entries_.reserve(cb.size());
    for (const auto& w : cb.words) {
        Mat2 g = gram(w.m);
        if (std::abs(det2(g)) < 1e-12)
            throw std::invalid_argument("GlrtDecoder: rank-deficient codeword");
        entries_.push_back({w.m, inverse2(g)});
    }
}

DecodeResult GlrtDecoder::decode(const Vec4& r) const {
    int best = 0;
    double best_metric = -1.0;
    Vec2 best_v{};
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        Vec2 v = adjoint_times(entries_[i].s, r);
        double metric = quad_form(entries_[i].gram_inv, v);
        if (metric > best_metric) {
            best_metric = metric;
            best = static_cast<int>(i);
            best_v = v;
        }
    }
    const Entry& e = entries_[static_cast<std::size_t>(best)];
    DecodeResult res;
    res.index = best;
    res.metric = best_metric;
    // h_hat = (S^H S)^-1 S^H r for the winner
    res.h_hat[0] = e.gram_inv.at(0, 0) * best_v[0] + e.gram_inv.at(0, 1) * best_v[1];
    res.h_hat[1] = e.gram_inv.at(1, 0) * best_v[0] + e.gram_inv.at(1, 1) * best_v[1];
    return res;
}

DecodeResult glrt_decode(const Vec4& r, const Codebook& cb) {
    return GlrtDecoder(cb).decode(r);
}

namespace {

GaussianInt nearest_point(const Constellation& c, cplx v) {
    int best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        cplx p(static_cast<double>(c.points[i].re), static_cast<double>(c.points[i].im));
        double d = std::norm(v - p);
        if (best_d < 0.0 || d < best_d) {  // ties keep constellation order
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return c.points[static_cast<std::size_t>(best)];
}

}  // namespace

IdentifyResult identify_noise_free(const Vec4& r, const CodeDesign& d) {
    double rx2 = std::norm(r[0]) + std::norm(r[1]);
    if (rx2 <= 0.0)
        throw std::invalid_argument("identify_noise_free: r_x = 0, unidentifiable");

    // Alamouti inversion of r_y = alpha * Y X^-1 r_x. With X = diag(x, x*),
    // Y X^-1 is the Alamouti matrix in (y1/x, y2*x), so the inversion yields
    // q1 = alpha*y1/x and q2 = -alpha*y2*x = -(x^2) * alpha*y2/x: the first
    // value is the plain quotient, the second carries a -x^2 phase (+1 for
    // x = +-j, -1 for x = +-1).
    cplx q1 = (std::conj(r[0]) * r[2] + r[1] * std::conj(r[3])) / rx2;
    cplx q2 = (-std::conj(r[1]) * r[2] + r[0] * std::conj(r[3])) / rx2;

    GaussianInt z1 = nearest_point(d.ufcp1.Z, q1 / d.alpha);
    GaussianInt z2 = nearest_point(d.ufcp2.Z, q2 / d.alpha);

    auto it1 = d.ufcp1.lookup.find(z1);
    auto it2 = d.ufcp2.lookup.find(z2);
    if (it1 == d.ufcp1.lookup.end() || it2 == d.ufcp2.lookup.end())
        throw std::runtime_error("identify_noise_free: quotient not in Z");
    GaussianInt x1 = d.ufcp1.X.points[static_cast<std::size_t>(it1->second.first)];
    GaussianInt x2 = d.ufcp2.X.points[static_cast<std::size_t>(it2->second.first)];
    if (!(x1 == x2))
        throw std::runtime_error("identify_noise_free: inconsistent group lookups");

    IdentifyResult res;
    res.x = x1;
    res.y1 = d.ufcp1.Y.points[static_cast<std::size_t>(it1->second.second)];
    res.y2 = d.ufcp2.Y.points[static_cast<std::size_t>(it2->second.second)];
    // -y2*x sits in group x with entry -x^2*y2 (Y2 is closed under negation);
    // undo the phase, which is -1 exactly when x is real
    if (res.x.im == 0) res.y2 = -res.y2;

    double norm = std::sqrt(1.0 + d.alpha * d.alpha *
                                      static_cast<double>(res.y1.energy() +
                                                          res.y2.energy()));
    cplx xc(static_cast<double>(res.x.re), static_cast<double>(res.x.im));
    // X^-1 = diag(1/x, 1/x*) = diag(conj(x), x) for unit x
    res.h[0] = norm * std::conj(xc) * r[0];
    res.h[1] = norm * xc * r[1];
    return res;
}

Vec2 channel_estimate(const Vec4& r, const Mat42& s) {
    Mat2 g = gram(s);
    if (std::abs(det2(g)) < 1e-12)
        throw std::invalid_argument("channel_estimate: singular S^H S");
    Mat2 inv = inverse2(g);
    Vec2 v = adjoint_times(s, r);
    Vec2 h;
    h[0] = inv.at(0, 0) * v[0] + inv.at(0, 1) * v[1];
    h[1] = inv.at(1, 0) * v[0] + inv.at(1, 1) * v[1];
    return h;
}

}  // namespace ufcp
