#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace ufcp {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;
using Vec4 = std::array<cplx, 4>;

// Row-major 2x2 complex matrix.
struct Mat2 {
    std::array<cplx, 4> a{};
    cplx& at(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }
};

// Row-major 4x2 complex matrix (one space-time codeword).
struct Mat42 {
    std::array<cplx, 8> a{};
    cplx& at(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }
};

inline Vec4 mat_vec(const Mat42& s, const Vec2& h) {
    Vec4 out{};
    for (int r = 0; r < 4; ++r)
        out[static_cast<std::size_t>(r)] = s.at(r, 0) * h[0] + s.at(r, 1) * h[1];
    return out;
}

// S^H r
inline Vec2 adjoint_times(const Mat42& s, const Vec4& r) {
    Vec2 v{};
    for (int c = 0; c < 2; ++c) {
        cplx acc = 0.0;
        for (int t = 0; t < 4; ++t) acc += std::conj(s.at(t, c)) * r[static_cast<std::size_t>(t)];
        v[static_cast<std::size_t>(c)] = acc;
    }
    return v;
}

// S^H S
inline Mat2 gram(const Mat42& s) {
    Mat2 g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx acc = 0.0;
            for (int t = 0; t < 4; ++t) acc += std::conj(s.at(t, i)) * s.at(t, j);
            g.at(i, j) = acc;
        }
    return g;
}

inline cplx det2(const Mat2& m) { return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0); }

inline Mat2 inverse2(const Mat2& m) {
    cplx d = det2(m);
    if (std::abs(d) < 1e-300) throw std::invalid_argument("singular 2x2 matrix");
    Mat2 inv;
    inv.at(0, 0) = m.at(1, 1) / d;
    inv.at(1, 1) = m.at(0, 0) / d;
    inv.at(0, 1) = -m.at(0, 1) / d;
    inv.at(1, 0) = -m.at(1, 0) / d;
    return inv;
}

// v^H M v for Hermitian M; returns the real part.
inline double quad_form(const Mat2& m, const Vec2& v) {
    cplx acc = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc += std::conj(v[static_cast<std::size_t>(i)]) * m.at(i, j) * v[static_cast<std::size_t>(j)];
    return acc.real();
}

// 4x4 complex determinant, partial-pivot elimination.
inline cplx det4(std::array<cplx, 16> m) {
    cplx det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::abs(m[static_cast<std::size_t>(4 * col + col)]);
        for (int r = col + 1; r < 4; ++r) {
            double mag = std::abs(m[static_cast<std::size_t>(4 * r + col)]);
            if (mag > best) { best = mag; piv = r; }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < 4; ++c) std::swap(m[static_cast<std::size_t>(4 * piv + c)], m[static_cast<std::size_t>(4 * col + c)]);
            det = -det;
        }
        cplx d = m[static_cast<std::size_t>(4 * col + col)];
        det *= d;
        for (int r = col + 1; r < 4; ++r) {
            cplx f = m[static_cast<std::size_t>(4 * r + col)] / d;
            for (int c = col; c < 4; ++c) m[static_cast<std::size_t>(4 * r + c)] -= f * m[static_cast<std::size_t>(4 * col + c)];
        }
    }
    return det;
}

// Stacked pair (U, V) as a 4x4 matrix.
inline std::array<cplx, 16> stack_pair(const Mat42& u, const Mat42& v) {
    std::array<cplx, 16> m{};
    for (int r = 0; r < 4; ++r) {
        m[static_cast<std::size_t>(4 * r + 0)] = u.at(r, 0);
        m[static_cast<std::size_t>(4 * r + 1)] = u.at(r, 1);
        m[static_cast<std::size_t>(4 * r + 2)] = v.at(r, 0);
        m[static_cast<std::size_t>(4 * r + 3)] = v.at(r, 1);
    }
    return m;
}

// max |(S^H S - I)_ij|
inline double unitarity_defect(const Mat42& s) {
    Mat2 g = gram(s);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx want = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            worst = std::max(worst, std::abs(g.at(i, j) - want));
        }
    return worst;
}

}  // namespace ufcp
