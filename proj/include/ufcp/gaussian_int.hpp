#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace ufcp {

// Exact complex integer a+bj. Constellation arithmetic stays integral;
// floating point enters only at the codeword/gain layer.
struct GaussianInt {
    long long re = 0;
    long long im = 0;

    friend bool operator==(const GaussianInt&, const GaussianInt&) = default;

    GaussianInt operator+(GaussianInt o) const { return {re + o.re, im + o.im}; }
    GaussianInt operator-(GaussianInt o) const { return {re - o.re, im - o.im}; }
    GaussianInt operator-() const { return {-re, -im}; }
    GaussianInt operator*(GaussianInt o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }

    GaussianInt conj() const { return {re, -im}; }
    long long energy() const { return re * re + im * im; }
    bool is_unit() const { return energy() == 1; }
};

inline long long energy_between(GaussianInt a, GaussianInt b) { return (a - b).energy(); }

// y/x for unit x; x^-1 == conj(x) keeps the quotient integral.
inline GaussianInt unit_quotient(GaussianInt y, GaussianInt x) { return y * x.conj(); }

// Row-major constellation order: im descending, then re ascending.
inline bool qam_order_less(GaussianInt a, GaussianInt b) {
    if (a.im != b.im) return a.im > b.im;
    return a.re < b.re;
}

struct GaussianIntHash {
    std::size_t operator()(const GaussianInt& z) const {
        std::uint64_t h = static_cast<std::uint64_t>(z.re) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(z.im) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

inline std::string to_string(GaussianInt z) {
    std::string s = std::to_string(z.re);
    s += (z.im < 0) ? "-" : "+";
    long long a = z.im < 0 ? -z.im : z.im;
    if (a != 1) s += std::to_string(a);
    s += "j";
    return s;
}

}  // namespace ufcp
