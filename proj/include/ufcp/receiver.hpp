#pragma once

#include <vector>

#include "ufcp/cmat.hpp"
#include "ufcp/stbc.hpp"

namespace ufcp {

struct DecodeResult {
    int index = 0;
    double metric = 0.0;
    Vec2 h_hat{};  // least-squares channel estimate under the winning codeword
};

// Exhaustive GLRT: argmax Tr(r^H S (S^H S)^-1 S^H r). Ties break to the
// lowest index. For unitary codebooks this equals the Tr(r^H S S^H r) form.
class GlrtDecoder {
public:
    explicit GlrtDecoder(const Codebook& cb);
    DecodeResult decode(const Vec4& r) const;
    std::size_t size() const { return entries_.size(); }

private:
    struct Entry {
        Mat42 s;
        Mat2 gram_inv;
    };
    std::vector<Entry> entries_;
};

DecodeResult glrt_decode(const Vec4& r, const Codebook& cb);

struct IdentifyResult {
    GaussianInt x, y1, y2;
    Vec2 h{};
};

// Noise-free algebraic identification: recover the quotients y_i/x from the
// received block, divide out alpha, snap to Z_i, invert the group lookup and
// reconstruct h. Requires r = U h exactly with h != 0.
IdentifyResult identify_noise_free(const Vec4& r, const CodeDesign& d);

// (S^H S)^-1 S^H r
Vec2 channel_estimate(const Vec4& r, const Mat42& s);

}  // namespace ufcp
