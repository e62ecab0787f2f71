#pragma once

#include "ufcp/cmat.hpp"
#include "ufcp/rng.hpp"

namespace ufcp {

// Channel draw for one 4-slot block; entries are i.i.d. CN(0,1) and constant
// within the block.
struct ChannelBlock {
    Vec2 h{};
};

// sigma2 is the per-complex-dimension noise variance. With every scheme
// normalized to E[tr(S^H S)] = 2, SNR is defined as 1/sigma2.
struct NoiseConfig {
    double sigma2 = 1.0;
    double snr_db = 0.0;

    static NoiseConfig from_snr_db(double db);
    static NoiseConfig noiseless();
};

ChannelBlock sample_block(SplitMix64& rng);

// r = S h + xi with xi ~ CN(0, sigma2 * I4).
Vec4 transmit(const Mat42& s, const ChannelBlock& blk, const NoiseConfig& noise,
              SplitMix64& rng);

}  // namespace ufcp
