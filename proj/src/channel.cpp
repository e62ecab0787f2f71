#include "ufcp/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ufcp {

NoiseConfig NoiseConfig::from_snr_db(double db) {
    NoiseConfig n;
    n.snr_db = db;
    n.sigma2 = std::pow(10.0, -db / 10.0);
    return n;
}

NoiseConfig NoiseConfig::noiseless() {
    NoiseConfig n;
    n.snr_db = std::numeric_limits<double>::infinity();
    n.sigma2 = 0.0;
    return n;
}

ChannelBlock sample_block(SplitMix64& rng) {
    ChannelBlock blk;
    blk.h[0] = gaussian_complex(rng);
    blk.h[1] = gaussian_complex(rng);
    return blk;
}

Vec4 transmit(const Mat42& s, const ChannelBlock& blk, const NoiseConfig& noise,
              SplitMix64& rng) {
    if (noise.sigma2 < 0.0) throw std::invalid_argument("transmit: sigma2 < 0");
    Vec4 r = mat_vec(s, blk.h);
    double sd = std::sqrt(noise.sigma2);
    for (auto& e : r) e += sd * gaussian_complex(rng);
    return r;
}

}  // namespace ufcp
