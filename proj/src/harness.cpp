#include "ufcp/harness.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "ufcp/channel.hpp"
#include "ufcp/receiver.hpp"
#include "ufcp/rng.hpp"

namespace ufcp {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::ufcp: return "ufcp";
        case Scheme::differential: return "differential";
        case Scheme::training_psk: return "training_psk";
        case Scheme::training_qam: return "training_qam";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "ufcp") return Scheme::ufcp;
    if (s == "differential") return Scheme::differential;
    if (s == "training_psk") return Scheme::training_psk;
    if (s == "training_qam") return Scheme::training_qam;
    throw std::invalid_argument("unknown scheme: " + s);
}

Codebook build_scheme_codebook(Scheme s, int rate_bits) {
    switch (s) {
        case Scheme::ufcp: return enumerate_codebook(optimal_design(rate_bits));
        case Scheme::differential: return differential_codebook(rate_bits);
        case Scheme::training_psk: return training_codebook(rate_bits, SymbolFamily::psk);
        case Scheme::training_qam: return training_codebook(rate_bits, SymbolFamily::qam);
    }
    throw std::invalid_argument("bad scheme");
}

namespace {

std::uint64_t uniform_below(SplitMix64& g, std::uint64_t n) {
    if ((n & (n - 1)) == 0) return g.next() & (n - 1);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = g.next();
    while (v >= limit) v = g.next();
    return v % n;
}

std::uint64_t count_errors(const Codebook& cb, const GlrtDecoder& dec,
                           const NoiseConfig& noise, std::uint64_t seed,
                           std::uint64_t point, std::uint64_t t_begin,
                           std::uint64_t t_end) {
    std::uint64_t errors = 0;
    std::uint64_t n = cb.size();
    for (std::uint64_t t = t_begin; t < t_end; ++t) {
        SplitMix64 g = substream(seed, point, t);
        std::uint64_t idx = uniform_below(g, n);
        ChannelBlock blk = sample_block(g);
        Vec4 r = transmit(cb.words[idx].m, blk, noise, g);
        DecodeResult res = dec.decode(r);
        if (static_cast<std::uint64_t>(res.index) != idx) ++errors;
    }
    return errors;
}

}  // namespace

void wilson_ci(std::uint64_t errors, std::uint64_t trials, double& lo, double& hi) {
    if (trials == 0) {
        lo = hi = 0.0;
        return;
    }
    const double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double p = static_cast<double>(errors) / n;
    double z2n = z * z / n;
    double denom = 1.0 + z2n;
    double center = (p + z2n / 2.0) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / denom;
    lo = (errors == 0) ? 0.0 : std::max(0.0, center - half);
    hi = (errors == trials) ? 1.0 : std::min(1.0, center + half);
}

std::vector<SimPoint> run_cer_curve(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_cer_curve: trials must be >= 1");
    for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
        if (!(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1]))
            throw std::invalid_argument("run_cer_curve: SNR grid must be increasing");

    Codebook cb = build_scheme_codebook(cfg.scheme, cfg.rate_bits);
    GlrtDecoder dec(cb);

    int workers = std::max(1, cfg.workers);
    std::vector<SimPoint> out;
    out.reserve(cfg.snr_grid_db.size());

    for (std::size_t pi = 0; pi < cfg.snr_grid_db.size(); ++pi) {
        NoiseConfig noise = NoiseConfig::from_snr_db(cfg.snr_grid_db[pi]);
        std::uint64_t errors = 0;
        if (workers == 1) {
            errors = count_errors(cb, dec, noise, cfg.seed, pi, 0, cfg.trials);
        } else {
            std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
            std::vector<std::thread> pool;
            std::uint64_t chunk = cfg.trials / static_cast<std::uint64_t>(workers);
            std::uint64_t rem = cfg.trials % static_cast<std::uint64_t>(workers);
            std::uint64_t begin = 0;
            for (int w = 0; w < workers; ++w) {
                std::uint64_t len = chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
                std::uint64_t end = begin + len;
                pool.emplace_back([&, w, begin, end] {
                    partial[static_cast<std::size_t>(w)] =
                        count_errors(cb, dec, noise, cfg.seed, pi, begin, end);
                });
                begin = end;
            }
            for (auto& th : pool) th.join();
            for (auto e : partial) errors += e;
        }

        SimPoint pt;
        pt.scheme = cfg.scheme;
        pt.rate_bits = cfg.rate_bits;
        pt.snr_db = cfg.snr_grid_db[pi];
        pt.trials = cfg.trials;
        pt.errors = errors;
        pt.cer = static_cast<double>(errors) / static_cast<double>(cfg.trials);
        wilson_ci(errors, cfg.trials, pt.ci_lo, pt.ci_hi);
        pt.seed = cfg.seed;
        out.push_back(pt);
    }
    return out;
}

double asymptotic_pep(const Codeword& u, const Codeword& v, double snr) {
    double det = pairwise_det(u, v);
    if (det <= 1e-300) throw std::invalid_argument("asymptotic_pep: degenerate pair");
    return 3.0 / (det * snr * snr);
}

double union_bound_cer(const Codebook& cb, double snr) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cb.size(); ++i)
        for (std::size_t j = i + 1; j < cb.size(); ++j)
            sum += asymptotic_pep(cb.words[i], cb.words[j], snr);
    return 2.0 * sum / static_cast<double>(cb.size());
}

bool matches_sigfigs(double value, double reference, int sigfigs) {
    if (reference == 0.0) return value == 0.0;
    double mag = std::floor(std::log10(std::abs(reference)));
    double scale = std::pow(10.0, sigfigs - 1 - mag);
    return std::llround(value * scale) == std::llround(reference * scale);
}

namespace {

struct PublishedRow {
    int r;
    double gain;
    int xsize;
    int p, q;  // printed constellation sizes (log2), smaller first
    double alpha;
};

// Printed rows of the maximum-coding-gain table, bit rates 1.00 .. 3.25.
const PublishedRow kPublishedTable[] = {
    {4, 0.250, 1, 2, 2, 0.5},      {5, 0.127, 2, 3, 3, 0.254},
    {6, 0.0839, 2, 3, 4, 0.206},   {7, 0.0614, 2, 4, 4, 0.189},
    {8, 0.0385, 2, 4, 5, 0.137},   {9, 0.0294, 2, 5, 5, 0.121},
    {10, 0.0156, 1, 5, 5, 0.125},  {11, 0.0116, 2, 6, 6, 0.0762},
    {12, 0.00820, 2, 6, 7, 0.0640}, {13, 0.00633, 2, 7, 7, 0.0563},
};

}  // namespace

std::vector<Table1Row> table1_report(bool with_bruteforce, int brute_r_max) {
    std::vector<Table1Row> rows;
    for (const auto& pr : kPublishedTable) {
        Table1Row row;
        row.r = pr.r;
        row.rate = pr.r / 4.0;
        row.published_gain = pr.gain;
        row.published_alpha = pr.alpha;
        row.published_xsize = pr.xsize;
        row.published_p = pr.p;
        row.published_q = pr.q;

        CodeDesign d = optimal_design(pr.r);
        row.delta = d.delta;
        row.p = d.p;
        row.q = d.q;
        row.gain = d.analytic_gain;
        row.alpha = d.alpha;
        row.gain_match = matches_sigfigs(row.gain, row.published_gain, 3);
        row.alpha_match = matches_sigfigs(row.alpha, row.published_alpha, 3);

        if (with_bruteforce && pr.r <= brute_r_max) {
            BruteForceGain bf = coding_gain_bruteforce(d);
            row.brute = bf.gain;
            row.argmin_a = bf.a;
            row.argmin_b = bf.b;
            row.brute_match =
                std::abs(bf.gain - row.gain) <= 1e-9 * std::abs(row.gain);
        }

        if (pr.r == 7)
            row.note = "printed gain 0.0614 vs closed-form 8/112; brute force arbitrates";
        if (pr.r == 8)
            row.note = "printed alpha 0.137 vs closed-form 1/sqrt(52)=0.1387";
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

}  // namespace

std::string table1_csv(const std::vector<Table1Row>& rows) {
    std::string s =
        "rate_bits,bit_rate,published_gain,published_alpha,published_xsize,analytic_gain,"
        "analytic_alpha,delta,p,q,bruteforce_gain,gain_match,alpha_match,brute_match,"
        "note\n";
    for (const auto& r : rows) {
        s += std::to_string(r.r) + "," + fmt("%.10g", r.rate) + ",";
        s += fmt("%.10g", r.published_gain) + "," + fmt("%.10g", r.published_alpha) + ",";
        s += std::to_string(r.published_xsize) + ",";
        s += fmt("%.10g", r.gain) + "," + fmt("%.10g", r.alpha) + ",";
        s += std::to_string(r.delta) + "," + std::to_string(r.p) + "," +
             std::to_string(r.q) + ",";
        s += (r.brute >= 0.0 ? fmt("%.10g", r.brute) : std::string("")) + ",";
        s += std::string(r.gain_match ? "1" : "0") + "," +
             (r.alpha_match ? "1" : "0") + "," + (r.brute_match ? "1" : "0") + ",";
        s += "\"" + r.note + "\"\n";
    }
    return s;
}

std::string sim_csv(const std::vector<SimPoint>& points) {
    std::string s = "scheme,rate_bits,snr_db,trials,errors,cer,ci_lo,ci_hi,seed\n";
    for (const auto& p : points) {
        s += scheme_name(p.scheme) + "," + std::to_string(p.rate_bits) + ",";
        s += fmt("%.10g", p.snr_db) + "," + std::to_string(p.trials) + "," +
             std::to_string(p.errors) + ",";
        s += fmt("%.10g", p.cer) + "," + fmt("%.10g", p.ci_lo) + "," +
             fmt("%.10g", p.ci_hi) + ",";
        s += std::to_string(p.seed) + "\n";
    }
    return s;
}

}  // namespace ufcp
