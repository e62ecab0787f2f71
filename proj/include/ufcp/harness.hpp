#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ufcp/stbc.hpp"

namespace ufcp {

enum class Scheme { ufcp, differential, training_psk, training_qam };

std::string scheme_name(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct SimConfig {
    Scheme scheme = Scheme::ufcp;
    int rate_bits = 6;
    std::vector<double> snr_grid_db;
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct SimPoint {
    Scheme scheme = Scheme::ufcp;
    int rate_bits = 0;
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double cer = 0.0;
    double ci_lo = 0.0;  // 95% Wilson interval
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
};

Codebook build_scheme_codebook(Scheme s, int rate_bits);

// Monte Carlo codeword error rate. Each trial draws its randomness from the
// (seed, snr index, trial index) substream, so counts are invariant to the
// worker split.
std::vector<SimPoint> run_cer_curve(const SimConfig& cfg);

// High-SNR pairwise error probability 3 / (det(R_uv) * snr^2); snr is linear.
double asymptotic_pep(const Codeword& u, const Codeword& v, double snr);

// Union bound on the CER at linear snr, averaged over transmitted codewords.
double union_bound_cer(const Codebook& cb, double snr);

void wilson_ci(std::uint64_t errors, std::uint64_t trials, double& lo, double& hi);

// Rounds both values to `sigfigs` significant decimal digits (at the
// reference's scale) and compares.
bool matches_sigfigs(double value, double reference, int sigfigs);

struct Table1Row {
    int r = 0;
    double rate = 0.0;
    // printed values
    double published_gain = 0.0;
    double published_alpha = 0.0;
    int published_xsize = 0;
    int published_p = 0;  // printed constellation sizes, smaller first
    int published_q = 0;
    // computed
    int delta = 0, p = 0, q = 0;
    double gain = 0.0;
    double alpha = 0.0;
    double brute = -1.0;  // < 0 when the scan was skipped
    std::size_t argmin_a = 0, argmin_b = 0;
    // strict 3-significant-figure comparison against the printed table
    bool gain_match = false;
    bool alpha_match = false;
    bool brute_match = false;  // brute vs analytic, relative 1e-9
    std::string note;
};

// Rates 1.0 .. 3.25 (r = 4..13), printed values versus computed ones.
std::vector<Table1Row> table1_report(bool with_bruteforce = true, int brute_r_max = 13);

std::string table1_csv(const std::vector<Table1Row>& rows);
std::string sim_csv(const std::vector<SimPoint>& points);

}  // namespace ufcp
