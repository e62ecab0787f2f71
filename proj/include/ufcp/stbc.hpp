#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ufcp/cmat.hpp"
#include "ufcp/ufcp.hpp"

namespace ufcp {

// One rate point of the unitary code family: 2^r codewords built from two
// UFCPs sharing X, with the data constellations compressed by alpha.
struct CodeDesign {
    int r = 0;      // total bits per codeword
    int delta = 0;  // log2 |X|
    int p = 0;      // bits of Z1
    int q = 0;      // bits of Z2
    Ufcp ufcp1;
    Ufcp ufcp2;
    double alpha = 0.0;
    double analytic_gain = 0.0;
};

struct Codeword {
    Mat42 m;
    GaussianInt x, y1, y2;  // index triple; unused for baseline schemes
};

struct Codebook {
    std::vector<Codeword> words;
    std::optional<CodeDesign> design;  // set for UFCP codebooks only
    std::string scheme;

    std::size_t size() const { return words.size(); }
};

// Normalized stacked pair of Alamouti blocks:
//   (x 0; 0 x*; a*y1 a*y2; -a*y2* a*y1*) / sqrt(|x|^2 + a^2(|y1|^2+|y2|^2))
Codeword build_codeword(GaussianInt x, GaussianInt y1, GaussianInt y2, double alpha);

// All 2^r codewords, x-major then y1 then y2 in constellation order.
Codebook enumerate_codebook(const CodeDesign& d);

// Coding gain of one ordered pair (the sqrt-det criterion in quotient form).
double gain_fn(GaussianInt x, GaussianInt y1, GaussianInt y2, GaussianInt xh,
               GaussianInt y1h, GaussianInt y2h, double alpha);

struct BruteForceGain {
    double gain = 0.0;
    std::size_t a = 0;  // codebook indices of the minimizing pair
    std::size_t b = 0;
};

// Exact minimum of gain_fn over all distinct codeword pairs. Capped at 2^15
// codewords; larger designs should use analytic_gain.
BruteForceGain coding_gain_bruteforce(const CodeDesign& d);
// Same scan with alpha overridden (for scale-optimality scans).
BruteForceGain coding_gain_bruteforce_at(const CodeDesign& d, double alpha);

// Max-gain design for the rate: delta/p/q split, factorized constellations,
// and the closed-form optimal energy scale.
CodeDesign optimal_design(int r);
double analytic_gain(int r);
double analytic_alpha(int r);

// det((U,V)^H (U,V)) from the stacked 4x4 matrix.
double pairwise_det(const Mat42& u, const Mat42& v);
double pairwise_det(const Codeword& u, const Codeword& v);

// Baseline (a): stacked differential Alamouti code over PSK symbols.
Codebook differential_codebook(int r);

enum class SymbolFamily { psk, qam };

// Baseline (b): pilot block plus Alamouti data block. rho is the fraction of
// codeword energy carried by the pilots; 0.5 reproduces the literal structure
// (pilot entries exactly 1/sqrt(2)). E[tr(S^H S)] = 2 for any rho.
Codebook training_codebook(int r, SymbolFamily family, double rho = 0.5);

// r1 = r2 = r/2 for even r, else (r+1)/2 and (r-1)/2.
std::pair<int, int> symbol_bit_split(int r);

std::vector<cplx> psk_points(int bits);

}  // namespace ufcp
