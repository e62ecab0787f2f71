#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ufcp/channel.hpp"
#include "ufcp/harness.hpp"
#include "ufcp/receiver.hpp"

using nlohmann::json;

namespace {

json points_json(const ufcp::Constellation& c) {
    json arr = json::array();
    for (auto z : c.points) arr.push_back({z.re, z.im});
    return arr;
}

json design_json(const ufcp::CodeDesign& d) {
    json j;
    j["rate_bits"] = d.r;
    j["delta"] = d.delta;
    j["p"] = d.p;
    j["q"] = d.q;
    j["alpha"] = d.alpha;
    j["analytic_gain"] = d.analytic_gain;
    j["X"] = points_json(d.ufcp1.X);
    j["Y1"] = points_json(d.ufcp1.Y);
    j["Y2"] = points_json(d.ufcp2.Y);
    return j;
}

std::vector<double> parse_snr_grid(const std::string& spec) {
    std::vector<double> grid;
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = spec.find(':', start);
        parts.push_back(spec.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() == 1) {
        grid.push_back(std::stod(parts[0]));
    } else if (parts.size() == 3) {
        double a = std::stod(parts[0]), b = std::stod(parts[1]), step = std::stod(parts[2]);
        if (step <= 0.0) throw std::invalid_argument("snr-db: step must be > 0");
        for (double v = a; v <= b + 1e-9; v += step) grid.push_back(v);
    } else {
        throw std::invalid_argument("snr-db: expected a single value or a:b:step");
    }
    return grid;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << content;
}

void print_point_table(const std::string& label, const ufcp::Constellation& c) {
    std::printf("%s (%zu points):", label.c_str(), c.size());
    for (auto z : c.points) std::printf(" %s", ufcp::to_string(z).c_str());
    std::printf("\n");
}

int run(int argc, char** argv) {
    CLI::App app{"Unitary UFCP space-time block code designer and simulator"};
    app.require_subcommand(1);

    // constellation dump
    auto* cst = app.add_subcommand("constellation", "constellation utilities");
    cst->require_subcommand(1);
    auto* dump = cst->add_subcommand("dump", "print one point per line as \"re im\"");
    int dump_bits = 4;
    dump->add_option("--bits", dump_bits, "log2 constellation size")->required();

    // factorize
    auto* fac = app.add_subcommand("factorize", "optimal UFCP factorization of a QAM");
    int fac_bits = 4, fac_xsize = 2;
    fac->add_option("--bits", fac_bits, "log2 |Z|")->required();
    fac->add_option("--x-size", fac_xsize, "|X|, 2 or 4")->required();

    // design
    auto* des = app.add_subcommand("design", "optimal code design for a rate");
    int des_r = 6;
    bool des_json = false;
    des->add_option("--rate-bits", des_r, "total bits per codeword")->required();
    des->add_flag("--json", des_json, "emit JSON");

    // gain
    auto* gn = app.add_subcommand("gain", "coding gain of the optimal design");
    int gn_r = 6;
    std::string gn_method = "both";
    gn->add_option("--rate-bits", gn_r)->required();
    gn->add_option("--method", gn_method, "analytic|bruteforce|both");

    // table1
    auto* tb = app.add_subcommand("table1", "published-vs-computed gain table as CSV");
    std::string tb_out;
    bool tb_no_brute = false;
    int tb_brute_max = 13;
    tb->add_option("--out", tb_out, "output CSV path (default stdout)");
    tb->add_flag("--no-bruteforce", tb_no_brute, "skip the pair scans");
    tb->add_option("--brute-max", tb_brute_max, "largest r for the pair scan");

    // identify
    auto* idf = app.add_subcommand("identify", "noise-free identification demo");
    int idf_r = 6;
    std::uint64_t idf_trials = 100, idf_seed = 1;
    idf->add_option("--rate-bits", idf_r)->required();
    idf->add_option("--trials", idf_trials, "random channels per codeword");
    idf->add_option("--seed", idf_seed);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo codeword error rate");
    std::string sim_scheme = "ufcp", sim_snr = "10:40:2", sim_out, sim_json_out;
    int sim_r = 6, sim_workers = 1;
    std::uint64_t sim_trials = 100000, sim_seed = 1;
    bool sim_union = false;
    sim->add_option("--scheme", sim_scheme, "ufcp|differential|training_psk|training_qam");
    sim->add_option("--rate-bits", sim_r)->required();
    sim->add_option("--snr-db", sim_snr, "grid as a:b:step or a single value");
    sim->add_option("--trials", sim_trials, "trials per SNR point");
    sim->add_option("--seed", sim_seed);
    sim->add_option("--workers", sim_workers);
    sim->add_option("--out", sim_out, "CSV output path (default stdout)");
    sim->add_option("--json", sim_json_out, "JSON mirror with the design embedded");
    sim->add_flag("--union-bound", sim_union, "log the pairwise union bound per point");

    CLI11_PARSE(app, argc, argv);

    if (dump->parsed()) {
        for (auto z : ufcp::make_qam(dump_bits).points)
            std::printf("%lld %lld\n", z.re, z.im);
        return 0;
    }

    if (fac->parsed()) {
        ufcp::Ufcp u = ufcp::factorize_qam(fac_bits, fac_xsize);
        print_point_table("X", u.X);
        print_point_table("Y", u.Y);
        double measured = u.Y.size() >= 2 ? ufcp::d_min(u.Y) : 0.0;
        double claimed = ufcp::walk_dmin_claim(fac_bits, fac_xsize);
        std::printf("d_min(Y) = %.10g (selection-walk claim %.10g)%s\n", measured, claimed,
                    std::abs(measured - claimed) > 1e-9 ? "  ** differs from claim **"
                                                        : "");
        for (std::size_t i = 0; i < u.X.size(); ++i) {
            std::printf("group %s:", ufcp::to_string(u.X.points[i]).c_str());
            for (auto z : u.groups_by_x[i]) std::printf(" %s", ufcp::to_string(z).c_str());
            std::printf("\n");
        }
        return 0;
    }

    if (des->parsed()) {
        ufcp::CodeDesign d = ufcp::optimal_design(des_r);
        if (des_json) {
            std::printf("%s\n", design_json(d).dump(2).c_str());
        } else {
            std::printf("r=%d delta=%d p=%d q=%d alpha=%.10g analytic_gain=%.10g\n", d.r,
                        d.delta, d.p, d.q, d.alpha, d.analytic_gain);
            print_point_table("X", d.ufcp1.X);
            print_point_table("Y1", d.ufcp1.Y);
            print_point_table("Y2", d.ufcp2.Y);
        }
        return 0;
    }

    if (gn->parsed()) {
        ufcp::CodeDesign d = ufcp::optimal_design(gn_r);
        if (gn_method == "analytic" || gn_method == "both")
            std::printf("analytic   gain=%.12g alpha=%.12g\n", d.analytic_gain, d.alpha);
        if (gn_method == "bruteforce" || gn_method == "both") {
            ufcp::BruteForceGain bf = ufcp::coding_gain_bruteforce(d);
            std::printf("bruteforce gain=%.12g argmin=(%zu,%zu)\n", bf.gain, bf.a, bf.b);
        }
        if (gn_method != "analytic" && gn_method != "bruteforce" && gn_method != "both")
            throw std::invalid_argument("gain: method must be analytic|bruteforce|both");
        return 0;
    }

    if (tb->parsed()) {
        auto rows = ufcp::table1_report(!tb_no_brute, tb_brute_max);
        std::string csv = ufcp::table1_csv(rows);
        if (tb_out.empty())
            std::fputs(csv.c_str(), stdout);
        else
            write_file(tb_out, csv);
        return 0;
    }

    if (idf->parsed()) {
        ufcp::CodeDesign d = ufcp::optimal_design(idf_r);
        ufcp::Codebook cb = ufcp::enumerate_codebook(d);
        std::uint64_t pass = 0, fail = 0;
        for (std::size_t w = 0; w < cb.size(); ++w) {
            for (std::uint64_t t = 0; t < idf_trials; ++t) {
                ufcp::SplitMix64 g = ufcp::substream(idf_seed, w, t);
                ufcp::ChannelBlock blk = ufcp::sample_block(g);
                ufcp::Vec4 r = ufcp::mat_vec(cb.words[w].m, blk.h);
                ufcp::IdentifyResult res = ufcp::identify_noise_free(r, d);
                bool ok = res.x == cb.words[w].x && res.y1 == cb.words[w].y1 &&
                          res.y2 == cb.words[w].y2 &&
                          std::abs(res.h[0] - blk.h[0]) < 1e-9 &&
                          std::abs(res.h[1] - blk.h[1]) < 1e-9;
                ok ? ++pass : ++fail;
            }
        }
        std::printf("identify r=%d: %llu pass, %llu fail over %zu codewords x %llu channels\n",
                    idf_r, static_cast<unsigned long long>(pass),
                    static_cast<unsigned long long>(fail), cb.size(),
                    static_cast<unsigned long long>(idf_trials));
        return fail == 0 ? 0 : 1;
    }

    if (sim->parsed()) {
        ufcp::SimConfig cfg;
        cfg.scheme = ufcp::scheme_from_string(sim_scheme);
        cfg.rate_bits = sim_r;
        cfg.snr_grid_db = parse_snr_grid(sim_snr);
        cfg.trials = sim_trials;
        cfg.seed = sim_seed;
        cfg.workers = sim_workers;

        auto points = ufcp::run_cer_curve(cfg);
        std::string csv = ufcp::sim_csv(points);
        if (sim_out.empty())
            std::fputs(csv.c_str(), stdout);
        else
            write_file(sim_out, csv);

        if (sim_union) {
            ufcp::Codebook cb = ufcp::build_scheme_codebook(cfg.scheme, cfg.rate_bits);
            for (const auto& p : points) {
                double snr = std::pow(10.0, p.snr_db / 10.0);
                std::fprintf(stderr, "union bound @ %.3g dB: %.6g (measured %.6g)\n",
                             p.snr_db, ufcp::union_bound_cer(cb, snr), p.cer);
            }
        }

        if (!sim_json_out.empty()) {
            json j;
            j["scheme"] = ufcp::scheme_name(cfg.scheme);
            j["rate_bits"] = cfg.rate_bits;
            j["seed"] = cfg.seed;
            j["trials"] = cfg.trials;
            j["workers"] = cfg.workers;
            if (cfg.scheme == ufcp::Scheme::ufcp)
                j["design"] = design_json(ufcp::optimal_design(cfg.rate_bits));
            json pts = json::array();
            for (const auto& p : points)
                pts.push_back({{"snr_db", p.snr_db},
                               {"trials", p.trials},
                               {"errors", p.errors},
                               {"cer", p.cer},
                               {"ci_lo", p.ci_lo},
                               {"ci_hi", p.ci_hi}});
            j["points"] = pts;
            write_file(sim_json_out, j.dump(2) + "\n");
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
