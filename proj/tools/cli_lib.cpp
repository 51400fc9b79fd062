#include "cli_lib.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "spb/exponents.hpp"
#include "spb/isp.hpp"
#include "spb/logspace.hpp"
#include "spb/pairwise.hpp"
#include "spb/sp59.hpp"
#include "spb/sp67.hpp"
#include "spb/vf.hpp"

#ifndef SPB_VERSION_STRING
#define SPB_VERSION_STRING "0.0.0"
#endif

namespace spb::cli {

namespace {

constexpr double ln2 = 0.6931471805599453;

// -------- config --------

struct RunConfig {
    std::string family = "bpsk-awgn";
    std::string dmc_path;
    double bsc_p = 0.1;

    double n = 0;
    double rate = 0;
    std::string rate_unit = "bits";
    double list_size = 1;
    double alpha = 0.5;

    std::string bounds_csv;
    double snr_from = 0, snr_to = 0, snr_step = 0.25;
    std::string snr_unit = "db";
    double snr_fixed = 0;
    double rate_from = 0, rate_to = 0, rate_step = 0.05;
    std::string pe_targets_csv = "1e-4";
    std::string pairs_csv = "isp:sp59";
    std::uint64_t n_lo = 16, n_hi = 1000000;

    int quad_order = 96;
    std::string out_path;
    bool json_mirror = false;
    bool plot_script = false;

    double rate_bits() const {
        return rate_unit == "nats" ? rate / ln2 : rate;
    }
    double snr_db(double v) const {
        return snr_unit == "linear" ? 10.0 * std::log10(v) : v;
    }
};

int thread_count() {
    const char* env = std::getenv("SPB_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1 || v > 256)
        throw std::invalid_argument("SPB_THREADS must lie in [1, 256]");
    return static_cast<int>(v);
}

// Run fn(i) for i in [0, count) on the configured number of threads;
// results land in caller-owned slots so output order stays fixed.
template <class F>
void parallel_for(std::size_t count, F&& fn) {
    const int threads = thread_count();
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// -------- parsing helpers --------

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

BoundKind parse_bound(const std::string& name) {
    if (name == "sp59") return BoundKind::Sp59;
    if (name == "sp67") return BoundKind::Sp67;
    if (name == "vf") return BoundKind::Vf;
    if (name == "isp") return BoundKind::Isp;
    if (name == "rc") return BoundKind::RandomCoding;
    if (name == "clb") return BoundKind::CapacityLimit;
    throw std::invalid_argument("unknown bound '" + name +
                                "' (expected sp59|sp67|vf|isp|rc|clb)");
}

ChannelFamily parse_family(const RunConfig& cfg) {
    if (cfg.family == "bpsk-awgn") return ChannelFamily::Bpsk;
    if (cfg.family == "qpsk-awgn") return ChannelFamily::Qpsk;
    if (cfg.family == "8psk-awgn") return ChannelFamily::Psk8;
    throw std::invalid_argument("this subcommand requires a Gaussian family "
                                "(bpsk-awgn|qpsk-awgn|8psk-awgn), got '" +
                                cfg.family + "'");
}

Channel make_channel_fixed(const RunConfig& cfg) {
    if (cfg.family == "bsc") return Channel(make_bsc(cfg.bsc_p));
    if (cfg.family == "dmc-file") {
        if (cfg.dmc_path.empty())
            throw std::invalid_argument("--dmc-file is required with family "
                                        "dmc-file");
        return Channel(load_dmc_file(cfg.dmc_path));
    }
    const ChannelFamily fam = parse_family(cfg);
    const double es_db =
        es_db_from_eb_db(cfg.snr_db(cfg.snr_fixed), cfg.rate_bits());
    return make_awgn_channel(fam, std::pow(10.0, es_db / 10.0), cfg.quad_order);
}

// -------- output --------

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Table {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> meta;  // echoed config
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(const Table& t, const RunConfig& cfg, std::ostream& fallback) {
    std::ostringstream csv;
    csv << "# spbound " << t.subcommand << " v" << SPB_VERSION_STRING << "\n";
    for (const auto& [k, v] : t.meta) csv << "# " << k << "=" << v << "\n";
    csv << "# columns: ";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        csv << (i ? "," : "") << t.columns[i];
    csv << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            csv << (i ? "," : "") << fmt(row[i]);
        csv << "\n";
    }

    if (cfg.out_path.empty()) {
        fallback << csv.str();
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f)
            throw std::invalid_argument("cannot open output file '" +
                                        cfg.out_path + "'");
        f << csv.str();
    }

    if (cfg.json_mirror) {
        nlohmann::json j;
        j["tool"] = "spbound";
        j["version"] = SPB_VERSION_STRING;
        j["subcommand"] = t.subcommand;
        for (const auto& [k, v] : t.meta) j["config"][k] = v;
        j["columns"] = t.columns;
        for (const auto& row : t.rows) {
            nlohmann::json r = nlohmann::json::array();
            for (double v : row) {
                if (std::isfinite(v))
                    r.push_back(v);
                else
                    r.push_back(nullptr);  // JSON has no inf/nan
            }
            j["rows"].push_back(std::move(r));
        }
        if (j.find("rows") == j.end()) j["rows"] = nlohmann::json::array();
        const std::string path = cfg.out_path.empty()
                                     ? std::string()
                                     : cfg.out_path + ".json";
        if (path.empty()) {
            fallback << j.dump(2) << "\n";
        } else {
            std::ofstream f(path, std::ios::binary);
            f << j.dump(2) << "\n";
        }
    }

    if (cfg.plot_script && !cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path + ".py", std::ios::binary);
        f << "#!/usr/bin/env python3\n"
          << "# quick-look plot for " << cfg.out_path << "\n"
          << "import matplotlib.pyplot as plt\n"
          << "import numpy as np\n"
          << "data = np.genfromtxt(" << std::quoted(cfg.out_path)
          << ", delimiter=',', comments='#')\n"
          << "cols = " << [&] {
                 std::string s = "[";
                 for (std::size_t i = 0; i < t.columns.size(); ++i)
                     s += (i ? ", \"" : "\"") + t.columns[i] + "\"";
                 return s + "]";
             }()
          << "\n"
          << "data = np.atleast_2d(data)\n"
          << "for i in range(1, data.shape[1]):\n"
          << "    plt.plot(data[:, 0], data[:, i], label=cols[i])\n"
          << "plt.xlabel(cols[0]); plt.legend(); plt.grid(True)\n"
          << "plt.savefig(" << std::quoted(cfg.out_path + ".png")
          << ", dpi=150)\n";
    }
}

std::vector<double> grid(double from, double to, double step) {
    if (!(step > 0)) throw std::invalid_argument("step must be positive");
    if (to < from) throw std::invalid_argument("empty sweep range");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>((to - from) / step + 1.5);
    for (std::size_t i = 0; i < count; ++i) {
        const double v = from + step * static_cast<double>(i);
        if (v > to + 0.5 * step) break;
        out.push_back(v);
    }
    return out;
}

// -------- subcommands --------

int run_curve(const RunConfig& cfg, std::ostream& out) {
    const ChannelFamily fam = parse_family(cfg);
    const std::vector<std::string> names = split_csv(cfg.bounds_csv);
    if (names.empty())
        throw std::invalid_argument("--bounds must list at least one bound");
    std::vector<BoundKind> kinds;
    for (const auto& nm : names) {
        const BoundKind k = parse_bound(nm);
        if (k == BoundKind::Sp67)
            throw std::invalid_argument(
                "sp67 requires a discrete channel; it cannot appear in a "
                "Gaussian-family curve");
        kinds.push_back(k);
    }
    if (!(cfg.n >= 1)) throw std::invalid_argument("--n must be >= 1");
    if (!(cfg.rate_bits() > 0))
        throw std::invalid_argument("--rate must be positive");

    const std::vector<double> ebs =
        grid(cfg.snr_db(cfg.snr_from), cfg.snr_db(cfg.snr_to), cfg.snr_step);

    Table t;
    t.subcommand = "curve";
    t.meta = {{"family", cfg.family},
              {"n", fmt(cfg.n)},
              {"rate_bits", fmt(cfg.rate_bits())},
              {"bounds", cfg.bounds_csv},
              {"quad_order", fmt(cfg.quad_order)}};
    t.columns = {"eb_no_db", "es_no_db"};
    for (const auto& nm : names) t.columns.push_back("ln_pe_" + nm);
    t.rows.assign(ebs.size(), {});

    parallel_for(ebs.size(), [&](std::size_t i) {
        const double eb_db = ebs[i];
        const double es_db = es_db_from_eb_db(eb_db, cfg.rate_bits());
        std::vector<double> row{eb_db, es_db};
        for (BoundKind k : kinds)
            row.push_back(bound_log_pe(k, fam, std::pow(10.0, es_db / 10.0),
                                       cfg.n, cfg.rate_bits()));
        t.rows[i] = std::move(row);
    });

    write_table(t, cfg, out);
    return 0;
}

int run_region(const RunConfig& cfg, std::ostream& out) {
    const ChannelFamily fam = parse_family(cfg);
    std::vector<std::pair<BoundKind, BoundKind>> pairs;
    std::vector<std::string> pair_names = split_csv(cfg.pairs_csv);
    if (pair_names.empty())
        throw std::invalid_argument("--pairs must list at least one pair");
    for (const auto& p : pair_names) {
        const auto colon = p.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("pair '" + p +
                                        "' must look like isp:sp59");
        pairs.emplace_back(parse_bound(p.substr(0, colon)),
                           parse_bound(p.substr(colon + 1)));
    }
    std::vector<double> pes;
    for (const auto& s : split_csv(cfg.pe_targets_csv)) pes.push_back(std::stod(s));
    for (double pe : pes)
        if (!(pe > 0 && pe < 1))
            throw std::invalid_argument("pe targets must lie in (0,1)");
    const std::vector<double> rates =
        cfg.rate_to > 0 ? grid(cfg.rate_from, cfg.rate_to, cfg.rate_step)
                        : std::vector<double>{cfg.rate_bits()};
    if (rates.empty()) throw std::invalid_argument("empty rate grid");

    struct Job {
        double rate_bits, pe;
        std::size_t pair;
    };
    std::vector<Job> jobs;
    for (double r : rates)
        for (std::size_t pi = 0; pi < pairs.size(); ++pi)
            for (double pe : pes) jobs.push_back({r, pe, pi});

    Table t;
    t.subcommand = "region";
    t.meta = {{"family", cfg.family},
              {"pairs", cfg.pairs_csv},
              {"pe_targets", cfg.pe_targets_csv},
              {"n_range", fmt(static_cast<double>(cfg.n_lo)) + ".." +
                              fmt(static_cast<double>(cfg.n_hi))},
              {"quad_order", fmt(cfg.quad_order)}};
    t.columns = {"rate_bits", "pair_index", "pe_target", "n_star", "censored"};
    t.rows.assign(jobs.size(), {});

    parallel_for(jobs.size(), [&](std::size_t i) {
        const Job& job = jobs[i];
        const RegionMap rm =
            crossover_length(pairs[job.pair].first, pairs[job.pair].second, fam,
                             job.rate_bits, job.pe, cfg.n_lo, cfg.n_hi);
        t.rows[i] = {job.rate_bits, static_cast<double>(job.pair), job.pe,
                     rm.crossover_found ? static_cast<double>(rm.n_star) : -1.0,
                     rm.crossover_found ? 0.0 : 1.0};
    });

    // name the pairs in the header so pair_index stays interpretable
    for (std::size_t pi = 0; pi < pair_names.size(); ++pi)
        t.meta.emplace_back("pair_" + std::to_string(pi), pair_names[pi]);

    write_table(t, cfg, out);
    return 0;
}

int run_exponent(const RunConfig& cfg, std::ostream& out) {
    const Channel ch = make_channel_fixed(cfg);
    const std::vector<double> rates =
        cfg.rate_to > 0 ? grid(cfg.rate_from, cfg.rate_to, cfg.rate_step)
                        : std::vector<double>{cfg.rate_bits()};

    Table t;
    t.subcommand = "exponent";
    t.meta = {{"family", cfg.family}, {"quad_order", fmt(cfg.quad_order)}};
    if (cfg.family == "bsc") t.meta.emplace_back("bsc_p", fmt(cfg.bsc_p));
    if (cfg.family == "dmc-file") t.meta.emplace_back("dmc_file", cfg.dmc_path);
    if (cfg.family != "bsc" && cfg.family != "dmc-file")
        t.meta.emplace_back("es_no_db",
                            fmt(es_db_from_eb_db(cfg.snr_db(cfg.snr_fixed),
                                                 cfg.rate_bits())));
    t.columns = {"rate_bits", "rate_nats", "e_sp", "e_r", "rho_sp", "rho_r"};
    t.rows.assign(rates.size(), {});

    parallel_for(rates.size(), [&](std::size_t i) {
        const double rb = rates[i];
        const double rn = rb * ln2;
        const ExponentValue sp = esp(ch, rn);
        const BoundResult rc = random_coding_bound(ch, 1.0, rn);
        const double er = rc.vacuous ? 0.0 : -rc.log_pe;
        t.rows[i] = {rb,
                     rn,
                     sp.diverges ? std::numeric_limits<double>::infinity()
                                 : sp.value,
                     er,
                     sp.optimizer_rho,
                     rc.rho_star};
    });

    write_table(t, cfg, out);
    return 0;
}

int run_threshold(const RunConfig& cfg, const std::string& bound,
                  std::ostream& out) {
    const ChannelFamily fam = parse_family(cfg);
    ThresholdQuery q;
    q.kind = parse_bound(bound);
    q.family = fam;
    q.n = cfg.n;
    q.rate_bits = cfg.rate_bits();
    q.target_pe = [&] {
        const auto pes = split_csv(cfg.pe_targets_csv);
        if (pes.size() != 1)
            throw std::invalid_argument("threshold takes exactly one --pe value");
        return std::stod(pes[0]);
    }();
    if (!(q.target_pe > 0 && q.target_pe < 1))
        throw std::invalid_argument("pe targets must lie in (0,1)");
    if (q.kind != BoundKind::CapacityLimit && !(cfg.n >= 1))
        throw std::invalid_argument("--n must be >= 1");
    if (q.kind == BoundKind::Sp67)
        throw std::invalid_argument("sp67 requires a discrete channel");

    const ThresholdResult r = snr_threshold(q);
    if (!r.found)
        throw std::runtime_error("threshold not bracketed in [-5, 30] dB");

    Table t;
    t.subcommand = "threshold";
    t.meta = {{"family", cfg.family},
              {"bound", bound},
              {"n", fmt(cfg.n)},
              {"rate_bits", fmt(q.rate_bits)},
              {"pe_target", fmt(q.target_pe)},
              {"quad_order", fmt(cfg.quad_order)}};
    t.columns = {"eb_no_db", "es_no_db", "residual_ln", "iterations"};
    t.rows = {{r.eb_no_db, r.es_no_db, r.residual,
               static_cast<double>(r.iterations)}};
    write_table(t, cfg, out);
    return 0;
}

// Small built-in battery of cross-module identities, runnable anywhere
// without fixtures. Failures exit with the numeric-failure code.
int run_check(std::ostream& out) {
    int failures = 0;
    auto report = [&](const char* name, bool ok, double err) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name << " (err " << fmt(err)
            << ")\n";
        if (!ok) ++failures;
    };

    {
        const Channel bsc(make_bsc(0.1));
        const double ref =
            std::log(2.0) - 2.0 * std::log(std::sqrt(0.9) + std::sqrt(0.1));
        const double err = std::fabs(e0(bsc, 1.0) - ref);
        report("gallager function at rho=1 closed form", err < 1e-12, err);
    }
    {
        const Channel bsc(make_bsc(0.1));
        double worst = 0.0;
        for (double s : {0.2, 0.5, 0.8}) {
            const MuTriple m = mu0_with_derivatives(bsc, s);
            const double rho = s / (1.0 - s);
            worst = std::max(worst, std::fabs(m.mu0 + (1.0 - s) * e0(bsc, rho)));
        }
        report("tilted log-moment identity", worst < 1e-10, worst);
    }
    {
        const std::vector<double> p1{0.9, 0.1}, p2{0.1, 0.9};
        const MuTriple pb = mu_pair(p1, p2, 0.5);
        const double err = std::fabs(pb.mu0 - std::log(0.6));
        report("pairwise chernoff hand value", err < 1e-12, err);
    }
    {
        const std::size_t n = 50;
        const BoundResult r = sp59_bound(n, std::log(2.0) / n, 0.5);
        const double err =
            std::fabs(r.log_pe - log_norm_tail(std::sqrt(2.0 * n * 0.5)));
        report("cone bound half-space reduction", err < 1e-8, err);
    }
    {
        const Channel bsc(make_bsc(0.1));
        const VfTerms terms = vf_terms(bsc, 0.0);
        const double err =
            std::max(std::fabs(terms.nu1[0]), std::fabs(terms.nu2[0]));
        report("nu statistics vanish at rho=0", err < 1e-12, err);
    }
    {
        const Channel bsc(make_bsc(0.1));
        const BoundResult r = random_coding_bound(bsc, 100, 0.6);
        report("random coding vacuous above capacity", r.vacuous, 0.0);
    }
    {
        const Channel ch = make_awgn_channel(ChannelFamily::Qpsk, 1.0);
        CodeSpec spec;
        spec.n = 200;
        spec.rate_nats = 0.9;
        const double isp = isp_bound(ch, spec).log_pe;
        const double vf = vf_bound(ch, spec).log_pe;
        report("improved bound dominates vf", isp >= vf - 1e-9, vf - isp);
    }

    out << (failures == 0 ? "all checks passed\n" : "checks failed\n");
    return failures == 0 ? 0 : 3;
}

}  // namespace

DiscreteChannel load_dmc_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open DMC file '" + path + "'");
    std::size_t k = 0, j = 0;
    if (!(f >> k >> j) || k < 1 || j < 1)
        throw std::invalid_argument("DMC file must start with 'K J' counts");
    std::vector<double> p(k * j);
    for (std::size_t r = 0; r < k; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < j; ++c) {
            if (!(f >> p[r * j + c]))
                throw std::invalid_argument("DMC file truncated at row " +
                                            std::to_string(r));
            if (p[r * j + c] < 0.0)
                throw std::invalid_argument("negative probability in row " +
                                            std::to_string(r));
            sum += p[r * j + c];
        }
        if (std::fabs(sum - 1.0) > 1e-6)
            throw std::invalid_argument("row " + std::to_string(r) +
                                        " sums to " + fmt(sum) + ", not 1");
        for (std::size_t c = 0; c < j; ++c) p[r * j + c] /= sum;
    }
    double extra;
    if (f >> extra)
        throw std::invalid_argument("trailing data after the transition matrix");
    return make_dmc(k, j, p);
}

int run_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
    RunConfig cfg;
    std::string threshold_bound = "isp";

    CLI::App app{"sphere-packing and random-coding bounds for block codes"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool wants_code) {
        sub->add_option("--family", cfg.family,
                        "bsc|bpsk-awgn|qpsk-awgn|8psk-awgn|dmc-file");
        sub->add_option("--dmc-file", cfg.dmc_path, "path for family dmc-file");
        sub->add_option("--bsc-p", cfg.bsc_p, "crossover for family bsc");
        sub->add_option("--quad-order", cfg.quad_order,
                        "Gauss-Legendre nodes per dimension")
            ->check(CLI::Range(8, 4096));
        sub->add_option("--out", cfg.out_path, "output CSV path (default stdout)");
        sub->add_flag("--json", cfg.json_mirror, "also write a JSON mirror");
        sub->add_flag("--plot-script", cfg.plot_script,
                      "emit a python plot script beside the CSV");
        if (wants_code) {
            sub->add_option("--n", cfg.n, "block length in channel uses");
            sub->add_option("--rate", cfg.rate, "code rate per channel use");
            sub->add_option("--rate-unit", cfg.rate_unit, "bits|nats")
                ->check(CLI::IsMember({"bits", "nats"}));
            sub->add_option("--list-size", cfg.list_size, "decoder list size");
            sub->add_option("--alpha", cfg.alpha, "expurgation fraction");
        }
    };

    CLI::App* curve =
        app.add_subcommand("curve", "ln P_e versus Eb/N0 for chosen bounds");
    add_common(curve, true);
    curve->add_option("--bounds", cfg.bounds_csv,
                      "comma list: sp59,vf,isp,rc,clb")
        ->required();
    curve->add_option("--snr-from", cfg.snr_from, "sweep start (Eb/N0)")
        ->required();
    curve->add_option("--snr-to", cfg.snr_to, "sweep end (Eb/N0)")->required();
    curve->add_option("--snr-step", cfg.snr_step, "sweep step (dB)");
    curve->add_option("--snr-unit", cfg.snr_unit, "db|linear")
        ->check(CLI::IsMember({"db", "linear"}));

    CLI::App* region = app.add_subcommand(
        "region", "crossover block lengths for bound pairs over a rate grid");
    add_common(region, true);
    region->add_option("--pairs", cfg.pairs_csv, "comma list of first:second");
    region->add_option("--pe-targets", cfg.pe_targets_csv,
                       "comma list of target error probabilities");
    region->add_option("--rate-from", cfg.rate_from, "rate grid start (bits)");
    region->add_option("--rate-to", cfg.rate_to, "rate grid end (bits)");
    region->add_option("--rate-step", cfg.rate_step, "rate grid step (bits)");
    region->add_option("--n-lo", cfg.n_lo, "block length search floor");
    region->add_option("--n-hi", cfg.n_hi, "block length search ceiling");

    CLI::App* expo = app.add_subcommand(
        "exponent", "sphere-packing and random-coding exponents over rates");
    add_common(expo, true);
    expo->add_option("--snr", cfg.snr_fixed, "fixed Eb/N0 for Gaussian families");
    expo->add_option("--snr-unit", cfg.snr_unit, "db|linear")
        ->check(CLI::IsMember({"db", "linear"}));
    expo->add_option("--rate-from", cfg.rate_from, "rate grid start (bits)");
    expo->add_option("--rate-to", cfg.rate_to, "rate grid end (bits)");
    expo->add_option("--rate-step", cfg.rate_step, "rate grid step (bits)");

    CLI::App* thr = app.add_subcommand(
        "threshold", "SNR at which one bound meets a target error probability");
    add_common(thr, true);
    thr->add_option("--bound", threshold_bound, "sp59|vf|isp|rc|clb");
    thr->add_option("--pe", cfg.pe_targets_csv, "target error probability");

    CLI::App* check =
        app.add_subcommand("check", "run the built-in invariant battery");
    (void)check;

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (curve->parsed()) return run_curve(cfg, out);
        if (region->parsed()) return run_region(cfg, out);
        if (expo->parsed()) return run_exponent(cfg, out);
        if (thr->parsed()) return run_threshold(cfg, threshold_bound, out);
        return run_check(out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace spb::cli
