#pragma once

// Command-line front end: flag parsing (flags > config file > defaults; the
// thread count also honors BESSELTRACE_THREADS when the flag is absent),
// command dispatch, and report emission.
//
// Exit codes: 0 all checks passed, 1 check failure, 2 usage error,
// 3 numerical non-convergence.

#include <complex>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "besseltrace/experiments.hpp"
#include "besseltrace/report.hpp"

namespace besseltrace::cli {

enum class Command {
    verify_arith,
    verify_special,
    verify_convolution,
    run_limit,
    run_a0,
    sears,
    pv,
    watson,
    all,
};

struct RunConfig {
    Command command = Command::all;
    std::int64_t l = 1, lp = 1;
    double va = 1.0, vb = 6.0;
    double wa = 2.0, wb = 8.0;
    double ga = 1.0, gb = 2.0;
    std::vector<double> ladder{500, 1000, 2000, 4000, 8000};
    double abs_tol = 1e-10, rel_tol = 1e-8, abs_tol_2d = 1e-8;
    double t_max = 30.0;
    int k_max = 60;
    int threads = 1;
    std::string output_path = "besseltrace-report";
    std::string format = "csv";
    bool timings = false;
    bool fast = false;
};

struct UsageError : error {
    using error::error;
    int exit_code = 2;
};

namespace detail {

inline std::vector<double> parse_ladder(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw invalid_value_error("invalid ladder entry: " + item);
        }
    }
    if (out.empty()) throw invalid_value_error("empty ladder: " + s);
    return out;
}

} // namespace detail

// Parses argv into a validated RunConfig. Throws UsageError on malformed
// input and invalid_value_error when a value violates a precondition.
inline RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"numerical verification of Kloosterman/Bessel trace-formula identities"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.fallthrough();

    std::string ladder_str;
    app.add_option("--l", cfg.l, "first coefficient index l");
    app.add_option("--lp", cfg.lp, "second coefficient index l'");
    app.add_option("--va", cfg.va, "V support lower endpoint");
    app.add_option("--vb", cfg.vb, "V support upper endpoint");
    app.add_option("--wa", cfg.wa, "W support lower endpoint");
    app.add_option("--wb", cfg.wb, "W support upper endpoint");
    app.add_option("--ga", cfg.ga, "g support lower endpoint");
    app.add_option("--gb", cfg.gb, "g support upper endpoint");
    app.add_option("--x", ladder_str, "comma-separated X ladder, e.g. 500,1000,2000");
    app.add_option("--abs-tol", cfg.abs_tol, "1D quadrature absolute tolerance");
    app.add_option("--rel-tol", cfg.rel_tol, "1D quadrature relative tolerance");
    app.add_option("--abs-tol-2d", cfg.abs_tol_2d, "2D quadrature absolute tolerance");
    app.add_option("--tmax", cfg.t_max, "spectral t-integral truncation");
    app.add_option("--kmax", cfg.k_max, "spectral k-sum truncation (even)");
    app.add_option("--threads", cfg.threads, "worker thread count")
        ->envname("BESSELTRACE_THREADS");
    app.add_option("-o,--output", cfg.output_path, "output path prefix");
    app.add_option("--format", cfg.format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--timings", cfg.timings, "record wall-clock seconds in reports");
    app.add_flag("--fast", cfg.fast, "reduced-scale identity ranges");

    std::map<std::string, Command> names{
        {"verify-arith", Command::verify_arith},
        {"verify-special", Command::verify_special},
        {"verify-convolution", Command::verify_convolution},
        {"run-limit", Command::run_limit},
        {"run-a0", Command::run_a0},
        {"sears", Command::sears},
        {"pv", Command::pv},
        {"watson", Command::watson},
        {"all", Command::all},
    };
    for (auto& [name, cmd] : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->parse_complete_callback([&cfg, cmd = cmd] { cfg.command = cmd; });
    }
    app.require_subcommand(1);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        msg << e.what();
        if (e.get_exit_code() == 0) {
            // --help
            std::cout << app.help() << std::endl;
            throw UsageError("help requested");
        }
        throw UsageError(msg.str());
    }

    if (!ladder_str.empty()) cfg.ladder = detail::parse_ladder(ladder_str);
    if (cfg.threads < 1) throw invalid_value_error("--threads must be >= 1");
    if (!(cfg.va > 0 && cfg.vb > cfg.va)) throw invalid_value_error("--va/--vb: need 0 < va < vb");
    if (!(cfg.wa > 0 && cfg.wb > cfg.wa)) throw invalid_value_error("--wa/--wb: need 0 < wa < wb");
    if (!(cfg.ga > 0 && cfg.gb > cfg.ga)) throw invalid_value_error("--ga/--gb: need 0 < ga < gb");
    if (cfg.l < 1 || cfg.lp < 1) throw invalid_value_error("--l/--lp must be >= 1");
    if (cfg.k_max < 2 || cfg.k_max % 2 != 0)
        throw invalid_value_error("--kmax must be a positive even integer");
    if (cfg.t_max <= 0) throw invalid_value_error("--tmax must be > 0");
    if (cfg.abs_tol <= 0 || cfg.rel_tol <= 0 || cfg.abs_tol_2d <= 0)
        throw invalid_value_error("tolerances must be > 0");
    for (double x : cfg.ladder)
        if (x < 100.0) throw invalid_value_error("--x entries must be >= 100");
    return cfg;
}

namespace detail {

struct Outcome {
    bool any_fail = false;
    bool any_nonconverged = false;
};

inline experiments::RunOptions options_from(const RunConfig& cfg) {
    experiments::RunOptions o;
    o.threads = cfg.threads;
    o.t_max = cfg.t_max;
    o.k_max = cfg.k_max;
    o.spec_1d = {cfg.abs_tol, cfg.rel_tol, 30, 1'000'000};
    o.spec_2d = {cfg.abs_tol_2d, cfg.rel_tol, 34, 20'000'000};
    o.timings = cfg.timings;
    return o;
}

inline void emit_identity(const RunConfig& cfg, const std::string& tag,
                          const experiments::IdentityReport& rep, Outcome& oc) {
    if (cfg.format == "csv")
        write_file(cfg.output_path + "-" + tag + ".csv", identity_csv(rep));
    else
        write_file(cfg.output_path + "-" + tag + ".json", identity_json(rep).dump(2) + "\n");
    for (const auto& r : rep.rows) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.group << "/" << r.name
                  << "  err=" << r.abs_err << " tol=" << r.tol << "\n";
        if (!r.pass) oc.any_fail = true;
    }
}

inline void emit_experiment(const RunConfig& cfg, const std::string& tag,
                            const experiments::ExperimentReport& rep, Outcome& oc) {
    if (cfg.format == "csv")
        write_file(cfg.output_path + "-" + tag + ".csv", experiment_csv(rep));
    else
        write_file(cfg.output_path + "-" + tag + ".json",
                   experiment_json(rep).dump(2) + "\n");
    std::cout << rep.name << ": " << rep.rows.size()
              << " rows, winning variant = " << rep.winning_variant << "\n";
    if (!rep.all_converged) oc.any_nonconverged = true;
}

inline experiments::IdentityReport suite_for(const RunConfig& cfg,
                                             const std::string& group) {
    experiments::SuiteOptions so;
    so.fast = cfg.fast;
    so.group_filter = group;
    so.threads = cfg.threads;
    return experiments::verify_identities_suite(so);
}

} // namespace detail

inline int run_command(const RunConfig& cfg) {
    using namespace experiments;
    detail::Outcome oc;
    transforms::BumpFunction V = transforms::make_bump(cfg.va, cfg.vb);
    transforms::BumpFunction W = transforms::make_bump(cfg.wa, cfg.wb);
    transforms::BumpFunction g =
        transforms::normalize_weight(transforms::make_bump(cfg.ga, cfg.gb));
    RunOptions opts = detail::options_from(cfg);
    XLadder ladder{cfg.ladder};

    auto do_limit = [&] {
        arith::KloostermanCache cache;
        emit_experiment(cfg, "run-limit", run_limit(cfg.l, cfg.lp, V, W, g, ladder, opts, cache),
                        oc);
    };
    auto do_a0 = [&] {
        emit_experiment(cfg, "run-a0", run_a0(cfg.l, cfg.lp, V, W, g, ladder, opts), oc);
    };
    auto do_sears = [&] {
        transforms::TransformTable tab =
            transforms::build_transform_table(V, cfg.t_max, cfg.k_max, opts.spec_1d);
        IdentityReport rep;
        double scale = 0.0;
        for (int i = 0; i < 20; ++i) {
            double x = V.a + (V.b - V.a) * (i + 0.5) / 20.0;
            scale = std::max(scale, std::abs(V(x)));
        }
        for (int i = 0; i < 20; ++i) {
            double x = V.a + (V.b - V.a) * (i + 0.5) / 20.0;
            double rec = transforms::sears_reconstruct(tab, x);
            IdentityRow row;
            row.group = "sears";
            row.name = "x=" + g17(x);
            row.lhs = rec;
            row.rhs = V(x);
            row.abs_err = std::abs(rec - V(x));
            row.tol = 1e-3 * scale;
            row.pass = row.abs_err <= row.tol;
            rep.rows.push_back(row);
        }
        detail::emit_identity(cfg, "sears", rep, oc);
    };
    auto do_pv = [&] {
        PvReport pv = verify_pv(V, {0.0, 14.0, -14.0}, opts.spec_1d);
        IdentityReport rep;
        for (const auto& r : pv.rows) {
            IdentityRow row;
            row.group = "pv";
            row.name = "k=" + g17(r.k);
            row.lhs = r.pv.imag();
            row.rhs = r.reference.imag();
            row.abs_err = r.abs_err;
            row.tol = r.k == 0.0 ? 1e-8 : 0.05 * std::numbers::pi * std::abs(pv.h0);
            row.pass = r.abs_err <= row.tol && r.converged;
            rep.rows.push_back(row);
        }
        detail::emit_identity(cfg, "pv", rep, oc);
    };
    auto do_watson = [&] {
        IdentityReport rep;
        auto push = [&](const std::string& name, std::complex<double> a,
                        std::complex<double> b, double tol) {
            IdentityRow row;
            row.group = "watson";
            row.name = name;
            row.lhs = a.real();
            row.rhs = b.real();
            row.abs_err = std::abs(a - b);
            row.tol = tol;
            row.pass = row.abs_err <= tol;
            rep.rows.push_back(row);
        };
        for (auto [Z, y] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}}) {
            WatsonResult w = verify_watson(special::Order::integer(1), Z, y);
            std::string base = "nu1-Z" + g17(Z) + "-y" + g17(y);
            push(base + "-full", w.full_contour, w.full_product, 1e-6);
            push(base + "-upper", w.upper_contour, w.upper_product, 1e-6);
            push(base + "-lower", w.lower_contour, w.lower_product, 1e-6);
        }
        WatsonResult w = verify_watson(special::Order::imaginary(0.5), 1.0, 1.0);
        push("nu-imag-full", w.full_contour, w.full_product, 1e-4);
        push("nu-imag-upper", w.upper_contour, w.upper_product, 1e-4);
        push("nu-imag-lower", w.lower_contour, w.lower_product, 1e-4);
        detail::emit_identity(cfg, "watson", rep, oc);
    };

    switch (cfg.command) {
        case Command::verify_arith:
            detail::emit_identity(cfg, "arith", detail::suite_for(cfg, "arith"), oc);
            break;
        case Command::verify_special:
            detail::emit_identity(cfg, "special", detail::suite_for(cfg, "special"), oc);
            break;
        case Command::verify_convolution:
            detail::emit_identity(cfg, "convolution", detail::suite_for(cfg, "convolution"), oc);
            break;
        case Command::run_limit:
            do_limit();
            break;
        case Command::run_a0:
            do_a0();
            break;
        case Command::sears:
            do_sears();
            break;
        case Command::pv:
            do_pv();
            break;
        case Command::watson:
            do_watson();
            break;
        case Command::all: {
            experiments::SuiteOptions so;
            so.fast = cfg.fast;
            so.threads = cfg.threads;
            detail::emit_identity(cfg, "identities", verify_identities_suite(so), oc);
            do_limit();
            do_a0();
            do_sears();
            do_pv();
            do_watson();
            break;
        }
    }
    if (oc.any_fail) return 1;
    if (oc.any_nonconverged) return 3;
    return 0;
}

inline int main_entry(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        RunConfig cfg = parse_args(args);
        return run_command(cfg);
    } catch (const UsageError& e) {
        if (std::string(e.what()) == "help requested") return 0;
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_value_error& e) {
        std::cerr << "invalid value: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace besseltrace::cli
