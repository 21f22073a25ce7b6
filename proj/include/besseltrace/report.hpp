#pragma once

// Serialization of experiment and identity reports: CSV (17 significant
// digits, '.' decimal separator, '\n' line endings) and a JSON mirror.

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "besseltrace/errors.hpp"
#include "besseltrace/experiments.hpp"

namespace besseltrace::cli {

inline std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string experiment_csv(const experiments::ExperimentReport& rep) {
    std::string out = "X,lhs,rhs_a,rhs_b,rhs_c,err_a,err_b,err_c,seconds,evals\n";
    for (const auto& r : rep.rows) {
        out += g17(r.X) + ',' + g17(r.lhs) + ',' + g17(r.rhs_a) + ',' + g17(r.rhs_b) +
               ',' + g17(r.rhs_c) + ',' + g17(r.err_a) + ',' + g17(r.err_b) + ',' +
               g17(r.err_c) + ',' + g17(r.seconds) + ',' + std::to_string(r.evals) + '\n';
    }
    return out;
}

inline nlohmann::json experiment_json(const experiments::ExperimentReport& rep) {
    nlohmann::json meta{
        {"name", rep.name},
        {"l", rep.l},
        {"lp", rep.lp},
        {"bump_V", {rep.va, rep.vb}},
        {"bump_W", {rep.wa, rep.wb}},
        {"bump_g", {rep.ga, rep.gb}},
        {"t_max", rep.t_max},
        {"k_max", rep.k_max},
        {"threads", rep.threads},
        {"rel_floor", rep.rel_floor},
        {"winning_variant", rep.winning_variant},
        {"rhs_tail_bound", rep.rhs_tail_bound},
        {"fitted_decay_exponent", rep.fitted_decay_exponent},
        {"all_converged", rep.all_converged},
        {"notes", rep.notes},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"X", r.X},
                        {"lhs", r.lhs},
                        {"rhs", {{"a", r.rhs_a}, {"b", r.rhs_b}, {"c", r.rhs_c}}},
                        {"err", {{"a", r.err_a}, {"b", r.err_b}, {"c", r.err_c}}},
                        {"seconds", r.seconds},
                        {"evals", r.evals},
                        {"converged", r.converged}});
    }
    return nlohmann::json{{"meta", meta}, {"rows", rows}};
}

inline std::string identity_csv(const experiments::IdentityReport& rep) {
    std::string out = "group,name,lhs,rhs,abs_err,tol,pass\n";
    for (const auto& r : rep.rows) {
        out += r.group + ',' + r.name + ',' + g17(r.lhs) + ',' + g17(r.rhs) + ',' +
               g17(r.abs_err) + ',' + g17(r.tol) + ',' + (r.pass ? "1" : "0") + '\n';
    }
    return out;
}

inline nlohmann::json identity_json(const experiments::IdentityReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"group", r.group},
                        {"name", r.name},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"abs_err", r.abs_err},
                        {"tol", r.tol},
                        {"pass", r.pass}});
    }
    return nlohmann::json{{"rows", rows}, {"all_pass", rep.all_pass()}};
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw io_error("write failed: " + path);
}

} // namespace besseltrace::cli
