// Copyright 2026 The qpirsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end: protocol runs, audits, capacity tables, oracle checks and
// generator export. Machine output is JSON; exit status 0 means every run was
// correct and every audit passed.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "qpirsim/qoracle.hpp"
#include "qpirsim/qpir.hpp"

using namespace qpirsim;
using gf::Field;
using gf::Vec;
using linalg::Mat;
using pir::Json;
using pir::ProtocolReport;
using pir::QueryModel;

namespace {

const std::vector<std::string> kSchemes = {"fig1-toy", "brm-pir",  "mds-qubit", "lrc-qpir",
                                           "grs-qpir", "csa-qpir", "brm-qpir"};

// Options shared by `run` and `audit`. Unset sizes take per-scheme defaults.
struct SchemeArgs {
    std::string scheme;
    size_t theta = 1;
    std::optional<size_t> n, k, t, x, l, lambda, delta, files;
    std::optional<long> q;
    int u = 1, b = 1, r = 1, r_query = 0;
    std::vector<size_t> byzantine, unresponsive, colluding;
    bool symmetric = false;
    std::string realization = "oracle";

    size_t m_files() const { return files.value_or(scheme == "brm-qpir" || scheme == "fig1-toy" ? 3 : 2); }
};

void add_scheme_options(CLI::App* cmd, SchemeArgs& a) {
    cmd->add_option("--scheme", a.scheme, "Protocol")->required()->check(CLI::IsMember(kSchemes));
    cmd->add_option("--theta", a.theta, "Requested file, 1-based")->check(CLI::PositiveNumber);
    cmd->add_option("--files", a.files, "Number of files M");
    cmd->add_option("--n", a.n, "Servers");
    cmd->add_option("--k", a.k, "Storage code dimension");
    cmd->add_option("--t", a.t, "Collusion threshold");
    cmd->add_option("--x", a.x, "Security threshold (csa-qpir)");
    cmd->add_option("--l", a.l, "Stripes per instance (csa-qpir)");
    cmd->add_option("--q", a.q, "Field order");
    cmd->add_option("--lambda", a.lambda, "Locality (lrc-qpir)");
    cmd->add_option("--delta", a.delta, "Local distance (lrc-qpir)");
    cmd->add_option("--u", a.u, "Unresponsive budget (brm-pir)");
    cmd->add_option("--b", a.b, "Byzantine budget (brm-pir)");
    cmd->add_option("--r", a.r, "Storage RM order (brm-pir)");
    cmd->add_option("--r-query", a.r_query, "Query RM order (brm-pir)");
    cmd->add_option("--byzantine", a.byzantine, "Byzantine servers, 1-based (brm-pir)")->delimiter(',');
    cmd->add_option("--unresponsive", a.unresponsive, "Unresponsive servers, 1-based (brm-pir)")->delimiter(',');
    cmd->add_option("--colluding", a.colluding, "Colluding servers audited in the report, 1-based (brm-pir)")
        ->delimiter(',');
    cmd->add_flag("--symmetric", a.symmetric, "Symmetric box that emits only desired symbols (csa-qpir)");
    cmd->add_option("--realization", a.realization, "Quantum layer for mds-qubit at the 4-server example")
        ->check(CLI::IsMember({"oracle", "sumbox"}));
}

std::vector<size_t> zero_based(const std::vector<size_t>& v) {
    std::vector<size_t> out;
    for (size_t s : v) {
        if (s == 0) fail(Errc::OutOfRange, "server indices are 1-based");
        out.push_back(s - 1);
    }
    return out;
}

long field_order(const SchemeArgs& a, long fallback) { return a.q.value_or(fallback); }

codes::LrcCode lrc_of(const SchemeArgs& a) {
    return codes::lrc_optimal(a.n.value_or(6), a.k.value_or(4), a.lambda.value_or(2), a.delta.value_or(2),
                              Field::of_order(field_order(a, 4)));
}

qpir::GrsScheme grs_of(const SchemeArgs& a) {
    return qpir::grs_scheme(a.n.value_or(6), a.k.value_or(3), a.t.value_or(2), field_order(a, 7));
}

qpir::CsaScheme csa_of(const SchemeArgs& a) {
    const size_t n = a.n.value_or(4), x = a.x.value_or(1), t = a.t.value_or(1);
    if (x + t >= n) fail(Errc::ParameterInfeasible, "need X + T < N");
    const size_t l = a.l.value_or(std::min(n - x - t, n / 2));
    return qpir::csa_scheme(n, x, t, l, field_order(a, 7), a.symmetric);
}

pir::BrmParams brm_of(const SchemeArgs& a) {
    return pir::brm_params(static_cast<int>(a.t.value_or(1)), a.u, a.b, a.r, a.r_query);
}

bool general_mds(const SchemeArgs& a) { return a.n || a.k; }

ProtocolReport run_once(const SchemeArgs& a, uint64_t seed) {
    Rng rng(seed);
    const size_t theta = a.theta - 1, m = a.m_files();
    if (a.scheme == "fig1-toy") return pir::toy_run(theta, rng);
    if (a.scheme == "brm-pir") {
        pir::Adversary adv{zero_based(a.byzantine), zero_based(a.unresponsive), zero_based(a.colluding)};
        return pir::brm_robust_run(brm_of(a), theta, adv, rng, m);
    }
    if (a.scheme == "mds-qubit") {
        if (general_mds(a)) return qpir::mds_qubit_sumbox_run(a.n.value_or(4), a.k.value_or(2), theta, rng, m);
        const Mat files = rng.mat(Field::make(2, 2), m, 2);
        return qpir::mds_qubit_run(theta, rng, files, a.realization == "oracle");
    }
    if (a.scheme == "lrc-qpir") return qpir::lrc_qpir_run(lrc_of(a), theta, rng, m);
    if (a.scheme == "grs-qpir") return qpir::grs_qpir_run(grs_of(a), theta, rng, m);
    if (a.scheme == "csa-qpir") return qpir::csa_qpir_execute(csa_of(a), theta, rng, m).report;
    return qpir::brm_qpir_run(theta, rng, m);
}

// Query model of a scheme together with its design collusion threshold.
std::pair<QueryModel, size_t> query_model_of(const SchemeArgs& a) {
    const size_t m = a.m_files();
    if (a.scheme == "fig1-toy") return {pir::toy_query_model(), 1};
    if (a.scheme == "brm-pir") {
        const auto p = brm_of(a);
        return {pir::brm_query_model(p, m), static_cast<size_t>(p.t)};
    }
    if (a.scheme == "mds-qubit") {
        const auto c = general_mds(a) ? qpir::mds_qubit_code(a.n.value_or(4), a.k.value_or(2)) : qpir::example11_code();
        return {qpir::mds_qubit_query_model(c, m), c.n() - c.k()};
    }
    if (a.scheme == "lrc-qpir") {
        const auto lrc = lrc_of(a);
        return {qpir::lrc_query_model(lrc, m), lrc.delta - 1};
    }
    if (a.scheme == "grs-qpir") {
        const auto s = grs_of(a);
        return {qpir::grs_query_model(s, m), s.t};
    }
    if (a.scheme == "csa-qpir") {
        const auto s = csa_of(a);
        return {qpir::csa_query_model(s, m), s.t};
    }
    return {qpir::brm_qpir_query_model(m), 3};
}

void emit(const Json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) fail(Errc::BadParameters, "cannot write " + path);
    out << j.dump(2) << '\n';
}

Json error_json(const Error& e) { return {{"error", errc_name(e.code())}, {"message", e.what()}}; }

// ---------------------------------------------------------------- run

struct RunArgs {
    SchemeArgs scheme;
    uint64_t seed = 1;
    size_t trials = 1;
    bool audit = false;
    std::string out;
};

// One trial: the report, with the design-threshold audit attached if asked.
Json trial(const RunArgs& ra, uint64_t seed, bool& ok) {
    try {
        ProtocolReport rep = run_once(ra.scheme, seed);
        if (ra.audit) {
            auto [model, t] = query_model_of(ra.scheme);
            rep.audits.push_back(pir::collusion_audit(model, t, {0, 1}, pir::AuditMode::Exhaustive, seed));
        }
        ok = rep.correct && rep.audits_pass();
        return rep.to_json();
    } catch (const Error& e) {
        ok = false;
        return error_json(e);
    }
}

int cmd_run(const RunArgs& ra) {
    if (ra.trials <= 1) {
        bool ok = false;
        const Json j = trial(ra, ra.seed, ok);
        emit(j, ra.out);
        return ok ? 0 : (j.contains("error") ? 2 : 1);
    }
    // Trials use seeds seed, seed + 1, ...; workers pull indices, results land in order.
    std::vector<Json> reports(ra.trials);
    std::vector<char> ok(ra.trials, 0);
    std::atomic<size_t> next{0};
    const size_t workers = std::min<size_t>(ra.trials, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next++; i < ra.trials; i = next++) {
                bool pass = false;
                reports[i] = trial(ra, ra.seed + i, pass);
                ok[i] = pass;
            }
        });
    }
    for (auto& th : pool) th.join();
    const size_t passed = static_cast<size_t>(std::count(ok.begin(), ok.end(), 1));
    Json j = {{"scheme", ra.scheme.scheme}, {"trials", ra.trials}, {"passed", passed}, {"reports", reports}};
    emit(j, ra.out);
    return passed == ra.trials ? 0 : 1;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
    SchemeArgs scheme;
    std::optional<size_t> t, x;  // audited coalition sizes
    std::optional<size_t> design_t, design_x;
    std::string mode = "exhaustive";
    uint64_t seed = 1;
    std::string out;
};

int cmd_audit(AuditArgs aa) {
    auto [model, design] = query_model_of(aa.scheme);
    const size_t t = aa.t.value_or(design);
    Json audits = Json::array();
    bool passed = true;
    auto add = [&](const pir::AuditResult& r) {
        audits.push_back(r.to_json());
        passed = passed && r.passed;
    };
    add(pir::collusion_audit(model, t, {0, 1}, pir::parse_mode(aa.mode), aa.seed));
    if (aa.scheme.scheme == "csa-qpir") {
        const auto s = csa_of(aa.scheme);
        Rng rng(aa.seed);
        const auto run = qpir::csa_qpir_execute(s, 0, rng, aa.scheme.m_files());
        for (const auto& st : run.storage) add(pir::security_audit_all(st, aa.x.value_or(s.x_sec)));
    }
    emit({{"scheme", aa.scheme.scheme}, {"t", t}, {"design_t", design}, {"passed", passed}, {"audits", audits}},
         aa.out);
    return passed ? 0 : 1;
}

// ---------------------------------------------------------------- verify-oracle

int cmd_verify_oracle(const std::string& out) {
    Json checks = Json::array();
    bool all = true;
    for (const auto& c : qoracle::self_check()) {
        checks.push_back({{"name", c.name}, {"matched", c.matched}, {"total", c.total}, {"passed", c.passed()}});
        all = all && c.passed();
    }
    emit({{"passed", all}, {"checks", checks}}, out);
    return all ? 0 : 1;
}

// ---------------------------------------------------------------- capacity-table

struct TableArgs {
    std::vector<long> n = {3, 4, 5, 6, 8}, k = {1, 2, 3}, t = {1, 2, 3};
    std::optional<long> files;
    std::string format = "text";
    std::string csv;
};

int cmd_capacity_table(const TableArgs& ta) {
    const auto rows = qpir::capacity_table(ta.n, ta.k, ta.t, ta.files);
    if (ta.format == "csv")
        std::cout << qpir::capacity_table_csv(rows);
    else
        std::cout << qpir::capacity_table_text(rows);
    if (!ta.csv.empty()) {
        std::ofstream f(ta.csv);
        if (!f) fail(Errc::BadParameters, "cannot write " + ta.csv);
        f << qpir::capacity_table_csv(rows);
    }
    return 0;
}

// ---------------------------------------------------------------- export-code

int cmd_export_code(const std::string& spec, bool dual, const std::string& out) {
    codes::LinearCode c = codes::parse_code(spec);
    if (dual) c = codes::dual(c);
    const std::string text = c.generator().to_text();
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out);
    if (!f) fail(Errc::BadParameters, "cannot write " + out);
    f << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for classical and quantum private information retrieval schemes"};
    app.set_config("--config", "", "key=value file; [run] / [audit] sections or run.key=value, flags override");
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Run a protocol and print its JSON report");
    add_scheme_options(run, ra.scheme);
    run->add_option("--seed", ra.seed, "RNG seed")->envname("QPIRSIM_SEED");
    run->add_option("--trials", ra.trials, "Independent runs on consecutive seeds, spread over threads");
    run->add_flag("--audit", ra.audit, "Attach an exhaustive privacy audit at the design threshold");
    run->add_option("--out", ra.out, "Write the report here instead of stdout");

    AuditArgs aa;
    auto* audit = app.add_subcommand("audit", "Privacy audit (and X-security for csa-qpir) of a scheme");
    add_scheme_options(audit, aa.scheme);
    audit->get_option("--t")->description("Coalition size to audit; defaults to the design threshold");
    audit->get_option("--x")->description("Coalition size for the security audit (csa-qpir)");
    audit->add_option("--design-t", aa.design_t, "Scheme collusion threshold when it differs from --t");
    audit->add_option("--design-x", aa.design_x, "Scheme security threshold when it differs from --x");
    audit->add_option("--mode", aa.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    audit->add_option("--seed", aa.seed, "RNG seed")->envname("QPIRSIM_SEED");
    audit->add_option("--out", aa.out, "Write the result here instead of stdout");

    std::string oracle_out;
    auto* verify = app.add_subcommand("verify-oracle", "Check the circuit simulator against box semantics");
    verify->add_option("--out", oracle_out, "Write the result here instead of stdout");

    TableArgs ta;
    auto* table = app.add_subcommand("capacity-table", "Classical and quantum capacities over an (N, K, T) grid");
    table->add_option("--n", ta.n, "Server counts")->delimiter(',');
    table->add_option("--k", ta.k, "Code dimensions")->delimiter(',');
    table->add_option("--t", ta.t, "Collusion thresholds")->delimiter(',');
    table->add_option("--files", ta.files, "Also print finite-M PIR capacity");
    table->add_option("--format", ta.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    table->add_option("--csv", ta.csv, "Also write CSV to this path");

    std::string spec, code_out;
    bool dual = false;
    auto* exp = app.add_subcommand("export-code", "Print a generator matrix in matrix text format");
    exp->add_option("--code", spec, "Code spec, e.g. grs:6,3,7 or brm:1,4")->required();
    exp->add_flag("--dual", dual, "Export the dual code instead");
    exp->add_option("--out", code_out, "Write here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(ra);
        if (*audit) {
            // --t/--x name the audited coalition; the scheme itself is built
            // from --design-t/--design-x or its defaults.
            aa.t = aa.scheme.t;
            aa.x = aa.scheme.x;
            aa.scheme.t = aa.design_t;
            aa.scheme.x = aa.design_x;
            return cmd_audit(aa);
        }
        if (*verify) return cmd_verify_oracle(oracle_out);
        if (*table) return cmd_capacity_table(ta);
        if (*exp) return cmd_export_code(spec, dual, code_out);
    } catch (const Error& e) {
        std::cout << error_json(e).dump(2) << '\n';
        return 2;
    }
    return 0;
}
