// Licensed under the Apache 2.0 license. See LICENSE in the project root.
//
// Command-line front end over the library. Exit codes follow the shared
// convention: 0 every condition passed, 1 at least one failed, 2 nothing
// failed but something stayed inconclusive, 64 malformed input.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "emax/dist.hpp"
#include "emax/gif.hpp"
#include "emax/hoeffding.hpp"
#include "emax/quad.hpp"
#include "emax/ranges.hpp"
#include "emax/report.hpp"
#include "emax/seqcheck.hpp"
#include "emax/sequence.hpp"

namespace {

using nlohmann::json;
using namespace emax;

constexpr int kUsageError = 64;

struct IoOptions {
    std::string format = "json";
    std::string out;
};

void add_io_flags(CLI::App* cmd, IoOptions& io) {
    cmd->add_option("--format", io.format, "Output format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", io.out, "Write to this file instead of stdout");
}

void emit(const IoOptions& io, const std::string& text) {
    if (io.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(io.out, std::ios::binary);
    if (!f)
        throw std::invalid_argument("cannot open output file: " + io.out);
    f << text;
}

// CSV cells for doubles carry full round-trip precision.
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct SequenceInput {
    std::string path;
    std::string inline_json;
    bool exact = false;
    bool extended = false;
};

void add_sequence_flags(CLI::App* cmd, SequenceInput& in) {
    cmd->add_option("--input", in.path, "Sequence JSON file; \"-\" reads stdin");
    cmd->add_option("--json", in.inline_json, "Inline sequence JSON");
    cmd->add_flag("--exact", in.exact, "Require exact rational arithmetic");
    cmd->add_flag("--extended", in.extended, "Use 70-digit float arithmetic");
}

Sequence load_sequence(const SequenceInput& in) {
    std::string text;
    if (!in.inline_json.empty()) {
        text = in.inline_json;
    } else if (in.path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else if (!in.path.empty()) {
        std::ifstream f(in.path, std::ios::binary);
        if (!f)
            throw std::invalid_argument("cannot open input file: " + in.path);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    } else {
        throw std::invalid_argument("a sequence is required: pass --input or --json");
    }
    json j = json::parse(text);
    // A bare array is shorthand for {"values": [...]}.
    if (j.is_array()) {
        json wrapped;
        wrapped["values"] = std::move(j);
        j = std::move(wrapped);
    }
    if (in.exact)
        return Sequence::from_json(j, ArithmeticMode::Exact);
    if (in.extended)
        return Sequence::from_json(j, ArithmeticMode::Extended);
    return Sequence::from_json(j);
}

std::string report_csv(const CheckReport& r) {
    std::string s = "condition,verdict\n";
    for (const auto& [cond, v] : r.verdicts)
        s += cond + "," + to_string(v) + "\n";
    return s;
}

int finish_report(const CheckReport& rep, const IoOptions& io) {
    if (io.format == "csv")
        emit(io, report_csv(rep));
    else
        emit(io, rep.to_json().dump(2) + "\n");
    return exit_code(rep);
}

std::string tail_kind_name(gif::TailDecay::Kind k) {
    switch (k) {
    case gif::TailDecay::Kind::Exponential: return "exponential";
    case gif::TailDecay::Kind::Power: return "power";
    case gif::TailDecay::Kind::Compact: return "compact";
    }
    return "exponential";
}

gif::IntegralForm load_table_form(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::invalid_argument("cannot open table file: " + path);
    json j = json::parse(f);
    gif::TailDecay tail;
    if (j.contains("tail")) {
        const json& t = j.at("tail");
        const std::string kind = t.value("kind", "exponential");
        if (kind == "exponential")
            tail.kind = gif::TailDecay::Kind::Exponential;
        else if (kind == "power")
            tail.kind = gif::TailDecay::Kind::Power;
        else if (kind == "compact")
            tail.kind = gif::TailDecay::Kind::Compact;
        else
            throw std::invalid_argument("unknown tail kind: " + kind);
        tail.param = t.value("param", 1.0);
    }
    return gif::form_from_table(j.at("ys").get<std::vector<double>>(),
                                j.at("h1s").get<std::vector<double>>(),
                                j.value("sing_exponent", 0.0), tail);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> ys;
    for (int i = 0; i < n; ++i)
        ys.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)));
    return ys;
}

int run_check(const SequenceInput& in, int depth, bool ers, const IoOptions& io) {
    Sequence seq = load_sequence(in);
    seqcheck::CheckConfig cfg;
    cfg.max_depth = depth;
    CheckReport rep;
    if (ers) {
        rep = seqcheck::check_ers(seq, cfg);
    } else {
        rep = seqcheck::check_ems(seq, cfg);
        absorb_report(rep, seqcheck::check_hausdorff(seqcheck::kadane_moments(seq), cfg),
                      "moments");
    }
    return finish_report(rep, io);
}

int run_moments(const std::string& id, const std::vector<double>& params, int kmax,
                const dist::Tolerances& tol, const IoOptions& io) {
    auto d = dist::catalog(id, params);
    Sequence mu = dist::ems_sequence(d, kmax, tol);
    Sequence mn = dist::emin_sequence(d, kmax, tol);
    Sequence rho = dist::ers_sequence(d, kmax, tol);
    if (io.format == "csv") {
        std::string s = "k,mu_k,min_k,rho_k\n";
        for (int k = 1; k <= kmax; ++k) {
            s += std::to_string(k) + "," + fmt(mu.at(k)) + "," + fmt(mn.at(k)) + "," +
                 fmt(rho.at(k)) + "\n";
        }
        emit(io, s);
    } else {
        json rows = json::array();
        for (int k = 1; k <= kmax; ++k) {
            rows.push_back(
                {{"k", k}, {"mu_k", mu.at(k)}, {"min_k", mn.at(k)}, {"rho_k", rho.at(k)}});
        }
        json out = {{"distribution", d.label}, {"rows", rows}};
        emit(io, out.dump(2) + "\n");
    }
    return 0;
}

int run_hoeffding(const SequenceInput& in, std::vector<int> levels, int kmax,
                  const IoOptions& io) {
    Sequence seq = load_sequence(in);
    if (levels.empty()) {
        for (int n : {10, 20, 50, 100, 200}) {
            if (n <= seq.size())
                levels.push_back(n);
        }
        if (levels.empty())
            levels.push_back(seq.size());
    }
    for (int n : levels) {
        if (n < 1 || n > seq.size())
            throw std::invalid_argument("level " + std::to_string(n) +
                                        " outside the sequence length");
    }

    CheckReport rep;
    rep.truncation.requested = levels.back();
    rep.truncation.used = levels.back();
    rep.truncation.mode = to_string(seq.mode());

    std::vector<hoeffding::HoeffdingTable> tables;
    Verdict increasing = Verdict::Pass;
    bool any_precision_loss = false;
    for (int n : levels) {
        tables.push_back(hoeffding::beta_table(seq, n));
        any_precision_loss = any_precision_loss || tables.back().precision_loss;
        if (!hoeffding::is_valid_distribution(tables.back())) {
            increasing = Verdict::Fail;
            rep.witnesses.push_back({"strictly-increasing", -1, n, 0.0,
                                     "support points do not strictly increase at n = " +
                                         std::to_string(n)});
        }
    }
    rep.verdicts["strictly-increasing"] = increasing;
    rep.diagnostics["precision_loss"] = any_precision_loss;

    json diag;
    if (increasing == Verdict::Pass) {
        int k_cap = std::min(kmax, seq.size());
        diag = hoeffding::convergence_diagnostic(seq, levels, k_cap).to_json();
    }

    if (io.format == "csv") {
        std::string s = "n,i,beta,numerator,denominator\n";
        for (const auto& t : tables) {
            for (int i = 1; i <= t.n; ++i) {
                s += std::to_string(t.n) + "," + std::to_string(i) + "," + fmt(t.betas.at(i));
                if (t.betas.mode() == ArithmeticMode::Exact) {
                    const Rational& q = t.betas.exact_at(i);
                    s += "," + q.get_num().get_str() + "," + q.get_den().get_str();
                } else {
                    s += ",,";
                }
                s += "\n";
            }
        }
        emit(io, s);
    } else {
        json jt = json::array();
        for (const auto& t : tables) {
            jt.push_back({{"n", t.n},
                          {"precision_loss", t.precision_loss},
                          {"betas", t.betas.to_json()}});
        }
        json out = {{"report", rep.to_json()}, {"tables", jt}};
        if (!diag.is_null())
            out["diagnostic"] = diag;
        emit(io, out.dump(2) + "\n");
    }
    return exit_code(rep);
}

int run_reconstruct(const std::string& form_id, const std::vector<double>& params,
                    const std::string& table_path, double mu1, int grid, const IoOptions& io) {
    if (form_id.empty() == table_path.empty())
        throw std::invalid_argument("pass exactly one of --form or --table");
    gif::IntegralForm form =
        table_path.empty() ? gif::form_by_id(form_id, params) : load_table_form(table_path);
    auto d = gif::reconstruct_quantile(form, mu1);

    double worst = 0.0;
    for (int k = 2; k <= 8; ++k) {
        double want = mu1 + gif::evaluate_g(form, k) - form.g_at_1;
        worst = std::max(worst, std::fabs(dist::expected_max(d, k) - want));
    }

    if (io.format == "csv") {
        std::string s = "u,G\n";
        for (int i = 1; i <= grid; ++i) {
            dist::UPoint u{static_cast<double>(i) / (grid + 1),
                           static_cast<double>(grid + 1 - i) / (grid + 1)};
            s += fmt(u.from0) + "," + fmt(dist::quantile(d, u)) + "\n";
        }
        emit(io, s);
        std::fprintf(stderr, "round-trip max |mu_k gap| = %.3e over k = 2..8\n", worst);
    } else {
        json rows = json::array();
        for (int i = 1; i <= grid; ++i) {
            dist::UPoint u{static_cast<double>(i) / (grid + 1),
                           static_cast<double>(grid + 1 - i) / (grid + 1)};
            rows.push_back({{"u", u.from0}, {"G", dist::quantile(d, u)}});
        }
        json out = {{"form", form.label},
                    {"mu1", mu1},
                    {"rows", rows},
                    {"round_trip", {{"k_max", 8}, {"max_abs_gap", worst}}}};
        emit(io, out.dump(2) + "\n");
    }
    return 0;
}

int run_forward_h1(const std::string& id, const std::vector<double>& params, int grid,
                   const dist::Tolerances& tol, const IoOptions& io) {
    auto d = dist::catalog(id, params);
    auto form = gif::h1_from_distribution(d, tol);
    auto val = gif::validate_form(form);

    std::vector<double> ys = log_grid(1e-4, 40.0, grid);
    if (io.format == "csv") {
        std::string s = "y,h1\n";
        for (double y : ys)
            s += fmt(y) + "," + fmt(form.h1(y)) + "\n";
        emit(io, s);
        std::fprintf(stderr, "%s: sing %.3f, tail %s(%.3f), lambda %.6f, g(1) %.6f, %s\n",
                     form.label.c_str(), form.sing_exponent,
                     tail_kind_name(form.tail.kind).c_str(), form.tail.param, val.lambda,
                     form.g_at_1, to_string(val.verdict).c_str());
    } else {
        json rows = json::array();
        for (double y : ys)
            rows.push_back({{"y", y}, {"h1", form.h1(y)}});
        json out = {{"label", form.label},
                    {"g_at_1", form.g_at_1},
                    {"sing_exponent", form.sing_exponent},
                    {"tail", {{"kind", tail_kind_name(form.tail.kind)}, {"param", form.tail.param}}},
                    {"lambda", val.lambda},
                    {"admissible", to_string(val.verdict)},
                    {"rows", rows}};
        emit(io, out.dump(2) + "\n");
    }
    return val.verdict == Verdict::Pass ? 0 : 1;
}

int run_symmetry(const std::string& form_id, const std::vector<double>& params,
                 const std::string& table_path, int grid, const IoOptions& io) {
    if (form_id.empty() == table_path.empty())
        throw std::invalid_argument("pass exactly one of --form or --table");
    gif::IntegralForm form =
        table_path.empty() ? gif::form_by_id(form_id, params) : load_table_form(table_path);
    std::vector<double> ys;
    if (grid > 0) {
        ys = log_grid(1e-6, 40.0, grid);
        ys.push_back(std::log(2.0));
    }
    return finish_report(ranges::symmetry_check(form, ys), io);
}

int run_compare_ranges(const std::string& id_a, const std::vector<double>& params_a,
                       const std::string& id_b, const std::vector<double>& params_b, int grid,
                       const IoOptions& io) {
    auto a = dist::catalog(id_a, params_a);
    auto b = dist::catalog(id_b, params_b);
    return finish_report(ranges::equal_ranges_check(a, b, grid), io);
}

int run_catalog(const IoOptions& io) {
    if (io.format == "csv") {
        std::string s = "kind,id\n";
        for (const auto& id : dist::catalog_ids())
            s += "distribution," + id + "\n";
        for (const auto& id : gif::form_ids())
            s += "form," + id + "\n";
        emit(io, s);
    } else {
        json out = {{"distributions", dist::catalog_ids()}, {"forms", gif::form_ids()}};
        emit(io, out.dump(2) + "\n");
    }
    return 0;
}

int run_stirling(int smax, const IoOptions& io) {
    if (io.format == "csv") {
        std::string s = "s,m,value\n";
        for (int si = 1; si <= smax; ++si) {
            for (int m = 0; m < si; ++m) {
                s += std::to_string(si) + "," + std::to_string(m) + "," +
                     hoeffding::stirling_sum(si, m).get_str() + "\n";
            }
        }
        emit(io, s);
    } else {
        json rows = json::array();
        for (int si = 1; si <= smax; ++si) {
            for (int m = 0; m < si; ++m) {
                rows.push_back(
                    {{"s", si}, {"m", m}, {"value", hoeffding::stirling_sum(si, m).get_str()}});
            }
        }
        json out = {{"rows", rows}};
        emit(io, out.dump(2) + "\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected-maxima sequence toolkit: sequence checks, distribution "
                 "moments, discrete reconstructions, integral-form analysis"};
    app.require_subcommand(1);
    int rc = 0;

    SequenceInput check_in;
    int check_depth = 0;
    IoOptions check_io;
    auto* check_ems = app.add_subcommand(
        "check-ems", "Decide whether a sequence can be the expected maxima of iid copies");
    add_sequence_flags(check_ems, check_in);
    check_ems->add_option("--depth", check_depth, "Cap on the difference-table depth s + k")
        ->check(CLI::Range(2, 1000000));
    add_io_flags(check_ems, check_io);
    check_ems->callback([&] { rc = run_check(check_in, check_depth, false, check_io); });

    SequenceInput ers_in;
    int ers_depth = 0;
    IoOptions ers_io;
    auto* check_ers = app.add_subcommand(
        "check-ers", "Decide whether a sequence can be the expected ranges of iid copies");
    add_sequence_flags(check_ers, ers_in);
    check_ers->add_option("--depth", ers_depth, "Cap on the difference-table depth s + k")
        ->check(CLI::Range(2, 1000000));
    add_io_flags(check_ers, ers_io);
    check_ers->callback([&] { rc = run_check(ers_in, ers_depth, true, ers_io); });

    std::string mom_dist;
    std::vector<double> mom_params;
    int mom_kmax = 20;
    dist::Tolerances mom_tol;
    IoOptions mom_io;
    auto* moments = app.add_subcommand(
        "moments", "Expected max/min/range table of a catalog distribution");
    moments->add_option("--dist", mom_dist, "Catalog distribution id")->required();
    moments->add_option("--params", mom_params, "Distribution parameters")->delimiter(',');
    moments->add_option("--kmax", mom_kmax, "Largest k (default 20)")
        ->check(CLI::Range(1, 1000));
    moments->add_option("--tol-rel", mom_tol.rel, "Quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    moments->add_option("--tol-abs", mom_tol.abs, "Quadrature absolute tolerance")
        ->check(CLI::PositiveNumber);
    add_io_flags(moments, mom_io);
    moments->callback([&] { rc = run_moments(mom_dist, mom_params, mom_kmax, mom_tol, mom_io); });

    SequenceInput hoef_in;
    std::vector<int> hoef_levels;
    int hoef_level = 0;
    int hoef_kmax = 8;
    IoOptions hoef_io;
    auto* hoef = app.add_subcommand(
        "hoeffding", "Discrete n-point construction: support points and convergence");
    add_sequence_flags(hoef, hoef_in);
    hoef->add_option("--level", hoef_level, "Single table size n")->check(CLI::Range(1, 100000));
    hoef->add_option("--levels", hoef_levels, "Table sizes, e.g. 10,100")->delimiter(',');
    hoef->add_option("--kmax", hoef_kmax, "Largest k in the convergence diagnostic")
        ->check(CLI::Range(1, 1000));
    add_io_flags(hoef, hoef_io);
    hoef->callback([&] {
        std::vector<int> levels = hoef_levels;
        if (hoef_level > 0)
            levels.push_back(hoef_level);
        rc = run_hoeffding(hoef_in, levels, hoef_kmax, hoef_io);
    });

    std::string rec_form;
    std::vector<double> rec_params;
    std::string rec_table;
    double rec_mu1 = 0.0;
    int rec_grid = 99;
    IoOptions rec_io;
    auto* rec = app.add_subcommand(
        "reconstruct", "Quantile of the distribution behind an integral form");
    rec->add_option("--form", rec_form, "Integral form id");
    rec->add_option("--params", rec_params, "Form parameters")->delimiter(',');
    rec->add_option("--table", rec_table, "Tabulated weight JSON file");
    rec->add_option("--mu1", rec_mu1, "Mean of the reconstructed law (default 0)");
    rec->add_option("--grid", rec_grid, "Number of interior u points (default 99)")
        ->check(CLI::Range(1, 100000));
    add_io_flags(rec, rec_io);
    rec->callback([&] {
        rc = run_reconstruct(rec_form, rec_params, rec_table, rec_mu1, rec_grid, rec_io);
    });

    std::string fh_dist;
    std::vector<double> fh_params;
    int fh_grid = 60;
    dist::Tolerances fh_tol;
    IoOptions fh_io;
    auto* fh = app.add_subcommand(
        "forward-h1", "Canonical integral-form weight of a catalog distribution");
    fh->add_option("--dist", fh_dist, "Catalog distribution id")->required();
    fh->add_option("--params", fh_params, "Distribution parameters")->delimiter(',');
    fh->add_option("--grid", fh_grid, "Number of log-spaced y points (default 60)")
        ->check(CLI::Range(1, 100000));
    fh->add_option("--tol-rel", fh_tol.rel, "Quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    fh->add_option("--tol-abs", fh_tol.abs, "Quadrature absolute tolerance")
        ->check(CLI::PositiveNumber);
    add_io_flags(fh, fh_io);
    fh->callback([&] { rc = run_forward_h1(fh_dist, fh_params, fh_grid, fh_tol, fh_io); });

    std::string sym_form;
    std::vector<double> sym_params;
    std::string sym_table;
    int sym_grid = 0;
    IoOptions sym_io;
    auto* sym = app.add_subcommand(
        "symmetry", "Weight symmetry criterion: does the form's law sit symmetric "
                    "around its mean");
    sym->add_option("--form", sym_form, "Integral form id");
    sym->add_option("--params", sym_params, "Form parameters")->delimiter(',');
    sym->add_option("--table", sym_table, "Tabulated weight JSON file");
    sym->add_option("--grid", sym_grid, "Number of log-spaced y points (default 200)")
        ->check(CLI::Range(2, 100000));
    add_io_flags(sym, sym_io);
    sym->callback([&] { rc = run_symmetry(sym_form, sym_params, sym_table, sym_grid, sym_io); });

    std::string cmp_a, cmp_b;
    std::vector<double> cmp_pa, cmp_pb;
    int cmp_grid = 200;
    IoOptions cmp_io;
    auto* cmp = app.add_subcommand(
        "compare-ranges", "Do two catalog distributions share every expected range");
    cmp->add_option("--dist", cmp_a, "First catalog distribution id")->required();
    cmp->add_option("--params", cmp_pa, "First distribution parameters")->delimiter(',');
    cmp->add_option("--dist2", cmp_b, "Second catalog distribution id")->required();
    cmp->add_option("--params2", cmp_pb, "Second distribution parameters")->delimiter(',');
    cmp->add_option("--grid", cmp_grid, "Probe grid resolution (default 200)")
        ->check(CLI::Range(2, 1000000));
    add_io_flags(cmp, cmp_io);
    cmp->callback([&] { rc = run_compare_ranges(cmp_a, cmp_pa, cmp_b, cmp_pb, cmp_grid, cmp_io); });

    IoOptions cat_io;
    auto* cat = app.add_subcommand("catalog", "List distribution and form ids");
    add_io_flags(cat, cat_io);
    cat->callback([&] { rc = run_catalog(cat_io); });

    int st_smax = 12;
    IoOptions st_io;
    auto* st = app.add_subcommand(
        "stirling", "Signed binomial power sums behind the finite-n moment identity");
    st->add_option("--smax", st_smax, "Largest difference order s (default 12)")
        ->check(CLI::Range(1, 60));
    add_io_flags(st, st_io);
    st->callback([&] { rc = run_stirling(st_smax, st_io); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsageError;
    } catch (const quad::ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    }
    return rc;
}
