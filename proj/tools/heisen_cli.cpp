#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "heisen/eisenstein.hpp"
#include "heisen/theta.hpp"
#include "heisen/verify.hpp"
#include "heisen/weil.hpp"

namespace {

using heisen::CosetIndex;
using heisen::LatticeContext;
using heisen::ModularPoint;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCertify = 3;

struct CommonOpts {
    int level = 3;
    std::string h = "all";
    long long mmax = 30;
    std::vector<double> tau = {0.0, 1.0};
    std::vector<double> t_grid = {1.0};
    double eps = 0.1;
    double tol = 1e-10;
    std::string format = "pretty";
    std::string out;
    std::string config;
    unsigned seed = 0;
    std::string suite = "all";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->set_help_flag("--help", "print usage");  // frees -h / --h for the coset flag
    cmd->add_option("--level", o.level, "lattice level N")->check(CLI::PositiveNumber);
    cmd->add_option("--h", o.h, "coset 'h1,h2' or 'all'");
    cmd->add_option("--mmax", o.mmax, "coefficient truncation index");
    cmd->add_option("--tau", o.tau, "point u v of the upper half-plane")->expected(2);
    cmd->add_option("--t", o.t_grid, "frame parameter(s) t > 0")->expected(-1);
    cmd->add_option("--eps", o.eps, "regularization shift");
    cmd->add_option("--tol", o.tol, "certified tolerance");
    cmd->add_option("--format", o.format, "json|csv|pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--config", o.config, "JSON config file with the same keys");
    cmd->add_option("--seed", o.seed, "seed for harness sample sets");
    cmd->add_option("--suite", o.suite, "verification suite name or 'all'");
}

// --config supplies defaults; explicit flags win.
void merge_config(const CLI::App* cmd, CommonOpts& o) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + o.config);
    nlohmann::json j;
    in >> j;
    auto not_set = [&](const std::string& flag) { return cmd->count(flag) == 0; };
    if (j.contains("level") && not_set("--level")) o.level = j["level"].get<int>();
    if (j.contains("h") && not_set("--h")) o.h = j["h"].get<std::string>();
    if (j.contains("mmax") && not_set("--mmax")) o.mmax = j["mmax"].get<long long>();
    if (j.contains("tau") && not_set("--tau")) o.tau = j["tau"].get<std::vector<double>>();
    if (j.contains("t") && not_set("--t")) o.t_grid = j["t"].get<std::vector<double>>();
    if (j.contains("eps") && not_set("--eps")) o.eps = j["eps"].get<double>();
    if (j.contains("tol") && not_set("--tol")) o.tol = j["tol"].get<double>();
    if (j.contains("format") && not_set("--format")) o.format = j["format"].get<std::string>();
    if (j.contains("out") && not_set("--out")) o.out = j["out"].get<std::string>();
    if (j.contains("seed") && not_set("--seed")) o.seed = j["seed"].get<unsigned>();
    if (j.contains("suite") && not_set("--suite")) o.suite = j["suite"].get<std::string>();
}

std::vector<CosetIndex> parse_cosets(const LatticeContext& ctx, const std::string& spec) {
    if (spec == "all") return all_cosets(ctx);
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--h", "expected 'h1,h2' or 'all'");
    const long long a = std::stoll(spec.substr(0, comma));
    const long long b = std::stoll(spec.substr(comma + 1));
    return {reduce_coset(ctx, a, b)};
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text;
}

int cmd_coeffs(const CommonOpts& o) {
    const LatticeContext ctx(o.level);
    const auto cosets = parse_cosets(ctx, o.h);
    std::ostringstream os;
    if (o.format == "json") {
        nlohmann::json blocks = nlohmann::json::array();
        for (CosetIndex h : cosets)
            blocks.push_back(heisen::coefficient_table_json(ctx, h, o.mmax));
        os << (cosets.size() == 1 ? blocks[0].dump(2) : blocks.dump(2)) << "\n";
    } else if (o.format == "csv") {
        bool first = true;
        for (CosetIndex h : cosets) {
            std::string block = heisen::coefficient_table_csv(ctx, h, o.mmax);
            if (!first) block = block.substr(block.find('\n') + 1);  // single header
            os << block;
            first = false;
        }
    } else {
        for (CosetIndex h : cosets) {
            const auto q = heisen::q_expansion(ctx, h, o.mmax);
            const auto he = heisen::harmonic_expansion(ctx, h, o.mmax);
            os << "N=" << ctx.level << " h=(" << h.h1 << "," << h.h2 << ")\n";
            os << "  c:      ";
            for (const auto& [m, c] : q.coeffs) os << "m=" << m << ":" << c.str() << "  ";
            os << "\n  c~:     ";
            os.precision(15);
            for (const auto& [m, c] : he.hol) os << "m=" << m << ":" << c.value << "  ";
            os << "\n";
        }
    }
    emit(o, os.str());
    return kExitOk;
}

int cmd_eval(const CommonOpts& o) {
    const LatticeContext ctx(o.level);
    const ModularPoint tau{o.tau[0], o.tau[1]};
    if (!(tau.v > 0)) throw CLI::ValidationError("--tau", "need v > 0");
    const long long m_max = std::max(o.mmax, heisen::adapt_m_max(ctx, tau.v, o.tol));
    std::ostringstream os;
    nlohmann::json rows = nlohmann::json::array();
    for (CosetIndex h : parse_cosets(ctx, o.h)) {
        const auto q = heisen::q_expansion(ctx, h, m_max);
        const auto he = heisen::harmonic_expansion(ctx, h, m_max);
        const auto ev = heisen::eval_vartheta(q, tau);
        const auto et = heisen::eval_vartheta_tilde(he, tau);
        if (std::max(ev.tail_bound, et.tail_bound) > o.tol)
            throw heisen::certification_error("eval: tail bound exceeds --tol");
        if (o.format == "json") {
            rows.push_back({{"h", {h.h1, h.h2}},
                            {"vartheta", {ev.value.real(), ev.value.imag()}},
                            {"vartheta_tail", ev.tail_bound},
                            {"vartheta_tilde", {et.value.real(), et.value.imag()}},
                            {"vartheta_tilde_tail", et.tail_bound}});
        } else {
            os.precision(15);
            os << "h=(" << h.h1 << "," << h.h2 << ")  vartheta = " << ev.value
               << " (tail<=" << ev.tail_bound << ")  vartheta~ = " << et.value
               << " (tail<=" << et.tail_bound << ")\n";
        }
    }
    if (o.format == "json")
        os << nlohmann::json({{"N", o.level}, {"tau", o.tau}, {"m_max", m_max}, {"values", rows}})
                  .dump(2)
           << "\n";
    emit(o, os.str());
    return kExitOk;
}

int cmd_verify(const CommonOpts& o) {
    heisen::SuiteOptions s;
    s.level = o.level;
    s.seed = o.seed;
    s.suite = o.suite;
    const auto reports = heisen::run_suite(s);
    std::ostringstream os;
    if (o.format == "json")
        os << heisen::report_jsonl(reports);
    else
        os << heisen::report_table(reports);
    size_t passed = 0;
    for (const auto& r : reports) passed += r.passed ? 1 : 0;
    if (o.format != "json")
        os << passed << "/" << reports.size() << " checks passed\n";
    emit(o, os.str());
    return heisen::all_passed(reports) ? kExitOk : kExitVerifyFail;
}

int cmd_kernel(const CommonOpts& o) {
    const LatticeContext ctx(o.level);
    const ModularPoint tau{o.tau[0], o.tau[1]};
    std::ostringstream os;
    nlohmann::json rows = nlohmann::json::array();
    if (o.format == "csv")
        os << "N,h1,h2,u,v,t,theta_re,theta_im,theta_tail,theta_tilde_re,theta_tilde_im,"
              "theta_tilde_tail\n";
    for (double t : o.t_grid) {
        if (!(t > 0)) throw CLI::ValidationError("--t", "need t > 0");
        for (CosetIndex h : parse_cosets(ctx, o.h)) {
            const auto th = heisen::theta_h(ctx, h, tau, t, o.tol);
            const auto tt = heisen::theta_tilde_h(ctx, h, tau, t, o.tol);
            if (o.format == "csv") {
                os.precision(17);
                os << o.level << ',' << h.h1 << ',' << h.h2 << ',' << tau.u << ',' << tau.v << ','
                   << t << ',' << th.value.real() << ',' << th.value.imag() << ','
                   << th.tail_bound << ',' << tt.value.real() << ',' << tt.value.imag() << ','
                   << tt.tail_bound << '\n';
            } else {
                rows.push_back({{"h", {h.h1, h.h2}},
                                {"t", t},
                                {"theta", {th.value.real(), th.value.imag()}},
                                {"theta_tail", th.tail_bound},
                                {"theta_tilde", {tt.value.real(), tt.value.imag()}},
                                {"theta_tilde_tail", tt.tail_bound}});
            }
        }
    }
    if (o.format != "csv")
        os << nlohmann::json({{"N", o.level}, {"tau", o.tau}, {"grid", rows}}).dump(2) << "\n";
    emit(o, os.str());
    return kExitOk;
}

int cmd_weil(const CommonOpts& o) {
    const LatticeContext ctx(o.level);
    nlohmann::json j = {{"N", o.level},
                        {"rho_T", heisen::weil_to_json(heisen::rho_T(ctx))},
                        {"rho_S", heisen::weil_to_json(heisen::rho_S(ctx))},
                        {"rho_T_dual", heisen::weil_to_json(heisen::rho_dual(heisen::rho_T(ctx)))},
                        {"rho_S_dual", heisen::weil_to_json(heisen::rho_dual(heisen::rho_S(ctx)))}};
    emit(o, j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weight-one Eisenstein series, its harmonic companion, and their kernels"};
    app.require_subcommand(1);
    CommonOpts o;
    CLI::App* coeffs = app.add_subcommand("coeffs", "exact coefficient tables");
    CLI::App* eval = app.add_subcommand("eval", "evaluate both series at tau");
    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    CLI::App* kernel = app.add_subcommand("kernel", "export kernels on a (tau, t) grid");
    CLI::App* weil = app.add_subcommand("weil", "dump representation matrices");
    for (CLI::App* c : {coeffs, eval, verify, kernel, weil}) add_common(c, o);

    try {
        app.parse(argc, argv);
        CLI::App* active = app.get_subcommands().front();
        merge_config(active, o);
        if (coeffs->parsed()) return cmd_coeffs(o);
        if (eval->parsed()) return cmd_eval(o);
        if (verify->parsed()) return cmd_verify(o);
        if (kernel->parsed()) return cmd_kernel(o);
        if (weil->parsed()) return cmd_weil(o);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const heisen::certification_error& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return kExitCertify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
