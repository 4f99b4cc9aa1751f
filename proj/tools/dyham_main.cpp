// dyham: dyadic harmonic analysis on Morrey spaces and their preduals.
//
// Exit codes: 0 success / all gates pass, 1 verification gate failure,
// 2 usage or parameter or parse error, 3 data error (nonfinite values).

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyham/io.hpp"
#include "dyham/operators.hpp"
#include "dyham/predual.hpp"
#include "dyham/verify.hpp"
#include "dyham/version.hpp"

using namespace dyham;

namespace {

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

void emit_table(const io::ReportTable& table, const std::string& out_path) {
    if (out_path.empty())
        std::cout << table.to_csv();
    else
        table.write(out_path);
}

void stamp(io::ReportTable& t, const std::string& command, const GridGeometry& g,
           std::uint64_t seed, const std::string& params) {
    t.add_meta("command", command);
    t.add_meta("geometry", "n=" + std::to_string(g.dim()) + " jmin=" + std::to_string(g.level_min()) +
                               " J=" + std::to_string(g.level_max()));
    t.add_meta("seed", std::to_string(seed));
    t.add_meta("params", params);
    t.add_meta("version", kVersion);
}

int run_transform(const std::string& direction, const std::string& in, const std::string& out) {
    if (direction == "forward") {
        io::write_coefficient_file(out, forward_transform(io::read_function_file(in)));
    } else {
        io::write_function_file(out, inverse_transform(io::read_coefficient_file(in)));
    }
    return 0;
}

int run_norm(const std::string& kind, const std::string& in, double p, double q,
             const std::string& out, std::uint64_t seed, const std::string& command) {
    GridFunction f = io::read_function_file(in);
    io::ReportTable table;
    std::string params = "kind=" + kind + " p=" + io::format_double(p) + " q=" + io::format_double(q);
    stamp(table, command, f.geometry(), seed, params);
    if (kind == "lq") {
        table.set_columns({"value"});
        table.add_row({io::format_double(lq_norm(f, q))});
    } else if (kind == "morrey") {
        NormReport r = morrey_norm_report(f, {p, q});
        table.set_columns({"value", "witness_level", "witness_index"});
        table.add_row({io::format_double(r.value), std::to_string(r.witness.level),
                       std::to_string(f.geometry().cube_flat_index(r.witness))});
    } else if (kind == "bmo") {
        NormReport r = bmo_report(f);
        table.set_columns({"value", "witness_level", "witness_index"});
        table.add_row({io::format_double(r.value), std::to_string(r.witness.level),
                       std::to_string(f.geometry().cube_flat_index(r.witness))});
    } else {  // block
        DualityGapReport r = duality_gap_report(f, {p, q});
        table.set_columns({"upper", "lower", "gap"});
        table.add_row({io::format_double(r.upper), io::format_double(r.lower),
                       io::format_double(r.gap)});
    }
    emit_table(table, out);
    return 0;
}

int run_apply(const std::string& op, const std::string& in, const std::string& symbol_path,
              double alpha, int L, const std::string& out) {
    GridFunction f = io::read_function_file(in);
    if (op == "ialpha") {
        io::write_function_file(out, fractional_integral(f, alpha));
        return 0;
    }
    if (symbol_path.empty())
        throw std::invalid_argument("apply " + op + " needs --symbol (the function a)");
    GridFunction a = io::read_function_file(symbol_path);
    if (!(a.geometry() == f.geometry()))
        throw std::invalid_argument("symbol and input files use different geometries");
    GridFunction result(f.geometry());
    if (op == "paraproduct")
        result = paraproduct(a, f);
    else if (op == "commutator")
        result = commutator_direct(a, f, alpha);
    else if (op == "tail_high")
        result = commutator_tail_high(a, f, alpha, L);
    else
        result = commutator_tail_low(a, f, alpha, L);
    io::write_function_file(out, result);
    return 0;
}

int run_verify(const std::string& suite, const SuiteConfig& cfg, const std::string& out) {
    SuiteResult res = run_suite(suite, cfg);
    for (const CheckLine& c : res.checks) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
    }
    std::cout << "suite " << suite << ": " << (res.passed() ? "PASS" : "FAIL") << " ("
              << res.checks.size() << " checks)\n";
    if (!out.empty())
        res.table.write(out);
    else
        std::cout << res.table.to_csv();
    return res.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic harmonic analysis toolkit: haar transforms, Morrey/BMO/block "
                 "norms, fractional integrals, commutators, and verification suites"};
    app.require_subcommand(1);
    std::string command = join_args(argc, argv);

    std::string direction, in_path, out_path, kind, op, symbol_path, suite;
    double p = 4.0, q = 2.0, alpha = 0.125, theta = 0.0;
    int n = 1, jmin = 0, J = 8, Jlow = -1, L = 0, ensemble = 100;
    std::uint64_t seed = 42;

    CLI::App* tf = app.add_subcommand("transform", "haar analysis/synthesis on files");
    tf->add_option("direction", direction, "forward or inverse")
        ->required()
        ->check(CLI::IsMember({"forward", "inverse"}));
    tf->add_option("input", in_path, "input file")->required();
    tf->add_option("--out", out_path, "output file")->required();

    CLI::App* nm = app.add_subcommand("norm", "norm of a function file");
    nm->add_option("kind", kind, "lq, morrey, bmo, or block")
        ->required()
        ->check(CLI::IsMember({"lq", "morrey", "bmo", "block"}));
    nm->add_option("input", in_path, "function file")->required();
    CLI::Option* nm_p = nm->add_option("--p", p, "outer exponent");
    CLI::Option* nm_q = nm->add_option("--q", q, "inner exponent");
    nm->add_option("--seed", seed, "recorded in the report metadata");
    nm->add_option("--out", out_path, "report file (stdout when omitted)");

    CLI::App* ap = app.add_subcommand("apply", "apply an operator to a function file");
    ap->add_option("op", op, "ialpha, paraproduct, commutator, tail_high, or tail_low")
        ->required()
        ->check(CLI::IsMember({"ialpha", "paraproduct", "commutator", "tail_high", "tail_low"}));
    ap->add_option("input", in_path, "function file f")->required();
    ap->add_option("--symbol", symbol_path, "function file a (symbol)");
    ap->add_option("--alpha", alpha, "order of the fractional integral");
    ap->add_option("--L", L, "scale cut for the tail projections");
    ap->add_option("--out", out_path, "output function file")->required();

    CLI::App* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("suite", suite, "thm1 thm2 thm3 thm4 thm5 thm6 thm7 prop21 decomp")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    vf->add_option("--n", n, "dimension");
    vf->add_option("--jmin", jmin, "coarsest level");
    vf->add_option("--J", J, "finest level");
    vf->add_option("--Jlow", Jlow, "comparison level for stability gates (default J/2)");
    CLI::Option* vf_p = vf->add_option("--p", p, "outer exponent");
    CLI::Option* vf_q = vf->add_option("--q", q, "inner exponent");
    vf->add_option("--alpha", alpha, "order of the fractional integral");
    vf->add_option("--seed", seed, "ensemble seed");
    vf->add_option("--ensemble-size", ensemble, "samples per ensemble");
    vf->add_option("--theta", theta, "per-level coefficient weight 2^(theta j)");
    vf->add_option("--out", out_path, "report file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (tf->parsed()) return run_transform(direction, in_path, out_path);
        if (nm->parsed()) {
            // the block scale needs p <= q; give it a valid default pair
            if (kind == "block" && nm_p->count() == 0 && nm_q->count() == 0) {
                p = 2.0;
                q = 3.0;
            }
            return run_norm(kind, in_path, p, q, out_path, seed, command);
        }
        if (ap->parsed()) return run_apply(op, in_path, symbol_path, alpha, L, out_path);
        SuiteConfig cfg;
        cfg.n = n;
        cfg.j_min = jmin;
        cfg.J = J;
        cfg.J_low = Jlow >= 0 ? Jlow : std::max(jmin + 1, J / 2);
        cfg.seed = seed;
        cfg.ensemble = ensemble;
        cfg.theta = theta;
        cfg.p = p;
        cfg.q = q;
        cfg.alpha = alpha;
        cfg.command_line = command;
        if (suite == "thm6" && vf_p->count() == 0 && vf_q->count() == 0) {
            cfg.p = 2.0;
            cfg.q = 3.0;
        }
        return run_verify(suite, cfg, out_path);
    } catch (const io::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
