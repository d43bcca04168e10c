// Command-line front end: evaluate constructed Gamma functions, inspect
// divisors, walk hierarchies, print Mellin closed forms and run the
// verification suites.
//
// Exit codes: 0 success / all checks passed, 1 failed check or evaluation
// error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fegamma/closed_forms.hpp"
#include "fegamma/gamma_core.hpp"
#include "fegamma/hierarchy.hpp"
#include "fegamma/verify.hpp"

using namespace fegamma;

namespace {

cplx parse_pair(const std::string& text, const std::string& what) {
    std::size_t comma = text.find(',');
    try {
        if (comma == std::string::npos) return cplx(std::stod(text), 0.0);
        return cplx(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
    } catch (const std::exception&) {
        throw CLI::ValidationError(what + ": expected RE or RE,IM");
    }
}

void print_value(cplx v) {
    std::printf("%s %s\n", format_double(v.real()).c_str(), format_double(v.imag()).c_str());
}

FunctionSpec load_spec(const std::string& expr, const std::string& spec_file) {
    if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw error("cannot open spec file " + spec_file);
        std::stringstream buf;
        buf << in.rdbuf();
        return FunctionSpec::from_json(buf.str());
    }
    if (expr.empty()) throw CLI::ValidationError("need --f EXPR or --spec-file PATH");
    return parse(expr);
}

Normalization norm_from(const std::string& name) {
    if (name == "value1") return Normalization::value1;
    if (name == "residue0") return Normalization::residue0;
    if (name == "value0") return Normalization::value0;
    if (name == "realanalytic") return Normalization::realanalytic;
    throw CLI::ValidationError("unknown normalization '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fegamma: generalized Gamma functions from their functional equations"};
    app.require_subcommand(1);

    std::string expr, spec_file, s_text, norm_name = "value1", variant_text, omegas_text;
    std::string suite_name = "all", csv_path;
    double radius = 3.5, tol_override = 0.0, qvalue = 0.5;
    int levels = 1, branch = 0, qlevel = 1;
    bool corrupt = false, serial = false, divisor_json = false;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate Gamma^f at a point");
    eval_cmd->add_option("--f", expr, "seed expression");
    eval_cmd->add_option("--spec-file", spec_file, "seed as JSON file");
    eval_cmd->add_option("--s", s_text, "evaluation point RE,IM")->required();
    eval_cmd->add_option("--norm", norm_name, "value1|residue0|value0|realanalytic");
    eval_cmd->add_option("--variant", variant_text, "A,BRE,BIM multiplies by e^{2 pi i A s + B}");

    auto* div_cmd = app.add_subcommand("divisor", "enumerate the divisor of Gamma^f");
    div_cmd->add_option("--f", expr, "seed expression");
    div_cmd->add_option("--spec-file", spec_file, "seed as JSON file");
    div_cmd->add_option("--radius", radius, "enumeration radius")->required();
    div_cmd->add_flag("--json", divisor_json, "print the symbolic divisor as JSON instead");

    auto* hier_cmd = app.add_subcommand("hierarchy", "evaluate hierarchy levels 1..N");
    hier_cmd->add_option("--f", expr, "seed expression");
    hier_cmd->add_option("--spec-file", spec_file, "seed as JSON file");
    hier_cmd->add_option("--levels", levels, "number of levels")->required();
    hier_cmd->add_option("--omegas", omegas_text, "W1,W2,... (default: all 1)");
    hier_cmd->add_option("--s", s_text, "evaluation point RE,IM")->required();

    auto* mellin_cmd = app.add_subcommand("mellin", "closed-form solution for a rational seed");
    mellin_cmd->add_option("--f", expr, "rational seed expression");
    mellin_cmd->add_option("--spec-file", spec_file, "seed as JSON file");
    mellin_cmd->add_option("--branch", branch, "branch index k");
    mellin_cmd->add_option("--s", s_text, "optional evaluation point RE,IM");

    auto* q_cmd = app.add_subcommand("qgamma", "Jackson q-Gamma / Nishizawa levels");
    q_cmd->add_option("--q", qvalue, "q in (0,1)")->required();
    q_cmd->add_option("--s", s_text, "evaluation point RE,IM")->required();
    q_cmd->add_option("--level", qlevel, "hierarchy level N (default 1)");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", suite_name, "euler|qgamma|mellin|barnes|multiple|all");
    verify_cmd->add_option("--csv", csv_path, "write per-point residuals as CSV");
    verify_cmd->add_option("--tol", tol_override, "override per-check tolerances");
    verify_cmd->add_flag("--corrupt", corrupt, "corrupt the solutions (negative control)");
    verify_cmd->add_flag("--serial", serial, "disable OpenMP grid evaluation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval_cmd->parsed()) {
            FunctionSpec spec = load_spec(expr, spec_file);
            cplx s = parse_pair(s_text, "--s");
            GammaSolution sol = build_gamma(spec, norm_from(norm_name));
            if (!variant_text.empty()) {
                std::stringstream ss(variant_text);
                std::string tok;
                std::vector<double> v;
                while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
                if (v.size() != 3) throw CLI::ValidationError("--variant needs A,BRE,BIM");
                sol = uniqueness_variant(sol, static_cast<int>(v[0]), cplx(v[1], v[2]));
            }
            print_value(sol.eval(s));
        } else if (div_cmd->parsed()) {
            FunctionSpec spec = load_spec(expr, spec_file);
            DivisorSpec gdiv = propagate(divisor_of(spec));
            if (divisor_json) {
                std::printf("%s\n", gdiv.to_json().c_str());
            } else {
                for (const auto& e : gdiv.enumerate(radius)) {
                    std::printf("%s %s %lld\n", format_double(e.position.real()).c_str(),
                                format_double(e.position.imag()).c_str(), e.multiplicity);
                }
            }
        } else if (hier_cmd->parsed()) {
            FunctionSpec spec = load_spec(expr, spec_file);
            cplx s = parse_pair(s_text, "--s");
            std::vector<double> omegas;
            if (!omegas_text.empty()) {
                std::stringstream ss(omegas_text);
                std::string tok;
                while (std::getline(ss, tok, ',')) omegas.push_back(std::stod(tok));
            } else {
                omegas.assign(levels, 1.0);
            }
            if (static_cast<int>(omegas.size()) != levels)
                throw CLI::ValidationError("--omegas must list exactly --levels values");
            auto level = multiple_gamma(spec, omegas);
            std::vector<const HierarchyLevel*> chain;
            for (auto l = level.get(); l != nullptr; l = l->parent().get())
                chain.push_back(l);
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                if ((*it)->level() == 0) continue;
                std::printf("level %d: ", (*it)->level());
                print_value((*it)->eval(s));
            }
        } else if (mellin_cmd->parsed()) {
            FunctionSpec spec = load_spec(expr, spec_file);
            MellinSolution sol = mellin_solve(spec, branch);
            std::printf("%s\n", sol.print().c_str());
            if (!s_text.empty()) print_value(sol.eval(parse_pair(s_text, "--s")));
        } else if (q_cmd->parsed()) {
            cplx s = parse_pair(s_text, "--s");
            if (qlevel == 1) {
                print_value(q_gamma(qvalue, s));
            } else {
                auto level = higher_gamma(parse("qfac(" + format_double(qvalue) + ")"), qlevel);
                print_value(level->eval(s));
            }
        } else if (verify_cmd->parsed()) {
            auto suite = suite_from_name(suite_name);
            if (!suite) throw CLI::ValidationError("unknown suite '" + suite_name + "'");
            VerifyOptions options;
            options.csv_path = csv_path;
            options.tol_override = tol_override;
            options.corrupt = corrupt;
            options.parallel = !serial;
            VerificationReport report = run_suite(*suite, options);
            std::printf("%s", format_report(report).c_str());
            return report.pass() ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const divisor_signal& sig) {
        std::fprintf(stderr, "%s\n", sig.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
