// becell: exact F2 engine for cell algebras over the Barratt-Eccles operad.
//
// Exit codes: 0 success, 1 validation failure, 2 parse error, 3 solver
// exhaustion.

#include <iostream>

#include <CLI11.hpp>

#include "becell/becell.hpp"

namespace {

using namespace becell;

struct CommonOptions {
    std::string out;
    std::string phi_path;
    int max_arity = 2;
    int escalate = 6;
};

CylinderOptions cylinder_options(const CommonOptions& common, const CellAlgebra& A) {
    CylinderOptions options;
    options.start_arity = common.max_arity;
    options.escalation_limit = common.escalate;
    if (!common.phi_path.empty())
        options.manual_phi = read_phi_file(common.phi_path, cylinder_generator_universe(A));
    return options;
}

CellAlgebra load_valid_model(const std::string& path) {
    CellAlgebra A = read_model_file(path);
    ValidationReport report = validate(A);
    if (!report.ok())
        throw Error("algebra '" + A.name + "' is invalid:\n" + report.summary());
    return A;
}

void emit_model(const CellAlgebra& A, const std::string& out) {
    if (out.empty())
        std::cout << model_to_string(A);
    else
        write_model_file(A, out);
}

int run_validate(const std::string& path) {
    std::string text = read_file(path);
    std::string first;
    {
        std::istringstream is(text);
        std::string raw;
        while (std::getline(is, raw)) {
            size_t hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            raw = detail::strip(raw);
            if (!raw.empty()) {
                first = detail::split_ws(raw)[0];
                break;
            }
        }
    }
    if (first == "morphism") {
        CellMorphism f = read_morphism_file(path);
        ValidationReport report = validate_morphism(f);
        if (report.ok()) {
            std::cout << f.name << ": valid chain map (" << f.source.gens.size()
                      << " generators mapped)\n";
            return 0;
        }
        std::cout << f.name << ": INVALID\n" << report.summary();
        return 1;
    }
    CellAlgebra A = read_model_file(path);
    ValidationReport report = validate(A);
    if (report.ok()) {
        std::cout << A.name << ": valid (" << A.gens.size() << " generators, d²=0)\n";
        return 0;
    }
    std::cout << A.name << ": INVALID\n" << report.summary();
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact F2 cell-algebra engine over the Barratt-Eccles operad"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string model_path, second_path, expr;
    int degree = 0;
    int iterate_count = 1;

    auto add_common = [&](CLI::App* cmd, bool with_phi, bool with_out) {
        cmd->add_option("--max-arity", common.max_arity, "starting arity window for solves");
        cmd->add_option("--escalate", common.escalate, "arity escalation limit for solves");
        if (with_phi)
            cmd->add_option("--phi", common.phi_path, "manual homotopy corrections (phi file)");
        if (with_out) cmd->add_option("--out", common.out, "output model file (stdout otherwise)");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "validate a model or morphism file");
    validate_cmd->add_option("file", model_path)->required();

    CLI::App* d_cmd = app.add_subcommand("d", "differential of an element");
    d_cmd->add_option("file", model_path)->required();
    d_cmd->add_option("element", expr)->required();

    CLI::App* cylinder_cmd = app.add_subcommand("cylinder", "cylinder on a cell algebra");
    cylinder_cmd->add_option("file", model_path)->required();
    add_common(cylinder_cmd, true, true);

    CLI::App* cone_cmd = app.add_subcommand("cone", "acyclic closure of a cell algebra");
    cone_cmd->add_option("file", model_path)->required();
    add_common(cone_cmd, true, true);

    CLI::App* loop_cmd = app.add_subcommand("loop", "free loop model of a cell algebra");
    loop_cmd->add_option("file", model_path)->required();
    add_common(loop_cmd, true, true);

    CLI::App* suspend_cmd = app.add_subcommand("suspend", "suspension of a cell algebra");
    suspend_cmd->add_option("file", model_path)->required();
    add_common(suspend_cmd, true, true);

    CLI::App* suspend_iter_cmd = app.add_subcommand("suspend-iter", "iterated suspension");
    suspend_iter_cmd->add_option("file", model_path)->required();
    suspend_iter_cmd->add_option("count", iterate_count)->required();
    add_common(suspend_iter_cmd, true, true);

    CLI::App* pushout_cmd =
        app.add_subcommand("pushout", "pushout of a cell extension along a morphism");
    pushout_cmd->add_option("morphism", model_path)->required();
    pushout_cmd->add_option("extension", second_path)->required();
    add_common(pushout_cmd, false, true);

    CLI::App* solve_cmd = app.add_subcommand("solve", "find phi with d(phi) = element");
    solve_cmd->add_option("file", model_path)->required();
    solve_cmd->add_option("element", expr)->required();
    add_common(solve_cmd, false, false);

    CLI::App* basis_cmd = app.add_subcommand("basis", "monomial basis in one degree");
    basis_cmd->add_option("file", model_path)->required();
    basis_cmd->add_option("--degree", degree, "cohomological degree")->required();
    basis_cmd->add_option("--max-arity", common.max_arity, "arity bound");

    CLI::App* cohomology_cmd =
        app.add_subcommand("cohomology", "arity-truncated cohomology at one degree");
    cohomology_cmd->add_option("file", model_path)->required();
    cohomology_cmd->add_option("--degree", degree, "cohomological degree")->required();
    cohomology_cmd->add_option("--max-arity", common.max_arity, "arity bound");

    CLI::App* compose_cmd = app.add_subcommand("compose", "operad composition of elements");
    compose_cmd->add_option("outer", expr)->required();
    std::vector<std::string> inner_texts;
    compose_cmd->add_option("inners", inner_texts, "inner operad elements")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate_cmd)) return run_validate(model_path);

        if (app.got_subcommand(d_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            AlgElement x = parse_element(expr, A.gens);
            std::cout << to_string(A.d(x)) << '\n';
            return 0;
        }

        if (app.got_subcommand(cylinder_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            CylinderResult cyl = cylinder(A, cylinder_options(common, A));
            emit_model(cyl.IA, common.out);
            for (const Generator& g : A.gens)
                std::cout << "# phi " << g.name << " = " << to_string(cyl.phi_table[g.name]) << '\n';
            return 0;
        }

        if (app.got_subcommand(cone_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            emit_model(cone(A, cylinder_options(common, A)), common.out);
            return 0;
        }

        if (app.got_subcommand(loop_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            emit_model(free_loop(A, cylinder_options(common, A)), common.out);
            return 0;
        }

        if (app.got_subcommand(suspend_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            emit_model(suspend(A, cylinder_options(common, A)), common.out);
            return 0;
        }

        if (app.got_subcommand(suspend_iter_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            emit_model(iterate_suspend(A, iterate_count, cylinder_options(common, A)), common.out);
            return 0;
        }

        if (app.got_subcommand(pushout_cmd)) {
            CellMorphism phi = read_morphism_file(model_path);
            CellAlgebra ext = read_model_file(second_path);
            emit_model(pushout(phi, ext), common.out);
            return 0;
        }

        if (app.got_subcommand(solve_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            AlgElement c = parse_element(expr, A.gens);
            TruncationWindow window;
            window.degree = c.is_zero() ? 0 : c.degree() - 1;
            window.max_arity = common.max_arity;
            window.escalation_limit = common.escalate;
            SolveReport report;
            AlgElement phi = solve_primitive(A, c, window, nullptr, &report);
            std::cout << report.summary() << '\n';
            std::cout << to_string(phi) << '\n';
            return 0;
        }

        if (app.got_subcommand(basis_cmd)) {
            CellAlgebra A = read_model_file(model_path);
            for (const Monomial& m : basis_enumerate(A.gens, degree, common.max_arity))
                std::cout << to_string(m) << '\n';
            return 0;
        }

        if (app.got_subcommand(cohomology_cmd)) {
            CellAlgebra A = load_valid_model(model_path);
            TruncationWindow window;
            window.degree = degree;
            window.max_arity = common.max_arity;
            std::cout << truncated_cohomology(A, window).summary() << '\n';
            return 0;
        }

        if (app.got_subcommand(compose_cmd)) {
            EElement outer = parse_eelement(expr);
            std::vector<EElement> inners;
            for (const std::string& t : inner_texts) inners.push_back(parse_eelement(t));
            std::cout << to_string(compose(outer, inners)) << '\n';
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const SolverExhausted& e) {
        std::cerr << "solver exhausted: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
