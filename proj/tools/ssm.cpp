// Command-line front end: verify a surface's defining residual on a grid,
// export meshes, sample solution profiles with defect footers, and list the
// built-in solution catalog.
//
// Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage or input errors.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssm/cli.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"singular minimal translation-surface toolkit"};
    app.require_subcommand(1);

    // verify
    ssm::VerifyOptions vopt;
    std::string v_connection, v_u;
    double v_alpha = 0.0;
    CLI::App* verify = app.add_subcommand("verify", "check the defining residual on a grid");
    verify->add_option("--spec", vopt.spec_path, "spec file (key=value lines)")->required();
    CLI::Option* oc = verify->add_option("--connection", v_connection,
                                         "connection: levi, nabla or d (family default)");
    CLI::Option* oa =
        verify->add_option("--alpha", v_alpha, "exponent (family verification default)");
    CLI::Option* ou = verify->add_option("--u", v_u, "direction axis: x, y or z (family default)");
    verify->add_option("--grid", vopt.grid, "evaluation grid, e.g. 64x64")
        ->capture_default_str();
    verify->add_option("--tol", vopt.tol, "max |residual| for PASS")->capture_default_str();
    verify->add_flag("--json", vopt.json, "emit a JSON report");

    // mesh
    ssm::MeshOptions mopt;
    CLI::App* mesh = app.add_subcommand("mesh", "export the surface as obj or csv");
    mesh->add_option("--spec", mopt.spec_path, "spec file (key=value lines)")->required();
    mesh->add_option("--out", mopt.out_path, "output path")->required();
    mesh->add_option("--format", mopt.format, "obj or csv")->capture_default_str();
    mesh->add_option("--grid", mopt.grid, "vertex grid, e.g. 64x64")->capture_default_str();

    // solve
    ssm::SolveOptions sopt;
    double s_rtol = 0.0;
    CLI::App* solve =
        app.add_subcommand("solve", "sample a family profile to CSV with a defect footer");
    solve->add_option("--family", sopt.family, "family name (see catalog)")->required();
    solve->add_option("--param", sopt.params, "family parameter key=value (repeatable)");
    solve->add_option("--range", sopt.range, "sample range A:B");
    CLI::Option* orl = solve->add_option("--rtol", s_rtol, "solver tolerance (ODE families)");
    solve->add_option("--out", sopt.out_path, "output CSV path")->required();

    // catalog
    bool catalog_json = false;
    CLI::App* catalog = app.add_subcommand("catalog", "list the built-in solution families");
    catalog->add_flag("--json", catalog_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (verify->parsed()) {
        if (oc->count() > 0) vopt.connection = v_connection;
        if (oa->count() > 0) vopt.alpha = v_alpha;
        if (ou->count() > 0) vopt.u = v_u;
        return ssm::cmd_verify(vopt, std::cout);
    }
    if (mesh->parsed()) return ssm::cmd_mesh(mopt, std::cout);
    if (solve->parsed()) {
        if (orl->count() > 0) sopt.rtol = s_rtol;
        return ssm::cmd_solve(sopt, std::cout);
    }
    if (catalog->parsed()) return ssm::cmd_catalog(catalog_json, std::cout);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ssm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
