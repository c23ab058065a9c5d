#include "commands.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Sparse fused linear regression: exact grouping of coefficients "
                 "into K shared nonzero values with at most s nonzero entries"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --config appear after the subcommand name
    app.set_config("--config", "", "key=value config file with one [subcommand] section");

    l0fuse_cli::register_simulate(app);
    l0fuse_cli::register_pipeline(app);
    l0fuse_cli::register_fit(app);
    l0fuse_cli::register_screen(app);
    l0fuse_cli::register_metrics(app);
    l0fuse_cli::register_tune(app);
    l0fuse_cli::register_export_mio(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
