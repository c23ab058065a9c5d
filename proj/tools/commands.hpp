#pragma once

#include <CLI11.hpp>

namespace l0fuse_cli {

void register_simulate(CLI::App& app);
void register_pipeline(CLI::App& app);
void register_fit(CLI::App& app);
void register_screen(CLI::App& app);
void register_metrics(CLI::App& app);
void register_tune(CLI::App& app);
void register_export_mio(CLI::App& app);

/// Worker pool size: --threads flag value if positive, else hardware
/// concurrency, capped by the L0FUSE_THREADS environment variable.
int worker_count(int requested);

}  // namespace l0fuse_cli
