#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclepack {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value, dotted paths
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 0;  // 0: take the config value (default 1)
};

// Exit codes: 0 success, 2 validation error, 3 runtime shortfall (artifacts
// still written).
int run_cli(const CliOptions& options);

int cli_main(int argc, char** argv);

}  // namespace cyclepack
