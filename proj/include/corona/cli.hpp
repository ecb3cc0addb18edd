// cli.hpp: the generate, stats, spectrum and verify commands.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "corona/graph.hpp"
#include "corona/spectrum.hpp"

namespace corona {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitResource = 4;

// All-source BFS work (diameter, betweenness) is refused above this many
// nodes unless --force is given.
inline constexpr std::size_t kAnalysisCap = 20'000;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;  // generate | stats | spectrum | verify
    std::string seed;     // canonical seed spec
    std::uint64_t m = 0;
    MatrixKind kind = MatrixKind::adjacency;
    std::string out = "-";  // "-" is stdout
    std::string format;     // json | csv | edges; defaulted per command
    bool betweenness = false;
    double tolerance = 1e-8;
    std::size_t node_cap = kDefaultNodeCap;
    bool force = false;

    // Argument list without the program name. Throws ConfigError on unknown
    // flags, bad values and format/command mismatches.
    static RunConfig parse(const std::vector<std::string>& args);
    static RunConfig parse_canonical(const std::string& line);

    // Fully explicit flag form; parse_canonical(canonical()) reproduces it.
    std::string canonical() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Runs one command. Results go to `out` (or the --out file), progress and
// diagnostics to `err`. Returns one of the kExit* codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace corona
