#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "susyline/halfint.hpp"
#include "susyline/operators.hpp"

namespace susyline::cli {

enum class Format { csv, json };

/// Parsed command line. Parse errors are reported (exit 2) before any
/// computation starts.
struct RunConfig {
    std::string command;
    std::optional<HalfInt> j, jz, jmax;
    Sector sign = Sector::minus;
    double g = 1.0, length = 1.0, tol = 1e-10;
    long k = 0;
    int levels = 3;
    std::vector<int> n_list;
    Format format = Format::csv;
    std::string out; // empty = stdout
};

/// "p/2" or integer strings: "3/2", "-1/2", "2".
std::optional<HalfInt> parse_half(const std::string& s);

/// 17-significant-digit float formatting used by all CSV output.
std::string fmt17(double v);

int cmd_spectrum(const RunConfig& cfg, std::ostream& os);
int cmd_multiplet(const RunConfig& cfg, std::ostream& os);
int cmd_verify(const RunConfig& cfg, std::ostream& os);
int cmd_fd(const RunConfig& cfg, std::ostream& os);
int cmd_transform(const RunConfig& cfg, std::ostream& os);

/// Full entry point: parse, dispatch, honor --out.
/// Exit codes: 0 all pass, 1 verification failure, 2 usage error.
int run(int argc, const char* const* argv);

} // namespace susyline::cli
