#pragma once

// Subcommands of the `cocyc` tool. Each returns the process exit code and
// writes human-readable output to `out`, warnings and diagnostics to `err`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cocyc::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitNoConvergence = 1,
    kExitValidation = 2,
    kExitCollision = 3,
    kExitGate = 4,
};

/// Overrides the default output directory (the working directory).
inline constexpr const char* kOutputDirVariable = "COCYC_OUTPUT_DIR";

struct Options {
    std::optional<int> n;
    std::optional<int> d;
    std::optional<double> alpha;
    std::optional<std::vector<double>> masses;
    bool equalMasses = false;
    std::optional<int> starts;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool absTol = false;
    std::optional<std::string> method;
    std::optional<int> maxIterations;
    std::optional<std::string> input;
    std::optional<std::string> output;
    bool csv = false;
    bool timing = false;
    std::string galleryName;
};

/// Directory that output files go to: --output, else $COCYC_OUTPUT_DIR, else ".".
std::string outputDirectory(const Options& opts);

int cmdSolve(const Options& opts, std::ostream& out, std::ostream& err);
int cmdVerify(const Options& opts, std::ostream& out, std::ostream& err);
int cmdSpectrum(const Options& opts, std::ostream& out, std::ostream& err);
int cmdMoulton(const Options& opts, std::ostream& out, std::ostream& err);
int cmdGallery(const Options& opts, std::ostream& out, std::ostream& err);
int cmdProject(const Options& opts, std::ostream& out, std::ostream& err);

/// Splits "1,2,3" into numbers; throws FileError("--masses", ...) on junk.
std::vector<double> parseList(const std::string& text, const std::string& flag);

}  // namespace cocyc::cli
