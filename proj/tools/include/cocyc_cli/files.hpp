#pragma once

// Problem, solution and cochain files. All three are JSON objects with a fixed
// key order; doubles are written in shortest round-trip form, so
// parse(emit(x)) == x holds bit for bit.

#include "cocyc/cochain.hpp"
#include "cocyc/solution.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cocyc::cli {

using Points = std::vector<std::vector<double>>;

inline constexpr const char* kToolVersion = "cocyc 0.1.0";

/// Malformed or invalid input file; `field` is a JSON path such as "masses[2]".
class FileError : public std::runtime_error {
public:
    FileError(std::string field, const std::string& message);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct SolverBlock {
    std::string method = "newton";
    int maxIterations = 5000;
    double residualTolerance = 1e-11;
    int starts = 20;

    bool operator==(const SolverBlock&) const = default;
};

struct ProblemFile {
    int n = 3;
    int d = 2;
    double alpha = 1.0;
    std::vector<double> masses;
    double massScale = 1.0;  // sum of the masses as first supplied
    std::optional<Points> positions;
    std::uint64_t rngSeed = 1;
    SolverBlock solver;

    bool operator==(const ProblemFile&) const = default;

    /// Throws FileError naming the offending field.
    void validate() const;

    /// Rescales masses to unit sum and multiplies massScale by the old sum.
    /// Returns false when they already summed to one.
    bool normalizeMasses();
};

struct SolutionFile {
    ProblemFile problem;
    std::string label;
    std::string method;
    Points configuration;
    double lambda = 0.0;
    double residualNorm = 0.0;
    int iterations = 0;
    std::optional<int> morseIndex;
    std::vector<double> spectrum;
    std::vector<std::string> classification;
    std::string toolVersion = kToolVersion;
    std::optional<double> timing;  // seconds; only written on request

    bool operator==(const SolutionFile&) const = default;
};

/// A 1-cochain listed pair by pair in lexicographic order (1,2), (1,3), ...
struct CochainFile {
    int n = 3;
    int d = 2;
    std::vector<double> masses;
    Points entries;

    bool operator==(const CochainFile&) const = default;
    void validate() const;
};

std::string emitProblem(const ProblemFile& problem);
std::string emitSolution(const SolutionFile& solution);
std::string emitCochain(const CochainFile& cochain);

/// Parse errors carry line and column from the JSON reader; missing or
/// mistyped fields are reported by name.
ProblemFile parseProblem(const std::string& text);
SolutionFile parseSolution(const std::string& text);
CochainFile parseCochain(const std::string& text);

/// True when the text looks like a solution file (has a "configuration" key).
bool isSolutionText(const std::string& text);

SolutionFile toSolutionFile(const ProblemFile& problem, const CCSolution& sol);

/// One row per body: "body,x1,...,xd".
std::string positionsCsv(const Points& points);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

}  // namespace cocyc::cli
