#include "cocyc_cli/files.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace cocyc::cli {

using Json = nlohmann::ordered_json;

FileError::FileError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw FileError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw FileError(at(path, key), "missing field");
    return *it;
}

double asDouble(const Json& v, const std::string& path) {
    if (!v.is_number()) throw FileError(path, "expected a number");
    return v.get<double>();
}

int asInt(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw FileError(path, "expected an integer");
    return v.get<int>();
}

std::string asString(const Json& v, const std::string& path) {
    if (!v.is_string()) throw FileError(path, "expected a string");
    return v.get<std::string>();
}

std::vector<double> asDoubles(const Json& v, const std::string& path) {
    if (!v.is_array()) throw FileError(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(asDouble(v[i], at(path, i)));
    return out;
}

Points asPoints(const Json& v, const std::string& path) {
    if (!v.is_array()) throw FileError(path, "expected an array of points");
    Points out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(asDoubles(v[i], at(path, i)));
    return out;
}

Json parseDocument(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FileError("", e.what());
    }
}

void checkPoints(const Points& points, int n, int d, const std::string& path) {
    if (static_cast<int>(points.size()) != n)
        throw FileError(path, "expected " + std::to_string(n) + " points, got " + std::to_string(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (static_cast<int>(points[j].size()) != d)
            throw FileError(at(path, j), "expected " + std::to_string(d) + " coordinates, got " +
                                             std::to_string(points[j].size()));
        for (std::size_t c = 0; c < points[j].size(); ++c)
            if (!std::isfinite(points[j][c])) throw FileError(at(at(path, j), c), "coordinate is not finite");
    }
}

void checkMasses(const std::vector<double>& masses, int n, const std::string& path) {
    if (static_cast<int>(masses.size()) != n)
        throw FileError(path, "expected " + std::to_string(n) + " masses, got " + std::to_string(masses.size()));
    for (std::size_t j = 0; j < masses.size(); ++j)
        if (!(masses[j] > 0.0) || !std::isfinite(masses[j])) {
            std::ostringstream msg;
            msg << "mass of body " << j + 1 << " must be positive and finite (got " << masses[j] << ")";
            throw FileError(at(path, j), msg.str());
        }
}

Json pointsJson(const Points& points) {
    Json arr = Json::array();
    for (const auto& p : points) arr.push_back(p);
    return arr;
}

Json problemJson(const ProblemFile& p) {
    Json j;
    j["n"] = p.n;
    j["d"] = p.d;
    j["alpha"] = p.alpha;
    j["masses"] = p.masses;
    j["massScale"] = p.massScale;
    if (p.positions) j["positions"] = pointsJson(*p.positions);
    j["rngSeed"] = p.rngSeed;
    j["solver"] = {{"method", p.solver.method},
                   {"maxIterations", p.solver.maxIterations},
                   {"residualTolerance", p.solver.residualTolerance},
                   {"starts", p.solver.starts}};
    return j;
}

ProblemFile problemFrom(const Json& j, const std::string& path) {
    ProblemFile p;
    p.n = asInt(require(j, "n", path), at(path, "n"));
    p.d = asInt(require(j, "d", path), at(path, "d"));
    p.alpha = asDouble(require(j, "alpha", path), at(path, "alpha"));
    p.masses = asDoubles(require(j, "masses", path), at(path, "masses"));
    if (j.contains("massScale")) p.massScale = asDouble(j["massScale"], at(path, "massScale"));
    if (j.contains("positions")) p.positions = asPoints(j["positions"], at(path, "positions"));
    if (j.contains("rngSeed")) {
        const Json& seed = j["rngSeed"];
        if (!seed.is_number_unsigned()) throw FileError(at(path, "rngSeed"), "expected a non-negative integer");
        p.rngSeed = seed.get<std::uint64_t>();
    }
    if (j.contains("solver")) {
        const Json& s = j["solver"];
        const std::string sp = at(path, "solver");
        if (!s.is_object()) throw FileError(sp, "expected an object");
        if (s.contains("method")) p.solver.method = asString(s["method"], at(sp, "method"));
        if (s.contains("maxIterations")) p.solver.maxIterations = asInt(s["maxIterations"], at(sp, "maxIterations"));
        if (s.contains("residualTolerance"))
            p.solver.residualTolerance = asDouble(s["residualTolerance"], at(sp, "residualTolerance"));
        if (s.contains("starts")) p.solver.starts = asInt(s["starts"], at(sp, "starts"));
    }
    return p;
}

}  // namespace

void ProblemFile::validate() const {
    if (n < 1) throw FileError("n", "body count must be at least 1");
    if (d < 1) throw FileError("d", "dimension must be at least 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw FileError("alpha", "alpha must be positive");
    checkMasses(masses, n, "masses");
    if (!(massScale > 0.0)) throw FileError("massScale", "must be positive");
    if (positions) checkPoints(*positions, n, d, "positions");
    if (solver.maxIterations < 1) throw FileError("solver.maxIterations", "must be at least 1");
    if (!(solver.residualTolerance > 0.0)) throw FileError("solver.residualTolerance", "must be positive");
    if (solver.starts < 1) throw FileError("solver.starts", "must be at least 1");
    try {
        methodFromString(solver.method);
    } catch (const std::exception& e) {
        throw FileError("solver.method", e.what());
    }
}

bool ProblemFile::normalizeMasses() {
    const double sum = std::accumulate(masses.begin(), masses.end(), 0.0);
    if (std::abs(sum - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(masses.size()))
        return false;
    for (double& m : masses) m /= sum;
    massScale *= sum;
    return true;
}

void CochainFile::validate() const {
    if (n < 2) throw FileError("n", "body count must be at least 2");
    if (d < 1) throw FileError("d", "dimension must be at least 1");
    checkMasses(masses, n, "masses");
    checkPoints(entries, pairCount(n), d, "entries");
}

std::string emitProblem(const ProblemFile& problem) { return problemJson(problem).dump(2) + "\n"; }

std::string emitSolution(const SolutionFile& s) {
    Json j;
    j["problem"] = problemJson(s.problem);
    j["label"] = s.label;
    j["method"] = s.method;
    j["configuration"] = pointsJson(s.configuration);
    j["lambda"] = s.lambda;
    j["residualNorm"] = s.residualNorm;
    j["iterations"] = s.iterations;
    j["morseIndex"] = s.morseIndex ? Json(*s.morseIndex) : Json(nullptr);
    j["spectrum"] = s.spectrum;
    j["classification"] = s.classification;
    j["toolVersion"] = s.toolVersion;
    if (s.timing) j["timing"] = *s.timing;
    return j.dump(2) + "\n";
}

std::string emitCochain(const CochainFile& c) {
    Json j;
    j["n"] = c.n;
    j["d"] = c.d;
    j["masses"] = c.masses;
    j["entries"] = pointsJson(c.entries);
    return j.dump(2) + "\n";
}

ProblemFile parseProblem(const std::string& text) {
    ProblemFile p = problemFrom(parseDocument(text), "");
    p.validate();
    return p;
}

SolutionFile parseSolution(const std::string& text) {
    const Json j = parseDocument(text);
    SolutionFile s;
    s.problem = problemFrom(require(j, "problem", ""), "problem");
    s.problem.validate();
    if (j.contains("label")) s.label = asString(j["label"], "label");
    if (j.contains("method")) s.method = asString(j["method"], "method");
    s.configuration = asPoints(require(j, "configuration", ""), "configuration");
    checkPoints(s.configuration, s.problem.n, s.problem.d, "configuration");
    s.lambda = asDouble(require(j, "lambda", ""), "lambda");
    s.residualNorm = asDouble(require(j, "residualNorm", ""), "residualNorm");
    if (j.contains("iterations")) s.iterations = asInt(j["iterations"], "iterations");
    if (j.contains("morseIndex") && !j["morseIndex"].is_null()) s.morseIndex = asInt(j["morseIndex"], "morseIndex");
    if (j.contains("spectrum")) s.spectrum = asDoubles(j["spectrum"], "spectrum");
    if (j.contains("classification")) {
        const Json& tags = j["classification"];
        if (!tags.is_array()) throw FileError("classification", "expected an array of strings");
        for (std::size_t i = 0; i < tags.size(); ++i) s.classification.push_back(asString(tags[i], at("classification", i)));
    }
    if (j.contains("toolVersion")) s.toolVersion = asString(j["toolVersion"], "toolVersion");
    if (j.contains("timing")) s.timing = asDouble(j["timing"], "timing");
    return s;
}

CochainFile parseCochain(const std::string& text) {
    const Json j = parseDocument(text);
    CochainFile c;
    c.n = asInt(require(j, "n", ""), "n");
    c.d = asInt(require(j, "d", ""), "d");
    c.masses = asDoubles(require(j, "masses", ""), "masses");
    c.entries = asPoints(require(j, "entries", ""), "entries");
    c.validate();
    return c;
}

bool isSolutionText(const std::string& text) {
    const Json j = parseDocument(text);
    return j.is_object() && j.contains("configuration");
}

SolutionFile toSolutionFile(const ProblemFile& problem, const CCSolution& sol) {
    SolutionFile s;
    s.problem = problem;
    s.label = sol.label;
    s.method = toString(sol.method);
    s.configuration = sol.configuration.toPoints();
    s.lambda = sol.lambda;
    s.residualNorm = sol.residualNorm;
    s.iterations = sol.iterations;
    s.morseIndex = sol.morseIndex;
    s.spectrum = sol.spectrum;
    s.classification = sol.classification;
    return s;
}

std::string positionsCsv(const Points& points) {
    std::ostringstream out;
    out.precision(17);
    out << "body";
    const std::size_t d = points.empty() ? 0 : points.front().size();
    for (std::size_t c = 0; c < d; ++c) out << ",x" << c + 1;
    out << "\n";
    for (std::size_t j = 0; j < points.size(); ++j) {
        out << j + 1;
        for (double x : points[j]) out << "," << x;
        out << "\n";
    }
    return out.str();
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("", "cannot write " + path);
    out << content;
    if (!out) throw FileError("", "write failed for " + path);
}

}  // namespace cocyc::cli
