#pragma once

// Verification suites over all modules, and the numbered acceptance
// criteria, with JSON reports.

#include "teich/json_io.hpp"
#include "teich/qdilog.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace teich::verify {

using json_io::Json;

struct Property {
    std::string name;
    bool exact = true;
    bool passed = false;
    double residual = 0;   // numeric properties only
    double tolerance = 0;  // numeric properties only
    Json details = Json::object();
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    Json parameters = Json::object();
    std::vector<Property> properties;
    std::optional<double> runtime_seconds;

    bool passed() const;
    // Byte-stable for fixed inputs unless runtime_seconds is set.
    Json to_json() const;
    void append(const VerificationReport& other, const std::string& prefix);
};

struct SuiteOptions {
    int genus = 1;
    int punctures = 1;
    std::uint64_t seed = 7;
    int samples = 100;
    std::vector<int> N{2, 3, 5};
    std::vector<double> hbar{0.3, 1.0, std::numbers::pi / 2};
    qdilog::Grid grid;
};

class UnknownSuite : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// classical, quantum-compact, qdilog, all
const std::vector<std::string>& suite_names();
VerificationReport run_suite(const std::string& name, const SuiteOptions& options);

VerificationReport classical_suite(const SuiteOptions& options);
VerificationReport quantum_compact_suite(const SuiteOptions& options);
VerificationReport qdilog_suite(const SuiteOptions& options);

struct Criterion {
    int id = 0;
    std::string title;
    double time_limit_seconds = 0;
};
const std::vector<Criterion>& acceptance_criteria();
// Throws std::out_of_range for ids outside 1..11.
VerificationReport run_criterion(int id, std::uint64_t seed);

// Closed words based at dit: pentagon (when a site exists, with its
// preparation undone), double flips on every flippable edge, a triple rotation.
struct NamedWord {
    std::string name;
    MoveWord word;
};
std::vector<NamedWord> closed_words(const DecoratedTriangulation& dit);

// A flip followed by the relabel back onto dit, when the flipped
// triangulation is isomorphic to dit.
std::optional<MoveWord> flip_mapping_class(const DecoratedTriangulation& dit, EdgeId e);

}  // namespace teich::verify
