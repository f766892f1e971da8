#pragma once

// JSON and CSV serialization. Non-finite numbers are written as the strings
// "inf", "-inf" and "nan"; complex entries of complex schemes as [re, im].

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lscc/graph.hpp"
#include "lscc/harness.hpp"
#include "lscc/scheme.hpp"
#include "lscc/stability.hpp"

namespace lscc {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json numberToJson(double x);
double numberFromJson(const Json& j);

Json signalToJson(const Signal& f);
Signal signalFromJson(const Json& j, Field field);

Json schemeToJson(const LsccScheme& scheme);
/// Throws FormatError on malformed or inconsistent input.
LsccScheme schemeFromJson(const Json& j);

Json graphToJson(const WeightedGraph& g);
WeightedGraph graphFromJson(const Json& j);

Json cheegerToJson(const CheegerResult& c);
Json reportToJson(const StabilityReport& r);
StabilityReport reportFromJson(const Json& j);

Json fuzzReportToJson(const FuzzReport& r);
Json experimentToJson(const ExperimentSpec& e);

/// Reads and parses a JSON file; FormatError when missing or malformed.
Json readJsonFile(const std::string& path);
/// Pretty-printed (indent 2) with a trailing newline.
void writeJsonFile(const std::string& path, const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hashHex(std::uint64_t h);
/// FNV-1a of the file contents; FormatError when unreadable.
std::string fileHash(const std::string& path);

/// %.17g for doubles, inf / -inf / nan spelled out.
std::string formatDouble(double x);

class CsvWriter {
 public:
  using Cell = std::variant<double, long long, std::string>;

  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace lscc
