#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "classify.hpp"
#include "lattice.hpp"
#include "transforms.hpp"

namespace dca {

using Json = nlohmann::json;

// Raised on malformed input; where() names the file, byte offset, or JSON
// path the problem was found at.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, std::string message);
  const std::string& where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  std::string where_;
  std::string message_;
};

struct QuadraticInstance {
  RatMat matrix;
  std::vector<int> y_block;
};

enum class InstanceKind { kSet, kFunction, kQuadratic };

// A parsed input file: exactly one of the three payloads is engaged,
// matching kind.
struct Instance {
  InstanceKind kind = InstanceKind::kSet;
  std::optional<LatticeSet> set;
  std::optional<DiscreteFunction> fn;
  std::optional<QuadraticInstance> quadratic;

  static Instance of(LatticeSet s);
  static Instance of(DiscreteFunction f);
  static Instance of(QuadraticInstance q);
};

// Scalar and small-structure converters shared by instances, reports, and
// CLI parameter files. The *_from_json functions throw ParseError with the
// given location on any shape or value problem.
Json rat_to_json(const Rat& v);
Rat rat_from_json(const Json& j, const std::string& where);
Json ext_to_json(const Ext& v);
Ext ext_from_json(const Json& j, const std::string& where);
Json lattice_point_to_json(const LatticePoint& x);
LatticePoint lattice_point_from_json(const Json& j, const std::string& where);
Json rational_point_to_json(const RationalPoint& x);
RationalPoint rational_point_from_json(const Json& j, const std::string& where);
Json box_to_json(const IntegerBox& box);
IntegerBox box_from_json(const Json& j, const std::string& where);

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
Json instance_to_json(const Instance& instance);

// dump with sorted keys and a trailing newline; parse -> serialize is a
// fixed point on already-canonical text.
std::string serialize_json(const Json& j);

// Reads and syntax-checks a JSON file without interpreting it; used for
// transform parameter files.
Json load_json_file(const std::string& path);

Json witness_to_json(const ViolationWitness& witness);
Json report_to_json(const CheckReport& report);
Json chain_to_json(const ChainVerdict& verdict);
Json quadratic_verdict_to_json(const QuadraticVerdict& verdict);
Json certificate_to_json(const SumCertificate& certificate);

const char* tool_version();

// Top-level report document: tool version, echoed command line, and the
// per-check payload under "reports".
Json report_file_json(const std::string& command, std::vector<Json> reports);

}  // namespace dca
