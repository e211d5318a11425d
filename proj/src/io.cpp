#include "io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace dca {

namespace {

std::string child(const std::string& where, const std::string& key) {
  return where + "." + key;
}

std::string element(const std::string& where, std::size_t index) {
  return where + "[" + std::to_string(index) + "]";
}

const Json& require_field(const Json& j, const std::string& key,
                          const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where, "missing field \"" + key + "\"");
  return *it;
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<int>();
}

Coord coord_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<Coord>();
}

std::vector<int> int_list_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(int_from_json(j[i], element(where, i)));
  }
  return out;
}

Json combination_to_json(const ConvexCombination& c) {
  Json support = Json::array();
  for (const auto& [point, weight] : c.support) {
    Json entry;
    entry["point"] = lattice_point_to_json(point);
    entry["weight"] = rat_to_json(weight);
    support.push_back(std::move(entry));
  }
  Json out;
  out["target"] = rational_point_to_json(c.target);
  out["support"] = std::move(support);
  return out;
}

Json halfspace_to_json(const Halfspace& h) {
  Json normal = Json::array();
  for (const Rat& v : h.normal) normal.push_back(rat_to_json(v));
  Json out;
  out["normal"] = std::move(normal);
  out["offset"] = rat_to_json(h.offset);
  return out;
}

}  // namespace

ParseError::ParseError(std::string where, std::string message)
    : std::runtime_error(where + ": " + message),
      where_(std::move(where)),
      message_(std::move(message)) {}

Instance Instance::of(LatticeSet s) {
  Instance out;
  out.kind = InstanceKind::kSet;
  out.set = std::move(s);
  return out;
}

Instance Instance::of(DiscreteFunction f) {
  Instance out;
  out.kind = InstanceKind::kFunction;
  out.fn = std::move(f);
  return out;
}

Instance Instance::of(QuadraticInstance q) {
  Instance out;
  out.kind = InstanceKind::kQuadratic;
  out.quadratic = std::move(q);
  return out;
}

Json rat_to_json(const Rat& v) { return format_rational(v); }

Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<Coord>());
  if (j.is_string()) {
    std::string text = j.get<std::string>();
    std::optional<Rat> parsed = parse_rational(text);
    if (!parsed) throw ParseError(where, "malformed rational \"" + text + "\"");
    return *parsed;
  }
  throw ParseError(where, "expected a rational as \"p/q\" string or integer");
}

Json ext_to_json(const Ext& v) {
  if (!v.finite()) return nullptr;
  return rat_to_json(v.value());
}

Ext ext_from_json(const Json& j, const std::string& where) {
  if (j.is_null()) return Ext::infinity();
  return Ext(rat_from_json(j, where));
}

Json lattice_point_to_json(const LatticePoint& x) {
  Json out = Json::array();
  for (Coord c : x) out.push_back(c);
  return out;
}

LatticePoint lattice_point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of integers");
  LatticePoint x;
  x.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    x.push_back(coord_from_json(j[i], element(where, i)));
  }
  return x;
}

Json rational_point_to_json(const RationalPoint& x) {
  Json out = Json::array();
  for (const Rat& v : x) out.push_back(rat_to_json(v));
  return out;
}

RationalPoint rational_point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of rationals");
  RationalPoint x;
  x.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    x.push_back(rat_from_json(j[i], element(where, i)));
  }
  return x;
}

Json box_to_json(const IntegerBox& box) {
  Json out;
  out["lo"] = lattice_point_to_json(box.lo());
  out["hi"] = lattice_point_to_json(box.hi());
  return out;
}

IntegerBox box_from_json(const Json& j, const std::string& where) {
  LatticePoint lo =
      lattice_point_from_json(require_field(j, "lo", where), child(where, "lo"));
  LatticePoint hi =
      lattice_point_from_json(require_field(j, "hi", where), child(where, "hi"));
  try {
    return IntegerBox(std::move(lo), std::move(hi));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  const std::string root = "$";
  if (!j.is_object()) throw ParseError(root, "expected a JSON object");
  std::string kind = require_field(j, "kind", root).is_string()
                         ? j["kind"].get<std::string>()
                         : throw ParseError(child(root, "kind"), "expected a string");
  int dim = int_from_json(require_field(j, "dim", root), child(root, "dim"));
  if (dim < 1) throw ParseError(child(root, "dim"), "dim must be >= 1");

  if (kind == "set") {
    const Json& pts = require_field(j, "points", root);
    if (!pts.is_array()) throw ParseError(child(root, "points"), "expected an array");
    std::vector<LatticePoint> points;
    points.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      points.push_back(
          lattice_point_from_json(pts[i], element(child(root, "points"), i)));
    }
    try {
      return Instance::of(LatticeSet(dim, std::move(points)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(child(root, "points"), e.what());
    }
  }

  if (kind == "function") {
    IntegerBox box =
        box_from_json(require_field(j, "box", root), child(root, "box"));
    if (box.dim() != dim) {
      throw ParseError(child(root, "box"), "box dimension disagrees with dim");
    }
    const Json& vals = require_field(j, "values", root);
    if (!vals.is_array()) throw ParseError(child(root, "values"), "expected an array");
    if (vals.size() != box.size()) {
      throw ParseError(child(root, "values"),
                       "expected " + std::to_string(box.size()) +
                           " entries in row-major box order, got " +
                           std::to_string(vals.size()));
    }
    std::vector<Ext> values;
    values.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      values.push_back(ext_from_json(vals[i], element(child(root, "values"), i)));
    }
    try {
      return Instance::of(DiscreteFunction(std::move(box), std::move(values)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(child(root, "values"), e.what());
    }
  }

  if (kind == "quadratic") {
    const Json& rows = require_field(j, "matrix", root);
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dim)) {
      throw ParseError(child(root, "matrix"),
                       "expected " + std::to_string(dim) + " rows");
    }
    QuadraticInstance q;
    q.matrix.resize(static_cast<std::size_t>(dim));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string row_where = element(child(root, "matrix"), r);
      if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(dim)) {
        throw ParseError(row_where,
                         "expected " + std::to_string(dim) + " entries");
      }
      q.matrix[r].reserve(rows[r].size());
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        q.matrix[r].push_back(rat_from_json(rows[r][c], element(row_where, c)));
      }
    }
    q.y_block = int_list_from_json(require_field(j, "y_block", root),
                                   child(root, "y_block"));
    for (std::size_t i = 0; i < q.y_block.size(); ++i) {
      if (q.y_block[i] < 0 || q.y_block[i] >= dim) {
        throw ParseError(element(child(root, "y_block"), i),
                         "index out of range");
      }
    }
    return Instance::of(std::move(q));
  }

  throw ParseError(child(root, "kind"),
                   "unknown kind \"" + kind + "\" (want set, function, or quadratic)");
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + " " + e.where(), e.message());
  }
}

Json instance_to_json(const Instance& instance) {
  Json out;
  switch (instance.kind) {
    case InstanceKind::kSet: {
      const LatticeSet& s = *instance.set;
      out["kind"] = "set";
      out["dim"] = s.dim();
      Json pts = Json::array();
      for (const LatticePoint& p : s.points()) {
        pts.push_back(lattice_point_to_json(p));
      }
      out["points"] = std::move(pts);
      break;
    }
    case InstanceKind::kFunction: {
      const DiscreteFunction& f = *instance.fn;
      out["kind"] = "function";
      out["dim"] = f.box().dim();
      out["box"] = box_to_json(f.box());
      Json vals = Json::array();
      f.box().for_each(
          [&](const LatticePoint& x) { vals.push_back(ext_to_json(f.at(x))); });
      out["values"] = std::move(vals);
      break;
    }
    case InstanceKind::kQuadratic: {
      const QuadraticInstance& q = *instance.quadratic;
      out["kind"] = "quadratic";
      out["dim"] = static_cast<int>(q.matrix.size());
      Json rows = Json::array();
      for (const RatVec& row : q.matrix) {
        Json cells = Json::array();
        for (const Rat& v : row) cells.push_back(rat_to_json(v));
        rows.push_back(std::move(cells));
      }
      out["matrix"] = std::move(rows);
      out["y_block"] = q.y_block;
      break;
    }
  }
  return out;
}

std::string serialize_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + " byte " + std::to_string(e.byte), e.what());
  }
}

Json witness_to_json(const ViolationWitness& witness) {
  Json out;
  out["kind"] = witness_kind_name(witness.kind);
  Json pts = Json::array();
  for (const RationalPoint& p : witness.points) {
    pts.push_back(rational_point_to_json(p));
  }
  out["points"] = std::move(pts);
  if (!witness.values.empty()) {
    Json vals = Json::array();
    for (const Ext& v : witness.values) vals.push_back(ext_to_json(v));
    out["values"] = std::move(vals);
  }
  if (!witness.levels.empty()) out["levels"] = witness.levels;
  if (witness.combination) {
    out["combination"] = combination_to_json(*witness.combination);
  }
  if (witness.separator) out["separator"] = halfspace_to_json(*witness.separator);
  return out;
}

Json report_to_json(const CheckReport& report) {
  Json out;
  out["property"] = report.property;
  out["verdict"] = report.verdict;
  out["pairs_checked"] = report.pairs_checked;
  if (!report.note.empty()) out["note"] = report.note;
  if (report.witness) out["witness"] = witness_to_json(*report.witness);
  return out;
}

Json chain_to_json(const ChainVerdict& verdict) {
  Json out;
  out["separable"] = verdict.separable;
  out["lnat"] = verdict.lnat;
  out["global_midpoint"] = verdict.global_midpoint;
  out["local_midpoint"] = verdict.local_midpoint;
  out["integrally_convex"] = verdict.integrally_convex;
  Json reports = Json::array();
  for (const CheckReport& r : verdict.reports) reports.push_back(report_to_json(r));
  out["reports"] = std::move(reports);
  return out;
}

Json quadratic_verdict_to_json(const QuadraticVerdict& verdict) {
  Json out;
  out["diagonally_dominant_ic"] = verdict.diagonally_dominant_ic;
  out["lnat_in_block"] = verdict.lnat_in_block;
  out["mnat_in_block"] = verdict.mnat_in_block;
  return out;
}

Json certificate_to_json(const SumCertificate& certificate) {
  Json out;
  switch (certificate.status) {
    case SumCertificate::Status::kCertified:
      out["status"] = "certified";
      break;
    case SumCertificate::Status::kOutsideHull:
      out["status"] = "outside-hull";
      break;
    case SumCertificate::Status::kPreconditionFailed:
      out["status"] = "precondition-failed";
      break;
  }
  if (certificate.combination) {
    out["combination"] = combination_to_json(*certificate.combination);
  }
  if (certificate.separator) {
    out["separator"] = halfspace_to_json(*certificate.separator);
  }
  if (certificate.hole) out["hole"] = rational_point_to_json(*certificate.hole);
  return out;
}

const char* tool_version() { return "0.1.0"; }

Json report_file_json(const std::string& command, std::vector<Json> reports) {
  Json out;
  out["version"] = tool_version();
  out["command"] = command;
  out["reports"] = std::move(reports);
  return out;
}

}  // namespace dca
