#include "dca/dca.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "classify.hpp"
#include "corpus.hpp"
#include "io.hpp"
#include "replay.hpp"
#include "transforms.hpp"

struct dca_instance {
  dca::Instance value;
};

struct dca_report {
  dca::Json doc;
  bool all_true = true;
};

namespace {

using dca::Instance;
using dca::InstanceKind;
using dca::Json;

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

dca_status fail(dca_status code, const std::string& message) {
  set_error(message);
  return code;
}

// Maps library exceptions onto status codes; bodies return their own
// status for the non-exceptional paths.
template <typename F>
dca_status guarded(F&& body) {
  try {
    return body();
  } catch (const dca::ParseError& e) {
    return fail(DCA_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(DCA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(DCA_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int max_dim() {
  const char* env = std::getenv("DCA_MAX_DIM");
  if (!env || !*env) return 6;
  char* end = nullptr;
  long parsed = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || parsed < 1) return 6;
  return static_cast<int>(parsed);
}

int instance_dim(const Instance& instance) {
  switch (instance.kind) {
    case InstanceKind::kSet:
      return instance.set->dim();
    case InstanceKind::kFunction:
      return instance.fn->dim();
    case InstanceKind::kQuadratic:
      return static_cast<int>(instance.quadratic->matrix.size());
  }
  return 0;
}

dca_status admit_instance(Instance parsed, dca_instance** out) {
  int limit = max_dim();
  if (instance_dim(parsed) > limit) {
    return fail(DCA_ERR_DIM_LIMIT,
                "instance dimension " + std::to_string(instance_dim(parsed)) +
                    " exceeds DCA_MAX_DIM=" + std::to_string(limit));
  }
  *out = new dca_instance{std::move(parsed)};
  set_error("");
  return DCA_OK;
}

// Parses an optional options/params object and rejects keys outside the
// allowed set, so a misspelled key never gets silently ignored.
Json parse_options(const char* json_text, std::initializer_list<const char*> allowed) {
  if (!json_text || !*json_text) return Json::object();
  Json parsed;
  try {
    parsed = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw dca::ParseError("options byte " + std::to_string(e.byte), e.what());
  }
  if (!parsed.is_object()) throw dca::ParseError("options", "expected an object");
  for (const auto& [key, unused] : parsed.items()) {
    (void)unused;
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) known = true;
    }
    if (!known) throw std::invalid_argument("unknown option \"" + key + "\"");
  }
  return parsed;
}

const dca::LatticeSet& want_set(const dca_instance* instance) {
  if (instance->value.kind != InstanceKind::kSet) {
    throw std::domain_error("this operation needs a set instance");
  }
  return *instance->value.set;
}

const dca::DiscreteFunction& want_fn(const dca_instance* instance) {
  if (instance->value.kind != InstanceKind::kFunction) {
    throw std::domain_error("this operation needs a function instance");
  }
  return *instance->value.fn;
}

const dca::QuadraticInstance& want_quadratic(const dca_instance* instance) {
  if (instance->value.kind != InstanceKind::kQuadratic) {
    throw std::domain_error("this operation needs a quadratic instance");
  }
  return *instance->value.quadratic;
}

dca::FnMidpointMode mode_from_options(const Json& options,
                                      dca::FnMidpointMode fallback,
                                      bool allow_all) {
  auto it = options.find("mode");
  if (it == options.end()) return fallback;
  if (!it->is_string()) throw std::invalid_argument("mode must be a string");
  std::string mode = it->get<std::string>();
  if (mode == "all" && allow_all) return dca::FnMidpointMode::kAll;
  if (mode == "global") return dca::FnMidpointMode::kGlobal;
  if (mode == "local") return dca::FnMidpointMode::kLocal;
  throw std::invalid_argument("unknown mode \"" + mode + "\"");
}

void replay_or_throw(const dca::CheckReport& rep, const dca::LatticeSet* set,
                     const dca::DiscreteFunction* fn) {
  std::string why;
  if (!dca::replay_report(rep, set, fn, &why)) {
    throw std::logic_error("witness for '" + rep.property +
                           "' failed replay: " + why);
  }
}

dca_report* report_from_checks(const std::string& command,
                               std::vector<dca::CheckReport> reps,
                               const dca::LatticeSet* set,
                               const dca::DiscreteFunction* fn) {
  bool all = true;
  std::vector<Json> docs;
  docs.reserve(reps.size());
  for (const dca::CheckReport& rep : reps) {
    replay_or_throw(rep, set, fn);
    all = all && rep.verdict;
    docs.push_back(dca::report_to_json(rep));
  }
  return new dca_report{dca::report_file_json(command, std::move(docs)), all};
}

}  // namespace

extern "C" {

const char* dca_version(void) { return dca::tool_version(); }

const char* dca_last_error(void) { return g_last_error.c_str(); }

void dca_string_free(char* s) { std::free(s); }

dca_status dca_instance_from_json(const char* json_text, dca_instance** out) {
  if (!json_text || !out) return fail(DCA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return admit_instance(dca::parse_instance(json_text), out); });
}

dca_status dca_instance_from_file(const char* path, dca_instance** out) {
  if (!path || !out) return fail(DCA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return admit_instance(dca::load_instance(path), out); });
}

dca_status dca_instance_to_json(const dca_instance* instance, char** out_json) {
  if (!instance || !out_json) return fail(DCA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(dca::serialize_json(dca::instance_to_json(instance->value)));
    if (!*out_json) return fail(DCA_ERR_INTERNAL, "out of memory");
    set_error("");
    return DCA_OK;
  });
}

void dca_instance_free(dca_instance* instance) { delete instance; }

dca_status dca_check(const dca_instance* instance, const char* name,
                     const char* options_json, dca_report** out) {
  if (!instance || !name || !out) {
    return fail(DCA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&]() -> dca_status {
    std::string check = name;
    try {
      if (check == "integrally-convex-set" || check == "dmc-set" ||
          check == "lnat-set") {
        parse_options(options_json, {});
        const dca::LatticeSet& s = want_set(instance);
        dca::CheckReport rep =
            check == "integrally-convex-set"
                ? dca::check_set_integrally_convex(s)
                : dca::check_set_midpoint(s, check == "dmc-set"
                                                 ? dca::SetMidpointMode::kDmc
                                                 : dca::SetMidpointMode::kLnat);
        *out = report_from_checks(check, {std::move(rep)}, &s, nullptr);
      } else if (check == "integrally-convex-fn" || check == "submodular-fn" ||
                 check == "lnat-fn" || check == "separable-fn") {
        parse_options(options_json, {});
        const dca::DiscreteFunction& f = want_fn(instance);
        dca::CheckReport rep = check == "integrally-convex-fn"
                                   ? dca::check_fn_integrally_convex(f)
                               : check == "submodular-fn" ? dca::check_fn_submodular(f)
                               : check == "lnat-fn"       ? dca::check_fn_lnat(f)
                                                          : dca::check_fn_separable(f);
        *out = report_from_checks(check, {std::move(rep)}, nullptr, &f);
      } else if (check == "midpoint-fn") {
        Json options = parse_options(options_json, {"mode"});
        const dca::DiscreteFunction& f = want_fn(instance);
        dca::FnMidpointMode mode =
            mode_from_options(options, dca::FnMidpointMode::kAll, true);
        *out = report_from_checks(check, {dca::check_fn_midpoint(f, mode)},
                                  nullptr, &f);
      } else if (check == "parallelogram") {
        Json options = parse_options(options_json, {"mode"});
        const dca::DiscreteFunction& f = want_fn(instance);
        dca::FnMidpointMode mode =
            mode_from_options(options, dca::FnMidpointMode::kGlobal, false);
        *out = report_from_checks(check, {dca::check_parallelogram(f, mode)},
                                  nullptr, &f);
      } else if (check == "argmin-ic") {
        Json options = parse_options(options_json, {"probes", "seed"});
        const dca::DiscreteFunction& f = want_fn(instance);
        int probes = 16;
        std::uint64_t seed = 1;
        if (auto it = options.find("probes"); it != options.end()) {
          if (!it->is_number_integer() || it->get<int>() < 1) {
            throw std::invalid_argument("probes must be a positive integer");
          }
          probes = it->get<int>();
        }
        if (auto it = options.find("seed"); it != options.end()) {
          if (!it->is_number_unsigned()) {
            throw std::invalid_argument("seed must be a nonnegative integer");
          }
          seed = it->get<std::uint64_t>();
        }
        *out = report_from_checks(
            check, {dca::check_argmin_characterization(f, probes, seed)}, nullptr,
            &f);
      } else if (check == "chain") {
        parse_options(options_json, {});
        const dca::DiscreteFunction& f = want_fn(instance);
        dca::ChainVerdict verdict = dca::classify_chain(f);
        for (const dca::CheckReport& rep : verdict.reports) {
          replay_or_throw(rep, nullptr, &f);
        }
        Json doc = dca::report_file_json(check, {dca::chain_to_json(verdict)});
        *out = new dca_report{std::move(doc), verdict.separable};
      } else if (check == "quadratic") {
        parse_options(options_json, {});
        const dca::QuadraticInstance& q = want_quadratic(instance);
        dca::QuadraticVerdict verdict = dca::classify_quadratic(q.matrix, q.y_block);
        Json doc =
            dca::report_file_json(check, {dca::quadratic_verdict_to_json(verdict)});
        bool all = verdict.diagonally_dominant_ic && verdict.lnat_in_block &&
                   verdict.mnat_in_block;
        *out = new dca_report{std::move(doc), all};
      } else {
        return fail(DCA_ERR_INVALID_ARGUMENT, "unknown check \"" + check + "\"");
      }
    } catch (const std::domain_error& e) {
      return fail(DCA_ERR_PRECONDITION, e.what());
    }
    set_error("");
    return DCA_OK;
  });
}

dca_status dca_transform(const dca_instance* const* inputs, size_t n_inputs,
                         const char* name, const char* params_json,
                         dca_instance** out, dca_report** out_report) {
  if (!inputs || !name) return fail(DCA_ERR_INVALID_ARGUMENT, "null argument");
  for (size_t i = 0; i < n_inputs; ++i) {
    if (!inputs[i]) return fail(DCA_ERR_INVALID_ARGUMENT, "null input handle");
  }
  if (out) *out = nullptr;
  if (out_report) *out_report = nullptr;
  return guarded([&]() -> dca_status {
    std::string op = name;
    auto expect_inputs = [&](size_t want) {
      if (n_inputs != want) {
        throw std::invalid_argument(op + " takes " + std::to_string(want) +
                                    " input instance(s), got " +
                                    std::to_string(n_inputs));
      }
    };
    auto keep_list = [&](const Json& params) {
      auto it = params.find("keep");
      if (it == params.end() || !it->is_array()) {
        throw std::invalid_argument(op + " needs a \"keep\" array of axis indices");
      }
      std::vector<int> keep;
      for (const auto& v : *it) {
        if (!v.is_number_integer()) {
          throw std::invalid_argument("keep entries must be integers");
        }
        keep.push_back(v.get<int>());
      }
      return keep;
    };
    auto metric_from = [&](const Json& params) {
      auto it = params.find("metric");
      if (it == params.end() || !it->is_string()) {
        throw std::invalid_argument(op + " needs a \"metric\" of l1 or squared-l2");
      }
      std::string metric = it->get<std::string>();
      if (metric == "l1") return dca::PenaltyKind::kL1;
      if (metric == "squared-l2") return dca::PenaltyKind::kSquaredL2;
      throw std::invalid_argument("unknown metric \"" + metric + "\"");
    };
    auto field = [&](const Json& params, const char* key) -> const Json& {
      auto it = params.find(key);
      if (it == params.end()) {
        throw std::invalid_argument(op + " needs a \"" + key + "\" parameter");
      }
      return *it;
    };

    std::optional<Instance> result;
    Json doc;
    doc["transform"] = op;
    bool all = true;
    try {
      if (op == "project-set") {
        expect_inputs(1);
        Json params = parse_options(params_json, {"keep"});
        result = Instance::of(dca::project_set(want_set(inputs[0]), keep_list(params)));
      } else if (op == "project-fn") {
        expect_inputs(1);
        Json params = parse_options(params_json, {"keep"});
        result = Instance::of(dca::project_fn(want_fn(inputs[0]), keep_list(params)));
      } else if (op == "minkowski") {
        expect_inputs(2);
        parse_options(params_json, {});
        result = Instance::of(
            dca::minkowski_sum(want_set(inputs[0]), want_set(inputs[1])));
      } else if (op == "convolve") {
        expect_inputs(2);
        parse_options(params_json, {});
        result =
            Instance::of(dca::convolve(want_fn(inputs[0]), want_fn(inputs[1])));
      } else if (op == "conjugate") {
        expect_inputs(1);
        Json params = parse_options(params_json, {"box"});
        dca::IntegerBox box = dca::box_from_json(field(params, "box"), "params.box");
        result = Instance::of(dca::conjugate(want_fn(inputs[0]), box));
      } else if (op == "penalty") {
        expect_inputs(1);
        Json params = parse_options(params_json, {"box", "metric", "weight"});
        dca::IntegerBox box = dca::box_from_json(field(params, "box"), "params.box");
        dca::Rat weight = dca::rat_from_json(field(params, "weight"), "params.weight");
        result = Instance::of(dca::penalty_distance(want_set(inputs[0]),
                                                    metric_from(params), weight, box));
      } else if (op == "extend") {
        expect_inputs(1);
        Json params = parse_options(params_json, {"box", "metric", "weight"});
        dca::IntegerBox box = dca::box_from_json(field(params, "box"), "params.box");
        dca::Rat weight = dca::rat_from_json(field(params, "weight"), "params.weight");
        dca::PenaltyExtension ext = dca::extend_with_penalty(
            want_fn(inputs[0]), metric_from(params), weight, box);
        doc["threshold"] = dca::rat_to_json(ext.threshold);
        result = Instance::of(std::move(ext.extension));
      } else if (op == "add") {
        expect_inputs(2);
        parse_options(params_json, {});
        result = Instance::of(
            dca::add_functions(want_fn(inputs[0]), want_fn(inputs[1])));
      } else if (op == "minimize") {
        expect_inputs(1);
        parse_options(params_json, {});
        dca::MinimizationResult min = dca::minimize_via_projection(want_fn(inputs[0]));
        doc["argmin"] = dca::lattice_point_to_json(min.argmin);
        doc["value"] = dca::rat_to_json(min.value);
      } else if (op == "segment-certificate") {
        expect_inputs(1);
        Json params = parse_options(params_json, {"axis", "lo", "hi", "x"});
        dca::SegmentBox segment;
        const Json& axis = field(params, "axis");
        const Json& lo = field(params, "lo");
        const Json& hi = field(params, "hi");
        if (!axis.is_number_integer() || !lo.is_number_integer() ||
            !hi.is_number_integer()) {
          throw std::invalid_argument("axis, lo, hi must be integers");
        }
        segment.axis = axis.get<int>();
        segment.lo = lo.get<dca::Coord>();
        segment.hi = hi.get<dca::Coord>();
        dca::RationalPoint x =
            dca::rational_point_from_json(field(params, "x"), "params.x");
        dca::SumCertificate cert =
            dca::segment_sum_certificate(want_set(inputs[0]), segment, x);
        doc["certificate"] = dca::certificate_to_json(cert);
        all = cert.status == dca::SumCertificate::Status::kCertified;
      } else {
        return fail(DCA_ERR_INVALID_ARGUMENT, "unknown transform \"" + op + "\"");
      }
    } catch (const std::domain_error& e) {
      return fail(DCA_ERR_PRECONDITION, e.what());
    }

    if (result && out) {
      int limit = max_dim();
      if (instance_dim(*result) > limit) {
        return fail(DCA_ERR_DIM_LIMIT,
                    "result dimension exceeds DCA_MAX_DIM=" + std::to_string(limit));
      }
      *out = new dca_instance{std::move(*result)};
    }
    if (out_report) *out_report = new dca_report{std::move(doc), all};
    set_error("");
    return DCA_OK;
  });
}

dca_status dca_run_examples(const char* options_json, dca_report** out) {
  if (!out) return fail(DCA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> dca_status {
    Json options = parse_options(options_json, {"only", "negative_control"});
    dca::CorpusOptions corpus_options;
    if (auto it = options.find("only"); it != options.end()) {
      if (!it->is_string()) throw std::invalid_argument("only must be a string");
      corpus_options.only = it->get<std::string>();
    }
    if (auto it = options.find("negative_control"); it != options.end()) {
      if (!it->is_boolean()) {
        throw std::invalid_argument("negative_control must be a boolean");
      }
      corpus_options.negative_control = it->get<bool>();
    }
    std::vector<dca::ExampleOutcome> outcomes = dca::run_examples(corpus_options);
    bool all = true;
    std::vector<Json> docs;
    docs.reserve(outcomes.size());
    for (const dca::ExampleOutcome& outcome : outcomes) {
      all = all && outcome.matches;
      docs.push_back(dca::example_outcome_to_json(outcome));
    }
    Json doc;
    doc["version"] = dca::tool_version();
    doc["command"] = "examples";
    doc["examples"] = std::move(docs);
    *out = new dca_report{std::move(doc), all};
    set_error("");
    return DCA_OK;
  });
}

dca_status dca_report_to_json(const dca_report* report, char** out_json) {
  if (!report || !out_json) return fail(DCA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(dca::serialize_json(report->doc));
    if (!*out_json) return fail(DCA_ERR_INTERNAL, "out of memory");
    set_error("");
    return DCA_OK;
  });
}

int dca_report_all_true(const dca_report* report) {
  return report && report->all_true ? 1 : 0;
}

void dca_report_free(dca_report* report) { delete report; }

}  // extern "C"
