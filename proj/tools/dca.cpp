// Command-line front end over the C API: loads instance files, dispatches
// checks and transforms, and reproduces the embedded example corpus.
// Exit codes: 0 all verdicts true / transform succeeded, 1 at least one
// false verdict or mismatch, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dca/dca.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitAllTrue = 0;
constexpr int kExitFalseVerdict = 1;
constexpr int kExitUsage = 2;

int fail_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

int fail_api(const char* what) {
  std::cerr << "error: " << what << ": " << dca_last_error() << "\n";
  return kExitUsage;
}

// RAII wrappers so early returns cannot leak C handles.
struct InstanceHandle {
  dca_instance* ptr = nullptr;
  ~InstanceHandle() { dca_instance_free(ptr); }
};

struct ReportHandle {
  dca_report* ptr = nullptr;
  ~ReportHandle() { dca_report_free(ptr); }
};

std::string report_json(const dca_report* report) {
  char* text = nullptr;
  if (dca_report_to_json(report, &text) != DCA_OK) return "{}";
  std::string out = text;
  dca_string_free(text);
  return out;
}

bool write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) return false;
  out << text;
  return bool(out);
}

std::string render_point(const Json& point) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ",";
    if (point[i].is_string()) {
      out += point[i].get<std::string>();
    } else {
      out += point[i].dump();
    }
  }
  return out + ")";
}

std::string render_witness(const Json& witness) {
  std::string out = witness.value("kind", std::string("?"));
  if (witness.contains("points")) {
    out += " at";
    for (const Json& p : witness["points"]) out += " " + render_point(p);
  }
  if (witness.contains("values")) {
    out += ", values";
    for (const Json& v : witness["values"]) {
      out += v.is_null() ? " +inf" : " " + v.get<std::string>();
    }
  }
  return out;
}

void render_report_lines(const Json& doc, std::ostream& os) {
  if (!doc.contains("reports")) return;
  for (const Json& rep : doc["reports"]) {
    if (rep.contains("property")) {
      os << rep["property"].get<std::string>() << ": "
         << (rep.value("verdict", false) ? "true" : "false");
      if (rep.contains("pairs_checked")) {
        os << " (" << rep["pairs_checked"].get<std::uint64_t>() << " pairs)";
      }
      if (rep.contains("note")) os << " [" << rep["note"].get<std::string>() << "]";
      os << "\n";
      if (rep.contains("witness")) {
        os << "  witness: " << render_witness(rep["witness"]) << "\n";
      }
    } else {
      // chain / quadratic structured verdicts
      for (const auto& [key, value] : rep.items()) {
        if (value.is_boolean()) {
          os << key << ": " << (value.get<bool>() ? "true" : "false") << "\n";
        }
      }
    }
  }
}

std::string build_check_options(const std::optional<std::string>& mode,
                                const std::optional<int>& probes,
                                const std::optional<std::uint64_t>& seed) {
  Json options = Json::object();
  if (mode) options["mode"] = *mode;
  if (probes) options["probes"] = *probes;
  if (seed) options["seed"] = *seed;
  return options.empty() ? std::string() : options.dump();
}

int run_check(const std::string& name, const std::vector<std::string>& files,
              const std::string& out_path, const std::string& options,
              bool as_json) {
  std::vector<Json> run_docs;
  bool all = true;
  std::ostringstream human;
  for (const std::string& file : files) {
    InstanceHandle instance;
    if (dca_instance_from_file(file.c_str(), &instance.ptr) != DCA_OK) {
      return fail_api(file.c_str());
    }
    ReportHandle report;
    if (dca_check(instance.ptr, name.c_str(),
                  options.empty() ? nullptr : options.c_str(),
                  &report.ptr) != DCA_OK) {
      return fail_api(file.c_str());
    }
    all = all && dca_report_all_true(report.ptr) == 1;
    Json doc = Json::parse(report_json(report.ptr));
    if (files.size() > 1) human << file << ":\n";
    render_report_lines(doc, human);
    if (files.size() > 1) {
      Json run;
      run["file"] = file;
      run["report"] = std::move(doc);
      run_docs.push_back(std::move(run));
    } else {
      run_docs.push_back(std::move(doc));
    }
  }
  std::string payload;
  if (as_json) {
    Json out = files.size() > 1 ? Json{{"command", "check " + name},
                                       {"runs", run_docs}}
                                : run_docs[0];
    payload = out.dump(2) + "\n";
  } else {
    payload = human.str();
  }
  if (!write_output(payload, out_path)) {
    return fail_usage("cannot write " + out_path);
  }
  return all ? kExitAllTrue : kExitFalseVerdict;
}

struct TransformShape {
  size_t instances = 1;
  bool wants_params = false;
};

std::optional<TransformShape> transform_shape(const std::string& name) {
  if (name == "minkowski" || name == "convolve" || name == "add") {
    return TransformShape{2, false};
  }
  if (name == "minimize") return TransformShape{1, false};
  if (name == "project-set" || name == "project-fn" || name == "conjugate" ||
      name == "penalty" || name == "extend" || name == "segment-certificate") {
    return TransformShape{1, true};
  }
  return std::nullopt;
}

int run_transform(const std::string& name, const std::vector<std::string>& files,
                  const std::string& out_path) {
  auto shape = transform_shape(name);
  if (!shape) return fail_usage("unknown transform \"" + name + "\"");
  size_t want_files = shape->instances + (shape->wants_params ? 1 : 0);
  if (files.size() != want_files) {
    return fail_usage(name + " takes " + std::to_string(shape->instances) +
                      " instance file(s)" +
                      (shape->wants_params ? " plus a params file" : "") +
                      ", got " + std::to_string(files.size()) + " file(s)");
  }

  std::vector<InstanceHandle> handles(shape->instances);
  std::vector<const dca_instance*> raw;
  for (size_t i = 0; i < shape->instances; ++i) {
    if (dca_instance_from_file(files[i].c_str(), &handles[i].ptr) != DCA_OK) {
      return fail_api(files[i].c_str());
    }
    raw.push_back(handles[i].ptr);
  }

  std::string params;
  if (shape->wants_params) {
    std::ifstream in(files.back(), std::ios::binary);
    if (!in) return fail_usage("cannot open " + files.back());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    params = buffer.str();
  }

  InstanceHandle result;
  ReportHandle report;
  if (dca_transform(raw.data(), raw.size(), name.c_str(),
                    params.empty() ? nullptr : params.c_str(), &result.ptr,
                    &report.ptr) != DCA_OK) {
    return fail_api(name.c_str());
  }

  std::string payload;
  if (result.ptr) {
    char* text = nullptr;
    if (dca_instance_to_json(result.ptr, &text) != DCA_OK) {
      return fail_api(name.c_str());
    }
    payload = text;
    dca_string_free(text);
  } else {
    payload = report_json(report.ptr);
  }
  if (!write_output(payload, out_path)) {
    return fail_usage("cannot write " + out_path);
  }
  return dca_report_all_true(report.ptr) == 1 ? kExitAllTrue : kExitFalseVerdict;
}

int run_examples_cmd(const std::optional<std::string>& only,
                     const std::string& out_path, bool as_json) {
  Json options = Json::object();
  if (only) options["only"] = *only;
  std::string options_text = options.empty() ? std::string() : options.dump();
  ReportHandle report;
  if (dca_run_examples(options_text.empty() ? nullptr : options_text.c_str(),
                       &report.ptr) != DCA_OK) {
    return fail_api("examples");
  }
  std::string payload;
  if (as_json) {
    payload = report_json(report.ptr);
  } else {
    Json doc = Json::parse(report_json(report.ptr));
    std::ostringstream human;
    for (const Json& example : doc["examples"]) {
      human << example["id"].get<std::string>() << " ("
            << example["title"].get<std::string>() << "): "
            << (example.value("matches", false) ? "ok" : "MISMATCH") << "\n";
      for (const Json& line : example["detail"]) {
        human << "  " << line.get<std::string>() << "\n";
      }
    }
    payload = human.str();
  }
  if (!write_output(payload, out_path)) {
    return fail_usage("cannot write " + out_path);
  }
  return dca_report_all_true(report.ptr) == 1 ? kExitAllTrue : kExitFalseVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete convexity toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return std::string(dca_version()); });

  std::string check_name;
  std::vector<std::string> check_files;
  std::string check_out;
  bool check_json = false;
  std::optional<std::string> check_mode;
  std::optional<int> check_probes;
  std::optional<std::uint64_t> check_seed;
  CLI::App* check = app.add_subcommand("check", "run a membership check");
  check->add_option("name", check_name, "check name")->required();
  check->add_option("files", check_files, "instance file(s)")->required();
  check->add_option("--out", check_out, "write the report here instead of stdout");
  check->add_flag("--json", check_json, "emit the machine-readable report");
  check->add_option("--mode", check_mode, "midpoint mode: all, global, or local")
      ->check(CLI::IsMember({"all", "global", "local"}));
  check->add_option("--probes", check_probes, "argmin-ic probe budget");
  check->add_option("--seed", check_seed, "argmin-ic probe seed");

  std::string transform_name;
  std::vector<std::string> transform_files;
  std::string transform_out;
  bool transform_json = false;
  CLI::App* transform = app.add_subcommand("transform", "apply an operation");
  transform->add_option("name", transform_name, "transform name")->required();
  transform->add_option("files", transform_files,
                        "instance file(s), then a params file when needed")
      ->required();
  transform->add_option("--out", transform_out,
                        "write the result here instead of stdout");
  transform->add_flag("--json", transform_json,
                      "results are always JSON; accepted for symmetry");

  std::optional<std::string> examples_only;
  std::string examples_out;
  bool examples_json = false;
  CLI::App* examples =
      app.add_subcommand("examples", "reproduce the embedded example corpus");
  examples->add_option("--only", examples_only, "run a single example id");
  examples->add_option("--out", examples_out,
                       "write the report here instead of stdout");
  examples->add_flag("--json", examples_json, "emit the machine-readable report");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) {
    return run_check(check_name, check_files, check_out,
                     build_check_options(check_mode, check_probes, check_seed),
                     check_json);
  }
  if (transform->parsed()) {
    return run_transform(transform_name, transform_files, transform_out);
  }
  if (examples->parsed()) {
    return run_examples_cmd(examples_only, examples_out, examples_json);
  }
  return fail_usage("no subcommand");
}
