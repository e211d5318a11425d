#include <doctest.h>

#include <dca/dca.h>

#include <cstdlib>
#include <string>

#include <json.hpp>

namespace {

using Json = nlohmann::json;

// Builds an instance handle from a JSON literal, failing the test on error.
dca_instance* make_instance(const std::string& text) {
  dca_instance* out = nullptr;
  REQUIRE(dca_instance_from_json(text.c_str(), &out) == DCA_OK);
  REQUIRE(out != nullptr);
  return out;
}

Json report_json(dca_report* report) {
  char* text = nullptr;
  REQUIRE(dca_report_to_json(report, &text) == DCA_OK);
  Json parsed = Json::parse(text);
  dca_string_free(text);
  return parsed;
}

TEST_CASE("the library reports its version") {
  CHECK(std::string(dca_version()) == "0.1.0");
}

TEST_CASE("instances round trip through the handle API") {
  dca_instance* inst = make_instance(
      R"({"kind": "set", "dim": 2, "points": [[0, 0], [1, 1]]})");
  char* text = nullptr;
  REQUIRE(dca_instance_to_json(inst, &text) == DCA_OK);
  Json j = Json::parse(text);
  CHECK(j["kind"] == Json("set"));
  CHECK(j["dim"] == Json(2));
  CHECK(j["points"].size() == 2);
  dca_string_free(text);
  dca_instance_free(inst);

  dca_instance* unused = nullptr;
  CHECK(dca_instance_from_json(nullptr, &unused) == DCA_ERR_INVALID_ARGUMENT);
  CHECK(dca_instance_from_json("{}", nullptr) == DCA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("malformed instance text maps to the parse status") {
  dca_instance* out = nullptr;
  CHECK(dca_instance_from_json("{bad", &out) == DCA_ERR_PARSE);
  CHECK(std::string(dca_last_error()).find("byte") != std::string::npos);

  CHECK(dca_instance_from_json(R"({"kind": "set", "dim": 0, "points": []})",
                               &out) == DCA_ERR_PARSE);
  CHECK(std::string(dca_last_error()).find("$.dim") != std::string::npos);

  CHECK(dca_instance_from_file("/tmp/dca-capi-no-such-file.json", &out) ==
        DCA_ERR_PARSE);
  CHECK(std::string(dca_last_error()).find("cannot open file") !=
        std::string::npos);
}

TEST_CASE("a passing check reports a positive verdict and clears the error") {
  dca_instance* inst = make_instance(
      R"({"kind": "set", "dim": 2, "points": [[0, 0], [1, 0], [0, 1], [1, 1]]})");
  dca_report* rep = nullptr;
  REQUIRE(dca_check(inst, "integrally-convex-set", nullptr, &rep) == DCA_OK);
  CHECK(std::string(dca_last_error()).empty());
  CHECK(dca_report_all_true(rep) == 1);

  Json j = report_json(rep);
  CHECK(j["version"] == Json(dca_version()));
  CHECK(j["command"] == Json("integrally-convex-set"));
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["property"] == Json("integrally-convex-set"));
  CHECK(j["reports"][0]["verdict"] == Json(true));

  dca_report_free(rep);
  dca_instance_free(inst);
}

TEST_CASE("a failing check reports the witness without failing the call") {
  dca_instance* inst = make_instance(
      R"({"kind": "set", "dim": 2, "points": [[1, 0], [0, 1], [2, 1], [1, 2]]})");
  dca_report* rep = nullptr;
  REQUIRE(dca_check(inst, "integrally-convex-set", nullptr, &rep) == DCA_OK);
  CHECK(dca_report_all_true(rep) == 0);

  Json j = report_json(rep);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["verdict"] == Json(false));
  CHECK(j["reports"][0]["witness"]["kind"] == Json("hole-point"));

  dca_report_free(rep);
  dca_instance_free(inst);
}

TEST_CASE("check dispatch validates the name, the kind, and the options") {
  dca_instance* set = make_instance(
      R"({"kind": "set", "dim": 1, "points": [[0], [1]]})");
  dca_report* rep = nullptr;

  CHECK(dca_check(set, "frobnicate", nullptr, &rep) == DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("unknown check \"frobnicate\"") !=
        std::string::npos);

  CHECK(dca_check(set, "integrally-convex-fn", nullptr, &rep) ==
        DCA_ERR_PRECONDITION);
  CHECK(std::string(dca_last_error()) == "this operation needs a function instance");

  CHECK(dca_check(nullptr, "chain", nullptr, &rep) == DCA_ERR_INVALID_ARGUMENT);
  dca_instance_free(set);

  dca_instance* fn = make_instance(
      R"({"kind": "function", "dim": 1, "box": {"lo": [0], "hi": [2]},)"
      R"( "values": [1, 0, 1]})");
  CHECK(dca_check(fn, "midpoint-fn", R"({"mod": "all"})", &rep) ==
        DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("unknown option \"mod\"") !=
        std::string::npos);

  CHECK(dca_check(fn, "midpoint-fn", "{", &rep) == DCA_ERR_PARSE);
  CHECK(std::string(dca_last_error()).find("options byte") != std::string::npos);

  CHECK(dca_check(fn, "midpoint-fn", R"({"mode": "sideways"})", &rep) ==
        DCA_ERR_INVALID_ARGUMENT);

  CHECK(dca_check(fn, "parallelogram", R"({"mode": "all"})", &rep) ==
        DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("unknown mode \"all\"") !=
        std::string::npos);

  CHECK(dca_check(fn, "argmin-ic", R"({"probes": 0})", &rep) ==
        DCA_ERR_INVALID_ARGUMENT);

  REQUIRE(dca_check(fn, "midpoint-fn", R"({"mode": "global"})", &rep) == DCA_OK);
  Json j = report_json(rep);
  CHECK(j["reports"][0]["property"] == Json("midpoint-fn-global"));
  CHECK(dca_report_all_true(rep) == 1);
  dca_report_free(rep);
  dca_instance_free(fn);
}

TEST_CASE("the chain check runs all five classifiers at once") {
  dca_instance* fn = make_instance(
      R"({"kind": "function", "dim": 2, "box": {"lo": [0, 0], "hi": [1, 1]},)"
      R"( "values": [0, 1, 1, 2]})");
  dca_report* rep = nullptr;
  REQUIRE(dca_check(fn, "chain", nullptr, &rep) == DCA_OK);
  CHECK(dca_report_all_true(rep) == 1);

  Json j = report_json(rep);
  REQUIRE(j["reports"].size() == 1);
  const Json& chain = j["reports"][0];
  CHECK(chain["separable"] == Json(true));
  CHECK(chain["integrally_convex"] == Json(true));
  CHECK(chain["reports"].size() == 5);

  dca_report_free(rep);
  dca_instance_free(fn);
}

TEST_CASE("the dimension cap comes from the environment") {
  const std::string seven =
      R"({"kind": "set", "dim": 7, "points": [[0, 0, 0, 0, 0, 0, 0]]})";
  dca_instance* out = nullptr;
  CHECK(dca_instance_from_json(seven.c_str(), &out) == DCA_ERR_DIM_LIMIT);
  CHECK(std::string(dca_last_error()).find("DCA_MAX_DIM=6") != std::string::npos);

  setenv("DCA_MAX_DIM", "2", 1);
  const std::string three =
      R"({"kind": "set", "dim": 3, "points": [[0, 0, 0]]})";
  CHECK(dca_instance_from_json(three.c_str(), &out) == DCA_ERR_DIM_LIMIT);

  setenv("DCA_MAX_DIM", "3", 1);
  REQUIRE(dca_instance_from_json(three.c_str(), &out) == DCA_OK);
  dca_instance_free(out);
  unsetenv("DCA_MAX_DIM");
}

TEST_CASE("transforms produce result handles and operation reports") {
  dca_instance* a = make_instance(
      R"({"kind": "set", "dim": 2, "points": [[0, 0], [1, 0]]})");
  dca_instance* b = make_instance(
      R"({"kind": "set", "dim": 2, "points": [[0, 0], [0, 1]]})");

  const dca_instance* pair[] = {a, b};
  dca_instance* sum = nullptr;
  dca_report* rep = nullptr;
  REQUIRE(dca_transform(pair, 2, "minkowski", nullptr, &sum, &rep) == DCA_OK);
  REQUIRE(sum != nullptr);
  CHECK(dca_report_all_true(rep) == 1);
  CHECK(report_json(rep)["transform"] == Json("minkowski"));
  dca_report_free(rep);

  char* text = nullptr;
  REQUIRE(dca_instance_to_json(sum, &text) == DCA_OK);
  CHECK(Json::parse(text)["points"].size() == 4);
  dca_string_free(text);

  const dca_instance* one[] = {sum};
  dca_instance* shadow = nullptr;
  REQUIRE(dca_transform(one, 1, "project-set", R"({"keep": [0]})", &shadow,
                        nullptr) == DCA_OK);
  REQUIRE(dca_instance_to_json(shadow, &text) == DCA_OK);
  Json j = Json::parse(text);
  CHECK(j["dim"] == Json(1));
  CHECK(j["points"] == Json::parse("[[0], [1]]"));
  dca_string_free(text);

  dca_instance_free(shadow);
  dca_instance_free(sum);
  dca_instance_free(b);
  dca_instance_free(a);
}

TEST_CASE("minimize returns only a report") {
  dca_instance* fn = make_instance(
      R"({"kind": "function", "dim": 2, "box": {"lo": [0, 0], "hi": [2, 1]},)"
      R"( "values": [3, 2, 1, 0, 2, 0]})");
  const dca_instance* one[] = {fn};
  dca_instance* out = reinterpret_cast<dca_instance*>(1);
  dca_report* rep = nullptr;
  REQUIRE(dca_transform(one, 1, "minimize", nullptr, &out, &rep) == DCA_OK);
  CHECK(out == nullptr);
  Json j = report_json(rep);
  CHECK(j["transform"] == Json("minimize"));
  CHECK(j["argmin"] == Json::parse("[1, 1]"));
  CHECK(j["value"] == Json("0"));
  dca_report_free(rep);
  dca_instance_free(fn);
}

TEST_CASE("segment certificates come back inside the report") {
  dca_instance* set = make_instance(
      R"({"kind": "set", "dim": 2, "points": [[0, 0], [1, 1]]})");
  const dca_instance* one[] = {set};
  dca_report* rep = nullptr;
  REQUIRE(dca_transform(one, 1, "segment-certificate",
                        R"({"axis": 0, "lo": 0, "hi": 1, "x": ["1/2", "1/2"]})",
                        nullptr, &rep) == DCA_OK);
  CHECK(dca_report_all_true(rep) == 1);
  Json j = report_json(rep);
  CHECK(j["certificate"]["status"] == Json("certified"));
  CHECK(j["certificate"]["combination"]["support"].size() >= 1);
  dca_report_free(rep);
  dca_instance_free(set);
}

TEST_CASE("transform dispatch validates the name, the arity, and the params") {
  dca_instance* set = make_instance(
      R"({"kind": "set", "dim": 1, "points": [[0]]})");
  const dca_instance* one[] = {set};
  dca_instance* out = nullptr;
  dca_report* rep = nullptr;

  CHECK(dca_transform(one, 1, "teleport", nullptr, &out, &rep) ==
        DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("unknown transform \"teleport\"") !=
        std::string::npos);

  CHECK(dca_transform(one, 1, "minkowski", nullptr, &out, &rep) ==
        DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("takes 2 input instance(s), got 1") !=
        std::string::npos);

  CHECK(dca_transform(one, 1, "project-set", "{}", &out, &rep) ==
        DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("\"keep\" array") != std::string::npos);

  // Missing parameters are reported before the instance kind is examined.
  CHECK(dca_transform(one, 1, "conjugate", "{}", &out, &rep) ==
        DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("\"box\" parameter") != std::string::npos);

  CHECK(dca_transform(one, 1, "conjugate", R"({"box": {"lo": [0, 0], "hi": [1, 1]}})",
                      &out, &rep) == DCA_ERR_PRECONDITION);
  CHECK(std::string(dca_last_error()) == "this operation needs a function instance");

  const dca_instance* none[] = {nullptr};
  CHECK(dca_transform(none, 1, "project-set", R"({"keep": [0]})", &out, &rep) ==
        DCA_ERR_INVALID_ARGUMENT);

  dca_instance_free(set);
}

TEST_CASE("the embedded examples run green by default") {
  dca_report* rep = nullptr;
  REQUIRE(dca_run_examples(nullptr, &rep) == DCA_OK);
  CHECK(dca_report_all_true(rep) == 1);
  Json j = report_json(rep);
  CHECK(j["command"] == Json("examples"));
  CHECK(j["examples"].size() == 6);
  for (const Json& example : j["examples"]) {
    CHECK(example["matches"] == Json(true));
  }
  dca_report_free(rep);
}

TEST_CASE("the negative control flips the conjugate example red") {
  dca_report* rep = nullptr;
  REQUIRE(dca_run_examples(R"({"only": "ex51", "negative_control": true})",
                           &rep) == DCA_OK);
  CHECK(dca_report_all_true(rep) == 0);
  Json j = report_json(rep);
  REQUIRE(j["examples"].size() == 1);
  CHECK(j["examples"][0]["matches"] == Json(false));
  dca_report_free(rep);

  REQUIRE(dca_run_examples(R"({"only": "ex51"})", &rep) == DCA_OK);
  CHECK(dca_report_all_true(rep) == 1);
  dca_report_free(rep);

  CHECK(dca_run_examples(R"({"only": "bogus"})", &rep) ==
        DCA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(dca_last_error()).find("unknown example id \"bogus\"") !=
        std::string::npos);
}

}  // namespace
