#include "corpus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "classify.hpp"
#include "geometry.hpp"
#include "replay.hpp"
#include "transforms.hpp"

namespace dca {

namespace {

// Collects sub-assertion outcomes as human-readable lines; a single miss
// flips the whole example to a mismatch.
struct Assertions {
  std::vector<std::string> detail;
  bool all = true;

  void expect(bool ok, const std::string& line) {
    detail.push_back(line + (ok ? ": yes" : ": NO"));
    all = all && ok;
  }
};

std::string point_str(const LatticePoint& x) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out << ",";
    out << x[i];
  }
  out << ")";
  return out.str();
}

// Runs a replay pass on the report before recording it, so every emitted
// report in the corpus output is certificate-checked.
void record(Assertions& a, std::vector<Json>& reports, const CheckReport& rep,
            const LatticeSet* set, const DiscreteFunction* fn) {
  std::string why;
  bool ok = replay_report(rep, set, fn, &why);
  a.expect(ok, "report '" + rep.property + "' replays" +
                   (ok ? "" : " (" + why + ")"));
  reports.push_back(report_to_json(rep));
}

// The stated failing pair must itself break the midpoint rule, whatever
// pair the deterministic scan reported first.
void expect_set_pair_violates(Assertions& a, const LatticeSet& s,
                              const LatticePoint& x, const LatticePoint& y,
                              const LatticePoint& expected_up,
                              const LatticePoint& expected_dn) {
  auto [up, dn] = rounded_midpoints(x, y);
  a.expect(up == expected_up && dn == expected_dn,
           "rounded midpoints of " + point_str(x) + "," + point_str(y) +
               " are " + point_str(expected_up) + "," + point_str(expected_dn));
  a.expect(s.contains(x) && s.contains(y) && !s.contains(up) && !s.contains(dn),
           "stated pair lies in the set and both midpoints are missing");
}

DiscreteFunction zero_one_table(const IntegerBox& box, const LatticeSet& zeros) {
  std::vector<Ext> values(box.size(), Ext(Rat(1)));
  for (const LatticePoint& p : zeros.points()) {
    values[box.index_of(p)] = Ext(Rat(0));
  }
  return DiscreteFunction(box, std::move(values));
}

ExampleOutcome example_sum_hole() {
  ExampleOutcome out;
  out.id = "ex31";
  out.title = "planar Minkowski sum with a hull hole";
  Assertions a;

  LatticeSet s1(2, {{0, 0}, {1, 1}});
  LatticeSet s2(2, {{1, 0}, {0, 1}});
  LatticeSet sum = minkowski_sum(s1, s2);
  LatticeSet expected(2, {{1, 0}, {0, 1}, {2, 1}, {1, 2}});
  a.expect(sum == expected, "sum equals the four expected points");
  a.expect(!sum.contains({1, 1}), "(1,1) is not in the sum");

  record(a, out.reports, check_set_integrally_convex(s1), &s1, nullptr);
  record(a, out.reports, check_set_integrally_convex(s2), &s2, nullptr);
  a.expect(check_set_integrally_convex(s1).verdict, "first summand is integrally convex");
  a.expect(check_set_integrally_convex(s2).verdict, "second summand is integrally convex");

  CheckReport rep = check_set_integrally_convex(sum);
  record(a, out.reports, rep, &sum, nullptr);
  a.expect(!rep.verdict, "the sum is not integrally convex");
  bool hole_at_11 = rep.witness && rep.witness->kind == WitnessKind::kHolePoint &&
                    rep.witness->points.size() >= 1 &&
                    rep.witness->points[0] == RationalPoint{Rat(1), Rat(1)};
  a.expect(hole_at_11, "the witness is the hole point (1,1)");

  HullMembership hull = hull_membership({Rat(1), Rat(1)}, sum);
  a.expect(hull.combination.has_value() && hull.combination->valid(),
           "(1,1) has a valid convex combination over the sum");

  out.matches = a.all;
  out.detail = std::move(a.detail);
  return out;
}

ExampleOutcome example_lnat_sum() {
  ExampleOutcome out;
  out.id = "ex41";
  out.title = "lnat midpoint property lost under Minkowski sum";
  Assertions a;

  LatticeSet s1(3, {{0, 0, 0}, {1, 1, 0}});
  LatticeSet s2(3, {{0, 0, 0}, {0, 1, 1}});
  LatticeSet sum = minkowski_sum(s1, s2);
  LatticeSet expected(3, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 2, 1}});
  a.expect(sum == expected, "sum equals the four expected points");

  CheckReport lnat1 = check_set_midpoint(s1, SetMidpointMode::kLnat);
  CheckReport lnat2 = check_set_midpoint(s2, SetMidpointMode::kLnat);
  record(a, out.reports, lnat1, &s1, nullptr);
  record(a, out.reports, lnat2, &s2, nullptr);
  a.expect(lnat1.verdict && lnat2.verdict, "both summands pass the lnat midpoint check");

  CheckReport rep = check_set_midpoint(sum, SetMidpointMode::kLnat);
  record(a, out.reports, rep, &sum, nullptr);
  a.expect(!rep.verdict, "the sum fails the lnat midpoint check");
  expect_set_pair_violates(a, sum, {0, 1, 1}, {1, 1, 0}, {1, 1, 1}, {0, 1, 0});

  CheckReport ic = check_set_integrally_convex(sum);
  record(a, out.reports, ic, &sum, nullptr);
  a.expect(ic.verdict, "the sum is still integrally convex");

  out.matches = a.all;
  out.detail = std::move(a.detail);
  return out;
}

ExampleOutcome example_interval_sum() {
  ExampleOutcome out;
  out.id = "ex42";
  out.title = "midpoint property lost when adding an interval";
  Assertions a;

  LatticeSet s(3, {{0, 0, 1}, {1, 1, 0}});
  LatticeSet b(3, {{0, 0, 0}, {1, 0, 0}});
  LatticeSet sum = minkowski_sum(s, b);
  LatticeSet expected(3, {{0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {2, 1, 0}});
  a.expect(sum == expected, "sum equals the four expected points");

  CheckReport dmc_s = check_set_midpoint(s, SetMidpointMode::kDmc);
  record(a, out.reports, dmc_s, &s, nullptr);
  a.expect(dmc_s.verdict, "the summand is a midpoint-closed set");

  CheckReport rep = check_set_midpoint(sum, SetMidpointMode::kDmc);
  record(a, out.reports, rep, &sum, nullptr);
  a.expect(!rep.verdict, "the sum fails the distant-pair midpoint check");
  bool stated_pair =
      rep.witness && rep.witness->points.size() >= 2 &&
      rep.witness->points[0] == RationalPoint{Rat(0), Rat(0), Rat(1)} &&
      rep.witness->points[1] == RationalPoint{Rat(2), Rat(1), Rat(0)};
  a.expect(stated_pair, "the deterministic witness pair is (0,0,1),(2,1,0)");
  expect_set_pair_violates(a, sum, {0, 0, 1}, {2, 1, 0}, {1, 1, 1}, {1, 0, 0});

  CheckReport ic = check_set_integrally_convex(sum);
  record(a, out.reports, ic, &sum, nullptr);
  a.expect(ic.verdict, "the sum is still integrally convex");

  out.matches = a.all;
  out.detail = std::move(a.detail);
  return out;
}

ExampleOutcome example_convolution() {
  ExampleOutcome out;
  out.id = "ex43";
  out.title = "convolution with an interval indicator loses the midpoint property";
  Assertions a;

  LatticeSet s(3, {{0, 0, 1}, {1, 1, 0}});
  IntegerBox fbox({0, 0, 0}, {1, 1, 1});
  DiscreteFunction f = zero_one_table(fbox, s);
  LatticeSet b(3, {{0, 0, 0}, {1, 0, 0}});
  DiscreteFunction phi =
      DiscreteFunction::indicator(b, IntegerBox({0, 0, 0}, {1, 0, 0}));

  DiscreteFunction conv = convolve(f, phi);
  LatticeSet sum = minkowski_sum(s, b);
  DiscreteFunction expected = zero_one_table(IntegerBox({0, 0, 0}, {2, 1, 1}), sum);
  a.expect(conv == expected, "convolution equals the expected 0/1 table");

  LatticePoint x{0, 0, 1}, y{2, 1, 0};
  for (FnMidpointMode mode : {FnMidpointMode::kGlobal, FnMidpointMode::kLocal}) {
    CheckReport rep = check_fn_midpoint(conv, mode);
    record(a, out.reports, rep, nullptr, &conv);
    const char* label =
        mode == FnMidpointMode::kGlobal ? "distant-pair" : "distance-two";
    a.expect(!rep.verdict,
             std::string("the convolution fails the ") + label + " midpoint check");
    bool stated_pair = rep.witness && rep.witness->points.size() >= 2 &&
                       rep.witness->points[0] == to_rational(x) &&
                       rep.witness->points[1] == to_rational(y);
    a.expect(stated_pair,
             std::string("the deterministic ") + label + " witness pair is (0,0,1),(2,1,0)");
  }
  auto [up, dn] = rounded_midpoints(x, y);
  a.expect(conv.at(x) == Ext(Rat(0)) && conv.at(y) == Ext(Rat(0)) &&
               conv.at(up) == Ext(Rat(1)) && conv.at(dn) == Ext(Rat(1)),
           "pair values are 0,0 and both rounded midpoints read 1");

  CheckReport ic = check_fn_integrally_convex(conv);
  record(a, out.reports, ic, nullptr, &conv);
  a.expect(ic.verdict, "the convolution is still integrally convex");

  out.matches = a.all;
  out.detail = std::move(a.detail);
  return out;
}

ExampleOutcome example_conjugate(bool negative_control) {
  ExampleOutcome out;
  out.id = "ex51";
  out.title = "conjugate of a four-point indicator is not integrally convex";
  Assertions a;

  LatticeSet s(4, {{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}});
  DiscreteFunction delta =
      DiscreteFunction::indicator(s, IntegerBox({0, 0, 0, 0}, {1, 1, 1, 1}));

  CheckReport ic_s = check_set_integrally_convex(s);
  record(a, out.reports, ic_s, &s, nullptr);
  a.expect(ic_s.verdict, "the support set is integrally convex");
  CheckReport dmc_ind = check_fn_midpoint(delta, FnMidpointMode::kGlobal);
  record(a, out.reports, dmc_ind, nullptr, &delta);
  a.expect(dmc_ind.verdict, "the indicator passes the distant-pair midpoint check");

  IntegerBox price_box({0, 0, 0, 0}, {2, 2, 2, 3});
  DiscreteFunction g = conjugate(delta, price_box);

  // Closed form: the conjugate picks the best of the four support points.
  bool formula = true;
  LatticePoint bad;
  Rat bump = negative_control ? Rat(1) : Rat(0);
  price_box.for_each([&](const LatticePoint& p) {
    Rat want = std::max({Rat(p[0] + p[1]), Rat(p[1] + p[2]), Rat(p[2] + p[0]),
                         Rat(p[3])});
    if (p == LatticePoint{0, 0, 0, 0}) want += bump;
    if (formula && g.at(p) != Ext(want)) {
      formula = false;
      bad = p;
    }
  });
  a.expect(formula, formula ? "conjugate matches the pairwise-max closed form everywhere"
                            : "conjugate matches the pairwise-max closed form everywhere "
                              "(first mismatch at " + point_str(bad) + ")");

  LatticePoint p{0, 0, 0, 0}, q{1, 1, 1, 2};
  RationalPoint mid{Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1)};
  EnvelopeValue ext = local_convex_extension(g, mid);
  Ext average = Rat(1, 2) * g.at(p) + Rat(1, 2) * g.at(q);
  a.expect(average == Ext(Rat(1)), "the pair average (g(p)+g(q))/2 equals 1");
  a.expect(ext.value.finite() && ext.value > average,
           "the local extension at the pair midpoint exceeds the average (value " +
               format_ext(ext.value) + ")");
  a.expect(ext.combination.has_value() && ext.combination->valid() &&
               ext.combination->weighted_value(g) == ext.value,
           "the extension value is attained by a valid combination");

  CheckReport ic = check_fn_integrally_convex(g);
  record(a, out.reports, ic, nullptr, &g);
  a.expect(!ic.verdict, "the conjugate is not integrally convex");
  for (FnMidpointMode mode : {FnMidpointMode::kGlobal, FnMidpointMode::kLocal}) {
    CheckReport rep = check_fn_midpoint(g, mode);
    record(a, out.reports, rep, nullptr, &g);
    a.expect(!rep.verdict,
             mode == FnMidpointMode::kGlobal
                 ? "the conjugate fails the distant-pair midpoint check"
                 : "the conjugate fails the distance-two midpoint check");
  }

  out.matches = a.all;
  out.detail = std::move(a.detail);
  return out;
}

ExampleOutcome example_indicator_sum() {
  ExampleOutcome out;
  out.id = "ex52";
  out.title = "sum of indicator functions with a two-point intersection";
  Assertions a;

  LatticeSet d1(3, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 2, 1}});
  LatticeSet d2(3, {{0, 0, 0}, {0, 1, 0}, {1, 1, 1}, {1, 2, 1}});
  CheckReport ic1 = check_set_integrally_convex(d1);
  CheckReport ic2 = check_set_integrally_convex(d2);
  record(a, out.reports, ic1, &d1, nullptr);
  record(a, out.reports, ic2, &d2, nullptr);
  a.expect(ic1.verdict && ic2.verdict, "both operand sets are integrally convex");

  IntegerBox box({0, 0, 0}, {1, 2, 1});
  DiscreteFunction sum = add_functions(DiscreteFunction::indicator(d1, box),
                                       DiscreteFunction::indicator(d2, box));
  LatticeSet inter = sum.domain();
  LatticeSet expected(3, {{0, 0, 0}, {1, 2, 1}});
  a.expect(inter == expected, "the sum is finite exactly on the two intersection points");

  CheckReport ic = check_set_integrally_convex(inter);
  record(a, out.reports, ic, &inter, nullptr);
  a.expect(!ic.verdict, "the intersection is not an integrally convex set");

  CheckReport fn_ic = check_fn_integrally_convex(sum);
  record(a, out.reports, fn_ic, nullptr, &sum);
  a.expect(!fn_ic.verdict, "the indicator sum is not an integrally convex function");

  out.matches = a.all;
  out.detail = std::move(a.detail);
  return out;
}

}  // namespace

std::vector<std::string> corpus_ids() {
  return {"ex31", "ex41", "ex42", "ex43", "ex51", "ex52"};
}

std::vector<ExampleOutcome> run_examples(const CorpusOptions& options) {
  if (options.only) {
    auto ids = corpus_ids();
    if (std::find(ids.begin(), ids.end(), *options.only) == ids.end()) {
      throw std::invalid_argument("unknown example id \"" + *options.only + "\"");
    }
  }
  std::vector<ExampleOutcome> out;
  auto want = [&](const char* id) { return !options.only || *options.only == id; };
  if (want("ex31")) out.push_back(example_sum_hole());
  if (want("ex41")) out.push_back(example_lnat_sum());
  if (want("ex42")) out.push_back(example_interval_sum());
  if (want("ex43")) out.push_back(example_convolution());
  if (want("ex51")) out.push_back(example_conjugate(options.negative_control));
  if (want("ex52")) out.push_back(example_indicator_sum());
  return out;
}

Json example_outcome_to_json(const ExampleOutcome& outcome) {
  Json out;
  out["id"] = outcome.id;
  out["title"] = outcome.title;
  out["matches"] = outcome.matches;
  out["detail"] = outcome.detail;
  out["reports"] = outcome.reports;
  return out;
}

}  // namespace dca
