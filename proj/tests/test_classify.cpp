#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "classify.hpp"
#include "generators.hpp"
#include "lattice.hpp"
#include "replay.hpp"

using namespace dca;

namespace {

LatticeSet planar_hole_sum() {
  return LatticeSet(2, {{1, 0}, {0, 1}, {2, 1}, {1, 2}});
}

LatticeSet skew_plane_set() {
  return LatticeSet(3, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 2, 1}});
}

LatticeSet interval_sum_set() {
  return LatticeSet(3, {{0, 0, 1}, {1, 0, 1}, {1, 1, 0}, {2, 1, 0}});
}

// 0 on the interval sum, 1 on the rest of [(0,0,0),(2,1,1)]; the shape of
// the convolution counterexample table.
DiscreteFunction interval_sum_step() {
  IntegerBox box({0, 0, 0}, {2, 1, 1});
  LatticeSet zeros = interval_sum_set();
  std::vector<Ext> vals(box.size());
  box.for_each([&](const LatticePoint& p) {
    vals[box.index_of(p)] = Ext(Rat(zeros.contains(p) ? 0 : 1));
  });
  return DiscreteFunction(box, std::move(vals));
}

RationalPoint rp(std::initializer_list<long> cs) {
  RationalPoint p;
  for (long c : cs) p.emplace_back(c);
  return p;
}

}  // namespace

TEST_CASE("a full box takes the fast integral convexity path") {
  LatticeSet s(2);
  IntegerBox({0, 0}, {2, 1}).for_each([&](const LatticePoint& p) { s.insert(p); });
  CheckReport rep = check_set_integrally_convex(s);
  CHECK(rep.verdict);
  CHECK(rep.note == "set fills its bounding box");
}

TEST_CASE("planar sum with a hull hole is rejected with a replayable witness") {
  LatticeSet s = planar_hole_sum();
  CheckReport rep = check_set_integrally_convex(s);
  REQUIRE(!rep.verdict);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->kind == WitnessKind::kHolePoint);
  CHECK(rep.witness->points[0] == rp({1, 1}));
  std::string why;
  CHECK_MESSAGE(replay_report(rep, &s, nullptr, &why), why);
}

TEST_CASE("sets that cover all their cells pass integral convexity") {
  CHECK(check_set_integrally_convex(skew_plane_set()).verdict);
  CHECK(check_set_integrally_convex(interval_sum_set()).verdict);
  CHECK(check_set_integrally_convex(LatticeSet(1, {{4}})).verdict);
}

TEST_CASE("a diagonal two point set leaves its cell and fails") {
  LatticeSet s(3, {{0, 0, 0}, {1, 2, 1}});
  CheckReport rep = check_set_integrally_convex(s);
  REQUIRE(!rep.verdict);
  std::string why;
  CHECK_MESSAGE(replay_report(rep, &s, nullptr, &why), why);
}

TEST_CASE("set midpoint check distinguishes the all-pair and distant modes") {
  LatticeSet skew = skew_plane_set();
  CheckReport all = check_set_midpoint(skew, SetMidpointMode::kLnat);
  REQUIRE(!all.verdict);
  // First violating pair in scan order, with both rounded midpoints missing.
  CHECK(all.witness->points ==
        std::vector<RationalPoint>{rp({0, 0, 0}), rp({1, 2, 1}), rp({1, 1, 1}),
                                   rp({0, 1, 0})});
  std::string why;
  CHECK_MESSAGE(replay_report(all, &skew, nullptr, &why), why);

  LatticeSet sum = interval_sum_set();
  CheckReport dmc = check_set_midpoint(sum, SetMidpointMode::kDmc);
  REQUIRE(!dmc.verdict);
  CHECK(dmc.witness->points ==
        std::vector<RationalPoint>{rp({0, 0, 1}), rp({2, 1, 0}), rp({1, 1, 1}),
                                   rp({1, 0, 0})});
  CHECK_MESSAGE(replay_report(dmc, &sum, nullptr, &why), why);

  // The pair summands of the counterexample are fine on their own.
  CHECK(check_set_midpoint(LatticeSet(3, {{0, 0, 0}, {1, 1, 0}}),
                           SetMidpointMode::kLnat)
            .verdict);
  CHECK(check_set_midpoint(LatticeSet(3, {{0, 0, 1}, {1, 1, 0}}),
                           SetMidpointMode::kDmc)
            .verdict);
}

TEST_CASE("step table fails both midpoint modes at the pinned pair") {
  DiscreteFunction f = interval_sum_step();
  for (FnMidpointMode mode :
       {FnMidpointMode::kAll, FnMidpointMode::kGlobal, FnMidpointMode::kLocal}) {
    CheckReport rep = check_fn_midpoint(f, mode);
    REQUIRE(!rep.verdict);
    std::string why;
    CHECK_MESSAGE(replay_report(rep, nullptr, &f, &why), why);
  }
  CheckReport global = check_fn_midpoint(f, FnMidpointMode::kGlobal);
  CHECK(global.witness->points ==
        std::vector<RationalPoint>{rp({0, 0, 1}), rp({2, 1, 0}), rp({1, 1, 1}),
                                   rp({1, 0, 0})});
  CHECK(global.witness->values ==
        std::vector<Ext>{Ext(0), Ext(0), Ext(1), Ext(1)});
  // The violation needs distance two, so the table is still integrally
  // convex as a function.
  CHECK(check_fn_integrally_convex(f).verdict);
}

TEST_CASE("local midpoint mode reports holes of the effective domain first") {
  // dom is the diagonal pair, not midpoint closed; the local check must
  // surface that instead of scanning value pairs.
  IntegerBox box({0, 0, 0}, {1, 2, 1});
  DiscreteFunction f =
      DiscreteFunction::indicator(LatticeSet(3, {{0, 0, 0}, {1, 2, 1}}), box);
  CheckReport rep = check_fn_midpoint(f, FnMidpointMode::kLocal);
  REQUIRE(!rep.verdict);
  CHECK(rep.note == "effective domain is not midpoint closed");
  std::string why;
  CHECK_MESSAGE(replay_report(rep, nullptr, &f, &why), why);
}

TEST_CASE("submodularity check accepts and rejects the bilinear tables") {
  IntegerBox box({0, 0}, {1, 1});
  std::vector<Ext> prod(box.size()), nprod(box.size());
  box.for_each([&](const LatticePoint& p) {
    prod[box.index_of(p)] = Ext(Rat((long)(p[0] * p[1])));
    nprod[box.index_of(p)] = Ext(Rat((long)(-p[0] * p[1])));
  });
  DiscreteFunction supermod(box, prod), submod(box, nprod);
  CHECK(!check_fn_submodular(supermod).verdict);
  CHECK(check_fn_submodular(submod).verdict);
  CheckReport rep = check_fn_submodular(supermod);
  CHECK(rep.witness->kind == WitnessKind::kExchangePair);
  std::string why;
  CHECK_MESSAGE(replay_report(rep, nullptr, &supermod, &why), why);
}

TEST_CASE("separability check accepts sums of axis pieces only") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 5; ++round) {
    IntegerBox box = random_box(rng, 2, 2, 3);
    DiscreteFunction f = random_separable_convex(rng, box);
    CHECK(check_fn_separable(f).verdict);
    ChainVerdict chain = classify_chain(f);
    CHECK(chain.separable);
    CHECK(chain.integrally_convex);
  }
  IntegerBox box({0, 0}, {1, 1});
  std::vector<Ext> prod(box.size());
  box.for_each([&](const LatticePoint& p) {
    prod[box.index_of(p)] = Ext(Rat((long)(p[0] * p[1])));
  });
  DiscreteFunction coupled(box, prod);
  CheckReport rep = check_fn_separable(coupled);
  REQUIRE(!rep.verdict);
  std::string why;
  CHECK_MESSAGE(replay_report(rep, nullptr, &coupled, &why), why);
}

TEST_CASE("all-pair midpoint verdict equals submodular plus integrally convex") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 40; ++round) {
    IntegerBox box = random_box(rng, 2, 1, 2);
    DiscreteFunction f = round % 4 == 0 ? random_lnat_function(rng, box)
                                        : random_table(rng, box, 4, 20);
    bool lnat = check_fn_lnat(f).verdict;
    bool both = check_fn_submodular(f).verdict &&
                check_fn_integrally_convex(f).verdict;
    CHECK_MESSAGE(lnat == both, "round ", round);
  }
}

TEST_CASE("chain verdicts stay monotone on arbitrary tables") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 25; ++round) {
    IntegerBox box = random_box(rng, 2, 1, 3);
    DiscreteFunction f = random_table(rng, box, 5, 25);
    ChainVerdict v = classify_chain(f);
    bool chain[] = {v.separable, v.lnat, v.global_midpoint, v.local_midpoint,
                    v.integrally_convex};
    for (int k = 0; k + 1 < 5; ++k)
      CHECK((!chain[k] || chain[k + 1]));
    CHECK(v.reports.size() == 5);
  }
}

TEST_CASE("parallelogram inequality holds on distant-pair midpoint tables") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 10; ++round) {
    IntegerBox box = random_box(rng, 2, 1, 3);
    DiscreteFunction f = random_midpoint_function(rng, box, FnMidpointMode::kGlobal);
    CHECK(check_parallelogram(f, FnMidpointMode::kGlobal).verdict);
  }
}

TEST_CASE("parallelogram check reports the midpoint precondition") {
  DiscreteFunction f = interval_sum_step();
  CheckReport rep = check_parallelogram(f, FnMidpointMode::kGlobal);
  REQUIRE(!rep.verdict);
  CHECK(rep.note == "midpoint precondition failed");
  std::string why;
  CHECK_MESSAGE(replay_report(rep, nullptr, &f, &why), why);
  CHECK_THROWS_AS(check_parallelogram(f, FnMidpointMode::kAll),
                  std::invalid_argument);
}

TEST_CASE("argmin probe clears a midpoint table and refutes an indicator") {
  std::mt19937_64 rng(41);
  IntegerBox box = random_box(rng, 2, 1, 3);
  DiscreteFunction good = random_lnat_function(rng, box);
  CheckReport pass = check_argmin_characterization(good, 6, 3);
  CHECK(pass.verdict);
  CHECK(pass.note == "no refutation found within the probe budget");

  LatticeSet holes = planar_hole_sum();
  DiscreteFunction bad =
      DiscreteFunction::indicator(holes, holes.bounding_box());
  CheckReport rep = check_argmin_characterization(bad, 1, 1);
  REQUIRE(!rep.verdict);
  CHECK(rep.witness->kind == WitnessKind::kArgminHole);
  // The zero price is probed first, so the argmin is the whole set.
  CHECK(rep.witness->points[0] == rp({0, 0}));
  std::string why;
  CHECK_MESSAGE(replay_report(rep, nullptr, &bad, &why), why);
  CHECK_THROWS_AS(check_argmin_characterization(bad, 0, 1), std::invalid_argument);
}

TEST_CASE("quadratic screens read dominance and sign patterns") {
  QuadraticVerdict id = classify_quadratic({{1, 0}, {0, 1}}, {0, 1});
  CHECK(id.diagonally_dominant_ic);
  CHECK(id.lnat_in_block);
  CHECK(id.mnat_in_block);

  QuadraticVerdict zmat = classify_quadratic({{2, -1}, {-1, 2}}, {0, 1});
  CHECK(zmat.diagonally_dominant_ic);
  CHECK(zmat.lnat_in_block);
  CHECK(!zmat.mnat_in_block);

  QuadraticVerdict pos = classify_quadratic({{1, 1}, {1, 1}}, {0, 1});
  CHECK(pos.diagonally_dominant_ic);
  CHECK(!pos.lnat_in_block);
  CHECK(pos.mnat_in_block);

  QuadraticVerdict weak = classify_quadratic({{0, 2}, {2, 0}}, {0, 1});
  CHECK(!weak.diagonally_dominant_ic);

  QuadraticVerdict triple =
      classify_quadratic({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, {0, 1, 2});
  CHECK(!triple.mnat_in_block);

  // The block restriction ignores the rest of the matrix.
  QuadraticVerdict blocked = classify_quadratic({{1, 1}, {1, 1}}, {0});
  CHECK(blocked.lnat_in_block);
}

TEST_CASE("quadratic screens validate their input") {
  CHECK_THROWS_AS(classify_quadratic({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(classify_quadratic({{1, 2}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(classify_quadratic({{1, 2}, {3, 1}}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(classify_quadratic({{1, 0}, {0, 1}}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(classify_quadratic({{1, 0}, {0, 1}}, {0, 0}), std::invalid_argument);
}

TEST_CASE("witness replay rejects corrupted certificates") {
  LatticeSet sum = interval_sum_set();
  CheckReport dmc = check_set_midpoint(sum, SetMidpointMode::kDmc);
  REQUIRE(!dmc.verdict);

  std::string why;
  ViolationWitness wrong_pair = *dmc.witness;
  wrong_pair.points[1] = rp({1, 1, 0});
  CHECK(!replay_witness(wrong_pair, &sum, nullptr, &why));
  CHECK(why == "recorded point is not a rounded midpoint");

  LatticeSet half_closed(2, {{0, 0}, {2, 1}, {1, 1}});
  ViolationWitness present_mid;
  present_mid.kind = WitnessKind::kMidpointPair;
  present_mid.points = {rp({0, 0}), rp({2, 1}), rp({1, 1})};
  CHECK(!replay_witness(present_mid, &half_closed, nullptr, &why));
  CHECK(why == "recorded midpoint is present in the set");

  CheckReport fake_true = dmc;
  fake_true.verdict = true;
  CHECK(!replay_report(fake_true, &sum, nullptr, &why));
  CHECK(why == "true verdict must not carry a witness");

  CheckReport bare = dmc;
  bare.witness.reset();
  CHECK(!replay_report(bare, &sum, nullptr, &why));
  CHECK(why == "false verdict must carry a witness");
}

TEST_CASE("hole replay validates the stored combination") {
  LatticeSet s = planar_hole_sum();
  CheckReport rep = check_set_integrally_convex(s);
  REQUIRE(!rep.verdict);
  std::string why;

  ViolationWitness moved = *rep.witness;
  moved.points[0] = rp({2, 1});
  CHECK(!replay_witness(moved, &s, nullptr, &why));

  ViolationWitness retargeted = *rep.witness;
  REQUIRE(retargeted.combination.has_value());
  retargeted.combination->target = rp({1, 0});
  CHECK(!replay_witness(retargeted, &s, nullptr, &why));
  CHECK(why == "stored combination is invalid");

  // A combination that is consistent around the wrong point trips the
  // target comparison instead.
  retargeted.combination->support = {{{1, 0}, Rat(1)}};
  CHECK(!replay_witness(retargeted, &s, nullptr, &why));
  CHECK(why == "stored combination targets a different point");
}

TEST_CASE("parallelogram replay checks the recorded displacement") {
  // A wide one-dimensional valley violates the inequality for the inner
  // subset of levels even though no checker produces this table.
  IntegerBox box({0}, {3});
  DiscreteFunction f(box, {Ext(0), Ext(5), Ext(5), Ext(0)});
  ViolationWitness w;
  w.kind = WitnessKind::kParallelogramPair;
  w.points = {rp({0}), rp({3}), rp({1}), rp({2})};
  w.levels = {0};
  std::string why;
  CHECK_MESSAGE(replay_witness(w, nullptr, &f, &why), why);

  ViolationWitness off = w;
  off.levels = {0, 1};
  CHECK(!replay_witness(off, nullptr, &f, &why));
  CHECK(why == "recorded points do not match the step displacement");

  ViolationWitness out = w;
  out.levels = {7};
  CHECK(!replay_witness(out, nullptr, &f, &why));
  CHECK(why == "level index out of range");
}
