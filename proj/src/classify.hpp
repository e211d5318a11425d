#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "lattice.hpp"

namespace dca {

// A refuted property always comes with a small certificate that can be
// re-verified from the raw table alone; the kinds below are the complete
// set of certificate shapes used across the checkers.
enum class WitnessKind {
  kMidpointPair,       // x, y whose rounded-midpoint inequality fails
  kHolePoint,          // point of conv(S) missing from a local hull
  kExchangePair,       // four points with p0+p1 = p2+p3 and f(p0)+f(p1) < f(p2)+f(p3)
  kEnvelopeGap,        // distance-2 pair whose local extension exceeds the average
  kParallelogramPair,  // pair plus step-subset displacement breaking the inequality
  kArgminHole,         // price vector whose argmin set has a hole
};

const char* witness_kind_name(WitnessKind kind);
std::optional<WitnessKind> witness_kind_from_name(const std::string& name);

struct ViolationWitness {
  WitnessKind kind;
  std::vector<RationalPoint> points;
  std::vector<Ext> values;
  std::vector<int> levels;  // selected decomposition levels (parallelogram)
  std::optional<ConvexCombination> combination;
  std::optional<Halfspace> separator;
};

struct CheckReport {
  std::string property;
  bool verdict = true;
  std::optional<ViolationWitness> witness;  // present exactly when verdict is false
  std::uint64_t pairs_checked = 0;
  std::chrono::microseconds elapsed{0};
  std::string note;
};

enum class SetMidpointMode { kLnat, kDmc };
enum class FnMidpointMode { kAll, kGlobal, kLocal };

// Set classes. The integral-convexity check walks every unit cell meeting
// the hull and compares conv(S) with the hull of the cell's own points.
CheckReport check_set_integrally_convex(const LatticeSet& s);
CheckReport check_set_midpoint(const LatticeSet& s, SetMidpointMode mode);

// Function classes over the dense table.
CheckReport check_fn_integrally_convex(const DiscreteFunction& f);
CheckReport check_fn_midpoint(const DiscreteFunction& f, FnMidpointMode mode);
CheckReport check_fn_submodular(const DiscreteFunction& f);
CheckReport check_fn_lnat(const DiscreteFunction& f);
CheckReport check_fn_separable(const DiscreteFunction& f);

// Exchange inequality along step decompositions; the midpoint property of
// the matching mode is a precondition and its failure is reported, not
// thrown. mode must be kGlobal or kLocal.
CheckReport check_parallelogram(const DiscreteFunction& f, FnMidpointMode mode);

// Minimizer-set probe: samples price vectors and demands an integrally
// convex argmin of f - <p, .> each time. Can only refute; a pass means no
// refutation was found within the probe budget.
CheckReport check_argmin_characterization(const DiscreteFunction& f, int probes,
                                          std::uint64_t seed);

// Verdicts of the three quadratic-form screens.
struct QuadraticVerdict {
  bool diagonally_dominant_ic = false;  // sufficient screen on all of Q
  bool lnat_in_block = false;           // exact on the chosen block
  bool mnat_in_block = false;           // exact on the chosen block
};

// q must be square and symmetric; y_block lists distinct coordinate
// indices of the block the exact screens are applied to.
QuadraticVerdict classify_quadratic(const RatMat& q, const std::vector<int>& y_block);

// Membership along the nested classes, from most to least restrictive.
struct ChainVerdict {
  bool separable = false;
  bool lnat = false;
  bool global_midpoint = false;
  bool local_midpoint = false;
  bool integrally_convex = false;
  std::vector<CheckReport> reports;
};

// Runs all five function checks and enforces that the verdicts are
// monotone along the inclusion chain; a non-monotone outcome indicates a
// checker bug and raises std::logic_error.
ChainVerdict classify_chain(const DiscreteFunction& f);

}  // namespace dca
