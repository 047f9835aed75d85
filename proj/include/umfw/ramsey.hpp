#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "umfw/classes.hpp"
#include "umfw/embed.hpp"

namespace umfw {

// A k-coloring of the copies of A in C, indexed by CopySet order.
struct Coloring {
  std::shared_ptr<const CopySet> copyset;
  int k = 2;
  std::vector<int> colors;
};

struct SearchBudget {
  long node_cap = 100000000;   // distinct search nodes
  double time_cap_secs = 600;  // wall clock; exceeding raises ResourceCap
};

struct SearchStats {
  long nodes = 0;
  long symmetry_reductions = 0;
};

enum class ArrowVerdict { Positive, Negative };

// Certificate for C -> (B)^A_k.  Negative certificates carry the
// lexicographically least bad coloring (no monochromatic B-copy) and
// revalidate independently; positive certificates attest that the coloring
// space was covered completely under the symmetry argument.
struct ArrowCertificate {
  ArrowVerdict verdict = ArrowVerdict::Positive;
  int k = 2;
  std::optional<Coloring> bad_coloring;
  SearchStats stats;
  bool complete = true;
};

struct MonoCopy {
  std::vector<int> copy;  // element subset of C carrying the B-copy
  int color = -1;         // -1 when the B-copy contains no A-copy (vacuous)
};

// A copy of B in C all of whose A-subcopies share one color, or nullopt
// after checking every B-copy.  A B-copy without A-subcopies counts as
// (vacuously) monochromatic.
std::optional<MonoCopy> find_monochromatic_copy(const FinStructure& c, const FinStructure& b,
                                                const FinStructure& a, const Coloring& coloring);

// Decide the arrow by complete backtracking over colorings with
// partial-monochromaticity pruning and symmetry reduction (automorphisms of C
// acting on copies, joint with color relabeling).  Never guesses: exceeding
// the node budget raises ResourceCap.
ArrowCertificate arrow_holds(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                             int k, const SearchBudget& budget = {},
                             bool reverse_branching = false);

// Least class member (enumeration order) with a positive arrow.
std::optional<FinStructure> minimal_arrow_witness(const ClassDescriptor& kd, const FinStructure& b,
                                                  const FinStructure& a, int k, int bound,
                                                  const SearchBudget& budget = {});

// Independent revalidation used before any certificate is emitted.
bool certificate_revalidates(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                             const ArrowCertificate& cert);

}  // namespace umfw
