#ifndef KRSMALL_SMALLNESS_HPP
#define KRSMALL_SMALLNESS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "krsmall/cartan.hpp"
#include "krsmall/expansion.hpp"
#include "krsmall/monomial.hpp"

namespace krsmall {

enum class Smallness { Small, NotSmall };
enum class EmpiricalSmallness { Small, NotSmall, Undetermined };

const char* to_string(Smallness s);
const char* to_string(EmpiricalSmallness s);

/// Small iff k <= 2, or i is extremal and k <= d_i + 1. An isolated node
/// (A_1) counts as extremal. Throws std::invalid_argument for
/// non-simply-laced diagrams and k < 1.
Smallness classify(const CartanData& c, int i, int k);

struct DominantEntry {
  Monomial monomial;
  AWitness witness; // relative to X_{k,q^r}^{(i)}
};

struct EnumerationResult {
  Monomial highest;
  std::vector<DominantEntry> entries; // sorted by level, then canonically
  bool partial = false;
  std::size_t nodes_visited = 0;
};

/// Every dominant m' <= X_{k,q^r}^{(i)}. The search runs over v-tables on the
/// sites (j, l) with d(i,j) <= k-1 and |l - r| <= k-1-d(i,j), each entry at
/// most k, fixing levels from the top down; the variables at power l+1 are
/// final once level l is chosen, which bounds v_{j,l}. Simply-laced only.
EnumerationResult enumerate_dominant_below(const CartanData& c, int i, int k, int r,
                                           std::size_t budget = 1000000);

struct Budgets {
  std::size_t fm_steps = 200000;
  std::size_t process_steps = 100000;
  std::size_t enum_nodes = 1000000;
  unsigned threads = 1;
};

/// Budgets with KRSMALL_FM_STEPS, KRSMALL_PROCESS_STEPS and
/// KRSMALL_ENUM_NODES applied when set.
Budgets budgets_from_env();

struct MonomialCheck {
  Monomial monomial;
  AWitness witness;
  FmVerdict fm = FmVerdict::Inconclusive;
  std::string fm_diagnostic;
  bool process_ran = false;
  bool process_partial = false;
  /// Set when the process found a dominant monomial != this one: a certified
  /// non-special simple module.
  std::optional<Monomial> certificate;
  std::vector<ChainStep> chain;

  friend bool operator==(const MonomialCheck&, const MonomialCheck&) = default;
};

struct SmallnessVerdict {
  std::string diagram;
  int node = 0;
  int k = 0;
  int r = 0;
  Smallness theoretical = Smallness::Small;
  bool empirical_ran = false;
  EmpiricalSmallness empirical = EmpiricalSmallness::Undetermined;
  bool enumeration_partial = false;
  std::vector<MonomialCheck> checks;
  bool agree = false;

  std::size_t dominant_count() const { return checks.size(); }
  std::vector<const MonomialCheck*> witnesses() const;
  std::vector<const MonomialCheck*> undetermined() const;

  friend bool operator==(const SmallnessVerdict&, const SmallnessVerdict&) = default;
};

/// The classification verdict alone, without the empirical check.
SmallnessVerdict theoretical_verdict(const CartanData& c, int i, int k, int r = 0);

/// Enumerates dominant m' <= X, runs the FM algorithm on each, and runs the
/// generation process when FM does not report consistency. NotSmall needs a
/// certificate; Small needs every m' FM-consistent.
SmallnessVerdict check_small_empirical(const CartanData& c, int i, int k, int r = 0, const Budgets& budgets = {});

/// Runs the generation process from m' with stop_on_witness and reports the
/// certificate, if any.
MonomialCheck certify_not_special(const CartanData& c, const Monomial& m_prime, std::size_t process_steps = 100000);

/// m = Y_{i_1,l_1} ... Y_{i_R,l_R} with l_{r+1} - l_r >= i_r + i_{r+1}.
bool has_type_A_form(const Monomial& m);
/// has_type_A_form on every entry. Throws std::invalid_argument unless c is
/// of finite type A.
bool check_type_A_form(const CartanData& c, const std::vector<DominantEntry>& entries);

struct RemarkCheck {
  std::string name;
  std::string diagram;
  Monomial highest;
  Monomial start;
  bool passed = false;
  std::vector<std::string> failures;
  /// Listed monomials with the chain that produced them.
  std::vector<std::pair<Monomial, std::vector<ChainStep>>> generated;
  std::optional<Monomial> witness;
  std::vector<ChainStep> witness_chain;
};

struct RemarkReport {
  std::vector<RemarkCheck> remarks;
  bool all_passed() const;
};

/// Replays the three worked non-smallness examples: A_3 at node 2, D_4 at
/// node 1, affine A_2 at node 2.
RemarkReport verify_remarks(const Budgets& budgets = {});

} // namespace krsmall

#endif
