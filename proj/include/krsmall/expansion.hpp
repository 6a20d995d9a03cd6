#ifndef KRSMALL_EXPANSION_HPP
#define KRSMALL_EXPANSION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "krsmall/cartan.hpp"
#include "krsmall/character.hpp"
#include "krsmall/monomial.hpp"

namespace krsmall {

using QCharacter = Character<Monomial>;

/// L_i(m): the q-character of the simple U_q(sl2)-module attached to the
/// node-i part of m, pushed back into the full monomial lattice. Every
/// monomial is m times a product of A_{i,.}^{-1}; m itself has multiplicity 1.
/// Throws std::invalid_argument when m is not i-dominant.
QCharacter expand_Li(const CartanData& c, const Monomial& m, int i);

/// One expansion in a derivation: `root` was expanded at `node`.
struct ChainStep {
  int node = 0;
  Monomial root;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct GeneratedMonomial {
  Monomial monomial;
  AWitness witness;           // relative to the trace source
  long level = 0;             // witness.total()
  std::optional<std::size_t> parent; // entry whose expansion produced this one
  int via_node = 0;
};

struct ProcessOptions {
  std::size_t budget = 100000;   // expansions performed
  bool stop_on_witness = false;  // halt at the first dominant monomial != source
  std::optional<long> max_level; // do not expand monomials deeper than this
};

struct GenerationTrace {
  Monomial source;
  std::vector<GeneratedMonomial> entries; // entries[0] is the source
  std::size_t steps = 0;
  bool partial = false;
  bool level_capped = false;
  std::optional<std::size_t> witness; // first dominant entry != source

  std::optional<std::size_t> find(const Monomial& m) const;
  bool contains(const Monomial& m) const { return find(m).has_value(); }
  /// Expansion steps from the source down to entries[index].
  std::vector<ChainStep> chain(std::size_t index) const;
};

/// Monomials forced into chi_q(L(m)) by repeated single-node expansions:
/// a generated m' is expanded at i when it is i-dominant and is not already
/// a monomial of L_i(m'') for a strictly higher generated m''. Work proceeds
/// by ascending level, ties by canonical order.
GenerationTrace generate_process(const CartanData& c, const Monomial& m, const ProcessOptions& options = {});

/// Re-runs the expansions of a chain and checks each root is reached, is
/// node-dominant, and that `target` appears in the final expansion.
bool replay_chain(const CartanData& c, const Monomial& source, const std::vector<ChainStep>& chain,
                  const Monomial& target);

enum class FmVerdict { SpecialFMConsistent, NotSpecial, Inconclusive };
const char* to_string(FmVerdict v);

struct FmOptions {
  std::size_t budget = 200000; // settled monomials
  unsigned threads = 1;
};

struct SpecialnessReport {
  FmVerdict verdict = FmVerdict::Inconclusive;
  /// Complete character when consistent, the settled part otherwise.
  QCharacter qchar;
  std::optional<Monomial> witness;
  std::vector<ChainStep> chain; // expansion path from m to the witness
  std::string diagnostic;
  std::size_t settled = 0;
};

/// Frenkel-Mukhin closure. Each monomial's multiplicity is the maximum of the
/// node-wise multiplicities pushed down to it; at each node-dominant monomial
/// the missing node-wise multiplicity opens a new copy of L_i. Output is
/// identical for every thread count.
SpecialnessReport fm_algorithm(const CartanData& c, const Monomial& m, const FmOptions& options = {});

bool qchar_is_thin(const QCharacter& chi);

/// Dominant monomials of chi, canonical order.
std::vector<Monomial> dominant_monomials(const QCharacter& chi);

/// Terms ordered by level below the highest monomial, then canonically.
std::vector<std::pair<Monomial, long>> ordered_terms(const CartanData& c, const QCharacter& chi);

} // namespace krsmall

#endif
