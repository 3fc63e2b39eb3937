#pragma once
// Bayesian-Dirichlet structure scoring, State-family structure search,
// posterior-mean CPTs and letter-position ranking.
//
// Network variables follow network_variables(): L<n>..L1, Key, State. Only
// State is queried, so the search space is the set of State parent sets.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reducedkey/corpus.hpp"
#include "reducedkey/counts.hpp"
#include "reducedkey/keypad.hpp"

namespace reducedkey {

// Equivalent sample size of the symmetric Dirichlet prior.
class XiPrior {
 public:
  explicit XiPrior(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Half the average variable cardinality.
XiPrior default_xi(std::span<const VariableSpec> variables);

// Log of one family's factor in P(D|B). Unobserved parent configurations
// contribute exactly zero.
double family_log_score(const FamilyCounts& family, XiPrior xi);

// Natural log of P(D|B); sum of family scores.
double log_marginal_likelihood(const NetworkStructure& structure, const CountStore& counts,
                               XiPrior xi);

double log_bayes_factor(const Dataset& data, const NetworkStructure& a,
                        const NetworkStructure& b, XiPrior xi);
// P(D|a) / P(D|b) under equal structure priors.
double bayes_factor(const Dataset& data, const NetworkStructure& a, const NetworkStructure& b,
                    XiPrior xi);

struct CandidateScore {
  std::vector<std::size_t> parents;
  double log_score = 0.0;
};

struct StructureSearch {
  NetworkStructure best;
  std::vector<CandidateScore> candidates;  // in evaluation order
};

// Every subset of the other variables is scored as `target`'s parent set.
// Ties go to the smaller set, then the lexicographically smaller index list.
StructureSearch learn_structure(const Dataset& data, XiPrior xi, std::size_t target);

struct CptRow {
  std::uint64_t observations = 0;  // N_ij
  std::vector<double> probabilities;

  bool operator==(const CptRow&) const = default;
};

struct Cpt {
  std::size_t variable = 0;
  std::vector<std::size_t> parents;
  std::uint64_t q = 1;
  std::uint32_t r = 2;
  std::map<std::uint64_t, CptRow> rows;  // observed configurations only

  const CptRow* find(std::uint64_t j) const;
  // Uniform for configurations never observed.
  std::vector<double> probabilities(std::uint64_t j) const;

  bool operator==(const Cpt&) const = default;
};

// P(X=k | j) = (N_ijk + xi/(r q)) / (N_ij + xi/q).
Cpt fit_cpt(const NetworkStructure& structure, const CountStore& counts, XiPrior xi,
            std::size_t variable);

struct Ranking {
  std::vector<std::uint8_t> order;  // 1-based states, most probable first
  // Index into Model::levels() that answered, or levels().size() for the
  // static-order fallback.
  std::size_t level = 0;
};

class Model {
 public:
  Model(KeypadLayout layout, std::size_t context_length, NetworkStructure structure, XiPrior xi,
        std::vector<Cpt> levels);

  // Fits the State CPT for `structure` plus its fallback levels, which drop the
  // oldest context variables one at a time.
  static Model fit(std::span<const Sample> samples, const KeypadLayout& layout,
                   std::size_t context_length, const NetworkStructure& structure, XiPrior xi);

  const KeypadLayout& layout() const noexcept { return layout_; }
  std::size_t context_length() const noexcept { return n_; }
  const NetworkStructure& structure() const noexcept { return structure_; }
  const XiPrior& xi() const noexcept { return xi_; }
  const std::vector<Cpt>& levels() const noexcept { return levels_; }
  const std::vector<VariableSpec>& variables() const noexcept { return variables_; }

  Ranking rank(const Context& ctx, KeyIndex key) const;

  bool operator==(const Model& other) const;

 private:
  KeypadLayout layout_;
  std::size_t n_;
  NetworkStructure structure_;
  XiPrior xi_;
  std::vector<Cpt> levels_;
  std::vector<VariableSpec> variables_;
};

// Parent sets tried for an unseen configuration, most specific first.
std::vector<std::vector<std::size_t>> fallback_parent_sets(std::span<const std::size_t> parents,
                                                           std::size_t context_length);

std::vector<std::uint8_t> rank_positions(const Model& model, const Context& ctx, KeyIndex key);

// Fraction of samples whose true state is ranked first.
double holdout_accuracy(const Model& model, std::span<const Sample> samples);

struct TrainResult {
  Model model;
  StructureSearch search;
  std::size_t sample_count = 0;
};

// Structure search over State's parents followed by Model::fit. Uses
// default_xi when xi is not given.
TrainResult train(std::span<const Sample> samples, const KeypadLayout& layout,
                  std::size_t context_length, std::optional<double> xi = std::nullopt);

std::string save_model(const Model& model);
Model load_model(std::string_view document);

}  // namespace reducedkey
