#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace growth {

struct Transition {
  std::size_t from;
  std::size_t symbol;
  std::size_t to;
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Finite automaton over an ordered alphabet. State and symbol references are
/// indices into `states()` and `alphabet()`. Immutable after construction.
class Automaton {
 public:
  Automaton(std::vector<std::string> alphabet, std::vector<std::string> states,
            std::vector<Transition> transitions, std::vector<std::size_t> initial,
            std::vector<std::size_t> final_states);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<std::size_t>& initial() const { return initial_; }
  const std::vector<std::size_t>& final_states() const { return final_; }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_symbols() const { return alphabet_.size(); }
  bool is_initial(std::size_t s) const { return initial_mask_[s]; }
  bool is_final(std::size_t s) const { return final_mask_[s]; }

  bool deterministic() const { return deterministic_; }
  bool vertex_labeled() const { return vertex_labeled_; }
  /// Common incoming symbol of each state when vertex_labeled(); states with no
  /// incoming edge have no label.
  const std::vector<std::optional<std::size_t>>& state_labels() const { return labels_; }

  std::optional<std::size_t> find_state(std::string_view name) const;
  std::optional<std::size_t> find_symbol(std::string_view name) const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::string> states_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> initial_;
  std::vector<std::size_t> final_;
  std::vector<bool> initial_mask_;
  std::vector<bool> final_mask_;
  bool deterministic_ = true;
  bool vertex_labeled_ = true;
  std::vector<std::optional<std::size_t>> labels_;
};

/// Edge multiplicities a_ij, rows and columns in state order.
struct AdjacencyMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> entries;
  std::vector<std::string> states;

  std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  std::int64_t& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  bool is_zero_one() const;
  std::vector<double> as_double() const;
};

Automaton load_automaton(std::string_view text);
std::string automaton_to_json(const Automaton& a);

Automaton build_sft_automaton(const std::vector<std::string>& alphabet,
                              const std::vector<std::vector<std::string>>& forbidden);
/// Convenience overload for single-character symbols.
Automaton build_sft_automaton(const std::vector<std::string>& alphabet,
                              const std::vector<std::string>& forbidden_words);

enum class CatalogName { fibonacci, free_monoid, free_group_unambiguous, free_group_ergodic };

/// `param` is d for free_monoid, m for the free-group automata, ignored otherwise.
Automaton catalog_automaton(CatalogName name, int param = 0);
Automaton fibonacci_automaton();
Automaton free_monoid_automaton(int d);
Automaton free_group_unambiguous(int m);
Automaton free_group_ergodic(int m);

/// Generator names a, b, c, ... and inverse names A, B, C, ...
std::string generator_name(int i, bool inverse);

AdjacencyMatrix adjacency(const Automaton& a);
bool is_ergodic(const Automaton& a);
bool is_strongly_connected(const AdjacencyMatrix& m);

/// Drops states that cannot reach a final state and states unreachable from an
/// initial state. The relative state order is preserved.
Automaton prune_dead_states(const Automaton& a);

/// Bounded search for the connector length of condition (E); absent if larger
/// than max_n. Accepted right-hand words are sampled up to length sample_len.
std::optional<int> find_e_witness(const Automaton& a, int max_n, int sample_len = 4);

}  // namespace growth
