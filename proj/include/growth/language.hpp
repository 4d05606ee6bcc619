#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growth/automaton.hpp"
#include "growth/indicatrice.hpp"
#include "growth/polyalg.hpp"
#include "growth/series.hpp"

namespace growth {

/// Everything the front end needs to evaluate one language by every route.
struct Language {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> var_names;
  RationalSeries series;

  /// Acceptor whose accepting paths are counted, and its symbol-to-variable map.
  std::optional<Automaton> counting;
  VariableMap count_vars;
  /// True when path counts equal word counts.
  bool unambiguous = true;

  /// Vertex-labelled ergodic automaton for the T-map route. Direction
  /// coordinate g is split evenly over the symbols in lift_groups[g].
  std::optional<Automaton> tmap;
  std::vector<std::vector<std::size_t>> lift_groups;

  std::optional<ClosedForm> closed_form;
  bool rank3_closed_form = false;
};

struct LanguageSpec {
  std::string name;
  int m = 2;
  int d = 2;
  bool paired = false;
};

/// Names: fibonacci, free_monoid, free_group_unambiguous, free_group_ergodic,
/// f2_delta, fm_delta.
Language make_language(const LanguageSpec& spec);
Language language_from_automaton(const Automaton& a, const std::string& name = "automaton");

/// States are the letters; s_x -> s_y labelled y whenever allowed(x, y).
Automaton letter_automaton(const std::vector<std::string>& alphabet, const std::vector<std::vector<bool>>& allowed);

/// Spreads r over the T-map alphabet according to lift_groups.
Direction lift_direction(const Language& lang, const Direction& r);

/// Evaluates psi by one route. The empirical route builds a log-domain table
/// of size `table_size` on first use and caches it in `cache`.
ExtendedValue psi_by_method(const Language& lang, PsiMethod method, const Direction& r,
                            std::optional<CoefficientTable>* cache = nullptr, std::size_t table_size = 60);

bool method_applicable(const Language& lang, PsiMethod method);

}  // namespace growth
